#![allow(dead_code)]

pub mod blowup;
pub mod linalg;
pub mod milnor;
pub mod props;
pub mod random;

use std::path::PathBuf;

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

pub fn model_path(name: &str) -> PathBuf {
    models_dir().join(name)
}

use maxjordan::eigen_complex::{load_atlas, TrivializationAtlas};
use maxjordan::snc_model::{load_model, DegenerationModel};

/// Bundled smooth-total-space models that ship an atlas.
pub const BUNDLED: [&str; 16] = [
    "ex4_1",
    "ex4_1_m2",
    "ex4_1_m5",
    "ex4_1_m6",
    "ex4_1_open",
    "ex4_3A",
    "ex4_3B",
    "ex4_4_a2",
    "ex4_4_a3",
    "ex4_4_a4",
    "node",
    "cusp",
    "ordinary3",
    "ordinary4",
    "negative/triple_point",
    "ex4_2_multiplicities",
];

pub fn load_pair(name: &str) -> (DegenerationModel, TrivializationAtlas) {
    let model = load_model(model_path(&format!("{name}.json"))).unwrap();
    let atlas_path = model_path(&format!("{name}.atlas.json"));
    let atlas = if atlas_path.exists() {
        load_atlas(atlas_path).unwrap()
    } else {
        TrivializationAtlas::canonical()
    };
    (model, atlas)
}

/// Orders with an atlas block at which the model is complete.
pub fn usable_orders(model: &DegenerationModel, atlas: &TrivializationAtlas) -> Vec<u32> {
    atlas.orders().into_iter().filter(|&d| model.is_complete(d)).collect()
}
