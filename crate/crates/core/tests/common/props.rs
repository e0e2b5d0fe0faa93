//! Structural checks shared by the property tests and the acceptance run.
//! Each returns a description of the first violation.

use maxjordan::criteria::{singular_nu_c, singular_nu_c_upper, HyperresolutionInput};
use maxjordan::cyclotomic::{alternating_sum, CochainComplex};
use maxjordan::eigen_complex::{
    build_b_complex, build_c_complex, nu_vectors, parse_atlas, EigenvalueSpec, TrivializationAtlas,
};
use maxjordan::snc_model::{DegenerationModel, ModelFile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::random::{oracle_c_cohomology, random_model};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn squares_to_zero(c: &CochainComplex) -> bool {
    (1..c.len().saturating_sub(1) + 1).all(|j| {
        c.differential(j)
            .mul(&c.differential(j - 1))
            .map(|m| m.is_zero())
            .unwrap_or(false)
    })
}

fn euler_holds(c: &CochainComplex) -> bool {
    c.euler_characteristic() == alternating_sum(&c.cohomology_dims())
}

/// d² = 0, dim B ≤ dim C, Euler, Galois invariance, λ = 1 collapse and the
/// smooth reduction, at every usable order of a bundled model.
pub fn bundled_model(name: &str, model: &DegenerationModel, atlas: &TrivializationAtlas, orders: &[u32]) -> Check {
    let smooth = HyperresolutionInput::from_smooth(model, atlas).map_err(|e| format!("{name}: {e}"))?;
    for &d in orders {
        let c = build_c_complex(model, d).map_err(|e| format!("{name} d={d}: {e}"))?;
        ensure!(squares_to_zero(c.complex()), "{name} d={d}: C has d² ≠ 0");
        ensure!(euler_holds(c.complex()), "{name} d={d}: Euler identity fails on C");
        let mut first: Option<(Vec<usize>, Vec<usize>)> = None;
        for eigen in EigenvalueSpec::of_order(d) {
            let a = eigen.a();
            let b = build_b_complex(model, d, atlas, a).map_err(|e| format!("{name} {eigen}: {e}"))?;
            ensure!(squares_to_zero(b.complex()), "{name} {eigen}: B has d² ≠ 0");
            ensure!(euler_holds(b.complex()), "{name} {eigen}: Euler identity fails on B");
            for (j, (x, y)) in b.dims().iter().zip(c.dims()).enumerate() {
                ensure!(*x <= y, "{name} {eigen}: dim B^{j} = {x} > dim C^{j} = {y}");
            }
            if d == 1 {
                ensure!(b.dims() == c.dims(), "{name}: B ≠ C at λ = 1");
                for j in 0..model.n() {
                    ensure!(
                        b.differential(j) == c.differential(j),
                        "{name}: B ≠ C at λ = 1 in degree {j}"
                    );
                }
            }
            let vectors = nu_vectors(model, atlas, eigen).map_err(|e| format!("{name} {eigen}: {e}"))?;
            for j in 0..=model.n() {
                let lower = singular_nu_c(&smooth, d, a, j).map_err(|e| format!("{name} {eigen}: {e}"))?;
                let upper = singular_nu_c_upper(&smooth, d, a, j).map_err(|e| format!("{name} {eigen}: {e}"))?;
                ensure!(
                    lower == vectors.1[j] && upper == vectors.0[j],
                    "{name} {eigen} j={j}: smooth reduction gives ({upper}, {lower}), direct gives ({}, {})",
                    vectors.0[j],
                    vectors.1[j]
                );
            }
            match &first {
                None => first = Some(vectors),
                Some(f) => ensure!(*f == vectors, "{name} {eigen}: ν differs from exponent 1"),
            }
        }
    }
    Ok(())
}

/// A gauge atlas: every λ-stratum trivial, `κ(P, S) = φ(S) - φ(P)`.
fn gauge_atlas(file: &ModelFile, d: u32, rng: &mut impl Rng) -> TrivializationAtlas {
    let phase: std::collections::BTreeMap<&str, i64> = file
        .strata
        .iter()
        .map(|s| (s.id.as_str(), rng.gen_range(0..d as i64)))
        .collect();
    let kappa: Vec<_> = file
        .strata
        .iter()
        .flat_map(|s| {
            let phase = &phase;
            s.parents
                .values()
                .map(move |p| json!({"parent": p, "child": s.id, "exp": phase[s.id.as_str()] - phase[p.as_str()]}))
        })
        .collect();
    parse_atlas(&json!({"orders": [{"d": d, "trivial": "all", "kappa": kappa}]}).to_string()).unwrap()
}

/// Cohomology of `C` and of a gauge-twisted `B` against the independent
/// elimination, for every order of every seeded model. Returns the number
/// of models checked.
pub fn random_models(seeds: std::ops::Range<u64>) -> Result<usize, String> {
    let mut count = 0;
    for seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let file = random_model(&mut rng, 8);
        ensure!(file.strata.len() <= 8, "seed {seed}: {} strata", file.strata.len());
        let model = DegenerationModel::from_file(&file).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut orders = model.lambda_orders();
        orders.insert(1);
        for d in orders {
            let expect = oracle_c_cohomology(&file, d as u64);
            let c = build_c_complex(&model, d).map_err(|e| format!("seed {seed} d={d}: {e}"))?;
            ensure!(
                c.cohomology_dims() == expect,
                "seed {seed} d={d}: C cohomology {:?}, oracle {:?}",
                c.cohomology_dims(),
                expect
            );
            ensure!(squares_to_zero(c.complex()), "seed {seed} d={d}: d² ≠ 0");
            let atlas = gauge_atlas(&file, d, &mut rng);
            for eigen in EigenvalueSpec::of_order(d) {
                let b =
                    build_b_complex(&model, d, &atlas, eigen.a()).map_err(|e| format!("seed {seed} {eigen}: {e}"))?;
                ensure!(
                    b.cohomology_dims() == expect,
                    "seed {seed} {eigen}: gauge B cohomology {:?}, oracle {:?}",
                    b.cohomology_dims(),
                    expect
                );
            }
        }
        count += 1;
    }
    Ok(count)
}
