use super::*;
use crate::eigen_complex::{nu_vectors, parse_atlas};
use crate::snc_model::parse_model;

fn node() -> DegenerationModel {
    parse_model(
        r#"{
        "n": 1,
        "vertical": [{"id": "E", "multiplicity": 2}, {"id": "G", "multiplicity": 1}],
        "strata": [
            {"id": "E", "I": ["E"]}, {"id": "G", "I": ["G"]},
            {"id": "p1", "I": ["E", "G"], "parents": {"E": "G", "G": "E"}},
            {"id": "p2", "I": ["E", "G"], "parents": {"E": "G", "G": "E"}}
        ],
        "flags": {"isolated_singularity_compactification": true}
    }"#,
    )
    .unwrap()
}

#[test]
fn theorem3_refuses_outside_setting() {
    let mut file = node().to_file();
    file.flags.isolated_singularity_compactification = false;
    let m = DegenerationModel::from_file(&file).unwrap();
    let err = theorem3_nu(&m, &TrivializationAtlas::canonical(), 1, 1).unwrap_err();
    assert!(matches!(err, CriteriaError::NotInSetting(_)));
}

#[test]
fn theorem3_on_node() {
    let m = node();
    // λ = 1: C = (2, 2), χ = 0, ν¹ = -(0 - 1) = 1 = r - 1.
    assert_eq!(
        theorem3_nu(&m, &TrivializationAtlas::canonical(), 1, 1).unwrap(),
        vec![1, 1]
    );
    // λ = -1: only E is in J but it meets G, so C = 0.
    let a = parse_atlas(r#"{"orders": [{"d": 2, "trivial": "all", "kappa_default": 0}]}"#).unwrap();
    assert_eq!(theorem3_nu(&m, &a, 2, 1).unwrap(), vec![0, 0]);
    let (nu, _) = nu_vectors(&m, &TrivializationAtlas::canonical(), EigenvalueSpec::one()).unwrap();
    assert_eq!(nu, vec![1, 1]);
}

#[test]
fn curve_formula_on_node() {
    let m = node();
    let c = curve_nu_03(&m, 2).unwrap();
    assert_eq!((c.pairs, c.isolated, c.value), (0, 0, 0));
    assert!(c.is_reliable());
    assert!(matches!(curve_nu_03(&m, 1), Err(CriteriaError::OrderOne(1))));
}

#[test]
fn curve_formula_flags_multi_point_pairs() {
    let mut file = node().to_file();
    file.vertical[1].multiplicity = 2;
    let m = DegenerationModel::from_file(&file).unwrap();
    let c = curve_nu_03(&m, 2).unwrap();
    assert_eq!(c.pairs, 1);
    assert_eq!(c.multi_point_pairs, vec![("E".to_string(), "G".to_string())]);
    assert!(!c.is_reliable());
}

#[test]
fn curve_formula_needs_curves() {
    let m =
        parse_model(r#"{"n": 2, "vertical": [{"id": "Y", "multiplicity": 2}], "strata": [{"id": "Y", "I": ["Y"]}]}"#)
            .unwrap();
    assert!(matches!(
        curve_nu_03(&m, 2),
        Err(CriteriaError::WrongDimension { n: 2, expected: 1 })
    ));
}

#[test]
fn branches() {
    assert_eq!(branches_nu_lambda1(1).unwrap(), 0);
    assert_eq!(branches_nu_lambda1(2).unwrap(), 1);
    assert_eq!(branches_nu_lambda1(3).unwrap(), 2);
    assert!(branches_nu_lambda1(0).is_err());
}

#[test]
fn theorem4_per_stratum() {
    let m = parse_model(
        r#"{
        "n": 2,
        "vertical": [{"id": "A", "multiplicity": 3}, {"id": "B", "multiplicity": 3}],
        "strata": [
            {"id": "A", "I": ["A"]}, {"id": "B", "I": ["B"]},
            {"id": "AB", "I": ["A", "B"], "parents": {"A": "B", "B": "A"}}
        ]
    }"#,
    )
    .unwrap();
    let h1 = parse_h1(r#"{"A": {"b1": 0}, "B": {"b1": 0, "torsion": [2]}, "AB": {"b1": 2}}"#).unwrap();
    let v = theorem4_check(&m, 3, &h1, Theorem4Scope::PerStratum).unwrap();
    assert_eq!(v.degree_equal, vec![true, false, true]);
    assert!(!v.complex_equal);
    assert!(v.targets.contains(&("AB".to_string(), false)));
    let missing = parse_h1(r#"{"A": {"b1": 0}}"#).unwrap();
    assert!(matches!(
        theorem4_check(&m, 3, &missing, Theorem4Scope::PerStratum),
        Err(CriteriaError::MissingH1(id)) if id == "B"
    ));
    let union = parse_h1(r#"{"union:3": {"b1": 0, "torsion": [2]}}"#).unwrap();
    let v = theorem4_check(&m, 3, &union, Theorem4Scope::Union).unwrap();
    assert!(v.complex_equal);
    assert!(matches!(
        theorem4_check(&m, 2, &union, Theorem4Scope::Union),
        Err(CriteriaError::MissingH1(_))
    ));
}

#[test]
fn points_need_no_h1() {
    let v = theorem4_check(&node(), 1, &H1Data::new(), Theorem4Scope::PerStratum).unwrap();
    assert_eq!(v.degree_equal, vec![true, true]);
    let mut file = node().to_file();
    file.vertical[1].multiplicity = 2;
    let m = DegenerationModel::from_file(&file).unwrap();
    let v = theorem4_check(&m, 2, &H1Data::new(), Theorem4Scope::PerStratum);
    assert!(matches!(v, Err(CriteriaError::MissingH1(id)) if id == "E"));
    let h1 = parse_h1(r#"{"E": {"b1": 0}, "G": {"b1": 2}}"#).unwrap();
    let v = theorem4_check(&m, 2, &h1, Theorem4Scope::PerStratum).unwrap();
    assert_eq!(v.degree_equal, vec![false, true]);
}

#[test]
fn h1_rejects_bad_factors() {
    assert!(parse_h1(r#"{"A": {"b1": 0, "torsion": [3, 4]}}"#).is_err());
    assert!(parse_h1(r#"{"A": {"b1": 0, "extra": 1}}"#).is_err());
}

fn two_sheets(weights: (i64, i64)) -> HyperresolutionInput {
    let x0 = parse_model(
        r#"{"n": 1, "vertical": [{"id": "A", "multiplicity": 1}, {"id": "B", "multiplicity": 1}],
            "strata": [{"id": "A", "I": ["A"]}, {"id": "B", "I": ["B"]}]}"#,
    )
    .unwrap();
    let x1 =
        parse_model(r#"{"n": 1, "vertical": [{"id": "S", "multiplicity": 1}], "strata": [{"id": "S", "I": ["S"]}]}"#)
            .unwrap();
    let gamma = vec![
        Correspondence {
            from: "S".into(),
            to: "A".into(),
            weight: weights.0,
            exp: 0,
            exp_by_order: Default::default(),
        },
        Correspondence {
            from: "S".into(),
            to: "B".into(),
            weight: weights.1,
            exp: 0,
            exp_by_order: Default::default(),
        },
    ];
    HyperresolutionInput::new(
        x0,
        Some(x1),
        None,
        TrivializationAtlas::canonical(),
        TrivializationAtlas::canonical(),
        TrivializationAtlas::canonical(),
        gamma,
        Vec::new(),
    )
    .unwrap()
}

#[test]
fn difference_of_sheets_has_one_dimensional_kernel() {
    let h = two_sheets((1, -1));
    // Cocycles of X0 in degree 0: (f_A, f_B). Image under γ: f_A - f_B.
    // Kernel: span{(1, 1)}.
    assert_eq!(singular_nu_c(&h, 1, 1, 0).unwrap(), 1);
    assert_eq!(singular_nu_c_upper(&h, 1, 1, 0).unwrap(), 2);
    let zero = two_sheets((0, 0));
    assert_eq!(singular_nu_c(&zero, 1, 1, 0).unwrap(), 2);
    assert_eq!(singular_nu_c(&zero, 1, 1, 1).unwrap(), 0);
}

#[test]
fn smooth_reduction() {
    let m = parse_model(
        r#"{
        "n": 1,
        "vertical": [{"id": "A", "multiplicity": 1}, {"id": "B", "multiplicity": 1}],
        "strata": [
            {"id": "A", "I": ["A"]}, {"id": "B", "I": ["B"]},
            {"id": "P", "I": ["A", "B"], "parents": {"A": "B", "B": "A"}}
        ],
        "horizontal": [{"id": "D", "strata": [{"id": "q", "I": ["A"]}], "lift": {"q": "A"}}]
    }"#,
    )
    .unwrap();
    let atlas = TrivializationAtlas::canonical();
    let h = HyperresolutionInput::from_smooth(&m, &atlas).unwrap();
    assert_eq!(h.d0.as_ref().unwrap().vertical()[0].id, "D::q");
    let (nu, nu_c) = nu_vectors(&m, &atlas, EigenvalueSpec::one()).unwrap();
    for j in 0..=1 {
        assert_eq!(singular_nu_c(&h, 1, 1, j).unwrap(), nu_c[j]);
        assert_eq!(singular_nu_c_upper(&h, 1, 1, j).unwrap(), nu[j]);
    }
}

#[test]
fn correspondence_ids_checked() {
    let err = parse_hyperresolution(
        r#"{"x0": {"n": 0, "vertical": [{"id": "A", "multiplicity": 1}], "strata": [{"id": "A", "I": ["A"]}]},
            "rho": [{"from": "x", "to": "A", "weight": 1}]}"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("source space is absent"));
}
