//! Embedded resolution of a plane curve germ whose branches are smooth and
//! monomial, `v = c u^k` or `u = c v^k`, by repeated point blow-ups.
//!
//! Coefficients are opaque labels: two branches share a tangent direction
//! exactly when their labels agree. Every branch belongs to a single global
//! curve `G` of multiplicity 1 (the compactified fiber).

use maxjordan::snc_model::{FlagsEntry, ModelFile, StratumEntry, VerticalEntry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// `v = c u^k`, `k ≥ 1`.
    V(u32, String),
    /// `u = c v^k`, `k ≥ 1`.
    U(u32, String),
    /// `v = 0`.
    AxisV,
    /// `u = 0`.
    AxisU,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Dir {
    UAxis,
    VAxis,
    Slope(String),
}

impl Branch {
    fn dir(&self) -> Dir {
        match self {
            Branch::V(1, c) => Dir::Slope(c.clone()),
            Branch::V(_, _) | Branch::AxisV => Dir::UAxis,
            Branch::U(1, c) => Dir::Slope(format!("1/{c}")),
            Branch::U(_, _) | Branch::AxisU => Dir::VAxis,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Comp {
    E(usize),
    G,
}

#[derive(Debug, Default)]
pub struct Resolution {
    /// Multiplicity of `E{i+1}`.
    pub exceptional: Vec<u64>,
    pub points: Vec<(Comp, Comp)>,
}

impl Resolution {
    pub fn of_branches(branches: Vec<Branch>) -> Self {
        let mut r = Resolution::default();
        r.visit(None, None, branches, true);
        r
    }

    fn visit(&mut self, on_u: Option<usize>, on_v: Option<usize>, branches: Vec<Branch>, force: bool) {
        let count = on_u.is_some() as usize + on_v.is_some() as usize + branches.len();
        if !force {
            if count <= 1 {
                return;
            }
            if count == 2 && branches.len() < 2 {
                let mut dirs = Vec::new();
                let mut comps = Vec::new();
                if let Some(e) = on_u {
                    dirs.push(Dir::VAxis);
                    comps.push(Comp::E(e));
                }
                if let Some(e) = on_v {
                    dirs.push(Dir::UAxis);
                    comps.push(Comp::E(e));
                }
                for b in &branches {
                    dirs.push(b.dir());
                    comps.push(Comp::G);
                }
                if dirs[0] != dirs[1] {
                    comps.sort();
                    self.points.push((comps[0], comps[1]));
                    return;
                }
            }
        }
        let mult =
            on_u.map_or(0, |e| self.exceptional[e]) + on_v.map_or(0, |e| self.exceptional[e]) + branches.len() as u64;
        let e = self.exceptional.len();
        self.exceptional.push(mult);

        // Chart u, v = u v': the new divisor is {u = 0}.
        let mut first = Vec::new();
        let mut slopes: Vec<(String, Vec<Branch>)> = Vec::new();
        // Chart u = u' v, v: the new divisor is {v = 0}.
        let mut second = Vec::new();
        for b in branches {
            match b {
                Branch::V(k, c) if k >= 2 => first.push(Branch::V(k - 1, c)),
                Branch::AxisV => first.push(Branch::AxisV),
                Branch::U(k, c) if k >= 2 => second.push(Branch::U(k - 1, c)),
                Branch::AxisU => second.push(Branch::AxisU),
                other => {
                    let Dir::Slope(c) = other.dir() else { unreachable!() };
                    match slopes.iter_mut().find(|(s, _)| *s == c) {
                        Some((_, list)) => list.push(Branch::AxisV),
                        None => slopes.push((c, vec![Branch::AxisV])),
                    }
                }
            }
        }
        self.visit(Some(e), on_v, first, false);
        for (_, list) in slopes {
            self.visit(Some(e), None, list, false);
        }
        self.visit(on_u, Some(e), second, false);
    }

    pub fn to_model_file(&self) -> ModelFile {
        let name = |c: Comp| match c {
            Comp::E(i) => format!("E{}", i + 1),
            Comp::G => "G".to_string(),
        };
        let mut vertical: Vec<VerticalEntry> = self
            .exceptional
            .iter()
            .enumerate()
            .map(|(i, &m)| VerticalEntry {
                id: format!("E{}", i + 1),
                multiplicity: m,
            })
            .collect();
        vertical.push(VerticalEntry {
            id: "G".into(),
            multiplicity: 1,
        });
        let mut strata: Vec<StratumEntry> = vertical
            .iter()
            .map(|v| StratumEntry {
                id: v.id.clone(),
                index_set: vec![v.id.clone()],
                touches: None,
                parents: Default::default(),
            })
            .collect();
        let mut points = self.points.clone();
        points.sort();
        let mut seen: std::collections::BTreeMap<(Comp, Comp), usize> = Default::default();
        for (a, b) in points {
            let k = seen.entry((a, b)).or_default();
            *k += 1;
            let (x, y) = (name(a), name(b));
            strata.push(StratumEntry {
                id: format!("{x}.{y}#{k}"),
                index_set: vec![x.clone(), y.clone()],
                touches: None,
                parents: [(x.clone(), y.clone()), (y, x)].into_iter().collect(),
            });
        }
        ModelFile {
            n: 1,
            vertical,
            strata,
            horizontal: Vec::new(),
            flags: FlagsEntry {
                proper: Some(true),
                isolated_singularity_compactification: true,
            },
        }
    }
}

/// `(x^{2a} + y²)(x² + y^{2a})`: branches `y = ±i x^a` and `x = ±i y^a`.
pub fn ex4_4_branches(a: u32) -> Vec<Branch> {
    vec![
        Branch::V(a, "i".into()),
        Branch::V(a, "-i".into()),
        Branch::U(a, "i".into()),
        Branch::U(a, "-i".into()),
    ]
}

/// `r` distinct lines through the origin.
pub fn ordinary_branches(r: u32) -> Vec<Branch> {
    (0..r).map(|k| Branch::V(1, format!("c{k}"))).collect()
}
