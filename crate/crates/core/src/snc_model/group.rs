use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ModelError;

/// `Z^{b1} ⊕ ⊕ Z/t_i` with `t_1 | t_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawGroup", into = "RawGroup")]
pub struct FiniteAbelianGroup {
    b1: u32,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    b1: u32,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl TryFrom<RawGroup> for FiniteAbelianGroup {
    type Error = ModelError;

    fn try_from(raw: RawGroup) -> Result<Self, ModelError> {
        Self::new(raw.b1, raw.torsion)
    }
}

impl From<FiniteAbelianGroup> for RawGroup {
    fn from(g: FiniteAbelianGroup) -> Self {
        RawGroup {
            b1: g.b1,
            torsion: g.torsion,
        }
    }
}

impl FiniteAbelianGroup {
    pub fn new(b1: u32, torsion: Vec<u64>) -> Result<Self, ModelError> {
        if let Some(t) = torsion.iter().find(|&&t| t < 2) {
            return Err(ModelError::invalid("group", format!("invariant factor {t} is below 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(ModelError::invalid(
                "group",
                format!("invariant factor {} does not divide {}", w[0], w[1]),
            ));
        }
        Ok(Self { b1, torsion })
    }

    pub fn trivial() -> Self {
        Self {
            b1: 0,
            torsion: Vec::new(),
        }
    }

    pub fn b1(&self) -> u32 {
        self.b1
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Whether `Hom(G, Z/d) = 0`.
    pub fn hom_to_cyclic_vanishes(&self, d: u64) -> bool {
        d == 1 || (self.b1 == 0 && self.torsion.iter().all(|t| t.gcd(&d) == 1))
    }
}
