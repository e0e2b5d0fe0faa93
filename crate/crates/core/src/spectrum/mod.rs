//! Spectra of homogeneous polynomials with one-dimensional singular locus
//! and of their Yomdin deformations `f + h^{d+k}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Exponent = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("d must be at least 2, got {0}")]
    SmallDegree(i64),
    #[error("n must be at least 1, got {0}")]
    SmallDimension(i64),
    #[error("k must be non-negative, got {0}")]
    NegativeK(i64),
    #[error("cannot parse exponent '{0}'")]
    Parse(String),
}

/// A finitely supported `Z`-valued function on rational exponents, written as
/// `Σ c_α t^α`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpectrumPoly {
    terms: BTreeMap<Exponent, i64>,
}

impl SpectrumPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: Exponent, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// `Σ_{l=start}^{end} t^{l/denom}`.
    pub fn geometric(start: i64, end: i64, denom: i64) -> Self {
        let mut p = Self::zero();
        for l in start..=end {
            p.add_term(Exponent::new(l, denom), 1);
        }
        p
    }

    pub fn add_term(&mut self, exponent: Exponent, coeff: i64) {
        let c = self.terms.entry(exponent).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: Exponent) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::monomial(Exponent::zero(), 1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by `t^{by}`.
    pub fn shift(&self, by: Exponent) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, *c)).collect(),
        }
    }

    /// `Σ c_α`.
    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_symmetric_about(&self, center: Exponent) -> bool {
        self.terms.iter().all(|(e, c)| self.coeff(center * 2 - e) == *c)
    }

    /// One `exponent<TAB>multiplicity` line per term, ascending.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let _ = writeln!(out, "{e}\t{c}");
        }
        out
    }
}

impl std::fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "t^{e}")?;
        }
        Ok(())
    }
}

impl Add for &SpectrumPoly {
    type Output = SpectrumPoly;

    fn add(self, rhs: &SpectrumPoly) -> SpectrumPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Neg for &SpectrumPoly {
    type Output = SpectrumPoly;

    fn neg(self) -> SpectrumPoly {
        SpectrumPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &SpectrumPoly {
    type Output = SpectrumPoly;

    fn sub(self, rhs: &SpectrumPoly) -> SpectrumPoly {
        self + &(-rhs)
    }
}

impl Mul for &SpectrumPoly {
    type Output = SpectrumPoly;

    fn mul(self, rhs: &SpectrumPoly) -> SpectrumPoly {
        let mut out = SpectrumPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// `α′ = (⌊αd⌋ + 1)/d`.
pub fn alpha_prime(alpha: Exponent, d: i64) -> Exponent {
    alpha_dprime(alpha, d, 0)
}

/// `α″(k) = (kα + ⌊αd⌋ + 1)/(d + k)`.
pub fn alpha_dprime(alpha: Exponent, d: i64, k: i64) -> Exponent {
    let floor = (alpha * d).floor();
    (alpha * k + floor + Exponent::one()) / (d + k)
}

fn check(n: i64, d: i64) -> Result<(), SpectrumError> {
    if d < 2 {
        return Err(SpectrumError::SmallDegree(d));
    }
    if n < 1 {
        return Err(SpectrumError::SmallDimension(n));
    }
    Ok(())
}

/// `(Σ_{l=1}^{d-1} t^{l/d})^{n+1} - Σ_α t^{α′} Σ_{l=0}^{d-1} t^{l/d}`.
pub fn spectrum_homogeneous(n: i64, d: i64, exponents: &[Exponent]) -> Result<SpectrumPoly, SpectrumError> {
    check(n, d)?;
    let mut out = SpectrumPoly::geometric(1, d - 1, d).pow((n + 1) as u32);
    let tail = SpectrumPoly::geometric(0, d - 1, d);
    for &alpha in exponents {
        out = &out - &tail.shift(alpha_prime(alpha, d));
    }
    Ok(out)
}

/// `Sp(f,0) + Σ_α t^{α″(k)} Σ_{l=0}^{d+k-1} t^{l/(d+k)}`.
pub fn spectrum_yomdin(n: i64, d: i64, k: i64, exponents: &[Exponent]) -> Result<SpectrumPoly, SpectrumError> {
    if k < 0 {
        return Err(SpectrumError::NegativeK(k));
    }
    let mut out = spectrum_homogeneous(n, d, exponents)?;
    let tail = SpectrumPoly::geometric(0, d + k - 1, d + k);
    for &alpha in exponents {
        out = &out + &tail.shift(alpha_dprime(alpha, d, k));
    }
    Ok(out)
}

/// Parses `p`, `p/q`, or a comma-separated list of them.
pub fn parse_exponent(s: &str) -> Result<Exponent, SpectrumError> {
    let s = s.trim();
    let bad = || SpectrumError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Exponent::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Exponent::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_exponent_list(s: &str) -> Result<Vec<Exponent>, SpectrumError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_exponent).collect()
}
