//! Elements of the cyclotomic field `Q(ζ_d)`.
//!
//! An element is stored as a rational polynomial in `ζ` of degree `< φ(d)`,
//! reduced modulo the `d`-th cyclotomic polynomial. Reduction is canonical, so
//! structural equality of coefficient vectors is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Euler's totient `φ(d)`.
pub fn euler_totient(d: u32) -> usize {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(d: u32) -> Vec<u32> {
    (1..=d).filter(|e| d.is_multiple_of(*e)).collect()
}

/// Exact division of `num` by the monic integer polynomial `den`
/// (coefficients low to high). Panics if the division is not exact.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The `d`-th cyclotomic polynomial `Φ_d`, coefficients from constant term up.
///
/// Computed by dividing `x^d - 1` by `Φ_e` for every proper divisor `e` of `d`.
pub fn cyclotomic_polynomial(d: u32) -> Result<Vec<BigInt>, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::InvalidOrder(d));
    }
    let divs = divisors(d);
    let mut table: Vec<(u32, Vec<BigInt>)> = Vec::with_capacity(divs.len());
    for &e in &divs {
        let mut poly = vec![BigInt::zero(); e as usize + 1];
        poly[0] = -BigInt::one();
        poly[e as usize] = BigInt::one();
        for (f, phi_f) in &table {
            if e % f == 0 {
                poly = div_exact_monic(&poly, phi_f);
            }
        }
        table.push((e, poly));
    }
    Ok(table.pop().expect("d has at least one divisor").1)
}

/// The field `Q(ζ_d)` together with its defining modulus.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    /// `Φ_d` as rationals, low to high, monic, length `φ(d) + 1`.
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>, AlgebraError> {
        let phi = cyclotomic_polynomial(order)?;
        Ok(Arc::new(Self {
            order,
            modulus: phi.into_iter().map(Rational::from_integer).collect(),
        }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the extension, `φ(d)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (i, m) in self.modulus[..deg].iter().enumerate() {
                poly[shift + i] -= &top * m;
            }
        }
        poly.resize(deg, Rational::zero());
        poly
    }
}

/// An exact element of `Q(ζ_d)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl CycNum {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: Arc::clone(field),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, value: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(value.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, value: Rational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = value;
        out
    }

    /// Builds an element from an arbitrary-length polynomial in `ζ`.
    pub fn from_poly(field: &Arc<CyclotomicField>, poly: Vec<Rational>) -> Self {
        Self {
            field: Arc::clone(field),
            coeffs: field.reduce(poly),
        }
    }

    /// `ζ_d^k`; negative exponents are taken modulo `d`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(field, poly)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Canonical coefficients of `1, ζ, …, ζ^{φ(d)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field.order != other.field.order {
            return Err(AlgebraError::OrderMismatch {
                left: self.field.order,
                right: other.field.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let deg = self.field.degree();
        if deg == 1 {
            return Self {
                field: Arc::clone(&self.field),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(&self.field, prod)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_d`.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        // Invariant: s * self ≡ r (mod Φ_d), likewise for (new_s, new_r).
        let mut r = self.field.modulus.clone();
        let mut new_r = trim(self.coeffs.clone());
        let mut s: Vec<Rational> = vec![];
        let mut new_s = vec![Rational::one()];
        while new_r.len() > 1 {
            let (q, rem) = poly_divrem(&r, &new_r);
            let next_s = poly_sub(&s, &poly_mul(&q, &new_s));
            r = std::mem::replace(&mut new_r, rem);
            s = std::mem::replace(&mut new_s, next_s);
        }
        // new_r is a nonzero constant because Φ_d is irreducible.
        let c = new_r[0].recip();
        let scaled = new_s.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(&self.field, scaled))
    }

    /// Applies the automorphism `ζ ↦ ζ^a`.
    pub fn galois(&self, a: i64) -> Result<Self, AlgebraError> {
        let d = self.field.order as i64;
        if a.gcd(&d) != 1 {
            return Err(AlgebraError::NotCoprime { a, d: d as u32 });
        }
        let mut poly = vec![Rational::zero(); d as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = ((k as i64) * a).rem_euclid(d) as usize;
            poly[e] += c;
        }
        Ok(Self::from_poly(&self.field, poly))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder over `Q[x]`; `den` must be trimmed and nonzero.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(num.to_vec());
    let dn = den.len() - 1;
    let lead = den[dn].recip();
    if rem.len() <= dn {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    rem.truncate(dn.max(1));
    (trim(quot), trim(rem))
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.field.order)?;
                    } else {
                        write!(f, "z{}^{k}", self.field.order)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({self})", self.field.order)
    }
}

/// Binary field operations exposed as a single entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, AlgebraError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}
