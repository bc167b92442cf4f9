//! Exact arithmetic in the cyclotomic ring `Z[ζ_n]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` and kept fully
//! reduced modulo the `n`-th cyclotomic polynomial, so two elements are equal
//! exactly when their coefficient vectors are. Coefficients are arbitrary
//! precision integers.
//!
//! Every element also doubles as an exact point of the plane through the
//! embedding `ζ_n ↦ e^{2πi/n}`.

mod ring;
mod serde_impl;

pub use serde_impl::{Coeff, CoeffList, OwnedCoeff, OwnedCoeffList};
pub mod sign;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use ring::{cyclotomic_polynomial, phi, MAX_MODULUS};
use ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("coefficient vector has length {got}, expected φ({n}) = {expected}")]
    CoeffLength { n: u64, got: usize, expected: usize },
    #[error("automorphism index {a} is not a unit modulo {n}")]
    NotAUnit { a: u64, n: u64 },
}

/// An element of `Z[ζ_n]` in canonical power-basis form.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<Ring>,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(n: u64) -> Result<Self, CycloError> {
        let ring = Ring::get(n)?;
        let coeffs = vec![BigInt::zero(); ring.phi];
        Ok(CycInt { ring, coeffs })
    }

    pub fn one(n: u64) -> Result<Self, CycloError> {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u64, value: i64) -> Result<Self, CycloError> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = BigInt::from(value);
        Ok(z)
    }

    /// `ζ_n^k` for any integer `k` (negative exponents wrap around).
    pub fn zeta_pow(n: u64, k: i64) -> Result<Self, CycloError> {
        let ring = Ring::get(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigInt::zero(); ring.n as usize];
        raw[e] = BigInt::one();
        Ok(Self::from_raw(ring, raw))
    }

    pub fn zeta(n: u64) -> Result<Self, CycloError> {
        Self::zeta_pow(n, 1)
    }

    /// Builds `Σ c_k ζ^k` from `(exponent, coefficient)` pairs; exponents are
    /// taken modulo `n` and the result is reduced.
    pub fn from_terms(n: u64, terms: &[(i64, i64)]) -> Result<Self, CycloError> {
        let ring = Ring::get(n)?;
        let mut raw = vec![BigInt::zero(); ring.n as usize];
        for &(k, c) in terms {
            raw[k.rem_euclid(n as i64) as usize] += c;
        }
        Ok(Self::from_raw(ring, raw))
    }

    /// Wraps an already reduced coefficient vector; its length must be `φ(n)`.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigInt>) -> Result<Self, CycloError> {
        let ring = Ring::get(n)?;
        if coeffs.len() != ring.phi {
            return Err(CycloError::CoeffLength {
                n,
                got: coeffs.len(),
                expected: ring.phi,
            });
        }
        Ok(CycInt { ring, coeffs })
    }

    pub fn from_i64_coeffs(n: u64, coeffs: &[i64]) -> Result<Self, CycloError> {
        Self::from_coeffs(n, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces an arbitrary-length polynomial in `ζ` modulo `Φ_n`.
    fn from_raw(ring: Arc<Ring>, raw: Vec<BigInt>) -> Self {
        let coeffs = ring.reduce(raw);
        CycInt { ring, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.ring.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), CycloError> {
        if self.ring.n != other.ring.n {
            Err(CycloError::ModulusMismatch(self.ring.n, other.ring.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same(other)?;
        let phi = self.ring.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_raw(self.ring.clone(), raw))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.ring.n).expect("ring already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the Galois automorphism `σ_a : ζ ↦ ζ^a`.
    pub fn galois(&self, a: u64) -> Result<Self, CycloError> {
        let n = self.ring.n;
        if a.gcd(&n) != 1 {
            return Err(CycloError::NotAUnit { a, n });
        }
        let a = a % n;
        let mut raw = vec![BigInt::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((a as u128 * j as u128) % n as u128) as usize;
                raw[e] += c;
            }
        }
        Ok(Self::from_raw(self.ring.clone(), raw))
    }

    /// Complex conjugation, i.e. `σ_{n-1}`.
    pub fn conj(&self) -> Self {
        let n = self.ring.n;
        if n <= 2 {
            return self.clone();
        }
        self.galois(n - 1).expect("n - 1 is always a unit")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Numeric value under `ζ_n ↦ e^{2πi/n}` as `[x, y]`.
    pub fn embed(&self) -> [f64; 2] {
        // beyond ~2^20 total coefficient mass f64 rounding reaches 1e-10
        let small = self
            .coeffs
            .iter()
            .try_fold(0u64, |acc, c| {
                let c = c.to_i64()?.unsigned_abs();
                acc.checked_add(c).filter(|&s| s <= 1 << 20)
            })
            .is_some();
        if !small {
            return sign::embed_fixed(self);
        }
        let mut x = 0.0;
        let mut y = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let (cos, sin) = self.ring.unit_root(j);
            x += c * cos;
            y += c * sin;
        }
        [x, y]
    }

    /// `|z|` of the embedded point.
    pub fn abs_f64(&self) -> f64 {
        let [x, y] = self.embed();
        x.hypot(y)
    }

    /// Largest absolute coefficient (a size measure for search budgets).
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl Hash for CycInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Modulus first, then lexicographic on coefficients.
impl Ord for CycInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .n
            .cmp(&other.ring.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(n={}, {:?})", self.ring.n, self.coeffs)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ{}^{j}", self.ring.n)?,
                (_, false) => write!(f, "{mag}·ζ{}^{j}", self.ring.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("CycInt operands must share a modulus")
            }
        }
        impl $trait<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// Units of `Z/nZ` in ascending order.
pub fn units(n: u64) -> Vec<u64> {
    (1..=n.max(1)).filter(|a| a.gcd(&n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64, v: &[i64]) -> CycInt {
        CycInt::from_i64_coeffs(n, v).unwrap()
    }

    #[test]
    fn totient_values() {
        assert_eq!(phi(1).unwrap(), 1);
        assert_eq!(phi(5).unwrap(), 4);
        assert_eq!(phi(12).unwrap(), 4);
        assert_eq!(phi(0), Err(CycloError::ZeroModulus));
    }

    #[test]
    fn cyclotomic_polynomial_small() {
        let as_i64 = |n| cyclotomic_polynomial(n).unwrap();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_polynomial_degree_matches_totient() {
        for n in 1..=200 {
            let p = cyclotomic_polynomial(n).unwrap();
            assert_eq!(p.len() - 1, phi(n).unwrap() as usize, "n = {n}");
            assert_eq!(*p.last().unwrap(), 1);
        }
    }

    #[test]
    fn ring_examples() {
        let i = CycInt::zeta(4).unwrap();
        assert_eq!(&i * &i, CycInt::from_int(4, -1).unwrap());

        let z5 = CycInt::zeta(5).unwrap();
        let z5_4 = CycInt::zeta_pow(5, 4).unwrap();
        assert_eq!(&z5 * &z5_4, CycInt::one(5).unwrap());

        let one = CycInt::one(8).unwrap();
        let z8 = CycInt::zeta(8).unwrap();
        let lhs = (&one + &z8) * (&one - &z8);
        assert_eq!(lhs, &one - &CycInt::zeta_pow(8, 2).unwrap());
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let a = CycInt::one(5).unwrap();
        let b = CycInt::one(8).unwrap();
        assert_eq!(a.try_add(&b), Err(CycloError::ModulusMismatch(5, 8)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn coefficient_length_checked() {
        assert!(matches!(
            CycInt::from_i64_coeffs(5, &[1, 2, 3]),
            Err(CycloError::CoeffLength { expected: 4, .. })
        ));
    }

    #[test]
    fn galois_examples() {
        let z = c(7, &[3, -1, 4, 1, -5, 9]);
        assert_eq!(z.galois(1).unwrap(), z);

        let z5 = CycInt::zeta(5).unwrap();
        assert_eq!(z5.galois(4).unwrap(), CycInt::zeta_pow(5, 4).unwrap());

        let one = CycInt::one(8).unwrap();
        let z8 = CycInt::zeta(8).unwrap();
        assert_eq!(
            (&one + &z8).galois(3).unwrap(),
            &one + &CycInt::zeta_pow(8, 3).unwrap()
        );
        assert_eq!(z8.galois(2), Err(CycloError::NotAUnit { a: 2, n: 8 }));
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            CycInt::zeta(5).unwrap().conj(),
            CycInt::zeta_pow(5, 4).unwrap()
        );
        let three = CycInt::from_int(9, 3).unwrap();
        assert_eq!(three.conj(), three);
        let w = CycInt::from_terms(8, &[(1, 1), (3, 1)]).unwrap();
        let expected = CycInt::from_terms(8, &[(7, 1), (5, 1)]).unwrap();
        assert_eq!(w.conj(), expected);
        assert_eq!(w.conj(), -&w);
    }

    #[test]
    fn realness() {
        let t = CycInt::from_terms(5, &[(1, 1), (4, 1)]).unwrap();
        assert!(t.is_real());
        assert!(!CycInt::zeta(5).unwrap().is_real());
        assert!(CycInt::zero(5).unwrap().is_real());
    }

    #[test]
    fn embedding_examples() {
        let [x, y] = CycInt::zeta(4).unwrap().embed();
        assert!(x.abs() < 1e-12 && (y - 1.0).abs() < 1e-12);
        let [x, y] = CycInt::from_terms(4, &[(0, 1), (1, 1)]).unwrap().embed();
        assert!((x - 1.0).abs() < 1e-12 && (y - 1.0).abs() < 1e-12);
        let [x, y] = CycInt::zeta(5).unwrap().embed();
        assert!((x - 0.309017).abs() < 1e-6 && (y - 0.951057).abs() < 1e-6);
        assert!((x - 72f64.to_radians().cos()).abs() < 1e-9);
        assert!((y - 72f64.to_radians().sin()).abs() < 1e-9);
    }

    #[test]
    fn large_coefficients_embed_accurately() {
        let tau = CycInt::from_terms(5, &[(0, 1), (1, 1), (4, 1)]).unwrap();
        let big = tau.pow(60).galois(2).unwrap();
        assert!(big.height() > BigInt::from(1u64 << 40));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let [x, y] = big.embed();
        assert!((x - phi.powi(-60)).abs() < 1e-17, "{x}");
        assert!(y.abs() < 1e-17);
    }

    #[test]
    fn odd_modulus_contains_primitive_2n_th_root() {
        for n in (3..40).step_by(2) {
            let rho = -CycInt::zeta_pow(n, ((n + 1) / 2) as i64).unwrap();
            assert_eq!(&rho * &rho, CycInt::zeta(n).unwrap());
            assert_eq!(rho.pow(n as u32), CycInt::from_int(n, -1).unwrap());
            assert_eq!(rho.pow(2 * n as u32), CycInt::one(n).unwrap());
            let [x, y] = rho.embed();
            let angle = std::f64::consts::PI / n as f64;
            assert!((x - angle.cos()).abs() < 1e-12 && (y - angle.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn display_is_readable() {
        let z = CycInt::from_terms(5, &[(0, 1), (1, -2), (3, 1)]).unwrap();
        assert_eq!(z.to_string(), "1 - 2·ζ5^1 + ζ5^3");
        assert_eq!(CycInt::zero(5).unwrap().to_string(), "0");
    }
}
