use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::CycloError;

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 10_000;

/// Per-modulus data shared by all elements of `Z[ζ_n]`.
pub(crate) struct Ring {
    pub n: u64,
    pub phi: usize,
    /// `Φ_n`, ascending, monic.
    pub poly: Vec<i64>,
    /// `(cos, sin)` of `2πj/n` for `j < φ(n)`.
    trig: Vec<(f64, f64)>,
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<Ring>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Ring>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn poly_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn check_modulus(n: u64) -> Result<(), CycloError> {
    match n {
        0 => Err(CycloError::ZeroModulus),
        n if n > MAX_MODULUS => Err(CycloError::ModulusTooLarge(n)),
        _ => Ok(()),
    }
}

impl Ring {
    pub fn get(n: u64) -> Result<Arc<Ring>, CycloError> {
        check_modulus(n)?;
        if let Some(r) = cache().read().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let poly = (*cyclotomic_poly_cached(n)).clone();
        let phi = poly.len() - 1;
        let trig = (0..phi)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                (t.cos(), t.sin())
            })
            .collect();
        let ring = Arc::new(Ring { n, phi, poly, trig });
        Ok(cache().write().unwrap().entry(n).or_insert(ring).clone())
    }

    pub fn unit_root(&self, j: usize) -> (f64, f64) {
        self.trig[j]
    }

    /// Reduces a polynomial in `ζ` of any length modulo `Φ_n` in place.
    pub fn reduce(&self, mut raw: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if raw.len() < phi {
            raw.resize(phi, BigInt::zero());
            return raw;
        }
        for i in (phi..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut raw[i]);
            for (k, &p) in self.poly[..phi].iter().enumerate() {
                if p != 0 {
                    raw[i - phi + k] -= &lead * p;
                }
            }
        }
        raw.truncate(phi);
        raw
    }
}

/// Euler's totient, by trial factorization of `n`.
pub fn phi(n: u64) -> Result<u64, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroModulus);
    }
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    Ok(result)
}

/// The `n`-th cyclotomic polynomial, ascending coefficients, obtained from
/// `x^n - 1 = Π_{d | n} Φ_d(x)` by dividing out every proper divisor.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<i64>, CycloError> {
    check_modulus(n)?;
    Ok((*cyclotomic_poly_cached(n)).clone())
}

fn cyclotomic_poly_cached(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = divide_monic(&num, &cyclotomic_poly_cached(d));
    }
    let p = Arc::new(
        num.into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
            .collect(),
    );
    poly_cache().write().unwrap().entry(n).or_insert(p).clone()
}

/// Exact quotient of `num` by the monic `den`; the remainder must vanish.
fn divide_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let support: Vec<(usize, i128)> = den
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(k, &d)| (k, d as i128))
        .collect();
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for &(k, d) in &support {
                rem[i + k] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}
