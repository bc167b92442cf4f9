//! Certified signs of the real and imaginary parts of embedded elements.
//!
//! A symbolic zero test settles the degenerate case exactly. Otherwise the
//! value is evaluated with a rigorous error bound, first in `f64` and then in
//! big-integer fixed point at doubling precision, until the bound excludes
//! zero. A nonzero element has nonzero embedding, so the refinement stops.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::CycInt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Part {
    Re,
    Im,
}

/// Sign of `Re(z)` under the standard embedding.
pub fn sign_re(z: &CycInt) -> Ordering {
    if (z + &z.conj()).is_zero() {
        return Ordering::Equal;
    }
    certified_sign(z, Part::Re)
}

/// Sign of `Im(z)` under the standard embedding.
pub fn sign_im(z: &CycInt) -> Ordering {
    if z.is_real() {
        return Ordering::Equal;
    }
    certified_sign(z, Part::Im)
}

/// Sign of the cross product `Im(conj(a)·b)`: positive when `b` lies
/// counterclockwise of `a`.
pub fn sign_cross(a: &CycInt, b: &CycInt) -> Ordering {
    sign_im(&(&a.conj() * b))
}

/// Orientation of the triangle `(a, b, c)`.
pub fn orientation(a: &CycInt, b: &CycInt, c: &CycInt) -> Ordering {
    sign_cross(&(b - a), &(c - a))
}

/// Lexicographic `(x, y)` comparison of two embedded points.
pub fn cmp_xy(a: &CycInt, b: &CycInt) -> Ordering {
    let d = a - b;
    sign_re(&d).then_with(|| sign_im(&d))
}

fn certified_sign(z: &CycInt, part: Part) -> Ordering {
    if let Some(s) = f64_sign(z, part) {
        return s;
    }
    let mut bits = 128u32;
    loop {
        if let Some(s) = fixed_sign(z, part, bits) {
            return s;
        }
        assert!(bits < 1 << 20, "sign refinement did not terminate for {z:?}");
        bits *= 2;
    }
}

fn f64_sign(z: &CycInt, part: Part) -> Option<Ordering> {
    let n = z.modulus() as f64;
    let mut value = 0.0f64;
    let mut magnitude = 0.0f64;
    for (j, c) in z.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.to_f64()?;
        if !c.is_finite() {
            return None;
        }
        let t = 2.0 * std::f64::consts::PI * j as f64 / n;
        let w = match part {
            Part::Re => t.cos(),
            Part::Im => t.sin(),
        };
        value += c * w;
        magnitude += c.abs();
    }
    // Per-term trig and conversion error plus summation error, generously.
    let terms = z.coeffs().len() as f64 + 1.0;
    let bound = 64.0 * terms * f64::EPSILON * magnitude;
    if value.abs() > bound {
        Some(if value > 0.0 { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}

fn fixed_sign(z: &CycInt, part: Part, bits: u32) -> Option<Ordering> {
    let n = z.modulus();
    let phi = z.coeffs().len();
    let table = unit_roots_fixed(n, phi, bits);
    let mut value = BigInt::zero();
    let mut magnitude = BigInt::zero();
    for (c, (cos, sin)) in z.coeffs().iter().zip(&table) {
        let w = match part {
            Part::Re => cos,
            Part::Im => sin,
        };
        value += c * w;
        magnitude += c.abs();
    }
    // Every table entry is within ERR_ULPS units of 2^-bits of the truth.
    let bound = magnitude * BigInt::from(ERR_ULPS + 4 * n);
    if value.abs() > bound {
        Some(match value.sign() {
            Sign::Plus => Ordering::Greater,
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
        })
    } else {
        None
    }
}

/// Embedding with absolute error about `2^-60`, for elements whose
/// coefficients are too large for plain `f64` evaluation.
pub(crate) fn embed_fixed(z: &CycInt) -> [f64; 2] {
    let n = z.modulus();
    let magnitude: BigInt = z.coeffs().iter().map(|c| c.abs()).sum();
    let slack = 64 - (ERR_ULPS + 4 * n).leading_zeros();
    let bits = magnitude.bits() as u32 + slack + 64;
    let table = unit_roots_fixed(n, z.coeffs().len(), bits);
    let (mut x, mut y) = (BigInt::zero(), BigInt::zero());
    for (c, (cos, sin)) in z.coeffs().iter().zip(&table) {
        x += c * cos;
        y += c * sin;
    }
    let drop = bits - 64;
    let scale = (64f64).exp2();
    let to = |v: BigInt| (v >> drop).to_f64().unwrap_or(f64::NAN) / scale;
    [to(x), to(y)]
}

const GUARD: u32 = 48;
const ERR_ULPS: u64 = 16;

/// `(cos, sin)` of `2πj/n`, `j < count`, scaled by `2^bits` (truncated).
fn unit_roots_fixed(n: u64, count: usize, bits: u32) -> Vec<(BigInt, BigInt)> {
    let w = bits + GUARD;
    let one = BigInt::from(1) << w;
    let theta = (pi_fixed(w) << 1u32) / BigInt::from(n);
    let (c1, s1) = cos_sin_fixed(&theta, w);
    let mut out = Vec::with_capacity(count);
    let (mut c, mut s) = (one.clone(), BigInt::zero());
    for _ in 0..count {
        out.push((&c >> GUARD, &s >> GUARD));
        let nc = (&c * &c1 - &s * &s1) >> w;
        let ns = (&c * &s1 + &s * &c1) >> w;
        c = nc;
        s = ns;
    }
    out
}

/// `π · 2^w` from Machin's formula.
fn pi_fixed(w: u32) -> BigInt {
    let w2 = w + 16;
    let pi = atan_inv(5, w2) * 16 - atan_inv(239, w2) * 4;
    pi >> 16u32
}

/// `atan(1/x) · 2^w`.
fn atan_inv(x: u64, w: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::from(1) << w) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// Taylor series for `cos θ`, `sin θ` with `θ · 2^w` given, `|θ| ≤ 2π/3`.
fn cos_sin_fixed(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let mut term = BigInt::from(1) << w;
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = (term * theta >> w) / BigInt::from(k);
    }
    (cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_pi_and_trig() {
        let w = 200;
        let pi = pi_fixed(w);
        let approx = pi.to_f64().unwrap() / 2f64.powi(w as i32);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        let table = unit_roots_fixed(7, 6, 100);
        for (j, (c, s)) in table.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 7.0;
            let scale = 2f64.powi(100);
            assert!((c.to_f64().unwrap() / scale - t.cos()).abs() < 1e-14);
            assert!((s.to_f64().unwrap() / scale - t.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn signs_of_simple_elements() {
        let z = CycInt::zeta(5).unwrap();
        assert_eq!(sign_re(&z), Ordering::Greater);
        assert_eq!(sign_im(&z), Ordering::Greater);
        let z2 = CycInt::zeta_pow(5, 2).unwrap();
        assert_eq!(sign_re(&z2), Ordering::Less);
        assert_eq!(sign_im(&CycInt::from_int(5, 3).unwrap()), Ordering::Equal);
        assert_eq!(sign_re(&CycInt::zeta(4).unwrap()), Ordering::Equal);
    }

    #[test]
    fn tiny_value_needs_refinement() {
        // τ^40 · (τ' ^ 40) = 1 makes τ'^40 a tiny positive real; with a huge
        // integer offset, f64 cannot resolve the sign of (τ^{-40} scaled).
        let t = CycInt::from_terms(5, &[(0, 1), (1, 1), (4, 1)]).unwrap();
        let t_conj = t.galois(2).unwrap();
        let small = t_conj.pow(60);
        // small ≈ (-0.618)^60 ≈ 2.9e-13 > 0
        assert_eq!(sign_re(&small), Ordering::Greater);
        let neg = t_conj.pow(61);
        assert_eq!(sign_re(&neg), Ordering::Less);
        assert!(f64_sign(&neg, Part::Re).is_none());
        assert_eq!(fixed_sign(&neg, Part::Re, 128), Some(Ordering::Less));
    }

    #[test]
    fn orientation_and_lexicographic_order() {
        let a = CycInt::zero(8).unwrap();
        let b = CycInt::one(8).unwrap();
        let c = CycInt::zeta(8).unwrap();
        assert_eq!(orientation(&a, &b, &c), Ordering::Greater);
        assert_eq!(orientation(&a, &c, &b), Ordering::Less);
        let d = b.scale_i64(2);
        assert_eq!(orientation(&a, &b, &d), Ordering::Equal);
        assert_eq!(cmp_xy(&a, &b), Ordering::Less);
        assert_eq!(cmp_xy(&c, &b), Ordering::Less);
        assert_eq!(cmp_xy(&b, &b), Ordering::Equal);
    }
}
