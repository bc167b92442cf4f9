//! Shared fixtures for the criterion benches.

use quasipoly_core::cyclo::phi;
use quasipoly_core::CycInt;

/// Deterministic dense elements of `Z[ζ_n]` with coefficients in `-3..=3`.
pub fn dense_elements(n: u64, count: usize) -> Vec<CycInt> {
    let d = phi(n).expect("valid modulus") as usize;
    (0..count)
        .map(|i| {
            let c: Vec<i64> = (0..d).map(|j| ((i * 7 + j * 13 + i * j) % 7) as i64 - 3).collect();
            CycInt::from_i64_coeffs(n, &c).expect("length φ(n)")
        })
        .collect()
}
