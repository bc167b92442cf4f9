//! Existence of U-polygons of class at least 4 with `m` edges in a
//! cyclotomic model set over `Z[ζ_n]`.
//!
//! Two independent deciders are provided and are expected to agree:
//!
//! * [`decide_vi`]: `m ∈ {8, 12}` or `Q(ζ_{m/2}) ⊆ Q(ζ_n)`, tested through
//!   [`cyclotomic_inclusion`];
//! * [`decide_vii`]: `m ∈ {8, 12}`, or `m | 2n`, or `m = 4d` with `d` an odd
//!   divisor of `n`, which is pure integer arithmetic.
//!
//! The remaining equivalent formulations (real subfield inclusions, ring
//! inclusions) are restatements of these and have no separate engine.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FieldsError {
    #[error("n = {0} is too small, need n >= 3")]
    ModulusTooSmall(u64),
    #[error("m = {0} is odd, the edge number must be even")]
    OddEdgeNumber(u64),
    #[error("m = {0} is below 8")]
    EdgeNumberTooSmall(u64),
}

/// The pair of fields `Q(ζ_n)` and `Q(ζ_n + ζ̄_n)`, identified by `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldRef(u64);

impl FieldRef {
    /// Normalizes `n ≡ 2 (mod 4)` to `n/2`, which names the same field.
    pub fn new(n: u64) -> Self {
        FieldRef(canonicalize(n))
    }

    pub fn n(self) -> u64 {
        self.0
    }

    /// `Q(ζ_self) ⊆ Q(ζ_other)`.
    pub fn is_subfield_of(self, other: FieldRef) -> bool {
        other.0 % self.0 == 0
    }
}

/// `n/2` when `n ≡ 2 (mod 4)`, else `n`. Idempotent.
pub fn canonicalize(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Whether `Q(ζ_a) ⊆ Q(ζ_b)`.
pub fn cyclotomic_inclusion(a: u64, b: u64) -> bool {
    FieldRef::new(a).is_subfield_of(FieldRef::new(b))
}

/// Which alternative of the divisibility criterion holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Clause {
    /// `m ∈ {8, 12}`: parallelogram- and hexagon-based polygons exist always.
    Special { m: u64 },
    /// `m | 2n`.
    DividesTwiceN { m: u64, n: u64 },
    /// `m = 4d` for an odd divisor `d` of `n`.
    FourTimesOddDivisor { d: u64 },
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Special { m } => write!(f, "m ∈ {{8, 12}} (m = {m})"),
            Clause::DividesTwiceN { m, n } => write!(f, "m | 2n ({m} | {})", 2 * n),
            Clause::FourTimesOddDivisor { d } => write!(f, "m = 4d, d = {d} odd divisor"),
        }
    }
}

fn check(n: u64, m: u64) -> Result<(), FieldsError> {
    if n < 3 {
        Err(FieldsError::ModulusTooSmall(n))
    } else if m % 2 == 1 {
        Err(FieldsError::OddEdgeNumber(m))
    } else if m < 8 {
        Err(FieldsError::EdgeNumberTooSmall(m))
    } else {
        Ok(())
    }
}

/// The first clause of the divisibility criterion that fires, if any.
pub fn fired_clause(n: u64, m: u64) -> Result<Option<Clause>, FieldsError> {
    check(n, m)?;
    if m == 8 || m == 12 {
        return Ok(Some(Clause::Special { m }));
    }
    if (2 * n) % m == 0 {
        return Ok(Some(Clause::DividesTwiceN { m, n }));
    }
    if m % 4 == 0 {
        let d = m / 4;
        if d % 2 == 1 && n % d == 0 {
            return Ok(Some(Clause::FourTimesOddDivisor { d }));
        }
    }
    Ok(None)
}

/// Divisibility form of the criterion.
pub fn decide_vii(n: u64, m: u64) -> Result<bool, FieldsError> {
    fired_clause(n, m).map(|c| c.is_some())
}

/// Field-inclusion form of the criterion.
pub fn decide_vi(n: u64, m: u64) -> Result<bool, FieldsError> {
    check(n, m)?;
    Ok(m == 8 || m == 12 || cyclotomic_inclusion(m / 2, n))
}

/// All even `m ≥ 8` admitting a U-polygon of class at least 4.
///
/// `m | 2n` forces `m ≤ 2n` and `m = 4d` with `d | n` forces `m ≤ 4n`, so
/// scanning up to `max(4n, 12)` is exhaustive.
pub fn admissible_edge_numbers(n: u64) -> Result<Vec<u64>, FieldsError> {
    if n < 3 {
        return Err(FieldsError::ModulusTooSmall(n));
    }
    let bound = (4 * n).max(12);
    let out: Vec<u64> = (8..=bound)
        .step_by(2)
        .filter(|&m| decide_vii(n, m).unwrap_or(false))
        .collect();
    debug_assert!(
        ((bound + 2)..=(2 * bound + 24))
            .step_by(2)
            .all(|m| !decide_vii(n, m).unwrap_or(false)),
        "admissible m beyond the search bound for n = {n}"
    );
    Ok(out)
}

/// Deterministic primality for `u64` (Miller–Rabin with the standard bases).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `p` and `2p + 1` both prime. Returns `false` when `2p + 1` overflows `u64`.
pub fn is_sophie_germain(p: u64) -> bool {
    match p.checked_mul(2).and_then(|q| q.checked_add(1)) {
        Some(q) => is_prime(p) && is_prime(q),
        None => false,
    }
}

/// The closed-form answer for the moduli where the degree of the real
/// subfield is 1 or prime; `None` where no closed form applies.
pub fn corollary2_table(n: u64) -> Result<Option<Vec<u64>>, FieldsError> {
    if n < 3 {
        return Err(FieldsError::ModulusTooSmall(n));
    }
    let n = canonicalize(n);
    let table = match n {
        3 | 4 => Some(vec![8, 12]),
        8 | 12 => Some(vec![8, 12, 2 * n]),
        9 => Some(vec![8, 12, 2 * n, 4 * n]),
        _ if n % 2 == 1 && is_sophie_germain((n - 1) / 2) => Some(vec![8, 12, 2 * n, 4 * n]),
        _ => None,
    };
    Ok(table.map(|mut t| {
        t.sort_unstable();
        t.dedup();
        t
    }))
}
