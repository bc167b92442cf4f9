//! Cross ratios of slopes.
//!
//! `⟨t1, t2, t3, t4⟩ = (t3 - t1)(t4 - t2) / ((t3 - t2)(t4 - t1))`. Each `t_i`
//! occurs in exactly one numerator and one denominator factor, so an infinite
//! argument simply drops both of its factors.

use std::f64::consts::PI;

use super::{Direction, GeometryError};
use crate::cyclo::CycInt;

/// A point of the projectively extended real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::Finite(v)
    }
}

impl Direction {
    /// `tan` of the angle; vertical directions have slope `∞`.
    pub fn slope(&self) -> ExtReal {
        if self.is_vertical() {
            ExtReal::Infinity
        } else {
            let [x, y] = self.rep().embed();
            ExtReal::Finite(y / x)
        }
    }
}

pub fn cross_ratio(t: [ExtReal; 4]) -> Result<f64, GeometryError> {
    for i in 0..4 {
        for j in i + 1..4 {
            if t[i] == t[j] {
                return Err(GeometryError::RepeatedArgument);
            }
        }
    }
    let diff = |a: usize, b: usize| match (t[a], t[b]) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => Some(x - y),
        _ => None,
    };
    let mut num = 1.0;
    let mut den = 1.0;
    for (a, b) in [(2, 0), (3, 1)] {
        if let Some(d) = diff(a, b) {
            num *= d;
        }
    }
    for (a, b) in [(2, 1), (3, 0)] {
        if let Some(d) = diff(a, b) {
            den *= d;
        }
    }
    Ok(num / den)
}

/// Slope of a float vector; `x == 0` gives `∞`.
pub fn slope_of_vector(v: [f64; 2]) -> ExtReal {
    if v[0] == 0.0 {
        ExtReal::Infinity
    } else {
        ExtReal::Finite(v[1] / v[0])
    }
}

pub fn cross_ratio_of_vectors(v: [[f64; 2]; 4]) -> Result<f64, GeometryError> {
    cross_ratio(v.map(slope_of_vector))
}

fn check_non_parallel(u: &[Direction; 4]) -> Result<(), GeometryError> {
    for i in 0..4 {
        for j in i + 1..4 {
            if u[i].is_parallel(&u[j]) {
                return Err(GeometryError::ParallelDirections(i, j));
            }
        }
    }
    Ok(())
}

pub fn cross_ratio_of_directions(u: &[Direction; 4]) -> Result<f64, GeometryError> {
    check_non_parallel(u)?;
    cross_ratio([u[0].slope(), u[1].slope(), u[2].slope(), u[3].slope()])
}

/// The cross ratio as an exact quotient `num / den` of two real elements of
/// the ring: with `w_ij = ū_i u_j - u_i ū_j`, it equals
/// `w_13 w_24 / (w_23 w_14)`.
pub fn cross_ratio_exact(u: &[Direction; 4]) -> Result<(CycInt, CycInt), GeometryError> {
    check_non_parallel(u)?;
    let w = |i: usize, j: usize| {
        let a = u[i].rep();
        let b = u[j].rep();
        &a.conj() * b - a * &b.conj()
    };
    let num = w(0, 2) * w(1, 3);
    let den = w(1, 2) * w(0, 3);
    Ok((num, den))
}

/// `q(m) = (2 + 2cos(4π/m)) / (1 + 2cos(4π/m))`: the cross ratio of the
/// slopes of four consecutive edge directions of a regular `m`-gon.
pub fn consecutive_edge_cross_ratio_regular(m: u64) -> Result<f64, GeometryError> {
    if m < 8 || m % 2 == 1 {
        return Err(GeometryError::BadEdgeNumber(m));
    }
    let c = 2.0 * (4.0 * PI / m as f64).cos();
    let den = 1.0 + c;
    if den.abs() < 1e-12 {
        return Err(GeometryError::DenominatorVanishes);
    }
    Ok((2.0 + c) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtReal::*;

    #[test]
    fn direct_values() {
        let q = cross_ratio([0.0.into(), 1.0.into(), 2.0.into(), 3.0.into()]).unwrap();
        assert!((q - 4.0 / 3.0).abs() < 1e-15);
        let q = cross_ratio([0.0.into(), 1.0.into(), 2.0.into(), Infinity]).unwrap();
        assert!((q - 2.0).abs() < 1e-15);
        let q = cross_ratio([0.0.into(), 1.0.into(), Infinity, Finite(-1.0)]).unwrap();
        assert!((q - 2.0).abs() < 1e-15);
        assert_eq!(
            cross_ratio([0.0.into(), 1.0.into(), 1.0.into(), 3.0.into()]),
            Err(GeometryError::RepeatedArgument)
        );
    }

    #[test]
    fn infinity_is_the_limit_of_large_arguments() {
        for slot in 0..4 {
            let mut finite = [Finite(0.3), Finite(-1.7), Finite(2.2), Finite(5.0)];
            let mut inf = finite;
            inf[slot] = Infinity;
            finite[slot] = Finite(1e9);
            let a = cross_ratio(inf).unwrap();
            let b = cross_ratio(finite).unwrap();
            assert!((a - b).abs() < 1e-6, "slot {slot}: {a} vs {b}");
        }
    }

    #[test]
    fn regular_closed_form() {
        assert!((consecutive_edge_cross_ratio_regular(8).unwrap() - 2.0).abs() < 1e-12);
        assert!((consecutive_edge_cross_ratio_regular(12).unwrap() - 1.5).abs() < 1e-12);
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        let q20 = consecutive_edge_cross_ratio_regular(20).unwrap();
        assert!((q20 - 1.381966).abs() < 1e-6);
        assert!((q20 - (2.0 + tau) / (1.0 + tau)).abs() < 1e-12);
        assert!(consecutive_edge_cross_ratio_regular(7).is_err());
        assert!(consecutive_edge_cross_ratio_regular(6).is_err());
    }

    #[test]
    fn slopes_of_twentieth_roots() {
        let d: Vec<Direction> = (0..4)
            .map(|j| Direction::new(CycInt::zeta_pow(20, j).unwrap()).unwrap())
            .collect();
        let q = cross_ratio_of_directions(&[d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()])
            .unwrap();
        assert!((q - 1.381966).abs() < 1e-6);
        assert!((q / (q - 1.0) - 2.0 - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn parallel_arguments_rejected() {
        let a = Direction::new(CycInt::zeta(5).unwrap()).unwrap();
        let b = Direction::new(CycInt::zeta_pow(5, 2).unwrap()).unwrap();
        let c = Direction::new(CycInt::one(5).unwrap()).unwrap();
        let a2 = Direction::new(CycInt::zeta(5).unwrap().scale_i64(3)).unwrap();
        assert_eq!(
            cross_ratio_of_directions(&[a, b, c, a2]),
            Err(GeometryError::ParallelDirections(0, 3))
        );
    }
}
