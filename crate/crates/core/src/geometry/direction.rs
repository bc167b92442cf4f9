use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;
use crate::cyclo::sign::{sign_cross, sign_im, sign_re};
use crate::cyclo::CycInt;

/// Exact parallelism: `u·w̄ = ū·w`.
pub fn parallel(u: &CycInt, w: &CycInt) -> bool {
    u * &w.conj() == &u.conj() * w
}

/// A direction, stored as an exact nonzero vector normalized into the
/// half-plane of angles `[0, π)`.
#[derive(Clone, Debug)]
pub struct Direction {
    rep: CycInt,
    angle: f64,
}

impl Direction {
    pub fn new(v: CycInt) -> Result<Self, GeometryError> {
        if v.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        let flip = match sign_im(&v) {
            Ordering::Less => true,
            Ordering::Equal => sign_re(&v) == Ordering::Less,
            Ordering::Greater => false,
        };
        let rep = if flip { -v } else { v };
        let [x, y] = rep.embed();
        let mut angle = y.atan2(x);
        if angle < 0.0 {
            angle += PI;
        }
        if angle >= PI {
            angle -= PI;
        }
        Ok(Direction { rep, angle })
    }

    /// Direction of the segment from `a` to `b`.
    pub fn between(a: &CycInt, b: &CycInt) -> Result<Self, GeometryError> {
        Self::new(b.try_sub(a)?)
    }

    pub fn rep(&self) -> &CycInt {
        &self.rep
    }

    pub fn modulus(&self) -> u64 {
        self.rep.modulus()
    }

    /// Angle with the positive real axis, in `[0, π)`.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        parallel(&self.rep, &other.rep)
    }

    pub fn is_parallel_to(&self, v: &CycInt) -> bool {
        parallel(&self.rep, v)
    }

    pub fn is_vertical(&self) -> bool {
        sign_re(&self.rep) == Ordering::Equal
    }

    /// Exact comparison of angles in `[0, π)`.
    pub fn cmp_angle(&self, other: &Direction) -> Ordering {
        match sign_cross(&self.rep, &other.rep) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Unit vector along the direction.
    pub fn unit(&self) -> [f64; 2] {
        [self.angle.cos(), self.angle.sin()]
    }
}

/// Directions compare equal when they are parallel.
impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.is_parallel(other)
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rep.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rep = CycInt::deserialize(d)?;
        Direction::new(rep).map_err(serde::de::Error::custom)
    }
}

/// Pairwise non-parallel directions sorted by angle.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet {
    dirs: Vec<Direction>,
}

impl DirectionSet {
    /// Rejects parallel pairs; sorts by angle.
    pub fn new(mut dirs: Vec<Direction>) -> Result<Self, GeometryError> {
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if dirs[i].modulus() != dirs[j].modulus() {
                    return Err(crate::cyclo::CycloError::ModulusMismatch(
                        dirs[i].modulus(),
                        dirs[j].modulus(),
                    )
                    .into());
                }
                if dirs[i].is_parallel(&dirs[j]) {
                    return Err(GeometryError::ParallelDirections(i, j));
                }
            }
        }
        dirs.sort_by(|a, b| a.cmp_angle(b));
        Ok(DirectionSet { dirs })
    }

    /// Keeps the first of every parallel class.
    pub fn from_distinct<I: IntoIterator<Item = Direction>>(iter: I) -> Self {
        let mut dirs: Vec<Direction> = Vec::new();
        for d in iter {
            if !dirs.iter().any(|e| e.is_parallel(&d)) {
                dirs.push(d);
            }
        }
        dirs.sort_by(|a, b| a.cmp_angle(b));
        DirectionSet { dirs }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction> {
        self.dirs.iter()
    }

    pub fn as_slice(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn contains_parallel(&self, d: &Direction) -> bool {
        self.dirs.iter().any(|u| u.is_parallel(d))
    }

    pub fn angles(&self) -> Vec<f64> {
        self.dirs.iter().map(Direction::angle).collect()
    }

    /// Image under a map that preserves directions up to parallelism.
    pub fn map<F>(&self, f: F) -> Result<Self, GeometryError>
    where
        F: Fn(&CycInt) -> CycInt,
    {
        let dirs = self
            .dirs
            .iter()
            .map(|d| Direction::new(f(d.rep())))
            .collect::<Result<Vec<_>, _>>()?;
        DirectionSet::new(dirs)
    }
}

impl<'a> IntoIterator for &'a DirectionSet {
    type Item = &'a Direction;
    type IntoIter = std::slice::Iter<'a, Direction>;
    fn into_iter(self) -> Self::IntoIter {
        self.dirs.iter()
    }
}

impl Serialize for DirectionSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.dirs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectionSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dirs = Vec::<Direction>::deserialize(d)?;
        DirectionSet::new(dirs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: u64, terms: &[(i64, i64)]) -> CycInt {
        CycInt::from_terms(n, terms).unwrap()
    }

    #[test]
    fn canonical_sign_puts_angle_in_half_open_range() {
        let d = Direction::new(v(4, &[(0, -3)])).unwrap();
        assert_eq!(d.angle(), 0.0);
        assert_eq!(d.rep(), &v(4, &[(0, 3)]));
        let d = Direction::new(v(4, &[(1, -1)])).unwrap();
        assert!((d.angle() - PI / 2.0).abs() < 1e-15);
        assert!(d.is_vertical());
        let d = Direction::new(v(8, &[(5, 1)])).unwrap();
        assert!((d.angle() - PI / 4.0).abs() < 1e-12);
        assert!(matches!(
            Direction::new(CycInt::zero(5).unwrap()),
            Err(GeometryError::ZeroDirection)
        ));
    }

    #[test]
    fn exact_parallelism() {
        let a = v(5, &[(1, 1)]);
        assert!(parallel(&a, &a.scale_i64(-7)));
        assert!(!parallel(&a, &v(5, &[(2, 1)])));
        // ζ^2 - ζ^3 and 1 are parallel for n = 5 (a chord of the pentagon is horizontal)
        assert!(parallel(&v(5, &[(1, 1), (4, -1)]), &v(5, &[(2, 1), (3, -1)])));
    }

    #[test]
    fn set_rejects_parallel_and_sorts() {
        let h = Direction::new(v(4, &[(0, 1)])).unwrap();
        let d = Direction::new(v(4, &[(0, 1), (1, 1)])).unwrap();
        let vv = Direction::new(v(4, &[(1, 1)])).unwrap();
        let set = DirectionSet::new(vec![vv.clone(), h.clone(), d.clone()]).unwrap();
        let angles = set.angles();
        assert!(angles.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            DirectionSet::new(vec![h.clone(), Direction::new(v(4, &[(0, -2)])).unwrap()]),
            Err(GeometryError::ParallelDirections(0, 1))
        ));
        assert_eq!(DirectionSet::from_distinct(vec![h.clone(), h, d]).len(), 2);
    }
}
