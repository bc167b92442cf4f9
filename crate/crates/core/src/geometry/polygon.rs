use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;
use crate::cyclo::sign::{cmp_xy, orientation, sign_cross};
use crate::cyclo::{CycInt, CycloError};

/// A strictly convex polygon with exact vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<CycInt>,
}

impl Polygon {
    pub fn new(vertices: Vec<CycInt>) -> Result<Self, GeometryError> {
        let k = vertices.len();
        if k < 3 {
            return Err(GeometryError::TooFewVertices(k));
        }
        let n = vertices[0].modulus();
        if let Some(v) = vertices.iter().find(|v| v.modulus() != n) {
            return Err(CycloError::ModulusMismatch(n, v.modulus()).into());
        }
        let edges: Vec<CycInt> = (0..k)
            .map(|i| &vertices[(i + 1) % k] - &vertices[i])
            .collect();
        for i in 0..k {
            if sign_cross(&edges[i], &edges[(i + 1) % k]) != Ordering::Greater {
                return Err(GeometryError::NotStrictlyConvex((i + 1) % k));
            }
        }
        // All turns are left turns; the total turning must be one full turn.
        let turning: f64 = (0..k)
            .map(|i| {
                let [ax, ay] = edges[i].embed();
                let [bx, by] = edges[(i + 1) % k].embed();
                (ax * by - ay * bx).atan2(ax * bx + ay * by)
            })
            .sum();
        let winding = (turning / (2.0 * PI)).round() as i64;
        if winding != 1 {
            return Err(GeometryError::NotSimple(winding));
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[CycInt] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.vertices[0].modulus()
    }

    pub fn vertex(&self, i: usize) -> &CycInt {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edge vectors `v_{i+1} - v_i` in cyclic order.
    pub fn edges(&self) -> Vec<CycInt> {
        let k = self.len();
        (0..k).map(|i| self.vertex(i + 1) - self.vertex(i)).collect()
    }

    /// Applies `z ↦ scale·z + shift`; `scale` must be a positive real for the
    /// result to stay counterclockwise.
    pub fn map_homothety(&self, scale: &CycInt, shift: &CycInt) -> Result<Self, GeometryError> {
        let vs = self
            .vertices
            .iter()
            .map(|v| Ok(v.try_mul(scale)?.try_add(shift)?))
            .collect::<Result<Vec<_>, CycloError>>()?;
        Polygon::new(vs)
    }

    /// `Σ v_i`, i.e. `len()` times the vertex centroid.
    pub fn vertex_sum(&self) -> CycInt {
        let mut s = CycInt::zero(self.modulus()).expect("valid modulus");
        for v in &self.vertices {
            s = s + v;
        }
        s
    }

    /// Exact recentering: `len()·v - Σ v`, a homothetic copy with vertex
    /// centroid at the origin.
    pub fn recentered(&self) -> Self {
        let s = self.vertex_sum();
        let k = self.len() as i64;
        Polygon {
            vertices: self.vertices.iter().map(|v| v.scale_i64(k) - &s).collect(),
        }
    }

    /// The midpoint polygon scaled by 2 (vertices `v_i + v_{i+1}`), which
    /// keeps the vertices in the ring.
    pub fn midpoint_doubled(&self) -> Self {
        let k = self.len();
        Polygon {
            vertices: (0..k).map(|i| self.vertex(i) + self.vertex(i + 1)).collect(),
        }
    }

    /// Central symmetry about the origin: `v_{i+k/2} = -v_i`.
    pub fn is_origin_symmetric(&self) -> bool {
        let k = self.len();
        k % 2 == 0 && (0..k / 2).all(|i| *self.vertex(i + k / 2) == -self.vertex(i))
    }

    pub fn embed(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(CycInt::embed).collect()
    }
}

impl Serialize for Polygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<CycInt>::deserialize(d)?;
        Polygon::new(vs).map_err(serde::de::Error::custom)
    }
}

/// Strict convex hull (no collinear boundary points), counterclockwise,
/// by Andrew's monotone chain with exact predicates.
pub fn convex_hull(points: &[CycInt]) -> Result<Polygon, GeometryError> {
    let mut pts: Vec<CycInt> = points.to_vec();
    pts.sort();
    pts.dedup();
    pts.sort_by(cmp_xy);
    if pts.len() < 3 {
        return Err(GeometryError::Degenerate);
    }
    let mut lower: Vec<CycInt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<CycInt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeometryError::Degenerate);
    }
    Polygon::new(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: u64, terms: &[(i64, i64)]) -> CycInt {
        CycInt::from_terms(n, terms).unwrap()
    }

    fn gauss(x: i64, y: i64) -> CycInt {
        pt(4, &[(0, x), (1, y)])
    }

    #[test]
    fn square_is_valid_and_clockwise_is_not() {
        let sq = vec![gauss(0, 0), gauss(1, 0), gauss(1, 1), gauss(0, 1)];
        assert!(Polygon::new(sq.clone()).is_ok());
        let mut cw = sq;
        cw.reverse();
        assert!(matches!(
            Polygon::new(cw),
            Err(GeometryError::NotStrictlyConvex(_))
        ));
    }

    #[test]
    fn collinear_and_star_shapes_rejected() {
        let line = vec![gauss(0, 0), gauss(1, 0), gauss(2, 0), gauss(1, 1)];
        assert!(Polygon::new(line).is_err());
        // pentagram: every turn is a left turn but it winds twice
        let star: Vec<CycInt> = (0..5).map(|j| CycInt::zeta_pow(5, 2 * j).unwrap()).collect();
        assert_eq!(Polygon::new(star), Err(GeometryError::NotSimple(2)));
        assert_eq!(
            Polygon::new(vec![gauss(0, 0), gauss(1, 0)]),
            Err(GeometryError::TooFewVertices(2))
        );
    }

    #[test]
    fn hull_of_grid_block() {
        let pts: Vec<CycInt> = (-1..=1)
            .flat_map(|x| (-1..=1).map(move |y| gauss(x, y)))
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(
            h.vertices(),
            &[gauss(-1, -1), gauss(1, -1), gauss(1, 1), gauss(-1, 1)]
        );
    }

    #[test]
    fn hull_of_pentagon_roots() {
        let mut pts: Vec<CycInt> = (0..5).map(|j| CycInt::zeta_pow(5, j).unwrap()).collect();
        pts.push(CycInt::zero(5).unwrap());
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 5);
    }

    #[test]
    fn midpoint_doubled_of_triangle() {
        let t = Polygon::new(vec![gauss(0, 0), gauss(2, 0), gauss(0, 2)]).unwrap();
        let m = t.midpoint_doubled();
        assert_eq!(m.vertices(), &[gauss(2, 0), gauss(2, 2), gauss(0, 2)]);
    }

    #[test]
    fn recentering_is_exact() {
        let p = Polygon::new(vec![gauss(0, 0), gauss(1, 0), gauss(1, 1), gauss(0, 1)]).unwrap();
        let c = p.recentered();
        assert!(c.vertex_sum().is_zero());
        assert!(c.is_origin_symmetric());
        assert_eq!(c.vertex(0), &gauss(-2, -2));
    }
}
