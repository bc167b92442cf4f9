use std::f64::consts::PI;

use super::GeometryError;

/// A polygon with float vertices in cyclic order.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPolygon {
    pub vertices: Vec<[f64; 2]>,
}

impl FloatPolygon {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        Ok(FloatPolygon { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn centroid(&self) -> [f64; 2] {
        let k = self.len() as f64;
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((0.0, 0.0), |(sx, sy), v| (sx + v[0], sy + v[1]));
        [sx / k, sy / k]
    }

    pub fn translate(&self, t: [f64; 2]) -> Self {
        FloatPolygon {
            vertices: self.vertices.iter().map(|v| [v[0] + t[0], v[1] + t[1]]).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        FloatPolygon {
            vertices: self.vertices.iter().map(|v| [v[0] * s, v[1] * s]).collect(),
        }
    }

    /// Shoelace area, positive for counterclockwise order.
    pub fn signed_area(&self) -> f64 {
        let k = self.len();
        (0..k)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % k];
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
            / 2.0
    }

    fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for a in &self.vertices {
            for b in &self.vertices {
                d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
            }
        }
        d
    }

    fn is_degenerate(&self) -> bool {
        let d = self.diameter();
        d == 0.0 || self.signed_area().abs() <= 1e-12 * d * d
    }

    pub fn edge_vectors(&self) -> Vec<[f64; 2]> {
        let k = self.len();
        (0..k)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % k];
                [b[0] - a[0], b[1] - a[1]]
            })
            .collect()
    }
}

/// Polygon of edge midpoints.
pub fn midpoint_polygon(p: &FloatPolygon) -> FloatPolygon {
    let k = p.len();
    FloatPolygon {
        vertices: (0..k)
            .map(|i| {
                let a = p.vertices[i];
                let b = p.vertices[(i + 1) % k];
                [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
            })
            .collect(),
    }
}

/// Output of [`darboux_iterate`].
#[derive(Clone, Debug)]
pub struct DarbouxRun {
    /// Translation applied to move the centroid of `P_0` to the origin.
    pub recenter_shift: [f64; 2],
    /// `P_0, P_2, …, P_{2k}`.
    pub snapshots: Vec<FloatPolygon>,
}

impl DarbouxRun {
    pub fn last(&self) -> &FloatPolygon {
        self.snapshots.last().expect("at least P_0")
    }
}

/// Rescaled midpoint iteration `P_j = sec(π/n)·M(P_{j-1})`, returning every
/// even iterate up to `P_{2k}`.
pub fn darboux_iterate(p0: &FloatPolygon, k: usize) -> Result<DarbouxRun, GeometryError> {
    if p0.is_degenerate() {
        return Err(GeometryError::Degenerate);
    }
    let c = p0.centroid();
    let recenter_shift = if c[0].hypot(c[1]) > 1e-9 {
        [-c[0], -c[1]]
    } else {
        [0.0, 0.0]
    };
    let mut cur = p0.translate(recenter_shift);
    let sec = 1.0 / (PI / p0.len() as f64).cos();
    let mut snapshots = Vec::with_capacity(k + 1);
    snapshots.push(cur.clone());
    for _ in 0..k {
        cur = midpoint_polygon(&midpoint_polygon(&cur).scale(sec)).scale(sec);
        snapshots.push(cur.clone());
    }
    Ok(DarbouxRun {
        recenter_shift,
        snapshots,
    })
}

/// Maximum vertex deviation from the least-squares affine image of the
/// regular polygon with the same vertex count and labelling.
///
/// With `c_j = cos(2πj/n)`, `s_j = sin(2πj/n)` the basis `1, c, s` is
/// orthogonal over `j = 0..n` for `n ≥ 3`, so the fit is a projection.
pub fn affine_regularity_residual(p: &FloatPolygon) -> Result<f64, GeometryError> {
    if p.is_degenerate() {
        return Err(GeometryError::SingularFit);
    }
    let k = p.len();
    let kf = k as f64;
    let center = p.centroid();
    let mut a = [0.0; 2];
    let mut b = [0.0; 2];
    for (j, v) in p.vertices.iter().enumerate() {
        let t = 2.0 * PI * j as f64 / kf;
        let (s, c) = t.sin_cos();
        for d in 0..2 {
            a[d] += (v[d] - center[d]) * c;
            b[d] += (v[d] - center[d]) * s;
        }
    }
    for d in 0..2 {
        a[d] *= 2.0 / kf;
        b[d] *= 2.0 / kf;
    }
    let det = a[0] * b[1] - a[1] * b[0];
    let scale = p.diameter();
    if det.abs() <= 1e-12 * scale * scale {
        return Err(GeometryError::SingularFit);
    }
    let mut worst: f64 = 0.0;
    for (j, v) in p.vertices.iter().enumerate() {
        let t = 2.0 * PI * j as f64 / kf;
        let (s, c) = t.sin_cos();
        let fx = center[0] + a[0] * c + b[0] * s;
        let fy = center[1] + a[1] * c + b[1] * s;
        worst = worst.max((v[0] - fx).hypot(v[1] - fy));
    }
    Ok(worst)
}

fn angle_mod_pi(v: [f64; 2]) -> f64 {
    let a = v[1].atan2(v[0]);
    a.rem_euclid(PI)
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Float U-polygon test: from every vertex, each direction angle in `u`
/// must be realised by a chord to another vertex within `tol` radians.
pub fn is_u_polygon_float(p: &FloatPolygon, u: &[f64], tol: f64) -> bool {
    p.vertices.iter().enumerate().all(|(i, v)| {
        u.iter().all(|&theta| {
            p.vertices.iter().enumerate().any(|(j, w)| {
                j != i && angular_gap(angle_mod_pi([w[0] - v[0], w[1] - v[1]]), theta) <= tol
            })
        })
    })
}

/// Every edge direction lies within `tol` radians of some angle in `u`.
pub fn edges_within_directions(p: &FloatPolygon, u: &[f64], tol: f64) -> bool {
    p.edge_vectors()
        .into_iter()
        .all(|e| u.iter().any(|&theta| angular_gap(angle_mod_pi(e), theta) <= tol))
}
