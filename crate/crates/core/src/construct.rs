//! Explicit U-polygons of class at least 4.
//!
//! The ring-level constructions take an affinely regular polygon with
//! `lcm(m/2, 2)` vertices in `Z[ζ_n]`. When `m/2` is odd this is already a
//! regular `m`-gon and `U` is any `m/2` consecutive edge directions. When
//! `m/2` is even, translates of the origin-centred `(m/2)`-gon are glued to
//! each of its edges and the hull is a U-polygon for the directions of the
//! edges and diagonals of the small polygon.
//!
//! Embedding into a model set uses a homothety `z ↦ λ^k z + t` where `λ` is a
//! real Pisot-type unit candidate: `λ > 1` while every internal conjugate has
//! modulus below 1, so the internal image of `λ^k F` shrinks geometrically.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{phi, CycInt, CycloError};
use crate::fields::{canonicalize, fired_clause, FieldsError};
use crate::geometry::{
    convex_hull, edge_directions, is_u_polygon, parallel, u_class, Direction, DirectionSet,
    FloatPolygon, GeometryError, Polygon,
};
use crate::modelset::{
    candidate_count, contains, generate_with_budget, star_map, ModelSetError, ModelSetSpec,
};

/// Largest power of the scaler tried by [`construct_u_polygon_in_model_set`].
pub const DEFAULT_K_MAX: u32 = 60;
/// Number of coefficient vectors tried by [`pisot_scaler`].
pub const PISOT_BUDGET: usize = 1_000_000;
/// Physical radius of the patch searched for translates; halved until the
/// enumeration box has at most [`TRANSLATE_BUDGET`] candidates.
pub const TRANSLATE_PATCH_RADIUS: f64 = 6.0;
pub const TRANSLATE_BUDGET: u64 = 20_000_000;

const PISOT_MARGIN: f64 = 1e-3;
const WINDOW_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Fields(#[from] FieldsError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    ModelSet(#[from] ModelSetError),
    #[error("Z[ζ_{n}] has no primitive root of unity of order {k}")]
    NoRootOfUnity { n: u64, k: u64 },
    #[error("m = {m} is inadmissible for n = {n}: {reason}")]
    Inadmissible { n: u64, m: u64, reason: String },
    #[error("k = {0} is not supported, need an even k >= 4")]
    UnsupportedK(u64),
    #[error("polygon is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("no scaler needed or available for n = {0}")]
    NoScalerNeeded(u64),
    #[error("no scaler found among the first {budget} candidates")]
    PisotBudget { budget: usize },
    #[error("internal image still too large for the window at k = {k_max}")]
    KMaxExhausted { k_max: u32 },
    #[error("no translate in the patch of radius {patch_radius} fits for k <= {k_max}")]
    NoTranslate { patch_radius: f64, k_max: u32 },
    #[error("cannot embed an empty configuration")]
    EmptyConfiguration,
    #[error("affine map is singular (det = {0})")]
    SingularAffine(f64),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// `z ↦ scale·z + shift` with `scale = base^k` real and positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Homothety {
    pub scale: CycInt,
    pub k: u32,
    pub shift: CycInt,
    pub base: CycInt,
}

impl Homothety {
    pub fn identity(n: u64) -> Result<Self, CycloError> {
        Ok(Homothety {
            scale: CycInt::one(n)?,
            k: 0,
            shift: CycInt::zero(n)?,
            base: CycInt::one(n)?,
        })
    }

    pub fn apply(&self, z: &CycInt) -> Result<CycInt, CycloError> {
        z.try_mul(&self.scale)?.try_add(&self.shift)
    }

    /// Checks the invariants: scale real with positive embedding.
    pub fn is_valid(&self) -> bool {
        self.scale.is_real() && self.scale.embed()[0] > 0.0
    }
}

/// Float affine map `v ↦ A v + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMapF {
    matrix: [[f64; 2]; 2],
    shift: [f64; 2],
}

impl AffineMapF {
    pub fn new(matrix: [[f64; 2]; 2], shift: [f64; 2]) -> Result<Self, ConstructError> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if !det.is_finite() || det.abs() <= 1e-9 {
            return Err(ConstructError::SingularAffine(det));
        }
        Ok(AffineMapF { matrix, shift })
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.matrix
    }

    pub fn shift(&self) -> [f64; 2] {
        self.shift
    }

    pub fn det(&self) -> f64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    /// The linear part only.
    pub fn apply_vector(&self, v: [f64; 2]) -> [f64; 2] {
        let a = self.matrix;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }

    pub fn apply_point(&self, v: [f64; 2]) -> [f64; 2] {
        let w = self.apply_vector(v);
        [w[0] + self.shift[0], w[1] + self.shift[1]]
    }

    /// Orientation-reversing maps reverse the vertex order to stay
    /// counterclockwise.
    pub fn apply_polygon(&self, p: &FloatPolygon) -> FloatPolygon {
        let mut vertices: Vec<[f64; 2]> = p.vertices.iter().map(|v| self.apply_point(*v)).collect();
        if self.det() < 0.0 {
            vertices.reverse();
        }
        FloatPolygon { vertices }
    }
}

/// A verified U-polygon together with its direction set and class.
#[derive(Clone, Debug, PartialEq)]
pub struct UPolygon {
    pub polygon: Polygon,
    pub directions: DirectionSet,
    pub class: usize,
}

/// A U-polygon placed inside a model set.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedUPolygon {
    pub ring: UPolygon,
    pub placed: UPolygon,
    pub homothety: Homothety,
}

/// Generator of the roots of unity in `Z[ζ_n]`, of order `lcm(2, n)`.
fn root_generator(n: u64) -> Result<(CycInt, u64), CycloError> {
    if n % 2 == 0 {
        Ok((CycInt::zeta(n)?, n))
    } else {
        // -ζ^{(n+1)/2} = exp(2πi/(2n))
        Ok((-CycInt::zeta_pow(n, ((n + 1) / 2) as i64)?, 2 * n))
    }
}

/// Regular `k`-gon with vertices `ρ^j`, `ρ = exp(2πi/k)` taken in `Z[ζ_n]`.
pub fn regular_polygon_exact(n: u64, k: u64) -> Result<Polygon, ConstructError> {
    let (g, order) = root_generator(n)?;
    if k < 3 || order % k != 0 {
        return Err(ConstructError::NoRootOfUnity { n, k });
    }
    let rho = g.pow((order / k) as u32);
    let mut vs = Vec::with_capacity(k as usize);
    let mut cur = CycInt::one(n)?;
    for _ in 0..k {
        vs.push(cur.clone());
        cur = &cur * &rho;
    }
    Ok(Polygon::new(vs)?)
}

/// `0, 1, 1 + ζ, ζ`.
pub fn affine_parallelogram(n: u64) -> Result<Polygon, ConstructError> {
    let z = CycInt::zeta(n)?;
    let one = CycInt::one(n)?;
    Ok(Polygon::new(vec![
        CycInt::zero(n)?,
        one.clone(),
        &one + &z,
        z,
    ])?)
}

/// `1, ζ, ζ - 1, -1, -ζ, 1 - ζ`: the image of the regular hexagon under the
/// linear map fixing 1 and sending `exp(iπ/3)` to `ζ`.
pub fn affine_hexagon(n: u64) -> Result<Polygon, ConstructError> {
    let z = CycInt::zeta(n)?;
    let one = CycInt::one(n)?;
    Ok(Polygon::new(vec![
        one.clone(),
        z.clone(),
        &z - &one,
        -one.clone(),
        -z.clone(),
        &one - &z,
    ])?)
}

/// Affinely regular `k`-gon in `Z[ζ_n]`.
///
/// Apart from `k ∈ {4, 6}`, admissibility supplies the needed root of
/// unity: `m | 2n` with `m/2` odd gives `k = m | lcm(2, n)`; `m | 2n` with
/// `m/2` even makes `n` even and `k = m/2 | n`; `m = 4d` with `d | n` odd
/// gives `k = 2d | 2n`.
pub fn affinely_regular_polygon_in_ring(n: u64, k: u64) -> Result<Polygon, ConstructError> {
    match k {
        4 => affine_parallelogram(n),
        6 => affine_hexagon(n),
        k if k >= 4 && k % 2 == 0 => regular_polygon_exact(n, k),
        k => Err(ConstructError::UnsupportedK(k)),
    }
}

/// Directions of all edges and diagonals of `p`.
fn chord_directions(p: &Polygon) -> DirectionSet {
    let vs = p.vertices();
    let mut dirs = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            dirs.push(Direction::between(&vs[i], &vs[j]).expect("vertices are distinct"));
        }
    }
    DirectionSet::from_distinct(dirs)
}

/// Glues `P + (v_j + v_{j+1})` to every edge of the origin-centred copy of
/// `P` and takes the convex hull.
///
/// `P` is first recentred exactly (`s·v - Σv`) if its vertex centroid is not
/// the origin. Returns the hull and the `s` directions of edges and
/// diagonals of `P`, after checking that the hull has `2s` edges and is a
/// U-polygon of class `s` for them.
pub fn attach_translates(p: &Polygon) -> Result<(Polygon, DirectionSet), ConstructError> {
    let p = if p.vertex_sum().is_zero() {
        p.clone()
    } else {
        p.recentered()
    };
    if !p.is_origin_symmetric() {
        return Err(ConstructError::NotCentrallySymmetric);
    }
    let s = p.len();
    let mut points: Vec<CycInt> = p.vertices().to_vec();
    for j in 0..s {
        let t = p.vertex(j) + p.vertex(j + 1);
        points.extend(p.vertices().iter().map(|v| v + &t));
    }
    let hull = convex_hull(&points)?;
    let u = chord_directions(&p);
    if u.len() != s {
        return Err(ConstructError::Postcondition(format!(
            "{} edge and diagonal directions, expected {s}",
            u.len()
        )));
    }
    if hull.len() != 2 * s {
        return Err(ConstructError::Postcondition(format!(
            "hull has {} edges, expected {}",
            hull.len(),
            2 * s
        )));
    }
    if !is_u_polygon(&hull, &u) {
        return Err(ConstructError::Postcondition(
            "attachment hull is not a U-polygon".into(),
        ));
    }
    let class = u_class(&hull, &u)?;
    if class != s {
        return Err(ConstructError::Postcondition(format!(
            "attachment hull has class {class}, expected {s}"
        )));
    }
    Ok((hull, u))
}

fn inadmissible(n: u64, m: u64) -> ConstructError {
    let quarter = if m % 4 != 0 {
        "4 ∤ m".to_string()
    } else if (m / 4) % 2 == 0 {
        format!("m/4 = {} is even", m / 4)
    } else {
        format!("m/4 = {} does not divide n", m / 4)
    };
    ConstructError::Inadmissible {
        n,
        m,
        reason: format!("m ∉ {{8, 12}}, m ∤ 2n = {}, and {quarter}", 2 * n),
    }
}

/// A U-polygon with `m` edges and class at least 4 in `Z[ζ_n]`.
pub fn construct_u_polygon_ring(n: u64, m: u64) -> Result<UPolygon, ConstructError> {
    let n = canonicalize(n);
    if fired_clause(n, m)?.is_none() {
        return Err(inadmissible(n, m));
    }
    let half = m / 2;
    let (polygon, directions) = if half % 2 == 1 {
        let p = regular_polygon_exact(n, m)?;
        let edges = edge_directions(&p);
        let u = DirectionSet::new(edges[..half as usize].to_vec())?;
        (p, u)
    } else {
        attach_translates(&affinely_regular_polygon_in_ring(n, half)?)?
    };
    let out = verify_u_polygon(polygon, directions, m)?;
    if half % 2 == 1 && out.class as u64 != half {
        return Err(ConstructError::Postcondition(format!(
            "class {} but m/2 = {half}",
            out.class
        )));
    }
    Ok(out)
}

fn verify_u_polygon(
    polygon: Polygon,
    directions: DirectionSet,
    m: u64,
) -> Result<UPolygon, ConstructError> {
    if polygon.len() as u64 != m {
        return Err(ConstructError::Postcondition(format!(
            "{} edges, expected {m}",
            polygon.len()
        )));
    }
    if !is_u_polygon(&polygon, &directions) {
        return Err(ConstructError::Postcondition("not a U-polygon".into()));
    }
    let class = u_class(&polygon, &directions)?;
    if class < 4 {
        return Err(ConstructError::Postcondition(format!("class {class} < 4")));
    }
    Ok(UPolygon {
        polygon,
        directions,
        class,
    })
}

/// Integer coefficient vectors of length `len` with L1 norm `s`, in
/// lexicographic order.
fn vectors_with_norm(len: usize, s: i64, prefix: &mut Vec<i64>, out: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    if len == 1 {
        for c in [-s, s] {
            prefix.push(c);
            let stop = out(prefix);
            prefix.pop();
            if stop || s == 0 {
                return stop;
            }
        }
        return false;
    }
    for c in -s..=s {
        prefix.push(c);
        let stop = vectors_with_norm(len - 1, s - c.abs(), prefix, out);
        prefix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Real `λ = Σ c_j t^j`, `t = ζ + ζ̄`, with `λ > 1` and every internal
/// conjugate of modulus `< 1` (both with margin `1e-3`).
///
/// Polynomials of degree below `φ(n)/2` are tried by increasing L1 norm of
/// the coefficients, then lexicographically; the first hit is returned.
pub fn pisot_scaler(n: u64) -> Result<CycInt, ConstructError> {
    pisot_scaler_with_budget(n, PISOT_BUDGET)
}

pub fn pisot_scaler_with_budget(n: u64, budget: usize) -> Result<CycInt, ConstructError> {
    let n = canonicalize(n);
    if n <= 4 {
        return Err(ConstructError::NoScalerNeeded(n));
    }
    let deg = (phi(n)? / 2) as usize;
    let mut embeddings = vec![1u64];
    embeddings.extend(crate::modelset::default_automorphism_reps(n));
    let ts: Vec<f64> = embeddings
        .iter()
        .map(|&a| 2.0 * (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos())
        .collect();
    let eval = |c: &[i64], t: f64| c.iter().rev().fold(0.0, |acc, &cj| acc * t + cj as f64);
    let mut tried = 0usize;
    let mut hit: Option<Vec<i64>> = None;
    let mut s = 1i64;
    while hit.is_none() && tried < budget {
        vectors_with_norm(deg, s, &mut Vec::new(), &mut |c| {
            tried += 1;
            let ok = eval(c, ts[0]) > 1.0 + PISOT_MARGIN
                && ts[1..].iter().all(|&t| eval(c, t).abs() < 1.0 - PISOT_MARGIN);
            if ok {
                hit = Some(c.to_vec());
            }
            ok || tried >= budget
        });
        s += 1;
    }
    let c = hit.ok_or(ConstructError::PisotBudget { budget })?;
    let t = CycInt::zeta(n)? + CycInt::zeta(n)?.conj();
    let mut lambda = CycInt::zero(n)?;
    let mut power = CycInt::one(n)?;
    for cj in c {
        lambda = lambda + power.scale_i64(cj);
        power = &power * &t;
    }
    Ok(lambda)
}

/// Finds `h(z) = λ^k z + t`, `k ≤ k_max`, with every `h(z)` in the model set.
///
/// Candidate translates are the points of a generated patch sorted by their
/// internal distance to the window center; the first that keeps the whole
/// image at least `1e-6` inside the window wins.
pub fn embed_in_model_set(
    f: &[CycInt],
    spec: &ModelSetSpec,
    k_max: u32,
) -> Result<(Homothety, Vec<CycInt>), ConstructError> {
    if f.is_empty() {
        return Err(ConstructError::EmptyConfiguration);
    }
    let n = spec.n();
    if let Some(z) = f.iter().find(|z| z.modulus() != n) {
        return Err(CycloError::ModulusMismatch(n, z.modulus()).into());
    }
    if spec.is_lattice() {
        return Ok((Homothety::identity(n)?, f.to_vec()));
    }
    let lambda = pisot_scaler(n)?;
    let conj: Vec<f64> = spec
        .reps()
        .iter()
        .map(|&a| Ok(lambda.galois(a)?.embed()[0]))
        .collect::<Result<_, CycloError>>()?;
    let stars: Vec<Vec<f64>> = f
        .iter()
        .map(|z| star_map(spec, z))
        .collect::<Result<_, _>>()?;

    let mut patch_radius = TRANSLATE_PATCH_RADIUS;
    while patch_radius > 0.5 && candidate_count(spec, patch_radius)? > TRANSLATE_BUDGET as u128 {
        patch_radius /= 2.0;
    }
    let patch = generate_with_budget(spec, patch_radius, TRANSLATE_BUDGET)?;
    let mut candidates: Vec<(f64, CycInt, Vec<f64>)> = patch
        .points
        .into_iter()
        .map(|t| {
            let off = spec.internal_offset(&t)?;
            let d = off.iter().map(|x| x * x).sum::<f64>().sqrt();
            Ok((d, t, off))
        })
        .collect::<Result<_, ModelSetError>>()?;
    // stable: equal distances keep coefficient order
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let window = spec.window();
    let mut ever_fits = false;
    for k in 0..=k_max {
        let cluster: Vec<Vec<f64>> = stars
            .iter()
            .map(|s| {
                s.iter()
                    .enumerate()
                    .map(|(i, x)| x * conj[i / 2].powi(k as i32))
                    .collect()
            })
            .collect();
        // best conceivable placement: cluster centroid on the window center
        let dim = spec.internal_dim();
        let mean: Vec<f64> = (0..dim)
            .map(|i| cluster.iter().map(|c| c[i]).sum::<f64>() / cluster.len() as f64)
            .collect();
        let centred_fits = cluster.iter().all(|c| {
            let v: Vec<f64> = c.iter().zip(&mean).map(|(x, m)| x - m).collect();
            window.interior_margin(&v) >= WINDOW_MARGIN
        });
        if !centred_fits {
            continue;
        }
        ever_fits = true;
        let first = candidates.par_iter().position_first(|(_, _, off)| {
            cluster.iter().all(|c| {
                let v: Vec<f64> = c.iter().zip(off).map(|(x, o)| x + o).collect();
                window.interior_margin(&v) >= WINDOW_MARGIN
            })
        });
        if let Some(idx) = first {
            let scale = lambda.pow(k);
            let h = Homothety {
                scale,
                k,
                shift: candidates[idx].1.clone(),
                base: lambda.clone(),
            };
            let images = f.iter().map(|z| h.apply(z)).collect::<Result<Vec<_>, _>>()?;
            let all_in = images
                .iter()
                .map(|z| contains(spec, z))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .all(|b| b);
            if all_in {
                return Ok((h, images));
            }
        }
    }
    if ever_fits {
        Err(ConstructError::NoTranslate {
            patch_radius,
            k_max,
        })
    } else {
        Err(ConstructError::KMaxExhausted { k_max })
    }
}

/// A verified U-polygon with `m` edges and class at least 4 whose vertices
/// all lie in the model set.
pub fn construct_u_polygon_in_model_set(
    spec: &ModelSetSpec,
    m: u64,
) -> Result<EmbeddedUPolygon, ConstructError> {
    construct_u_polygon_in_model_set_with(spec, m, DEFAULT_K_MAX)
}

pub fn construct_u_polygon_in_model_set_with(
    spec: &ModelSetSpec,
    m: u64,
    k_max: u32,
) -> Result<EmbeddedUPolygon, ConstructError> {
    let ring = construct_u_polygon_ring(spec.n(), m)?;
    let (h, _) = embed_in_model_set(ring.polygon.vertices(), spec, k_max)?;
    let placed = ring.polygon.map_homothety(&h.scale, &h.shift)?;
    for (a, b) in edge_directions(&ring.polygon).iter().zip(edge_directions(&placed)) {
        if !parallel(a.rep(), b.rep()) {
            return Err(ConstructError::Postcondition(
                "homothety changed an edge direction".into(),
            ));
        }
    }
    for v in placed.vertices() {
        if !contains(spec, v)? {
            return Err(ConstructError::Postcondition(format!(
                "vertex {v} is not in the model set"
            )));
        }
    }
    let placed = verify_u_polygon(placed, ring.directions.clone(), m)?;
    Ok(EmbeddedUPolygon {
        ring,
        placed,
        homothety: h,
    })
}

impl fmt::Display for UPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-gon, {} directions, class {}",
            self.polygon.len(),
            self.directions.len(),
            self.class
        )
    }
}
