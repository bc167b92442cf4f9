//! Cut-and-project sets `{ z ∈ Z[ζ_n] : z⋆ - shift ∈ W }`.
//!
//! The star map sends `z` to `(σ_a(z))_a` for one automorphism `a` out of
//! every complex-conjugate pair other than `{id, conjugation}`, giving a
//! vector in `R^{φ(n)-2}`. For `n ∈ {3, 4}` the internal space is trivial and
//! the model set is the whole lattice.
//!
//! Finite patches are enumerated by inverting the `φ(n) × φ(n)` matrix of
//! physical and internal embeddings of the power basis, mapping the product
//! of the physical disk and the window's bounding box back to an integer
//! coordinate box, and filtering every candidate.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{phi, CoeffList, CycInt, CycloError, OwnedCoeffList};
use crate::fields::canonicalize;
use crate::FORMAT_TAG;

/// Default cap on the number of integer candidates scanned by [`generate`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelSetError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("model sets need n >= 3 after canonicalization, got {0}")]
    ModulusTooSmall(u64),
    #[error("window must have a non-empty interior and bounded closure")]
    BadWindow,
    #[error("window has dimension {got}, internal space has dimension {expected}")]
    WindowDimension { got: usize, expected: usize },
    #[error("shift has dimension {got}, internal space has dimension {expected}")]
    ShiftDimension { got: usize, expected: usize },
    #[error("invalid automorphism representatives {0:?}")]
    BadReps(Vec<u64>),
    #[error("radius must be positive and finite")]
    BadRadius,
    #[error("enumeration needs {candidates} candidates, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
    #[error("embedding matrix is singular")]
    SingularEmbedding,
    #[error("need at least 2 points within 0.8·R, found {0}")]
    TooFewPoints(usize),
}

/// A window in internal space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// Open Euclidean ball about the origin.
    Ball { radius: f64 },
    /// Open axis-aligned box about the origin.
    Box { half_widths: Vec<f64> },
}

impl Window {
    fn validate(&self, dim: usize) -> Result<(), ModelSetError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        match self {
            Window::Ball { radius } => {
                if !ok(*radius) {
                    return Err(ModelSetError::BadWindow);
                }
            }
            Window::Box { half_widths } => {
                if half_widths.len() != dim {
                    return Err(ModelSetError::WindowDimension {
                        got: half_widths.len(),
                        expected: dim,
                    });
                }
                if !half_widths.iter().all(|&h| ok(h)) {
                    return Err(ModelSetError::BadWindow);
                }
            }
        }
        Ok(())
    }

    /// Strict interior membership of a point given relative to the center.
    pub fn contains_interior(&self, v: &[f64]) -> bool {
        self.interior_margin(v) > 0.0
    }

    /// Distance-like slack to the boundary (positive inside). For boxes this
    /// is the smallest per-axis slack.
    pub fn interior_margin(&self, v: &[f64]) -> f64 {
        match self {
            Window::Ball { radius } => radius - v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Window::Box { half_widths } => v
                .iter()
                .zip(half_widths)
                .map(|(x, h)| h - x.abs())
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Half-widths of the bounding box in each of `dim` coordinates.
    pub fn bounding_half_widths(&self, dim: usize) -> Vec<f64> {
        match self {
            Window::Ball { radius } => vec![*radius; dim],
            Window::Box { half_widths } => half_widths.clone(),
        }
    }

    /// Parses `ball:R` or `box:h1,h2,...`.
    pub fn parse(s: &str) -> Result<Self, ModelSetError> {
        let (kind, rest) = s.split_once(':').ok_or(ModelSetError::BadWindow)?;
        let nums: Result<Vec<f64>, _> = rest.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let nums = nums.map_err(|_| ModelSetError::BadWindow)?;
        match (kind, nums.as_slice()) {
            ("ball", [r]) => Ok(Window::Ball { radius: *r }),
            ("box", hs) if !hs.is_empty() => Ok(Window::Box {
                half_widths: hs.to_vec(),
            }),
            _ => Err(ModelSetError::BadWindow),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Ball { radius } => write!(f, "ball:{radius}"),
            Window::Box { half_widths } => {
                let hs: Vec<String> = half_widths.iter().map(|h| h.to_string()).collect();
                write!(f, "box:{}", hs.join(","))
            }
        }
    }
}

/// Smallest member of every pair `{a, n - a}` of units other than `{1, n-1}`.
pub fn default_automorphism_reps(n: u64) -> Vec<u64> {
    (2..n)
        .filter(|&a| a.gcd(&n) == 1 && a < n - a)
        .collect()
}

/// Default generic shift: `0.01, 0.013, 0.016, …`.
pub fn default_shift(dim: usize) -> Vec<f64> {
    (0..dim).map(|i| 0.01 + 0.003 * i as f64).collect()
}

/// One cyclotomic model set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ModelSetSpec {
    n: u64,
    reps: Vec<u64>,
    window: Window,
    shift: Vec<f64>,
    translate: CycInt,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    n: u64,
    reps: Vec<u64>,
    window: Window,
    shift: Vec<f64>,
    translate: CycInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<SpecRepr> for ModelSetSpec {
    type Error = ModelSetError;
    fn try_from(r: SpecRepr) -> Result<Self, ModelSetError> {
        ModelSetSpec::new(r.n, r.window)?
            .with_reps(r.reps)?
            .with_shift(r.shift)?
            .with_translate(r.translate)
            .map(|s| s.with_label(r.label))
    }
}

impl From<ModelSetSpec> for SpecRepr {
    fn from(s: ModelSetSpec) -> Self {
        SpecRepr {
            n: s.n,
            reps: s.reps,
            window: s.window,
            shift: s.shift,
            translate: s.translate,
            label: s.label,
        }
    }
}

impl ModelSetSpec {
    /// Canonicalizes `n`, uses the default representatives and shift and a
    /// zero translate.
    pub fn new(n: u64, window: Window) -> Result<Self, ModelSetError> {
        let n = canonicalize(n);
        if n < 3 {
            return Err(ModelSetError::ModulusTooSmall(n));
        }
        let reps = default_automorphism_reps(n);
        let dim = 2 * reps.len();
        if dim > 0 {
            window.validate(dim)?;
        }
        Ok(ModelSetSpec {
            n,
            reps,
            window,
            shift: default_shift(dim),
            translate: CycInt::zero(n)?,
            label: None,
        })
    }

    pub fn with_reps(mut self, mut reps: Vec<u64>) -> Result<Self, ModelSetError> {
        let n = self.n;
        let expected = (phi(n)? / 2 - 1) as usize;
        let mut classes: Vec<u64> = reps.iter().map(|&a| a.min(n - a % n)).collect();
        classes.sort_unstable();
        classes.dedup();
        let valid = reps.len() == expected
            && classes.len() == expected
            && reps
                .iter()
                .all(|&a| a < n && a.gcd(&n) == 1 && a != 1 && a != n - 1);
        if !valid {
            return Err(ModelSetError::BadReps(reps));
        }
        reps.sort_unstable();
        self.reps = reps;
        Ok(self)
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Result<Self, ModelSetError> {
        let dim = self.internal_dim();
        if shift.len() != dim {
            return Err(ModelSetError::ShiftDimension {
                got: shift.len(),
                expected: dim,
            });
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn with_translate(mut self, t: CycInt) -> Result<Self, ModelSetError> {
        if t.modulus() != self.n {
            return Err(CycloError::ModulusMismatch(self.n, t.modulus()).into());
        }
        self.translate = t;
        Ok(self)
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn translate(&self) -> &CycInt {
        &self.translate
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `φ(n) - 2`.
    pub fn internal_dim(&self) -> usize {
        2 * self.reps.len()
    }

    /// Whether the set is a full lattice (`n ∈ {3, 4}`).
    pub fn is_lattice(&self) -> bool {
        self.reps.is_empty()
    }

    fn check(&self, z: &CycInt) -> Result<(), ModelSetError> {
        if z.modulus() != self.n {
            Err(CycloError::ModulusMismatch(self.n, z.modulus()).into())
        } else {
            Ok(())
        }
    }

    /// Internal-space position relative to the window center.
    pub fn internal_offset(&self, z: &CycInt) -> Result<Vec<f64>, ModelSetError> {
        let mut v = star_map(self, z)?;
        for (x, s) in v.iter_mut().zip(&self.shift) {
            *x -= s;
        }
        Ok(v)
    }
}

/// Named window presets standing in for well-known tiling vertex sets.
/// These are centered balls, not the published windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `n = 5`, Tübingen-triangle-like.
    Ttt5,
    /// `n = 8`, Ammann–Beenker-like.
    Ab8,
    /// `n = 12`, shield-like.
    Shield12,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Ttt5, Preset::Ab8, Preset::Shield12];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ttt5" => Some(Preset::Ttt5),
            "ab8" => Some(Preset::Ab8),
            "shield12" => Some(Preset::Shield12),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Ttt5 => "ttt5",
            Preset::Ab8 => "ab8",
            Preset::Shield12 => "shield12",
        }
    }

    pub fn n(self) -> u64 {
        match self {
            Preset::Ttt5 => 5,
            Preset::Ab8 => 8,
            Preset::Shield12 => 12,
        }
    }

    pub fn window_radius(self) -> f64 {
        match self {
            Preset::Ttt5 => 1.2,
            Preset::Ab8 => 1.2,
            Preset::Shield12 => 1.2,
        }
    }

    pub fn spec(self) -> ModelSetSpec {
        ModelSetSpec::new(
            self.n(),
            Window::Ball {
                radius: self.window_radius(),
            },
        )
        .expect("preset parameters are valid")
        .with_label(Some(format!("{}-like", self.name())))
    }
}

/// `z ↦ (σ_a(z))_{a ∈ reps}` flattened to `[Re, Im, Re, Im, …]`.
pub fn star_map(spec: &ModelSetSpec, z: &CycInt) -> Result<Vec<f64>, ModelSetError> {
    spec.check(z)?;
    let mut out = Vec::with_capacity(spec.internal_dim());
    for &a in &spec.reps {
        let [x, y] = z.galois(a)?.embed();
        out.push(x);
        out.push(y);
    }
    Ok(out)
}

/// Strict-interior window membership of `z⋆ - shift`.
pub fn contains(spec: &ModelSetSpec, z: &CycInt) -> Result<bool, ModelSetError> {
    spec.check(z)?;
    if spec.is_lattice() {
        return Ok(true);
    }
    Ok(spec.window.contains_interior(&spec.internal_offset(z)?))
}

/// A finite patch: model-set representatives with `|z| ≤ radius`, sorted
/// lexicographically by coefficients. The spec's translate is not added.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub spec: ModelSetSpec,
    pub radius: f64,
    pub points: Vec<CycInt>,
}

#[derive(Serialize)]
struct PointSetOut<'a> {
    format: &'static str,
    spec: &'a ModelSetSpec,
    radius: f64,
    points: Vec<CoeffList<'a>>,
}

#[derive(Deserialize)]
struct PointSetIn {
    spec: ModelSetSpec,
    radius: f64,
    points: Vec<OwnedCoeffList>,
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PointSetOut {
            format: FORMAT_TAG,
            spec: &self.spec,
            radius: self.radius,
            points: self.points.iter().map(|p| CoeffList(p.coeffs())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PointSetIn::deserialize(d)?;
        let n = raw.spec.n();
        let points = raw
            .points
            .into_iter()
            .map(|c| CycInt::from_coeffs(n, c.0))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PointSet {
            spec: raw.spec,
            radius: raw.radius,
            points,
        })
    }
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Embedded coordinates with the translate applied.
    pub fn embedded(&self) -> Vec<[f64; 2]> {
        let [tx, ty] = self.spec.translate.embed();
        self.points
            .iter()
            .map(|p| {
                let [x, y] = p.embed();
                [x + tx, y + ty]
            })
            .collect()
    }

    /// `x,y` rows of embedded coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for [x, y] in self.embedded() {
            out.push_str(&format!("{x:.12},{y:.12}\n"));
        }
        out
    }
}

/// Rows: `(Re, Im)` of the identity embedding, then of each `σ_a`; column
/// `j` is the image of `ζ^j`.
fn embedding_matrix(spec: &ModelSetSpec, phi: usize) -> DMatrix<f64> {
    let n = spec.n as f64;
    let mut m = DMatrix::zeros(phi, phi);
    let mut rows = vec![1u64];
    rows.extend_from_slice(&spec.reps);
    for (r, &a) in rows.iter().enumerate() {
        for j in 0..phi {
            let e = (a as u128 * j as u128 % spec.n as u128) as f64;
            let t = 2.0 * PI * e / n;
            m[(2 * r, j)] = t.cos();
            m[(2 * r + 1, j)] = t.sin();
        }
    }
    m
}

/// Integer coordinate box covering the physical disk times the window's
/// bounding box, as inclusive `(lo, hi)` per coordinate.
fn coordinate_box(
    spec: &ModelSetSpec,
    radius: f64,
    phi: usize,
) -> Result<Vec<(i64, i64)>, ModelSetError> {
    let m = embedding_matrix(spec, phi);
    let inv = m.try_inverse().ok_or(ModelSetError::SingularEmbedding)?;
    let mut center = vec![0.0; phi];
    let mut half = vec![radius, radius];
    center[2..].copy_from_slice(&spec.shift);
    half.extend(spec.window.bounding_half_widths(spec.internal_dim()));
    let mut out = Vec::with_capacity(phi);
    for i in 0..phi {
        let c: f64 = (0..phi).map(|k| inv[(i, k)] * center[k]).sum();
        let w: f64 = (0..phi).map(|k| inv[(i, k)].abs() * half[k]).sum();
        let slack = 1e-9 * (1.0 + w);
        out.push(((c - w - slack).ceil() as i64, (c + w + slack).floor() as i64));
    }
    Ok(out)
}

/// Number of candidates [`generate`] would scan.
pub fn candidate_count(spec: &ModelSetSpec, radius: f64) -> Result<u128, ModelSetError> {
    let phi = phi(spec.n)? as usize;
    let bx = coordinate_box(spec, radius, phi)?;
    Ok(bx
        .iter()
        .map(|&(lo, hi)| (hi - lo + 1).max(0) as u128)
        .product())
}

pub fn generate(spec: &ModelSetSpec, radius: f64) -> Result<PointSet, ModelSetError> {
    generate_with_budget(spec, radius, DEFAULT_BUDGET)
}

pub fn generate_with_budget(
    spec: &ModelSetSpec,
    radius: f64,
    budget: u64,
) -> Result<PointSet, ModelSetError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(ModelSetError::BadRadius);
    }
    let n = spec.n;
    let phi = phi(n)? as usize;
    let bx = coordinate_box(spec, radius, phi)?;
    let candidates: u128 = bx
        .iter()
        .map(|&(lo, hi)| (hi - lo + 1).max(0) as u128)
        .product();
    if candidates > budget as u128 {
        return Err(ModelSetError::BudgetExceeded { candidates, budget });
    }
    let m = embedding_matrix(spec, phi);
    let cols: Vec<Vec<f64>> = (0..phi)
        .map(|j| (0..phi).map(|r| m[(r, j)]).collect())
        .collect();
    let mut center = vec![0.0; phi];
    let mut half = vec![radius, radius];
    center[2..].copy_from_slice(&spec.shift);
    half.extend(spec.window.bounding_half_widths(spec.internal_dim()));
    let search = Search {
        spec,
        phi,
        r2: radius * radius,
        lo: center.iter().zip(&half).map(|(c, h)| c - h - 1e-9).collect(),
        hi: center.iter().zip(&half).map(|(c, h)| c + h + 1e-9).collect(),
        reach: suffix_reach(&cols, &bx),
        cols,
        bx,
    };

    let (lo0, hi0) = search.bx[0];
    let chunks: Vec<Vec<Vec<i64>>> = (lo0..=hi0)
        .into_par_iter()
        .map(|c0| {
            let mut found = Vec::new();
            let mut c = vec![c0];
            let img: Vec<f64> = search.cols[0].iter().map(|x| c0 as f64 * x).collect();
            search.descend(&mut c, img, &mut found);
            found
        })
        .collect();
    let points = chunks
        .into_iter()
        .flatten()
        .map(|c| CycInt::from_i64_coeffs(n, &c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointSet {
        spec: spec.clone(),
        radius,
        points,
    })
}

/// Depth-first enumeration of the coordinate box, pruning any prefix whose
/// image can no longer reach the target box.
struct Search<'a> {
    spec: &'a ModelSetSpec,
    phi: usize,
    r2: f64,
    lo: Vec<f64>,
    hi: Vec<f64>,
    cols: Vec<Vec<f64>>,
    bx: Vec<(i64, i64)>,
    /// `reach[d][r] = (min, max)` of `Σ_{j ≥ d} c_j·cols[j][r]` over the box.
    reach: Vec<Vec<(f64, f64)>>,
}

fn suffix_reach(cols: &[Vec<f64>], bx: &[(i64, i64)]) -> Vec<Vec<(f64, f64)>> {
    let phi = cols.len();
    let mut reach = vec![vec![(0.0, 0.0); phi]; phi + 1];
    for d in (0..phi).rev() {
        for r in 0..phi {
            let a = bx[d].0 as f64 * cols[d][r];
            let b = bx[d].1 as f64 * cols[d][r];
            let (lo, hi) = reach[d + 1][r];
            reach[d][r] = (lo + a.min(b), hi + a.max(b));
        }
    }
    reach
}

impl Search<'_> {
    fn descend(&self, c: &mut Vec<i64>, img: Vec<f64>, found: &mut Vec<Vec<i64>>) {
        let d = c.len();
        let tol = 1e-9;
        for r in 0..self.phi {
            let (a, b) = self.reach[d][r];
            if img[r] + b < self.lo[r] - tol || img[r] + a > self.hi[r] + tol {
                return;
            }
        }
        if d == self.phi {
            if self.accept(&img) {
                found.push(c.clone());
            }
            return;
        }
        let (lo, hi) = self.bx[d];
        for v in lo..=hi {
            let next: Vec<f64> = img
                .iter()
                .zip(&self.cols[d])
                .map(|(x, col)| x + v as f64 * col)
                .collect();
            c.push(v);
            self.descend(c, next, found);
            c.pop();
        }
    }

    fn accept(&self, img: &[f64]) -> bool {
        if img[0] * img[0] + img[1] * img[1] > self.r2 {
            return false;
        }
        if self.phi == 2 {
            return true;
        }
        let off: Vec<f64> = img[2..]
            .iter()
            .zip(&self.spec.shift)
            .map(|(v, s)| v - s)
            .collect();
        self.spec.window.contains_interior(&off)
    }
}

/// Sampled Delone constants of a patch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeloneStats {
    /// Smallest distance between two points within `0.8·R`.
    pub min_distance: f64,
    /// Largest distance from a grid sample within `0.8·R` to the nearest point.
    pub hole_radius: f64,
    pub interior_points: usize,
}

/// Uniform bucket grid for nearest-neighbour queries.
struct Buckets {
    cell: f64,
    origin: [f64; 2],
    dims: [usize; 2],
    cells: Vec<Vec<[f64; 2]>>,
}

impl Buckets {
    fn new(points: &[[f64; 2]], cell: f64) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let dims = [0, 1].map(|d| ((hi[d] - lo[d]) / cell).floor() as usize + 1);
        let mut cells = vec![Vec::new(); dims[0] * dims[1]];
        for p in points {
            let (i, j) = Self::index(lo, cell, dims, *p);
            cells[j * dims[0] + i].push(*p);
        }
        Buckets {
            cell,
            origin: lo,
            dims,
            cells,
        }
    }

    fn index(origin: [f64; 2], cell: f64, dims: [usize; 2], p: [f64; 2]) -> (usize, usize) {
        let f = |d: usize| {
            (((p[d] - origin[d]) / cell).floor().max(0.0) as usize).min(dims[d] - 1)
        };
        (f(0), f(1))
    }

    /// Distance to the nearest stored point, ignoring exact duplicates of
    /// `q` when `skip_self` is set.
    fn nearest(&self, q: [f64; 2], skip_self: bool) -> f64 {
        let (ci, cj) = Self::index(self.origin, self.cell, self.dims, q);
        let mut best = f64::INFINITY;
        let max_ring = self.dims[0].max(self.dims[1]);
        for ring in 0..=max_ring {
            // anything in ring r is at least (r - 1)·cell away
            if ring >= 1 && (ring as f64 - 1.0) * self.cell > best {
                break;
            }
            let r = ring as i64;
            for dj in -r..=r {
                for di in -r..=r {
                    if di.abs() != r && dj.abs() != r {
                        continue;
                    }
                    let (i, j) = (ci as i64 + di, cj as i64 + dj);
                    if i < 0 || j < 0 || i >= self.dims[0] as i64 || j >= self.dims[1] as i64 {
                        continue;
                    }
                    for p in &self.cells[j as usize * self.dims[0] + i as usize] {
                        let d = (p[0] - q[0]).hypot(p[1] - q[1]);
                        if skip_self && d == 0.0 {
                            continue;
                        }
                        best = best.min(d);
                    }
                }
            }
        }
        best
    }
}

/// Minimum pairwise distance and a sampled covering radius, both restricted
/// to the disk of radius `0.8·R` to avoid truncation effects at the rim.
pub fn delone_diagnostics(ps: &PointSet, radius: f64) -> Result<DeloneStats, ModelSetError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(ModelSetError::BadRadius);
    }
    let inner = 0.8 * radius;
    let all: Vec<[f64; 2]> = ps.points.iter().map(CycInt::embed).collect();
    let interior: Vec<[f64; 2]> = all
        .iter()
        .copied()
        .filter(|p| p[0].hypot(p[1]) <= inner)
        .collect();
    if interior.len() < 2 {
        return Err(ModelSetError::TooFewPoints(interior.len()));
    }
    let cell = (inner / 32.0).max(0.25);
    let interior_buckets = Buckets::new(&interior, cell);
    let min_distance = interior
        .par_iter()
        .map(|p| interior_buckets.nearest(*p, true))
        .reduce(|| f64::INFINITY, f64::min);

    let all_buckets = Buckets::new(&all, cell);
    let steps = 64i64;
    let h = inner / steps as f64;
    let samples: Vec<[f64; 2]> = (-steps..=steps)
        .flat_map(|i| (-steps..=steps).map(move |j| [i as f64 * h, j as f64 * h]))
        .filter(|p| p[0].hypot(p[1]) <= inner)
        .collect();
    let hole_radius = samples
        .par_iter()
        .map(|q| all_buckets.nearest(*q, false))
        .reduce(|| 0.0, f64::max);
    Ok(DeloneStats {
        min_distance,
        hole_radius,
        interior_points: interior.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(n: u64, r: f64) -> ModelSetSpec {
        ModelSetSpec::new(n, Window::Ball { radius: r }).unwrap()
    }

    #[test]
    fn representatives() {
        assert_eq!(default_automorphism_reps(5), vec![2]);
        assert_eq!(default_automorphism_reps(8), vec![3]);
        assert_eq!(default_automorphism_reps(12), vec![5]);
        assert_eq!(default_automorphism_reps(9), vec![2, 4]);
        assert!(default_automorphism_reps(3).is_empty());
        assert!(default_automorphism_reps(4).is_empty());
    }

    #[test]
    fn spec_validation() {
        assert_eq!(ball(10, 1.0).n(), 5);
        assert_eq!(ball(5, 1.0).internal_dim(), 2);
        assert_eq!(ball(4, 1.0).internal_dim(), 0);
        assert!(matches!(
            ModelSetSpec::new(2, Window::Ball { radius: 1.0 }),
            Err(ModelSetError::ModulusTooSmall(1))
        ));
        assert!(matches!(
            ModelSetSpec::new(5, Window::Ball { radius: 0.0 }),
            Err(ModelSetError::BadWindow)
        ));
        assert!(matches!(
            ModelSetSpec::new(5, Window::Box { half_widths: vec![1.0] }),
            Err(ModelSetError::WindowDimension { got: 1, expected: 2 })
        ));
        assert!(ball(5, 1.0).with_reps(vec![3]).is_ok());
        assert!(ball(5, 1.0).with_reps(vec![1]).is_err());
        assert!(ball(9, 1.0).with_reps(vec![2, 7]).is_err());
        assert!(ball(9, 1.0).with_reps(vec![7, 4]).is_ok());
        assert!(ball(5, 1.0).with_shift(vec![0.0]).is_err());
    }

    #[test]
    fn window_parsing() {
        assert_eq!(Window::parse("ball:1.5").unwrap(), Window::Ball { radius: 1.5 });
        assert_eq!(
            Window::parse("box:1,2").unwrap(),
            Window::Box { half_widths: vec![1.0, 2.0] }
        );
        assert!(Window::parse("disk:1").is_err());
        assert!(Window::parse("ball:x").is_err());
        assert_eq!(Window::parse("box:0.5,0.25").unwrap().to_string(), "box:0.5,0.25");
    }

    #[test]
    fn star_map_examples() {
        let spec = ball(5, 1.0).with_shift(vec![0.0, 0.0]).unwrap();
        assert_eq!(star_map(&spec, &CycInt::zero(5).unwrap()).unwrap(), vec![0.0, 0.0]);
        let s = star_map(&spec, &CycInt::one(5).unwrap()).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15 && s[1].abs() < 1e-15);
        let s = star_map(&spec, &CycInt::zeta(5).unwrap()).unwrap();
        assert!((s[0] + 0.809017).abs() < 1e-6 && (s[1] - 0.587785).abs() < 1e-6);
        assert!(star_map(&ball(4, 1.0), &CycInt::zeta(4).unwrap()).unwrap().is_empty());
        assert!(star_map(&spec, &CycInt::one(8).unwrap()).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&ball(4, 0.1), &CycInt::from_int(4, 1000).unwrap()).unwrap());
        let spec = ball(5, 1.0).with_shift(vec![0.0, 0.0]).unwrap();
        assert!(contains(&spec, &CycInt::zero(5).unwrap()).unwrap());
        let spec = ball(5, 0.5).with_shift(vec![0.0, 0.0]).unwrap();
        assert!(!contains(&spec, &CycInt::one(5).unwrap()).unwrap());
    }

    #[test]
    fn lattice_patches() {
        let sq = generate(&ball(4, 1.0), 1.5).unwrap();
        assert_eq!(sq.len(), 9);
        let tri = generate(&ball(3, 1.0), 1.1).unwrap();
        assert_eq!(tri.len(), 7);
        assert!(sq.points.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let spec = ball(5, 1.2);
        let need = candidate_count(&spec, 6.0).unwrap();
        assert!(need > 10);
        assert!(matches!(
            generate_with_budget(&spec, 6.0, 10),
            Err(ModelSetError::BudgetExceeded { budget: 10, .. })
        ));
        assert!(matches!(generate(&spec, -1.0), Err(ModelSetError::BadRadius)));
    }

    #[test]
    fn lattice_diagnostics() {
        for n in [3, 4] {
            let ps = generate(&ball(n, 1.0), 5.0).unwrap();
            let d = delone_diagnostics(&ps, 5.0).unwrap();
            assert!((d.min_distance - 1.0).abs() < 1e-12, "n = {n}");
            assert!(d.hole_radius < 1.0);
        }
        let ps = generate(&ball(4, 1.0), 1.0).unwrap();
        assert!(matches!(
            delone_diagnostics(&ps, 1.0),
            Err(ModelSetError::TooFewPoints(1))
        ));
    }

    #[test]
    fn json_round_trip() {
        let ps = generate(&Preset::Ttt5.spec(), 3.0).unwrap();
        let s = serde_json::to_string(&ps).unwrap();
        assert!(s.starts_with(r#"{"format":"quasipoly/1","spec":{"n":5"#));
        let back: PointSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ps);
    }
}
