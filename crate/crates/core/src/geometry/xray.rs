//! Discrete parallel X-rays of finite subsets of `Z[ζ_n]`.
//!
//! Points `z` and `z'` lie on a common line parallel to `u` exactly when
//! `κ(z) = z·ū - z̄·u` agrees, so `κ` serves as an exact line key.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::{is_u_polygon, Direction, DirectionSet, GeometryError, Polygon};
use crate::cyclo::{CycInt, CycloError};

/// Point counts per line parallel to one direction, keyed by the exact line
/// key and ordered by it.
#[derive(Clone, Debug, PartialEq)]
pub struct XRayTable {
    direction: Direction,
    lines: BTreeMap<CycInt, usize>,
}

impl XRayTable {
    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn lines(&self) -> &BTreeMap<CycInt, usize> {
        &self.lines
    }

    pub fn total(&self) -> usize {
        self.lines.values().sum()
    }

    /// Counts in key order.
    pub fn counts(&self) -> Vec<usize> {
        self.lines.values().copied().collect()
    }

    /// `line_key_coeffs;count` rows sorted by key, coefficients
    /// comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("line_key_coeffs;count\n");
        for (key, count) in &self.lines {
            let coeffs: Vec<String> = key.coeffs().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{};{}", coeffs.join(","), count);
        }
        out
    }
}

fn line_key(z: &CycInt, u: &CycInt, u_conj: &CycInt) -> CycInt {
    z * u_conj - &z.conj() * u
}

pub fn xray(points: &[CycInt], u: &Direction) -> Result<XRayTable, GeometryError> {
    let rep = u.rep();
    if let Some(p) = points.iter().find(|p| p.modulus() != rep.modulus()) {
        return Err(CycloError::ModulusMismatch(p.modulus(), rep.modulus()).into());
    }
    let rep_conj = rep.conj();
    let keys: Vec<CycInt> = points
        .par_iter()
        .map(|z| line_key(z, rep, &rep_conj))
        .collect();
    let mut lines = BTreeMap::new();
    for k in keys {
        *lines.entry(k).or_insert(0) += 1;
    }
    Ok(XRayTable {
        direction: u.clone(),
        lines,
    })
}

/// Whether `a` and `b` have identical X-rays in every direction of `u`.
pub fn xray_equal(a: &[CycInt], b: &[CycInt], u: &DirectionSet) -> Result<bool, GeometryError> {
    for d in u {
        if xray(a, d)?.lines != xray(b, d)?.lines {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertices at even and at odd cyclic positions.
pub fn alternate_vertex_split(p: &Polygon) -> Result<(Vec<CycInt>, Vec<CycInt>), GeometryError> {
    if p.len() % 2 == 1 {
        return Err(GeometryError::OddVertexCount(p.len()));
    }
    let (evens, odds): (Vec<_>, Vec<_>) = p
        .vertices()
        .iter()
        .enumerate()
        .partition(|(i, _)| i % 2 == 0);
    Ok((
        evens.into_iter().map(|(_, v)| v.clone()).collect(),
        odds.into_iter().map(|(_, v)| v.clone()).collect(),
    ))
}

/// For a U-polygon, the two alternate vertex classes must have equal
/// X-rays in every direction of `U`; a mismatch is reported as an error.
/// Returns whether the expectation applied (i.e. `p` is a U-polygon).
pub fn check_alternate_split(p: &Polygon, u: &DirectionSet) -> Result<bool, GeometryError> {
    if !is_u_polygon(p, u) {
        return Ok(false);
    }
    let (evens, odds) = alternate_vertex_split(p)?;
    if xray_equal(&evens, &odds, u)? {
        Ok(true)
    } else {
        Err(GeometryError::FalsifiedExpectation(format!(
            "alternate vertices of a {}-gon U-polygon have different X-rays",
            p.len()
        )))
    }
}
