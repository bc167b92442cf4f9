//! Polygon files: the point-set coefficient encoding plus cyclic order,
//! the direction set, and optionally the homothety and model-set spec.

use anyhow::{bail, Context, Result};
use quasipoly_core::cyclo::{CoeffList, OwnedCoeffList};
use quasipoly_core::{CycInt, Direction, DirectionSet, Homothety, ModelSetSpec, Polygon, FORMAT_TAG};
use serde::{Deserialize, Serialize};

pub struct PolygonFile {
    pub polygon: Polygon,
    pub directions: DirectionSet,
    pub class: Option<usize>,
    pub homothety: Option<Homothety>,
    pub spec: Option<ModelSetSpec>,
}

#[derive(Serialize)]
struct Out<'a> {
    format: &'static str,
    n: u64,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<usize>,
    vertices: Vec<CoeffList<'a>>,
    directions: Vec<CoeffList<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    homothety: Option<&'a Homothety>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<&'a ModelSetSpec>,
}

#[derive(Deserialize)]
struct In {
    format: String,
    n: u64,
    #[serde(default)]
    m: Option<usize>,
    #[serde(default)]
    class: Option<usize>,
    vertices: Vec<OwnedCoeffList>,
    #[serde(default)]
    directions: Vec<OwnedCoeffList>,
    #[serde(default)]
    homothety: Option<Homothety>,
    #[serde(default)]
    spec: Option<ModelSetSpec>,
}

impl PolygonFile {
    pub fn to_json(&self) -> Result<String> {
        let out = Out {
            format: FORMAT_TAG,
            n: self.polygon.modulus(),
            m: self.polygon.len(),
            class: self.class,
            vertices: self.polygon.vertices().iter().map(|v| CoeffList(v.coeffs())).collect(),
            directions: self.directions.iter().map(|d| CoeffList(d.rep().coeffs())).collect(),
            homothety: self.homothety.as_ref(),
            spec: self.spec.as_ref(),
        };
        let mut s = serde_json::to_string(&out)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: In = serde_json::from_str(text).context("malformed polygon file")?;
        if raw.format != FORMAT_TAG {
            bail!("unsupported format {:?}, expected {FORMAT_TAG:?}", raw.format);
        }
        let n = raw.n;
        let point = |c: OwnedCoeffList| CycInt::from_coeffs(n, c.0);
        let vertices = raw.vertices.into_iter().map(point).collect::<Result<Vec<_>, _>>()?;
        if let Some(m) = raw.m {
            if m != vertices.len() {
                bail!("m = {m} but {} vertices are listed", vertices.len());
            }
        }
        let polygon = Polygon::new(vertices)?;
        let dirs = raw
            .directions
            .into_iter()
            .map(|c| Ok(Direction::new(point(c)?)?))
            .collect::<Result<Vec<_>>>()?;
        let directions = DirectionSet::new(dirs)?;
        if let Some(spec) = &raw.spec {
            if spec.n() != polygon.modulus() {
                bail!("spec modulus {} differs from polygon modulus {n}", spec.n());
            }
        }
        Ok(PolygonFile {
            polygon,
            directions,
            class: raw.class,
            homothety: raw.homothety,
            spec: raw.spec,
        })
    }
}
