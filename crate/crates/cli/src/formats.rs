//! JSON documents for DDFs, spaces and metrics.

use std::collections::BTreeMap;

use pmetric::{Ddf64, PmSpace64, TNorm, TriangleFn};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Significant digits kept in every number written by the CLI.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses")
}

/// Rounds every non-integer number in a JSON tree in place.
pub fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let r = round_sig(n.as_f64().expect("f64 number"));
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Breakpoint {
    pub x: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdfFile {
    pub breakpoints: Vec<Breakpoint>,
}

impl DdfFile {
    pub fn to_ddf(&self) -> Result<Ddf64, CliError> {
        let steps = self.breakpoints.iter().map(|b| (b.x, b.v)).collect();
        Ddf64::new(steps).map_err(|e| CliError::Input(e.to_string()))
    }

    /// The file form of `f`, rounded to [`SIGNIFICANT_DIGITS`] and
    /// re-canonicalised in case rounding merged two neighbouring steps.
    pub fn from_ddf(f: &Ddf64) -> Self {
        let rounded = f
            .breakpoints()
            .iter()
            .map(|&(x, v)| (round_sig(x), round_sig(v)))
            .collect();
        let canonical = Ddf64::from_steps(rounded).unwrap_or_else(|_| f.clone());
        DdfFile {
            breakpoints: canonical
                .breakpoints()
                .iter()
                .map(|&(x, v)| Breakpoint { x, v })
                .collect(),
        }
    }
}

pub fn parse_ddf(text: &str) -> Result<Ddf64, CliError> {
    let file: DdfFile = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    file.to_ddf()
}

pub fn ddf_to_json(f: &Ddf64) -> String {
    serde_json::to_string(&DdfFile::from_ddf(f)).expect("serialisable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauKind {
    #[serde(rename = "tau_T")]
    TauT,
    Convolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauSpec {
    pub kind: TauKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<String>,
}

impl TauSpec {
    pub fn to_tau(&self) -> Result<TriangleFn, CliError> {
        match (self.kind, &self.tnorm) {
            (TauKind::Convolution, None) => Ok(TriangleFn::Convolution),
            (TauKind::Convolution, Some(_)) => Err(CliError::Input(
                "tau: convolution takes no tnorm".into(),
            )),
            (TauKind::TauT, None) => Err(CliError::Input("tau: tau_T requires a tnorm".into())),
            (TauKind::TauT, Some(name)) => {
                let t: TNorm = name.parse().map_err(|e: pmetric::Error| CliError::Input(e.to_string()))?;
                TriangleFn::sup_t(t).map_err(|e| CliError::Input(format!("tau: {e}")))
            }
        }
    }

    pub fn from_tau(tau: TriangleFn) -> Self {
        match tau {
            TriangleFn::SupT(t) => TauSpec {
                kind: TauKind::TauT,
                tnorm: Some(t.name().to_string()),
            },
            TriangleFn::Convolution => TauSpec {
                kind: TauKind::Convolution,
                tnorm: None,
            },
        }
    }
}

/// A space document. `dist` holds one entry per unordered pair of distinct
/// points, keyed `"p,q"` in either order; the diagonal is implied `H_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub tau: TauSpec,
    pub dist: BTreeMap<String, DdfFile>,
}

fn check_labels(points: &[String]) -> Result<(), CliError> {
    if points.is_empty() {
        return Err(CliError::Input("points: at least one point is required".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if p.is_empty() || p.contains([',', ';']) || p.trim() != p {
            return Err(CliError::Input(format!(
                "points: label {p:?} at index {i} must be nonempty, without surrounding whitespace, and contain no ',' or ';'"
            )));
        }
        if points[..i].contains(p) {
            return Err(CliError::Input(format!("duplicate label {p:?}")));
        }
    }
    Ok(())
}

impl SpaceFile {
    /// Builds the space without checking the axioms.
    pub fn to_space(&self) -> Result<PmSpace64, CliError> {
        check_labels(&self.points)?;
        let n = self.points.len();
        let index = |l: &str| self.points.iter().position(|p| p == l);
        let mut entries: BTreeMap<(usize, usize), &DdfFile> = BTreeMap::new();
        for (key, file) in &self.dist {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| CliError::Input(format!("dist: key {key:?} is not of the form \"p,q\"")))?;
            let (i, j) = match (index(a), index(b)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(CliError::Input(format!("dist: key {key:?} names an unknown point"))),
            };
            if i == j {
                return Err(CliError::Input(format!(
                    "dist: diagonal entry {key:?} is implied and must be omitted"
                )));
            }
            let pair = (i.min(j), i.max(j));
            if entries.insert(pair, file).is_some() {
                return Err(CliError::Input(format!("dist: pair {key:?} is given twice")));
            }
        }
        let mut dist = vec![vec![Ddf64::h0(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let file = entries.get(&(i, j)).ok_or_else(|| {
                    CliError::Input(format!("missing pair {},{}", self.points[i], self.points[j]))
                })?;
                let f = file
                    .to_ddf()
                    .map_err(|e| CliError::Input(format!("dist[{},{}]: {e}", self.points[i], self.points[j])))?;
                dist[i][j] = f.clone();
                dist[j][i] = f;
            }
        }
        PmSpace64::new(self.points.clone(), dist, self.tau.to_tau()?)
            .map_err(|e| CliError::Input(e.to_string()))
    }

    /// The file form of a space; `F_{q,p}` for `q > p` is not written.
    pub fn from_space(space: &PmSpace64) -> Self {
        let labels = space.labels();
        let mut dist = BTreeMap::new();
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                dist.insert(
                    format!("{},{}", labels[i], labels[j]),
                    DdfFile::from_ddf(space.dist(i, j)),
                );
            }
        }
        SpaceFile {
            points: labels.to_vec(),
            tau: TauSpec::from_tau(space.tau()),
            dist,
        }
    }
}

pub fn parse_space(text: &str) -> Result<PmSpace64, CliError> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    file.to_space()
}

pub fn space_to_json(space: &PmSpace64) -> String {
    serde_json::to_string_pretty(&SpaceFile::from_space(space)).expect("serialisable")
}

/// A classical metric: `d[i][j]` between `points[i]` and `points[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub points: Vec<String>,
    pub d: Vec<Vec<f64>>,
}

impl MetricFile {
    pub fn check(&self) -> Result<(), CliError> {
        check_labels(&self.points)?;
        let n = self.points.len();
        if self.d.len() != n || self.d.iter().any(|row| row.len() != n) {
            return Err(CliError::Input(format!("d: expected a {n}x{n} matrix")));
        }
        Ok(())
    }
}
