//! Schema-versioned JSON envelopes, bigraph import/export and CSV dumps.

use crate::bigraph::{Bigraph, BigraphError};
use crate::complexes::{reference_polylines, ComplexSpectrum};
use crate::dynamics::WalkProfile;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema version {found} is not supported (expected {SCHEMA_VERSION})")]
    Schema { found: u32 },
    #[error("document kind {found:?}, expected {expected:?}")]
    Kind { found: String, expected: String },
    #[error(transparent)]
    Bigraph(#[from] BigraphError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

pub fn to_json<T: Serialize>(kind: &str, data: &T) -> Result<String, IoError> {
    let env = Envelope { schema_version: SCHEMA_VERSION, kind: kind.to_string(), data };
    let mut s = serde_json::to_string_pretty(&env)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(kind: &str, text: &str) -> Result<T, IoError> {
    let env: Envelope<T> = serde_json::from_str(text)?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(IoError::Schema { found: env.schema_version });
    }
    if env.kind != kind {
        return Err(IoError::Kind { found: env.kind, expected: kind.into() });
    }
    Ok(env.data)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|source| IoError::Io { path: dir.display().to_string(), source })?;
    }
    std::fs::write(path, text).map_err(|source| IoError::Io { path: path.display().to_string(), source })
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io { path: path.display().to_string(), source })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigraphHeader {
    /// left degree K+1
    pub left_degree: usize,
    /// right degree k+1
    pub right_degree: usize,
    pub n_left: usize,
    pub n_right: usize,
    pub left_transitive: bool,
    pub labels: BTreeMap<String, String>,
    /// w_r = |r|/(k+1)
    pub weights: Vec<f64>,
}

/// Header plus the edge list `(left, right)` in edge-id order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigraphFile {
    pub header: BigraphHeader,
    pub edges: Vec<(usize, usize)>,
}

impl BigraphFile {
    pub fn from_bigraph(g: &Bigraph) -> BigraphFile {
        BigraphFile {
            header: BigraphHeader {
                left_degree: g.big_k + 1,
                right_degree: g.small_k + 1,
                n_left: g.n_left,
                n_right: g.n_right,
                left_transitive: g.left_transitive,
                labels: g.labels.clone(),
                weights: (0..g.n_right).map(|r| g.weight(r)).collect(),
            },
            edges: g.edges(),
        }
    }

    /// Rebuild the bigraph. The declared right degree is kept even when every
    /// right vertex is a proper orbit.
    pub fn to_bigraph(&self) -> Result<Bigraph, IoError> {
        let h = &self.header;
        let kp1 = h.left_degree;
        if self.edges.len() != h.n_left * kp1 {
            return Err(BigraphError::BadParams("edge count does not match header".into()).into());
        }
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); h.n_right];
        for (e, &(x, r)) in self.edges.iter().enumerate() {
            if x != e / kp1 || r >= h.n_right {
                return Err(BigraphError::BadParams(format!("edge {e} out of order")).into());
            }
            members[r].push(e as u32);
        }
        let mut g = Bigraph::from_members(h.n_left, kp1 - 1, h.right_degree - 1, members)?;
        g.left_transitive = h.left_transitive;
        g.labels = h.labels.clone();
        Ok(g)
    }
}

pub fn export_bigraph(g: &Bigraph) -> Result<String, IoError> {
    to_json("bigraph", &BigraphFile::from_bigraph(g))
}

pub fn import_bigraph(text: &str) -> Result<Bigraph, IoError> {
    from_json::<BigraphFile>("bigraph", text)?.to_bigraph()
}

/// `left,right` rows in edge-id order.
pub fn edges_csv(g: &Bigraph) -> String {
    let mut s = String::from("left,right\n");
    for (x, r) in g.edges() {
        let _ = writeln!(s, "{x},{r}");
    }
    s
}

/// Sort descending by modulus, then by argument in (−π, π].
pub fn sort_for_output(values: &mut [Complex64]) {
    values.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(a.arg().total_cmp(&b.arg())));
}

/// `re,im` rows sorted by [`sort_for_output`].
pub fn eigenvalues_csv(values: &[Complex64]) -> String {
    let mut v = values.to_vec();
    sort_for_output(&mut v);
    let mut s = String::from("re,im\n");
    for z in v {
        let _ = writeln!(s, "{:e},{:e}", z.re, z.im);
    }
    s
}

/// `t,tv` rows, one per even time.
pub fn walk_csv(p: &WalkProfile) -> String {
    let mut s = String::from("t,tv\n");
    for (t, tv) in p.times.iter().zip(&p.tv) {
        let _ = writeln!(s, "{t},{tv:e}");
    }
    s
}

/// `series,re,im,d_tempered,d_endoscopic` rows: eigenvalues (sorted as in
/// [`sort_for_output`]), then the sampled deltoid and endoscopic curve with
/// empty distance columns.
pub fn complex_csv(c: &ComplexSpectrum, samples: usize) -> String {
    let mut pts = c.points.clone();
    pts.sort_by(|a, b| {
        b.value.norm().total_cmp(&a.value.norm()).then(a.value.arg().total_cmp(&b.value.arg()))
    });
    let mut s = String::from("series,re,im,d_tempered,d_endoscopic\n");
    for e in &pts {
        let _ = writeln!(s, "eigenvalue,{:e},{:e},{:e},{:e}", e.value.re, e.value.im, e.d_tempered, e.d_endoscopic);
    }
    let (deltoid, curve) = reference_polylines(c.p, samples);
    for (name, line) in [("tempered-boundary", deltoid), ("endoscopic-curve", curve)] {
        for z in line {
            let _ = writeln!(s, "{name},{:e},{:e},,", z.re, z.im);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::sym3_bigraph;

    #[test]
    fn bigraph_roundtrip() {
        let g = sym3_bigraph();
        let back = import_bigraph(&export_bigraph(&g).unwrap()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn wrong_kind_rejected() {
        let s = to_json("spectrum", &1u8).unwrap();
        assert!(matches!(from_json::<u8>("bigraph", &s), Err(IoError::Kind { .. })));
    }

    #[test]
    fn eigen_csv_order() {
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 3.0), Complex64::new(0.0, -3.0)];
        let s = eigenvalues_csv(&v);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1], "0e0,-3e0");
        assert_eq!(lines[3], "1e0,0e0");
    }

    #[test]
    fn walk_csv_rows() {
        let g = sym3_bigraph();
        let p = crate::dynamics::nbrw_tv_profile(&g, 0, 10, &[0.5]).unwrap();
        assert_eq!(walk_csv(&p).lines().count(), 1 + 10 / 2 + 1);
    }
}
