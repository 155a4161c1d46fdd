//! The JSON model file format.
//!
//! ```json
//! { "kind": "sullivan", "name": "...", "cap": 22,
//!   "generators": [{"name": "x6", "degree": 6}, ...],
//!   "differential": { "t11": [ {"coeff": "1", "monomial": [["x6", 2]]} ] } }
//! ```
//!
//! or, for explicit tables,
//!
//! ```json
//! { "kind": "table", "name": "...", "cap": 2, "complete": true,
//!   "basis": [["1"], ["a", "b"], ["ab"]],
//!   "mult": [ {"left": "a", "right": "b",
//!              "product": [{"coeff": "1", "basis": "ab"}]} ],
//!   "diff": { "t": [{"coeff": "1", "basis": "ab"}] },
//!   "weights": { "a": 1 } }
//! ```
//!
//! Products with the unit are implied, the graded-commutative mirror of a
//! listed pair is filled in automatically, and unlisted pairs are zero.
//! Rationals are `"p"` or `"p/q"` strings throughout.

use crate::dga::{SparseVec, TableDga};
use crate::error::{DgaError, Result};
use crate::expr::{Expr, Term};
use crate::matrix::Mat;
use crate::rational::{format_rat, parse_rat};
use crate::sullivan::SullivanModel;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffTerm {
    pub coeff: String,
    pub basis: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultEntry {
    pub left: String,
    pub right: String,
    pub product: Vec<CoeffTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub kind: String,
    pub name: String,
    pub cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<BTreeMap<String, Vec<Term>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<MultEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<BTreeMap<String, Vec<CoeffTerm>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, i64>>,
}

fn locate(basis: &[Vec<String>], label: &str) -> Result<(usize, usize)> {
    for (deg, labels) in basis.iter().enumerate() {
        if let Some(i) = labels.iter().position(|l| l == label) {
            return Ok((deg, i));
        }
    }
    Err(DgaError::Parse(format!("unknown basis label {label:?}")))
}

pub fn table_from_file(f: &ModelFile) -> Result<TableDga> {
    let basis = f
        .basis
        .clone()
        .ok_or_else(|| DgaError::Parse("table model requires a basis".into()))?;
    if basis.len() != f.cap + 1 {
        return Err(DgaError::Parse(format!(
            "basis lists {} degrees but cap is {}",
            basis.len(),
            f.cap
        )));
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    // Only tables that carry an explicit entry are materialized here; the
    // constructor synthesizes the graded-commutative mirror of any listed
    // pair and treats absent pairs as zero.
    let mut mult: BTreeMap<(usize, usize), Vec<SparseVec>> = BTreeMap::new();
    for e in f.mult.as_deref().unwrap_or(&[]) {
        let (di, a) = locate(&basis, &e.left)?;
        let (dj, b) = locate(&basis, &e.right)?;
        if di + dj > f.cap {
            return Err(DgaError::Parse(format!(
                "product {} * {} exceeds the cap",
                e.left, e.right
            )));
        }
        if di == 0 || dj == 0 {
            return Err(DgaError::Parse(
                "products with the unit are implied; do not list them".into(),
            ));
        }
        let mut sv = SparseVec::new();
        for t in &e.product {
            let (dk, k) = locate(&basis, &t.basis)?;
            if dk != di + dj {
                return Err(DgaError::Parse(format!(
                    "product {} * {} lists a target of degree {}, expected {}",
                    e.left,
                    e.right,
                    dk,
                    di + dj
                )));
            }
            let c = parse_rat(&t.coeff).map_err(DgaError::Parse)?;
            if !c.is_zero() {
                sv.push((k, c));
            }
        }
        mult.entry((di, dj))
            .or_insert_with(|| vec![SparseVec::new(); dims[di] * dims[dj]])[a * dims[dj] + b] =
            sv;
    }
    // pairs with no entries on either side are zero tables
    for i in 1..=f.cap {
        for j in 1..=f.cap.saturating_sub(i) {
            if !mult.contains_key(&(i, j)) && !mult.contains_key(&(j, i)) {
                mult.insert((i, j), vec![SparseVec::new(); dims[i] * dims[j]]);
            }
        }
    }

    let mut diff: Vec<Mat> = (0..f.cap).map(|i| Mat::zeros(dims[i + 1], dims[i])).collect();
    for (label, terms) in f.diff.as_ref().unwrap_or(&BTreeMap::new()) {
        let (deg, col) = locate(&basis, label)?;
        if deg >= f.cap {
            return Err(DgaError::Parse(format!(
                "differential of {label:?} leaves the stored range"
            )));
        }
        for t in terms {
            let (dk, row) = locate(&basis, &t.basis)?;
            if dk != deg + 1 {
                return Err(DgaError::Parse(format!(
                    "d({label}) lists a target of degree {dk}, expected {}",
                    deg + 1
                )));
            }
            let c = parse_rat(&t.coeff).map_err(DgaError::Parse)?;
            diff[deg].set(row, col, c);
        }
    }

    let weights = match &f.weights {
        None => None,
        Some(map) => {
            let mut w: Vec<Vec<i64>> = basis.iter().map(|ls| vec![0; ls.len()]).collect();
            for (label, value) in map {
                let (deg, idx) = locate(&basis, label)?;
                w[deg][idx] = *value;
            }
            Some(w)
        }
    };

    TableDga::new(
        f.name.clone(),
        f.cap,
        f.complete.unwrap_or(true),
        basis,
        mult,
        diff,
        weights,
    )
}

pub fn sullivan_from_file(f: &ModelFile) -> Result<SullivanModel> {
    let generators = f
        .generators
        .clone()
        .ok_or_else(|| DgaError::Parse("sullivan model requires generators".into()))?
        .into_iter()
        .map(|g| (g.name, g.degree))
        .collect();
    let mut diff_exprs = BTreeMap::new();
    for (name, terms) in f.differential.as_ref().unwrap_or(&BTreeMap::new()) {
        diff_exprs.insert(name.clone(), Expr::from_wire(terms)?);
    }
    Ok(SullivanModel {
        name: f.name.clone(),
        cap: f.cap,
        generators,
        diff_exprs,
    })
}

pub fn model_from_json(s: &str) -> Result<TableDga> {
    let f: ModelFile =
        serde_json::from_str(s).map_err(|e| DgaError::Parse(format!("bad model JSON: {e}")))?;
    match f.kind.as_str() {
        "table" => table_from_file(&f),
        "sullivan" => sullivan_from_file(&f)?.realize(),
        other => Err(DgaError::Parse(format!(
            "unknown model kind {other:?}; expected \"table\" or \"sullivan\""
        ))),
    }
}

/// Serializes a table with its full structure (always `kind: "table"`).
pub fn model_to_file(a: &TableDga) -> Result<ModelFile> {
    let cap = a.cap();
    let basis: Vec<Vec<String>> = (0..=cap).map(|d| a.labels(d).to_vec()).collect();
    let mut mult = Vec::new();
    for i in 1..=cap {
        for j in i..=cap.saturating_sub(i) {
            if j < i {
                continue;
            }
            for x in 0..a.dim(i) {
                for y in 0..a.dim(j) {
                    let sv = a.mult_basis(i, j, x, y);
                    if sv.iter().all(|(_, c)| c.is_zero()) {
                        continue;
                    }
                    mult.push(MultEntry {
                        left: a.labels(i)[x].clone(),
                        right: a.labels(j)[y].clone(),
                        product: sv
                            .iter()
                            .map(|(k, c)| CoeffTerm {
                                coeff: format_rat(c),
                                basis: a.labels(i + j)[*k].clone(),
                            })
                            .collect(),
                    });
                }
            }
        }
    }
    let mut diff = BTreeMap::new();
    for deg in 0..cap {
        let d = a.d_matrix(deg);
        for col in 0..a.dim(deg) {
            let terms: Vec<CoeffTerm> = (0..a.dim(deg + 1))
                .filter(|&row| !d.at(row, col).is_zero())
                .map(|row| CoeffTerm {
                    coeff: format_rat(d.at(row, col)),
                    basis: a.labels(deg + 1)[row].clone(),
                })
                .collect();
            if !terms.is_empty() {
                diff.insert(a.labels(deg)[col].clone(), terms);
            }
        }
    }
    let weights = a.weights().map(|w| {
        let mut map = BTreeMap::new();
        for (deg, ws) in w.iter().enumerate() {
            for (i, v) in ws.iter().enumerate() {
                map.insert(a.labels(deg)[i].clone(), *v);
            }
        }
        map
    });
    Ok(ModelFile {
        kind: "table".to_string(),
        name: a.name.clone(),
        cap,
        generators: None,
        differential: None,
        complete: Some(a.is_complete()),
        basis: Some(basis),
        mult: Some(mult),
        diff: if diff.is_empty() { None } else { Some(diff) },
        weights,
    })
}

pub fn model_to_json(a: &TableDga) -> Result<String> {
    let f = model_to_file(a)?;
    serde_json::to_string_pretty(&f).map_err(|e| DgaError::Parse(e.to_string()))
}

/// Flat-connection coefficient file: `{ "lie": "sl2", "coeffs": [["p/q", ...], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaFile {
    pub lie: String,
    pub coeffs: Vec<Vec<String>>,
}

impl OmegaFile {
    pub fn to_matrix(&self) -> Result<Mat> {
        let rows = self.coeffs.len();
        let cols = self.coeffs.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(rows, cols);
        for (r, row) in self.coeffs.iter().enumerate() {
            if row.len() != cols {
                return Err(DgaError::Parse("ragged coefficient matrix".into()));
            }
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, parse_rat(s).map_err(DgaError::Parse)?);
            }
        }
        Ok(m)
    }

    pub fn from_matrix(lie: &str, m: &Mat) -> OmegaFile {
        OmegaFile {
            lie: lie.to_string(),
            coeffs: (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| format_rat(m.at(r, c))).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn table_round_trip_on_catalog_models() {
        for key in ["surface-g2", "heis-n1", "hopf-s3"] {
            let model = catalog::build(key).unwrap();
            let json = model_to_json(model.dga()).unwrap();
            let back = model_from_json(&json).unwrap();
            assert!(back.same_structure(model.dga()), "round trip failed for {key}");
        }
    }

    #[test]
    fn sullivan_kind_parses() {
        let json = r#"{
            "kind": "sullivan",
            "name": "heis",
            "cap": 3,
            "generators": [
                {"name": "a", "degree": 1},
                {"name": "b", "degree": 1},
                {"name": "t", "degree": 1}
            ],
            "differential": {
                "t": [{"coeff": "1", "monomial": [["a", 1], ["b", 1]]}]
            }
        }"#;
        let a = model_from_json(json).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn bad_kind_is_rejected() {
        let json = r#"{ "kind": "nope", "name": "x", "cap": 1 }"#;
        assert!(model_from_json(json).is_err());
    }
}
