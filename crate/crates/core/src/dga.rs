//! Tabulated commutative differential graded algebras.
//!
//! A [`TableDga`] stores a degreewise-finite CDGA explicitly: ordered bases
//! per degree, structure constants for every product that stays below the
//! degree cap, and one differential matrix per degree. The constructor
//! verifies every axiom exhaustively — graded commutativity, associativity,
//! the Leibniz rule, `d∘d = 0`, and connectedness with a genuine unit —
//! so downstream code can assume a lawful algebra.
//!
//! Degrees above `cap` are either genuinely zero (`complete == true`, e.g.
//! the cohomology of a closed surface) or simply not stored. Derived
//! quantities refuse to compute rather than silently truncate when the data
//! they need lies above the cap of an incomplete table.

use crate::error::{AxiomKind, DgaError, Result};
use crate::matrix::Mat;
use crate::rational::{format_vector, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse coordinate vector: `(basis index, coefficient)` pairs.
pub type SparseVec = Vec<(usize, Rat)>;

#[derive(Debug, Clone)]
pub struct TableDga {
    pub name: String,
    cap: usize,
    complete: bool,
    basis: Vec<Vec<String>>,
    /// `mult[(i, j)][a * dim_j + b]` = coordinates of `u_a · v_b` in degree `i+j`.
    mult: BTreeMap<(usize, usize), Vec<SparseVec>>,
    /// `diff[i]`: matrix of `d : A^i -> A^{i+1}`, for `i < cap`.
    diff: Vec<Mat>,
    weights: Option<Vec<Vec<i64>>>,
}

/// A homogeneous element: coordinates against the basis of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub degree: usize,
    pub coords: Vec<Rat>,
}

impl Element {
    pub fn zero(degree: usize, dim: usize) -> Self {
        Element {
            degree,
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn scaled(&self, c: &Rat) -> Element {
        Element {
            degree: self.degree,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        assert_eq!(self.degree, other.degree, "degree mismatch in element sum");
        assert_eq!(self.coords.len(), other.coords.len());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.degree, other.degree, "degree mismatch in element sum");
        Element {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

pub struct PositiveWeightsReport {
    pub ok: bool,
    pub witness: Option<String>,
}

impl TableDga {
    /// Builds and validates a table. `mult` may omit pairs `(i, j)` with
    /// `i > j` and all products against the unit; they are filled in by
    /// graded commutativity and unitality before validation runs.
    pub fn new(
        name: impl Into<String>,
        cap: usize,
        complete: bool,
        basis: Vec<Vec<String>>,
        mut mult: BTreeMap<(usize, usize), Vec<SparseVec>>,
        diff: Vec<Mat>,
        weights: Option<Vec<Vec<i64>>>,
    ) -> Result<TableDga> {
        if basis.len() != cap + 1 {
            return Err(DgaError::ShapeMismatch(format!(
                "expected {} basis degrees, got {}",
                cap + 1,
                basis.len()
            )));
        }
        if diff.len() != cap {
            return Err(DgaError::ShapeMismatch(format!(
                "expected {} differential matrices, got {}",
                cap,
                diff.len()
            )));
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        for (i, d) in diff.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(DgaError::ShapeMismatch(format!(
                    "differential in degree {} has shape {}x{}, expected {}x{}",
                    i,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        if let Some(w) = &weights {
            if w.len() != cap + 1 || w.iter().zip(&dims).any(|(wd, &d)| wd.len() != d) {
                return Err(DgaError::ShapeMismatch("weights shape mismatch".into()));
            }
        }
        if dims[0] != 1 {
            return Err(DgaError::AxiomViolation {
                kind: AxiomKind::Unit,
                witness: format!("dim A^0 = {}, expected 1", dims[0]),
            });
        }

        // Fill unit products, then the graded-commutative mirror images.
        for i in 0..=cap {
            mult.entry((0, i)).or_insert_with(|| {
                (0..dims[i]).map(|b| vec![(b, Rat::one())]).collect()
            });
        }
        let keys: Vec<(usize, usize)> = mult.keys().copied().collect();
        for (i, j) in keys {
            if i + j > cap {
                return Err(DgaError::ShapeMismatch(format!(
                    "product table for degrees ({i},{j}) exceeds cap {cap}"
                )));
            }
            if !mult.contains_key(&(j, i)) {
                let fwd = mult.get(&(i, j)).unwrap().clone();
                let sign = if i % 2 == 1 && j % 2 == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                let mut rev = vec![SparseVec::new(); dims[j] * dims[i]];
                for a in 0..dims[i] {
                    for b in 0..dims[j] {
                        rev[b * dims[i] + a] = fwd[a * dims[j] + b]
                            .iter()
                            .map(|(k, c)| (*k, c * &sign))
                            .collect();
                    }
                }
                mult.insert((j, i), rev);
            }
        }
        for i in 0..=cap {
            for j in 0..=cap - i {
                let entry = mult.get(&(i, j)).ok_or_else(|| {
                    DgaError::ShapeMismatch(format!("missing product table for degrees ({i},{j})"))
                })?;
                if entry.len() != dims[i] * dims[j] {
                    return Err(DgaError::ShapeMismatch(format!(
                        "product table for degrees ({i},{j}) has wrong length"
                    )));
                }
                for sv in entry {
                    if sv.iter().any(|(k, _)| *k >= dims[i + j]) {
                        return Err(DgaError::ShapeMismatch(format!(
                            "product table for degrees ({i},{j}) indexes out of range"
                        )));
                    }
                }
            }
        }

        let dga = TableDga {
            name: name.into(),
            cap,
            complete,
            basis,
            mult,
            diff,
            weights,
        };
        dga.validate()?;
        Ok(dga)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// True when the algebra is known to vanish above `cap`, so degrees
    /// beyond the stored range are genuinely zero rather than unknown.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest degree usable for derived quantities: `cap` itself for a
    /// complete table (the outgoing differential is the zero map), and
    /// `cap - 1` otherwise.
    pub fn trusted_degree(&self) -> usize {
        if self.complete {
            self.cap
        } else {
            self.cap.saturating_sub(1)
        }
    }

    pub fn check_trusted(&self, degree: usize) -> Result<()> {
        if self.complete || degree + 1 <= self.cap {
            Ok(())
        } else {
            Err(DgaError::CapExceeded {
                needed: degree + 1,
                cap: self.cap,
            })
        }
    }

    pub fn dim(&self, degree: usize) -> usize {
        if degree <= self.cap {
            self.basis[degree].len()
        } else {
            debug_assert!(self.complete, "dimension queried above cap of incomplete table");
            0
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        if degree <= self.cap {
            &self.basis[degree]
        } else {
            &[]
        }
    }

    pub fn weights(&self) -> Option<&Vec<Vec<i64>>> {
        self.weights.as_ref()
    }

    pub fn set_weights(&mut self, weights: Option<Vec<Vec<i64>>>) {
        self.weights = weights;
    }

    /// The matrix of `d : A^i -> A^{i+1}`. Above the cap of a complete
    /// table this is a zero map into the zero space.
    pub fn d_matrix(&self, i: usize) -> Mat {
        if i < self.cap {
            self.diff[i].clone()
        } else {
            debug_assert!(
                self.complete,
                "differential queried above cap of incomplete table"
            );
            Mat::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    pub fn mult_basis(&self, i: usize, j: usize, a: usize, b: usize) -> SparseVec {
        if i + j > self.cap {
            debug_assert!(self.complete, "product queried above cap of incomplete table");
            return SparseVec::new();
        }
        self.mult[&(i, j)][a * self.dim(j) + b].clone()
    }

    pub fn unit(&self) -> Element {
        let mut e = Element::zero(0, 1);
        e.coords[0] = Rat::one();
        e
    }

    pub fn basis_element(&self, degree: usize, index: usize) -> Element {
        let mut e = Element::zero(degree, self.dim(degree));
        e.coords[index] = Rat::one();
        e
    }

    pub fn element(&self, degree: usize, coords: Vec<Rat>) -> Result<Element> {
        if degree > self.cap && !self.complete {
            return Err(DgaError::CapExceeded {
                needed: degree,
                cap: self.cap,
            });
        }
        if coords.len() != self.dim(degree) {
            return Err(DgaError::ShapeMismatch(format!(
                "element in degree {degree} needs {} coordinates, got {}",
                self.dim(degree),
                coords.len()
            )));
        }
        Ok(Element { degree, coords })
    }

    /// Looks a basis element up by label across all degrees.
    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        for (deg, labels) in self.basis.iter().enumerate() {
            if let Some(idx) = labels.iter().position(|l| l == label) {
                return Some(self.basis_element(deg, idx));
            }
        }
        None
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.degree > self.cap {
            return "0".to_string();
        }
        format_vector(&e.coords, &self.basis[e.degree])
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        let deg = x.degree + y.degree;
        if deg > self.cap {
            if self.complete {
                return Ok(Element::zero(deg, 0));
            }
            return Err(DgaError::CapExceeded {
                needed: deg,
                cap: self.cap,
            });
        }
        let mut out = Element::zero(deg, self.dim(deg));
        for (a, ca) in x.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, s) in &self.mult[&(x.degree, y.degree)][a * self.dim(y.degree) + b] {
                    out.coords[*k] += &c * s;
                }
            }
        }
        Ok(out)
    }

    pub fn apply_d(&self, x: &Element) -> Result<Element> {
        if x.degree >= self.cap && !self.complete {
            return Err(DgaError::CapExceeded {
                needed: x.degree + 1,
                cap: self.cap,
            });
        }
        let m = self.d_matrix(x.degree);
        Ok(Element {
            degree: x.degree + 1,
            coords: m.apply(&x.coords),
        })
    }

    pub fn is_cocycle(&self, x: &Element) -> Result<bool> {
        Ok(self.apply_d(x)?.is_zero())
    }

    /// True iff every stored differential matrix vanishes.
    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(Mat::is_zero)
    }

    fn mult_raw(&self, i: usize, j: usize, a: usize, b: usize) -> &SparseVec {
        &self.mult[&(i, j)][a * self.dim(j) + b]
    }

    /// Exhaustive axiom check up to the cap.
    pub fn validate(&self) -> Result<()> {
        let cap = self.cap;
        // Connectedness and unit.
        if self.dim(0) != 1 {
            return Err(DgaError::AxiomViolation {
                kind: AxiomKind::Unit,
                witness: format!("dim A^0 = {}, expected 1", self.dim(0)),
            });
        }
        for j in 0..=cap {
            for b in 0..self.dim(j) {
                let left = self.mult_raw(0, j, 0, b);
                let right = self.mult_raw(j, 0, b, 0);
                let is_b = |sv: &SparseVec| {
                    let mut nonzero = sv.iter().filter(|(_, c)| !c.is_zero());
                    matches!(
                        (nonzero.next(), nonzero.next()),
                        (Some((k, c)), None) if *k == b && c.is_one()
                    )
                };
                if !is_b(left) || !is_b(right) {
                    return Err(DgaError::AxiomViolation {
                        kind: AxiomKind::Unit,
                        witness: format!("1 * {}", self.basis[j][b]),
                    });
                }
            }
        }
        // Unique labels, for unambiguous lookups and reports.
        {
            let mut seen = std::collections::BTreeSet::new();
            for labels in &self.basis {
                for l in labels {
                    if !seen.insert(l.clone()) {
                        return Err(DgaError::Invalid(format!("duplicate basis label {l:?}")));
                    }
                }
            }
        }
        // Graded commutativity.
        for i in 0..=cap {
            for j in i..=cap - i {
                let sign = if i % 2 == 1 && j % 2 == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let fwd = self.sparse_to_dense(i + j, self.mult_raw(i, j, a, b));
                        let rev = self.sparse_to_dense(i + j, self.mult_raw(j, i, b, a));
                        let ok = fwd
                            .iter()
                            .zip(&rev)
                            .all(|(f, r)| *f == r * &sign);
                        if !ok {
                            return Err(DgaError::AxiomViolation {
                                kind: AxiomKind::Commutativity,
                                witness: format!("({}, {})", self.basis[i][a], self.basis[j][b]),
                            });
                        }
                    }
                }
            }
        }
        // Associativity on basis triples.
        for i in 0..=cap {
            for j in 0..=cap - i {
                for k in 0..=cap - i - j {
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            for c in 0..self.dim(k) {
                                let ab = self.mult_raw(i, j, a, b).clone();
                                let mut lhs = vec![Rat::zero(); self.dim(i + j + k)];
                                for (m, cm) in &ab {
                                    for (n, cn) in self.mult_raw(i + j, k, *m, c) {
                                        lhs[*n] += cm * cn;
                                    }
                                }
                                let bc = self.mult_raw(j, k, b, c).clone();
                                let mut rhs = vec![Rat::zero(); self.dim(i + j + k)];
                                for (m, cm) in &bc {
                                    for (n, cn) in self.mult_raw(i, j + k, a, *m) {
                                        rhs[*n] += cm * cn;
                                    }
                                }
                                if lhs != rhs {
                                    return Err(DgaError::AxiomViolation {
                                        kind: AxiomKind::Associativity,
                                        witness: format!(
                                            "({}, {}, {})",
                                            self.basis[i][a], self.basis[j][b], self.basis[k][c]
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        // Leibniz rule: d(uv) = du·v + (-1)^|u| u·dv, whenever the product
        // and its differential both live below the cap.
        for i in 0..=cap {
            for j in 0..=cap - i {
                if i + j + 1 > cap && !self.complete {
                    continue;
                }
                let target = i + j + 1;
                let di = self.d_matrix(i);
                let dj = self.d_matrix(j);
                let dij = self.d_matrix(i + j);
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let prod = self.sparse_to_dense(i + j, self.mult_raw(i, j, a, b));
                        let lhs = dij.apply(&prod);
                        let mut rhs = vec![Rat::zero(); self.dim(target)];
                        // du · v
                        let du = di.col(a);
                        if i + 1 + j <= cap {
                            for (m, cm) in du.iter().enumerate() {
                                if cm.is_zero() {
                                    continue;
                                }
                                for (n, cn) in self.mult_raw(i + 1, j, m, b) {
                                    rhs[*n] += cm * cn;
                                }
                            }
                        }
                        // (-1)^i u · dv
                        let dv = dj.col(b);
                        let sgn = if i % 2 == 1 { -Rat::one() } else { Rat::one() };
                        if i + j + 1 <= cap {
                            for (m, cm) in dv.iter().enumerate() {
                                if cm.is_zero() {
                                    continue;
                                }
                                for (n, cn) in self.mult_raw(i, j + 1, a, m) {
                                    rhs[*n] += &sgn * cm * cn;
                                }
                            }
                        }
                        if lhs != rhs {
                            return Err(DgaError::AxiomViolation {
                                kind: AxiomKind::Leibniz,
                                witness: format!("({}, {})", self.basis[i][a], self.basis[j][b]),
                            });
                        }
                    }
                }
            }
        }
        // d ∘ d = 0.
        for i in 0..cap.saturating_sub(1) {
            let dd = self.d_matrix(i + 1).mul(&self.d_matrix(i));
            if !dd.is_zero() {
                return Err(DgaError::AxiomViolation {
                    kind: AxiomKind::DSquared,
                    witness: format!("degree {i}"),
                });
            }
        }
        Ok(())
    }

    fn sparse_to_dense(&self, degree: usize, sv: &SparseVec) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim(degree)];
        for (k, c) in sv {
            v[*k] += c;
        }
        v
    }

    /// Checks the positive-weights conditions: weights positive in positive
    /// degrees, preserved by the differential, additive under products.
    pub fn verify_positive_weights(&self) -> Result<PositiveWeightsReport> {
        let w = self.weights.as_ref().ok_or(DgaError::MissingWeights)?;
        for i in 1..=self.cap {
            for (a, &wa) in w[i].iter().enumerate() {
                if wa <= 0 {
                    return Ok(PositiveWeightsReport {
                        ok: false,
                        witness: Some(format!(
                            "wt({}) = {wa} is not positive",
                            self.basis[i][a]
                        )),
                    });
                }
            }
        }
        for i in 0..self.cap {
            let d = &self.diff[i];
            for a in 0..self.dim(i) {
                for b in 0..self.dim(i + 1) {
                    if !d.at(b, a).is_zero() && w[i + 1][b] != w[i][a] {
                        return Ok(PositiveWeightsReport {
                            ok: false,
                            witness: Some(format!(
                                "d({}) hits {} of different weight",
                                self.basis[i][a],
                                self.basis[i + 1][b]
                            )),
                        });
                    }
                }
            }
        }
        for i in 0..=self.cap {
            for j in 0..=self.cap - i {
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        for (k, c) in self.mult_raw(i, j, a, b) {
                            if !c.is_zero() && w[i + j][*k] != w[i][a] + w[j][b] {
                                return Ok(PositiveWeightsReport {
                                    ok: false,
                                    witness: Some(format!(
                                        "wt({} * {}) is not additive",
                                        self.basis[i][a], self.basis[j][b]
                                    )),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(PositiveWeightsReport {
            ok: true,
            witness: None,
        })
    }

    /// Structural equality: same dimensions, labels, products, differentials
    /// and weights. Used by the JSON round-trip checks.
    pub fn same_structure(&self, other: &TableDga) -> bool {
        if self.cap != other.cap
            || self.complete != other.complete
            || self.basis != other.basis
            || self.weights != other.weights
            || self.diff != other.diff
        {
            return false;
        }
        for i in 0..=self.cap {
            for j in 0..=self.cap - i {
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let x = self.sparse_to_dense(i + j, self.mult_raw(i, j, a, b));
                        let y = other.sparse_to_dense(i + j, other.mult_raw(i, j, a, b));
                        if x != y {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Convenience constructor used by builders: assembles the product table
/// from a closure giving each basis product as a sparse vector.
pub fn build_mult_table(
    dims: &[usize],
    cap: usize,
    mut product: impl FnMut(usize, usize, usize, usize) -> SparseVec,
) -> BTreeMap<(usize, usize), Vec<SparseVec>> {
    let mut mult = BTreeMap::new();
    for i in 0..=cap {
        for j in 0..=cap - i {
            let mut table = Vec::with_capacity(dims[i] * dims[j]);
            for a in 0..dims[i] {
                for b in 0..dims[j] {
                    table.push(product(i, j, a, b));
                }
            }
            mult.insert((i, j), table);
        }
    }
    mult
}
