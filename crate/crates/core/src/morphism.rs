//! CDGA morphisms as per-degree matrices, validated on construction, and
//! the partial-equivalence check on induced cohomology maps.

use crate::cohomology::{cohomology, Cohomology};
use crate::dga::TableDga;
use crate::error::{DgaError, Result};
use crate::matrix::Mat;
use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct DgaMorphism {
    pub source_name: String,
    pub target_name: String,
    /// `maps[i]`: matrix of `φ : source^i -> target^i`, for `i <= usable`.
    pub maps: Vec<Mat>,
}

impl DgaMorphism {
    /// Validates unit preservation, commutation with the differentials, and
    /// multiplicativity on all basis pairs within range.
    pub fn new(source: &TableDga, target: &TableDga, maps: Vec<Mat>) -> Result<DgaMorphism> {
        let usable = maps.len().saturating_sub(1);
        if maps.is_empty() {
            return Err(DgaError::ShapeMismatch("morphism with no degrees".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            let (sr, sc) = (target.dim(i), source.dim(i));
            if m.rows() != sr || m.cols() != sc {
                return Err(DgaError::ShapeMismatch(format!(
                    "map in degree {i} has shape {}x{}, expected {sr}x{sc}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        // unit to unit
        if !maps[0].at(0, 0).is_one() {
            return Err(DgaError::Invalid("morphism does not send 1 to 1".into()));
        }
        // d-commutation in degrees where both sides are stored
        for i in 0..usable {
            let lhs = target.d_matrix(i).mul(&maps[i]);
            let rhs = maps[i + 1].mul(&source.d_matrix(i));
            if lhs != rhs {
                return Err(DgaError::Invalid(format!(
                    "morphism does not commute with d in degree {i}"
                )));
            }
        }
        // multiplicativity on basis pairs
        for i in 0..=usable {
            for j in 0..=usable - i {
                for a in 0..source.dim(i) {
                    for b in 0..source.dim(j) {
                        let prod = source.mult_basis(i, j, a, b);
                        let mut lhs = vec![Rat::zero(); target.dim(i + j)];
                        for (k, c) in prod {
                            for (r, v) in maps[i + j].col(k).into_iter().enumerate() {
                                lhs[r] += &c * v;
                            }
                        }
                        let fa = maps[i].col(a);
                        let fb = maps[j].col(b);
                        let mut rhs = vec![Rat::zero(); target.dim(i + j)];
                        for (x, cx) in fa.iter().enumerate() {
                            if cx.is_zero() {
                                continue;
                            }
                            for (y, cy) in fb.iter().enumerate() {
                                if cy.is_zero() {
                                    continue;
                                }
                                for (k, c) in target.mult_basis(i, j, x, y) {
                                    rhs[k] += cx * cy * c;
                                }
                            }
                        }
                        if lhs != rhs {
                            return Err(DgaError::Invalid(format!(
                                "morphism not multiplicative on ({}, {})",
                                source.labels(i)[a],
                                source.labels(j)[b]
                            )));
                        }
                    }
                }
            }
        }
        Ok(DgaMorphism {
            source_name: source.name.clone(),
            target_name: target.name.clone(),
            maps,
        })
    }

    pub fn identity(a: &TableDga) -> DgaMorphism {
        let maps = (0..=a.cap()).map(|i| Mat::identity(a.dim(i))).collect();
        DgaMorphism {
            source_name: a.name.clone(),
            target_name: a.name.clone(),
            maps,
        }
    }

    pub fn usable_degree(&self) -> usize {
        self.maps.len() - 1
    }

    /// Matrix of `H^i(φ)` against the representative bases.
    pub fn induced_on_h(
        &self,
        _source: &TableDga,
        target: &TableDga,
        source_h: &Cohomology,
        target_h: &Cohomology,
        degree: usize,
    ) -> Result<Mat> {
        let mut cols = Vec::new();
        for idx in 0..source_h.betti[degree] {
            let rep = source_h.rep_element(degree, idx);
            let img = crate::dga::Element {
                degree,
                coords: self.maps[degree].apply(&rep.coords),
            };
            cols.push(target_h.class_of(target, &img)?);
        }
        Ok(Mat::from_cols(target_h.betti[degree], &cols))
    }

    /// Homology isomorphism up to degree `q` plus monomorphism in degree
    /// `q+1`.
    pub fn q_equivalence(
        &self,
        source: &TableDga,
        target: &TableDga,
        q: usize,
    ) -> Result<QEquivalenceReport> {
        source.check_trusted(q + 1)?;
        target.check_trusted(q + 1)?;
        if self.usable_degree() < q + 1 {
            return Err(DgaError::CapExceeded {
                needed: q + 1,
                cap: self.usable_degree(),
            });
        }
        let sh = cohomology(source, q + 1)?;
        let th = cohomology(target, q + 1)?;
        let mut failures = Vec::new();
        for i in 0..=q + 1 {
            let m = self.induced_on_h(source, target, &sh, &th, i)?;
            let injective = m.rank() == sh.betti[i];
            let surjective = m.rank() == th.betti[i];
            if !injective {
                failures.push(QEquivalenceFailure {
                    degree: i,
                    kind: FailureKind::NotInjective,
                });
            }
            if i <= q && !surjective {
                failures.push(QEquivalenceFailure {
                    degree: i,
                    kind: FailureKind::NotSurjective,
                });
            }
        }
        Ok(QEquivalenceReport {
            q,
            ok: failures.is_empty(),
            failures,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    NotInjective,
    NotSurjective,
}

impl std::fmt::Display for FailureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailureKind::NotInjective => f.write_str("not injective"),
            FailureKind::NotSurjective => f.write_str("not surjective"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct QEquivalenceFailure {
    pub degree: usize,
    pub kind: FailureKind,
}

#[derive(Debug, Clone)]
pub struct QEquivalenceReport {
    pub q: usize,
    pub ok: bool,
    pub failures: Vec<QEquivalenceFailure>,
}

impl QEquivalenceReport {
    pub fn describe(&self) -> String {
        if self.ok {
            format!("{}-equivalence holds", self.q)
        } else {
            let parts: Vec<String> = self
                .failures
                .iter()
                .map(|f| format!("H^{} {}", f.degree, f.kind))
                .collect();
            format!("{}-equivalence fails: {}", self.q, parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_is_a_q_equivalence() {
        let a = catalog::surface_algebra(2);
        let id = DgaMorphism::identity(&a);
        let rep = id.q_equivalence(&a, &a, 1).unwrap();
        assert!(rep.ok);
    }

    #[test]
    fn surface_into_heisenberg_fails_at_degree_two() {
        // H^2 of the base dies in the extension, so injectivity at q+1 = 2
        // fails even though H^1 matches.
        let ext = catalog::heisenberg_model(1);
        let rep = ext
            .inclusion
            .q_equivalence(&ext.base, &ext.dga, 1)
            .unwrap();
        assert!(!rep.ok);
        assert!(rep
            .failures
            .iter()
            .any(|f| f.degree == 2 && f.kind == FailureKind::NotInjective));
        // ...and H^1 really is an isomorphism
        let rep0 = ext
            .inclusion
            .q_equivalence(&ext.base, &ext.dga, 0)
            .unwrap();
        assert!(rep0.ok);
    }

    #[test]
    fn induced_map_verdicts_survive_representative_perturbation() {
        use crate::cohomology::cohomology;
        use crate::rational::rat_int;
        let ext = catalog::heisenberg_model(1);
        let sh = cohomology(&ext.base, 2).unwrap();
        let th = cohomology(&ext.dga, 2).unwrap();
        let mut th2 = th.clone();
        for rep in &mut th2.reps[2] {
            for b in &th.coboundaries[2] {
                for (r, v) in rep.iter_mut().zip(b) {
                    *r += v * rat_int(5);
                }
            }
        }
        for i in 0..=2usize {
            let m1 = ext
                .inclusion
                .induced_on_h(&ext.base, &ext.dga, &sh, &th, i)
                .unwrap();
            let m2 = ext
                .inclusion
                .induced_on_h(&ext.base, &ext.dga, &sh, &th2, i)
                .unwrap();
            assert_eq!(m1.rank(), m2.rank(), "rank differs in degree {i}");
        }
    }
}
