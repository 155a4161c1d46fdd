//! Graded regular sequences and the quotient-model formality certificate.
//!
//! A homogeneous element of a zero-differential algebra is a non-zero
//! divisor up to degree `q` when multiplication by it is injective out of
//! every degree `≤ q`. A sequence is `q`-regular when each element is a
//! non-zero divisor up to degree `q − deg + 2` in the quotient by its
//! predecessors. When that holds, the extension adjoining odd generators
//! that transgress onto the sequence has the same `q`-type as the quotient
//! ring with zero differential — and the certificate below verifies that
//! equivalence mechanically instead of taking it on faith.

use crate::dga::{build_mult_table, Element, SparseVec, TableDga};
use crate::error::{DgaError, Result};
use crate::hirsch::{hirsch_extend, HirschData};
use crate::matrix::Mat;
use crate::morphism::{DgaMorphism, QEquivalenceReport};
use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub dga: TableDga,
    pub projection: DgaMorphism,
    /// Indices of the original basis elements representing the quotient
    /// basis, per degree.
    pub surviving: Vec<Vec<usize>>,
}

/// Degreewise quotient of a zero-differential algebra by the two-sided
/// ideal generated by the given homogeneous elements. Representatives are
/// the original basis elements at non-pivot positions, so witness output
/// stays readable.
pub fn quotient_by_ideal(h: &TableDga, elems: &[Element]) -> Result<QuotientRing> {
    if !h.has_zero_differential() {
        return Err(DgaError::NotZeroDifferential);
    }
    let cap = h.cap();
    // ideal spans per degree
    let mut ideal: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); cap + 1];
    for e in elems {
        if e.degree > cap {
            return Err(DgaError::CapExceeded {
                needed: e.degree,
                cap,
            });
        }
        for k in e.degree..=cap {
            let other = k - e.degree;
            for b in 0..h.dim(other) {
                let prod = h.multiply(e, &h.basis_element(other, b))?;
                if !prod.is_zero() {
                    ideal[k].push(prod.coords);
                }
            }
        }
    }

    let mut surviving: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    let mut proj_mats: Vec<Mat> = Vec::with_capacity(cap + 1);
    for k in 0..=cap {
        let dim = h.dim(k);
        let ideal_mat = Mat::from_cols(dim, &ideal[k]);
        let identity_cols: Vec<Vec<Rat>> = (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::one();
                v
            })
            .collect();
        let chosen = crate::matrix::extend_basis(dim, &ideal[k], &identity_cols);
        // projection: solve [ideal basis | chosen reps] x = v, keep rep part
        let ideal_basis: Vec<Vec<Rat>> = ideal_mat
            .independent_columns()
            .into_iter()
            .map(|c| ideal_mat.col(c))
            .collect();
        let rep_cols: Vec<Vec<Rat>> = chosen.iter().map(|&i| identity_cols[i].clone()).collect();
        let solver = Mat::hstack(&[
            &Mat::from_cols(dim, &ideal_basis),
            &Mat::from_cols(dim, &rep_cols),
        ]);
        let mut proj = Mat::zeros(chosen.len(), dim);
        for col in 0..dim {
            let mut v = vec![Rat::zero(); dim];
            v[col] = Rat::one();
            let sol = solver
                .solve(&v)
                .expect("ideal + representatives span the degree");
            for row in 0..chosen.len() {
                proj.set(row, col, sol[ideal_basis.len() + row].clone());
            }
        }
        surviving.push(chosen);
        proj_mats.push(proj);
    }

    let basis: Vec<Vec<String>> = surviving
        .iter()
        .enumerate()
        .map(|(k, idxs)| idxs.iter().map(|&i| h.labels(k)[i].clone()).collect())
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mult = build_mult_table(&dims, cap, |i, j, a, b| {
        // multiply representatives upstairs, project down
        let x = h.basis_element(i, surviving[i][a]);
        let y = h.basis_element(j, surviving[j][b]);
        let prod = h.multiply(&x, &y).expect("within cap");
        proj_mats[i + j]
            .apply(&prod.coords)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect::<SparseVec>()
    });
    let diff: Vec<Mat> = (0..cap).map(|k| Mat::zeros(dims[k + 1], dims[k])).collect();
    let dga = TableDga::new(
        format!("{}/ideal", h.name),
        cap,
        h.is_complete(),
        basis,
        mult,
        diff,
        None,
    )?;
    let projection = DgaMorphism::new(h, &dga, proj_mats)?;
    Ok(QuotientRing {
        dga,
        projection,
        surviving,
    })
}

#[derive(Debug, Clone)]
pub struct NzdReport {
    pub injective: bool,
    /// First kernel vector of the first failing degree.
    pub witness: Option<Element>,
}

/// Is multiplication by `e` injective out of every degree `i ≤ q`?
/// (At `q = 0` the condition degenerates to `e ≠ 0`.)
pub fn is_nzd_up_to(h: &TableDga, e: &Element, q: usize) -> Result<NzdReport> {
    if !h.has_zero_differential() {
        return Err(DgaError::NotZeroDifferential);
    }
    if !h.is_complete() && q + e.degree > h.cap() {
        return Err(DgaError::CapExceeded {
            needed: q + e.degree,
            cap: h.cap(),
        });
    }
    for i in 0..=q {
        let target = i + e.degree;
        let mut cols = Vec::new();
        for b in 0..h.dim(i) {
            let prod = h.multiply(e, &h.basis_element(i, b))?;
            cols.push(prod.coords);
        }
        let m = Mat::from_cols(h.dim(target), &cols);
        let kernel = m.kernel_basis();
        if let Some(v) = kernel.first() {
            return Ok(NzdReport {
                injective: false,
                witness: Some(Element {
                    degree: i,
                    coords: v.clone(),
                }),
            });
        }
    }
    Ok(NzdReport {
        injective: true,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct RegularityFailure {
    /// Index of the sequence element whose stage failed.
    pub index: usize,
    /// Degree of the witness.
    pub degree: usize,
    /// Witness in the stage quotient, and a readable rendering.
    pub witness: Element,
    pub witness_label: String,
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub q: usize,
    pub degrees: Vec<usize>,
    pub verdict: bool,
    pub failure: Option<RegularityFailure>,
}

/// Stage-by-stage regularity: element `α` must be a non-zero divisor up to
/// degree `q − deg(e_α) + 2` in the quotient by its predecessors. Stages
/// whose bound is negative impose no condition.
pub fn is_q_regular(h: &TableDga, seq: &[Element], q: usize) -> Result<RegularityReport> {
    if !h.has_zero_differential() {
        return Err(DgaError::NotZeroDifferential);
    }
    let degrees: Vec<usize> = seq.iter().map(|e| e.degree).collect();
    for e in seq {
        if e.degree % 2 != 0 {
            return Err(DgaError::OddDegreeElement(h.format_element(e)));
        }
    }
    // highest degree any stage check touches is q + 2
    if !h.is_complete() && q + 2 > h.cap() {
        return Err(DgaError::CapExceeded {
            needed: q + 2,
            cap: h.cap(),
        });
    }
    for (alpha, e) in seq.iter().enumerate() {
        let bound = q as i64 - e.degree as i64 + 2;
        if bound < 0 {
            continue;
        }
        let stage = quotient_by_ideal(h, &seq[..alpha])?;
        let e_in_stage = Element {
            degree: e.degree,
            coords: stage.projection.maps[e.degree].apply(&e.coords),
        };
        let report = is_nzd_up_to(&stage.dga, &e_in_stage, bound as usize)?;
        if !report.injective {
            let witness = report.witness.expect("failure carries a witness");
            let witness_label = stage.dga.format_element(&witness);
            return Ok(RegularityReport {
                q,
                degrees,
                verdict: false,
                failure: Some(RegularityFailure {
                    index: alpha,
                    degree: witness.degree,
                    witness,
                    witness_label,
                }),
            });
        }
    }
    Ok(RegularityReport {
        q,
        degrees,
        verdict: true,
        failure: None,
    })
}

#[derive(Debug)]
pub struct FormalityCertificate {
    pub extension: TableDga,
    pub quotient: TableDga,
    pub psi: DgaMorphism,
    pub q: usize,
    pub regularity: RegularityReport,
    pub equivalence: QEquivalenceReport,
    pub verified: bool,
}

/// Builds the extension `H ⊗ Λ(t_1..t_r)` with `dt_α = e_α`, the quotient
/// `H / Σ e_α H`, and the collapse map `ψ` (identity on `H`, `t_α ↦ 0`),
/// then mechanically verifies that `ψ` is a `q`-equivalence. When the
/// sequence is `q`-regular this must come back verified; callers may also
/// force a certificate for an irregular sequence and watch it fail.
pub fn formality_certificate(
    h: &TableDga,
    seq: &[Element],
    q: usize,
) -> Result<FormalityCertificate> {
    let regularity = is_q_regular(h, seq, q)?;
    let ext_cap = q + 2;
    if !h.is_complete() && ext_cap > h.cap() {
        return Err(DgaError::CapExceeded {
            needed: ext_cap,
            cap: h.cap(),
        });
    }
    let gens: Vec<(String, usize)> = seq
        .iter()
        .enumerate()
        .map(|(i, e)| (format!("t{}", i + 1), e.degree - 1))
        .collect();
    let data = HirschData {
        base: h.clone(),
        gens,
        tau: seq.to_vec(),
    };
    let ext = hirsch_extend(&data, Some(ext_cap.min(h.cap() + seq.iter().map(|e| e.degree - 1).sum::<usize>())))?;
    let quotient = quotient_by_ideal(h, seq)?;

    // ψ: extension -> quotient, identity on the base, generators to zero
    let top = ext.dga.cap().min(quotient.dga.cap());
    let mut maps = Vec::with_capacity(top + 1);
    for deg in 0..=top {
        let mut m = Mat::zeros(quotient.dga.dim(deg), ext.dga.dim(deg));
        for (col, &(mask, bidx)) in ext.layout[deg].iter().enumerate() {
            if mask != 0 {
                continue;
            }
            for (row, v) in quotient.projection.maps[deg].col(bidx).into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(row, col, v);
                }
            }
        }
        maps.push(m);
    }
    let psi = DgaMorphism::new(&ext.dga, &quotient.dga, maps)?;
    let equivalence = psi.q_equivalence(&ext.dga, &quotient.dga, q)?;
    let verified = equivalence.ok;
    Ok(FormalityCertificate {
        extension: ext.dga,
        quotient: quotient.dga,
        psi,
        q,
        regularity,
        equivalence,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn quotient_of_polynomial_ring() {
        let base = catalog::sp5_su5_base(22);
        let seq = catalog::sp5_su5_sequence(&base).unwrap();
        let q = quotient_by_ideal(&base, &seq).unwrap();
        for k in 0..=22usize {
            let expected = usize::from(matches!(k, 0 | 6 | 10));
            assert_eq!(q.dga.dim(k), expected, "degree {k}");
        }
    }

    #[test]
    fn quotient_by_orientation_class() {
        let s = catalog::s2xs2_algebra();
        let w = s.element_by_label("w").unwrap();
        let q = quotient_by_ideal(&s, &[w]).unwrap();
        assert_eq!(q.dga.dims(), vec![1, 0, 2, 0, 0]);
        // quotient by nothing is the identity
        let q0 = quotient_by_ideal(&s, &[]).unwrap();
        assert_eq!(q0.dga.dims(), s.dims());
    }

    #[test]
    fn nzd_orientation_class_on_product_of_spheres() {
        let s = catalog::s2xs2_algebra();
        let w = s.element_by_label("w").unwrap();
        assert!(is_nzd_up_to(&s, &w, 1).unwrap().injective);
        let rep = is_nzd_up_to(&s, &w, 2).unwrap();
        assert!(!rep.injective);
        assert_eq!(rep.witness.unwrap().degree, 2);
    }

    #[test]
    fn nzd_on_torus() {
        let t = catalog::torus_algebra(1);
        let h = catalog::kahler_class(&t).unwrap();
        assert!(is_nzd_up_to(&t, &h, 0).unwrap().injective);
        let rep = is_nzd_up_to(&t, &h, 1).unwrap();
        assert!(!rep.injective, "a · (ab) = 0");
    }

    #[test]
    fn sp5su5_regularity_boundary() {
        let base = catalog::sp5_su5_base(22);
        let seq = catalog::sp5_su5_sequence(&base).unwrap();
        let ok = is_q_regular(&base, &seq, 19).unwrap();
        assert!(ok.verdict);
        let bad = is_q_regular(&base, &seq, 20).unwrap();
        assert!(!bad.verdict);
        let failure = bad.failure.unwrap();
        assert_eq!(failure.index, 2, "x6*x10 fails in the stage-3 quotient");
        assert_eq!(failure.degree, 6);
        assert_eq!(failure.witness_label, "x6");
    }

    #[test]
    fn kahler_regularity_is_sharp_for_small_tori() {
        for n in 1..=3usize {
            let t = catalog::torus_algebra(n);
            let h = catalog::kahler_class(&t).unwrap();
            let ok = is_q_regular(&t, &[h.clone()], n - 1).unwrap();
            assert!(ok.verdict, "n = {n}: expected (n-1)-regularity");
            let bad = is_q_regular(&t, &[h], n).unwrap();
            assert!(!bad.verdict, "n = {n}: expected failure at q = n");
        }
    }

    #[test]
    fn regularity_is_monotone() {
        let base = catalog::sp5_su5_base(22);
        let seq = catalog::sp5_su5_sequence(&base).unwrap();
        for q in 0..=19usize {
            assert!(is_q_regular(&base, &seq, q).unwrap().verdict, "q = {q}");
        }
    }

    #[test]
    fn regularity_is_monotone_across_catalog_scenarios() {
        for entry in catalog::entries() {
            let Some((base_key, exprs, q)) = entry.regularity else {
                continue;
            };
            let base = catalog::build(base_key).unwrap();
            let dga = base.dga();
            let seq: Vec<_> = exprs
                .iter()
                .map(|s| catalog::element_from_expr(dga, s).unwrap())
                .collect();
            if !is_q_regular(dga, &seq, q).unwrap().verdict {
                continue;
            }
            for s in 0..q {
                assert!(
                    is_q_regular(dga, &seq, s).unwrap().verdict,
                    "{}: regular at {q} but not at {s}",
                    entry.key
                );
            }
        }
    }

    #[test]
    fn odd_degree_rejected() {
        let t = catalog::torus_algebra(1);
        let a = t.element_by_label("a1").unwrap();
        assert!(matches!(
            is_q_regular(&t, &[a], 1),
            Err(DgaError::OddDegreeElement(_))
        ));
    }

    #[test]
    fn sp5su5_certificate_verifies_at_19() {
        let base = catalog::sp5_su5_base(22);
        let seq = catalog::sp5_su5_sequence(&base).unwrap();
        let cert = formality_certificate(&base, &seq, 19).unwrap();
        assert!(cert.regularity.verdict);
        assert!(cert.verified);
        for k in 0..=20usize {
            let expected = usize::from(matches!(k, 0 | 6 | 10));
            assert_eq!(cert.quotient.dim(k), expected);
        }
    }

    #[test]
    fn heisenberg_certificate_fails_at_one() {
        // the orientation class of the torus is only 0-regular; forcing the
        // certificate at q = 1 must come back unverified with an H^2 failure
        let t = catalog::torus_algebra(1);
        let h = catalog::kahler_class(&t).unwrap();
        let cert = formality_certificate(&t, &[h], 1).unwrap();
        assert!(!cert.regularity.verdict);
        assert!(!cert.verified);
        assert!(cert
            .equivalence
            .failures
            .iter()
            .any(|f| f.degree == 2));
    }

    #[test]
    fn heis2_certificate_verifies_at_one() {
        let t = catalog::torus_algebra(2);
        let h = catalog::kahler_class(&t).unwrap();
        let cert = formality_certificate(&t, &[h], 1).unwrap();
        assert!(cert.verified);
        // the quotient is the expected reduced model: dims 1, 4, 5 in low degrees
        assert_eq!(cert.quotient.dim(0), 1);
        assert_eq!(cert.quotient.dim(1), 4);
        assert_eq!(cert.quotient.dim(2), 5);
    }

    #[test]
    fn linear_independence_of_regular_sequences() {
        // if q >= deg(e) - 2 for all elements and the sequence is q-regular,
        // the elements are linearly independent
        let base = catalog::sp5_su5_base(22);
        let seq = catalog::sp5_su5_sequence(&base).unwrap();
        let report = is_q_regular(&base, &seq, 19).unwrap();
        assert!(report.verdict);
        assert!(seq.iter().all(|e| 19 + 2 >= e.degree));
        // pairwise distinct degrees here, so stack into one matrix per degree
        let mut by_degree: std::collections::BTreeMap<usize, Vec<Vec<Rat>>> =
            std::collections::BTreeMap::new();
        for e in &seq {
            by_degree.entry(e.degree).or_default().push(e.coords.clone());
        }
        for (deg, vecs) in by_degree {
            let m = Mat::from_cols(base.dim(deg), &vecs);
            assert_eq!(m.rank(), vecs.len());
        }
    }
}
