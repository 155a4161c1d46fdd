//! Poincaré duality certification: nondegeneracy of all product pairings
//! into the top class, and the differential condition `d A^{n-1} = 0` that
//! upgrades a duality algebra to a duality CDGA.

use crate::dga::TableDga;
use crate::error::{DgaError, Result};
use crate::hirsch::{hirsch_extend, HirschData, HirschExtension};
use crate::matrix::Mat;
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct PdCertificate {
    pub n: usize,
    pub top_index: Option<usize>,
    /// `(degree i, dim A^i, rank of the pairing A^i ⊗ A^{n-i} -> A^n)`.
    pub pairing_ranks: Vec<(usize, usize, usize)>,
    pub is_pd: bool,
    pub is_pd_cdga: bool,
    pub failure: Option<String>,
}

/// The coefficient of the top class in a product of two basis elements.
pub fn pairing_matrix(a: &TableDga, n: usize, i: usize) -> Mat {
    let rows = a.dim(i);
    let cols = a.dim(n - i);
    let mut m = Mat::zeros(rows, cols);
    for x in 0..rows {
        for y in 0..cols {
            for (k, c) in a.mult_basis(i, n - i, x, y) {
                if k == 0 && !c.is_zero() {
                    m.set(x, y, c.clone());
                }
            }
        }
    }
    m
}

pub fn pd_check(a: &TableDga, n: usize) -> Result<PdCertificate> {
    if n > a.cap() {
        return Err(DgaError::CapExceeded {
            needed: n,
            cap: a.cap(),
        });
    }
    let mut failure = None;
    // everything above n must be known to vanish
    if !a.is_complete() {
        failure = Some("algebra is not known to vanish above its cap".to_string());
    }
    for k in n + 1..=a.cap() {
        if a.dim(k) != 0 {
            failure = Some(format!("A^{k} is nonzero above the formal dimension"));
        }
    }
    if a.dim(n) != 1 {
        failure = Some(format!("dim A^{n} = {}, expected 1", a.dim(n)));
    }
    let top_index = if a.dim(n) == 1 { Some(0) } else { None };

    let mut pairing_ranks = Vec::new();
    if failure.is_none() {
        for i in 0..=n {
            let m = pairing_matrix(a, n, i);
            let rank = m.rank();
            pairing_ranks.push((i, a.dim(i), rank));
            if rank != a.dim(i) || rank != a.dim(n - i) {
                failure.get_or_insert_with(|| {
                    format!(
                        "pairing A^{i} ⊗ A^{} -> A^{n} is degenerate (rank {rank}, dims {} and {})",
                        n - i,
                        a.dim(i),
                        a.dim(n - i)
                    )
                });
            }
        }
    }
    let is_pd = failure.is_none();
    let mut is_pd_cdga = is_pd;
    if is_pd && n >= 1 {
        let d = a.d_matrix(n - 1);
        if !d.is_zero() {
            is_pd_cdga = false;
            failure = Some(format!("d A^{} is nonzero", n - 1));
        }
    }
    Ok(PdCertificate {
        n,
        top_index,
        pairing_ranks,
        is_pd,
        is_pd_cdga,
        failure,
    })
}

/// Extends a certified duality base and certifies the extension at
/// dimension `n + Σ m_α`. By stability of duality under these extensions
/// the verdict is expected to be positive whenever the base certificate is.
pub fn hirsch_pd_check(
    base_cert: &PdCertificate,
    data: &HirschData,
) -> Result<(HirschExtension, PdCertificate)> {
    if !base_cert.is_pd_cdga {
        return Err(DgaError::NotPd(
            base_cert
                .failure
                .clone()
                .unwrap_or_else(|| "base certificate is negative".into()),
        ));
    }
    let total: usize = data.gens.iter().map(|(_, d)| d).sum();
    let m = base_cert.n + total;
    let ext = hirsch_extend(data, Some(data.base.cap() + total))?;
    let cert = pd_check(&ext.dga, m)?;
    Ok((ext, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn surfaces_are_pd() {
        for g in 1..=2usize {
            let s = catalog::surface_algebra(g);
            let cert = pd_check(&s, 2).unwrap();
            assert!(cert.is_pd && cert.is_pd_cdga);
        }
    }

    #[test]
    fn link_model_is_three_dimensional_pd_cdga() {
        let ext = catalog::link_model(2);
        let cert = pd_check(&ext.dga, 3).unwrap();
        assert!(cert.is_pd_cdga);
    }

    #[test]
    fn capped_polynomial_ring_is_not_pd() {
        let base = catalog::sp5_su5_base(22);
        let cert = pd_check(&base, 22).unwrap();
        assert!(!cert.is_pd);
    }

    #[test]
    fn extension_stability() {
        // H(S²×S²) ⊗ Λ(t3) is a 7-dimensional duality model
        let base = catalog::s2xs2_algebra();
        let base_cert = pd_check(&base, 4).unwrap();
        assert!(base_cert.is_pd_cdga);
        let w = base.element_by_label("w").unwrap();
        let data = HirschData {
            base: base.clone(),
            gens: vec![("t3".to_string(), 3)],
            tau: vec![w],
        };
        let (ext, cert) = hirsch_pd_check(&base_cert, &data).unwrap();
        assert_eq!(cert.n, 7);
        assert!(cert.is_pd_cdga);
        let h = crate::cohomology::cohomology(&ext.dga, 7).unwrap();
        assert_eq!(h.betti[3], 0);
    }

    #[test]
    fn double_extension_of_torus() {
        // H(T²) ⊗ Λ(t) ⊗ Λ(t'), dt = ab, dt' = 0: a 4-dimensional model
        let base = catalog::torus_algebra(1);
        let h = catalog::kahler_class(&base).unwrap();
        let zero2 = crate::dga::Element::zero(2, base.dim(2));
        let base_cert = pd_check(&base, 2).unwrap();
        let data = HirschData {
            base: base.clone(),
            gens: vec![("t".to_string(), 1), ("u".to_string(), 1)],
            tau: vec![h, zero2],
        };
        let (_, cert) = hirsch_pd_check(&base_cert, &data).unwrap();
        assert_eq!(cert.n, 4);
        assert!(cert.is_pd_cdga);
    }
}
