//! Holonomy Lie algebra presentations.
//!
//! The holonomy Lie algebra of a 1-finite CDGA is the free Lie algebra on
//! the dual of degree one, divided by the image of the dualized
//! differential plus the dualized cup product. For a zero-differential
//! algebra the relators are quadratic. For an extension of such an algebra
//! by degree-one generators, eliminating the generators hit by the
//! dualized differential leaves a presentation with relators in degrees 2
//! and 3 only; two further families of relators arise in the raw
//! elimination but follow from the others, and the tests confirm that
//! adding them never changes the lower-central-series dimensions.

use crate::dga::TableDga;
use crate::error::{DgaError, Result};
use crate::hirsch::HirschData;
use crate::lie::{bracket, generator_tensor, tensor_add, witt_dimension, FreeLie, Tensor};
use crate::matrix::{extend_basis, Mat};
use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct LieRelator {
    pub degree: usize,
    pub lyndon_coords: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct LiePresentation {
    pub generators: Vec<String>,
    pub relators: Vec<LieRelator>,
}

impl LiePresentation {
    pub fn free_lie(&self, max_degree: usize) -> FreeLie {
        FreeLie::new(self.generators.clone(), max_degree)
    }

    pub fn relator_tensors(&self, fl: &FreeLie) -> Vec<(usize, Tensor)> {
        self.relators
            .iter()
            .map(|r| (r.degree, fl.tensor_from_coords(r.degree, &r.lyndon_coords)))
            .collect()
    }
}

/// Sorted multiset of relator degrees.
pub fn relation_degree_profile(p: &LiePresentation) -> Vec<usize> {
    let mut out: Vec<usize> = p.relators.iter().map(|r| r.degree).collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy)]
pub struct LcsGuard {
    pub max_generators: usize,
    pub max_depth: usize,
}

impl Default for LcsGuard {
    fn default() -> Self {
        LcsGuard {
            max_generators: 10,
            max_depth: 6,
        }
    }
}

/// Dimensions of the graded pieces of the presented Lie algebra in degrees
/// `1..=depth`: free Lyndon count minus the rank of the degree-`k` piece of
/// the relator ideal.
pub fn lcs_dims(p: &LiePresentation, depth: usize, guard: Option<LcsGuard>) -> Result<Vec<usize>> {
    let guard = guard.unwrap_or_default();
    if p.generators.len() > guard.max_generators || depth > guard.max_depth {
        return Err(DgaError::DepthGuardExceeded(format!(
            "{} generators at depth {depth} (limits: {} generators, depth {})",
            p.generators.len(),
            guard.max_generators,
            guard.max_depth
        )));
    }
    let fl = p.free_lie(depth);
    let relators = p.relator_tensors(&fl);
    let n = p.generators.len();
    let mut dims = Vec::with_capacity(depth);
    for k in 1..=depth {
        let free = witt_dimension(n, k);
        let ideal = fl.ideal_rank(&relators, k);
        dims.push(free - ideal);
    }
    Ok(dims)
}

/// Raw holonomy data of a table: for each degree-2 dual basis element, the
/// linear part (dualized differential) over the degree-1 duals and the
/// quadratic part (dualized product) over bracket pairs.
struct RawRelator {
    linear: Vec<Rat>,
    /// coefficient of `[x_i, x_j]`, indexed by pairs `i < j` in
    /// lexicographic order.
    quad: Vec<Rat>,
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn raw_relators(a: &TableDga) -> Result<Vec<RawRelator>> {
    let n = a.dim(1);
    let pairs = pair_index(n);
    let d1 = a.d_matrix(1);
    let mut out = Vec::new();
    for k in 0..a.dim(2) {
        let linear: Vec<Rat> = (0..n).map(|i| d1.at(k, i).clone()).collect();
        let mut quad = vec![Rat::zero(); pairs.len()];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for (idx, c) in a.mult_basis(1, 1, i, j) {
                if idx == k {
                    quad[p] += c;
                }
            }
        }
        out.push(RawRelator { linear, quad });
    }
    Ok(out)
}

/// The holonomy Lie algebra presentation of a 1-finite table. When the
/// differential vanishes on degree one the relators are quadratic; when it
/// does not, the generators hit by the dualized differential are
/// eliminated, which requires each relator to stay homogeneous after
/// substitution (true for extensions of zero-differential algebras by
/// degree-one generators).
pub fn holonomy_presentation(a: &TableDga) -> Result<LiePresentation> {
    let n = a.dim(1);
    let gen_names: Vec<String> = a.labels(1).to_vec();
    let pairs = pair_index(n);
    let raw = raw_relators(a)?;

    if raw.iter().all(|r| r.linear.iter().all(Rat::is_zero)) {
        // zero linear part: quadratic presentation over all generators
        let fl = FreeLie::new(gen_names.clone(), 2);
        let mut relators = Vec::new();
        for r in &raw {
            if r.quad.iter().all(Rat::is_zero) {
                continue;
            }
            let mut t = Tensor::new();
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if !r.quad[p].is_zero() {
                    let br = bracket(&generator_tensor(i as u8), &generator_tensor(j as u8));
                    tensor_add(&mut t, &br, &r.quad[p]);
                }
            }
            relators.push(LieRelator {
                degree: 2,
                lyndon_coords: fl.coords_from_tensor(2, &t)?,
            });
        }
        return Ok(LiePresentation {
            generators: gen_names,
            relators,
        });
    }

    // Eliminate the generators in the image of the dualized differential.
    // Row-reduce the linear parts, applying the same operations to the
    // quadratic parts; pivot rows then read `S_p + q_p = 0` for a linear
    // form S_p over the generators.
    let nrows = raw.len();
    let mut lin = Mat::zeros(nrows, n);
    for (r, rel) in raw.iter().enumerate() {
        for (c, v) in rel.linear.iter().enumerate() {
            lin.set(r, c, v.clone());
        }
    }
    let mut quad: Vec<Vec<Rat>> = raw.iter().map(|r| r.quad.clone()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..nrows).find(|&r| !lin.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                let x = lin.at(row, c).clone();
                let y = lin.at(p, c).clone();
                lin.set(row, c, y);
                lin.set(p, c, x);
            }
            quad.swap(row, p);
        }
        let inv = lin.at(row, col).clone().recip();
        for c in 0..n {
            let v = lin.at(row, c).clone() * &inv;
            lin.set(row, c, v);
        }
        for q in quad[row].iter_mut() {
            *q *= &inv;
        }
        for r in 0..nrows {
            if r == row || lin.at(r, col).is_zero() {
                continue;
            }
            let f = lin.at(r, col).clone();
            for c in 0..n {
                let v = lin.at(r, c).clone() - &f * lin.at(row, c);
                lin.set(r, c, v);
            }
            let (left, right) = if r < row {
                let (a_part, b_part) = quad.split_at_mut(row);
                (&mut a_part[r], &b_part[0])
            } else {
                let (a_part, b_part) = quad.split_at_mut(r);
                (&mut b_part[0], &a_part[row])
            };
            for (x, y) in left.iter_mut().zip(right.iter()) {
                *x -= &f * y;
            }
        }
        pivots.push((row, col));
        row += 1;
    }

    // Change generator basis so each pivot linear form becomes a single new
    // generator: columns of `basis_change` are the new basis in old
    // coordinates.
    let mut basis_change = Mat::identity(n);
    for &(prow, pcol) in &pivots {
        for i in 0..n {
            basis_change.set(i, pcol, lin.at(prow, i).clone());
        }
    }
    // old generator x_i = Σ_m inv[m][i] · (new basis_m)
    let inverse = invert(&basis_change).ok_or_else(|| {
        DgaError::InhomogeneousRelations("generator change of basis is singular".into())
    })?;

    let eliminated: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let kept: Vec<usize> = (0..n).filter(|c| !eliminated.contains(c)).collect();
    let kept_names: Vec<String> = kept.iter().map(|&c| gen_names[c].clone()).collect();
    let kept_pos = |c: usize| kept.iter().position(|&k| k == c);

    // Substitution tensors over the kept generators: kept generator ↦
    // itself, eliminated S_p ↦ −q_p (which must be kept-only).
    let new_pairs = pair_index(n);
    let quad_in_new_basis = |q: &[Rat]| -> Vec<Rat> {
        // rewrite Σ q_{ij} [x_i, x_j] with x = inverse-combination of new basis
        let mut out = vec![Rat::zero(); new_pairs.len()];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            if q[p].is_zero() {
                continue;
            }
            for m in 0..n {
                let cm = inverse.at(m, i).clone();
                if cm.is_zero() {
                    continue;
                }
                for l in 0..n {
                    let cl = inverse.at(l, j).clone();
                    if cl.is_zero() || m == l {
                        continue;
                    }
                    let coeff = &q[p] * cm.clone() * cl;
                    let (lo, hi, sgn) = if m < l {
                        (m, l, Rat::one())
                    } else {
                        (l, m, -Rat::one())
                    };
                    let idx = new_pairs.iter().position(|&x| x == (lo, hi)).unwrap();
                    out[idx] += coeff * sgn;
                }
            }
        }
        out
    };

    let mut substitution: Vec<Option<Tensor>> = vec![None; n]; // per new-basis slot
    for &(prow, pcol) in &pivots {
        let q_new = quad_in_new_basis(&quad[prow]);
        let mut t = Tensor::new();
        for (p, &(i, j)) in new_pairs.iter().enumerate() {
            if q_new[p].is_zero() {
                continue;
            }
            let (Some(ki), Some(kj)) = (kept_pos(i), kept_pos(j)) else {
                return Err(DgaError::InhomogeneousRelations(format!(
                    "substitution for generator {} involves an eliminated generator",
                    gen_names[pcol]
                )));
            };
            let br = bracket(&generator_tensor(ki as u8), &generator_tensor(kj as u8));
            tensor_add(&mut t, &br, &(-q_new[p].clone()));
        }
        substitution[pcol] = Some(t);
    }
    let gen_sub = |c: usize| -> Tensor {
        match &substitution[c] {
            Some(t) => t.clone(),
            None => generator_tensor(kept_pos(c).expect("kept generator") as u8),
        }
    };

    // Non-pivot rows are pure quadratic relators; expand them through the
    // substitution and demand homogeneity.
    let fl = FreeLie::new(kept_names.clone(), 4);
    let mut relators = Vec::new();
    let pivot_rows: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
    for r in 0..nrows {
        if pivot_rows.contains(&r) {
            continue;
        }
        let q_new = quad_in_new_basis(&quad[r]);
        if q_new.iter().all(Rat::is_zero) {
            continue;
        }
        let mut t = Tensor::new();
        for (p, &(i, j)) in new_pairs.iter().enumerate() {
            if q_new[p].is_zero() {
                continue;
            }
            let br = bracket(&gen_sub(i), &gen_sub(j));
            tensor_add(&mut t, &br, &q_new[p]);
        }
        if t.is_empty() {
            continue;
        }
        let lengths: std::collections::BTreeSet<usize> = t.keys().map(Vec::len).collect();
        if lengths.len() > 1 {
            return Err(DgaError::InhomogeneousRelations(format!(
                "relator mixes degrees {lengths:?} after substitution"
            )));
        }
        let degree = *lengths.iter().next().unwrap();
        relators.push(LieRelator {
            degree,
            lyndon_coords: fl.coords_from_tensor(degree, &t)?,
        });
    }

    Ok(LiePresentation {
        generators: kept_names,
        relators,
    })
}

fn invert(m: &Mat) -> Option<Mat> {
    let n = m.rows();
    let aug = Mat::hstack(&[m, &Mat::identity(n)]);
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.at(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Structured elimination for an extension of a zero-differential base by
/// degree-one generators. Returns the presentation on the base duals plus
/// the kernel generators, with relator families:
/// quadratic — dual cups of the complement classes, brackets of kernel
/// generators, brackets of base duals with kernel generators; cubic —
/// brackets of base duals with the dual cups of the transgression images.
/// The two redundant cubic/quartic families are omitted.
pub fn eliminate_s_generators(data: &HirschData) -> Result<LiePresentation> {
    let base = &data.base;
    if !base.has_zero_differential() {
        return Err(DgaError::BasisSplitInvalid(
            "base must have zero differential".into(),
        ));
    }
    if data.gens.iter().any(|(_, d)| *d != 1) {
        return Err(DgaError::BasisSplitInvalid(
            "all extension generators must have degree one".into(),
        ));
    }
    let n_h = base.dim(1);
    let h2 = base.dim(2);
    let n_p = data.gens.len();

    // τ matrix: columns are the transgression images in H² = base degree 2
    let mut tau_mat = Mat::zeros(h2, n_p);
    for (g, t) in data.tau.iter().enumerate() {
        for (k, c) in t.coords.iter().enumerate() {
            tau_mat.set(k, g, c.clone());
        }
    }
    let s_cols = tau_mat.independent_columns();
    let t_combos = tau_mat.kernel_basis();
    let e_vectors: Vec<Vec<Rat>> = s_cols.iter().map(|&c| tau_mat.col(c)).collect();

    // extend the independent transgression images to a basis of H²
    let identity_cols: Vec<Vec<Rat>> = (0..h2)
        .map(|i| {
            let mut v = vec![Rat::zero(); h2];
            v[i] = Rat::one();
            v
        })
        .collect();
    let f_choice = extend_basis(h2, &e_vectors, &identity_cols);
    let f_vectors: Vec<Vec<Rat>> = f_choice.iter().map(|&i| identity_cols[i].clone()).collect();
    let full = Mat::hstack(&[
        &Mat::from_cols(h2, &e_vectors),
        &Mat::from_cols(h2, &f_vectors),
    ]);
    let full_inv = invert(&full).ok_or_else(|| {
        DgaError::BasisSplitInvalid("transgression images plus complement is singular".into())
    })?;

    // dual cup of the functional given by row `r` of full_inv:
    // Σ_{i<j} ξ(h_i h_j) [h_i, h_j]
    let cup_dual = |r: usize| -> Tensor {
        let mut t = Tensor::new();
        for i in 0..n_h {
            for j in i + 1..n_h {
                let mut coeff = Rat::zero();
                for (k, c) in base.mult_basis(1, 1, i, j) {
                    coeff += full_inv.at(r, k).clone() * c;
                }
                if !coeff.is_zero() {
                    let br = bracket(&generator_tensor(i as u8), &generator_tensor(j as u8));
                    tensor_add(&mut t, &br, &coeff);
                }
            }
        }
        t
    };

    let n_t = t_combos.len();
    let mut names: Vec<String> = base.labels(1).to_vec();
    for (idx, combo) in t_combos.iter().enumerate() {
        let support: Vec<usize> = combo
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if support.len() == 1 && combo[support[0]].is_one() {
            names.push(data.gens[support[0]].0.clone());
        } else {
            names.push(format!("t_comb{idx}"));
        }
    }

    let fl = FreeLie::new(names.clone(), 3);
    let gen_t = |k: usize| generator_tensor((n_h + k) as u8);
    let gen_h = |i: usize| generator_tensor(i as u8);
    let mut relators = Vec::new();
    // quadratic: dual cups of the complement classes
    for g in 0..f_vectors.len() {
        let t = cup_dual(e_vectors.len() + g);
        if !t.is_empty() {
            relators.push(LieRelator {
                degree: 2,
                lyndon_coords: fl.coords_from_tensor(2, &t)?,
            });
        }
    }
    // quadratic: brackets of kernel generators
    for a in 0..n_t {
        for b in a + 1..n_t {
            let t = bracket(&gen_t(a), &gen_t(b));
            relators.push(LieRelator {
                degree: 2,
                lyndon_coords: fl.coords_from_tensor(2, &t)?,
            });
        }
    }
    // quadratic: base duals against kernel generators
    for i in 0..n_h {
        for a in 0..n_t {
            let t = bracket(&gen_h(i), &gen_t(a));
            relators.push(LieRelator {
                degree: 2,
                lyndon_coords: fl.coords_from_tensor(2, &t)?,
            });
        }
    }
    // cubic: base duals against the dual cups of the transgression images
    for beta in 0..e_vectors.len() {
        let u = cup_dual(beta);
        for i in 0..n_h {
            let t = bracket(&gen_h(i), &u);
            if !t.is_empty() {
                relators.push(LieRelator {
                    degree: 3,
                    lyndon_coords: fl.coords_from_tensor(3, &t)?,
                });
            }
        }
    }
    Ok(LiePresentation {
        generators: names,
        relators,
    })
}

/// The two omitted relator families — kernel generators against the dual
/// cups (cubic), and dual cups against each other (quartic) — appended to
/// a presentation. Used by tests to confirm they are consequences of the
/// retained relators.
pub fn with_omitted_relators(data: &HirschData, p: &LiePresentation) -> Result<LiePresentation> {
    let base = &data.base;
    let n_h = base.dim(1);
    let n_t = p.generators.len() - n_h;
    let h2 = base.dim(2);
    let mut tau_mat = Mat::zeros(h2, data.gens.len());
    for (g, t) in data.tau.iter().enumerate() {
        for (k, c) in t.coords.iter().enumerate() {
            tau_mat.set(k, g, c.clone());
        }
    }
    let s_cols = tau_mat.independent_columns();
    let e_vectors: Vec<Vec<Rat>> = s_cols.iter().map(|&c| tau_mat.col(c)).collect();
    let identity_cols: Vec<Vec<Rat>> = (0..h2)
        .map(|i| {
            let mut v = vec![Rat::zero(); h2];
            v[i] = Rat::one();
            v
        })
        .collect();
    let f_choice = extend_basis(h2, &e_vectors, &identity_cols);
    let f_vectors: Vec<Vec<Rat>> = f_choice.iter().map(|&i| identity_cols[i].clone()).collect();
    let full = Mat::hstack(&[
        &Mat::from_cols(h2, &e_vectors),
        &Mat::from_cols(h2, &f_vectors),
    ]);
    let full_inv =
        invert(&full).ok_or_else(|| DgaError::BasisSplitInvalid("singular split".into()))?;
    let cup_dual = |r: usize| -> Tensor {
        let mut t = Tensor::new();
        for i in 0..n_h {
            for j in i + 1..n_h {
                let mut coeff = Rat::zero();
                for (k, c) in base.mult_basis(1, 1, i, j) {
                    coeff += full_inv.at(r, k).clone() * c;
                }
                if !coeff.is_zero() {
                    let br = bracket(&generator_tensor(i as u8), &generator_tensor(j as u8));
                    tensor_add(&mut t, &br, &coeff);
                }
            }
        }
        t
    };
    let fl = FreeLie::new(p.generators.clone(), 4);
    let mut out = p.clone();
    for beta in 0..e_vectors.len() {
        let u = cup_dual(beta);
        if u.is_empty() {
            continue;
        }
        for a in 0..n_t {
            let t = bracket(&generator_tensor((n_h + a) as u8), &u);
            if !t.is_empty() {
                out.relators.push(LieRelator {
                    degree: 3,
                    lyndon_coords: fl.coords_from_tensor(3, &t)?,
                });
            }
        }
        for beta2 in 0..e_vectors.len() {
            let u2 = cup_dual(beta2);
            let t = bracket(&u, &u2);
            if !t.is_empty() {
                out.relators.push(LieRelator {
                    degree: 4,
                    lyndon_coords: fl.coords_from_tensor(4, &t)?,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::regularity::quotient_by_ideal;

    #[test]
    fn surface_holonomy_is_one_quadratic_relator() {
        let s = catalog::surface_algebra(2);
        let p = holonomy_presentation(&s).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(relation_degree_profile(&p), vec![2]);
    }

    #[test]
    fn free_lie_dims_match_witt_oracle() {
        let p = LiePresentation {
            generators: vec!["a".into(), "b".into()],
            relators: Vec::new(),
        };
        let dims = lcs_dims(&p, 5, None).unwrap();
        assert_eq!(dims, vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn heisenberg_elimination_gives_nilpotent_class_two() {
        let base = catalog::torus_algebra(1);
        let h = catalog::kahler_class(&base).unwrap();
        let data = HirschData {
            base,
            gens: vec![("t".to_string(), 1)],
            tau: vec![h],
        };
        let p = eliminate_s_generators(&data).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(relation_degree_profile(&p), vec![3, 3]);
        let dims = lcs_dims(&p, 5, None).unwrap();
        assert_eq!(dims, vec![2, 1, 0, 0, 0]);
    }

    #[test]
    fn link_genus_two_elimination() {
        let base = catalog::surface_algebra(2);
        let w = base.element_by_label("w").unwrap();
        let data = HirschData {
            base,
            gens: vec![("t".to_string(), 1)],
            tau: vec![w],
        };
        let p = eliminate_s_generators(&data).unwrap();
        assert_eq!(p.generators.len(), 4);
        // one cubic relator per degree-one dual
        assert_eq!(relation_degree_profile(&p), vec![3, 3, 3, 3]);
    }

    #[test]
    fn trivial_extension_keeps_quadratic_relators() {
        let base = catalog::surface_algebra(1);
        let zero = crate::dga::Element::zero(2, base.dim(2));
        let data = HirschData {
            base,
            gens: vec![("t".to_string(), 1)],
            tau: vec![zero],
        };
        let p = eliminate_s_generators(&data).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert!(relation_degree_profile(&p).iter().all(|&d| d == 2));
    }

    #[test]
    fn quotient_model_has_quadratic_presentation() {
        // the reduced model of the 5-dimensional Heisenberg manifold
        let t = catalog::torus_algebra(2);
        let h = catalog::kahler_class(&t).unwrap();
        let q = quotient_by_ideal(&t, &[h]).unwrap();
        let p = holonomy_presentation(&q.dga).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relators.len(), 5);
        assert!(relation_degree_profile(&p).iter().all(|&d| d == 2));
    }

    #[test]
    fn raw_and_eliminated_presentations_have_equal_lcs_dims() {
        // The raw holonomy presentation of the extension retains the two
        // redundant relator families; dimensions must agree with the
        // structured elimination.
        for (base, tau) in [
            (catalog::torus_algebra(1), "a1*b1"),
            (catalog::surface_algebra(2), "w"),
        ] {
            let h = catalog::element_from_expr(&base, tau).unwrap();
            let data = HirschData {
                base: base.clone(),
                gens: vec![("t".to_string(), 1)],
                tau: vec![h],
            };
            let ext = crate::hirsch::hirsch_extend(&data, None).unwrap();
            let raw = holonomy_presentation(&ext.dga).unwrap();
            let elim = eliminate_s_generators(&data).unwrap();
            let d1 = lcs_dims(&raw, 5, None).unwrap();
            let d2 = lcs_dims(&elim, 5, None).unwrap();
            assert_eq!(d1, d2, "base {}", base.name);
        }
    }

    #[test]
    fn omitted_relators_change_nothing() {
        for g in 1..=2usize {
            let base = catalog::surface_algebra(g);
            let w = base.element_by_label("w").unwrap();
            let data = HirschData {
                base,
                gens: vec![("t".to_string(), 1)],
                tau: vec![w],
            };
            let p = eliminate_s_generators(&data).unwrap();
            let augmented = with_omitted_relators(&data, &p).unwrap();
            let d1 = lcs_dims(&p, 5, None).unwrap();
            let d2 = lcs_dims(&augmented, 5, None).unwrap();
            assert_eq!(d1, d2, "genus {g}");
        }
    }

    #[test]
    fn depth_guard_triggers() {
        let p = LiePresentation {
            generators: (0..12).map(|i| format!("g{i}")).collect(),
            relators: Vec::new(),
        };
        assert!(matches!(
            lcs_dims(&p, 3, None),
            Err(DgaError::DepthGuardExceeded(_))
        ));
    }
}
