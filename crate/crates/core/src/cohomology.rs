//! Cocycles, coboundaries, the cohomology ring on chosen representatives,
//! truncation constructions, and Massey triple products.

use crate::dga::{build_mult_table, Element, SparseVec, TableDga};
use crate::error::{DgaError, Result};
use crate::matrix::{extend_basis, Mat};
use crate::rational::Rat;
use num_traits::{One, Zero};

/// Cohomology of a table in degrees `0..=upto`, with explicit cocycle,
/// coboundary and representative bases. Representatives are the first
/// kernel-basis vectors that extend the coboundary space, so the choice is
/// deterministic given the basis order.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub upto: usize,
    pub betti: Vec<usize>,
    pub cocycles: Vec<Vec<Vec<Rat>>>,
    pub coboundaries: Vec<Vec<Vec<Rat>>>,
    pub reps: Vec<Vec<Vec<Rat>>>,
}

pub fn cohomology(a: &TableDga, upto: usize) -> Result<Cohomology> {
    a.check_trusted(upto)?;
    let mut betti = Vec::with_capacity(upto + 1);
    let mut cocycles = Vec::with_capacity(upto + 1);
    let mut coboundaries = Vec::with_capacity(upto + 1);
    let mut reps = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        let z: Vec<Vec<Rat>> = a.d_matrix(k).kernel_basis();
        let b: Vec<Vec<Rat>> = if k == 0 {
            Vec::new()
        } else {
            let d_prev = a.d_matrix(k - 1);
            d_prev
                .independent_columns()
                .into_iter()
                .map(|c| d_prev.col(c))
                .collect()
        };
        let chosen = extend_basis(a.dim(k), &b, &z);
        let r: Vec<Vec<Rat>> = chosen.into_iter().map(|i| z[i].clone()).collect();
        betti.push(r.len());
        cocycles.push(z);
        coboundaries.push(b);
        reps.push(r);
    }
    Ok(Cohomology {
        upto,
        betti,
        cocycles,
        coboundaries,
        reps,
    })
}

impl Cohomology {
    pub fn rep_element(&self, degree: usize, idx: usize) -> Element {
        Element {
            degree,
            coords: self.reps[degree][idx].clone(),
        }
    }

    /// Coordinates of `[x]` against the representative basis of its degree.
    /// Errors with `NotCocycle` when `dx != 0`.
    pub fn class_of(&self, a: &TableDga, x: &Element) -> Result<Vec<Rat>> {
        if x.degree > self.upto {
            return Err(DgaError::CapExceeded {
                needed: x.degree + 1,
                cap: self.upto,
            });
        }
        if !a.is_cocycle(x)? {
            return Err(DgaError::NotCocycle(a.format_element(x)));
        }
        let k = x.degree;
        let b = Mat::from_cols(a.dim(k), &self.coboundaries[k]);
        let r = Mat::from_cols(a.dim(k), &self.reps[k]);
        let stacked = Mat::hstack(&[&b, &r]);
        let sol = stacked.solve(&x.coords).ok_or_else(|| {
            DgaError::Invalid("cocycle failed to reduce against Z = B + reps".into())
        })?;
        Ok(sol[self.coboundaries[k].len()..].to_vec())
    }

    /// The element `Σ class[i] · rep_i` of the given degree.
    pub fn element_from_class(&self, a: &TableDga, degree: usize, class: &[Rat]) -> Element {
        let mut e = Element::zero(degree, a.dim(degree));
        for (i, c) in class.iter().enumerate() {
            if !c.is_zero() {
                let rep = self.rep_element(degree, i);
                e.add_assign(&rep.scaled(c));
            }
        }
        e
    }

    /// Product of classes, as a class: multiply representatives in `a`,
    /// then reduce modulo coboundaries.
    pub fn class_product(
        &self,
        a: &TableDga,
        deg_x: usize,
        class_x: &[Rat],
        deg_y: usize,
        class_y: &[Rat],
    ) -> Result<Vec<Rat>> {
        let x = self.element_from_class(a, deg_x, class_x);
        let y = self.element_from_class(a, deg_y, class_y);
        let xy = a.multiply(&x, &y)?;
        self.class_of(a, &xy)
    }

    /// Realizes the cohomology ring as a table with zero differential.
    /// Representative labels reuse the underlying basis label whenever the
    /// representative is a plain basis vector.
    pub fn ring_table(&self, a: &TableDga, name: impl Into<String>) -> Result<TableDga> {
        let cap = self.upto;
        let dims: Vec<usize> = self.betti.clone();
        let mut basis: Vec<Vec<String>> = Vec::with_capacity(cap + 1);
        for k in 0..=cap {
            let mut labels = Vec::new();
            for (i, rep) in self.reps[k].iter().enumerate() {
                let nonzero: Vec<usize> = rep
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, _)| j)
                    .collect();
                if nonzero.len() == 1 && rep[nonzero[0]].is_one() {
                    labels.push(a.labels(k)[nonzero[0]].clone());
                } else {
                    labels.push(format!("h{k}_{i}"));
                }
            }
            basis.push(labels);
        }
        let mut tables = std::collections::BTreeMap::new();
        for i in 0..=cap {
            for j in 0..=cap - i {
                let mut table = Vec::with_capacity(dims[i] * dims[j]);
                for x in 0..dims[i] {
                    for y in 0..dims[j] {
                        let mut cx = vec![Rat::zero(); dims[i]];
                        cx[x] = Rat::one();
                        let mut cy = vec![Rat::zero(); dims[j]];
                        cy[y] = Rat::one();
                        let prod = self.class_product(a, i, &cx, j, &cy)?;
                        let sv: SparseVec = prod
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect();
                        table.push(sv);
                    }
                }
                tables.insert((i, j), table);
            }
        }
        let diff: Vec<Mat> = (0..cap).map(|k| Mat::zeros(dims[k + 1], dims[k])).collect();
        // The ring table is complete exactly when every product of the
        // source that could land above `upto` is already known to vanish.
        let complete = a.is_complete() && cap >= a.cap();
        TableDga::new(name, cap, complete, basis, tables, diff, None)
    }
}

/// The quotient by everything above degree `q+1`. Products landing in
/// degree `q+1` are retained; products above it are killed, as is the
/// differential out of degree `q+1`.
pub fn truncate(a: &TableDga, q: usize) -> Result<TableDga> {
    let new_cap = q + 1;
    if new_cap > a.cap() {
        return Err(DgaError::CapExceeded {
            needed: new_cap,
            cap: a.cap(),
        });
    }
    let basis: Vec<Vec<String>> = (0..=new_cap).map(|k| a.labels(k).to_vec()).collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mult = build_mult_table(&dims, new_cap, |i, j, x, y| a.mult_basis(i, j, x, y));
    // diff stores d out of degrees 0..q only; d out of degree q+1 is
    // dropped because its target is killed
    let diff: Vec<Mat> = (0..new_cap).map(|k| a.d_matrix(k)).collect();
    let weights = a
        .weights()
        .map(|w| w[0..=new_cap].to_vec());
    TableDga::new(
        format!("{}|<={}", a.name, new_cap),
        new_cap,
        true,
        basis,
        mult,
        diff,
        weights,
    )
}

/// The modified truncation: split `A^{q+1} = Z^{q+1} ⊕ U^{q+1}` with an
/// explicit complement `U` of the cocycles, and quotient by the differential
/// ideal `U ⊕ (everything above q+1)`. Unlike plain truncation this keeps
/// `H^{q+1}` intact; the projection is returned alongside so callers can
/// verify that.
pub fn modified_truncate(a: &TableDga, q: usize) -> Result<(TableDga, crate::morphism::DgaMorphism)> {
    let new_cap = q + 1;
    a.check_trusted(new_cap)?;
    let top_d = a.d_matrix(new_cap);
    // U = span of the standard basis vectors at the pivot columns of
    // d: A^{q+1} -> A^{q+2}; d is injective on U, and Z ⊕ U = A^{q+1}.
    let pivot_cols = top_d.independent_columns();
    let keep: Vec<usize> = (0..a.dim(new_cap))
        .filter(|c| !pivot_cols.contains(c))
        .collect();

    // Projection in top degree: express v = z + u with z in the span of the
    // kept coordinates... the complement split is coordinatewise only after
    // reduction, so build the actual projection matrix onto Z along U.
    let z_basis = top_d.kernel_basis();
    let u_basis: Vec<Vec<Rat>> = pivot_cols
        .iter()
        .map(|&c| {
            let mut v = vec![Rat::zero(); a.dim(new_cap)];
            v[c] = Rat::one();
            v
        })
        .collect();
    let z_mat = Mat::from_cols(a.dim(new_cap), &z_basis);
    let u_mat = Mat::from_cols(a.dim(new_cap), &u_basis);
    let zu = Mat::hstack(&[&z_mat, &u_mat]);
    // proj(v) = Z-part of v in the Z ⊕ U decomposition, expressed in the
    // quotient basis (which we take to be the Z basis itself).
    let mut proj_top = Mat::zeros(z_basis.len(), a.dim(new_cap));
    for col in 0..a.dim(new_cap) {
        let mut v = vec![Rat::zero(); a.dim(new_cap)];
        v[col] = Rat::one();
        let sol = zu
            .solve(&v)
            .expect("Z + U spans the top degree by construction");
        for row in 0..z_basis.len() {
            proj_top.set(row, col, sol[row].clone());
        }
    }
    let _ = keep;

    let mut basis: Vec<Vec<String>> = (0..new_cap).map(|k| a.labels(k).to_vec()).collect();
    basis.push((0..z_basis.len()).map(|i| format!("z{new_cap}_{i}")).collect());
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();

    let project = |deg: usize, coords: &[Rat]| -> Vec<Rat> {
        if deg < new_cap {
            coords.to_vec()
        } else {
            proj_top.apply(coords)
        }
    };

    let mult = build_mult_table(&dims, new_cap, |i, j, x, y| {
        if i + j < new_cap {
            return a.mult_basis(i, j, x, y);
        }
        // product lands in the top degree: push through the projection
        let raw = a.mult_basis(i, j, x, y);
        let mut dense = vec![Rat::zero(); a.dim(new_cap)];
        for (k, c) in raw {
            dense[k] += c;
        }
        project(new_cap, &dense)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    });

    let mut diff: Vec<Mat> = Vec::with_capacity(new_cap);
    for k in 0..new_cap {
        let d = a.d_matrix(k);
        if k + 1 < new_cap {
            diff.push(d);
        } else {
            let mut m = Mat::zeros(dims[new_cap], dims[k]);
            for c in 0..dims[k] {
                let img = project(new_cap, &d.col(c));
                for (r, v) in img.into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            diff.push(m);
        }
    }

    let quotient = TableDga::new(
        format!("{}[{}]", a.name, new_cap),
        new_cap,
        true,
        basis,
        mult,
        diff,
        None,
    )?;

    let mut maps: Vec<Mat> = Vec::with_capacity(new_cap + 1);
    for k in 0..new_cap {
        maps.push(Mat::identity(a.dim(k)));
    }
    maps.push(proj_top);
    let proj = crate::morphism::DgaMorphism::new(a, &quotient, maps)?;
    Ok((quotient, proj))
}

#[derive(Debug, Clone)]
pub struct MasseyResult {
    pub degree: usize,
    pub representative: Element,
    /// Class coordinates of the representative in `H^degree`.
    pub rep_class: Vec<Rat>,
    /// Basis of the indeterminacy subspace `[a]·H + H·[c]` in class coords.
    pub indeterminacy: Vec<Vec<Rat>>,
    pub vanishes: bool,
}

/// The triple Massey product `<a, b, c>`: solves `dx = a·b` and `dy = b·c`
/// exactly and returns the class of `x·c - (-1)^{|a|} a·y` together with its
/// indeterminacy subspace.
pub fn massey_triple(
    alg: &TableDga,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<MasseyResult> {
    for (label, e) in [("first", a), ("second", b), ("third", c)] {
        if !alg.is_cocycle(e)? {
            return Err(DgaError::NotCocycle(format!(
                "{label} argument {}",
                alg.format_element(e)
            )));
        }
    }
    let target = a.degree + b.degree + c.degree - 1;
    alg.check_trusted(target)?;

    let ab = alg.multiply(a, b)?;
    let x = solve_primitive(alg, &ab).ok_or_else(|| {
        DgaError::ProductNotExact(format!("[a][b] != 0 for a*b = {}", alg.format_element(&ab)))
    })?;
    let bc = alg.multiply(b, c)?;
    let y = solve_primitive(alg, &bc).ok_or_else(|| {
        DgaError::ProductNotExact(format!("[b][c] != 0 for b*c = {}", alg.format_element(&bc)))
    })?;

    let xc = alg.multiply(&x, c)?;
    let ay = alg.multiply(a, &y)?;
    let sign = if a.degree % 2 == 1 {
        Rat::one()
    } else {
        -Rat::one()
    };
    let mut w = xc;
    w.add_assign(&ay.scaled(&sign));
    debug_assert!(alg.is_cocycle(&w).unwrap_or(true), "Massey rep not closed");

    let h = cohomology(alg, target)?;
    let rep_class = h.class_of(alg, &w)?;

    // Indeterminacy: [a]·H^{|b|+|c|-1} + H^{|a|+|b|-1}·[c].
    let mut spanning: Vec<Vec<Rat>> = Vec::new();
    let right_deg = b.degree + c.degree - 1;
    for i in 0..h.betti[right_deg] {
        let r = h.rep_element(right_deg, i);
        let prod = alg.multiply(a, &r)?;
        spanning.push(h.class_of(alg, &prod)?);
    }
    let left_deg = a.degree + b.degree - 1;
    for i in 0..h.betti[left_deg] {
        let l = h.rep_element(left_deg, i);
        let prod = alg.multiply(&l, c)?;
        spanning.push(h.class_of(alg, &prod)?);
    }
    let span_mat = Mat::from_cols(h.betti[target], &spanning);
    let chosen = span_mat.independent_columns();
    let indeterminacy: Vec<Vec<Rat>> = chosen.into_iter().map(|i| spanning[i].clone()).collect();
    let ind_mat = Mat::from_cols(h.betti[target], &indeterminacy);
    let vanishes = ind_mat.solve(&rep_class).is_some();

    Ok(MasseyResult {
        degree: target,
        representative: w,
        rep_class,
        indeterminacy,
        vanishes,
    })
}

/// A deterministic solution of `dx = v`, or `None` when `v` is not exact.
pub fn solve_primitive(alg: &TableDga, v: &Element) -> Option<Element> {
    if v.degree == 0 {
        return if v.is_zero() {
            Some(Element::zero(0, 1))
        } else {
            None
        };
    }
    let d = alg.d_matrix(v.degree - 1);
    d.solve(&v.coords).map(|coords| Element {
        degree: v.degree - 1,
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::rat_int;

    #[test]
    fn betti_of_exterior_square() {
        let a = catalog::surface_algebra(1);
        let h = cohomology(&a, 2).unwrap();
        assert_eq!(h.betti, vec![1, 2, 1]);
    }

    #[test]
    fn heisenberg_betti() {
        let ext = catalog::heisenberg_model(1);
        let h = cohomology(&ext.dga, 3).unwrap();
        assert_eq!(h.betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn truncate_exterior_at_zero() {
        let a = catalog::surface_algebra(1);
        let t = truncate(&a, 0).unwrap();
        assert_eq!(t.dims(), vec![1, 2]);
        // all products of degree-1 elements vanish in the quotient
        let x = t.element_by_label("a1").unwrap();
        let y = t.element_by_label("b1").unwrap();
        assert!(t.multiply(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn truncate_heisenberg_keeps_degree_two() {
        // The quotient by degrees > q+1 keeps degree q+1 = 2 with its
        // incoming differential. (The alternative reading, killing degree
        // q+1 too, would give dims (1,3,0) and a forced d = 0; the
        // definition quotients only by degrees strictly above q+1.)
        let ext = catalog::heisenberg_model(1);
        let t = truncate(&ext.dga, 1).unwrap();
        assert_eq!(t.dims(), vec![1, 3, 3]);
        let tt = t.element_by_label("t").unwrap();
        let dt = t.apply_d(&tt).unwrap();
        assert!(!dt.is_zero(), "dt = ab is retained in the truncation");
    }

    #[test]
    fn truncation_preserves_low_cohomology() {
        let ext = catalog::heisenberg_model(2);
        let full = cohomology(&ext.dga, 3).unwrap();
        for q in 1..=2usize {
            let t = truncate(&ext.dga, q).unwrap();
            let th = cohomology(&t, q).unwrap();
            assert_eq!(th.betti[..=q], full.betti[..=q], "q = {q}");
        }
    }

    #[test]
    fn modified_truncation_is_iso_up_to_q_plus_one() {
        let ext = catalog::heisenberg_model(1);
        // q = 1: A[2] must keep H^2 while plain truncation changes it
        let (t, proj) = modified_truncate(&ext.dga, 1).unwrap();
        let full = cohomology(&ext.dga, 2).unwrap();
        let th = cohomology(&t, 2).unwrap();
        assert_eq!(th.betti, full.betti[..=2]);
        let rep = proj
            .q_equivalence(&ext.dga, &t, 1)
            .unwrap();
        assert!(rep.ok);
        // d = 0 case: modified truncation agrees with plain truncation dims
        let s = catalog::surface_algebra(2);
        let (t2, _) = modified_truncate(&s, 0).unwrap();
        let p2 = truncate(&s, 0).unwrap();
        assert_eq!(t2.dims(), p2.dims());
        // Heis_1 at q = 2: all of A^3 is closed, so dim A[3]^3 = dim Z^3 = 1
        let (t3, _) = modified_truncate(&ext.dga, 2).unwrap();
        assert_eq!(t3.dim(3), 1);
    }

    #[test]
    fn massey_in_heisenberg_is_nonvanishing() {
        let ext = catalog::heisenberg_model(1);
        let a = ext.dga.element_by_label("a1").unwrap();
        let b = ext.dga.element_by_label("b1").unwrap();
        let res = massey_triple(&ext.dga, &a, &a, &b).unwrap();
        assert!(!res.vanishes);
        assert!(res.indeterminacy.is_empty());
        // representative is ±a·t up to a coboundary
        assert_eq!(res.degree, 2);
        assert!(!res.rep_class.iter().all(Rat::is_zero));
    }

    #[test]
    fn massey_precondition_failure() {
        let a = catalog::surface_algebra(1);
        let x = a.element_by_label("a1").unwrap();
        let y = a.element_by_label("b1").unwrap();
        // <a, b, a>: [a][b] = orientation class is nonzero
        assert!(matches!(
            massey_triple(&a, &x, &y, &x),
            Err(DgaError::ProductNotExact(_))
        ));
    }

    #[test]
    fn massey_class_shifts_stay_in_indeterminacy() {
        // shifting x by a cocycle moves the representative by an element of
        // the indeterminacy subspace
        let model = catalog::sp5_su5_model(22);
        let x6 = model.element_by_label("x6").unwrap();
        let x10 = model.element_by_label("x10").unwrap();
        let res = massey_triple(&model, &x6, &x6, &x10).unwrap();
        assert!(!res.vanishes);
        assert!(res.indeterminacy.is_empty());
        assert_eq!(res.degree, 21);

        let h = cohomology(&model, 21).unwrap();
        // perturb the primitive x (degree 11) by the only cocycle available:
        // there are none in degree 11, so instead check the b-side shift in
        // degree 15; both H^11 and H^15 vanish here, making the product
        // strictly well-defined — the class must be exactly reproducible.
        let ab = model.multiply(&x6, &x6).unwrap();
        let x = solve_primitive(&model, &ab).unwrap();
        let bc = model.multiply(&x6, &x10).unwrap();
        let y = solve_primitive(&model, &bc).unwrap();
        let xc = model.multiply(&x, &x10).unwrap();
        let ay = model.multiply(&x6, &y).unwrap();
        let mut w = xc;
        w.add_assign(&ay.scaled(&rat_int(-1)));
        let class = h.class_of(&model, &w).unwrap();
        assert_eq!(class, res.rep_class);
    }

    #[test]
    fn massey_shift_moves_class_within_indeterminacy() {
        // <a, ab, b> in the Heisenberg model has full indeterminacy in H^3;
        // shifting the primitive x by a degree-2 cocycle moves the
        // representative by an element of the indeterminacy subspace.
        let ext = catalog::heisenberg_model(1);
        let alg = &ext.dga;
        let a = alg.element_by_label("a1").unwrap();
        let b = alg.element_by_label("b1").unwrap();
        let ab = alg.multiply(&a, &b).unwrap();
        let res = massey_triple(alg, &a, &ab, &b).unwrap();
        assert_eq!(res.degree, 3);
        assert!(!res.indeterminacy.is_empty());
        assert!(res.vanishes, "full indeterminacy absorbs the class");

        let h = cohomology(alg, 3).unwrap();
        let ind = Mat::from_cols(h.betti[3], &res.indeterminacy);
        for idx in 0..h.betti[2] {
            let z = h.rep_element(2, idx); // cocycle shift of x
            let shift = alg.multiply(&z, &b).unwrap(); // w changes by z·b
            let mut w2 = res.representative.clone();
            w2.add_assign(&shift);
            let c2 = h.class_of(alg, &w2).unwrap();
            let diff: Vec<Rat> = c2
                .iter()
                .zip(&res.rep_class)
                .map(|(x, y)| x - y)
                .collect();
            assert!(
                ind.solve(&diff).is_some(),
                "shifted class escaped the indeterminacy subspace"
            );
        }
    }

    #[test]
    fn class_product_independent_of_representative_choice() {
        let ext = catalog::heisenberg_model(1);
        let h = cohomology(&ext.dga, 3).unwrap();
        // perturb degree-2 representatives by coboundaries and recompute a
        // product against degree 1; classes must agree
        let mut perturbed = h.clone();
        for rep in &mut perturbed.reps[2] {
            for b in &h.coboundaries[2] {
                for (r, v) in rep.iter_mut().zip(b) {
                    *r += v * rat_int(3);
                }
            }
        }
        for i in 0..h.betti[1] {
            for j in 0..h.betti[1] {
                let mut ci = vec![Rat::zero(); h.betti[1]];
                ci[i] = Rat::one();
                let mut cj = vec![Rat::zero(); h.betti[1]];
                cj[j] = Rat::one();
                let p1 = h.class_product(&ext.dga, 1, &ci, 1, &cj).unwrap();
                let p2 = perturbed.class_product(&ext.dga, 1, &ci, 1, &cj).unwrap();
                assert_eq!(p1, p2);
            }
        }
    }
}
