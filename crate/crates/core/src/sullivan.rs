//! Free graded-commutative presentations and their realization as tables.
//!
//! A [`SullivanModel`] lists generators with positive degrees and a
//! differential expression per generator. [`realize`](SullivanModel::realize)
//! enumerates the monomial basis in each degree up to the cap (exterior
//! exponents at most one, polynomial exponents unbounded within the cap),
//! extends the differential as a degree +1 derivation, and returns a fully
//! validated [`TableDga`].
//!
//! Basis order is deterministic: generators sorted by name, monomials of a
//! fixed degree sorted lexicographically by exponent vector.

use crate::dga::{build_mult_table, Element, SparseVec, TableDga};
use crate::error::{DgaError, Result};
use crate::expr::Expr;
use crate::matrix::Mat;
use crate::rational::{rat_int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SullivanModel {
    pub name: String,
    pub cap: usize,
    /// `(name, degree)` pairs, degree >= 1.
    pub generators: Vec<(String, usize)>,
    /// Differential expressions; generators absent from the map are closed.
    pub diff_exprs: BTreeMap<String, Expr>,
}

type Monomial = Vec<u32>;

fn monomial_label(gens: &[(String, usize)], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(gens[k].0.clone());
        } else {
            parts.push(format!("{}^{}", gens[k].0, e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// All admissible exponent vectors of total degree exactly `target`.
fn enumerate_monomials(gens: &[(String, usize)], target: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; gens.len()];
    fn rec(
        gens: &[(String, usize)],
        k: usize,
        remaining: usize,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if k == gens.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let deg = gens[k].1;
        let max_exp = if deg % 2 == 1 { 1 } else { remaining / deg };
        for e in 0..=max_exp as u32 {
            let used = deg * e as usize;
            if used > remaining {
                break;
            }
            current[k] = e;
            rec(gens, k + 1, remaining - used, current, out);
        }
        current[k] = 0;
    }
    rec(gens, 0, target, &mut current, &mut out);
    out.sort();
    out
}

/// Koszul sign of merging two monomials in the fixed generator order:
/// each odd factor of `y` moves past every odd factor of `x` that sits at
/// a strictly later generator index.
fn koszul_sign(gens: &[(String, usize)], x: &Monomial, y: &Monomial) -> Rat {
    let mut transpositions = 0u64;
    for (i, &yi) in y.iter().enumerate() {
        if yi == 0 || gens[i].1 % 2 == 0 {
            continue;
        }
        for (j, &xj) in x.iter().enumerate().skip(i + 1) {
            if xj > 0 && gens[j].1 % 2 == 1 {
                transpositions += (yi as u64) * (xj as u64);
            }
        }
    }
    if transpositions % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

impl SullivanModel {
    /// Realizes the free graded-commutative algebra with the prescribed
    /// differential as a table up to the cap.
    pub fn realize(&self) -> Result<TableDga> {
        let mut gens = self.generators.clone();
        gens.sort_by(|a, b| a.0.cmp(&b.0));
        for w in gens.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(DgaError::Invalid(format!(
                    "duplicate generator name {:?}",
                    w[0].0
                )));
            }
        }
        if let Some((n, d)) = gens.iter().find(|(_, d)| *d == 0) {
            return Err(DgaError::Invalid(format!(
                "generator {n:?} has degree {d}; degrees must be >= 1"
            )));
        }
        for name in self.diff_exprs.keys() {
            if !gens.iter().any(|(n, _)| n == name) {
                return Err(DgaError::Invalid(format!(
                    "differential given for unknown generator {name:?}"
                )));
            }
        }
        let cap = self.cap;

        // Monomial basis per degree, with an index for fast lookup.
        let mut monomials: Vec<Vec<Monomial>> = Vec::with_capacity(cap + 1);
        let mut index: BTreeMap<Monomial, (usize, usize)> = BTreeMap::new();
        for deg in 0..=cap {
            let ms = enumerate_monomials(&gens, deg);
            for (i, m) in ms.iter().enumerate() {
                index.insert(m.clone(), (deg, i));
            }
            monomials.push(ms);
        }
        let dims: Vec<usize> = monomials.iter().map(Vec::len).collect();
        let basis: Vec<Vec<String>> = monomials
            .iter()
            .map(|ms| ms.iter().map(|m| monomial_label(&gens, m)).collect())
            .collect();

        let product = |i: usize, j: usize, a: usize, b: usize| -> SparseVec {
            let x = &monomials[i][a];
            let y = &monomials[j][b];
            // odd generator squared kills the product
            for (k, (xk, yk)) in x.iter().zip(y).enumerate() {
                if gens[k].1 % 2 == 1 && xk + yk > 1 {
                    return SparseVec::new();
                }
            }
            let merged: Monomial = x.iter().zip(y).map(|(xk, yk)| xk + yk).collect();
            let sign = koszul_sign(&gens, x, y);
            let (_, idx) = index[&merged];
            vec![(idx, sign)]
        };
        let mult = build_mult_table(&dims, cap, product);

        // First build the multiplicative structure with zero differential so
        // that differential expressions can be evaluated inside it.
        let zero_diff: Vec<Mat> = (0..cap).map(|i| Mat::zeros(dims[i + 1], dims[i])).collect();
        let complete = {
            let all_odd = gens.iter().all(|(_, d)| d % 2 == 1);
            let total: usize = gens.iter().map(|(_, d)| d).sum();
            all_odd && cap >= total
        };
        let algebra = TableDga::new(
            self.name.clone(),
            cap,
            complete,
            basis.clone(),
            mult.clone(),
            zero_diff,
            None,
        )?;

        // Evaluate and degree-check the generator differentials.
        let mut d_of_gen: Vec<Option<Element>> = vec![None; gens.len()];
        for (k, (name, deg)) in gens.iter().enumerate() {
            if let Some(expr) = self.diff_exprs.get(name) {
                if expr.is_zero() || expr.terms.is_empty() {
                    continue;
                }
                let v = expr.evaluate(&algebra)?;
                if v.is_zero() {
                    continue;
                }
                if v.degree != deg + 1 {
                    return Err(DgaError::DegreeMismatch(format!(
                        "d({name}) has degree {}, expected {}",
                        v.degree,
                        deg + 1
                    )));
                }
                d_of_gen[k] = Some(v);
            }
        }

        // Extend as a derivation: d(m) = Σ_k (-1)^{|prefix|} e_k · L_k · d(g_k) · R_k.
        let mut diff: Vec<Mat> = (0..cap).map(|i| Mat::zeros(dims[i + 1], dims[i])).collect();
        for deg in 0..cap {
            for (a, m) in monomials[deg].iter().enumerate() {
                let mut total = Element::zero(deg + 1, dims[deg + 1]);
                let mut prefix_degree = 0usize;
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        if let Some(dg) = &d_of_gen[k] {
                            let mut left = m.clone();
                            left[k] -= 1;
                            for item in left.iter_mut().skip(k + 1) {
                                *item = 0;
                            }
                            let mut right = vec![0u32; gens.len()];
                            right[(k + 1)..].copy_from_slice(&m[(k + 1)..]);

                            let (ldeg, lidx) = index[&left];
                            let lelem = algebra.basis_element(ldeg, lidx);
                            let (rdeg, ridx) = index[&right];
                            let relem = algebra.basis_element(rdeg, ridx);

                            let mut term = algebra.multiply(&lelem, dg)?;
                            term = algebra.multiply(&term, &relem)?;
                            let mut c = rat_int(e as i64);
                            if prefix_degree % 2 == 1 {
                                c = -c;
                            }
                            total.add_assign(&term.scaled(&c));
                        }
                    }
                    prefix_degree += gens[k].1 * e as usize;
                }
                for (r, v) in total.coords.iter().enumerate() {
                    if !v.is_zero() {
                        diff[deg].set(r, a, v.clone());
                    }
                }
            }
        }

        TableDga::new(self.name.clone(), cap, complete, basis, mult, diff, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn free_model(name: &str, gens: &[(&str, usize)], cap: usize) -> SullivanModel {
        SullivanModel {
            name: name.into(),
            cap,
            generators: gens.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
            diff_exprs: BTreeMap::new(),
        }
    }

    /// Independent dimension oracle: coefficient of t^deg in the product of
    /// (1 + t^d) over odd generators and 1/(1 - t^d) over even ones.
    fn dims_by_generating_function(gens: &[(&str, usize)], cap: usize) -> Vec<usize> {
        let mut coeffs = vec![0usize; cap + 1];
        coeffs[0] = 1;
        for (_, d) in gens {
            let mut next = vec![0usize; cap + 1];
            if d % 2 == 1 {
                for (k, &c) in coeffs.iter().enumerate() {
                    next[k] += c;
                    if k + d <= cap {
                        next[k + d] += c;
                    }
                }
            } else {
                // 1/(1-t^d): convolve with all powers
                for (k, &c) in coeffs.iter().enumerate() {
                    let mut off = 0;
                    while k + off <= cap {
                        next[k + off] += c;
                        off += d;
                    }
                }
            }
            coeffs = next;
        }
        coeffs
    }

    #[test]
    fn free_even_generators_dims_match_enumeration_oracle() {
        let gens = [("x6", 6usize), ("x10", 10usize)];
        let model = free_model("free", &gens, 22);
        let a = model.realize().unwrap();
        let expected = dims_by_generating_function(&gens, 22);
        assert_eq!(a.dims(), expected);
        // frozen values: dimension 1 exactly at 0, 6, 10, 12, 16, 18, 20, 22
        let ones = [0usize, 6, 10, 12, 16, 18, 20, 22];
        for k in 0..=22 {
            assert_eq!(a.dim(k), usize::from(ones.contains(&k)), "degree {k}");
        }
    }

    #[test]
    fn single_odd_generator() {
        let model = free_model("circle", &[("t", 1)], 3);
        let a = model.realize().unwrap();
        assert_eq!(a.dims(), vec![1, 1, 0, 0]);
        assert!(a.is_complete());
    }

    #[test]
    fn odd_generators_anticommute() {
        let model = free_model("lambda", &[("a", 1), ("b", 1)], 2);
        let a = model.realize().unwrap();
        assert_eq!(a.dims(), vec![1, 2, 1]);
        let x = a.element_by_label("a").unwrap();
        let y = a.element_by_label("b").unwrap();
        let xy = a.multiply(&x, &y).unwrap();
        let yx = a.multiply(&y, &x).unwrap();
        assert_eq!(xy.coords[0], -yx.coords[0].clone());
        assert!(a.multiply(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn derivation_extends_differential() {
        // Λ(a, b, t) with dt = ab: the 3-dimensional Heisenberg model.
        let mut diff_exprs = BTreeMap::new();
        diff_exprs.insert("t".to_string(), parse_expr("a*b").unwrap());
        let model = SullivanModel {
            name: "heis1".into(),
            cap: 3,
            generators: vec![
                ("a".to_string(), 1),
                ("b".to_string(), 1),
                ("t".to_string(), 1),
            ],
            diff_exprs,
        };
        let a = model.realize().unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
        let t = a.element_by_label("t").unwrap();
        let dt = a.apply_d(&t).unwrap();
        assert_eq!(a.format_element(&dt), "a*b");
        // d(a*t) = -a*(ab) = 0... actually d(a*t) = da·t - a·dt = -a·ab = 0
        let at = a.element_by_label("a*t").unwrap();
        assert!(a.apply_d(&at).unwrap().is_zero());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let mut diff_exprs = BTreeMap::new();
        diff_exprs.insert("t".to_string(), parse_expr("a").unwrap());
        let model = SullivanModel {
            name: "bad".into(),
            cap: 3,
            generators: vec![("a".to_string(), 1), ("t".to_string(), 1)],
            diff_exprs,
        };
        assert!(matches!(
            model.realize(),
            Err(DgaError::DegreeMismatch(_))
        ));
    }

    #[test]
    fn realized_tables_always_validate() {
        // mixed parities, nontrivial differential
        let mut diff_exprs = BTreeMap::new();
        diff_exprs.insert("t11".to_string(), parse_expr("x6^2").unwrap());
        let model = SullivanModel {
            name: "mixed".into(),
            cap: 18,
            generators: vec![("x6".to_string(), 6), ("t11".to_string(), 11)],
            diff_exprs,
        };
        let a = model.realize().unwrap();
        // d in degree 11 sends t11 to x6^2
        let t = a.element_by_label("t11").unwrap();
        let dt = a.apply_d(&t).unwrap();
        assert_eq!(a.format_element(&dt), "x6^2");
    }
}
