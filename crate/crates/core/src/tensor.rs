//! Tensor product of two tables, with the usual sign rule
//! `(x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'` and differential
//! `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`.

use crate::dga::{build_mult_table, SparseVec, TableDga};
use crate::error::Result;
use crate::matrix::Mat;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub fn tensor_product(a: &TableDga, b: &TableDga, name: impl Into<String>) -> Result<TableDga> {
    let complete = a.is_complete() && b.is_complete();
    let cap = if complete {
        a.cap() + b.cap()
    } else {
        a.cap().min(b.cap())
    };

    // layout: per degree, pairs (a-degree, a-index, b-index)
    let mut layout: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); cap + 1];
    for i in 0..=a.cap().min(cap) {
        for j in 0..=(cap - i).min(b.cap()) {
            for x in 0..a.dim(i) {
                for y in 0..b.dim(j) {
                    layout[i + j].push((i, x, y));
                }
            }
        }
    }
    for items in &mut layout {
        items.sort();
    }
    let mut index: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    for (deg, items) in layout.iter().enumerate() {
        for (pos, &(i, x, y)) in items.iter().enumerate() {
            index.insert((deg, i, x, y), pos);
        }
    }
    let basis: Vec<Vec<String>> = layout
        .iter()
        .enumerate()
        .map(|(deg, items)| {
            items
                .iter()
                .map(|&(i, x, y)| {
                    format!("{}⊗{}", a.labels(i)[x], b.labels(deg - i)[y])
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = layout.iter().map(Vec::len).collect();

    let product = |p: usize, q: usize, s: usize, t: usize| -> SparseVec {
        let (i1, x1, y1) = layout[p][s];
        let (i2, x2, y2) = layout[q][t];
        let j1 = p - i1;
        let j2 = q - i2;
        let sign = if (j1 * i2) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        let mut out = SparseVec::new();
        for (xk, xc) in a.mult_basis(i1, i2, x1, x2) {
            for (yk, yc) in b.mult_basis(j1, j2, y1, y2) {
                if let Some(&pos) = index.get(&(p + q, i1 + i2, xk, yk)) {
                    out.push((pos, &sign * &xc * &yc));
                }
            }
        }
        out
    };
    let mult = build_mult_table(&dims, cap, product);

    let mut diff: Vec<Mat> = (0..cap).map(|d| Mat::zeros(dims[d + 1], dims[d])).collect();
    for (deg, items) in layout.iter().enumerate() {
        if deg >= cap {
            continue;
        }
        for (col, &(i, x, y)) in items.iter().enumerate() {
            let j = deg - i;
            // dx ⊗ y
            if i < a.cap() || a.is_complete() {
                for (r, c) in a.d_matrix(i).col(x).into_iter().enumerate() {
                    if !c.is_zero() {
                        if let Some(&pos) = index.get(&(deg + 1, i + 1, r, y)) {
                            let cur = diff[deg].at(pos, col).clone();
                            diff[deg].set(pos, col, cur + c);
                        }
                    }
                }
            }
            // (-1)^i x ⊗ dy
            if j < b.cap() || b.is_complete() {
                let sign = if i % 2 == 1 { -Rat::one() } else { Rat::one() };
                for (r, c) in b.d_matrix(j).col(y).into_iter().enumerate() {
                    if !c.is_zero() {
                        if let Some(&pos) = index.get(&(deg + 1, i, x, r)) {
                            let cur = diff[deg].at(pos, col).clone();
                            diff[deg].set(pos, col, cur + c * &sign);
                        }
                    }
                }
            }
        }
    }

    let weights = match (a.weights(), b.weights()) {
        (Some(wa), Some(wb)) => {
            let mut out = Vec::with_capacity(cap + 1);
            for (deg, items) in layout.iter().enumerate() {
                out.push(
                    items
                        .iter()
                        .map(|&(i, x, y)| wa[i][x] + wb[deg - i][y])
                        .collect(),
                );
            }
            Some(out)
        }
        _ => None,
    };

    TableDga::new(name, cap, complete, basis, mult, diff, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cohomology::cohomology;

    #[test]
    fn torus_as_product_of_circles() {
        let c = catalog::circle_algebra();
        let t = tensor_product(&c, &c, "S1 x S1").unwrap();
        assert_eq!(t.dims(), vec![1, 2, 1]);
        let h = cohomology(&t, 2).unwrap();
        assert_eq!(h.betti, vec![1, 2, 1]);
    }

    #[test]
    fn kunneth_for_surface_times_circle() {
        let s = catalog::surface_algebra(2);
        let c = catalog::circle_algebra();
        let t = tensor_product(&s, &c, "Sigma2 x S1").unwrap();
        let h = cohomology(&t, 3).unwrap();
        assert_eq!(h.betti, vec![1, 5, 5, 1]);
    }
}
