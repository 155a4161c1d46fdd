//! Free Lie algebras on ordered generators, coordinatized by Lyndon bases.
//!
//! Elements are carried concretely inside the tensor algebra: a homogeneous
//! Lie element of degree `k` is a sparse vector over words of length `k`.
//! The standard bracketing of each Lyndon word gives a basis of the free
//! Lie algebra in that degree, and conversion back to Lyndon coordinates is
//! a linear solve against the expansion matrix.

use crate::error::{DgaError, Result};
use crate::matrix::Mat;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Word = Vec<u8>;
/// Sparse tensor-algebra element, homogeneous of one word length.
pub type Tensor = BTreeMap<Word, Rat>;

pub fn tensor_add(a: &mut Tensor, b: &Tensor, scale: &Rat) {
    for (w, c) in b {
        let entry = a.entry(w.clone()).or_insert_with(Rat::zero);
        *entry += c * scale;
        if entry.is_zero() {
            a.remove(w);
        }
    }
}

/// Concatenation product of homogeneous tensors.
pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let entry = out.entry(w).or_insert_with(Rat::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `[a, b] = ab - ba` in the tensor algebra.
pub fn bracket(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = tensor_mul(a, b);
    let ba = tensor_mul(b, a);
    tensor_add(&mut out, &ba, &-Rat::one());
    out
}

pub fn generator_tensor(g: u8) -> Tensor {
    let mut t = Tensor::new();
    t.insert(vec![g], Rat::one());
    t
}

/// All Lyndon words of length exactly `k` over `0..n`, lexicographically
/// ordered (Duval's generation).
pub fn lyndon_words(n: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Word = vec![0];
    loop {
        if w.len() == k {
            out.push(w.clone());
        }
        // extend periodically to length k
        let len = w.len();
        while w.len() < k {
            let c = w[w.len() - len];
            w.push(c);
        }
        // increment from the right
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if w.is_empty() {
            break;
        }
        *w.last_mut().unwrap() += 1;
    }
    out.sort();
    out
}

/// Standard factorization of a Lyndon word: `w = uv` with `v` the longest
/// proper suffix that is itself Lyndon.
fn standard_factorization(w: &[u8]) -> (Word, Word) {
    debug_assert!(w.len() >= 2);
    for start in 1..w.len() {
        if is_lyndon(&w[start..]) {
            return (w[..start].to_vec(), w[start..].to_vec());
        }
    }
    unreachable!("every Lyndon word of length >= 2 has a standard factorization");
}

fn is_lyndon(w: &[u8]) -> bool {
    for start in 1..w.len() {
        if &w[start..] <= w {
            return false;
        }
    }
    !w.is_empty()
}

/// The free Lie algebra on `names.len()` generators with Lyndon bases and
/// their tensor expansions cached per degree up to `max_degree`.
#[derive(Debug, Clone)]
pub struct FreeLie {
    pub names: Vec<String>,
    pub max_degree: usize,
    pub lyndon: Vec<Vec<Word>>,
    expansions: Vec<Vec<Tensor>>,
}

impl FreeLie {
    pub fn new(names: Vec<String>, max_degree: usize) -> FreeLie {
        let n = names.len();
        let mut lyndon = vec![Vec::new()];
        let mut expansions = vec![Vec::new()];
        let mut cache: BTreeMap<Word, Tensor> = BTreeMap::new();
        for k in 1..=max_degree {
            let words = lyndon_words(n, k);
            let exps: Vec<Tensor> = words
                .iter()
                .map(|w| Self::expand_word(w, &mut cache))
                .collect();
            lyndon.push(words);
            expansions.push(exps);
        }
        FreeLie {
            names,
            max_degree,
            lyndon,
            expansions,
        }
    }

    fn expand_word(w: &[u8], cache: &mut BTreeMap<Word, Tensor>) -> Tensor {
        if let Some(t) = cache.get(w) {
            return t.clone();
        }
        let t = if w.len() == 1 {
            generator_tensor(w[0])
        } else {
            let (u, v) = standard_factorization(w);
            let tu = Self::expand_word(&u, cache);
            let tv = Self::expand_word(&v, cache);
            bracket(&tu, &tv)
        };
        cache.insert(w.to_vec(), t.clone());
        t
    }

    pub fn n_gens(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.lyndon[degree].len()
    }

    /// Lyndon coordinates → tensor representation.
    pub fn tensor_from_coords(&self, degree: usize, coords: &[Rat]) -> Tensor {
        let mut out = Tensor::new();
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                tensor_add(&mut out, &self.expansions[degree][i], c);
            }
        }
        out
    }

    /// Tensor representation → Lyndon coordinates; errors when the tensor
    /// is not a Lie element of this degree.
    pub fn coords_from_tensor(&self, degree: usize, t: &Tensor) -> Result<Vec<Rat>> {
        if t.is_empty() {
            return Ok(vec![Rat::zero(); self.dim(degree)]);
        }
        // collect all words that appear in the expansions or the target
        let mut words: std::collections::BTreeSet<Word> = t.keys().cloned().collect();
        for e in &self.expansions[degree] {
            words.extend(e.keys().cloned());
        }
        let words: Vec<Word> = words.into_iter().collect();
        let word_index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut mat = Mat::zeros(words.len(), self.dim(degree));
        for (col, e) in self.expansions[degree].iter().enumerate() {
            for (w, c) in e {
                mat.set(word_index[w], col, c.clone());
            }
        }
        let mut rhs = vec![Rat::zero(); words.len()];
        for (w, c) in t {
            if w.len() != degree {
                return Err(DgaError::ShapeMismatch(format!(
                    "tensor mixes word lengths {} and {degree}",
                    w.len()
                )));
            }
            rhs[word_index[w]] = c.clone();
        }
        mat.solve(&rhs).ok_or_else(|| {
            DgaError::Invalid("tensor is not a Lie element (no Lyndon coordinates)".into())
        })
    }

    /// Dimension of the degree-`k` piece of an ideal: the span of all
    /// iterated generator brackets applied to the relators.
    pub fn ideal_rank(&self, relators: &[(usize, Tensor)], k: usize) -> usize {
        let mut vectors: Vec<Tensor> = Vec::new();
        for (deg, t) in relators {
            if *deg > k || t.is_empty() {
                continue;
            }
            let free_slots = k - deg;
            // all words of generators of length free_slots, applied as
            // ad_{g_1} ad_{g_2} ... (r)
            let mut stack: Vec<Tensor> = vec![t.clone()];
            for _ in 0..free_slots {
                let mut next = Vec::new();
                for s in &stack {
                    for g in 0..self.n_gens() as u8 {
                        next.push(bracket(&generator_tensor(g), s));
                    }
                }
                stack = next;
            }
            vectors.extend(stack.into_iter().filter(|t| !t.is_empty()));
        }
        rank_of_tensors(&vectors)
    }
}

/// Rank of a family of homogeneous tensors, via sparse elimination keyed by
/// the lexicographically smallest word.
pub fn rank_of_tensors(vectors: &[Tensor]) -> usize {
    let mut reduced: Vec<Tensor> = Vec::new();
    for v in vectors {
        let mut cur = v.clone();
        loop {
            let Some((lead, _)) = cur.iter().next() else {
                break;
            };
            let lead = lead.clone();
            let Some(other) = reduced.iter().find(|r| r.keys().next() == Some(&lead)) else {
                break;
            };
            let factor = {
                let c = cur.get(&lead).unwrap().clone();
                let p = other.get(&lead).unwrap().clone();
                -(c / p)
            };
            tensor_add(&mut cur, other, &factor);
        }
        if !cur.is_empty() {
            reduced.push(cur);
            reduced.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
        }
    }
    reduced.len()
}

/// Number of Lyndon words of length `k` over `n` letters (Witt's formula),
/// used as an independent oracle in tests: (1/k) Σ_{d|k} μ(d) n^{k/d}.
pub fn witt_dimension(n: usize, k: usize) -> usize {
    fn mobius(mut m: usize) -> i64 {
        let mut mu = 1i64;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if m > 1 {
            mu = -mu;
        }
        mu
    }
    let mut total = 0i64;
    for d in 1..=k {
        if k % d == 0 {
            total += mobius(d) * (n as i64).pow((k / d) as u32);
        }
    }
    (total / k as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use proptest::prelude::*;

    #[test]
    fn lyndon_counts_match_witt() {
        for n in 1..=3usize {
            for k in 1..=6usize {
                assert_eq!(
                    lyndon_words(n, k).len(),
                    witt_dimension(n, k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn expansions_are_a_basis() {
        let fl = FreeLie::new(vec!["a".into(), "b".into()], 5);
        for k in 1..=5usize {
            // round-trip arbitrary coordinates through the tensor algebra
            let dim = fl.dim(k);
            let coords: Vec<Rat> = (0..dim).map(|i| rat_int(i as i64 + 1)).collect();
            let t = fl.tensor_from_coords(k, &coords);
            let back = fl.coords_from_tensor(k, &t).unwrap();
            assert_eq!(back, coords);
        }
    }

    #[test]
    fn degree_two_words_are_commutators() {
        let fl = FreeLie::new(vec!["a".into(), "b".into(), "c".into()], 2);
        assert_eq!(fl.lyndon[2], vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_axioms_hold(
            seed_a in prop::collection::vec(-4i64..=4, 2),
            seed_b in prop::collection::vec(-4i64..=4, 2),
            seed_c in prop::collection::vec(-4i64..=4, 2),
        ) {
            // random degree-1 elements over two generators
            let emb = |v: &[i64]| {
                let mut t = Tensor::new();
                for (g, &c) in v.iter().enumerate() {
                    if c != 0 {
                        t.insert(vec![g as u8], rat_int(c));
                    }
                }
                t
            };
            let a = emb(&seed_a);
            let b = emb(&seed_b);
            let c = emb(&seed_c);
            // antisymmetry
            let mut anti = bracket(&a, &b);
            tensor_add(&mut anti, &bracket(&b, &a), &Rat::one());
            prop_assert!(anti.is_empty());
            // Jacobi
            let mut jac = bracket(&a, &bracket(&b, &c));
            tensor_add(&mut jac, &bracket(&b, &bracket(&c, &a)), &Rat::one());
            tensor_add(&mut jac, &bracket(&c, &bracket(&a, &b)), &Rat::one());
            prop_assert!(jac.is_empty());
        }
    }
}
