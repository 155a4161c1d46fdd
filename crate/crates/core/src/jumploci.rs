//! Flat connections valued in small matrix Lie algebras, their covariant
//! derivative complexes, and resonance membership.
//!
//! A connection is an element of `A¹ ⊗ g` stored as a coefficient matrix
//! against the chosen bases. Flatness is the Maurer–Cartan equation
//! checked exactly; a flat connection twists `A ⊗ V` by
//! `d_ω(α ⊗ v) = dα ⊗ v + Σ η_i α ⊗ θ(g_i) v`, and resonance in degree
//! `i` and depth `s` is the rank condition `dim H^i(A ⊗ V, d_ω) ≥ s`.

use crate::dga::{Element, TableDga};
use crate::error::{DgaError, Result};
use crate::hirsch::HirschExtension;
use crate::matrix::Mat;
use crate::pd::{pairing_matrix, PdCertificate};
use crate::rational::{rat_int, Rat};
use crate::sample::Sampler;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieKind {
    Abelian1,
    Borel2,
    Sl2,
    Gl2,
}

impl LieKind {
    pub fn parse(s: &str) -> Result<LieKind> {
        match s {
            "abelian1" | "rank1" => Ok(LieKind::Abelian1),
            "borel2" => Ok(LieKind::Borel2),
            "sl2" => Ok(LieKind::Sl2),
            "gl2" => Ok(LieKind::Gl2),
            other => Err(DgaError::Parse(format!(
                "unknown Lie algebra {other:?}; expected abelian1, borel2, sl2 or gl2"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LieKind::Abelian1 => "abelian1",
            LieKind::Borel2 => "borel2",
            LieKind::Sl2 => "sl2",
            LieKind::Gl2 => "gl2",
        }
    }
}

/// One of the four coefficient Lie algebras, with its defining action. The
/// bases nest as prefixes: borel2 ⊂ sl2 ⊂ gl2 share (h, e, f, id) order.
#[derive(Debug, Clone)]
pub struct SmallLie {
    pub kind: LieKind,
    pub dim: usize,
    pub rep_dim: usize,
    pub basis: Vec<Mat>,
    /// `brackets[i][j]` = coordinates of `[g_i, g_j]`.
    brackets: Vec<Vec<Vec<Rat>>>,
}

fn mat2(a: i64, b: i64, c: i64, d: i64) -> Mat {
    let mut m = Mat::zeros(2, 2);
    m.set(0, 0, rat_int(a));
    m.set(0, 1, rat_int(b));
    m.set(1, 0, rat_int(c));
    m.set(1, 1, rat_int(d));
    m
}

impl SmallLie {
    pub fn new(kind: LieKind) -> SmallLie {
        let basis: Vec<Mat> = match kind {
            LieKind::Abelian1 => {
                let mut m = Mat::zeros(1, 1);
                m.set(0, 0, rat_int(1));
                vec![m]
            }
            LieKind::Borel2 => vec![mat2(1, 0, 0, -1), mat2(0, 1, 0, 0)],
            LieKind::Sl2 => vec![mat2(1, 0, 0, -1), mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)],
            LieKind::Gl2 => vec![
                mat2(1, 0, 0, -1),
                mat2(0, 1, 0, 0),
                mat2(0, 0, 1, 0),
                mat2(1, 0, 0, 1),
            ],
        };
        let dim = basis.len();
        let rep_dim = basis[0].rows();
        // flatten basis matrices into columns to solve for bracket coords
        let flat: Vec<Vec<Rat>> = basis
            .iter()
            .map(|m| {
                let mut v = Vec::new();
                for r in 0..rep_dim {
                    for c in 0..rep_dim {
                        v.push(m.at(r, c).clone());
                    }
                }
                v
            })
            .collect();
        let solver = Mat::from_cols(rep_dim * rep_dim, &flat);
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = {
                    let ab = basis[i].mul(&basis[j]);
                    let ba = basis[j].mul(&basis[i]);
                    let mut v = Vec::new();
                    for r in 0..rep_dim {
                        for c in 0..rep_dim {
                            v.push(ab.at(r, c).clone() - ba.at(r, c).clone());
                        }
                    }
                    v
                };
                brackets[i][j] = solver
                    .solve(&comm)
                    .expect("commutator stays inside the algebra");
            }
        }
        let lie = SmallLie {
            kind,
            dim,
            rep_dim,
            basis,
            brackets,
        };
        debug_assert!(lie.axioms_hold());
        lie
    }

    fn axioms_hold(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let anti: Vec<Rat> = self.brackets[i][j]
                    .iter()
                    .zip(&self.brackets[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if anti.iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        // Jacobi on basis triples
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let mut total = vec![Rat::zero(); self.dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.brackets[b][c];
                        for (m, cm) in inner.iter().enumerate() {
                            if cm.is_zero() {
                                continue;
                            }
                            for (n, cn) in self.brackets[a][m].iter().enumerate() {
                                total[n] += cm * cn;
                            }
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[x, y]` on coordinate vectors.
    pub fn bracket_coords(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ci) in x.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in y.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for (k, ck) in self.brackets[i][j].iter().enumerate() {
                    out[k] += ci * cj * ck;
                }
            }
        }
        out
    }

    /// The acting matrix `θ(Σ x_k g_k)`.
    pub fn theta(&self, x: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.rep_dim, self.rep_dim);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.rep_dim {
                for s in 0..self.rep_dim {
                    let cur = m.at(r, s).clone();
                    m.set(r, s, cur + c * self.basis[k].at(r, s));
                }
            }
        }
        m
    }

    pub fn det_theta(&self, x: &[Rat]) -> Rat {
        let m = self.theta(x);
        match self.rep_dim {
            1 => m.at(0, 0).clone(),
            2 => m.at(0, 0).clone() * m.at(1, 1) - m.at(0, 1).clone() * m.at(1, 0),
            _ => unreachable!("representations here are 1- or 2-dimensional"),
        }
    }

    /// Coordinates of the transposed matrix, inside the smallest of our
    /// algebras containing all transposes (sl2 for borel2, otherwise the
    /// same algebra).
    pub fn transpose_kind(&self) -> LieKind {
        match self.kind {
            LieKind::Abelian1 => LieKind::Abelian1,
            LieKind::Borel2 | LieKind::Sl2 => LieKind::Sl2,
            LieKind::Gl2 => LieKind::Gl2,
        }
    }

    pub fn transpose_coords(&self, x: &[Rat]) -> Vec<Rat> {
        // bases are (h, e, f[, id]); transposition fixes h and id and swaps
        // e with f
        match self.kind {
            LieKind::Abelian1 => vec![x[0].clone()],
            LieKind::Borel2 => vec![x[0].clone(), Rat::zero(), x[1].clone()],
            LieKind::Sl2 => vec![x[0].clone(), x[2].clone(), x[1].clone()],
            LieKind::Gl2 => vec![x[0].clone(), x[2].clone(), x[1].clone(), x[3].clone()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlatConnection {
    pub algebra: String,
    pub lie: SmallLie,
    /// `dim A¹ × dim g`; row `i` is the Lie coefficient of the `i`-th
    /// degree-one basis element.
    pub coeffs: Mat,
}

impl FlatConnection {
    pub fn new(a: &TableDga, kind: LieKind, coeffs: Mat) -> Result<FlatConnection> {
        let lie = SmallLie::new(kind);
        if coeffs.rows() != a.dim(1) || coeffs.cols() != lie.dim {
            return Err(DgaError::ShapeMismatch(format!(
                "coefficient matrix is {}x{}, expected {}x{}",
                coeffs.rows(),
                coeffs.cols(),
                a.dim(1),
                lie.dim
            )));
        }
        Ok(FlatConnection {
            algebra: a.name.clone(),
            lie,
            coeffs,
        })
    }

    pub fn zero(a: &TableDga, kind: LieKind) -> FlatConnection {
        let lie = SmallLie::new(kind);
        FlatConnection {
            algebra: a.name.clone(),
            lie: lie.clone(),
            coeffs: Mat::zeros(a.dim(1), lie.dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Rank-one factorization `ω = η ⊗ g`, when the coefficient matrix has
    /// rank ≤ 1 and is nonzero.
    pub fn rank_one_factor(&self) -> Option<(Vec<Rat>, Vec<Rat>)> {
        if self.coeffs.rank() != 1 {
            return None;
        }
        let g_row = (0..self.coeffs.rows())
            .map(|r| self.coeffs.row(r))
            .find(|row| row.iter().any(|c| !c.is_zero()))
            .expect("rank-one matrix has a nonzero row");
        let pivot = g_row.iter().position(|c| !c.is_zero()).unwrap();
        let eta: Vec<Rat> = (0..self.coeffs.rows())
            .map(|r| self.coeffs.at(r, pivot).clone() / &g_row[pivot])
            .collect();
        Some((eta, g_row))
    }
}

/// The Maurer–Cartan defect `Σ dη_i ⊗ g_i + Σ_{i<j} η_i η_j ⊗ [g_i, g_j]`
/// as a `dim A² × dim g` matrix.
pub fn flatness_defect(a: &TableDga, omega: &FlatConnection) -> Result<Mat> {
    if omega.coeffs.rows() != a.dim(1) {
        return Err(DgaError::ShapeMismatch(
            "connection does not match the algebra's degree one".into(),
        ));
    }
    a.check_trusted(1)?;
    let n1 = a.dim(1);
    let n2 = a.dim(2);
    let d1 = a.d_matrix(1);
    let mut defect = Mat::zeros(n2, omega.lie.dim);
    for i in 0..n1 {
        let gi = omega.coeffs.row(i);
        for k in 0..n2 {
            let dk = d1.at(k, i);
            if dk.is_zero() {
                continue;
            }
            for (c, v) in gi.iter().enumerate() {
                if !v.is_zero() {
                    let cur = defect.at(k, c).clone();
                    defect.set(k, c, cur + dk * v);
                }
            }
        }
    }
    for i in 0..n1 {
        for j in i + 1..n1 {
            let prod = a.mult_basis(1, 1, i, j);
            if prod.is_empty() {
                continue;
            }
            let br = omega
                .lie
                .bracket_coords(&omega.coeffs.row(i), &omega.coeffs.row(j));
            if br.iter().all(Rat::is_zero) {
                continue;
            }
            for (k, c) in &prod {
                for (g, v) in br.iter().enumerate() {
                    if !v.is_zero() {
                        let cur = defect.at(*k, g).clone();
                        defect.set(*k, g, cur + c * v);
                    }
                }
            }
        }
    }
    Ok(defect)
}

pub fn is_flat(a: &TableDga, omega: &FlatConnection) -> Result<bool> {
    Ok(flatness_defect(a, omega)?.is_zero())
}

/// Matrices of the covariant derivative on `A ⊗ V` in degrees `0..=upto`.
/// The basis of `A^p ⊗ V` is `(basis index) × (V index)`, flattened as
/// `x * dim V + m`.
pub fn covariant_complex(a: &TableDga, omega: &FlatConnection, upto: usize) -> Result<Vec<Mat>> {
    if !is_flat(a, omega)? {
        return Err(DgaError::NotFlat);
    }
    a.check_trusted(upto)?;
    let v = omega.lie.rep_dim;
    let thetas: Vec<Mat> = (0..a.dim(1))
        .map(|i| omega.lie.theta(&omega.coeffs.row(i)))
        .collect();
    let mut out = Vec::with_capacity(upto + 1);
    for p in 0..=upto {
        let rows = a.dim(p + 1) * v;
        let cols = a.dim(p) * v;
        let mut m = Mat::zeros(rows, cols);
        let d = a.d_matrix(p);
        for x in 0..a.dim(p) {
            for vm in 0..v {
                let col = x * v + vm;
                // dα ⊗ v
                for y in 0..a.dim(p + 1) {
                    let c = d.at(y, x);
                    if !c.is_zero() {
                        let row = y * v + vm;
                        let cur = m.at(row, col).clone();
                        m.set(row, col, cur + c);
                    }
                }
                // Σ η_i α ⊗ θ_i v
                for (i, theta) in thetas.iter().enumerate() {
                    for (y, c) in a.mult_basis(1, p, i, x) {
                        for r in 0..v {
                            let tv = theta.at(r, vm);
                            if !tv.is_zero() {
                                let row = y * v + r;
                                let cur = m.at(row, col).clone();
                                m.set(row, col, cur + &c * tv);
                            }
                        }
                    }
                }
            }
        }
        out.push(m);
    }
    // flatness makes the composite vanish; keep the check cheap but real
    for w in out.windows(2) {
        debug_assert!(w[1].mul(&w[0]).is_zero(), "covariant derivative squares to zero");
    }
    Ok(out)
}

/// Exact dimensions of the twisted cohomology `H^i(A ⊗ V, d_ω)` for
/// `i ≤ upto`. On complete algebras the whole complex is computed and the
/// Euler characteristic is verified against the untwisted one.
pub fn resonance_dims(a: &TableDga, omega: &FlatConnection, upto: usize) -> Result<Vec<usize>> {
    let full = if a.is_complete() { a.cap().max(upto) } else { upto };
    let mats = covariant_complex(a, omega, full)?;
    let v = omega.lie.rep_dim;
    let mut dims = Vec::with_capacity(full + 1);
    for i in 0..=full {
        let space = a.dim(i) * v;
        let z = space - mats[i].rank();
        let b = if i == 0 { 0 } else { mats[i - 1].rank() };
        dims.push(z - b);
    }
    if a.is_complete() {
        let twisted: i64 = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let untwisted: i64 = (0..=a.cap())
            .map(|i| {
                let d = (a.dim(i) * v) as i64;
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum();
        assert_eq!(
            twisted, untwisted,
            "Euler characteristic must not depend on the connection"
        );
    }
    dims.truncate(upto + 1);
    Ok(dims)
}

/// Membership report for queried `(degree, depth)` pairs.
#[derive(Debug, Clone)]
pub struct ResonanceReport {
    pub dims: Vec<usize>,
    pub memberships: Vec<(usize, usize, bool)>,
}

pub fn resonance_report(
    a: &TableDga,
    omega: &FlatConnection,
    upto: usize,
    queries: &[(usize, usize)],
) -> Result<ResonanceReport> {
    let dims = resonance_dims(a, omega, upto)?;
    let memberships = queries
        .iter()
        .map(|&(i, s)| (i, s, dims.get(i).copied().unwrap_or(0) >= s))
        .collect();
    Ok(ResonanceReport { dims, memberships })
}

/// The trivial stratum: rank ≤ 1 with a closed degree-one factor.
pub fn in_f1(a: &TableDga, omega: &FlatConnection) -> Result<bool> {
    if omega.is_zero() {
        return Ok(true);
    }
    match omega.rank_one_factor() {
        None => Ok(false),
        Some((eta, _)) => {
            let e = Element {
                degree: 1,
                coords: eta,
            };
            a.is_cocycle(&e)
        }
    }
}

/// The determinant-zero part of the trivial stratum.
pub fn in_pi(a: &TableDga, omega: &FlatConnection) -> Result<bool> {
    if omega.is_zero() {
        return Ok(true);
    }
    if !in_f1(a, omega)? {
        return Ok(false);
    }
    let (_, g) = omega.rank_one_factor().expect("nonzero rank-one connection");
    Ok(omega.lie.det_theta(&g).is_zero())
}

///`σ(η ⊗ g) = -η ⊗ gᵀ`, extended linearly. Sends flat to flat.
pub fn sigma(omega: &FlatConnection) -> FlatConnection {
    let out_kind = omega.lie.transpose_kind();
    let out_lie = SmallLie::new(out_kind);
    let mut coeffs = Mat::zeros(omega.coeffs.rows(), out_lie.dim);
    for r in 0..omega.coeffs.rows() {
        let t = omega.lie.transpose_coords(&omega.coeffs.row(r));
        for (c, v) in t.into_iter().enumerate() {
            coeffs.set(r, c, -v);
        }
    }
    FlatConnection {
        algebra: omega.algebra.clone(),
        lie: out_lie,
        coeffs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    TrivialPart,
    Pullback,
    Both,
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stratum::TrivialPart => f.write_str("F1"),
            Stratum::Pullback => f.write_str("pullback"),
            Stratum::Both => f.write_str("F1 and pullback"),
        }
    }
}

/// Classifies a flat connection on an extension with coefficients inside
/// sl2: it must lie in the trivial stratum, pull back from the base, or
/// both. Any other outcome contradicts the stratification and is reported
/// as an error.
pub fn classify_flat(ext: &HirschExtension, omega: &FlatConnection) -> Result<Stratum> {
    if omega.lie.kind == LieKind::Gl2 {
        return Err(DgaError::Invalid(
            "classification applies to subalgebras of sl2".into(),
        ));
    }
    if !is_flat(&ext.dga, omega)? {
        return Err(DgaError::NotFlat);
    }
    // split the coefficient rows into base and generator parts
    let mut base_coeffs = Mat::zeros(ext.base.dim(1), omega.lie.dim);
    let mut gen_rows_zero = true;
    for (pos, &(mask, bidx)) in ext.layout[1].iter().enumerate() {
        let row = omega.coeffs.row(pos);
        if mask == 0 {
            for (c, v) in row.into_iter().enumerate() {
                base_coeffs.set(bidx, c, v);
            }
        } else if row.iter().any(|c| !c.is_zero()) {
            gen_rows_zero = false;
        }
    }
    let pullback = gen_rows_zero && {
        let base_conn = FlatConnection {
            algebra: ext.base.name.clone(),
            lie: omega.lie.clone(),
            coeffs: base_coeffs,
        };
        is_flat(&ext.base, &base_conn)?
    };
    let trivial = in_f1(&ext.dga, omega)?;
    match (trivial, pullback) {
        (true, true) => Ok(Stratum::Both),
        (true, false) => Ok(Stratum::TrivialPart),
        (false, true) => Ok(Stratum::Pullback),
        (false, false) => Err(DgaError::StratumViolation(format!(
            "flat connection on {} lies in neither stratum",
            ext.dga.name
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct TwistedPdReport {
    pub n: usize,
    pub dims_primal: Vec<usize>,
    pub dims_dual: Vec<usize>,
    pub duality_holds: bool,
    pub sign_checks: usize,
    pub sign_checks_passed: usize,
}

/// Twisted duality on a certified duality model: the twisted cohomology of
/// `ω` in degree `i` matches that of `σ(ω)` in degree `n - i`, and the
/// duality square anticommutes with sign `(-1)^{n-i}` on sampled elements.
pub fn twisted_pd_check(
    a: &TableDga,
    cert: &PdCertificate,
    omega: &FlatConnection,
    sampler: &mut Sampler,
    sign_samples: usize,
) -> Result<TwistedPdReport> {
    if !cert.is_pd_cdga {
        return Err(DgaError::NotPd(
            cert.failure.clone().unwrap_or_else(|| "negative certificate".into()),
        ));
    }
    let n = cert.n;
    let dual = sigma(omega);
    if !is_flat(a, &dual)? {
        return Err(DgaError::NotFlat);
    }
    let dims_primal = resonance_dims(a, omega, n)?;
    let dims_dual = resonance_dims(a, &dual, n)?;
    let duality_holds = (0..=n).all(|i| dims_primal[i] == dims_dual[n - i]);

    // the duality square: PD ∘ d_{σω} = (-1)^{n-i} d_ω^* ∘ PD on A^{n-i-1} ⊗ V*
    let v = omega.lie.rep_dim;
    let primal = covariant_complex(a, omega, n.saturating_sub(1))?;
    let dual_cx = covariant_complex(a, &dual, n.saturating_sub(1))?;
    let mut passed = 0usize;
    for _ in 0..sign_samples {
        let i = sampler.index(n); // 0..n-1, so a has degree n-i-1 >= 0
        let src_deg = n - i - 1;
        if a.dim(src_deg) == 0 || a.dim(i) == 0 {
            passed += 1;
            continue;
        }
        let av = sampler.vector(a.dim(src_deg) * v);
        // image under d_{σω}: degree n-i element of A ⊗ V*
        let img = dual_cx[src_deg].apply(&av);
        let pairing_hi = pairing_matrix(a, n, n - i); // A^{n-i} ⊗ A^i -> top
        let pairing_lo = pairing_matrix(a, n, src_deg); // A^{n-i-1} ⊗ A^{i+1} -> top
        let mut ok = true;
        for b in 0..a.dim(i) {
            for u in 0..v {
                // LHS = <PD(img), b ⊗ u> = Σ_k top(img_k · b) * img_vec
                let mut lhs = Rat::zero();
                for x in 0..a.dim(n - i) {
                    for w in 0..v {
                        let c = &img[x * v + w];
                        if c.is_zero() {
                            continue;
                        }
                        if w == u {
                            lhs += c * pairing_hi.at(x, b);
                        }
                    }
                }
                // RHS = <PD(a ⊗ v*), d_ω(b ⊗ u)>
                let mut db = vec![Rat::zero(); a.dim(i + 1) * v];
                {
                    let col_mat = &primal[i];
                    for row in 0..db.len() {
                        db[row] = col_mat.at(row, b * v + u).clone();
                    }
                }
                let mut rhs = Rat::zero();
                for x in 0..a.dim(src_deg) {
                    for w in 0..v {
                        let c = &av[x * v + w];
                        if c.is_zero() {
                            continue;
                        }
                        for y in 0..a.dim(i + 1) {
                            let t = &db[y * v + w];
                            if !t.is_zero() {
                                rhs += c * t * pairing_lo.at(x, y);
                            }
                        }
                    }
                }
                let sign = if (n - i) % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                if lhs != sign * rhs {
                    ok = false;
                }
            }
        }
        if ok {
            passed += 1;
        }
    }
    Ok(TwistedPdReport {
        n,
        dims_primal,
        dims_dual,
        duality_holds,
        sign_checks: sign_samples,
        sign_checks_passed: passed,
    })
}

/// Positions of `A¹ ⊗ 1` and `1 ⊗ B¹` inside the degree one of a tensor
/// product, in the factor's own basis order.
pub fn tensor_degree_one_split(
    a: &TableDga,
    b: &TableDga,
    t: &TableDga,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let unit_a = &a.labels(0)[0];
    let unit_b = &b.labels(0)[0];
    let mut left = Vec::new();
    for l in a.labels(1) {
        let label = format!("{l}⊗{unit_b}");
        let pos = t
            .labels(1)
            .iter()
            .position(|x| x == &label)
            .ok_or_else(|| DgaError::Invalid(format!("missing tensor label {label}")))?;
        left.push(pos);
    }
    let mut right = Vec::new();
    for l in b.labels(1) {
        let label = format!("{unit_a}⊗{l}");
        let pos = t
            .labels(1)
            .iter()
            .position(|x| x == &label)
            .ok_or_else(|| DgaError::Invalid(format!("missing tensor label {label}")))?;
        right.push(pos);
    }
    Ok((left, right))
}

/// A rank-one connection from a closed degree-one element.
pub fn rank_one_connection(a: &TableDga, eta: &Element) -> Result<FlatConnection> {
    let mut coeffs = Mat::zeros(a.dim(1), 1);
    for (i, c) in eta.coords.iter().enumerate() {
        coeffs.set(i, 0, c.clone());
    }
    FlatConnection::new(a, LieKind::Abelian1, coeffs)
}

/// A random closed degree-one element (zero when there are no cocycles).
pub fn sample_closed_one_form(a: &TableDga, sampler: &mut Sampler) -> Element {
    let kernel = a.d_matrix(1).kernel_basis();
    let mut coords = vec![Rat::zero(); a.dim(1)];
    if !kernel.is_empty() {
        let weights = sampler.nonzero_vector(kernel.len());
        for (w, k) in weights.iter().zip(&kernel) {
            for (c, v) in coords.iter_mut().zip(k) {
                *c += w * v;
            }
        }
    }
    Element { degree: 1, coords }
}

#[derive(Debug, Clone)]
pub struct PointwiseReport {
    pub samples: usize,
    pub agreements: usize,
    pub disagreements: Vec<String>,
}

impl PointwiseReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Pointwise check of the rank-one product formula: a pair `(ω₁, ω₂)` has
/// degree-`q` resonance on `A ⊗ A'` exactly when some split `i + j = q`
/// has resonance on both factors.
pub fn product_formula_check(
    a: &TableDga,
    b: &TableDga,
    q: usize,
    samples: usize,
    seed: u64,
) -> Result<PointwiseReport> {
    let t = crate::tensor::tensor_product(a, b, format!("{}⊗{}", a.name, b.name))?;
    let (left, right) = tensor_degree_one_split(a, b, &t)?;
    let mut sampler = Sampler::new(seed);

    let mut pairs: Vec<(Element, Element)> = Vec::new();
    // special points first: the origin, half-zero pairs, and the closed
    // basis directions of both factors
    let zero_a = Element::zero(1, a.dim(1));
    let zero_b = Element::zero(1, b.dim(1));
    pairs.push((zero_a.clone(), zero_b.clone()));
    pairs.push((zero_a.clone(), sample_closed_one_form(b, &mut sampler)));
    pairs.push((sample_closed_one_form(a, &mut sampler), zero_b.clone()));
    let basis_a: Vec<Element> = a
        .d_matrix(1)
        .kernel_basis()
        .into_iter()
        .map(|coords| Element { degree: 1, coords })
        .collect();
    let basis_b: Vec<Element> = b
        .d_matrix(1)
        .kernel_basis()
        .into_iter()
        .map(|coords| Element { degree: 1, coords })
        .collect();
    for ea in &basis_a {
        pairs.push((ea.clone(), zero_b.clone()));
        for eb in &basis_b {
            pairs.push((ea.clone(), eb.clone()));
        }
    }
    for eb in &basis_b {
        pairs.push((zero_a.clone(), eb.clone()));
    }
    while pairs.len() < samples {
        pairs.push((
            sample_closed_one_form(a, &mut sampler),
            sample_closed_one_form(b, &mut sampler),
        ));
    }

    let mut agreements = 0usize;
    let mut disagreements = Vec::new();
    for (w1, w2) in &pairs {
        let mut coeffs = Mat::zeros(t.dim(1), 1);
        for (i, c) in w1.coords.iter().enumerate() {
            coeffs.set(left[i], 0, c.clone());
        }
        for (i, c) in w2.coords.iter().enumerate() {
            coeffs.set(right[i], 0, c.clone());
        }
        let omega = FlatConnection::new(&t, LieKind::Abelian1, coeffs)?;
        let lhs = resonance_dims(&t, &omega, q)?[q] >= 1;

        let da = resonance_dims(a, &rank_one_connection(a, w1)?, q)?;
        let db = resonance_dims(b, &rank_one_connection(b, w2)?, q)?;
        let rhs = (0..=q).any(|i| da[i] >= 1 && db[q - i] >= 1);
        if lhs == rhs {
            agreements += 1;
        } else {
            disagreements.push(format!(
                "ω₁ = {}, ω₂ = {}: product membership {lhs}, factor membership {rhs}",
                a.format_element(w1),
                b.format_element(w2)
            ));
        }
    }
    Ok(PointwiseReport {
        samples: pairs.len(),
        agreements,
        disagreements,
    })
}

/// Seeded flat connections on an extension of a zero-differential base,
/// drawn from both strata: the trivial part (closed factor ⊗ arbitrary
/// coefficient) and pullbacks of base solutions (coefficient rows spanning
/// a line, or cancelling bracket pairs on symplectic bases).
pub fn sample_flat_connections(
    ext: &HirschExtension,
    kind: LieKind,
    count: usize,
    seed: u64,
) -> Result<Vec<FlatConnection>> {
    let lie = SmallLie::new(kind);
    let mut sampler = Sampler::new(seed);
    let a = &ext.dga;
    let mut out = Vec::with_capacity(count);
    out.push(FlatConnection::zero(a, kind));
    let base_pairs = ext.base.dim(1) / 2;
    let base_positions: Vec<usize> = ext.layout[1]
        .iter()
        .enumerate()
        .filter(|(_, &(mask, _))| mask == 0)
        .map(|(pos, _)| pos)
        .collect();
    let mut variant = 0usize;
    while out.len() < count {
        variant += 1;
        let omega = match variant % 3 {
            0 => {
                // trivial part: closed η ⊗ random g
                let eta = sample_closed_one_form(a, &mut sampler);
                let g = sampler.nonzero_vector(lie.dim);
                let mut coeffs = Mat::zeros(a.dim(1), lie.dim);
                for (i, c) in eta.coords.iter().enumerate() {
                    for (k, v) in g.iter().enumerate() {
                        coeffs.set(i, k, c * v);
                    }
                }
                FlatConnection::new(a, kind, coeffs)?
            }
            1 => {
                // pullback with commuting coefficients: base rows on a line
                let g = sampler.nonzero_vector(lie.dim);
                let mut coeffs = Mat::zeros(a.dim(1), lie.dim);
                for &pos in &base_positions {
                    let scale = sampler.rational();
                    for (k, v) in g.iter().enumerate() {
                        coeffs.set(pos, k, &scale * v);
                    }
                }
                FlatConnection::new(a, kind, coeffs)?
            }
            _ => {
                if base_pairs >= 2 && kind != LieKind::Abelian1 {
                    // cancelling bracket pairs: (X, Y) on the first
                    // symplectic pair, (Y, X) on the second
                    let x = sampler.nonzero_vector(lie.dim);
                    let y = sampler.nonzero_vector(lie.dim);
                    let mut coeffs = Mat::zeros(a.dim(1), lie.dim);
                    let assignments = [
                        (base_positions[0], &x),
                        (base_positions[1], &y),
                        (base_positions[2], &y),
                        (base_positions[3], &x),
                    ];
                    for (pos, g) in assignments {
                        for (k, v) in g.iter().enumerate() {
                            coeffs.set(pos, k, v.clone());
                        }
                    }
                    FlatConnection::new(a, kind, coeffs)?
                } else {
                    let eta = sample_closed_one_form(a, &mut sampler);
                    let g = sampler.nonzero_vector(lie.dim);
                    let mut coeffs = Mat::zeros(a.dim(1), lie.dim);
                    for (i, c) in eta.coords.iter().enumerate() {
                        for (k, v) in g.iter().enumerate() {
                            coeffs.set(i, k, c * v);
                        }
                    }
                    FlatConnection::new(a, kind, coeffs)?
                }
            }
        };
        debug_assert!(is_flat(a, &omega)?);
        out.push(omega);
    }
    Ok(out)
}

/// Seeded connections that fail the Maurer–Cartan equation, produced by
/// perturbing flat ones until the defect is nonzero.
pub fn sample_nonflat_connections(
    ext: &HirschExtension,
    kind: LieKind,
    count: usize,
    seed: u64,
) -> Result<Vec<FlatConnection>> {
    let flats = sample_flat_connections(ext, kind, count, seed)?;
    let mut sampler = Sampler::new(seed ^ 0x5eed);
    let a = &ext.dga;
    let lie_dim = SmallLie::new(kind).dim;
    let mut out = Vec::with_capacity(count);
    for base in flats {
        let mut candidate = base;
        loop {
            let mut coeffs = candidate.coeffs.clone();
            let r = sampler.index(a.dim(1));
            let c = sampler.index(lie_dim);
            let cur = coeffs.at(r, c).clone();
            coeffs.set(r, c, cur + sampler.rational());
            let perturbed = FlatConnection::new(a, kind, coeffs)?;
            if !is_flat(a, &perturbed)? {
                out.push(perturbed);
                break;
            }
            candidate = perturbed;
        }
    }
    Ok(out)
}

/// Pointwise check of the degree-1 resonance formula on a link model: for
/// genus 1, membership coincides with the determinant-zero trivial part;
/// for higher genus, with the union of that part and the pullback stratum.
pub fn resonance_formula_check(
    ext: &HirschExtension,
    kind: LieKind,
    samples: usize,
    seed: u64,
) -> Result<PointwiseReport> {
    let genus = ext.base.dim(1) / 2;
    let flats = sample_flat_connections(ext, kind, samples, seed)?;
    let mut agreements = 0usize;
    let mut disagreements = Vec::new();
    for omega in &flats {
        let member = resonance_dims(&ext.dga, omega, 1)?[1] >= 1;
        let expected = if genus == 1 {
            in_pi(&ext.dga, omega)?
        } else {
            let stratum = classify_flat(ext, omega)?;
            in_pi(&ext.dga, omega)?
                || matches!(stratum, Stratum::Pullback | Stratum::Both)
        };
        if member == expected {
            agreements += 1;
        } else {
            disagreements.push(format!(
                "genus {genus}: membership {member} but stratum predicts {expected}"
            ));
        }
    }
    Ok(PointwiseReport {
        samples: flats.len(),
        agreements,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn small_lie_algebras_close_under_bracket() {
        for kind in [LieKind::Abelian1, LieKind::Borel2, LieKind::Sl2, LieKind::Gl2] {
            let lie = SmallLie::new(kind);
            assert!(lie.axioms_hold());
        }
        // [h, e] = 2e in sl2
        let sl2 = SmallLie::new(LieKind::Sl2);
        let h = vec![rat_int(1), rat_int(0), rat_int(0)];
        let e = vec![rat_int(0), rat_int(1), rat_int(0)];
        assert_eq!(
            sl2.bracket_coords(&h, &e),
            vec![rat_int(0), rat_int(2), rat_int(0)]
        );
    }

    #[test]
    fn zero_and_single_term_connections_are_flat() {
        let ext = catalog::heisenberg_model(1);
        let zero = FlatConnection::zero(&ext.dga, LieKind::Sl2);
        assert!(is_flat(&ext.dga, &zero).unwrap());
        // closed η ⊗ any g: single bracket term vanishes
        let mut sampler = Sampler::new(7);
        let eta = sample_closed_one_form(&ext.dga, &mut sampler);
        let mut coeffs = Mat::zeros(ext.dga.dim(1), 3);
        for (i, c) in eta.coords.iter().enumerate() {
            coeffs.set(i, 1, c.clone()); // along e
        }
        let omega = FlatConnection::new(&ext.dga, LieKind::Sl2, coeffs).unwrap();
        assert!(is_flat(&ext.dga, &omega).unwrap());
        assert!(in_f1(&ext.dga, &omega).unwrap());
        assert!(in_pi(&ext.dga, &omega).unwrap()); // e is nilpotent
    }

    #[test]
    fn noncommuting_pair_is_not_flat() {
        let ext = catalog::heisenberg_model(1);
        // ω = a ⊗ e + b ⊗ f: the term ab ⊗ [e, f] survives
        let mut coeffs = Mat::zeros(ext.dga.dim(1), 3);
        let a_pos = ext.dga.labels(1).iter().position(|l| l == "a1").unwrap();
        let b_pos = ext.dga.labels(1).iter().position(|l| l == "b1").unwrap();
        coeffs.set(a_pos, 1, rat_int(1));
        coeffs.set(b_pos, 2, rat_int(1));
        let omega = FlatConnection::new(&ext.dga, LieKind::Sl2, coeffs).unwrap();
        assert!(!is_flat(&ext.dga, &omega).unwrap());
    }

    #[test]
    fn zero_connection_recovers_betti_times_rep_dim() {
        let ext = catalog::link_model(2);
        let zero = FlatConnection::zero(&ext.dga, LieKind::Gl2);
        let dims = resonance_dims(&ext.dga, &zero, 3).unwrap();
        assert_eq!(dims, vec![2, 8, 8, 2]);
    }

    #[test]
    fn rank_one_resonance_of_link_models() {
        // genus 1: nonzero rank-one connections have no degree-1 resonance
        let ext1 = catalog::link_model(1);
        let mut sampler = Sampler::new(42);
        for _ in 0..10 {
            let eta = sample_closed_one_form(&ext1.dga, &mut sampler);
            if eta.is_zero() {
                continue;
            }
            let omega = rank_one_connection(&ext1.dga, &eta).unwrap();
            let dims = resonance_dims(&ext1.dga, &omega, 1).unwrap();
            assert_eq!(dims[1], 0);
        }
        // genus 2: generic points give dims[1] = 2g - 2 = 2
        let ext2 = catalog::link_model(2);
        for _ in 0..10 {
            let eta = sample_closed_one_form(&ext2.dga, &mut sampler);
            if eta.is_zero() {
                continue;
            }
            let omega = rank_one_connection(&ext2.dga, &eta).unwrap();
            let dims = resonance_dims(&ext2.dga, &omega, 1).unwrap();
            assert_eq!(dims[1], 2);
        }
    }

    #[test]
    fn sigma_is_an_involution_and_preserves_flatness() {
        let ext = catalog::link_model(2);
        let mut sampler = Sampler::new(11);
        for _ in 0..20 {
            let eta = sample_closed_one_form(&ext.dga, &mut sampler);
            let g = sampler.vector(4);
            let mut coeffs = Mat::zeros(ext.dga.dim(1), 4);
            for (i, c) in eta.coords.iter().enumerate() {
                for (k, v) in g.iter().enumerate() {
                    coeffs.set(i, k, c * v);
                }
            }
            let omega = FlatConnection::new(&ext.dga, LieKind::Gl2, coeffs).unwrap();
            assert!(is_flat(&ext.dga, &omega).unwrap());
            let s = sigma(&omega);
            assert!(is_flat(&ext.dga, &s).unwrap());
            let ss = sigma(&s);
            assert_eq!(ss.coeffs, omega.coeffs, "σ is an involution");
        }
        // rank one: σ = -id
        let t = catalog::torus_algebra(1);
        let eta = t.element_by_label("a1").unwrap();
        let omega = rank_one_connection(&t, &eta).unwrap();
        let s = sigma(&omega);
        for r in 0..s.coeffs.rows() {
            assert_eq!(s.coeffs.at(r, 0).clone(), -omega.coeffs.at(r, 0).clone());
        }
    }

    #[test]
    fn classification_on_the_link_model() {
        let ext = catalog::link_model(2);
        // pullback built from a cancelling pair: (X, Y), (Y, X)
        let sl2 = SmallLie::new(LieKind::Sl2);
        let x = vec![rat_int(0), rat_int(1), rat_int(0)]; // e
        let y = vec![rat_int(0), rat_int(0), rat_int(1)]; // f
        let labels = ext.dga.labels(1).to_vec();
        let pos = |l: &str| labels.iter().position(|x| x == l).unwrap();
        let mut coeffs = Mat::zeros(ext.dga.dim(1), 3);
        for (row, g) in [
            (pos("a1"), &x),
            (pos("b1"), &y),
            (pos("a2"), &y),
            (pos("b2"), &x),
        ] {
            for (k, v) in g.iter().enumerate() {
                coeffs.set(row, k, v.clone());
            }
        }
        let omega = FlatConnection::new(&ext.dga, LieKind::Sl2, coeffs).unwrap();
        assert!(is_flat(&ext.dga, &omega).unwrap());
        assert_eq!(
            classify_flat(&ext, &omega).unwrap(),
            Stratum::Pullback,
            "[e,f] + [f,e] = 0 but the rank is 2"
        );
        let _ = sl2;
        // trivial-part connections with closed base factor are also pullbacks
        let eta = ext.dga.element_by_label("a1").unwrap();
        let mut c2 = Mat::zeros(ext.dga.dim(1), 3);
        c2.set(pos("a1"), 0, rat_int(1));
        let omega2 = FlatConnection::new(&ext.dga, LieKind::Sl2, c2).unwrap();
        assert_eq!(classify_flat(&ext, &omega2).unwrap(), Stratum::Both);
        let _ = eta;
    }

    #[test]
    fn trivial_extension_admits_f1_with_generator_component() {
        // with τ = 0 the generator is closed, so η may have a t-component
        let base = catalog::surface_algebra(1);
        let zero2 = Element::zero(2, base.dim(2));
        let data = crate::hirsch::HirschData {
            base,
            gens: vec![("t".to_string(), 1)],
            tau: vec![zero2],
        };
        let ext = crate::hirsch::hirsch_extend(&data, None).unwrap();
        let tpos = ext.dga.labels(1).iter().position(|l| l == "t").unwrap();
        let mut coeffs = Mat::zeros(ext.dga.dim(1), 3);
        coeffs.set(tpos, 0, rat_int(1));
        coeffs.set(0, 0, rat_int(2));
        let omega = FlatConnection::new(&ext.dga, LieKind::Sl2, coeffs).unwrap();
        assert!(is_flat(&ext.dga, &omega).unwrap());
        assert_eq!(classify_flat(&ext, &omega).unwrap(), Stratum::TrivialPart);
    }

    #[test]
    fn membership_report_is_consistent_with_dims() {
        let ext = catalog::link_model(2);
        let mut sampler = Sampler::new(5);
        let eta = sample_closed_one_form(&ext.dga, &mut sampler);
        let omega = rank_one_connection(&ext.dga, &eta).unwrap();
        let queries: Vec<(usize, usize)> = (0..=3).flat_map(|i| (1..=5).map(move |s| (i, s))).collect();
        let rep = resonance_report(&ext.dga, &omega, 3, &queries).unwrap();
        for (i, s, member) in rep.memberships {
            assert_eq!(member, rep.dims[i] >= s);
        }
    }

    #[test]
    fn product_formula_for_circle_pairs() {
        let c = catalog::circle_algebra();
        let rep = product_formula_check(&c, &c, 1, 25, 42).unwrap();
        assert!(rep.ok(), "disagreements: {:?}", rep.disagreements);
    }

    #[test]
    fn sampled_connections_classify_without_violations() {
        for g in 1..=2usize {
            let ext = catalog::link_model(g);
            for kind in [LieKind::Borel2, LieKind::Sl2] {
                let flats = sample_flat_connections(&ext, kind, 30, 42).unwrap();
                for omega in &flats {
                    classify_flat(&ext, omega).expect("stratification is exhaustive");
                }
                let nonflat = sample_nonflat_connections(&ext, kind, 10, 42).unwrap();
                for omega in &nonflat {
                    assert!(!is_flat(&ext.dga, omega).unwrap());
                }
            }
        }
    }

    #[test]
    fn resonance_formula_on_link_models() {
        for g in 1..=2usize {
            let ext = catalog::link_model(g);
            for kind in [LieKind::Borel2, LieKind::Sl2] {
                let rep = resonance_formula_check(&ext, kind, 25, 42).unwrap();
                assert!(
                    rep.ok(),
                    "genus {g}, {}: {:?}",
                    kind.name(),
                    rep.disagreements
                );
            }
        }
    }

    #[test]
    fn twisted_duality_on_the_link_model() {
        let ext = catalog::link_model(2);
        let cert = crate::pd::pd_check(&ext.dga, 3).unwrap();
        let mut sampler = Sampler::new(3);
        for _ in 0..5 {
            let eta = sample_closed_one_form(&ext.dga, &mut sampler);
            let g = sampler.vector(4);
            let mut coeffs = Mat::zeros(ext.dga.dim(1), 4);
            for (i, c) in eta.coords.iter().enumerate() {
                for (k, v) in g.iter().enumerate() {
                    coeffs.set(i, k, c * v);
                }
            }
            let omega = FlatConnection::new(&ext.dga, LieKind::Gl2, coeffs).unwrap();
            let rep = twisted_pd_check(&ext.dga, &cert, &omega, &mut sampler, 10).unwrap();
            assert!(rep.duality_holds, "{:?} vs {:?}", rep.dims_primal, rep.dims_dual);
            assert_eq!(rep.sign_checks_passed, rep.sign_checks);
        }
    }
}
