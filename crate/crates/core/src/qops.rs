//! Real symmetric operators on `n` spin-1/2 factors.
//!
//! Index convention: spin factor `i` (fermion label `i + 1`) is bit `n - 1 - i`
//! of a basis index, so factor 0 varies slowest. Bit value 0 is spin up.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Symmetry tolerance accepted on construction.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues down to `-CLAMP_WINDOW` are treated as roundoff zeros.
pub const CLAMP_WINDOW: f64 = 1e-10;
pub const MAX_SPINS: usize = 8;

#[inline]
pub(crate) fn bit(n: usize, factor: usize) -> usize {
    1 << (n - 1 - factor)
}

/// Symmetric `2^n x 2^n` real matrix acting on `n` spins.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperator {
    n: usize,
    mat: DMatrix<f64>,
}

impl SpinOperator {
    pub fn new(n: usize, mat: DMatrix<f64>) -> Result<Self> {
        if n == 0 || n > MAX_SPINS {
            return Err(Error::UnsupportedParticleCount { n, allowed: "1..=8" });
        }
        let dim = 1 << n;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: mat.nrows().max(mat.ncols()) });
        }
        let asym = asymmetry(&mat);
        let scale = mat.amax().max(1.0);
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        Ok(SpinOperator { n, mat })
    }

    pub(crate) fn new_unchecked(n: usize, mat: DMatrix<f64>) -> Self {
        debug_assert_eq!(mat.nrows(), 1 << n);
        SpinOperator { n, mat }
    }

    pub fn identity(n: usize) -> Self {
        let d = 1 << n;
        SpinOperator::new_unchecked(n, DMatrix::identity(d, d))
    }

    /// Operator that permutes the spin factors: factor `i` of the input is
    /// carried to factor `perm[i]`. Matrix entries are `1` where
    /// `col_{i} = row_{perm[i]}` for all `i`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let d = 1 << n;
        let mut mat = DMatrix::zeros(d, d);
        for row in 0..d {
            mat[(row, permute_index(n, perm, row))] = 1.0;
        }
        SpinOperator::new_unchecked(n, mat)
    }

    /// Singlet projector `|Ψ⁻⟩⟨Ψ⁻|` on two spins.
    pub fn singlet_projector() -> Self {
        #[rustfmt::skip]
        let m = DMatrix::from_row_slice(4, 4, &[
            0.0,  0.0,  0.0, 0.0,
            0.0,  0.5, -0.5, 0.0,
            0.0, -0.5,  0.5, 0.0,
            0.0,  0.0,  0.0, 0.0,
        ]);
        SpinOperator::new_unchecked(2, m)
    }

    /// Projector onto a normalized real state vector.
    pub fn projector(n: usize, state: &[f64]) -> Result<Self> {
        if state.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: state.len() });
        }
        let norm = state.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v = nalgebra::DVector::from_iterator(state.len(), state.iter().map(|a| a / norm));
        SpinOperator::new(n, &v * v.transpose())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    pub fn scaled(&self, s: f64) -> Self {
        SpinOperator::new_unchecked(self.n, &self.mat * s)
    }

    /// `self ⊗ other`, with `self` on the leading factors.
    pub fn kron(&self, other: &SpinOperator) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_SPINS {
            return Err(Error::UnsupportedParticleCount { n, allowed: "1..=8" });
        }
        Ok(SpinOperator::new_unchecked(n, self.mat.kronecker(&other.mat)))
    }

    /// `P A Pᵀ` for a permutation operator `P` on the same spins.
    pub fn conjugated_by_permutation(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: perm.len() });
        }
        let d = self.dim();
        let map: Vec<usize> = (0..d).map(|r| permute_index(self.n, perm, r)).collect();
        // (P A Pᵀ)[r][c] = A[map r][map c]
        let mat = DMatrix::from_fn(d, d, |r, c| self.mat[(map[r], map[c])]);
        Ok(SpinOperator::new_unchecked(self.n, mat))
    }

    /// Hilbert–Schmidt inner product `Tr(Aᵀ B)`.
    pub fn hs_inner(&self, other: &SpinOperator) -> f64 {
        self.mat.dot(&other.mat)
    }

    pub fn frobenius_distance(&self, other: &SpinOperator) -> f64 {
        (&self.mat - &other.mat).norm()
    }
}

/// Column index touched by row `row` of the permutation operator for `perm`.
pub(crate) fn permute_index(n: usize, perm: &[usize], row: usize) -> usize {
    let mut col = 0;
    for (i, &pi) in perm.iter().enumerate() {
        if row & bit(n, pi) != 0 {
            col |= bit(n, i);
        }
    }
    col
}

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in (i + 1)..d {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Unit-trace symmetric spin operator. Positivity is checked where it matters
/// (entropy), not at construction, so reconstructions with negative weights
/// can still be represented and inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(SpinOperator);

impl DensityMatrix {
    pub fn new(op: SpinOperator) -> Result<Self> {
        let t = op.trace();
        if (t - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("density matrix trace {t} != 1")));
        }
        Ok(DensityMatrix(op))
    }

    /// Normalizes `op` by its trace.
    pub fn normalized(op: SpinOperator) -> Result<Self> {
        let t = op.trace();
        if t == 0.0 || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("cannot normalize trace {t}")));
        }
        Ok(DensityMatrix(op.scaled(1.0 / t)))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix(SpinOperator::identity(n).scaled(1.0 / (1usize << n) as f64))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn operator(&self) -> &SpinOperator {
        &self.0
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0.mat
    }

    pub fn into_operator(self) -> SpinOperator {
        self.0
    }

    pub fn kron(&self, other: &DensityMatrix) -> Result<Self> {
        Ok(DensityMatrix(self.0.kron(&other.0)?))
    }

    pub fn is_psd(&self) -> Result<bool> {
        Ok(spectrum(&self.0)?[0] >= -CLAMP_WINDOW)
    }
}

/// Non-empty proper subset of spin factors (0-based), complement implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    n: usize,
    subset: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, subset: &[usize]) -> Result<Self> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != subset.len() {
            return Err(Error::InvalidBipartition(format!("repeated factor in {subset:?}")));
        }
        if s.is_empty() || s.len() >= n {
            return Err(Error::InvalidBipartition(format!(
                "{subset:?} is not a non-empty proper subset of {n} spins"
            )));
        }
        if let Some(&bad) = s.iter().find(|&&k| k >= n) {
            return Err(Error::InvalidBipartition(format!("factor {bad} out of range for {n} spins")));
        }
        Ok(Bipartition { n, subset: s })
    }

    pub fn single(n: usize, factor: usize) -> Result<Self> {
        Self::new(n, &[factor])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|k| !self.subset.contains(k)).collect()
    }

    fn mask(&self) -> usize {
        self.subset.iter().fold(0, |m, &k| m | bit(self.n, k))
    }

    /// Column tag with 1-based labels, e.g. `N_2_13` for fermion 2 versus 1,3.
    pub fn column_name(&self) -> String {
        format!("N_{self}")
    }

    /// One representative per unordered split: subsets no larger than their
    /// complement, containing factor 0 when the sizes tie.
    pub fn canonical(n: usize) -> Vec<Bipartition> {
        let mut out = Vec::new();
        for mask in 1usize..(1 << n) - 1 {
            let subset: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            let k = subset.len();
            if 2 * k < n || (2 * k == n && subset.contains(&0)) {
                out.push(Bipartition { n, subset });
            }
        }
        out.sort_by(|a, b| a.subset.len().cmp(&b.subset.len()).then(a.subset.cmp(&b.subset)));
        out
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |v: &[usize]| v.iter().map(|k| (k + 1).to_string()).collect::<String>();
        write!(f, "{}_{}", label(&self.subset), label(&self.complement()))
    }
}

/// All eigenvalues, ascending.
pub fn spectrum(m: &SpinOperator) -> Result<Vec<f64>> {
    let asym = asymmetry(&m.mat);
    if asym > SYMMETRY_TOL * m.mat.amax().max(1.0) {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m.mat.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Transpose on the factors in `part.subset()`.
pub fn partial_transpose(m: &SpinOperator, part: &Bipartition) -> Result<SpinOperator> {
    if part.n != m.n {
        return Err(Error::InvalidBipartition(format!(
            "bipartition of {} spins applied to {} spins",
            part.n, m.n
        )));
    }
    let mask = part.mask();
    let d = m.dim();
    let mut out = DMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let swap = (r ^ c) & mask;
            out[(r ^ swap, c ^ swap)] = m.mat[(r, c)];
        }
    }
    Ok(SpinOperator::new_unchecked(m.n, out))
}

/// Reduced state on the factors in `keep` (kept in ascending order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("partial trace must keep at least one spin".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::InvalidArgument(format!("factor {bad} out of range for {n} spins")));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let m = keep.len();
    let embed = |sub: usize, env: usize| {
        let mut idx = 0;
        for (a, &k) in keep.iter().enumerate() {
            if sub & bit(m, a) != 0 {
                idx |= bit(n, k);
            }
        }
        for (b, &k) in traced.iter().enumerate() {
            if env & (1 << b) != 0 {
                idx |= bit(n, k);
            }
        }
        idx
    };
    let dk = 1 << m;
    let mut out = DMatrix::zeros(dk, dk);
    for env in 0..(1usize << traced.len()) {
        for a in 0..dk {
            let ra = embed(a, env);
            for b in 0..dk {
                out[(a, b)] += rho.matrix()[(ra, embed(b, env))];
            }
        }
    }
    DensityMatrix::new(SpinOperator::new_unchecked(m, out))
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(m: &SpinOperator) -> Result<f64> {
    Ok(spectrum(m)?.iter().map(|l| l.abs()).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    E,
    Two,
}

/// `-Σ λ log λ` over the clamped spectrum, `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let ev = spectrum(rho.operator())?;
    if ev[0] < -CLAMP_WINDOW {
        return Err(Error::NotPositive { min_eigenvalue: ev[0] });
    }
    let nats: f64 = ev
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum();
    Ok(match base {
        LogBase::E => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    })
}
