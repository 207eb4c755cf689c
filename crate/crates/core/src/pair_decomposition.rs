//! Identity-plus-pair-singlet form of the spin state:
//!
//! ```text
//! ρ = w0 · I/2^n + Σ_{i<j} w_ij · |Ψ⁻_ij⟩⟨Ψ⁻_ij| ⊗ I/2^{n-2},   w0 = 1 - Σ w_ij
//! ```
//!
//! Only singlet weights `w_ij` are stored. For two fermions the familiar
//! Werner parameter `p` is the identity weight, `p = w0 = 1 - w_12`.

use crate::configuration::ExchangeMatrix;
use crate::error::{Error, Result};
use crate::qops::{bit, DensityMatrix, SpinOperator};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

/// Denominator magnitude below which the three-fermion formula is 0/0.
pub const CLOSED_FORM_DENOMINATOR_MIN: f64 = 1e-12;
/// Relative Gram eigenvalue below which the basis is declared dependent.
const GRAM_RCOND: f64 = 1e-12;

/// Unordered pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairWeights {
    pub n: usize,
    /// Singlet weights, aligned with [`pairs`]`(n)`.
    pub singlet: Vec<f64>,
    /// Frobenius norm of the state minus its reconstruction.
    pub residual: f64,
}

impl PairWeights {
    pub fn new(n: usize, singlet: Vec<f64>) -> Result<Self> {
        if !(2..=crate::qops::MAX_SPINS).contains(&n) {
            return Err(Error::UnsupportedParticleCount { n, allowed: "2..=8" });
        }
        let np = n * (n - 1) / 2;
        if singlet.len() != np {
            return Err(Error::DimensionMismatch { expected: np, got: singlet.len() });
        }
        Ok(PairWeights { n, singlet, residual: 0.0 })
    }

    pub fn background(&self) -> f64 {
        1.0 - self.singlet.iter().sum::<f64>()
    }

    /// Weight of the singlet on pair `(i, j)`, in either order.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        pairs(self.n).iter().position(|&p| p == (a, b)).map(|k| self.singlet[k])
    }

    /// Werner identity weight `p` for two fermions.
    pub fn werner_p(&self) -> Option<f64> {
        (self.n == 2).then(|| self.background())
    }
}

/// `|Ψ⁻_ij⟩⟨Ψ⁻_ij| ⊗ I/2^{n-2}` embedded at factors `i`, `j` (0-based).
pub fn singlet_component(n: usize, i: usize, j: usize) -> Result<SpinOperator> {
    if !(2..=crate::qops::MAX_SPINS).contains(&n) {
        return Err(Error::UnsupportedParticleCount { n, allowed: "2..=8" });
    }
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidArgument(format!("invalid pair ({i}, {j}) for {n} spins")));
    }
    let (bi, bj) = (bit(n, i), bit(n, j));
    let pair_mask = bi | bj;
    let scale = 1.0 / (1usize << (n - 2)) as f64;
    let d = 1usize << n;
    let mut m = DMatrix::zeros(d, d);
    for r in 0..d {
        // singlet support: the two spins of the pair anti-aligned
        let ri = r & bi != 0;
        if ri == (r & bj != 0) {
            continue;
        }
        m[(r, r)] = 0.5 * scale;
        m[(r, r ^ pair_mask)] = -0.5 * scale;
    }
    Ok(SpinOperator::new_unchecked(n, m))
}

/// Pair weights from the explicit two- and three-fermion formulas.
pub fn closed_form_weights(f: &ExchangeMatrix) -> Result<PairWeights> {
    match f.n() {
        2 => {
            let f2 = f.get(0, 1).powi(2);
            PairWeights::new(2, vec![f2 / (2.0 - f2)])
        }
        3 => {
            let (f12, f13, f23) = (f.get(0, 1), f.get(0, 2), f.get(1, 2));
            let triple = f12 * f13 * f23;
            let denom = -2.0 + f12 * f12 + f13 * f13 + f23 * f23 - triple;
            if denom.abs() < CLOSED_FORM_DENOMINATOR_MIN {
                return Err(Error::DegenerateConfiguration { trace: -4.0 * denom });
            }
            let w = |fij: f64| (-fij * fij + triple) / denom;
            PairWeights::new(3, vec![w(f12), w(f13), w(f23)])
        }
        n => Err(Error::UnsupportedParticleCount { n, allowed: "2..=3" }),
    }
}

/// `w0 · I/2^n + Σ w_ij · singlet_component(i, j)`.
pub fn reconstruct(w: &PairWeights) -> Result<DensityMatrix> {
    let n = w.n;
    let mut acc = DensityMatrix::maximally_mixed(n).into_operator().scaled(w.background()).into_matrix();
    for (&(i, j), &wij) in pairs(n).iter().zip(&w.singlet) {
        acc += singlet_component(n, i, j)?.matrix() * wij;
    }
    DensityMatrix::new(SpinOperator::new_unchecked(n, acc))
}

/// Least-squares projection of `rho` onto the affine family above, in the
/// Hilbert–Schmidt norm.
pub fn fit_weights(rho: &DensityMatrix) -> Result<PairWeights> {
    let n = rho.n();
    if n < 2 {
        return Err(Error::UnsupportedParticleCount { n, allowed: "2..=8" });
    }
    let mixed = DensityMatrix::maximally_mixed(n).into_operator().into_matrix();
    let prs = pairs(n);
    let dirs: Vec<DMatrix<f64>> = prs
        .iter()
        .map(|&(i, j)| Ok(singlet_component(n, i, j)?.into_matrix() - &mixed))
        .collect::<Result<_>>()?;
    let target = rho.matrix() - &mixed;

    let k = dirs.len();
    let gram = DMatrix::from_fn(k, k, |a, b| dirs[a].dot(&dirs[b]));
    let rhs = DVector::from_fn(k, |a, _| dirs[a].dot(&target));

    let eig = SymmetricEigen::new(gram.clone());
    let max_ev = eig.eigenvalues.amax();
    if let Some(col) = eig.eigenvalues.iter().position(|&l| l < GRAM_RCOND * max_ev) {
        let v = eig.eigenvectors.column(col);
        let dependent = prs
            .iter()
            .zip(v.iter())
            .filter(|(_, c)| c.abs() > 1e-6)
            .map(|(&(i, j), _)| format!("singlet({},{})", i + 1, j + 1))
            .collect();
        return Err(Error::SingularGram { dependent });
    }
    let sol = gram
        .cholesky()
        .ok_or_else(|| Error::SingularGram { dependent: vec!["gram not positive definite".into()] })?
        .solve(&rhs);

    let mut w = PairWeights::new(n, sol.iter().copied().collect())?;
    w.residual = rho.operator().frobenius_distance(reconstruct(&w)?.operator());
    Ok(w)
}
