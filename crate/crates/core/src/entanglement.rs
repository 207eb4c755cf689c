//! Negativity, PPT classification, tripartite witnesses and entropies.

use crate::error::{Error, Result};
use crate::exchange::{exchange_function, ScaledDistance};
use crate::qops::{
    partial_transpose, spectrum, trace_norm, von_neumann_entropy, Bipartition, DensityMatrix,
    LogBase, SpinOperator,
};
use serde::{Deserialize, Serialize};

/// Negativities below this are reported as exactly zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;
/// Partial-transpose eigenvalues below `-PPT_WINDOW` count as negative.
pub const PPT_WINDOW: f64 = 1e-10;

/// `(‖ρ^{T_A}‖₁ - 1) / 2`, clamped to zero below [`NEGATIVITY_CLAMP`].
pub fn negativity(rho: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    let pt = partial_transpose(rho.operator(), part)?;
    let n = 0.5 * (trace_norm(&pt)? - 1.0);
    Ok(if n < NEGATIVITY_CLAMP { 0.0 } else { n })
}

/// Eigenvalues of `ρ^{T_A}` below `-PPT_WINDOW`, ascending.
pub fn negative_eigenvalues(rho: &DensityMatrix, part: &Bipartition) -> Result<Vec<f64>> {
    let pt = partial_transpose(rho.operator(), part)?;
    Ok(spectrum(&pt)?.into_iter().filter(|&l| l < -PPT_WINDOW).collect())
}

/// Closed-form pair negativity `max(0, (2f² - 1) / (2(2 - f²)))`.
pub fn two_fermion_negativity(x: ScaledDistance) -> f64 {
    let f2 = exchange_function(x).powi(2);
    let n = (2.0 * f2 - 1.0) / (2.0 * (2.0 - f2));
    n.max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// `1/2 - |GHZ⟩⟨GHZ|`
    Ghz,
    /// `2/3 - |W₃⟩⟨W₃|`
    W3,
}

impl Witness {
    /// Witness operator on three spins (bit 0 = up).
    pub fn operator(self) -> SpinOperator {
        let mut state = [0.0; 8];
        let offset = match self {
            Witness::Ghz => {
                state[0b000] = 1.0;
                state[0b111] = 1.0;
                0.5
            }
            Witness::W3 => {
                // one spin down: ↑↓↑, ↓↑↑, ↑↑↓
                state[0b010] = 1.0;
                state[0b100] = 1.0;
                state[0b001] = 1.0;
                2.0 / 3.0
            }
        };
        let proj = SpinOperator::projector(3, &state).expect("fixed three-spin state");
        let m = SpinOperator::identity(3).matrix() * offset - proj.matrix();
        SpinOperator::new(3, m).expect("witness is symmetric")
    }
}

/// `Tr(ρ Π)` for a three-spin state.
pub fn witness_expectation(rho: &DensityMatrix, kind: Witness) -> Result<f64> {
    if rho.n() != 3 {
        return Err(Error::UnsupportedParticleCount { n: rho.n(), allowed: "3" });
    }
    Ok(rho.operator().hs_inner(&kind.operator()))
}

/// `log(2^n - (n + 1))`: entropy of a uniform mixture over the states left
/// after removing the `n + 1` fully symmetric ones.
pub fn coincident_entropy_bound(n: usize, base: LogBase) -> Result<f64> {
    if !(2..=62).contains(&n) {
        return Err(Error::UnsupportedParticleCount { n, allowed: "2..=62" });
    }
    let count = ((1u64 << n) - (n as u64 + 1)) as f64;
    Ok(match base {
        LogBase::E => count.ln(),
        LogBase::Two => count.log2(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteEntry {
    pub bipartition: String,
    pub subset: Vec<usize>,
    pub negativity: f64,
    pub ppt: bool,
    pub negative_eigs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub n: usize,
    pub bipartitions: Vec<BipartiteEntry>,
    pub witness_ghz: Option<f64>,
    pub witness_w3: Option<f64>,
    pub entropy_bits: f64,
    pub entropy_nats: f64,
}

impl EntanglementReport {
    /// Diagnostics over every canonical bipartition of `rho`.
    pub fn analyze(rho: &DensityMatrix) -> Result<Self> {
        let n = rho.n();
        let bipartitions = Bipartition::canonical(n)
            .into_iter()
            .map(|part| {
                let negative_eigs = negative_eigenvalues(rho, &part)?;
                let negativity = negativity(rho, &part)?;
                Ok(BipartiteEntry {
                    bipartition: part.to_string(),
                    subset: part.subset().iter().map(|k| k + 1).collect(),
                    negativity,
                    ppt: negativity == 0.0,
                    negative_eigs,
                })
            })
            .collect::<Result<_>>()?;
        let (witness_ghz, witness_w3) = if n == 3 {
            (
                Some(witness_expectation(rho, Witness::Ghz)?),
                Some(witness_expectation(rho, Witness::W3)?),
            )
        } else {
            (None, None)
        };
        let entropy_nats = von_neumann_entropy(rho, LogBase::E)?;
        Ok(EntanglementReport {
            n,
            bipartitions,
            witness_ghz,
            witness_w3,
            entropy_bits: entropy_nats / std::f64::consts::LN_2,
            entropy_nats,
        })
    }
}
