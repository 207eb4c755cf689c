//! Exact spin density matrix of `n` fermions of the ideal gas at `T = 0`.
//!
//! Wick contraction of the `n`-point correlator leaves a signed sum over the
//! symmetric group,
//!
//! ```text
//! ρ̃ = Σ_P sgn(P) Π_i F[i][P(i)] · Perm(P),      ρ = ρ̃ / Tr ρ̃
//! ```
//!
//! where `Perm(P)` permutes the spin factors. Each `Perm(P)` has exactly one
//! unit entry per row, so one permutation costs `2^n` additions.
//!
//! The sum is split by the image of fermion 1 into `n` fixed blocks that are
//! each accumulated in lexicographic order and then added in block order. The
//! output is therefore bit-identical regardless of the thread count.

use crate::configuration::ExchangeMatrix;
use crate::error::{Error, Result};
use crate::qops::{permute_index, DensityMatrix, SpinOperator};
use nalgebra::DMatrix;
use rayon::prelude::*;

/// Unnormalized traces below this are treated as Pauli-forbidden.
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// Sign and cycle count of a permutation given in one-line form.
pub(crate) fn sign_and_cycles(perm: &[usize]) -> (f64, u32) {
    let n = perm.len();
    let mut seen = [false; 16];
    let mut cycles = 0u32;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
        }
    }
    // sgn = (-1)^(n - cycles)
    let sign = if (n as u32 - cycles).is_multiple_of(2) { 1.0 } else { -1.0 };
    (sign, cycles)
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Visits every permutation whose first entry is `head`, in lexicographic order.
fn for_each_with_head(n: usize, head: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = std::iter::once(head).chain((0..n).filter(|&k| k != head)).collect();
    loop {
        visit(&perm);
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
}

fn weight(f: &ExchangeMatrix, perm: &[usize]) -> f64 {
    perm.iter().enumerate().map(|(i, &p)| f.get(i, p)).product()
}

/// `Tr ρ̃ = Σ_P sgn(P) 2^{cycles(P)} Π_i F[i][P(i)]`.
pub fn normalization_trace(f: &ExchangeMatrix) -> f64 {
    let n = f.n();
    (0..n)
        .map(|head| {
            let mut acc = 0.0;
            for_each_with_head(n, head, |perm| {
                let (sign, cycles) = sign_and_cycles(perm);
                acc += sign * f64::from(1u32 << cycles) * weight(f, perm);
            });
            acc
        })
        .sum()
}

/// Unnormalized `ρ̃` as a dense operator.
pub fn unnormalized_spin_operator(f: &ExchangeMatrix) -> SpinOperator {
    let n = f.n();
    let d = 1usize << n;
    let blocks: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|head| {
            let mut acc = vec![0.0; d * d];
            for_each_with_head(n, head, |perm| {
                let w = sign_and_cycles(perm).0 * weight(f, perm);
                if w == 0.0 {
                    return;
                }
                for row in 0..d {
                    acc[row * d + permute_index(n, perm, row)] += w;
                }
            });
            acc
        })
        .collect();
    let mut total = vec![0.0; d * d];
    for block in &blocks {
        for (t, b) in total.iter_mut().zip(block) {
            *t += b;
        }
    }
    SpinOperator::new_unchecked(n, DMatrix::from_row_slice(d, d, &total))
}

/// Normalized reduced spin density matrix of the configuration behind `f`.
pub fn spin_density_matrix(f: &ExchangeMatrix) -> Result<DensityMatrix> {
    let raw = unnormalized_spin_operator(f);
    let trace = raw.trace();
    if trace < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateConfiguration { trace });
    }
    DensityMatrix::new(raw.scaled(1.0 / trace))
}
