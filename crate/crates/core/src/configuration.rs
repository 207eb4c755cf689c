//! Fermion positions and the geometries swept by the figure scenarios.
//!
//! Coordinates are in units of `1/k_F`. The order of `positions` fixes the
//! fermion labels: entry `i` is fermion `i + 1`, which is also spin factor `i`
//! of every operator built from this configuration.

use crate::error::{Error, Result};
use crate::exchange::{kernel, ScaledDistance};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const MIN_PARTICLES: usize = 2;
pub const MAX_PARTICLES: usize = 8;

pub type Point = [f64; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Configuration {
    positions: Vec<Point>,
}

impl Configuration {
    pub fn new(positions: Vec<Point>) -> Result<Self> {
        let n = positions.len();
        if !(MIN_PARTICLES..=MAX_PARTICLES).contains(&n) {
            return Err(Error::UnsupportedParticleCount { n, allowed: "2..=8" });
        }
        if positions.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Configuration { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        distance(&self.positions[i], &self.positions[j])
    }

    /// Same configuration with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let positions = self
            .positions
            .iter()
            .map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
            .collect();
        Configuration::new(positions)
    }

    /// Reorders fermions so that new fermion `k` is old fermion `order[k]`.
    pub fn relabeled(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: order.len() });
        }
        let mut seen = vec![false; self.len()];
        for &k in order {
            if k >= self.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidArgument(format!("{order:?} is not a permutation")));
            }
        }
        Configuration::new(order.iter().map(|&k| self.positions[k]).collect())
    }
}

impl TryFrom<Vec<Point>> for Configuration {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        Configuration::new(v)
    }
}

impl From<Configuration> for Vec<Point> {
    fn from(c: Configuration) -> Self {
        c.positions
    }
}

fn distance(a: &Point, b: &Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Pairwise exchange kernel values, `F[i][j] = f(|r_i - r_j|)`, unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeMatrix(DMatrix<f64>);

impl ExchangeMatrix {
    /// Builds from explicit kernel values (useful for probing the algebra at
    /// values no geometry produces). Requires a symmetric matrix with unit
    /// diagonal and entries in `[-1, 1]`.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.ncols() });
        }
        if !(MIN_PARTICLES..=MAX_PARTICLES).contains(&n) {
            return Err(Error::UnsupportedParticleCount { n, allowed: "2..=8" });
        }
        for i in 0..n {
            if m[(i, i)] != 1.0 {
                return Err(Error::InvalidArgument("exchange matrix diagonal must be 1".into()));
            }
            for j in 0..n {
                let v = m[(i, j)];
                if !(-1.0..=1.0).contains(&v) || v != m[(j, i)] {
                    return Err(Error::InvalidArgument(format!(
                        "exchange entry ({i},{j}) = {v} invalid or asymmetric"
                    )));
                }
            }
        }
        Ok(ExchangeMatrix(m))
    }

    /// Two-fermion matrix with off-diagonal value `f`.
    pub fn pair(f: f64) -> Result<Self> {
        Self::from_matrix(DMatrix::from_row_slice(2, 2, &[1.0, f, f, 1.0]))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

pub fn exchange_matrix(config: &Configuration) -> ExchangeMatrix {
    let n = config.len();
    let mut m = DMatrix::identity(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let f = kernel(config.distance(i, j));
            m[(i, j)] = f;
            m[(j, i)] = f;
        }
    }
    ExchangeMatrix(m)
}

/// Three collinear fermions: 1 at the origin, 3 at `x_max`, 2 at `x`.
pub fn line_configuration(x_max: ScaledDistance, x: ScaledDistance) -> Result<Configuration> {
    if x.get() > x_max.get() {
        return Err(Error::InvalidArgument(format!(
            "position {} outside [0, {}]",
            x.get(),
            x_max.get()
        )));
    }
    Configuration::new(vec![[0.0; 3], [x.get(), 0.0, 0.0], [x_max.get(), 0.0, 0.0]])
}

/// Fermions 2 and 3 at `(±base/2, 0, 0)`, fermion 1 at height `height` above
/// the base midpoint.
pub fn isosceles_configuration(
    base: ScaledDistance,
    height: ScaledDistance,
) -> Result<Configuration> {
    if base.get() <= 0.0 {
        return Err(Error::InvalidArgument("isosceles base must be positive".into()));
    }
    let half = 0.5 * base.get();
    Configuration::new(vec![[0.0, height.get(), 0.0], [-half, 0.0, 0.0], [half, 0.0, 0.0]])
}

/// Segment, equilateral triangle or regular tetrahedron with the given edge.
pub fn regular_simplex_configuration(n: usize, edge: ScaledDistance) -> Result<Configuration> {
    let a = edge.get();
    let positions = match n {
        2 => vec![[0.0; 3], [a, 0.0, 0.0]],
        3 => vec![[0.0; 3], [a, 0.0, 0.0], [0.5 * a, 0.5 * 3f64.sqrt() * a, 0.0]],
        4 => {
            // alternate cube corners, cube side a/sqrt(2)
            let s = a / std::f64::consts::SQRT_2;
            vec![[0.0, 0.0, 0.0], [s, s, 0.0], [s, 0.0, s], [0.0, s, s]]
        }
        _ => return Err(Error::UnsupportedParticleCount { n, allowed: "2..=4" }),
    };
    Configuration::new(positions)
}

/// `n` points uniform in `[0, box]^3`, reproducible per seed.
pub fn random_configuration(n: usize, box_len: ScaledDistance, seed: u64) -> Result<Configuration> {
    if box_len.get() <= 0.0 {
        return Err(Error::InvalidArgument("box length must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = box_len.get();
    let positions = (0..n)
        .map(|_| {
            [
                rng.random_range(0.0..=l),
                rng.random_range(0.0..=l),
                rng.random_range(0.0..=l),
            ]
        })
        .collect();
    Configuration::new(positions)
}
