//! Spin entanglement of an ideal Fermi gas at zero temperature.
//!
//! Pipeline: [`configuration`] positions → [`configuration::exchange_matrix`]
//! → [`wick::spin_density_matrix`] → diagnostics in [`entanglement`] and the
//! identity-plus-singlets decomposition in [`pair_decomposition`]. The
//! [`runner`] module drives the parameter sweeps behind the CLI.

pub mod configuration;
pub mod entanglement;
pub mod error;
pub mod exchange;
pub mod pair_decomposition;
pub mod qops;
pub mod runner;
pub mod wick;

pub use configuration::{exchange_matrix, Configuration, ExchangeMatrix};
pub use error::{Error, Result};
pub use exchange::{exchange_function, pair_entanglement_threshold, ScaledDistance};
pub use qops::{Bipartition, DensityMatrix, LogBase, SpinOperator};
pub use wick::spin_density_matrix;
