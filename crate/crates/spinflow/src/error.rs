//! Crate-wide error type.

use thiserror::Error;

/// Hard cap on the total Hilbert space dimension for dense work.
pub const DENSE_DIM_CAP: usize = 1 << 14;

#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("dense budget exceeded: dimension {dim} > {cap}")]
    DenseBudget { dim: usize, cap: usize },

    #[error("matrix is not Hermitian: relative deviation {deviation:.3e} > {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown site {site}")]
    UnknownSite { site: usize },

    #[error("sites {sites:?} are not part of the lattice")]
    InvalidRegion { sites: Vec<usize> },

    #[error("parameter {value} outside declared range [{lo}, {hi}]")]
    ParameterOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("geometries do not match: {0}")]
    GeometryMismatch(String),

    #[error("patch not isolated: split {split:.3e} >= patch gap {patch_gap:.3e}; spectrum head {head:?}")]
    PatchNotIsolated {
        split: f64,
        patch_gap: f64,
        head: Vec<f64>,
    },

    #[error("gap closed along path: patch gap {gap:.6e} < gamma {gamma:.6e} at lambda = {lambda}")]
    GapClosed { lambda: f64, gap: f64, gamma: f64 },

    #[error("input is not a valid quantum state: {0}")]
    NotAState(String),

    #[error("degenerate ground state requires an explicit state selection")]
    NoSelectionRule,

    #[error("insufficient usable samples: {0}")]
    InsufficientSamples(String),

    #[error("degenerate quadrature grid: T/dt = {ratio:.1} < 16")]
    DegenerateGrid { ratio: f64 },

    #[error("invalid cell complex: {0}")]
    InvalidComplex(String),

    #[error("generators do not commute: pair ({0}, {1})")]
    NonCommutingGenerators(usize, usize),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("eigensolver failed: LAPACK info = {info}")]
    EigenFailure { info: i32 },
}

pub type Result<T> = std::result::Result<T, Error>;
