//! Exact-arithmetic engine for the Fibonacci space-filling curve.
//!
//! The curve arises from a substitution over 24 decorated rectangle
//! prototiles whose side lengths live in the golden-ratio ring Z[φ]. This
//! crate realizes the substitution exactly, derives the tile decorations by
//! constraint solving, evaluates the induced space-filling map and its
//! inverse through nested exact partitions, and emits SVG/JSON/CSV figures.
//!
//! Modules:
//! - [`golden`]: arithmetic in Z[φ] and rationals over it
//! - [`prototiles`]: the 24 labelled rectangles and their decorations
//! - [`substitution`]: supertile expansion, the count matrix and its spectrum
//! - [`solver`]: decoration endpoints from first principles, plus uniqueness
//! - [`curve`]: paired partitions, evaluation, inverse, connectedness
//! - [`export`]: approximating polygons, tessellations, SVG/JSON/CSV
//! - [`verify`]: the invariant suite behind `fibcurve verify`
//! - [`cli`]: command-line entry point

pub mod cli;
pub mod curve;
pub mod export;
pub mod golden;
pub mod prototiles;
pub mod solver;
pub mod substitution;
pub mod verify;

pub use golden::{GoldenInt, GoldenRat, Point2, Rect};
pub use prototiles::{Color, Corner, Decoration, Label, TileSign};
pub use substitution::{apply, count_matrix, dominant_eigenvalue, nu_word, rule_omega, supertile, Patch, PlacedTile};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid label {0:?}: expected a color letter, index and sign, like `A1+` or `D3-`")]
    ParseLabel(String),
    #[error("invalid parameter {0:?}: expected a fraction `P/Q`")]
    ParseParam(String),
    #[error("parameter {0} lies outside [0, 1]")]
    ParamRange(String),
    #[error("point ({0}, {1}) lies outside the unit square")]
    PointRange(f64, f64),
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("patch document: {0}")]
    PatchFormat(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
