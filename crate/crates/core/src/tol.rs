//! Numeric tolerances shared across the crate.

/// Absolute tolerance on coordinates and relative tolerance on matrix entries.
pub const COORD: f64 = 1e-9;
/// Minimum `|det|` of an accepted linear part.
pub const DETERMINANT: f64 = 1e-12;
/// Singular values below `RANK * max(σ_max, 1)` count as zero.
pub const RANK: f64 = 1e-9;
/// Allowed gap at a chart switch of a user-supplied path.
pub const SEAM: f64 = 1e-6;
/// Grid used to fingerprint affine maps when deduplicating tiles.
pub const FINGERPRINT: f64 = 1e-7;
