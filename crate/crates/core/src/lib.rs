//! Affine manifolds and their holonomy groups: affine maps, line-preserving
//! groups and the obstructions to a group acting properly on the complement of
//! a line, model flows, developing maps over chart complexes, and tilings of
//! the plane by fundamental polygons.

pub mod affine;
pub mod dev_chart;
pub mod fixtures;
pub mod flows;
mod linalg;
pub mod line_groups;
pub mod orbit;
pub mod sampling;
pub mod tiling;
pub mod tol;

pub use affine::{
    evaluate_word, fixed_points, AffineError, AffineMap, FixedPointSet, Generator,
    GroupPresentation, Letter, Matrix, Vector, Word,
};
pub use dev_chart::{
    develop, loop_holonomy, ChartComplex, DevError, DevPath, DevelopedPath, Segment,
};
pub use fixtures::{build_example, Example, ExampleId};
pub use flows::{flow, Ball, FlowKind, FlowSpec};
pub use line_groups::{
    block_decompose, classify_cyclic, radiant_conjugator, shear_normal_form, translation_character,
    BlockForm, ClassificationVerdict, GroupTag, VerdictTag,
};
pub use tiling::{render_tiling, TilingJob, Viewport};
