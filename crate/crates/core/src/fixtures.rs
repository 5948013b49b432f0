//! Built-in example structures: holonomy generators plus a record of what
//! each group preserves.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineMap, GroupPresentation, Matrix, Vector};
use crate::line_groups::radiant_conjugator;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixtureError {
    #[error("unknown example {0:?}")]
    Unknown(String),
    #[error("parameter {name} = {value} out of range ({range})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

/// Fractional part of the golden ratio, as a default irrational rotation.
pub fn golden_angle() -> f64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    TAU * phi.fract()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum ExampleId {
    /// Lattice of translations of the plane.
    TranslationTorus,
    /// Dilations of the punctured plane.
    HopfCylinder { lambda: f64 },
    /// Similarity structure on the torus with quadrilateral fundamental domain.
    SimilarityTorus,
    /// Translation along an axis plus a transverse homothety on ℝ×(ℝ²∖0).
    InvariantLine3Torus { lambda: f64 },
    /// Translation along an axis composed with a transverse rotation.
    IrrationalScrew { theta: f64 },
    /// Homothety of punctured ℝⁿ.
    HopfManifold { n: usize, lambda: f64 },
}

impl ExampleId {
    pub const NAMES: [&'static str; 6] = [
        "TranslationTorus",
        "HopfCylinder",
        "SimilarityTorus",
        "InvariantLine3Torus",
        "IrrationalScrew",
        "HopfManifold",
    ];

    /// Every example with default parameters.
    pub fn all() -> Vec<ExampleId> {
        Self::NAMES
            .iter()
            .map(|n| n.parse().expect("known name"))
            .collect()
    }

    /// Looks up an example by name, filling unspecified parameters with
    /// defaults (`λ = 2`, `θ` the golden angle, `n = 3`).
    pub fn with_params(
        name: &str,
        lambda: Option<f64>,
        theta: Option<f64>,
        n: Option<usize>,
    ) -> Result<ExampleId, FixtureError> {
        let lambda = lambda.unwrap_or(2.0);
        let id = match name {
            "TranslationTorus" => ExampleId::TranslationTorus,
            "HopfCylinder" => ExampleId::HopfCylinder { lambda },
            "SimilarityTorus" => ExampleId::SimilarityTorus,
            "InvariantLine3Torus" => ExampleId::InvariantLine3Torus { lambda },
            "IrrationalScrew" => ExampleId::IrrationalScrew {
                theta: theta.unwrap_or_else(golden_angle),
            },
            "HopfManifold" => ExampleId::HopfManifold {
                n: n.unwrap_or(3),
                lambda,
            },
            other => return Err(FixtureError::Unknown(other.to_string())),
        };
        id.validate()?;
        Ok(id)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExampleId::TranslationTorus => "TranslationTorus",
            ExampleId::HopfCylinder { .. } => "HopfCylinder",
            ExampleId::SimilarityTorus => "SimilarityTorus",
            ExampleId::InvariantLine3Torus { .. } => "InvariantLine3Torus",
            ExampleId::IrrationalScrew { .. } => "IrrationalScrew",
            ExampleId::HopfManifold { .. } => "HopfManifold",
        }
    }

    pub fn validate(&self) -> Result<(), FixtureError> {
        match *self {
            ExampleId::HopfCylinder { lambda } | ExampleId::HopfManifold { lambda, .. }
                if !(lambda > 0.0 && lambda.is_finite()) =>
            {
                Err(FixtureError::OutOfRange {
                    name: "lambda",
                    value: lambda,
                    range: "lambda > 0",
                })
            }
            ExampleId::InvariantLine3Torus { lambda } if !(lambda > 1.0 && lambda.is_finite()) => {
                Err(FixtureError::OutOfRange {
                    name: "lambda",
                    value: lambda,
                    range: "lambda > 1",
                })
            }
            ExampleId::HopfManifold { n, .. } if n < 2 => Err(FixtureError::OutOfRange {
                name: "n",
                value: n as f64,
                range: "n >= 2",
            }),
            ExampleId::IrrationalScrew { theta } if !theta.is_finite() => {
                Err(FixtureError::OutOfRange {
                    name: "theta",
                    value: theta,
                    range: "finite",
                })
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for ExampleId {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExampleId::with_params(s, None, None, None)
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantLine {
    pub point: Vec<f64>,
    pub direction: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExampleMetadata {
    pub description: String,
    /// The open set the group acts on.
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_line: Option<InvariantLine>,
    /// Basis of an invariant plane through the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_plane: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    /// Counterclockwise polygon serving as a fundamental domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_domain: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub id: ExampleId,
    pub presentation: GroupPresentation,
    pub metadata: ExampleMetadata,
}

fn rows(r: &[&[f64]], t: &[f64]) -> AffineMap {
    AffineMap::from_rows(r, t).expect("fixture maps are invertible")
}

fn scaled_identity(n: usize, lambda: f64) -> AffineMap {
    AffineMap::linear_map(Matrix::identity(n, n) * lambda).expect("lambda > 0")
}

pub fn build_example(id: ExampleId) -> Result<Example, FixtureError> {
    id.validate()?;
    let e1_line = |n: usize| {
        let mut direction = vec![0.0; n];
        direction[0] = 1.0;
        InvariantLine {
            point: vec![0.0; n],
            direction,
        }
    };
    let (presentation, metadata) = match id {
        ExampleId::TranslationTorus => (
            GroupPresentation::from_maps(
                2,
                [
                    ("t1", rows(&[&[1.0, 0.0], &[0.0, 1.0]], &[1.0, 0.0])),
                    ("t2", rows(&[&[1.0, 0.0], &[0.0, 1.0]], &[0.0, 1.0])),
                ],
            ),
            ExampleMetadata {
                description: "euclidean torus: the plane modulo a rank-two translation lattice".into(),
                domain: "R^2".into(),
                metric: Some("dx^2 + dy^2".into()),
                fundamental_domain: Some(vec![
                    vec![0.0, 0.0],
                    vec![1.0, 0.0],
                    vec![1.0, 1.0],
                    vec![0.0, 1.0],
                ]),
                ..Default::default()
            },
        ),
        ExampleId::HopfCylinder { lambda } => (
            GroupPresentation::from_maps(2, [("d", scaled_identity(2, lambda))]),
            ExampleMetadata {
                description: "punctured plane modulo a positive dilation".into(),
                domain: "R^2 \\ {0}".into(),
                fixed_point: Some(vec![0.0, 0.0]),
                metric: Some("(dx^2 + dy^2)/(x^2 + y^2)".into()),
                ..Default::default()
            },
        ),
        ExampleId::SimilarityTorus => {
            let a = rows(&[&[0.5, 0.0], &[0.0, 0.5]], &[0.0, 1.0]);
            let b = rows(&[&[1.0, -1.0], &[1.0, 1.0]], &[2.0, 0.0]);
            let group = GroupPresentation::from_maps(2, [("a", a), ("b", b)]);
            let fixed = group.as_ref().ok().and_then(radiant_conjugator).map(|r| r.fixed_point);
            (
                group,
                ExampleMetadata {
                    description: "similarity torus glued from the quadrilateral Q; a glues alpha to gamma, b glues delta to beta".into(),
                    domain: "R^2".into(),
                    fixed_point: fixed,
                    fundamental_domain: Some(vec![
                        vec![0.0, 0.0],
                        vec![2.0, 0.0],
                        vec![1.0, 1.0],
                        vec![0.0, 1.0],
                    ]),
                    ..Default::default()
                },
            )
        }
        ExampleId::InvariantLine3Torus { lambda } => (
            GroupPresentation::from_maps(
                3,
                [
                    ("a", rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], &[1.0, 0.0, 0.0])),
                    ("b", rows(&[&[1.0, 0.0, 0.0], &[0.0, lambda, 0.0], &[0.0, 0.0, lambda]], &[0.0, 0.0, 0.0])),
                ],
            ),
            ExampleMetadata {
                description: "three-torus R x (R^2 \\ 0) / <a, b>; the x-axis is invariant and misses the developing image".into(),
                domain: "R x (R^2 \\ {0})".into(),
                invariant_line: Some(e1_line(3)),
                invariant_plane: Some(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]),
                ..Default::default()
            },
        ),
        ExampleId::IrrationalScrew { theta } => {
            let (s, c) = theta.sin_cos();
            (
                GroupPresentation::from_maps(
                    3,
                    [("a", rows(&[&[1.0, 0.0, 0.0], &[0.0, c, -s], &[0.0, s, c]], &[1.0, 0.0, 0.0]))],
                ),
                ExampleMetadata {
                    description: "translation along the axis composed with a transverse rotation; orbits in the disk accumulate for irrational angles".into(),
                    domain: "R x D".into(),
                    invariant_line: Some(e1_line(3)),
                    ..Default::default()
                },
            )
        }
        ExampleId::HopfManifold { n, lambda } => (
            GroupPresentation::from_maps(n, [("d", scaled_identity(n, lambda))]),
            ExampleMetadata {
                description: format!("Hopf manifold: punctured R^{n} modulo a homothety, diffeomorphic to S^1 x S^{}", n - 1),
                domain: format!("R^{n} \\ {{0}}"),
                fixed_point: Some(vec![0.0; n]),
                metric: Some("|dy|^2/|y|^2".into()),
                ..Default::default()
            },
        ),
    };
    let presentation = presentation.expect("fixture presentations are well formed");
    Ok(Example {
        id,
        presentation,
        metadata,
    })
}

/// Value of the conformal metric `|v|² / |p − c|²` at `p` on `v`.
pub fn radial_metric(center: &Vector, p: &Vector, v: &Vector) -> f64 {
    v.norm_squared() / (p - center).norm_squared()
}

/// Largest relative difference between `f*m` and `m` for the metric
/// `|v|²/|p − c|²`, over `samples` random `(p, v)` pairs.
pub fn metric_pullback_defect(f: &AffineMap, center: &Vector, samples: usize, seed: u64) -> f64 {
    let n = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < samples {
        let p = Vector::from_fn(n, |_, _| rng.gen_range(-5.0..=5.0));
        if (&p - center).norm() < 0.1 {
            continue;
        }
        let v = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
        let here = radial_metric(center, &p, &v);
        let fp = f.apply(&p).expect("dimensions agree");
        let fv = f.apply_linear(&v).expect("dimensions agree");
        let pulled = radial_metric(center, &fp, &fv);
        worst = worst.max((pulled - here).abs() / here.max(f64::MIN_POSITIVE));
        taken += 1;
    }
    worst
}
