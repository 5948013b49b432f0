//! Closed-form model flows on ℝ×ℝⁿ and ℝⁿ.
//!
//! * parallel: `(x, y) ↦ (x + t, y)`, the flow of `∂/∂x`;
//! * radial: `p ↦ e^{−t} p`, the flow of the attractive field `−yⁱ∂/∂yⁱ`;
//! * cylindrical: `(x, y) ↦ (x, e^{−t} y)`, radial on every leaf `{x} × ℝⁿ`.
//!
//! Positive times contract. Also here: radial saturation of balls, the
//! forward-absorption test, and a sampling harness checking that groups acting
//! by translations on the line ℝ×0 never carry points off the line onto it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffineMap, GroupPresentation, Letter, Vector, Word};
use crate::linalg;
use crate::line_groups::{block_decompose, membership, BlockForm, GroupTag};
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("{kind:?} flow needs dimension at least {min}, found {found}")]
    DimensionTooSmall {
        kind: FlowKind,
        min: usize,
        found: usize,
    },
    #[error("ball radius must be positive, found {0}")]
    NonPositiveRadius(f64),
    #[error("generator {0:?} does not act by pure translation on the invariant line")]
    OutsideTranslationGroup(String),
    #[error("sample {index} lies on the invariant line (|y| = {norm:e})")]
    SampleOnLine { index: usize, norm: f64 },
    #[error("map scales the invariant line by {0} (expected 1)")]
    ScalesLine(f64),
    #[error("map does not fix the line direction: first column {0:?}")]
    NotParallel(Vec<f64>),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlowKind {
    Parallel,
    Radial,
    Cylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowSpec {
    kind: FlowKind,
    dimension: usize,
}

impl FlowSpec {
    pub fn new(kind: FlowKind, dimension: usize) -> Result<Self, FlowError> {
        let min = match kind {
            FlowKind::Radial => 1,
            FlowKind::Parallel | FlowKind::Cylindrical => 2,
        };
        if dimension < min {
            return Err(FlowError::DimensionTooSmall {
                kind,
                min,
                found: dimension,
            });
        }
        Ok(Self { kind, dimension })
    }

    pub fn kind(&self) -> FlowKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

pub fn flow(spec: FlowSpec, t: f64, p: &Vector) -> Result<Vector, FlowError> {
    if p.len() != spec.dimension {
        return Err(AffineError::DimensionMismatch {
            expected: spec.dimension,
            found: p.len(),
        }
        .into());
    }
    let mut q = p.clone();
    match spec.kind {
        FlowKind::Parallel => q[0] += t,
        FlowKind::Radial => q *= (-t).exp(),
        FlowKind::Cylindrical => {
            let s = (-t).exp();
            q.rows_mut(1, p.len() - 1).scale_mut(s);
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub t: f64,
    pub point: Vec<f64>,
    /// `f(flow(t, p))`
    pub map_after_flow: Vec<f64>,
    /// `flow(t, f(p))`
    pub flow_after_map: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub commutes: bool,
    pub samples: usize,
    pub counterexample: Option<Counterexample>,
}

/// Samples `(t, p)` with `t ∈ [−2, 2]`, `p ∈ [−5, 5]ⁿ` and compares
/// `f ∘ flow_t` with `flow_t ∘ f`.
pub fn commutes_with_flow(
    spec: FlowSpec,
    f: &AffineMap,
    samples: usize,
    seed: u64,
) -> Result<CommutationReport, FlowError> {
    if f.dim() != spec.dimension {
        return Err(AffineError::DimensionMismatch {
            expected: spec.dimension,
            found: f.dim(),
        }
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = rng.gen_range(-2.0..=2.0);
        let p = Vector::from_fn(spec.dimension, |_, _| rng.gen_range(-5.0..=5.0));
        let lhs = f.apply(&flow(spec, t, &p)?)?;
        let rhs = flow(spec, t, &f.apply(&p)?)?;
        if (&lhs - &rhs).norm() > tol::COORD * lhs.norm().max(1.0) {
            return Ok(CommutationReport {
                commutes: false,
                samples,
                counterexample: Some(Counterexample {
                    t,
                    point: p.iter().copied().collect(),
                    map_after_flow: lhs.iter().copied().collect(),
                    flow_after_map: rhs.iter().copied().collect(),
                }),
            });
        }
    }
    Ok(CommutationReport {
        commutes: true,
        samples,
        counterexample: None,
    })
}

/// An open ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BallRepr", into = "BallRepr")]
pub struct Ball {
    center: Vector,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct BallRepr {
    center: Vec<f64>,
    radius: f64,
}

impl TryFrom<BallRepr> for Ball {
    type Error = FlowError;

    fn try_from(repr: BallRepr) -> Result<Self, Self::Error> {
        Ball::new(Vector::from_vec(repr.center), repr.radius)
    }
}

impl From<Ball> for BallRepr {
    fn from(b: Ball) -> Self {
        BallRepr {
            center: b.center.iter().copied().collect(),
            radius: b.radius,
        }
    }
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self, FlowError> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(FlowError::NonPositiveRadius(radius));
        }
        if center.is_empty() {
            return Err(AffineError::ZeroDimension.into());
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, p: &Vector) -> bool {
        (p - &self.center).norm() < self.radius
    }
}

/// Whether some radial-flow translate `e^{t} q` (`t ∈ ℝ`) lies in `ball`.
///
/// For `q ≠ 0` this asks whether the open ray `{s q : s > 0}` meets the ball:
/// the infimum of `|s q − c|²` over `s > 0` is `|c|² − max(0, q·c)²/|q|²`.
/// The origin is its own orbit and belongs to the saturation iff it lies in
/// the ball.
pub fn radial_saturation_contains(ball: &Ball, q: &Vector) -> Result<bool, FlowError> {
    let c = &ball.center;
    if q.len() != c.len() {
        return Err(AffineError::DimensionMismatch {
            expected: c.len(),
            found: q.len(),
        }
        .into());
    }
    let qq = q.norm_squared();
    let cc = c.norm_squared();
    let rr = ball.radius * ball.radius;
    if qq == 0.0 {
        return Ok(cc < rr);
    }
    let along = q.dot(c).max(0.0);
    Ok(cc - along * along / qq < rr)
}

/// Whether `e^{−t} U ⊆ U` for every `t ≥ 0`.
///
/// Each `e^{−t} p` is a convex combination of `p` and the origin, so this
/// holds exactly when the origin lies in the closed ball.
pub fn forward_absorbing(ball: &Ball) -> bool {
    ball.center.norm() <= ball.radius
}

/// Sampled check of forward absorption: 32 near-boundary points flowed for
/// 16 times spread geometrically over `[0.1, 10]`.
pub fn forward_absorbing_sampled(ball: &Ball) -> bool {
    let n = ball.center.len();
    let spec = FlowSpec {
        kind: FlowKind::Radial,
        dimension: n,
    };
    let directions = sample_directions(n, 32);
    let times = (0..16).map(|i| 0.1 * 100f64.powf(i as f64 / 15.0));
    let mut probes: Vec<Vector> = directions
        .iter()
        .map(|u| &ball.center + u * (0.999 * ball.radius))
        .collect();
    probes.push(ball.center.clone());
    times.into_iter().all(|t| {
        probes
            .iter()
            .all(|p| ball.contains(&flow(spec, t, p).expect("dimensions agree")))
    })
}

fn sample_directions(n: usize, count: usize) -> Vec<Vector> {
    if n == 1 {
        return vec![Vector::from_element(1, 1.0), Vector::from_element(1, -1.0)];
    }
    if n == 2 {
        return (0..count)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / count as f64;
                Vector::from_column_slice(&[a.cos(), a.sin()])
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..count)
        .map(|_| loop {
            let v = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
            let norm = v.norm();
            if norm > 0.1 && norm <= 1.0 {
                break v / norm;
            }
        })
        .collect()
}

/// The affine action `y ↦ A y + v` induced on the transverse factor ℝⁿ by a
/// map whose linear part fixes the line direction with unit scale.
pub fn transverse_action(f: &AffineMap) -> Result<AffineMap, FlowError> {
    let dim = f.dim();
    if dim < 2 {
        return Err(FlowError::DimensionTooSmall {
            kind: FlowKind::Parallel,
            min: 2,
            found: dim,
        });
    }
    let lin = f.linear();
    let column: Vec<f64> = (0..dim).map(|i| lin[(i, 0)]).collect();
    if column[1..].iter().any(|x| x.abs() > tol::COORD) {
        return Err(FlowError::NotParallel(column));
    }
    if (column[0] - 1.0).abs() > tol::COORD {
        return Err(FlowError::ScalesLine(column[0]));
    }
    let a = lin.view((1, 1), (dim - 1, dim - 1)).into_owned();
    let v = f.translation().rows(1, dim - 1).into_owned();
    Ok(AffineMap::new(a, v)?)
}

/// Transverse action of a block-form map: linear, `y ↦ A y`.
pub fn induced_transverse_action(f: &BlockForm) -> Result<AffineMap, FlowError> {
    if !f.acts_by_translation_on_line() {
        return Err(FlowError::ScalesLine(f.line_scale()));
    }
    Ok(AffineMap::linear_map(f.transverse().clone())?)
}

/// Source of sample points for [`line_avoidance_check`].
pub trait PointSampler {
    fn sample(&mut self, rng: &mut ChaCha8Rng) -> Vector;
}

/// Uniform `x ∈ [−x_extent, x_extent]` and transverse part of norm uniform in
/// `[min_radius, max_radius]` with uniform direction: a box in ℝ × (ℝⁿ∖0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuncturedCylinderSampler {
    pub dimension: usize,
    pub x_extent: f64,
    pub min_radius: f64,
    pub max_radius: f64,
}

impl PuncturedCylinderSampler {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            x_extent: 10.0,
            min_radius: 0.1,
            max_radius: 10.0,
        }
    }
}

impl PointSampler for PuncturedCylinderSampler {
    fn sample(&mut self, rng: &mut ChaCha8Rng) -> Vector {
        let n = self.dimension - 1;
        let direction = loop {
            let v = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
            let norm = v.norm();
            if norm > 1e-3 && norm <= 1.0 {
                break v / norm;
            }
        };
        let radius = rng.gen_range(self.min_radius..=self.max_radius);
        let mut p = Vector::zeros(self.dimension);
        p[0] = rng.gen_range(-self.x_extent..=self.x_extent);
        p.rows_mut(1, n).copy_from(&(direction * radius));
        p
    }
}

/// Replays a fixed list of points.
#[derive(Debug, Clone)]
pub struct FixedSampler {
    points: Vec<Vector>,
    next: usize,
}

impl FixedSampler {
    pub fn new(points: Vec<Vector>) -> Self {
        Self { points, next: 0 }
    }
}

impl PointSampler for FixedSampler {
    fn sample(&mut self, _rng: &mut ChaCha8Rng) -> Vector {
        let p = self.points[self.next % self.points.len()].clone();
        self.next += 1;
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AvoidanceReport {
    pub samples: usize,
    pub max_word_length: usize,
    /// Smallest `|y|` over all images of all samples.
    pub min_transverse_norm: f64,
    /// Word whose image achieved the minimum.
    pub worst_word: Word,
    /// Smallest `|y|` among the samples themselves.
    pub sample_min_transverse_norm: f64,
    /// Images with `|y| < 1e-9`.
    pub line_hits: usize,
    /// `sample_min · c^L` with `c` from [`transverse_contraction`]: no image
    /// of any sample can come closer to the line than this.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvoidanceConfig {
    pub samples: usize,
    pub max_word_length: usize,
    pub seed: u64,
}

impl Default for AvoidanceConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            max_word_length: 8,
            seed: 0,
        }
    }
}

/// Smallest singular value among the transverse parts `A` of the generators
/// and their inverses; 1 for the trivial group. A word of length `L` shrinks
/// `|y|` by at most this factor to the power `L`.
pub fn transverse_contraction(group: &GroupPresentation) -> Result<f64, FlowError> {
    let mut c: f64 = 1.0;
    for g in group.generators() {
        let block = block_decompose(&g.map)
            .map_err(|_| FlowError::OutsideTranslationGroup(g.name.clone()))?;
        let sv = linalg::singular_values(block.transverse());
        let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), s| {
            (lo.min(*s), hi.max(*s))
        });
        c = c.min(lo).min(1.0 / hi);
    }
    Ok(c)
}

/// Applies random reduced words of length `1..=L` (and every prefix) to
/// sampled points off the line and records the smallest transverse norm seen.
pub fn line_avoidance_check(
    group: &GroupPresentation,
    sampler: &mut dyn PointSampler,
    config: AvoidanceConfig,
) -> Result<AvoidanceReport, FlowError> {
    let dim = group.dimension();
    if dim < 2 {
        return Err(FlowError::DimensionTooSmall {
            kind: FlowKind::Cylindrical,
            min: 2,
            found: dim,
        });
    }
    for g in group.generators() {
        if !membership(&g.map, GroupTag::GTrans) {
            return Err(FlowError::OutsideTranslationGroup(g.name.clone()));
        }
    }
    let inverses = group
        .generators()
        .iter()
        .map(|g| g.map.inverse())
        .collect::<Result<Vec<_>, _>>()?;
    let contraction = transverse_contraction(group)?;
    let transverse_norm = |p: &Vector| p.rows(1, dim - 1).norm();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = AvoidanceReport {
        samples: config.samples,
        max_word_length: config.max_word_length,
        min_transverse_norm: f64::INFINITY,
        worst_word: Word::empty(),
        sample_min_transverse_norm: f64::INFINITY,
        line_hits: 0,
        lower_bound: 0.0,
    };
    for index in 0..config.samples {
        let p = sampler.sample(&mut rng);
        if p.len() != dim {
            return Err(AffineError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            }
            .into());
        }
        let norm = transverse_norm(&p);
        if norm < tol::COORD {
            return Err(FlowError::SampleOnLine { index, norm });
        }
        report.sample_min_transverse_norm = report.sample_min_transverse_norm.min(norm);
        if norm < report.min_transverse_norm {
            report.min_transverse_norm = norm;
            report.worst_word = Word::empty();
        }
        if group.is_empty() || config.max_word_length == 0 {
            continue;
        }
        let len = rng.gen_range(1..=config.max_word_length);
        let mut word = Word::empty();
        let mut acc = AffineMap::identity(dim);
        let mut prev: Option<Letter> = None;
        for _ in 0..len {
            let letter = match prev {
                // A single generator only has reduced words g^k.
                Some(p) if group.len() == 1 => p,
                _ => loop {
                    let g = rng.gen_range(0..group.len());
                    let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                    let l = Letter::new(g, e).expect("nonzero exponent");
                    if prev != Some(l.inverse()) {
                        break l;
                    }
                },
            };
            prev = Some(letter);
            word.push(letter);
            let factor = if letter.exponent() > 0 {
                &group.generators()[letter.generator()].map
            } else {
                &inverses[letter.generator()]
            };
            acc = acc.compose(factor)?;
            let image = acc.apply(&p)?;
            let image_norm = transverse_norm(&image);
            if image_norm < tol::COORD {
                report.line_hits += 1;
            }
            if image_norm < report.min_transverse_norm {
                report.min_transverse_norm = image_norm;
                report.worst_word = word.clone();
            }
        }
    }
    if config.samples > 0 {
        report.lower_bound =
            report.sample_min_transverse_norm * contraction.powi(config.max_word_length as i32);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Matrix;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn flow_examples() {
        let radial = FlowSpec::new(FlowKind::Radial, 2).unwrap();
        assert_eq!(
            flow(radial, 0.0, &v(&[3.0, -1.0])).unwrap(),
            v(&[3.0, -1.0])
        );
        let half = flow(radial, 2f64.ln(), &v(&[4.0, 0.0])).unwrap();
        assert!((half - v(&[2.0, 0.0])).norm() < 1e-15);
        let parallel = FlowSpec::new(FlowKind::Parallel, 2).unwrap();
        assert_eq!(
            flow(parallel, 3.0, &v(&[1.0, 5.0])).unwrap(),
            v(&[4.0, 5.0])
        );
        let cyl = FlowSpec::new(FlowKind::Cylindrical, 3).unwrap();
        let q = flow(cyl, 2f64.ln(), &v(&[7.0, 2.0, -4.0])).unwrap();
        assert!((q - v(&[7.0, 1.0, -2.0])).norm() < 1e-15);
        assert!(flow(radial, 1.0, &v(&[1.0])).is_err());
    }

    #[test]
    fn flow_spec_dimension_gate() {
        assert!(FlowSpec::new(FlowKind::Parallel, 1).is_err());
        assert!(FlowSpec::new(FlowKind::Cylindrical, 1).is_err());
        assert!(FlowSpec::new(FlowKind::Radial, 1).is_ok());
    }

    #[test]
    fn commutation_examples() {
        let p_member = AffineMap::from_rows(
            &[&[1.0, 2.0, -1.0], &[0.0, 3.0, 1.0], &[0.0, 0.5, 2.0]],
            &[4.0, -1.0, 2.0],
        )
        .unwrap();
        let parallel = FlowSpec::new(FlowKind::Parallel, 3).unwrap();
        assert!(
            commutes_with_flow(parallel, &p_member, 200, 7)
                .unwrap()
                .commutes
        );

        let linear =
            AffineMap::linear_map(Matrix::from_row_slice(2, 2, &[1.0, 2.0, -3.0, 0.5])).unwrap();
        let radial = FlowSpec::new(FlowKind::Radial, 2).unwrap();
        assert!(
            commutes_with_flow(radial, &linear, 200, 7)
                .unwrap()
                .commutes
        );

        let shift = AffineMap::translation_by(v(&[1.0, 0.0]));
        let report = commutes_with_flow(radial, &shift, 200, 7).unwrap();
        assert!(!report.commutes);
        let ce = report.counterexample.unwrap();
        assert_ne!(ce.map_after_flow, ce.flow_after_map);
    }

    #[test]
    fn saturation_examples() {
        let unit = Ball::new(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(radial_saturation_contains(&unit, &v(&[100.0, 0.0])).unwrap());
        let off = Ball::new(v(&[5.0, 0.0]), 1.0).unwrap();
        assert!(!radial_saturation_contains(&off, &v(&[0.0, 1.0])).unwrap());
        assert!(radial_saturation_contains(&off, &v(&[1.0, 0.1])).unwrap());
        assert!(!radial_saturation_contains(&off, &v(&[-1.0, 0.0])).unwrap());
        assert!(!radial_saturation_contains(&off, &v(&[0.0, 0.0])).unwrap());
        let near = Ball::new(v(&[0.1, 0.0]), 1.0).unwrap();
        for q in [v(&[0.0, 0.0]), v(&[-3.0, 2.0]), v(&[1e-9, -1e9])] {
            assert!(radial_saturation_contains(&near, &q).unwrap());
        }
        assert!(Ball::new(v(&[0.0]), 0.0).is_err());
        assert!(Ball::new(v(&[0.0]), -1.0).is_err());
    }

    #[test]
    fn absorption_examples() {
        for (center, radius, expected) in [
            ([0.0, 0.0], 1.0, true),
            ([2.0, 0.0], 1.0, false),
            ([0.5, 0.0], 1.0, true),
        ] {
            let ball = Ball::new(v(&center), radius).unwrap();
            assert_eq!(forward_absorbing(&ball), expected);
            assert_eq!(forward_absorbing_sampled(&ball), expected);
        }
    }

    #[test]
    fn transverse_actions() {
        let b = AffineMap::linear_map(Matrix::from_diagonal(&v(&[1.0, 2.0, 2.0]))).unwrap();
        let block = crate::line_groups::block_decompose(&b).unwrap();
        let induced = induced_transverse_action(&block).unwrap();
        assert_eq!(
            induced,
            AffineMap::linear_map(Matrix::identity(2, 2) * 2.0).unwrap()
        );
        let a = AffineMap::translation_by(v(&[1.0, 0.0, 0.0]));
        let block = crate::line_groups::block_decompose(&a).unwrap();
        assert!(induced_transverse_action(&block).unwrap().is_identity(0.0));
        let p_member = AffineMap::from_rows(&[&[1.0, 2.0], &[0.0, 3.0]], &[1.0, 5.0]).unwrap();
        let t = transverse_action(&p_member).unwrap();
        assert_eq!(t, AffineMap::from_rows(&[&[3.0]], &[5.0]).unwrap());
        let scaled = AffineMap::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]], &[0.0, 0.0]).unwrap();
        assert_eq!(
            transverse_action(&scaled).unwrap_err(),
            FlowError::ScalesLine(2.0)
        );
        let scaled_block = crate::line_groups::block_decompose(&scaled).unwrap();
        assert!(induced_transverse_action(&scaled_block).is_err());
    }

    #[test]
    fn avoidance_single_translation() {
        let g = GroupPresentation::from_maps(2, [("t", AffineMap::translation_by(v(&[1.0, 0.0])))])
            .unwrap();
        let mut sampler = FixedSampler::new(vec![v(&[0.0, 1.0]), v(&[3.0, -1.0])]);
        let config = AvoidanceConfig {
            samples: 50,
            max_word_length: 4,
            seed: 1,
        };
        let report = line_avoidance_check(&g, &mut sampler, config).unwrap();
        assert_eq!(report.min_transverse_norm, 1.0);
        assert_eq!(report.line_hits, 0);
    }

    #[test]
    fn avoidance_rejects_bad_input() {
        let g = GroupPresentation::from_maps(2, [("t", AffineMap::translation_by(v(&[1.0, 0.0])))])
            .unwrap();
        let mut on_line = FixedSampler::new(vec![v(&[0.0, 1.0]), v(&[2.0, 0.0])]);
        let config = AvoidanceConfig {
            samples: 2,
            max_word_length: 2,
            seed: 0,
        };
        assert_eq!(
            line_avoidance_check(&g, &mut on_line, config).unwrap_err(),
            FlowError::SampleOnLine {
                index: 1,
                norm: 0.0
            }
        );
        let scale = AffineMap::linear_map(Matrix::from_diagonal(&v(&[2.0, 1.0]))).unwrap();
        let bad = GroupPresentation::from_maps(2, [("s", scale)]).unwrap();
        let mut sampler = PuncturedCylinderSampler::new(2);
        assert_eq!(
            line_avoidance_check(&bad, &mut sampler, config).unwrap_err(),
            FlowError::OutsideTranslationGroup("s".into())
        );
    }
}
