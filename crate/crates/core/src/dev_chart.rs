//! Developing paths across a finite complex of affine charts, and the
//! holonomy of loops.
//!
//! A [`ChartComplex`] is a graph of charts with one affine transition per
//! directed edge: `g(i, j)` carries chart-`j` coordinates to chart-`i`
//! coordinates. A [`DevPath`] lists, per segment, the chart it runs in and a
//! polyline in that chart's coordinates. Developing a path maps segment `k`
//! through `g(c0, c1)·g(c1, c2)⋯g(c(k−1), ck)` and concatenates.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffineMap, Vector};
use crate::tol;

pub type ChartId = String;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DevError {
    #[error("unknown chart {0:?}")]
    UnknownChart(ChartId),
    #[error("duplicate chart {0:?}")]
    DuplicateChart(ChartId),
    #[error("no transition from chart {from:?} to chart {to:?}")]
    MissingTransition { from: ChartId, to: ChartId },
    #[error("transitions {from:?}->{to:?} and back are not inverse (deviation {deviation:e})")]
    InconsistentTransitions {
        from: ChartId,
        to: ChartId,
        deviation: f64,
    },
    #[error("self transition on chart {0:?} is not the identity")]
    NonIdentitySelfTransition(ChartId),
    #[error("seam mismatch entering segment {segment}: gap {gap:e}")]
    SeamMismatch { segment: usize, gap: f64 },
    #[error("path has no segments")]
    EmptyPath,
    #[error("segment {0} has no points")]
    EmptySegment(usize),
    #[error("path starts in chart {first:?} but ends in chart {last:?}")]
    NotALoop { first: ChartId, last: ChartId },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Affine(#[from] AffineError),
}

fn chart_id<'de, D: Deserializer<'de>>(de: D) -> Result<ChartId, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Id {
        Text(String),
        Number(i64),
    }
    Ok(match Id::deserialize(de)? {
        Id::Text(s) => s,
        Id::Number(n) => n.to_string(),
    })
}

fn chart_ids<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<ChartId>, D::Error> {
    #[derive(Deserialize)]
    struct Wrapped(#[serde(deserialize_with = "chart_id")] ChartId);
    Ok(Vec::<Wrapped>::deserialize(de)?
        .into_iter()
        .map(|w| w.0)
        .collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TransitionRepr {
    #[serde(deserialize_with = "chart_id")]
    from: ChartId,
    #[serde(deserialize_with = "chart_id")]
    to: ChartId,
    map: AffineMap,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    dimension: usize,
    #[serde(deserialize_with = "chart_ids")]
    charts: Vec<ChartId>,
    transitions: Vec<TransitionRepr>,
}

/// Charts and affine transitions; `g(j, i) = g(i, j)⁻¹` is maintained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct ChartComplex {
    dimension: usize,
    charts: Vec<ChartId>,
    transitions: BTreeMap<(ChartId, ChartId), AffineMap>,
}

impl TryFrom<ComplexRepr> for ChartComplex {
    type Error = DevError;

    fn try_from(repr: ComplexRepr) -> Result<Self, Self::Error> {
        let mut cc = ChartComplex::new(repr.dimension, repr.charts)?;
        for t in repr.transitions {
            cc.add_transition(&t.from, &t.to, t.map)?;
        }
        Ok(cc)
    }
}

impl From<ChartComplex> for ComplexRepr {
    fn from(cc: ChartComplex) -> Self {
        ComplexRepr {
            dimension: cc.dimension,
            charts: cc.charts,
            transitions: cc
                .transitions
                .into_iter()
                .map(|((from, to), map)| TransitionRepr { from, to, map })
                .collect(),
        }
    }
}

impl ChartComplex {
    pub fn new(dimension: usize, charts: Vec<ChartId>) -> Result<Self, DevError> {
        if dimension == 0 {
            return Err(AffineError::ZeroDimension.into());
        }
        for (i, c) in charts.iter().enumerate() {
            if charts[..i].contains(c) {
                return Err(DevError::DuplicateChart(c.clone()));
            }
        }
        Ok(Self {
            dimension,
            charts,
            transitions: BTreeMap::new(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn charts(&self) -> &[ChartId] {
        &self.charts
    }

    /// Registers `g(from, to) = map` and `g(to, from) = map⁻¹`. A transition
    /// that is already present must agree to 1e-9.
    pub fn add_transition(&mut self, from: &str, to: &str, map: AffineMap) -> Result<(), DevError> {
        for c in [from, to] {
            if !self.charts.iter().any(|x| x == c) {
                return Err(DevError::UnknownChart(c.to_string()));
            }
        }
        if map.dim() != self.dimension {
            return Err(DevError::DimensionMismatch {
                expected: self.dimension,
                found: map.dim(),
            });
        }
        if from == to {
            if !map.is_identity(tol::COORD) {
                return Err(DevError::NonIdentitySelfTransition(from.to_string()));
            }
            return Ok(());
        }
        let inverse = map.inverse()?;
        for (key, value) in [((from, to), map), ((to, from), inverse)] {
            let key = (key.0.to_string(), key.1.to_string());
            if let Some(existing) = self.transitions.get(&key) {
                let deviation = existing.deviation(&value);
                if deviation > tol::COORD {
                    return Err(DevError::InconsistentTransitions {
                        from: key.0,
                        to: key.1,
                        deviation,
                    });
                }
            } else {
                self.transitions.insert(key, value);
            }
        }
        Ok(())
    }

    /// `g(from, to)`; the identity when `from == to`.
    pub fn transition(&self, from: &str, to: &str) -> Result<AffineMap, DevError> {
        if from == to {
            if !self.charts.iter().any(|c| c == from) {
                return Err(DevError::UnknownChart(from.to_string()));
            }
            return Ok(AffineMap::identity(self.dimension));
        }
        self.transitions
            .get(&(from.to_string(), to.to_string()))
            .cloned()
            .ok_or_else(|| DevError::MissingTransition {
                from: from.to_string(),
                to: to.to_string(),
            })
    }

    pub fn neighbors(&self, chart: &str) -> Vec<&ChartId> {
        self.transitions
            .keys()
            .filter(|(a, _)| a == chart)
            .map(|(_, b)| b)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(deserialize_with = "chart_id")]
    pub chart: ChartId,
    #[serde(with = "points_serde")]
    pub points: Vec<Vector>,
}

mod points_serde {
    use super::Vector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(points: &[Vector], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = points.iter().map(|p| p.iter().copied().collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Vector>, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(de)?;
        Ok(rows.into_iter().map(Vector::from_vec).collect())
    }
}

/// A path given chart by chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevPath {
    pub segments: Vec<Segment>,
}

impl DevPath {
    pub fn new(segments: Vec<Segment>) -> Self {
        Self { segments }
    }

    pub fn single(chart: impl Into<ChartId>, points: Vec<Vector>) -> Self {
        Self {
            segments: vec![Segment {
                chart: chart.into(),
                points,
            }],
        }
    }

    pub fn first_chart(&self) -> Option<&ChartId> {
        self.segments.first().map(|s| &s.chart)
    }

    pub fn last_chart(&self) -> Option<&ChartId> {
        self.segments.last().map(|s| &s.chart)
    }

    pub fn first_point(&self) -> Option<&Vector> {
        self.segments.first().and_then(|s| s.points.first())
    }

    pub fn last_point(&self) -> Option<&Vector> {
        self.segments.last().and_then(|s| s.points.last())
    }

    pub fn point_count(&self) -> usize {
        self.segments.iter().map(|s| s.points.len()).sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &DevPath) -> DevPath {
        DevPath {
            segments: self
                .segments
                .iter()
                .chain(&other.segments)
                .cloned()
                .collect(),
        }
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> DevPath {
        DevPath {
            segments: self
                .segments
                .iter()
                .rev()
                .map(|s| Segment {
                    chart: s.chart.clone(),
                    points: s.points.iter().rev().cloned().collect(),
                })
                .collect(),
        }
    }

    /// The prefix containing the first `count` points overall.
    pub fn truncated(&self, count: usize) -> DevPath {
        let mut left = count;
        let mut segments = Vec::new();
        for s in &self.segments {
            if left == 0 {
                break;
            }
            let take = left.min(s.points.len());
            segments.push(Segment {
                chart: s.chart.clone(),
                points: s.points[..take].to_vec(),
            });
            left -= take;
        }
        DevPath { segments }
    }
}

/// A path developed into model space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevelopedPath {
    #[serde(with = "points_serde")]
    pub polyline: Vec<Vector>,
    #[serde(with = "single_point")]
    pub terminal: Vector,
    /// `g(c0, c1)⋯g(c(k−1), ck)`.
    pub accumulated: AffineMap,
}

mod single_point {
    use super::Vector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &Vector, s: S) -> Result<S::Ok, S::Error> {
        p.iter().copied().collect::<Vec<f64>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vector, D::Error> {
        Ok(Vector::from_vec(Vec::<f64>::deserialize(de)?))
    }
}

pub fn develop(cc: &ChartComplex, path: &DevPath) -> Result<DevelopedPath, DevError> {
    develop_with(cc, path, tol::SEAM)
}

pub fn develop_with(
    cc: &ChartComplex,
    path: &DevPath,
    seam_tolerance: f64,
) -> Result<DevelopedPath, DevError> {
    let first = path.segments.first().ok_or(DevError::EmptyPath)?;
    let n = cc.dimension();
    for (i, s) in path.segments.iter().enumerate() {
        if !cc.charts().contains(&s.chart) {
            return Err(DevError::UnknownChart(s.chart.clone()));
        }
        if s.points.is_empty() {
            return Err(DevError::EmptySegment(i));
        }
        if let Some(p) = s.points.iter().find(|p| p.len() != n) {
            return Err(DevError::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
    }
    let mut accumulated = AffineMap::identity(n);
    let mut polyline: Vec<Vector> = first.points.clone();
    for (i, pair) in path.segments.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        let g = cc.transition(&prev.chart, &next.chart)?;
        let entry = g.apply(&next.points[0])?;
        let exit = prev.points.last().expect("segments are nonempty");
        let gap = (&entry - exit).norm();
        if gap > seam_tolerance {
            return Err(DevError::SeamMismatch {
                segment: i + 1,
                gap,
            });
        }
        accumulated = accumulated.compose(&g)?;
        for p in &next.points {
            polyline.push(accumulated.apply(p)?);
        }
    }
    let terminal = polyline.last().expect("nonempty polyline").clone();
    Ok(DevelopedPath {
        polyline,
        terminal,
        accumulated,
    })
}

/// Holonomy of a loop: the accumulated transition product.
pub fn loop_holonomy(cc: &ChartComplex, path: &DevPath) -> Result<AffineMap, DevError> {
    let first = path.first_chart().ok_or(DevError::EmptyPath)?;
    let last = path.last_chart().expect("nonempty");
    if first != last {
        return Err(DevError::NotALoop {
            first: first.clone(),
            last: last.clone(),
        });
    }
    Ok(develop(cc, path)?.accumulated)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub passed: bool,
    pub checks: usize,
    pub max_gap: f64,
    pub holonomy: AffineMap,
}

/// Compares `dev(β·γ')` with `hol(β)(dev(γ'))` at the terminal points of
/// `trials` prefixes `γ'` of `gamma`, spread evenly over its points and always
/// including `gamma` itself.
pub fn equivariance_check(
    cc: &ChartComplex,
    beta: &DevPath,
    gamma: &DevPath,
    trials: usize,
) -> Result<EquivarianceReport, DevError> {
    let holonomy = loop_holonomy(cc, beta)?;
    let start = gamma.first_chart().ok_or(DevError::EmptyPath)?;
    let end = beta.last_chart().expect("loop is nonempty");
    if start != end {
        return Err(DevError::NotALoop {
            first: end.clone(),
            last: start.clone(),
        });
    }
    let total = gamma.point_count();
    let trials = trials.clamp(1, total.max(1));
    let mut max_gap: f64 = 0.0;
    let mut passed = true;
    for k in 1..=trials {
        let count = (k * total).div_ceil(trials);
        let prefix = gamma.truncated(count);
        let lhs = develop(cc, &beta.concat(&prefix))?.terminal;
        let rhs = holonomy.apply(&develop(cc, &prefix)?.terminal)?;
        let gap = (&lhs - &rhs).norm();
        max_gap = max_gap.max(gap);
        passed &= gap <= tol::COORD * lhs.norm().max(1.0);
    }
    Ok(EquivarianceReport {
        passed,
        checks: trials,
        max_gap,
        holonomy,
    })
}

/// Random chart complexes and seam-consistent paths for exercising the
/// developing map.
pub mod sampling {
    use super::*;

    /// A random well-conditioned affine map with entries of moderate size.
    pub fn random_affine<R: Rng>(rng: &mut R, n: usize) -> AffineMap {
        loop {
            let linear = DMatrix::<f64>::from_fn(n, n, |i, j| {
                rng.gen_range(-1.0f64..=1.0) + if i == j { 1.5 } else { 0.0 }
            });
            let translation = Vector::from_fn(n, |_, _| rng.gen_range(-3.0..=3.0));
            let det = linear.determinant().abs();
            if det > 0.2 && det < 20.0 {
                if let Ok(m) = AffineMap::new(linear, translation) {
                    return m;
                }
            }
        }
    }

    /// Charts `"0".."k-1"` joined in a chain, plus `extra_edges` random chords.
    pub fn random_complex<R: Rng>(
        rng: &mut R,
        charts: usize,
        n: usize,
        extra_edges: usize,
    ) -> ChartComplex {
        let ids: Vec<ChartId> = (0..charts).map(|i| i.to_string()).collect();
        let mut cc = ChartComplex::new(n, ids.clone()).expect("distinct ids");
        for w in ids.windows(2) {
            cc.add_transition(&w[0], &w[1], random_affine(rng, n))
                .expect("fresh edge");
        }
        for _ in 0..extra_edges {
            let i = rng.gen_range(0..charts);
            let j = rng.gen_range(0..charts);
            if i != j && cc.transition(&ids[i], &ids[j]).is_err() {
                cc.add_transition(&ids[i], &ids[j], random_affine(rng, n))
                    .expect("fresh edge");
            }
        }
        cc
    }

    fn shortest_route(cc: &ChartComplex, from: &str, to: &str) -> Vec<ChartId> {
        let mut prev: BTreeMap<ChartId, ChartId> = BTreeMap::new();
        let mut queue = VecDeque::from([from.to_string()]);
        while let Some(c) = queue.pop_front() {
            if c == to {
                break;
            }
            for nb in cc.neighbors(&c) {
                if nb != from && !prev.contains_key(nb) {
                    prev.insert(nb.clone(), c.clone());
                    queue.push_back(nb.clone());
                }
            }
        }
        let mut route = vec![to.to_string()];
        while route.last().map(String::as_str) != Some(from) {
            let step = prev
                .get(route.last().unwrap())
                .expect("complex is connected")
                .clone();
            route.push(step);
        }
        route.reverse();
        route
    }

    /// Builds a seam-consistent path visiting `route` (chart ids), starting at
    /// `start` in the first chart, with 1–3 points per segment.
    pub fn path_along<R: Rng>(
        cc: &ChartComplex,
        rng: &mut R,
        route: &[ChartId],
        start: Vector,
    ) -> DevPath {
        let n = cc.dimension();
        let mut segments: Vec<Segment> = Vec::new();
        let mut entry = start;
        for (i, chart) in route.iter().enumerate() {
            if i > 0 {
                let g = cc
                    .transition(&route[i - 1], chart)
                    .expect("route follows edges");
                let exit = segments.last().unwrap().points.last().unwrap();
                entry = g.inverse().unwrap().apply(exit).unwrap();
            }
            let mut points = vec![entry.clone()];
            for _ in 0..rng.gen_range(0..=2) {
                let step = Vector::from_fn(n, |_, _| rng.gen_range(-0.5..=0.5));
                points.push(points.last().unwrap() + step);
            }
            segments.push(Segment {
                chart: chart.clone(),
                points,
            });
        }
        DevPath::new(segments)
    }

    /// A random walk of `steps` edges from `from`, optionally closed up by the
    /// shortest route back to `close_at`.
    pub fn random_route<R: Rng>(
        cc: &ChartComplex,
        rng: &mut R,
        from: &str,
        steps: usize,
        close_at: Option<&str>,
    ) -> Vec<ChartId> {
        let mut route = vec![from.to_string()];
        for _ in 0..steps {
            let here = route.last().unwrap().clone();
            let nbs = cc.neighbors(&here);
            if let Some(next) = nbs.choose(rng) {
                route.push((*next).clone());
            }
        }
        if let Some(target) = close_at {
            let back = shortest_route(cc, route.last().unwrap(), target);
            route.extend(back.into_iter().skip(1));
        }
        route
    }

    /// A random complex with a loop `beta` at chart `"0"` and a path `gamma`
    /// starting where `beta` ends.
    pub struct EquivarianceFixture {
        pub complex: ChartComplex,
        pub beta: DevPath,
        pub gamma: DevPath,
    }

    pub fn equivariance_fixture<R: Rng>(
        rng: &mut R,
        charts: usize,
        n: usize,
    ) -> EquivarianceFixture {
        let complex = random_complex(rng, charts, n, charts);
        let start = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
        let steps = rng.gen_range(2..=6);
        let loop_route = random_route(&complex, rng, "0", steps, Some("0"));
        let beta = path_along(&complex, rng, &loop_route, start);
        let gamma_steps = rng.gen_range(0..=4);
        let gamma_route = random_route(&complex, rng, "0", gamma_steps, None);
        let gamma = path_along(
            &complex,
            rng,
            &gamma_route,
            beta.last_point().unwrap().clone(),
        );
        EquivarianceFixture {
            complex,
            beta,
            gamma,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    fn two_chart() -> ChartComplex {
        let mut cc = ChartComplex::new(2, vec!["0".into(), "1".into()]).unwrap();
        cc.add_transition("0", "1", AffineMap::translation_by(v(&[1.0, 0.0])))
            .unwrap();
        cc
    }

    #[test]
    fn single_segment_is_verbatim() {
        let cc = two_chart();
        let path = DevPath::single("0", vec![v(&[0.0, 0.0]), v(&[0.3, 0.4])]);
        let dev = develop(&cc, &path).unwrap();
        assert_eq!(dev.polyline, path.segments[0].points);
        assert!(dev.accumulated.is_identity(0.0));
        assert_eq!(dev.terminal, v(&[0.3, 0.4]));
    }

    #[test]
    fn two_chart_continuation() {
        let cc = two_chart();
        let path = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "1".into(),
                points: vec![v(&[-1.0, 0.0]), v(&[-1.0, 1.0])],
            },
        ]);
        let dev = develop(&cc, &path).unwrap();
        assert_eq!(
            dev.polyline,
            vec![v(&[0.0, 0.0]), v(&[0.0, 0.0]), v(&[0.0, 1.0])]
        );
        assert_eq!(dev.terminal, v(&[0.0, 1.0]));
        assert_eq!(dev.accumulated, AffineMap::translation_by(v(&[1.0, 0.0])));
    }

    #[test]
    fn seam_and_structure_errors() {
        let cc = two_chart();
        let broken = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "1".into(),
                points: vec![v(&[-1.0, 0.5])],
            },
        ]);
        match develop(&cc, &broken).unwrap_err() {
            DevError::SeamMismatch { segment, gap } => {
                assert_eq!(segment, 1);
                assert!((gap - 0.5).abs() < 1e-12);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert_eq!(
            develop(&cc, &DevPath::new(vec![])).unwrap_err(),
            DevError::EmptyPath
        );
        assert_eq!(
            develop(&cc, &DevPath::single("0", vec![])).unwrap_err(),
            DevError::EmptySegment(0)
        );
        assert_eq!(
            develop(&cc, &DevPath::single("7", vec![v(&[0.0, 0.0])])).unwrap_err(),
            DevError::UnknownChart("7".into())
        );
        let mut three = ChartComplex::new(2, vec!["0".into(), "1".into(), "2".into()]).unwrap();
        three
            .add_transition("0", "1", AffineMap::identity(2))
            .unwrap();
        let jump = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "2".into(),
                points: vec![v(&[0.0, 0.0])],
            },
        ]);
        assert!(matches!(
            develop(&three, &jump).unwrap_err(),
            DevError::MissingTransition { .. }
        ));
    }

    #[test]
    fn complex_invariants() {
        let mut cc = two_chart();
        let back = cc.transition("1", "0").unwrap();
        assert_eq!(back, AffineMap::translation_by(v(&[-1.0, 0.0])));
        assert!(cc
            .add_transition("1", "0", AffineMap::translation_by(v(&[-1.0, 0.0])))
            .is_ok());
        assert!(matches!(
            cc.add_transition("1", "0", AffineMap::translation_by(v(&[2.0, 0.0]))),
            Err(DevError::InconsistentTransitions { .. })
        ));
        assert!(matches!(
            cc.add_transition("0", "0", AffineMap::translation_by(v(&[2.0, 0.0]))),
            Err(DevError::NonIdentitySelfTransition(_))
        ));
        assert!(matches!(
            ChartComplex::new(2, vec!["a".into(), "a".into()]),
            Err(DevError::DuplicateChart(_))
        ));
    }

    #[test]
    fn loop_holonomy_fixtures() {
        let cc = two_chart();
        let stay = DevPath::single("0", vec![v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[0.0, 0.0])]);
        assert!(loop_holonomy(&cc, &stay).unwrap().is_identity(0.0));

        let back_and_forth = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "1".into(),
                points: vec![v(&[-1.0, 0.0]), v(&[-1.0, 2.0])],
            },
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 2.0])],
            },
        ]);
        assert!(loop_holonomy(&cc, &back_and_forth)
            .unwrap()
            .is_identity(0.0));

        let open = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "1".into(),
                points: vec![v(&[-1.0, 0.0])],
            },
        ]);
        assert!(matches!(
            loop_holonomy(&cc, &open).unwrap_err(),
            DevError::NotALoop { .. }
        ));
    }

    #[test]
    fn four_chart_translation_cycle() {
        // Translations around the cycle 0-1-2-3-0 sum to (2, 3).
        let ids: Vec<ChartId> = (0..4).map(|i| i.to_string()).collect();
        let mut cc = ChartComplex::new(2, ids).unwrap();
        let steps = [[1.0, 0.0], [0.5, 1.0], [0.0, 2.0], [0.5, 0.0]];
        for (i, s) in steps.iter().enumerate() {
            let to = ((i + 1) % 4).to_string();
            cc.add_transition(&i.to_string(), &to, AffineMap::translation_by(v(s)))
                .unwrap();
        }
        // Walk the cycle: the entry point of each chart is the previous exit
        // pulled back by the transition.
        let mut segments = vec![Segment {
            chart: "0".into(),
            points: vec![v(&[0.0, 0.0])],
        }];
        let mut p = v(&[0.0, 0.0]);
        for (i, s) in steps.iter().enumerate() {
            p -= v(s);
            segments.push(Segment {
                chart: ((i + 1) % 4).to_string(),
                points: vec![p.clone()],
            });
        }
        let hol = loop_holonomy(&cc, &DevPath::new(segments)).unwrap();
        assert!(hol.approx_eq(&AffineMap::translation_by(v(&[2.0, 3.0])), 1e-12));
    }

    #[test]
    fn equivariance_fixtures() {
        let cc = two_chart();
        let trivial = DevPath::single("0", vec![v(&[0.2, 0.2])]);
        let gamma = DevPath::single("0", vec![v(&[0.2, 0.2]), v(&[1.0, -1.0])]);
        let report = equivariance_check(&cc, &trivial, &gamma, 4).unwrap();
        assert!(report.passed && report.holonomy.is_identity(0.0));
        assert_eq!(report.checks, 2);

        // A cycle in a two-chart complex with two different transitions is
        // modelled by a third chart glued to both.
        let mut cc = ChartComplex::new(2, vec!["0".into(), "1".into(), "2".into()]).unwrap();
        cc.add_transition("0", "1", AffineMap::translation_by(v(&[1.0, 0.0])))
            .unwrap();
        cc.add_transition("1", "2", AffineMap::identity(2)).unwrap();
        cc.add_transition("2", "0", AffineMap::identity(2)).unwrap();
        let beta = DevPath::new(vec![
            Segment {
                chart: "0".into(),
                points: vec![v(&[0.0, 0.0])],
            },
            Segment {
                chart: "1".into(),
                points: vec![v(&[-1.0, 0.0])],
            },
            Segment {
                chart: "2".into(),
                points: vec![v(&[-1.0, 0.0])],
            },
            Segment {
                chart: "0".into(),
                points: vec![v(&[-1.0, 0.0])],
            },
        ]);
        let gamma = DevPath::single("0", vec![v(&[-1.0, 0.0]), v(&[3.0, 4.0])]);
        let report = equivariance_check(&cc, &beta, &gamma, 2).unwrap();
        assert!(report.passed);
        assert_eq!(report.holonomy, AffineMap::translation_by(v(&[1.0, 0.0])));
        let joined = develop(&cc, &beta.concat(&gamma)).unwrap();
        assert_eq!(joined.terminal, v(&[4.0, 4.0]));
    }

    #[test]
    fn json_encoding() {
        let json = r#"{"dimension":2,"charts":[0,"b"],"transitions":[{"from":0,"to":"b","map":{"linear":[[1,0],[0,1]],"translation":[1,0]}}]}"#;
        let cc: ChartComplex = serde_json::from_str(json).unwrap();
        assert_eq!(
            cc.transition("b", "0").unwrap(),
            AffineMap::translation_by(v(&[-1.0, 0.0]))
        );
        let back: ChartComplex =
            serde_json::from_str(&serde_json::to_string(&cc).unwrap()).unwrap();
        assert_eq!(back, cc);
        let path: DevPath =
            serde_json::from_str(r#"{"segments":[{"chart":0,"points":[[0,0],[1,2]]}]}"#).unwrap();
        assert_eq!(path.segments[0].chart, "0");
        assert_eq!(path.point_count(), 2);
    }
}
