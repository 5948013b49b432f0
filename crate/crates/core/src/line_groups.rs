//! Affine maps of ℝ×ℝⁿ preserving the line ℝ×0.
//!
//! Such a map has the block shape
//!
//! ```text
//! | r  w | (x)   (d)
//! | 0  A | (y) + (0)
//! ```
//!
//! with `r ≠ 0` the scaling on the line, `w` a row covector (the shear row),
//! `A ∈ GL(n)` the transverse linear part and `d` the translation along the
//! line. This module decomposes maps into that shape, normalizes the shear
//! row by conjugation, and classifies cyclic groups generated by one such map
//! into the ways a proper, free, cocompact action can fail, each with a
//! numeric witness that can be replayed.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{
    eigen_one_space, matrix_rows, AffineError, AffineMap, Generator, GroupPresentation, Matrix,
    Vector,
};
use crate::linalg;
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LineGroupError {
    #[error("map does not preserve the line R x 0: column entries {column:?}, translation entries {translation:?}")]
    NotLinePreserving {
        column: Vec<f64>,
        translation: Vec<f64>,
    },
    #[error("line-preserving maps need dimension at least 2, found {0}")]
    DimensionTooSmall(usize),
    #[error("map scales the invariant line by {r} (expected 1)")]
    ScalesLine { r: f64 },
    #[error("line scale {0} is zero")]
    ZeroScale(f64),
    #[error("1 is an eigenvalue of the transverse part (kernel dimension {kernel_dim})")]
    EigenvalueOne { kernel_dim: usize },
    #[error("vector is not fixed by the transverse part (|Au - u| = {residual:e})")]
    NotAnEigenvector { residual: f64 },
    #[error("map does not fix the line direction: first column {column:?}")]
    NotParallel { column: Vec<f64> },
    #[error(transparent)]
    Affine(#[from] AffineError),
}

/// The `(r, w, A, d)` decomposition of a line-preserving map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlockFormRepr", into = "BlockFormRepr")]
pub struct BlockForm {
    r: f64,
    w: Vector,
    a: Matrix,
    d: f64,
}

#[derive(Serialize, Deserialize)]
struct BlockFormRepr {
    r: f64,
    w: Vec<f64>,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    d: f64,
}

impl TryFrom<BlockFormRepr> for BlockForm {
    type Error = LineGroupError;

    fn try_from(repr: BlockFormRepr) -> Result<Self, Self::Error> {
        let n = repr.w.len();
        if repr.a.len() != n || repr.a.iter().any(|row| row.len() != n) {
            return Err(AffineError::NotSquare {
                rows: repr.a.len(),
                cols: n,
            }
            .into());
        }
        let a = Matrix::from_fn(n, n, |i, j| repr.a[i][j]);
        BlockForm::new(repr.r, Vector::from_vec(repr.w), a, repr.d)
    }
}

impl From<BlockForm> for BlockFormRepr {
    fn from(b: BlockForm) -> Self {
        BlockFormRepr {
            r: b.r,
            w: b.w.iter().copied().collect(),
            a: matrix_rows(&b.a),
            d: b.d,
        }
    }
}

impl BlockForm {
    pub fn new(r: f64, w: Vector, a: Matrix, d: f64) -> Result<Self, LineGroupError> {
        if r.abs() <= tol::DETERMINANT {
            return Err(LineGroupError::ZeroScale(r));
        }
        if a.nrows() == 0 {
            return Err(LineGroupError::DimensionTooSmall(1));
        }
        if !a.is_square() || w.len() != a.nrows() {
            return Err(AffineError::DimensionMismatch {
                expected: a.nrows(),
                found: w.len(),
            }
            .into());
        }
        let det = a.determinant();
        if det.abs() <= tol::DETERMINANT {
            return Err(AffineError::Singular { det }.into());
        }
        Ok(Self { r, w, a, d })
    }

    /// Line scale `r`.
    pub fn line_scale(&self) -> f64 {
        self.r
    }

    /// Shear row `w`.
    pub fn shear_row(&self) -> &Vector {
        &self.w
    }

    /// Transverse linear part `A`.
    pub fn transverse(&self) -> &Matrix {
        &self.a
    }

    /// Translation `d` along the line.
    pub fn line_translation(&self) -> f64 {
        self.d
    }

    /// Transverse dimension `n`; the ambient space is ℝⁿ⁺¹.
    pub fn transverse_dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn acts_by_translation_on_line(&self) -> bool {
        (self.r - 1.0).abs() <= tol::COORD
    }

    /// The `(n+1)×(n+1)` affine map with this block shape.
    pub fn reassemble(&self) -> AffineMap {
        let n = self.transverse_dim();
        let linear = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => self.r,
            (0, j) => self.w[j - 1],
            (_, 0) => 0.0,
            (i, j) => self.a[(i - 1, j - 1)],
        });
        let mut translation = Vector::zeros(n + 1);
        translation[0] = self.d;
        AffineMap::new(linear, translation).expect("block form invariants imply invertibility")
    }
}

/// Splits a map preserving ℝ×0 into its `(r, w, A, d)` blocks.
pub fn block_decompose(f: &AffineMap) -> Result<BlockForm, LineGroupError> {
    let dim = f.dim();
    if dim < 2 {
        return Err(LineGroupError::DimensionTooSmall(dim));
    }
    let lin = f.linear();
    let tr = f.translation();
    let column: Vec<f64> = (1..dim).map(|i| lin[(i, 0)]).collect();
    let translation: Vec<f64> = (1..dim).map(|i| tr[i]).collect();
    if column
        .iter()
        .chain(&translation)
        .any(|x| x.abs() > tol::COORD)
    {
        return Err(LineGroupError::NotLinePreserving {
            column,
            translation,
        });
    }
    let w = Vector::from_fn(dim - 1, |j, _| lin[(0, j + 1)]);
    let a = lin.view((1, 1), (dim - 1, dim - 1)).into_owned();
    BlockForm::new(lin[(0, 0)], w, a, tr[0])
}

/// The homomorphism `h ↦ d` on maps acting by translation on the line.
pub fn translation_character(h: &BlockForm) -> Result<f64, LineGroupError> {
    if !h.acts_by_translation_on_line() {
        return Err(LineGroupError::ScalesLine { r: h.r });
    }
    Ok(h.d)
}

/// The shear `S = [[1, v], [0, I]]` that clears the shear row of `h`, with
/// `S h S⁻¹` in block form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearNormalForm {
    pub shear: Vec<f64>,
    pub conjugator: AffineMap,
    pub normalized: BlockForm,
}

pub fn shear_conjugator(v: &Vector) -> AffineMap {
    let n = v.len();
    let linear = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => 1.0,
        (0, j) => v[j - 1],
        (i, j) if i == j => 1.0,
        _ => 0.0,
    });
    AffineMap::linear_map(linear).expect("unipotent shear is invertible")
}

/// Solves `v(A − I) = −w` and conjugates `h` by the resulting shear so the
/// shear row vanishes.
pub fn shear_normal_form(h: &BlockForm) -> Result<ShearNormalForm, LineGroupError> {
    if !h.acts_by_translation_on_line() {
        return Err(LineGroupError::ScalesLine { r: h.r });
    }
    let kernel = eigen_one_space(&h.a);
    if !kernel.is_empty() {
        return Err(LineGroupError::EigenvalueOne {
            kernel_dim: kernel.len(),
        });
    }
    let n = h.transverse_dim();
    let shifted_t = (&h.a - Matrix::identity(n, n)).transpose();
    let v = shifted_t
        .lu()
        .solve(&(-&h.w))
        .ok_or(LineGroupError::EigenvalueOne { kernel_dim: 0 })?;
    let conjugator = shear_conjugator(&v);
    let conjugated = h.reassemble().conjugate_by(&conjugator)?;
    let normalized = block_decompose(&conjugated)?;
    Ok(ShearNormalForm {
        shear: v.iter().copied().collect(),
        conjugator,
        normalized,
    })
}

/// A point `(0, k·u)` fixed by `h` when the shear row pairs nontrivially with
/// a fixed transverse direction `u`. `None` when `w·u = 0`.
pub fn freeness_violation_witness(
    h: &BlockForm,
    u: &Vector,
) -> Result<Option<Vector>, LineGroupError> {
    if !h.acts_by_translation_on_line() {
        return Err(LineGroupError::ScalesLine { r: h.r });
    }
    if u.len() != h.transverse_dim() {
        return Err(AffineError::DimensionMismatch {
            expected: h.transverse_dim(),
            found: u.len(),
        }
        .into());
    }
    let residual = (&h.a * u - u).norm();
    if residual > tol::COORD * u.norm().max(1.0) {
        return Err(LineGroupError::NotAnEigenvector { residual });
    }
    let pairing = h.w.dot(u);
    if pairing.abs() <= tol::COORD {
        return Ok(None);
    }
    let k = -h.d / pairing;
    let mut point = Vector::zeros(u.len() + 1);
    point.rows_mut(1, u.len()).copy_from(&(u * k));
    Ok(Some(point))
}

/// The restriction `x ↦ r x + d` of a block map to the invariant line.
pub fn line_action(h: &BlockForm) -> (f64, f64) {
    (h.r, h.d)
}

// ---------------------------------------------------------------------------
// Classification of cyclic groups
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictTag {
    NonProperScaling,
    LineFixedPoints,
    FreenessViolation,
    NonCompactInvariantPlane,
    MappingTorus,
    CompleteObstruction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Orbit of a line point under `classified^power`, converging to the
    /// fixed point of the line action.
    Orbit {
        power: i64,
        line_fixed_point: Vec<f64>,
        points: Vec<Vec<f64>>,
        distances: Vec<f64>,
    },
    FixedPoint {
        point: Vec<f64>,
        /// The fixed transverse direction `u` and scalar `k` with point `(0, k u)`.
        #[serde(skip_serializing_if = "Option::is_none")]
        eigenvector: Option<Vec<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        k: Option<f64>,
    },
    /// Invariant plane through the origin.
    Plane {
        basis: Vec<Vec<f64>>,
    },
    MappingTorus {
        conjugator: AffineMap,
        shear: Vec<f64>,
        transverse: Vec<Vec<f64>>,
        line_translation: f64,
    },
    Text {
        verdict: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub tag: VerdictTag,
    pub witness: Witness,
    pub notes: String,
    /// Whether the input reversed the line and was squared before classifying.
    pub reflected: bool,
    /// The generator actually classified (the input or its square).
    pub classified: AffineMap,
}

/// Iteration budget for orbit witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitHorizon {
    pub max_iter: usize,
    pub target: f64,
}

impl Default for OrbitHorizon {
    fn default() -> Self {
        Self {
            max_iter: 60,
            target: 1e-6,
        }
    }
}

/// Largest power used to accelerate an orbit witness for `r` close to 1.
const MAX_ORBIT_STRIDE: i64 = 1 << 40;

const MAPPING_TORUS_NOTE: &str = "CompleteObstruction: after shear normalization the cyclic quotient is the mapping torus of the transverse part A; \
its top homology vanishes while a closed oriented manifold's does not, so no closed complete structure has this holonomy (reported, not computed)";

pub fn classify_cyclic(h: &AffineMap) -> Result<ClassificationVerdict, LineGroupError> {
    classify_cyclic_with(h, OrbitHorizon::default())
}

pub fn classify_cyclic_with(
    h: &AffineMap,
    horizon: OrbitHorizon,
) -> Result<ClassificationVerdict, LineGroupError> {
    let mut block = block_decompose(h)?;
    let mut classified = h.clone();
    let reflected = block.r < 0.0;
    let mut notes = Vec::new();
    if reflected {
        classified = h.compose(h)?;
        block = block_decompose(&classified)?;
        notes.push(format!(
            "input reverses the line (r = {}); classified its square, which lies in the index-two subgroup with r > 0",
            h.linear()[(0, 0)]
        ));
    }
    let verdict = |tag, witness, extra: Option<String>, notes: &mut Vec<String>| {
        notes.extend(extra);
        ClassificationVerdict {
            tag,
            witness,
            notes: notes.join("; "),
            reflected,
            classified: classified.clone(),
        }
    };
    let n = block.transverse_dim();

    if !block.acts_by_translation_on_line() {
        let witness = scaling_orbit(&block, horizon);
        let reached = matches!(&witness, Witness::Orbit { distances, .. }
            if distances.last().is_some_and(|d| *d < horizon.target));
        let note = if reached {
            format!(
                "line scale {} != 1: orbit accumulates at the line fixed point, action not proper",
                block.r
            )
        } else {
            format!(
                "line scale {} != 1: action not proper, but the orbit did not reach {:e} within {} iterations",
                block.r, horizon.target, horizon.max_iter
            )
        };
        return Ok(verdict(
            VerdictTag::NonProperScaling,
            witness,
            Some(note),
            &mut notes,
        ));
    }

    if block.d.abs() <= tol::COORD {
        let witness = Witness::FixedPoint {
            point: vec![0.0; n + 1],
            eigenvector: None,
            k: None,
        };
        let note = "acts trivially on the line: every line point is fixed".to_string();
        return Ok(verdict(
            VerdictTag::LineFixedPoints,
            witness,
            Some(note),
            &mut notes,
        ));
    }

    let kernel = eigen_one_space(&block.a);
    if kernel.is_empty() {
        let nf = shear_normal_form(&block)?;
        let witness = Witness::MappingTorus {
            conjugator: nf.conjugator,
            shear: nf.shear,
            transverse: matrix_rows(&block.a),
            line_translation: block.d,
        };
        return Ok(verdict(
            VerdictTag::MappingTorus,
            witness,
            Some(MAPPING_TORUS_NOTE.to_string()),
            &mut notes,
        ));
    }

    for u in &kernel {
        let pairing = block.w.dot(u);
        if pairing.abs() > tol::COORD {
            let point =
                freeness_violation_witness(&block, u)?.expect("nonzero pairing yields a witness");
            let witness = Witness::FixedPoint {
                point: point.iter().copied().collect(),
                eigenvector: Some(u.iter().copied().collect()),
                k: Some(-block.d / pairing),
            };
            let note = format!("shear row pairs with a fixed transverse direction (w.u = {pairing}): action not free");
            return Ok(verdict(
                VerdictTag::FreenessViolation,
                witness,
                Some(note),
                &mut notes,
            ));
        }
    }

    let u = &kernel[0];
    let mut e1 = vec![0.0; n + 1];
    e1[0] = 1.0;
    let mut lifted = vec![0.0];
    lifted.extend(u.iter().copied());
    let note = format!(
        "shear row is perpendicular to ker(A - I) (dimension {}): the plane span{{(1,0),(0,u)}} is invariant and its quotient is a non-compact cylinder",
        kernel.len()
    );
    Ok(verdict(
        VerdictTag::NonCompactInvariantPlane,
        Witness::Plane {
            basis: vec![e1, lifted],
        },
        Some(note),
        &mut notes,
    ))
}

fn scaling_orbit(block: &BlockForm, horizon: OrbitHorizon) -> Witness {
    let (r, d) = line_action(block);
    let fixed = d / (1.0 - r);
    // Contracting direction: forward powers when r < 1, inverse powers when r > 1.
    let (rho, sign) = if r < 1.0 { (r, 1) } else { (1.0 / r, -1) };
    // Aim below the target so the last step clears it strictly.
    let per_step = (0.5 * horizon.target).ln() / (horizon.max_iter.max(1) as f64 * rho.ln());
    let stride = (per_step.ceil() as i64).clamp(1, MAX_ORBIT_STRIDE);
    let power = sign * stride;
    let (gr, gd) = line_power(r, d, power);
    let n = block.transverse_dim();
    let embed = |x: f64| {
        let mut p = vec![0.0; n + 1];
        p[0] = x;
        p
    };
    let mut x = fixed + 1.0;
    let mut points = vec![embed(x)];
    let mut distances = vec![(x - fixed).abs()];
    for _ in 0..horizon.max_iter {
        if distances.last().is_some_and(|dist| *dist < horizon.target) {
            break;
        }
        x = gr * x + gd;
        points.push(embed(x));
        distances.push((x - fixed).abs());
    }
    let mut fp = vec![0.0; n + 1];
    fp[0] = fixed;
    Witness::Orbit {
        power,
        line_fixed_point: fp,
        points,
        distances,
    }
}

/// `(r, d)` of the k-th power of `x ↦ r x + d`, computed through the fixed point.
fn line_power(r: f64, d: f64, k: i64) -> (f64, f64) {
    let fixed = d / (1.0 - r);
    let rk = r.powf(k as f64);
    (rk, fixed * (1.0 - rk))
}

impl ClassificationVerdict {
    /// Checks the witness against the classified map.
    pub fn replay(&self) -> Result<(), String> {
        let h = &self.classified;
        let block = block_decompose(h).map_err(|e| e.to_string())?;
        match (&self.tag, &self.witness) {
            (
                VerdictTag::NonProperScaling,
                Witness::Orbit {
                    power,
                    line_fixed_point,
                    points,
                    distances,
                },
            ) => {
                let fixed = Vector::from_column_slice(line_fixed_point);
                let moved = h.apply(&fixed).map_err(|e| e.to_string())?;
                if (&moved - &fixed).norm() > tol::COORD * fixed.norm().max(1.0) {
                    return Err("line fixed point is not fixed".into());
                }
                let (r, d) = line_action(&block);
                let (gr, gd) = line_power(r, d, *power);
                for pair in points.windows(2) {
                    if pair[0][1..].iter().chain(&pair[1][1..]).any(|y| *y != 0.0) {
                        return Err("orbit leaves the invariant line".into());
                    }
                    let expected = gr * pair[0][0] + gd;
                    if (expected - pair[1][0]).abs() > tol::COORD * expected.abs().max(1.0) {
                        return Err("orbit step does not match the map".into());
                    }
                }
                if distances.windows(2).any(|w| w[1] >= w[0]) {
                    return Err("orbit distances are not strictly decreasing".into());
                }
                match distances.last() {
                    Some(last) if *last < 1e-6 => Ok(()),
                    _ => Err("orbit did not approach the fixed point within the horizon".into()),
                }
            }
            (
                VerdictTag::LineFixedPoints | VerdictTag::FreenessViolation,
                Witness::FixedPoint { point, .. },
            ) => {
                let p = Vector::from_column_slice(point);
                let q = h.apply(&p).map_err(|e| e.to_string())?;
                if (&q - &p).norm() <= tol::COORD * p.norm().max(1.0) {
                    Ok(())
                } else {
                    Err(format!("point moved by {:e}", (&q - &p).norm()))
                }
            }
            (VerdictTag::NonCompactInvariantPlane, Witness::Plane { basis }) => {
                let basis: Vec<Vector> =
                    basis.iter().map(|b| Vector::from_column_slice(b)).collect();
                let dim = h.dim();
                let mut probes = vec![Vector::zeros(dim)];
                probes.extend(basis.iter().cloned());
                probes.push(basis.iter().sum());
                for p in probes {
                    let q = h.apply(&p).map_err(|e| e.to_string())?;
                    let off = distance_to_span(&q, &basis);
                    if off > tol::COORD * q.norm().max(1.0) {
                        return Err(format!("plane not invariant: image off by {off:e}"));
                    }
                }
                Ok(())
            }
            (VerdictTag::MappingTorus, Witness::MappingTorus { conjugator, .. }) => {
                if !eigen_one_space(&block.a).is_empty() {
                    return Err("transverse part has eigenvalue 1".into());
                }
                let normalized = h.conjugate_by(conjugator).map_err(|e| e.to_string())?;
                let nb = block_decompose(&normalized).map_err(|e| e.to_string())?;
                if nb.w.amax() > tol::COORD {
                    return Err(format!("shear row not cleared: {:e}", nb.w.amax()));
                }
                Ok(())
            }
            (VerdictTag::CompleteObstruction, Witness::Text { .. }) => Ok(()),
            (tag, _) => Err(format!("witness kind does not match tag {tag:?}")),
        }
    }
}

fn distance_to_span(q: &Vector, basis: &[Vector]) -> f64 {
    // Gram–Schmidt on the (few) basis vectors, then subtract the projection.
    let mut ortho: Vec<Vector> = Vec::new();
    for b in basis {
        let mut e = b.clone();
        for o in &ortho {
            e -= o * o.dot(b);
        }
        let norm = e.norm();
        if norm > tol::COORD {
            ortho.push(e / norm);
        }
    }
    let mut rest = q.clone();
    for o in &ortho {
        rest -= o * o.dot(q);
    }
    rest.norm()
}

// ---------------------------------------------------------------------------
// Radiant structures and subgroup membership
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiantConjugation {
    pub fixed_point: Vec<f64>,
    /// Translation moving the common fixed point to the origin.
    pub conjugator: AffineMap,
    /// Generators conjugated to linear maps.
    pub conjugated: GroupPresentation,
    pub residual: f64,
}

/// Finds a point fixed by every generator, if one exists, and the
/// presentation conjugated so that point sits at the origin.
pub fn radiant_conjugator(group: &GroupPresentation) -> Option<RadiantConjugation> {
    let n = group.dimension();
    let gens = group.generators();
    let (p, residual) = if gens.is_empty() {
        (Vector::zeros(n), 0.0)
    } else {
        let rows = gens.len() * n;
        let mut stacked = DMatrix::zeros(rows, n);
        let mut rhs = Vector::zeros(rows);
        for (i, g) in gens.iter().enumerate() {
            let block = g.map.linear() - Matrix::identity(n, n);
            stacked.view_mut((i * n, 0), (n, n)).copy_from(&block);
            rhs.rows_mut(i * n, n).copy_from(&(-g.map.translation()));
        }
        let ls = linalg::least_squares(&stacked, &rhs);
        (ls.x, ls.residual)
    };
    if residual > tol::COORD * p.norm().max(1.0) {
        return None;
    }
    let conjugator = AffineMap::translation_by(-&p);
    let conjugated = group.conjugate_by(&conjugator).ok()?;
    Some(RadiantConjugation {
        fixed_point: p.iter().copied().collect(),
        conjugator,
        conjugated,
        residual,
    })
}

/// Named subgroups of line-preserving maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupTag {
    /// All maps preserving the line.
    G,
    /// Positive scale on the line.
    #[serde(rename = "G_plus")]
    GPlus,
    /// Linear part fixes the line direction; translation unconstrained.
    P,
    /// Pure translations on the line.
    #[serde(rename = "G_trans")]
    GTrans,
    /// Translations and reflections on the line.
    #[serde(rename = "G_trans_refl")]
    GTransRefl,
}

impl std::str::FromStr for GroupTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" => Ok(GroupTag::G),
            "G_plus" | "G+" => Ok(GroupTag::GPlus),
            "P" => Ok(GroupTag::P),
            "G_trans" => Ok(GroupTag::GTrans),
            "G_trans_refl" => Ok(GroupTag::GTransRefl),
            other => Err(format!("unknown group tag {other:?}")),
        }
    }
}

pub fn membership(f: &AffineMap, tag: GroupTag) -> bool {
    if f.dim() < 2 {
        return false;
    }
    let lin = f.linear();
    let below_first = (1..f.dim()).all(|i| lin[(i, 0)].abs() <= tol::COORD);
    if tag == GroupTag::P {
        return below_first && (lin[(0, 0)] - 1.0).abs() <= tol::COORD;
    }
    let Ok(block) = block_decompose(f) else {
        return false;
    };
    let r = block.r;
    match tag {
        GroupTag::G => true,
        GroupTag::GPlus => r > 0.0,
        GroupTag::GTrans => (r - 1.0).abs() <= tol::COORD,
        GroupTag::GTransRefl => (r.abs() - 1.0).abs() <= tol::COORD,
        GroupTag::P => unreachable!(),
    }
}

pub fn presentation_in(group: &GroupPresentation, tag: GroupTag) -> Result<(), Generator> {
    match group.generators().iter().find(|g| !membership(&g.map, tag)) {
        Some(g) => Err(g.clone()),
        None => Ok(()),
    }
}
