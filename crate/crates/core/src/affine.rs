//! Affine group algebra over ℝⁿ: maps, composition, inversion, fixed-point
//! sets, and evaluation of words in a finitely generated group.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::tol;

/// A point or direction in ℝⁿ.
pub type Vector = DVector<f64>;
/// A square linear part.
pub type Matrix = DMatrix<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("linear part is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear part is singular (|det| = {det:e})")]
    Singular { det: f64 },
    #[error("non-finite entry in affine map")]
    NonFinite,
    #[error("generator index {index} out of range ({count} generators)")]
    InvalidGenerator { index: usize, count: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("word letter has zero exponent")]
    ZeroExponent,
}

/// An affine automorphism `x ↦ linear·x + translation` of ℝⁿ.
///
/// Construction rejects maps whose linear part has `|det| < 1e-12`, so every
/// value of this type is invertible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AffineMapRepr", into = "AffineMapRepr")]
pub struct AffineMap {
    linear: Matrix,
    translation: Vector,
}

#[derive(Serialize, Deserialize)]
struct AffineMapRepr {
    linear: Vec<Vec<f64>>,
    translation: Vec<f64>,
}

impl TryFrom<AffineMapRepr> for AffineMap {
    type Error = AffineError;

    fn try_from(repr: AffineMapRepr) -> Result<Self, Self::Error> {
        let n = repr.translation.len();
        let rows = repr.linear.len();
        if let Some(bad) = repr.linear.iter().find(|row| row.len() != rows) {
            return Err(AffineError::NotSquare {
                rows,
                cols: bad.len(),
            });
        }
        if rows != n {
            return Err(AffineError::DimensionMismatch {
                expected: rows,
                found: n,
            });
        }
        let linear = Matrix::from_fn(rows, rows, |i, j| repr.linear[i][j]);
        AffineMap::new(linear, Vector::from_vec(repr.translation))
    }
}

impl From<AffineMap> for AffineMapRepr {
    fn from(map: AffineMap) -> Self {
        AffineMapRepr {
            linear: matrix_rows(&map.linear),
            translation: map.translation.iter().copied().collect(),
        }
    }
}

pub(crate) fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Vector) -> Result<Self, AffineError> {
        if !linear.is_square() {
            return Err(AffineError::NotSquare {
                rows: linear.nrows(),
                cols: linear.ncols(),
            });
        }
        let n = linear.nrows();
        if n == 0 {
            return Err(AffineError::ZeroDimension);
        }
        if translation.len() != n {
            return Err(AffineError::DimensionMismatch {
                expected: n,
                found: translation.len(),
            });
        }
        if linear
            .iter()
            .chain(translation.iter())
            .any(|v| !v.is_finite())
        {
            return Err(AffineError::NonFinite);
        }
        let det = linear.determinant();
        if det.abs() < tol::DETERMINANT {
            return Err(AffineError::Singular { det });
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    /// Builds a map from row-major slices; convenient for fixtures and tests.
    pub fn from_rows(rows: &[&[f64]], translation: &[f64]) -> Result<Self, AffineError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AffineError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        let linear = Matrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(linear, Vector::from_column_slice(translation))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            linear: Matrix::identity(n, n),
            translation: Vector::zeros(n),
        }
    }

    pub fn translation_by(v: Vector) -> Self {
        assert!(!v.is_empty(), "dimension must be at least 1");
        let n = v.len();
        Self {
            linear: Matrix::identity(n, n),
            translation: v,
        }
    }

    pub fn linear_map(linear: Matrix) -> Result<Self, AffineError> {
        let n = linear.nrows();
        Self::new(linear, Vector::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap, AffineError> {
        self.check_dim(other.dim())?;
        Ok(self.compose_unchecked(other))
    }

    // Products of invertible maps stay invertible; skip the determinant gate
    // so long words never fail on accumulated scale.
    pub(crate) fn compose_unchecked(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap, AffineError> {
        let inv = self
            .linear
            .clone()
            .try_inverse()
            .ok_or(AffineError::Singular {
                det: self.linear.determinant(),
            })?;
        let translation = -(&inv * &self.translation);
        Ok(AffineMap {
            linear: inv,
            translation,
        })
    }

    pub fn apply(&self, p: &Vector) -> Result<Vector, AffineError> {
        self.check_dim(p.len())?;
        Ok(&self.linear * p + &self.translation)
    }

    /// Applies only the linear part (maps tangent vectors).
    pub fn apply_linear(&self, v: &Vector) -> Result<Vector, AffineError> {
        self.check_dim(v.len())?;
        Ok(&self.linear * v)
    }

    /// `self^k` by binary powering; negative `k` powers the inverse.
    pub fn pow(&self, k: i64) -> Result<AffineMap, AffineError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = AffineMap::identity(self.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Conjugate `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &AffineMap) -> Result<AffineMap, AffineError> {
        c.compose(self)?.compose(&c.inverse()?)
    }

    /// Largest deviation between corresponding entries, with linear entries
    /// measured relative to their magnitude and translation entries absolutely.
    pub fn deviation(&self, other: &AffineMap) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let lin = self
            .linear
            .iter()
            .zip(other.linear.iter())
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max);
        let tr = (&self.translation - &other.translation).amax();
        lin.max(tr)
    }

    pub fn approx_eq(&self, other: &AffineMap, tolerance: f64) -> bool {
        self.deviation(other) <= tolerance
    }

    pub fn is_identity(&self, tolerance: f64) -> bool {
        self.approx_eq(&AffineMap::identity(self.dim()), tolerance)
    }

    fn check_dim(&self, found: usize) -> Result<(), AffineError> {
        if found != self.dim() {
            return Err(AffineError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).map_err(|_| fmt::Error)?
        )
    }
}

/// Outcome of solving `(A − I)x = −b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedPointSet {
    Unique {
        point: Vec<f64>,
    },
    /// `point + span(directions)`; the directions are orthonormal.
    Flat {
        point: Vec<f64>,
        directions: Vec<Vec<f64>>,
    },
    Empty,
}

impl FixedPointSet {
    pub fn point(&self) -> Option<Vector> {
        match self {
            FixedPointSet::Unique { point } | FixedPointSet::Flat { point, .. } => {
                Some(Vector::from_column_slice(point))
            }
            FixedPointSet::Empty => None,
        }
    }
}

pub fn fixed_points(f: &AffineMap) -> FixedPointSet {
    let n = f.dim();
    let shifted = f.linear() - Matrix::identity(n, n);
    let rhs = -f.translation();
    let kernel = linalg::kernel_basis(&shifted);
    let solution = linalg::least_squares(&shifted, &rhs);
    let scale = rhs.norm().max(1.0);
    if solution.residual > tol::COORD * scale {
        return FixedPointSet::Empty;
    }
    let point = solution.x.iter().copied().collect();
    if kernel.is_empty() {
        FixedPointSet::Unique { point }
    } else {
        FixedPointSet::Flat {
            point,
            directions: kernel.iter().map(|u| u.iter().copied().collect()).collect(),
        }
    }
}

/// Orthonormal basis of `ker(A − I)`; empty when 1 is not an eigenvalue.
pub fn eigen_one_space(a: &Matrix) -> Vec<Vector> {
    assert!(a.is_square(), "eigen_one_space needs a square matrix");
    let n = a.nrows();
    linalg::kernel_basis(&(a - Matrix::identity(n, n)))
}

/// A named generator of a presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub map: AffineMap,
}

/// Finitely many named affine generators of a common dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr")]
pub struct GroupPresentation {
    dimension: usize,
    generators: Vec<Generator>,
}

#[derive(Deserialize)]
struct PresentationRepr {
    dimension: usize,
    generators: Vec<Generator>,
}

impl TryFrom<PresentationRepr> for GroupPresentation {
    type Error = AffineError;

    fn try_from(repr: PresentationRepr) -> Result<Self, Self::Error> {
        GroupPresentation::new(repr.dimension, repr.generators)
    }
}

impl GroupPresentation {
    pub fn new(dimension: usize, generators: Vec<Generator>) -> Result<Self, AffineError> {
        if dimension == 0 {
            return Err(AffineError::ZeroDimension);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.map.dim() != dimension {
                return Err(AffineError::DimensionMismatch {
                    expected: dimension,
                    found: g.map.dim(),
                });
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(AffineError::DuplicateName(g.name.clone()));
            }
        }
        Ok(Self {
            dimension,
            generators,
        })
    }

    pub fn from_maps<S: Into<String>>(
        dimension: usize,
        maps: impl IntoIterator<Item = (S, AffineMap)>,
    ) -> Result<Self, AffineError> {
        let generators = maps
            .into_iter()
            .map(|(name, map)| Generator {
                name: name.into(),
                map,
            })
            .collect();
        Self::new(dimension, generators)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, index: usize) -> Result<&AffineMap, AffineError> {
        self.generators
            .get(index)
            .map(|g| &g.map)
            .ok_or(AffineError::InvalidGenerator {
                index,
                count: self.generators.len(),
            })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Conjugates every generator by `c`.
    pub fn conjugate_by(&self, c: &AffineMap) -> Result<GroupPresentation, AffineError> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    map: g.map.conjugate_by(c)?,
                })
            })
            .collect::<Result<Vec<_>, AffineError>>()?;
        GroupPresentation::new(self.dimension, generators)
    }
}

/// One letter `g_index^exponent` of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, i32)", into = "(usize, i32)")]
pub struct Letter {
    generator: usize,
    exponent: i32,
}

impl Letter {
    pub fn new(generator: usize, exponent: i32) -> Result<Self, AffineError> {
        if exponent == 0 {
            return Err(AffineError::ZeroExponent);
        }
        Ok(Self {
            generator,
            exponent,
        })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl TryFrom<(usize, i32)> for Letter {
    type Error = AffineError;

    fn try_from((generator, exponent): (usize, i32)) -> Result<Self, Self::Error> {
        Letter::new(generator, exponent)
    }
}

impl From<Letter> for (usize, i32) {
    fn from(l: Letter) -> Self {
        (l.generator, l.exponent)
    }
}

/// A formal word in the generators of a presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from `(generator, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> Result<Self, AffineError> {
        pairs
            .iter()
            .map(|&(g, e)| Letter::new(g, e))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Renders the word with generator names, e.g. `a b^-1`.
    pub fn render(&self, group: &GroupPresentation) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = group
                    .generators()
                    .get(l.generator)
                    .map(|g| g.name.as_str())
                    .unwrap_or("?");
                if l.exponent == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{}", l.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Left-to-right product of the generator images named by `word`.
pub fn evaluate_word(group: &GroupPresentation, word: &Word) -> Result<AffineMap, AffineError> {
    let mut acc = AffineMap::identity(group.dimension());
    for letter in word.letters() {
        let g = group.generator(letter.generator)?;
        let factor = if letter.exponent < 0 {
            g.inverse()?
        } else {
            g.clone()
        };
        for _ in 0..letter.exponent.unsigned_abs() {
            acc = acc.compose_unchecked(&factor);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn similarity_a() -> AffineMap {
        AffineMap::from_rows(&[&[0.5, 0.0], &[0.0, 0.5]], &[0.0, 1.0]).unwrap()
    }

    fn similarity_b() -> AffineMap {
        AffineMap::from_rows(&[&[1.0, -1.0], &[1.0, 1.0]], &[2.0, 0.0]).unwrap()
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn compose_identity_and_square() {
        let a = similarity_a();
        assert_eq!(AffineMap::identity(2).compose(&a).unwrap(), a);
        let aa = a.compose(&a).unwrap();
        let expected = AffineMap::from_rows(&[&[0.25, 0.0], &[0.0, 0.25]], &[0.0, 1.5]).unwrap();
        assert!(aa.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let b = similarity_b();
        assert!(b.compose(&b.inverse().unwrap()).unwrap().is_identity(1e-12));
    }

    #[test]
    fn compose_rejects_dimension_mismatch() {
        let err = AffineMap::identity(2)
            .compose(&AffineMap::identity(3))
            .unwrap_err();
        assert_eq!(
            err,
            AffineError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn inverse_examples() {
        assert!(AffineMap::identity(3).inverse().unwrap().is_identity(0.0));
        let t = AffineMap::translation_by(v(&[1.0, -2.0]));
        assert_eq!(
            t.inverse().unwrap(),
            AffineMap::translation_by(v(&[-1.0, 2.0]))
        );
        let binv = similarity_b().inverse().unwrap();
        let expected = AffineMap::from_rows(&[&[0.5, 0.5], &[-0.5, 0.5]], &[-1.0, 1.0]).unwrap();
        assert!(binv.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn singular_maps_are_rejected() {
        let err = AffineMap::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]], &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, AffineError::Singular { .. }));
        let err = AffineMap::from_rows(&[&[1e-7, 0.0], &[0.0, 1e-6]], &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, AffineError::Singular { .. }));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(
            similarity_b().apply(&v(&[0.0, 0.0])).unwrap(),
            v(&[2.0, 0.0])
        );
        assert_eq!(
            similarity_a().apply(&v(&[2.0, 0.0])).unwrap(),
            v(&[1.0, 1.0])
        );
        let p = v(&[3.0, -4.0, 5.0]);
        assert_eq!(AffineMap::identity(3).apply(&p).unwrap(), p);
        assert!(AffineMap::identity(3).apply(&v(&[1.0])).is_err());
    }

    #[test]
    fn word_evaluation() {
        let g = GroupPresentation::from_maps(2, [("a", similarity_a()), ("b", similarity_b())])
            .unwrap();
        assert!(evaluate_word(&g, &Word::empty()).unwrap().is_identity(0.0));
        let cancel = Word::from_pairs(&[(0, 1), (0, -1)]).unwrap();
        assert!(evaluate_word(&g, &cancel).unwrap().is_identity(1e-12));
        let ab = evaluate_word(&g, &Word::from_pairs(&[(0, 1), (1, 1)]).unwrap()).unwrap();
        let a = evaluate_word(&g, &Word::from_pairs(&[(0, 1)]).unwrap()).unwrap();
        let b = evaluate_word(&g, &Word::from_pairs(&[(1, 1)]).unwrap()).unwrap();
        assert!(ab.approx_eq(&a.compose(&b).unwrap(), 1e-12));
        let a3 = evaluate_word(&g, &Word::from_pairs(&[(0, 3)]).unwrap()).unwrap();
        assert!(a3.approx_eq(&similarity_a().pow(3).unwrap(), 1e-12));
        let bad = Word::from_pairs(&[(2, 1)]).unwrap();
        assert_eq!(
            evaluate_word(&g, &bad).unwrap_err(),
            AffineError::InvalidGenerator { index: 2, count: 2 }
        );
        assert_eq!(Letter::new(0, 0).unwrap_err(), AffineError::ZeroExponent);
        assert_eq!(
            Word::from_pairs(&[(0, 1), (1, -2)]).unwrap().render(&g),
            "a b^-2"
        );
    }

    #[test]
    fn presentation_validation() {
        let err = GroupPresentation::from_maps(2, [("a", similarity_a()), ("a", similarity_b())]);
        assert_eq!(err.unwrap_err(), AffineError::DuplicateName("a".into()));
        let err = GroupPresentation::from_maps(3, [("a", similarity_a())]);
        assert!(matches!(
            err.unwrap_err(),
            AffineError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn fixed_point_cases() {
        let f = AffineMap::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]], &[1.0, 0.0]).unwrap();
        match fixed_points(&f) {
            FixedPointSet::Unique { point } => {
                assert!((point[0] + 1.0).abs() < 1e-12 && point[1].abs() < 1e-12)
            }
            other => panic!("expected unique point, got {other:?}"),
        }
        let t = AffineMap::translation_by(v(&[0.0, 1.0]));
        assert_eq!(fixed_points(&t), FixedPointSet::Empty);
        match fixed_points(&AffineMap::identity(3)) {
            FixedPointSet::Flat { directions, .. } => assert_eq!(directions.len(), 3),
            other => panic!("expected the whole space, got {other:?}"),
        }
        // The similarity a fixes (0, 2).
        let p = fixed_points(&similarity_a()).point().unwrap();
        assert!((p - v(&[0.0, 2.0])).norm() < 1e-12);
    }

    #[test]
    fn eigen_one_space_cases() {
        assert_eq!(eigen_one_space(&Matrix::identity(2, 2)).len(), 2);
        assert!(eigen_one_space(&Matrix::from_diagonal(&v(&[2.0, 3.0]))).is_empty());
        let basis = eigen_one_space(&Matrix::from_diagonal(&v(&[1.0, 5.0])));
        assert_eq!(basis.len(), 1);
        assert!((&basis[0] - v(&[1.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn json_encoding() {
        let b = similarity_b();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            r#"{"linear":[[1.0,-1.0],[1.0,1.0]],"translation":[2.0,0.0]}"#
        );
        assert_eq!(serde_json::from_str::<AffineMap>(&json).unwrap(), b);
        let singular = r#"{"linear":[[0,0],[0,1]],"translation":[0,0]}"#;
        assert!(serde_json::from_str::<AffineMap>(singular).is_err());
        let ragged = r#"{"linear":[[1,0],[0]],"translation":[0,0]}"#;
        assert!(serde_json::from_str::<AffineMap>(ragged).is_err());
        let g: GroupPresentation = serde_json::from_str(
            r#"{"dimension":2,"generators":[{"name":"b","map":{"linear":[[1,-1],[1,1]],"translation":[2,0]}}]}"#,
        )
        .unwrap();
        assert_eq!(g.generator(0).unwrap(), &b);
    }
}
