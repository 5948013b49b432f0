//! Copies of a planar fundamental polygon under a group given by generators,
//! rendered as SVG.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffineMap, GroupPresentation, Letter, Vector, Word};
use crate::tol;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("polygon needs at least 3 vertices, found {0}")]
    TooFewVertices(usize),
    #[error("polygon vertices must be planar points")]
    NotPlanar,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon is not counterclockwise (signed area {0})")]
    NotCounterclockwise(f64),
    #[error("tiling needs a planar group, found dimension {0}")]
    GroupNotPlanar(usize),
    #[error("viewport must have positive extent in both axes")]
    EmptyViewport,
    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Affine(#[from] AffineError),
}

pub type Point2 = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub min: Point2,
    pub max: Point2,
}

impl Default for Viewport {
    fn default() -> Self {
        Self {
            min: [-1.0, -1.0],
            max: [5.0, 3.0],
        }
    }
}

impl Viewport {
    fn intersects(&self, lo: Point2, hi: Point2) -> bool {
        lo[0] <= self.max[0] && hi[0] >= self.min[0] && lo[1] <= self.max[1] && hi[1] >= self.min[1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingJob {
    pub polygon: Vec<Point2>,
    pub group: GroupPresentation,
    pub max_word_length: usize,
    #[serde(default)]
    pub viewport: Viewport,
}

impl TilingJob {
    pub fn validate(&self) -> Result<(), TilingError> {
        if self.group.dimension() != 2 {
            return Err(TilingError::GroupNotPlanar(self.group.dimension()));
        }
        validate_polygon(&self.polygon)?;
        let vp = &self.viewport;
        if !(vp.max[0] > vp.min[0] && vp.max[1] > vp.min[1]) {
            return Err(TilingError::EmptyViewport);
        }
        Ok(())
    }
}

pub fn signed_area(polygon: &[Point2]) -> f64 {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let (p, q) = (polygon[i], polygon[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
        / 2.0
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

pub fn validate_polygon(polygon: &[Point2]) -> Result<(), TilingError> {
    let n = polygon.len();
    if n < 3 {
        return Err(TilingError::TooFewVertices(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b) = (polygon[i], polygon[(i + 1) % n]);
            let (c, d) = (polygon[j], polygon[(j + 1) % n]);
            let hit = if adjacent {
                // Adjacent edges share one vertex; they may only overlap if collinear and folding back.
                let shared = if j == i + 1 { b } else { a };
                let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                cross(shared, p, q) == 0.0 && {
                    let u = [p[0] - shared[0], p[1] - shared[1]];
                    let v = [q[0] - shared[0], q[1] - shared[1]];
                    u[0] * v[0] + u[1] * v[1] > 0.0
                }
            } else {
                segments_intersect(a, b, c, d)
            };
            if hit {
                return Err(TilingError::SelfIntersecting(i, j));
            }
        }
    }
    let area = signed_area(polygon);
    if area <= 0.0 {
        return Err(TilingError::NotCounterclockwise(area));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub word: Word,
    pub map: AffineMap,
    pub polygon: Vec<Point2>,
}

fn fingerprint(map: &AffineMap) -> Vec<i64> {
    map.linear()
        .iter()
        .chain(map.translation().iter())
        .map(|x| (x / tol::FINGERPRINT).round() as i64)
        .collect()
}

/// All reduced words of length `0..=max_len` in lexicographic order within
/// each length, shorter words first.
pub fn reduced_words(generators: usize, max_len: usize) -> Vec<Word> {
    let mut letters = Vec::with_capacity(2 * generators);
    for g in 0..generators {
        letters.push(Letter::new(g, -1).expect("nonzero"));
        letters.push(Letter::new(g, 1).expect("nonzero"));
    }
    letters.sort();
    let mut layer = vec![Word::empty()];
    let mut all = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut ext = w.clone();
                ext.push(*l);
                next.push(ext);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn transform_polygon(map: &AffineMap, polygon: &[Point2]) -> Vec<Point2> {
    polygon
        .iter()
        .map(|p| {
            let q = map.apply(&Vector::from_column_slice(p)).expect("planar");
            [q[0], q[1]]
        })
        .collect()
}

/// Distinct group copies of the polygon meeting the viewport, ordered
/// lexicographically by the shortest word reaching each copy.
pub fn enumerate_tiles(job: &TilingJob) -> Result<Vec<Tile>, TilingError> {
    job.validate()?;
    let group = &job.group;
    let inverses = group
        .generators()
        .iter()
        .map(|g| g.map.inverse())
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = HashSet::new();
    let mut tiles = Vec::new();
    // Prefix maps are cached by extending the parent word's map.
    let mut maps: std::collections::HashMap<Word, AffineMap> = std::collections::HashMap::new();
    for word in reduced_words(group.len(), job.max_word_length) {
        let map = match word.letters().split_last() {
            None => AffineMap::identity(2),
            Some((last, prefix)) => {
                let parent = &maps[&Word::new(prefix.to_vec())];
                let factor = if last.exponent() > 0 {
                    &group.generators()[last.generator()].map
                } else {
                    &inverses[last.generator()]
                };
                parent.compose(factor)?
            }
        };
        maps.insert(word.clone(), map.clone());
        if !seen.insert(fingerprint(&map)) {
            continue;
        }
        let polygon = transform_polygon(&map, &job.polygon);
        let lo = polygon
            .iter()
            .fold([f64::INFINITY; 2], |a, p| [a[0].min(p[0]), a[1].min(p[1])]);
        let hi = polygon.iter().fold([f64::NEG_INFINITY; 2], |a, p| {
            [a[0].max(p[0]), a[1].max(p[1])]
        });
        if job.viewport.intersects(lo, hi) {
            tiles.push(Tile { word, map, polygon });
        }
    }
    tiles.sort_by(|a, b| a.word.cmp(&b.word));
    Ok(tiles)
}

/// Decimal rendering with at most 9 fractional digits and no trailing zeros.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{:.9}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

const EDGE_LABELS: [&str; 24] = [
    "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ", "σ", "τ",
    "υ", "φ", "χ", "ψ", "ω",
];

pub fn edge_label(i: usize) -> String {
    EDGE_LABELS
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("e{i}"))
}

fn path_data(polygon: &[Point2]) -> String {
    let mut d = String::new();
    for (i, p) in polygon.iter().enumerate() {
        let cmd = if i == 0 { "M" } else { "L" };
        let _ = write!(d, "{cmd} {} {} ", fmt_num(p[0]), fmt_num(p[1]));
    }
    d.push('Z');
    d
}

pub fn render_tiling(job: &TilingJob) -> Result<String, TilingError> {
    let tiles = enumerate_tiles(job)?;
    let vp = job.viewport;
    let width = 800.0;
    let scale = width / (vp.max[0] - vp.min[0]);
    let height = (vp.max[1] - vp.min[1]) * scale;
    let to_screen = |p: Point2| [(p[0] - vp.min[0]) * scale, (vp.max[1] - p[1]) * scale];

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt_num(width),
        fmt_num(height),
        fmt_num(width),
        fmt_num(height)
    );
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="viewport"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        fmt_num(vp.min[0]),
        fmt_num(vp.min[1]),
        fmt_num(vp.max[0] - vp.min[0]),
        fmt_num(vp.max[1] - vp.min[1])
    );
    let _ = writeln!(
        svg,
        r#"<g clip-path="url(#viewport)" transform="matrix({} 0 0 {} {} {})" fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round">"#,
        fmt_num(scale),
        fmt_num(-scale),
        fmt_num(-vp.min[0] * scale),
        fmt_num(vp.max[1] * scale),
        fmt_num(1.0 / scale)
    );
    for (i, tile) in tiles.iter().enumerate() {
        let word = tile.word.render(&job.group);
        if tile.word.is_empty() {
            let _ = writeln!(
                svg,
                r##"<path id="tile-{i}" class="fundamental" data-word="{word}" d="{}" stroke="#c0392b" stroke-width="{}"/>"##,
                path_data(&tile.polygon),
                fmt_num(2.0 / scale)
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<path id="tile-{i}" class="copy" data-word="{word}" d="{}"/>"#,
                path_data(&tile.polygon)
            );
        }
    }
    svg.push_str("</g>\n");
    if let Some(identity) = tiles.iter().find(|t| t.word.is_empty()) {
        let _ = writeln!(
            svg,
            r##"<g font-family="serif" font-size="16" fill="#c0392b" text-anchor="middle">"##
        );
        let centroid = identity
            .polygon
            .iter()
            .fold([0.0, 0.0], |a, p| [a[0] + p[0], a[1] + p[1]]);
        let n = identity.polygon.len() as f64;
        let centroid = [centroid[0] / n, centroid[1] / n];
        for (i, p) in identity.polygon.iter().enumerate() {
            let q = identity.polygon[(i + 1) % identity.polygon.len()];
            let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
            // Nudge labels toward the centroid so they sit inside Q.
            let at = to_screen([
                mid[0] + 0.12 * (centroid[0] - mid[0]),
                mid[1] + 0.12 * (centroid[1] - mid[1]),
            ]);
            let _ = writeln!(
                svg,
                r#"<text class="edge-label" x="{}" y="{}">{}</text>"#,
                fmt_num(at[0]),
                fmt_num(at[1] + 5.0),
                edge_label(i)
            );
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_tiling(job: &TilingJob, path: &Path) -> Result<(), TilingError> {
    let svg = render_tiling(job)?;
    std::fs::write(path, svg).map_err(|source| TilingError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// How far `g` is from carrying edge `from` of `polygon` onto edge `to`
/// (as an unordered pair of endpoints).
pub fn glued_edge_defect(g: &AffineMap, polygon: &[Point2], from: usize, to: usize) -> f64 {
    let n = polygon.len();
    let image = transform_polygon(g, &[polygon[from], polygon[(from + 1) % n]]);
    let target = [polygon[to], polygon[(to + 1) % n]];
    let dist = |a: Point2, b: Point2| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let same = dist(image[0], target[0]).max(dist(image[1], target[1]));
    let swapped = dist(image[0], target[1]).max(dist(image[1], target[0]));
    same.min(swapped)
}
