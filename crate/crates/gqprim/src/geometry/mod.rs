//! Explicit generalised quadrangles over small fields: construction,
//! axiom verification, collineations, and fixed-substructure analysis.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::perm::Permutation;

mod aut;
mod fixed;

pub use aut::automorphism_group;
pub use fixed::{fixed_substructure, fixity_profile, SubstructureCase, SubstructureClass};

/// Order (s, t) of a generalised quadrangle: lines have s+1 points,
/// points lie on t+1 lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GQOrder {
    pub s: u64,
    pub t: u64,
}

impl GQOrder {
    pub fn num_points(&self) -> u64 {
        (self.s + 1) * (self.s * self.t + 1)
    }

    pub fn num_lines(&self) -> u64 {
        (self.t + 1) * (self.s * self.t + 1)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("line {line} contains out-of-range point {point}")]
    PointOutOfRange { line: usize, point: u32 },
    #[error("line {line} repeats a point")]
    RepeatedPoint { line: usize },
    #[error("line {line} duplicates an earlier line")]
    DuplicateLine { line: usize },
    #[error("unsupported geometry: {kind} over GF({q})")]
    Unsupported { kind: String, q: u32 },
    #[error("permutation degree {got} does not match point count {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("image of line {line} is not a line")]
    NotACollineation { line: usize },
    #[error("the identity collineation has no fixed-substructure classification")]
    IdentityExcluded,
    #[error("fixed structure matches no case of the classification")]
    Unclassifiable,
    #[error("case bound violated: {fixed} fixed points in case {case}")]
    CaseBoundViolated { case: String, fixed: usize },
    #[error("geometry has {points} points, over the search limit {limit}")]
    TooManyPoints { points: u32, limit: u32 },
    #[error("group order {order} exceeds enumeration budget {budget}")]
    EnumerationBudget { order: String, budget: u64 },
    #[error("collinearity graph is not strongly regular: {detail}")]
    NotStronglyRegular { detail: String },
}

/// First failure found while checking the generalised-quadrangle axioms.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GqViolation {
    #[error("geometry has no lines")]
    NoLines,
    #[error("line {line} has {size} points, expected {expected}")]
    LineSizeVaries { line: usize, size: usize, expected: usize },
    #[error("point {point} lies on {degree} lines, expected {expected}")]
    PointDegreeVaries { point: u32, degree: usize, expected: usize },
    #[error("points {p} and {q} lie on two common lines")]
    TwoCommonLines { p: u32, q: u32 },
    #[error("point {point} sees {count} points of line {line}, expected exactly 1")]
    PerpCountOffLine { point: u32, line: usize, count: usize },
    #[error("not thick: order ({s}, {t})")]
    NotThick { s: u64, t: u64 },
}

/// Row-major bit matrix used for collinearity and incidence adjacency.
#[derive(Debug, Clone)]
pub(crate) struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    pub(crate) fn new(rows: usize, cols: usize) -> BitRows {
        let words = cols.div_ceil(64);
        BitRows { words, bits: vec![0; rows * words] }
    }

    pub(crate) fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }
}

pub(crate) fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// A point–line incidence geometry with lines stored as sorted point-index
/// sets. Immutable after construction.
#[derive(Debug, Clone)]
pub struct IncidenceGeometry {
    num_points: u32,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    collinear: BitRows,
}

impl IncidenceGeometry {
    pub fn new(num_points: u32, lines: Vec<Vec<u32>>) -> Result<IncidenceGeometry, GeomError> {
        let mut sorted_lines = Vec::with_capacity(lines.len());
        let mut seen = BTreeSet::new();
        for (i, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if let Some(&p) = line.iter().find(|&&p| p >= num_points) {
                return Err(GeomError::PointOutOfRange { line: i, point: p });
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(GeomError::RepeatedPoint { line: i });
            }
            if !seen.insert(line.clone()) {
                return Err(GeomError::DuplicateLine { line: i });
            }
            sorted_lines.push(line);
        }
        let mut point_lines = vec![Vec::new(); num_points as usize];
        let mut collinear = BitRows::new(num_points as usize, num_points as usize);
        for (li, line) in sorted_lines.iter().enumerate() {
            for &p in line {
                point_lines[p as usize].push(li as u32);
                for &q in line {
                    if p != q {
                        collinear.set(p as usize, q as usize);
                    }
                }
            }
        }
        Ok(IncidenceGeometry { num_points, lines: sorted_lines, point_lines, collinear })
    }

    pub fn num_points(&self) -> u32 {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn lines_through(&self, p: u32) -> &[u32] {
        &self.point_lines[p as usize]
    }

    pub fn collinear(&self, p: u32, q: u32) -> bool {
        self.collinear.get(p as usize, q as usize)
    }

    pub(crate) fn collinear_row(&self, p: u32) -> &[u64] {
        self.collinear.row(p as usize)
    }

    /// Text dump: header line, then one space-separated point list per line.
    pub fn dump(&self, order: &GQOrder) -> String {
        let mut out = format!(
            "points={} lines={} s={} t={}\n",
            self.num_points,
            self.lines.len(),
            order.s,
            order.t
        );
        for line in &self.lines {
            let words: Vec<String> = line.iter().map(|p| p.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    W32,
    QMinus5q,
}

/// Build one of the supported classical generalised quadrangles:
/// W(3,2), Q⁻(5,2) or Q⁻(5,3).
pub fn build_classical(kind: GeometryKind, q: u32) -> Result<IncidenceGeometry, GeomError> {
    match (kind, q) {
        (GeometryKind::W32, 2) => Ok(w_3_2()),
        (GeometryKind::QMinus5q, 2 | 3) => Ok(q_minus_5(q as u8)),
        _ => Err(GeomError::Unsupported {
            kind: match kind {
                GeometryKind::W32 => "W32".into(),
                GeometryKind::QMinus5q => "Qminus5q".into(),
            },
            q,
        }),
    }
}

/// Normalized representatives of the projective points of GF(q)^n:
/// first nonzero coordinate scaled to 1. Enumeration order is fixed
/// (lexicographic over coordinate vectors) so point indices are stable.
fn projective_vectors(q: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut v = vec![0u8; n];
    loop {
        if v.iter().any(|&c| c != 0) {
            let lead = v.iter().position(|&c| c != 0).unwrap();
            if v[lead] == 1 {
                out.push(v.clone());
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

pub(crate) fn normalize(v: &mut [u8], q: u8) {
    let lead = v.iter().position(|&c| c != 0).expect("zero vector has no projective class");
    let inv = mod_inv(v[lead], q);
    for c in v.iter_mut() {
        *c = (*c as u16 * inv as u16 % q as u16) as u8;
    }
}

fn mod_inv(a: u8, q: u8) -> u8 {
    (1..q).find(|&b| (a as u16 * b as u16) % q as u16 == 1).expect("unit in prime field")
}

fn symplectic_form(x: &[u8], y: &[u8]) -> u8 {
    ((x[0] as u16 * y[1] as u16
        + x[1] as u16 * y[0] as u16
        + x[2] as u16 * y[3] as u16
        + x[3] as u16 * y[2] as u16)
        % 2) as u8
}

pub(crate) fn w32_points() -> Vec<Vec<u8>> {
    projective_vectors(2, 4)
}

/// W(3,2): all 15 projective points of a 4-dimensional symplectic space
/// over GF(2); lines are the totally isotropic 2-subspaces.
pub fn w_3_2() -> IncidenceGeometry {
    let pts = w32_points();
    let index: HashMap<&Vec<u8>, u32> =
        pts.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut lines = BTreeSet::new();
    for (i, u) in pts.iter().enumerate() {
        for v in &pts[i + 1..] {
            if symplectic_form(u, v) == 0 {
                let w: Vec<u8> = u.iter().zip(v).map(|(a, b)| (a + b) % 2).collect();
                let mut line = vec![index[u], index[v], index[&w]];
                line.sort_unstable();
                lines.insert(line);
            }
        }
    }
    IncidenceGeometry::new(pts.len() as u32, lines.into_iter().collect())
        .expect("symplectic construction is well formed")
}

/// Evaluates the fixed minus-type quadratic form
/// x0x1 + x2x3 + f(x4,x5) with f irreducible over GF(q).
pub(crate) fn elliptic_form(x: &[u8], q: u8) -> u8 {
    let f = if q == 2 {
        x[4] as u16 * x[4] as u16 + x[4] as u16 * x[5] as u16 + x[5] as u16 * x[5] as u16
    } else {
        x[4] as u16 * x[4] as u16 + x[5] as u16 * x[5] as u16
    };
    ((x[0] as u16 * x[1] as u16 + x[2] as u16 * x[3] as u16 + f) % q as u16) as u8
}

pub(crate) fn singular_points(q: u8) -> Vec<Vec<u8>> {
    projective_vectors(q, 6).into_iter().filter(|p| elliptic_form(p, q) == 0).collect()
}

/// Q⁻(5,q): singular projective points of a minus-type quadratic form in
/// six variables; lines are the totally singular projective lines.
pub fn q_minus_5(q: u8) -> IncidenceGeometry {
    let pts = singular_points(q);
    let index: HashMap<&Vec<u8>, u32> =
        pts.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut lines = BTreeSet::new();
    for (i, u) in pts.iter().enumerate() {
        'pairs: for v in &pts[i + 1..] {
            // The q+1 projective points of the span are v and u + λv.
            let mut line = vec![index[v]];
            for lam in 0..q {
                let mut w: Vec<u8> =
                    u.iter().zip(v).map(|(a, b)| ((a + lam * b) % q) as u8).collect();
                normalize(&mut w, q);
                match index.get(&w) {
                    Some(&k) => line.push(k),
                    None => continue 'pairs,
                }
            }
            line.sort_unstable();
            lines.insert(line);
        }
    }
    IncidenceGeometry::new(pts.len() as u32, lines.into_iter().collect())
        .expect("quadric construction is well formed")
}

/// Checks the generalised-quadrangle axioms exhaustively and returns the
/// order (s, t). Thickness (s, t ≥ 2) is required.
pub fn verify_gq(g: &IncidenceGeometry) -> Result<GQOrder, GqViolation> {
    let first = g.lines.first().ok_or(GqViolation::NoLines)?;
    let line_size = first.len();
    for (i, line) in g.lines.iter().enumerate() {
        if line.len() != line_size {
            return Err(GqViolation::LineSizeVaries {
                line: i,
                size: line.len(),
                expected: line_size,
            });
        }
    }
    let degree = g.point_lines[0].len();
    for p in 0..g.num_points {
        let d = g.point_lines[p as usize].len();
        if d != degree {
            return Err(GqViolation::PointDegreeVaries { point: p, degree: d, expected: degree });
        }
    }
    // Two distinct points lie on at most one common line.
    for p in 0..g.num_points {
        let mut seen = vec![false; g.num_points as usize];
        for &li in &g.point_lines[p as usize] {
            for &quy in &g.lines[li as usize] {
                if quy == p {
                    continue;
                }
                if seen[quy as usize] {
                    return Err(GqViolation::TwoCommonLines { p, q: quy });
                }
                seen[quy as usize] = true;
            }
        }
    }
    // For a non-incident point–line pair, exactly one point of the line is
    // collinear with the point.
    for p in 0..g.num_points {
        for (li, line) in g.lines.iter().enumerate() {
            if line.contains(&p) {
                continue;
            }
            let count = line.iter().filter(|&&quy| g.collinear(p, quy)).count();
            if count != 1 {
                return Err(GqViolation::PerpCountOffLine { point: p, line: li, count });
            }
        }
    }
    let s = line_size as u64 - 1;
    let t = degree as u64 - 1;
    if s < 2 || t < 2 {
        return Err(GqViolation::NotThick { s, t });
    }
    Ok(GQOrder { s, t })
}

/// Verifies that the collinearity graph is strongly regular by exhaustive
/// count and returns (v, k, λ, μ).
pub fn srg_params(g: &IncidenceGeometry) -> Result<(u64, u64, u64, u64), GeomError> {
    let n = g.num_points as usize;
    let k = g.collinear_row(0).iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let mut lambda = None;
    let mut mu = None;
    for p in 0..n {
        let deg = g.collinear_row(p as u32).iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if deg != k {
            return Err(GeomError::NotStronglyRegular {
                detail: format!("vertex {p} has degree {deg}, vertex 0 has {k}"),
            });
        }
        for q in p + 1..n {
            let common = count_and(g.collinear_row(p as u32), g.collinear_row(q as u32));
            let slot = if g.collinear.get(p, q) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(common),
                Some(v) if *v == common => {}
                Some(v) => {
                    return Err(GeomError::NotStronglyRegular {
                        detail: format!("pair ({p}, {q}) sees {common} common neighbours, expected {v}"),
                    })
                }
            }
        }
    }
    Ok((n as u64, k as u64, lambda.unwrap_or(0) as u64, mu.unwrap_or(0) as u64))
}

/// A collineation: a point permutation together with the line permutation
/// it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collineation {
    point_perm: Permutation,
    line_perm: Permutation,
}

impl Collineation {
    /// Validates that `point_perm` maps every line to a line and builds the
    /// induced line permutation.
    pub fn from_point_perm(
        g: &IncidenceGeometry,
        point_perm: Permutation,
    ) -> Result<Collineation, GeomError> {
        if point_perm.degree() != g.num_points as usize {
            return Err(GeomError::DegreeMismatch {
                got: point_perm.degree(),
                expected: g.num_points as usize,
            });
        }
        let index: HashMap<&[u32], u32> =
            g.lines.iter().enumerate().map(|(i, l)| (l.as_slice(), i as u32)).collect();
        let mut images = Vec::with_capacity(g.lines.len());
        for (li, line) in g.lines.iter().enumerate() {
            let mut image: Vec<u32> = line.iter().map(|&p| point_perm.apply(p)).collect();
            image.sort_unstable();
            match index.get(image.as_slice()) {
                Some(&target) => images.push(target),
                None => return Err(GeomError::NotACollineation { line: li }),
            }
        }
        let line_perm =
            Permutation::from_images(images).map_err(|_| GeomError::NotACollineation { line: 0 })?;
        Ok(Collineation { point_perm, line_perm })
    }

    pub fn point_perm(&self) -> &Permutation {
        &self.point_perm
    }

    pub fn line_perm(&self) -> &Permutation {
        &self.line_perm
    }

    pub fn is_identity(&self) -> bool {
        self.point_perm.is_identity()
    }
}
