//! Classification of the substructure fixed by a collineation, and
//! fixed-point-count profiles over a whole collineation group.

use std::collections::BTreeMap;

use crate::nat::nat;
use crate::par::{self, Parallelism};
use crate::perm::PermGroup;

use super::{verify_gq, Collineation, GQOrder, GeomError, IncidenceGeometry};

/// The structure of the fixed points and fixed lines of a collineation,
/// one case per classification taxonomy entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstructureCase {
    /// No fixed points at all.
    Empty,
    /// Fixed points but no fixed lines; the points are pairwise non-collinear.
    OvoidLike,
    /// All fixed points incident with one common line.
    OnOneLine,
    /// All fixed points collinear with one common point.
    StarOfPoint,
    /// Rows and columns: two parallel classes of fixed lines with the fixed
    /// points as their pairwise intersections. `sides` counts the lines per
    /// class, smaller first.
    Grid { sides: (u32, u32) },
    /// Dual of a grid: every substructure line has exactly two fixed points
    /// and collinearity forms a complete bipartite graph between two
    /// cocliques of sizes `sides`.
    DualGrid { sides: (u32, u32) },
    /// The fixed points and lines form a thick subquadrangle.
    SubGq { order: GQOrder },
}

impl SubstructureCase {
    pub fn name(&self) -> &'static str {
        match self {
            SubstructureCase::Empty => "empty",
            SubstructureCase::OvoidLike => "ovoid-like",
            SubstructureCase::OnOneLine => "on-one-line",
            SubstructureCase::StarOfPoint => "star-of-point",
            SubstructureCase::Grid { .. } => "grid",
            SubstructureCase::DualGrid { .. } => "dual-grid",
            SubstructureCase::SubGq { .. } => "subquadrangle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubstructureClass {
    pub case: SubstructureCase,
    pub fixed_points: Vec<u32>,
    pub fixed_lines: Vec<u32>,
}

impl SubstructureClass {
    pub fn num_fixed_points(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn num_fixed_lines(&self) -> usize {
        self.fixed_lines.len()
    }

    pub fn sub_order(&self) -> Option<GQOrder> {
        match self.case {
            SubstructureCase::SubGq { order } => Some(order),
            _ => None,
        }
    }
}

/// Classifies the substructure fixed by a non-identity collineation and
/// verifies the classified case's point-count bound.
pub fn fixed_substructure(
    g: &IncidenceGeometry,
    order: &GQOrder,
    theta: &Collineation,
) -> Result<SubstructureClass, GeomError> {
    if theta.is_identity() {
        return Err(GeomError::IdentityExcluded);
    }
    if theta.point_perm().degree() != g.num_points() as usize {
        return Err(GeomError::DegreeMismatch {
            got: theta.point_perm().degree(),
            expected: g.num_points() as usize,
        });
    }
    let fixed_points: Vec<u32> =
        (0..g.num_points()).filter(|&p| theta.point_perm().apply(p) == p).collect();
    let fixed_lines: Vec<u32> = (0..g.num_lines() as u32)
        .filter(|&l| theta.line_perm().apply(l) == l)
        .collect();
    let case = classify(g, &fixed_points, &fixed_lines)?;
    if !case_bound_holds(&case, order, fixed_points.len()) {
        return Err(GeomError::CaseBoundViolated {
            case: case.name().into(),
            fixed: fixed_points.len(),
        });
    }
    Ok(SubstructureClass { case, fixed_points, fixed_lines })
}

/// Point-count bound implied by each case, for a host quadrangle of order
/// (s, t). A grid is unconstrained only in its full (s+1)×(s+1) form with
/// s ≤ t; any other grid must stay below s².
fn case_bound_holds(case: &SubstructureCase, order: &GQOrder, fixed: usize) -> bool {
    let (s, t, n) = (order.s, order.t, fixed as u64);
    match case {
        SubstructureCase::Empty => n == 0,
        SubstructureCase::OvoidLike => n <= s * t + 1,
        SubstructureCase::OnOneLine => n <= s + 1,
        SubstructureCase::StarOfPoint => n <= s * (t + 1) + 1,
        SubstructureCase::Grid { sides: (a, b) } => {
            if u64::from(*a) == s + 1 && u64::from(*b) == s + 1 {
                s <= t
            } else {
                n < s * s
            }
        }
        SubstructureCase::DualGrid { .. } => n <= 2 * (t + 1),
        SubstructureCase::SubGq { .. } => n <= (s + 1) * (t + 1),
    }
}

/// The taxonomy decision, most specific case first: subquadrangle, grid,
/// dual grid, on-one-line, star-of-point, ovoid-like.
pub(crate) fn classify(
    g: &IncidenceGeometry,
    fixed_points: &[u32],
    fixed_lines: &[u32],
) -> Result<SubstructureCase, GeomError> {
    if fixed_points.is_empty() {
        return Ok(SubstructureCase::Empty);
    }
    let mut in_fixed = vec![false; g.num_points() as usize];
    for &p in fixed_points {
        in_fixed[p as usize] = true;
    }
    // Substructure lines: fixed lines restricted to their fixed points.
    // Lines retaining fewer than two points carry no collinearity.
    let rich: Vec<Vec<u32>> = fixed_lines
        .iter()
        .map(|&l| {
            g.lines()[l as usize].iter().copied().filter(|&p| in_fixed[p as usize]).collect()
        })
        .filter(|l: &Vec<u32>| l.len() >= 2)
        .collect();
    let mut degree: BTreeMap<u32, u32> = BTreeMap::new();
    for line in &rich {
        for &p in line {
            *degree.entry(p).or_insert(0) += 1;
        }
    }

    if let Some(order) = subquadrangle(fixed_points, &rich, &degree) {
        return Ok(SubstructureCase::SubGq { order });
    }
    if let Some(sides) = grid(fixed_points, &rich, &degree) {
        return Ok(SubstructureCase::Grid { sides });
    }
    if let Some(sides) = dual_grid(fixed_points, &rich) {
        return Ok(SubstructureCase::DualGrid { sides });
    }
    let first = fixed_points[0];
    for &l in g.lines_through(first) {
        let line = &g.lines()[l as usize];
        if fixed_points.iter().all(|p| line.binary_search(p).is_ok()) {
            return Ok(SubstructureCase::OnOneLine);
        }
    }
    for x in 0..g.num_points() {
        if fixed_points.iter().all(|&p| p == x || g.collinear(x, p)) {
            return Ok(SubstructureCase::StarOfPoint);
        }
    }
    if fixed_lines.is_empty() {
        debug_assert!(fixed_points
            .iter()
            .all(|&p| fixed_points.iter().all(|&q| p == q || !g.collinear(p, q))));
        return Ok(SubstructureCase::OvoidLike);
    }
    Err(GeomError::Unclassifiable)
}

fn subquadrangle(
    fixed_points: &[u32],
    rich: &[Vec<u32>],
    degree: &BTreeMap<u32, u32>,
) -> Option<GQOrder> {
    if rich.len() < 2 || rich.iter().any(|l| l.len() != rich[0].len()) || rich[0].len() < 3 {
        return None;
    }
    let d = *degree.get(&fixed_points[0])?;
    if d < 3 || fixed_points.iter().any(|p| degree.get(p).copied().unwrap_or(0) != d) {
        return None;
    }
    let index: BTreeMap<u32, u32> =
        fixed_points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let sub_lines: Vec<Vec<u32>> =
        rich.iter().map(|l| l.iter().map(|p| index[p]).collect()).collect();
    let sub = IncidenceGeometry::new(fixed_points.len() as u32, sub_lines).ok()?;
    verify_gq(&sub).ok()
}

fn grid(
    fixed_points: &[u32],
    rich: &[Vec<u32>],
    degree: &BTreeMap<u32, u32>,
) -> Option<(u32, u32)> {
    if rich.is_empty()
        || fixed_points.iter().any(|p| degree.get(p).copied().unwrap_or(0) != 2)
    {
        return None;
    }
    // 2-color the concurrency graph of the substructure lines.
    let shares_point = |a: &[u32], b: &[u32]| a.iter().any(|p| b.binary_search(p).is_ok());
    let mut color = vec![None::<u8>; rich.len()];
    for start in 0..rich.len() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..rich.len() {
                if i != j && shares_point(&rich[i], &rich[j]) {
                    match color[j] {
                        None => {
                            color[j] = Some(1 - color[i].unwrap());
                            queue.push(j);
                        }
                        Some(c) if c == color[i].unwrap() => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let a = color.iter().filter(|c| **c == Some(0)).count() as u32;
    let b = rich.len() as u32 - a;
    if a >= 2 && b >= 2 && a as usize * b as usize == fixed_points.len() {
        Some((a.min(b), a.max(b)))
    } else {
        None
    }
}

fn dual_grid(fixed_points: &[u32], rich: &[Vec<u32>]) -> Option<(u32, u32)> {
    if rich.is_empty() || rich.iter().any(|l| l.len() != 2) {
        return None;
    }
    // 2-color the fixed points along the substructure's collinearity edges.
    let mut color: BTreeMap<u32, u8> = BTreeMap::new();
    let adjacency = |p: u32| {
        rich.iter().filter_map(move |l| {
            if l[0] == p {
                Some(l[1])
            } else if l[1] == p {
                Some(l[0])
            } else {
                None
            }
        })
    };
    for &start in fixed_points {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, 0);
        let mut queue = vec![start];
        while let Some(p) = queue.pop() {
            let cp = color[&p];
            for q in adjacency(p) {
                match color.get(&q) {
                    None => {
                        color.insert(q, 1 - cp);
                        queue.push(q);
                    }
                    Some(&cq) if cq == cp => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let a = color.values().filter(|&&c| c == 0).count() as u32;
    let b = fixed_points.len() as u32 - a;
    if a >= 2 && b >= 2 && rich.len() == a as usize * b as usize {
        Some((a.min(b), a.max(b)))
    } else {
        None
    }
}

/// Tallies fixed-point counts over the whole collineation group (identity
/// included) by streaming rank ranges, optionally in parallel.
pub fn fixity_profile(
    g: &IncidenceGeometry,
    aut: &PermGroup,
    mode: Parallelism,
    budget: u64,
) -> Result<BTreeMap<u32, u64>, GeomError> {
    debug_assert_eq!(aut.degree(), g.num_points() as usize);
    if aut.order() > nat(budget) {
        return Err(GeomError::EnumerationBudget { order: aut.order().to_string(), budget });
    }
    let chunks = aut.rank_chunks(128);
    let locals = par::map_collect(mode, chunks, |(lo, hi)| {
        let mut tally: BTreeMap<u32, u64> = BTreeMap::new();
        for el in aut.stream_range(lo, hi) {
            *tally.entry(el.num_fixed() as u32).or_insert(0) += 1;
        }
        tally
    });
    let mut profile = BTreeMap::new();
    for local in locals {
        for (fixed, count) in local {
            *profile.entry(fixed).or_insert(0) += count;
        }
    }
    Ok(profile)
}
