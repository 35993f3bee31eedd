//! Exact partial-difference-set verification in direct powers of a base
//! permutation group.
//!
//! For a union D of nonidentity conjugacy classes of T^r, a Cayley-graph
//! construction needs the representation count #{z ∈ D : y·z ∈ D} to equal
//! λ for every nonidentity y ∈ D and μ for every nonidentity y outside D.
//! Because D is class-closed the count only depends on the class of y, and
//! in a direct power it factors through per-coordinate tables: with
//! m_c[a][d] = #{z ∈ T : z in class a, rep_c·z in class d}, the count for a
//! product class (c₁,…,c_r) is Σ over (a,d) ∈ D×D of Π_j m_{c_j}[a_j][d_j].
//! That turns a |T|^r scan into a sum with |D|² terms.

use super::AnalysisError;
use crate::nat::{nat, pow};
use crate::perm::{Classes, PermGroup};
use std::collections::BTreeSet;

/// Per-coordinate class-product count tables for a base group: everything
/// the check needs that does not depend on the candidate set.
pub struct ClassProducts {
    num_classes: usize,
    /// m[c][a * num_classes + d] as documented in the module header.
    m: Vec<Vec<u64>>,
}

/// Builds the count tables by one pass over the base group.
pub fn class_products(group: &PermGroup, classes: &Classes, budget: u64) -> Result<ClassProducts, AnalysisError> {
    let n = match group.order_u64() {
        Some(n) if n <= budget => n,
        _ => {
            return Err(AnalysisError::PowerBudget { order: group.order().to_string(), budget });
        }
    };
    let k = classes.num_classes();
    let mut m = vec![vec![0u64; k * k]; k];
    for (rank, z) in group.stream_range(0, n).enumerate() {
        let a = classes.class_of_rank(rank as u64) as usize;
        for (c, rep) in classes.reps.iter().enumerate() {
            let d = classes.class_of(group, &rep.compose(&z)).expect("product stays in the group") as usize;
            m[c][a * k + d] += 1;
        }
    }
    Ok(ClassProducts { num_classes: k, m })
}

/// Outcome of a candidate-set count check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdsVerdict {
    Pass,
    /// The first product class whose representation count missed: the class
    /// tuple, the count found, and the count required.
    Fail { class: Vec<u32>, count: u64, expected: u64 },
}

/// Verifies the λ/μ representation counts for D = the union of the given
/// r-tuples of base classes. The identity tuple (0,…,0) must not be in D.
pub fn pds_check(
    products: &ClassProducts,
    r: u32,
    d_classes: &BTreeSet<Vec<u32>>,
    lambda: u64,
    mu: u64,
) -> Result<PdsVerdict, AnalysisError> {
    assert!(r >= 1, "direct power exponent must be positive");
    let k = products.num_classes;
    let r = r as usize;
    for tuple in d_classes {
        if tuple.len() != r {
            return Err(AnalysisError::TupleLength { got: tuple.len(), expected: r });
        }
        if let Some(&c) = tuple.iter().find(|&&c| c as usize >= k) {
            return Err(AnalysisError::UnknownClass(c));
        }
        if tuple.iter().all(|&c| c == 0) {
            return Err(AnalysisError::IdentityInCandidateSet);
        }
    }
    let d: Vec<&Vec<u32>> = d_classes.iter().collect();
    for y in Tuples::new(k, r) {
        if y.iter().all(|&c| c == 0) {
            continue;
        }
        let mut count = 0u64;
        for za in &d {
            for zd in &d {
                let mut prod = 1u64;
                for j in 0..r {
                    prod *= products.m[y[j] as usize][(za[j] as usize) * k + zd[j] as usize];
                    if prod == 0 {
                        break;
                    }
                }
                count += prod;
            }
        }
        let expected = if d_classes.contains(&y) { lambda } else { mu };
        if count != expected {
            return Ok(PdsVerdict::Fail { class: y, count, expected });
        }
    }
    Ok(PdsVerdict::Pass)
}

/// One-call convenience: refuses when |T|^r exceeds `budget`, otherwise
/// builds the tables and runs the check.
pub fn pds_check_group(
    group: &PermGroup,
    classes: &Classes,
    r: u32,
    d_classes: &BTreeSet<Vec<u32>>,
    lambda: u64,
    mu: u64,
    budget: u64,
) -> Result<PdsVerdict, AnalysisError> {
    let power = pow(&group.order(), r);
    if power > nat(budget) {
        return Err(AnalysisError::PowerBudget { order: power.to_string(), budget });
    }
    let products = class_products(group, classes, budget)?;
    pds_check(&products, r, d_classes, lambda, mu)
}

/// All nonidentity conjugacy classes of the r-th direct power, in
/// lexicographic tuple order, with their sizes.
pub fn power_classes(classes: &Classes, r: u32) -> Vec<(Vec<u32>, u64)> {
    assert!(r >= 1, "direct power exponent must be positive");
    let mut out = Vec::new();
    for tuple in Tuples::new(classes.num_classes(), r as usize) {
        if tuple.iter().all(|&c| c == 0) {
            continue;
        }
        let size = tuple.iter().map(|&c| classes.sizes[c as usize] as u128).product::<u128>();
        out.push((tuple, u64::try_from(size).expect("product class size fits u64")));
    }
    out
}

/// Lexicographic odometer over all r-tuples of class ids, identity first.
struct Tuples {
    k: u32,
    current: Option<Vec<u32>>,
}

impl Tuples {
    fn new(k: usize, r: usize) -> Self {
        Tuples { k: k as u32, current: Some(vec![0; r]) }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut j = cur.len();
        loop {
            if j == 0 {
                self.current = None;
                break;
            }
            j -= 1;
            cur[j] += 1;
            if cur[j] < self.k {
                break;
            }
            cur[j] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating, conjugacy_classes, Permutation, PermGroup};

    /// The elementary abelian group of order 9, acting regularly on the
    /// 3×3 torus (point 3u+v, generators shifting a coordinate each).
    fn elementary_nine() -> PermGroup {
        let row = Permutation::from_images(vec![3, 4, 5, 6, 7, 8, 0, 1, 2]).unwrap();
        let col = Permutation::from_images(vec![1, 2, 0, 4, 5, 3, 7, 8, 6]).unwrap();
        PermGroup::from_generators(vec![row, col]).unwrap()
    }

    fn translation_class(group: &PermGroup, classes: &Classes, u: u32, v: u32) -> u32 {
        let images: Vec<u32> = (0..9)
            .map(|p| {
                let (r, c) = (p / 3, p % 3);
                ((r + u) % 3) * 3 + (c + v) % 3
            })
            .collect();
        classes.class_of(group, &Permutation::from_images(images).unwrap()).unwrap()
    }

    #[test]
    fn the_nonzero_squares_of_gf9_form_a_partial_difference_set() {
        let g = elementary_nine();
        assert_eq!(g.order_u64(), Some(9));
        let classes = conjugacy_classes(&g, 64).unwrap();
        assert_eq!(classes.num_classes(), 9);
        // squares in GF(9) = F3[i]: ±1 and ±i, i.e. the four axis vectors
        let d: BTreeSet<Vec<u32>> = [(1, 0), (2, 0), (0, 1), (0, 2)]
            .iter()
            .map(|&(u, v)| vec![translation_class(&g, &classes, u, v)])
            .collect();
        assert_eq!(d.len(), 4);
        let products = class_products(&g, &classes, 64).unwrap();
        assert_eq!(pds_check(&products, 1, &d, 1, 2).unwrap(), PdsVerdict::Pass);
    }

    #[test]
    fn breaking_the_square_set_breaks_the_counts() {
        let g = elementary_nine();
        let classes = conjugacy_classes(&g, 64).unwrap();
        let d: BTreeSet<Vec<u32>> = [(1, 0), (2, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(u, v)| vec![translation_class(&g, &classes, u, v)])
            .collect();
        let products = class_products(&g, &classes, 64).unwrap();
        assert!(matches!(pds_check(&products, 1, &d, 1, 2).unwrap(), PdsVerdict::Fail { .. }));
    }

    #[test]
    fn an_empty_set_passes_exactly_when_mu_is_zero() {
        let g = elementary_nine();
        let classes = conjugacy_classes(&g, 64).unwrap();
        let products = class_products(&g, &classes, 64).unwrap();
        let empty = BTreeSet::new();
        assert_eq!(pds_check(&products, 1, &empty, 5, 0).unwrap(), PdsVerdict::Pass);
        assert!(matches!(
            pds_check(&products, 1, &empty, 5, 2).unwrap(),
            PdsVerdict::Fail { count: 0, expected: 2, .. }
        ));
    }

    #[test]
    fn the_identity_tuple_is_rejected() {
        let g = elementary_nine();
        let classes = conjugacy_classes(&g, 64).unwrap();
        let products = class_products(&g, &classes, 64).unwrap();
        let d: BTreeSet<Vec<u32>> = [vec![0]].into_iter().collect();
        assert!(matches!(
            pds_check(&products, 1, &d, 1, 2),
            Err(AnalysisError::IdentityInCandidateSet)
        ));
    }

    #[test]
    fn identity_row_tables_are_diagonal_class_counters() {
        let g = alternating(5);
        let classes = conjugacy_classes(&g, 1 << 20).unwrap();
        let products = class_products(&g, &classes, 1 << 20).unwrap();
        let k = classes.num_classes();
        for a in 0..k {
            for d in 0..k {
                let expected = if a == d { classes.sizes[a] } else { 0 };
                assert_eq!(products.m[0][a * k + d], expected);
            }
        }
        // every row sums to |T| over its targets, class by class
        for c in 0..k {
            for a in 0..k {
                let row_sum: u64 = (0..k).map(|d| products.m[c][a * k + d]).sum();
                assert_eq!(row_sum, classes.sizes[a]);
            }
        }
    }

    #[test]
    fn representation_counts_are_conjugation_invariant() {
        let g = alternating(5);
        let classes = conjugacy_classes(&g, 1 << 20).unwrap();
        let products = class_products(&g, &classes, 1 << 20).unwrap();
        let k = classes.num_classes();
        // D = both classes of 5-cycles
        let five_cycles: Vec<usize> = (0..k).filter(|&c| classes.sizes[c] == 12).collect();
        assert_eq!(five_cycles.len(), 2);
        let in_d = |c: u32| five_cycles.contains(&(c as usize));
        let elements: Vec<Permutation> = g.stream_range(0, 60).collect();
        let class_of = |p: &Permutation| classes.class_of(&g, p).unwrap();
        for y_class in 1..k as u32 {
            let row = &products.m[y_class as usize];
            let table_count: u64 = five_cycles
                .iter()
                .flat_map(|&a| five_cycles.iter().map(move |&d| row[a * k + d]))
                .sum();
            let members = elements.iter().filter(|y| class_of(y) == y_class).take(3);
            for y in members {
                let brute = elements
                    .iter()
                    .filter(|z| in_d(class_of(z)) && in_d(class_of(&y.compose(z))))
                    .count() as u64;
                assert_eq!(brute, table_count, "class {y_class}");
            }
        }
    }

    #[test]
    fn power_classes_lists_each_nonidentity_tuple_with_its_product_size() {
        let g = alternating(5);
        let classes = conjugacy_classes(&g, 1 << 20).unwrap();
        let items = power_classes(&classes, 2);
        assert_eq!(items.len(), 24);
        let total: u64 = items.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 60 * 60 - 1);
        assert!(items.iter().all(|(t, _)| t.len() == 2 && t.iter().any(|&c| c != 0)));
    }

    #[test]
    fn oversized_powers_are_refused_up_front() {
        let g = alternating(7);
        let classes = conjugacy_classes(&g, 1 << 20).unwrap();
        let d = BTreeSet::new();
        let err = pds_check_group(&g, &classes, 2, &d, 1, 0, 1 << 20).unwrap_err();
        assert!(matches!(err, AnalysisError::PowerBudget { .. }));
    }
}
