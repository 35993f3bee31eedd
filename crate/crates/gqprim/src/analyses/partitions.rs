//! Subset sums over class-size multisets: fast reachability via bitset
//! dynamic programming, and explicit enumeration with a result cap.

use super::AnalysisError;

/// Whether some subset of `sizes` sums exactly to `target`.
///
/// Bitset dynamic programming over `target + 1` reachability bits;
/// `dp_bits_budget` caps the bitset width (and so the memory), normally
/// `Config::dp_bits_budget`. Items larger than the target are pruned, so
/// sizes may exceed the budget as long as the target does not.
pub fn partition_exists(sizes: &[u64], target: u64, dp_bits_budget: u64) -> Result<bool, AnalysisError> {
    if target >= dp_bits_budget {
        return Err(AnalysisError::DpBudget { target, budget: dp_bits_budget });
    }
    let words = (target as usize + 1).div_ceil(64);
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    for &size in sizes {
        if size == 0 || size > target {
            continue;
        }
        or_shifted(&mut reach, size as usize);
        if bit(&reach, target as usize) {
            return Ok(true);
        }
    }
    Ok(bit(&reach, target as usize))
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

/// reach |= reach << shift, in place.
fn or_shifted(reach: &mut [u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    for i in (word_shift..reach.len()).rev() {
        let mut v = reach[i - word_shift] << bit_shift;
        if bit_shift > 0 && i > word_shift {
            v |= reach[i - word_shift - 1] >> (64 - bit_shift);
        }
        reach[i] |= v;
    }
}

/// Streams every subset of `sizes` summing to `target` — each as a sorted
/// list of indices into `sizes` — into `visit`, stopping early as soon as
/// `visit` returns false. Returns true when the search space was exhausted.
///
/// Items are explored largest-first with a residual-sum cutoff, so dead
/// branches are abandoned as soon as the remaining items cannot reach the
/// target.
pub fn visit_partitions(sizes: &[u64], target: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut order: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] > 0 && sizes[i] <= target).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let mut residual = vec![0u64; order.len() + 1];
    for k in (0..order.len()).rev() {
        residual[k] = residual[k + 1] + sizes[order[k]];
    }
    let mut chosen = Vec::new();
    dfs(sizes, &order, &residual, target, 0, &mut chosen, visit)
}

fn dfs(
    sizes: &[u64],
    order: &[usize],
    residual: &[u64],
    remaining: u64,
    k: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if remaining == 0 {
        let mut subset = chosen.clone();
        subset.sort_unstable();
        return visit(&subset);
    }
    if k == order.len() || residual[k] < remaining {
        return true;
    }
    if sizes[order[k]] <= remaining {
        chosen.push(order[k]);
        let keep_going = dfs(sizes, order, residual, remaining - sizes[order[k]], k + 1, chosen, visit);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    dfs(sizes, order, residual, remaining, k + 1, chosen, visit)
}

/// Result of a capped enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionEnumeration {
    /// Each subset as ascending indices into the caller's size slice.
    pub subsets: Vec<Vec<usize>>,
    /// True when the search stopped early; more subsets may exist.
    pub truncated: bool,
}

/// Collects every subset of `sizes` summing to `target`, up to `cap`.
pub fn enumerate_partitions(sizes: &[u64], target: u64, cap: usize) -> PartitionEnumeration {
    let mut subsets = Vec::new();
    if cap == 0 {
        return PartitionEnumeration { subsets, truncated: true };
    }
    let exhausted = visit_partitions(sizes, target, &mut |subset| {
        subsets.push(subset.to_vec());
        subsets.len() < cap
    });
    PartitionEnumeration { subsets, truncated: !exhausted }
}
