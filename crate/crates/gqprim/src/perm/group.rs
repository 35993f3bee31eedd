//! Stabilizer chains (Schreier–Sims) with deterministic construction,
//! exact orders, membership, ranking, and streamed enumeration.

use super::{PermError, Permutation};
use crate::nat::{nat, Nat};
use num_traits::{One, ToPrimitive};

struct Level {
    base_point: u32,
    /// Strong generators lying in this level's stabilizer subgroup.
    gens: Vec<Permutation>,
    /// Orbit of the base point, in discovery order.
    orbit: Vec<u32>,
    /// point → index into `orbit` (+1), 0 = not in orbit.
    orbit_pos: Vec<u32>,
    /// point → transversal representative u with base^u = point.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Level {
        Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            orbit_pos: vec![0; degree],
            transversal: vec![None; degree],
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.orbit_pos = vec![0; degree];
        self.transversal = vec![None; degree];
        self.orbit.push(self.base_point);
        self.orbit_pos[self.base_point as usize] = 1;
        self.transversal[self.base_point as usize] = Some(Permutation::identity(degree));
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            i += 1;
            let up = self.transversal[p as usize].clone().expect("orbit point has rep");
            for s in &self.gens {
                let q = s.apply(p);
                if self.orbit_pos[q as usize] == 0 {
                    self.orbit_pos[q as usize] = self.orbit.len() as u32 + 1;
                    self.orbit.push(q);
                    self.transversal[q as usize] = Some(up.compose(s));
                }
            }
        }
    }

    fn position_in_orbit(&self, p: u32) -> Option<u32> {
        match self.orbit_pos[p as usize] {
            0 => None,
            i => Some(i - 1),
        }
    }
}

/// A permutation group with a base and strong generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group order {order} exceeds the enumeration budget {budget}")]
pub struct EnumBudgetError {
    pub order: Nat,
    pub budget: u64,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new(), order: Nat::one() }
    }

    /// Deterministic Schreier–Sims construction.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
        let Some(first) = gens.first() else {
            return Ok(PermGroup::trivial(0));
        };
        let degree = first.degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let mut b = Builder { degree, levels: Vec::new() };
        for g in &gens {
            b.add_strong_generator(g.clone(), 0);
        }
        b.close();
        let mut order = Nat::one();
        for level in &b.levels {
            order *= nat(level.orbit.len() as u64);
        }
        Ok(PermGroup { degree, generators: gens, levels: b.levels, order })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> Nat {
        self.order.clone()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    fn strip(&self, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let p = h.apply(level.base_point);
            match &level.transversal[p as usize] {
                None => return (h, i),
                Some(u) => h = h.compose(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.strip(g);
        level == self.levels.len() && residue.is_identity()
    }

    /// Group order as a machine word, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    /// Mixed-radix rank of a member element; `None` for non-members.
    /// Ranks are consistent with `element_at` and the enumeration streams.
    pub fn rank_of(&self, g: &Permutation) -> Option<u64> {
        if g.degree() != self.degree {
            return None;
        }
        let mut h = g.clone();
        let mut rank: u64 = 0;
        let mut weight: u64 = 1;
        for level in &self.levels {
            let p = h.apply(level.base_point);
            let pos = level.position_in_orbit(p)?;
            rank += weight * u64::from(pos);
            weight *= level.orbit.len() as u64;
            let u = level.transversal[p as usize].as_ref().expect("orbit point");
            h = h.compose(&u.inverse());
        }
        h.is_identity().then_some(rank)
    }

    /// Element with the given mixed-radix rank (inverse of `rank_of`).
    pub fn element_at(&self, mut rank: u64) -> Permutation {
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let len = level.orbit.len() as u64;
            digits.push((rank % len) as usize);
            rank /= len;
        }
        debug_assert_eq!(rank, 0, "rank out of range");
        let mut g = Permutation::identity(self.degree);
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            let p = level.orbit[d];
            g = g.compose(level.transversal[p as usize].as_ref().expect("orbit point"));
        }
        g
    }

    /// Streams every element exactly once. Refuses when the order exceeds
    /// the budget.
    pub fn enumerate(&self, budget: u64) -> Result<ElementStream<'_>, EnumBudgetError> {
        match self.order_u64() {
            Some(n) if n <= budget => Ok(self.stream_range(0, n)),
            _ => Err(EnumBudgetError { order: self.order(), budget }),
        }
    }

    /// Stream over the rank interval [start, end) — the unit of parallel
    /// splitting (chunk boundaries on outer-transversal strides keep the
    /// per-element cost at one composition).
    pub fn stream_range(&self, start: u64, end: u64) -> ElementStream<'_> {
        ElementStream { group: self, next: start, end, prefixes: None }
    }

    /// Rank ranges covering the whole group in `chunks` pieces.
    pub fn rank_chunks(&self, chunks: u64) -> Vec<(u64, u64)> {
        let n = self.order_u64().expect("order fits u64 for chunked streaming");
        let chunks = chunks.clamp(1, n.max(1));
        let step = n.div_ceil(chunks);
        (0..chunks)
            .map(|i| (i * step, ((i + 1) * step).min(n)))
            .filter(|(a, b)| a < b)
            .collect()
    }

    /// The direct product acting on the disjoint union of the two domains.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let total = self.degree + other.degree;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            gens.push(g.shift(0, total));
        }
        for h in &other.generators {
            gens.push(h.shift(self.degree, total));
        }
        PermGroup::from_generators(gens).expect("product generators are valid")
    }
}

struct Builder {
    degree: usize,
    levels: Vec<Level>,
}

impl Builder {
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let p = h.apply(level.base_point);
            match &level.transversal[p as usize] {
                None => return (h, i),
                Some(u) => h = h.compose(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Chooses the base point for a new bottom level: a point in the
    /// longest cycle of `g` (greedy largest orbit; ties to the smallest
    /// point).
    fn pick_base_point(&self, g: &Permutation) -> u32 {
        let degree = self.degree;
        let mut seen = vec![false; degree];
        let mut best = (0usize, u32::MAX);
        for start in 0..degree as u32 {
            if seen[start as usize] || g.apply(start) == start {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = g.apply(p);
                if p == start {
                    break;
                }
            }
            if len > best.0 {
                best = (len, start);
            }
        }
        debug_assert!(best.0 > 0, "generator must move something");
        best.1
    }

    /// Installs `h` as a strong generator at levels `from..=lev`, where
    /// `lev` is where sifting `h` stops; extends the base when `h` fixes
    /// every current base point.
    fn add_strong_generator(&mut self, g: Permutation, from: usize) -> Option<usize> {
        let (h, lev) = self.strip(&g, 0);
        if h.is_identity() {
            return None;
        }
        if lev == self.levels.len() {
            let bp = self.pick_base_point(&h);
            self.levels.push(Level::new(bp, self.degree));
        }
        for i in from..=lev {
            self.levels[i].gens.push(h.clone());
            self.levels[i].rebuild_orbit(self.degree);
        }
        Some(lev)
    }

    /// Bottom-up Schreier closure: verifies each level's Schreier
    /// generators sift to the identity, descending again whenever a new
    /// strong generator lands below.
    fn close(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            if let Some(lev) = self.verify_level(i) {
                i = lev; // new strong generator installed at `lev`: re-verify there
                continue;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    fn verify_level(&mut self, i: usize) -> Option<usize> {
        let mut oi = 0;
        while oi < self.levels[i].orbit.len() {
            let p = self.levels[i].orbit[oi];
            oi += 1;
            let up = self.levels[i].transversal[p as usize].clone().expect("orbit point");
            let mut gi = 0;
            while gi < self.levels[i].gens.len() {
                let s = self.levels[i].gens[gi].clone();
                gi += 1;
                let q = s.apply(p);
                let uq = self.levels[i].transversal[q as usize].clone().expect("orbit closed");
                let schreier = up.compose(&s).compose(&uq.inverse());
                let (h, lev) = self.strip(&schreier, i + 1);
                if !h.is_identity() {
                    if lev == self.levels.len() {
                        let bp = self.pick_base_point(&h);
                        self.levels.push(Level::new(bp, self.degree));
                    }
                    for k in i + 1..=lev {
                        self.levels[k].gens.push(h.clone());
                        self.levels[k].rebuild_orbit(self.degree);
                    }
                    return Some(lev);
                }
            }
        }
        None
    }
}

/// Iterator over a rank interval of a group, yielding each element once.
pub struct ElementStream<'a> {
    group: &'a PermGroup,
    next: u64,
    end: u64,
    /// prefixes[i] = product of transversal reps for levels i.. at the
    /// current digits; refreshed lazily from the changed digit upward.
    prefixes: Option<Vec<Permutation>>,
}

impl ElementStream<'_> {
    fn digits_of(&self, mut rank: u64) -> Vec<usize> {
        self.group
            .levels
            .iter()
            .map(|l| {
                let len = l.orbit.len() as u64;
                let d = (rank % len) as usize;
                rank /= len;
                d
            })
            .collect()
    }

    fn rebuild_prefixes(&mut self, changed_below: usize) {
        let digits = self.digits_of(self.next);
        let levels = &self.group.levels;
        let k = levels.len();
        let mut prefixes = self.prefixes.take().unwrap_or_else(|| vec![Permutation::identity(self.group.degree); k + 1]);
        // prefixes[k] = identity; prefixes[i] = prefixes[i+1] ∘ rep_i
        for i in (0..changed_below.min(k)).rev() {
            let level = &levels[i];
            let p = level.orbit[digits[i]];
            let rep = level.transversal[p as usize].as_ref().expect("orbit point");
            prefixes[i] = prefixes[i + 1].compose(rep);
        }
        self.prefixes = Some(prefixes);
    }
}

impl Iterator for ElementStream<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.end {
            return None;
        }
        let k = self.group.levels.len();
        if self.prefixes.is_none() {
            self.rebuild_prefixes(k);
        } else {
            // how many low digits rolled over in the increment to self.next
            let mut changed = 1usize;
            let mut r = self.next;
            for level in &self.group.levels {
                let len = level.orbit.len() as u64;
                if r % len != 0 {
                    break;
                }
                r /= len;
                changed += 1;
            }
            self.rebuild_prefixes(changed.min(k));
        }
        let out = self.prefixes.as_ref().expect("prefixes built")[0].clone();
        self.next += 1;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating, mathieu11, symmetric};
    use std::collections::HashSet;

    #[test]
    fn orders_match_naive_enumeration_for_small_groups() {
        for (g, expect) in [
            (alternating(5), 60u64),
            (alternating(6), 360),
            (symmetric(5), 120),
            (symmetric(6), 720),
        ] {
            assert_eq!(g.order_u64(), Some(expect));
            let seen: HashSet<Vec<u32>> =
                g.enumerate(1 << 20).unwrap().map(|p| p.images().to_vec()).collect();
            assert_eq!(seen.len() as u64, expect, "enumeration yields no duplicates");
        }
    }

    #[test]
    fn membership_separates_alt_from_sym() {
        let a5 = alternating(5);
        let transposition = Permutation::from_images(vec![1, 0, 2, 3, 4]).unwrap();
        let three_cycle = Permutation::from_images(vec![1, 2, 0, 3, 4]).unwrap();
        assert!(!a5.contains(&transposition));
        assert!(a5.contains(&three_cycle));
        assert!(a5.contains(&Permutation::identity(5)));
    }

    #[test]
    fn rank_and_unrank_are_inverse() {
        let m11 = mathieu11();
        for rank in [0u64, 1, 17, 500, 7919] {
            let g = m11.element_at(rank);
            assert_eq!(m11.rank_of(&g), Some(rank));
        }
        assert_eq!(m11.rank_of(&Permutation::identity(11)), Some(0));
        let outside = Permutation::from_images({
            let mut v: Vec<u32> = (0..11).collect();
            v.swap(0, 1);
            v
        })
        .unwrap();
        // a transposition is odd, M11 ≤ Alt11, so it cannot be a member
        assert_eq!(m11.rank_of(&outside), None);
    }

    #[test]
    fn stream_ranges_partition_the_group() {
        let a6 = alternating(6);
        let chunks = a6.rank_chunks(7);
        let mut total = 0u64;
        let mut seen = HashSet::new();
        for (a, b) in chunks {
            for g in a6.stream_range(a, b) {
                assert!(seen.insert(g.images().to_vec()));
                total += 1;
            }
        }
        assert_eq!(total, 360);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let s6 = symmetric(6);
        assert!(s6.enumerate(100).is_err());
        assert!(s6.enumerate(720).is_ok());
    }

    #[test]
    fn direct_product_multiplies_orders() {
        let a5 = alternating(5);
        let p = a5.direct_product(&a5);
        assert_eq!(p.degree(), 10);
        assert_eq!(p.order_u64(), Some(3600));
        let a6 = alternating(6);
        assert_eq!(a6.direct_product(&a6).order_u64(), Some(129600));
    }

    #[test]
    fn stream_agrees_with_element_at() {
        let a5 = alternating(5);
        let from_stream: Vec<_> = a5.stream_range(10, 20).collect();
        let direct: Vec<_> = (10..20).map(|r| a5.element_at(r)).collect();
        assert_eq!(from_stream, direct);
    }
}
