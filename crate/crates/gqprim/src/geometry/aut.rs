//! Collineation-group computation by partition-refinement backtracking on
//! the 2-colored bipartite point/line incidence graph.
//!
//! The search fixes the point and line color classes setwise, walks a first
//! path of individualizations to a discrete partition, and then finds, level
//! by level, automorphisms mapping the individualized vertex to each other
//! member of its cell (modulo the orbits of the generators found so far).
//! This yields a strong generating sequence for the full automorphism group
//! of the incidence graph, i.e. the collineation group of the geometry.

use crate::perm::{PermGroup, Permutation};

use super::{count_and, BitRows, Collineation, GeomError, IncidenceGeometry};

const POINT_LIMIT: u32 = 512;

pub fn automorphism_group(g: &IncidenceGeometry) -> Result<PermGroup, GeomError> {
    if g.num_points() > POINT_LIMIT {
        return Err(GeomError::TooManyPoints { points: g.num_points(), limit: POINT_LIMIT });
    }
    let np = g.num_points() as usize;
    let n = np + g.num_lines();
    let mut adj = BitRows::new(n, n);
    for (li, line) in g.lines().iter().enumerate() {
        for &p in line {
            adj.set(p as usize, np + li);
            adj.set(np + li, p as usize);
        }
    }
    let initial: Vec<u32> = (0..n).map(|v| u32::from(v >= np)).collect();
    let mut search = AutSearch::new(adj, n, initial);
    let vertex_gens = search.run();

    let mut gens = Vec::with_capacity(vertex_gens.len());
    for vg in &vertex_gens {
        let images: Vec<u32> = vg[..np].to_vec();
        let perm = Permutation::from_images(images)
            .expect("a graph automorphism restricts to a point bijection");
        // Re-verify independently of the search that lines map to lines.
        Collineation::from_point_perm(g, perm.clone())?;
        gens.push(perm);
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(np));
    }
    Ok(PermGroup::from_generators(gens).expect("validated generators"))
}

struct AutSearch {
    adj: BitRows,
    n: usize,
    initial: Vec<u32>,
    /// Vertex individualized at each depth of the first path.
    path: Vec<usize>,
    /// Color id of the cell split at each depth (label-invariant).
    target_colors: Vec<u32>,
    /// Cell-size-by-color signature after refinement at each depth.
    sigs: Vec<Vec<u32>>,
    /// First-leaf labeling inverse: color id -> vertex.
    nu0_inv: Vec<usize>,
    gens: Vec<Vec<u32>>,
}

impl AutSearch {
    fn new(adj: BitRows, n: usize, initial: Vec<u32>) -> AutSearch {
        AutSearch {
            adj,
            n,
            initial,
            path: Vec::new(),
            target_colors: Vec::new(),
            sigs: Vec::new(),
            nu0_inv: Vec::new(),
            gens: Vec::new(),
        }
    }

    /// Equitable refinement: repeatedly recolor vertices by (old color,
    /// neighbor count per color) until the partition stabilizes. New color
    /// ids are assigned in sorted key order, which is label-invariant.
    fn refine(&self, colors: &mut [u32]) {
        let words = self.adj.words();
        loop {
            let k = *colors.iter().max().unwrap() as usize + 1;
            let mut masks = vec![0u64; k * words];
            for (v, &c) in colors.iter().enumerate() {
                masks[c as usize * words + v / 64] |= 1 << (v % 64);
            }
            let mut sig: Vec<Vec<u32>> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let row = self.adj.row(v);
                let counts: Vec<u32> = (0..k)
                    .map(|c| count_and(row, &masks[c * words..(c + 1) * words]) as u32)
                    .collect();
                sig.push(counts);
            }
            let mut order: Vec<usize> = (0..self.n).collect();
            order.sort_unstable_by(|&a, &b| {
                colors[a].cmp(&colors[b]).then_with(|| sig[a].cmp(&sig[b]))
            });
            let mut new_colors = vec![0u32; self.n];
            let mut next = 0u32;
            for i in 0..order.len() {
                if i > 0 {
                    let (a, b) = (order[i - 1], order[i]);
                    if colors[a] != colors[b] || sig[a] != sig[b] {
                        next += 1;
                    }
                }
                new_colors[order[i]] = next;
            }
            let new_k = next as usize + 1;
            colors.copy_from_slice(&new_colors);
            if new_k == k {
                return;
            }
        }
    }

    fn individualize(&self, colors: &mut [u32], v: usize) {
        let fresh = *colors.iter().max().unwrap() + 1;
        colors[v] = fresh;
        self.refine(colors);
    }

    fn cell_sizes(&self, colors: &[u32]) -> Vec<u32> {
        let k = *colors.iter().max().unwrap() as usize + 1;
        let mut sizes = vec![0u32; k];
        for &c in colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// The cell to branch on: smallest non-singleton, lowest color id on
    /// ties. Returns None when the partition is discrete.
    fn target_cell(&self, colors: &[u32]) -> Option<u32> {
        let sizes = self.cell_sizes(colors);
        sizes
            .iter()
            .enumerate()
            .filter(|&(_, &sz)| sz >= 2)
            .min_by_key(|&(c, &sz)| (sz, c))
            .map(|(c, _)| c as u32)
    }

    fn first_path(&mut self) -> Vec<u32> {
        let mut colors = self.initial.clone();
        self.refine(&mut colors);
        self.sigs.push(self.cell_sizes(&colors));
        while let Some(tc) = self.target_cell(&colors) {
            let v = (0..self.n).find(|&v| colors[v] == tc).unwrap();
            self.path.push(v);
            self.target_colors.push(tc);
            self.individualize(&mut colors, v);
            self.sigs.push(self.cell_sizes(&colors));
        }
        let mut inv = vec![usize::MAX; self.n];
        for (v, &c) in colors.iter().enumerate() {
            inv[c as usize] = v;
        }
        self.nu0_inv = inv;
        colors
    }

    fn run(&mut self) -> Vec<Vec<u32>> {
        self.first_path();
        for level in (0..self.path.len()).rev() {
            // Replay the first path down to this level.
            let mut colors = self.initial.clone();
            self.refine(&mut colors);
            for j in 0..level {
                self.individualize(&mut colors, self.path[j]);
            }
            let anchor = self.path[level];
            let tc = self.target_colors[level];
            let candidates: Vec<usize> =
                (0..self.n).filter(|&v| colors[v] == tc && v != anchor).collect();
            let mut uf = self.orbits_fixing_prefix(level);
            let mut failed: Vec<usize> = Vec::new();
            for &w in &candidates {
                if uf.find(w) == uf.find(anchor) || failed.iter().any(|&f| uf.find(f) == uf.find(w)) {
                    continue;
                }
                let mut child = colors.to_vec();
                self.individualize(&mut child, w);
                match self.descend(&child, level + 1) {
                    Some(gen) => {
                        self.gens.push(gen);
                        uf = self.orbits_fixing_prefix(level);
                    }
                    None => failed.push(w),
                }
            }
        }
        self.gens.clone()
    }

    /// Orbits of the vertex set under the found generators that fix the
    /// first `level` individualized vertices pointwise.
    fn orbits_fixing_prefix(&self, level: usize) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for gen in &self.gens {
            if self.path[..level].iter().all(|&v| gen[v] as usize == v) {
                for v in 0..self.n {
                    uf.union(v, gen[v] as usize);
                }
            }
        }
        uf
    }

    /// Depth-first search below an off-path node for a leaf whose labeling,
    /// composed with the first leaf's, is an automorphism. Nodes whose
    /// refined partition signature differs from the first path's at the same
    /// depth cannot lead to one and are pruned.
    fn descend(&self, colors: &[u32], depth: usize) -> Option<Vec<u32>> {
        if self.cell_sizes(colors) != self.sigs[depth] {
            return None;
        }
        if depth == self.path.len() {
            let candidate: Vec<u32> =
                colors.iter().map(|&c| self.nu0_inv[c as usize] as u32).collect();
            return self.is_automorphism(&candidate).then_some(candidate);
        }
        let tc = self.target_colors[depth];
        for w in (0..self.n).filter(|&v| colors[v] == tc) {
            let mut child = colors.to_vec();
            self.individualize(&mut child, w);
            if let Some(gen) = self.descend(&child, depth + 1) {
                return Some(gen);
            }
        }
        None
    }

    fn is_automorphism(&self, map: &[u32]) -> bool {
        for v in 0..self.n {
            let row = self.adj.row(v);
            for u in v + 1..self.n {
                if row[u / 64] >> (u % 64) & 1 == 1
                    && !self.adj.get(map[v] as usize, map[u] as usize)
                {
                    return false;
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
