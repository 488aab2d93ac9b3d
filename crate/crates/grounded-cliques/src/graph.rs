//! Abstract graphs with bitset adjacency, plus the transforms used by the
//! hardness reduction (complement, subdivision) and exact oracles
//! (branch-and-bound maximum clique and maximum independent set).

use crate::geometry::{strings_intersect, Representation, ShapeId};
use std::collections::HashMap;

/// Label carried by a vertex. Division vertices remember which edge they
/// subdivide and their slot on the path, so reduction artifacts can be
/// matched structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Plain(u32),
    Division { edge: u32, slot: u8 },
}

impl VertexLabel {
    pub fn plain(&self) -> Option<u32> {
        match self {
            VertexLabel::Plain(v) => Some(*v),
            _ => None,
        }
    }
}

/// Simple undirected graph, adjacency in bitset rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    labels: Vec<VertexLabel>,
    rows: Vec<Vec<u64>>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let labels = (0..n).map(|i| VertexLabel::Plain(i as u32)).collect();
        Graph {
            n,
            labels,
            rows: vec![vec![0u64; words(n)]; n],
        }
    }

    pub fn with_labels(labels: Vec<VertexLabel>) -> Self {
        let n = labels.len();
        Graph {
            n,
            labels,
            rows: vec![vec![0u64; words(n)]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no self-loops");
        self.rows[u][v / 64] |= 1 << (v % 64);
        self.rows[v][u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum::<usize>())
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    es.push((u, v));
                }
            }
        }
        es
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(v, u)).collect()
    }

    /// Complemented edge set, labels preserved, no self-loops.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::with_labels(self.labels.clone());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Replace every edge by a path with `t` fresh division vertices.
    ///
    /// Edges are numbered 1.. in lexicographic order of their (u, v)
    /// endpoints; division vertices are appended after the originals in that
    /// order, labelled with their edge number and 1-based slot (slot 1 is
    /// adjacent to the smaller endpoint).
    pub fn subdivide(&self, t: usize) -> Graph {
        let edges = self.edges();
        let mut labels = self.labels.clone();
        for (j, _) in edges.iter().enumerate() {
            for slot in 1..=t {
                labels.push(VertexLabel::Division {
                    edge: (j + 1) as u32,
                    slot: slot as u8,
                });
            }
        }
        let mut g = Graph::with_labels(labels);
        for (j, &(u, v)) in edges.iter().enumerate() {
            if t == 0 {
                g.add_edge(u, v);
                continue;
            }
            let base = self.n + j * t;
            g.add_edge(u, base);
            for k in 0..t - 1 {
                g.add_edge(base + k, base + k + 1);
            }
            g.add_edge(base + t - 1, v);
        }
        g
    }
}

/// Vertices = shape ids in representation order; edge iff the shapes
/// intersect.
pub fn build_intersection_graph(rep: &Representation) -> Graph {
    let shapes = rep.shapes();
    let labels = shapes
        .iter()
        .map(|s| VertexLabel::Plain(s.id()))
        .collect::<Vec<_>>();
    let mut g = Graph::with_labels(labels);
    for i in 0..shapes.len() {
        for j in i + 1..shapes.len() {
            if strings_intersect(&shapes[i], &shapes[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Shape ids of a maximum clique of the intersection graph of `rep`.
pub fn max_clique_rep_bruteforce(rep: &Representation) -> Vec<ShapeId> {
    let g = build_intersection_graph(rep);
    max_clique_bruteforce(&g)
        .into_iter()
        .map(|v| rep.shapes()[v].id())
        .collect()
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet(vec![0u64; words(n)])
    }

    fn full(n: usize) -> Self {
        let mut b = BitSet(vec![!0u64; words(n)]);
        let rem = n % 64;
        if rem != 0 {
            if let Some(last) = b.0.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        b
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and_row(&self, row: &[u64]) -> BitSet {
        BitSet(self.0.iter().zip(row).map(|(a, b)| a & b).collect())
    }

    fn and_count(&self, row: &[u64]) -> usize {
        self.0
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Exact maximum clique via Bron-Kerbosch with pivoting and a size bound.
/// Intended for desk-scale instances (n up to ~100 dense); may be slow
/// beyond that.
pub fn max_clique_bruteforce(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let p = BitSet::full(n);
    let x = BitSet::empty(n);
    bk(g, &mut current, p, x, &mut best);
    best.sort_unstable();
    best
}

fn bk(g: &Graph, current: &mut Vec<usize>, p: BitSet, mut x: BitSet, best: &mut Vec<usize>) {
    if p.is_empty() && x.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + p.count() <= best.len() {
        return;
    }
    // pivot: vertex of P u X with most neighbors in P
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.and_count(g.row(u)))
        .unwrap();
    let mut candidates = p.clone();
    for i in 0..candidates.0.len() {
        candidates.0[i] &= !g.row(pivot)[i];
    }
    let mut p = p;
    for v in candidates.iter().collect::<Vec<_>>() {
        if !p.get(v) {
            continue;
        }
        current.push(v);
        bk(
            g,
            current,
            p.and_row(g.row(v)),
            x.and_row(g.row(v)),
            best,
        );
        current.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Exact maximum independent set by exhaustive branch-and-bound. Kept
/// independent of the clique oracle so the two can cross-check each other.
pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best = Vec::new();
    let mut current = Vec::new();
    let free = BitSet::full(n);
    mis(g, &mut current, free, &mut best);
    best.sort_unstable();
    best
}

fn mis(g: &Graph, current: &mut Vec<usize>, free: BitSet, best: &mut Vec<usize>) {
    if current.len() + free.count() <= best.len() {
        return;
    }
    // branch on a free vertex of maximum degree within the free set
    let v = free.iter().max_by_key(|&v| free.and_count(g.row(v)));
    let v = match v {
        Some(v) => v,
        None => {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
    };
    // include v
    let mut with_v = free.clone();
    with_v.clear(v);
    for i in 0..with_v.0.len() {
        with_v.0[i] &= !g.row(v)[i];
    }
    current.push(v);
    mis(g, current, with_v, best);
    current.pop();
    // exclude v
    let mut without_v = free;
    without_v.clear(v);
    mis(g, current, without_v, best);
}

/// True iff `members` are pairwise adjacent in `g`.
pub fn is_clique(g: &Graph, members: &[usize]) -> bool {
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Map graph vertices back to shape ids through Plain labels.
pub fn plain_label_map(g: &Graph) -> HashMap<u32, usize> {
    g.labels()
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.plain().map(|p| (p, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    #[test]
    fn complement_of_complete_is_empty() {
        assert_eq!(complete(4).complement().edge_count(), 0);
    }

    #[test]
    fn complement_is_involution() {
        let g = cycle(7);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn c5_self_complementary_clique_sizes() {
        let g = cycle(5);
        assert_eq!(max_clique_bruteforce(&g).len(), 2);
        assert_eq!(max_clique_bruteforce(&g.complement()).len(), 2);
    }

    #[test]
    fn subdivide_single_edge() {
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let s = g.subdivide(2);
        assert_eq!(s.n(), 4);
        assert_eq!(s.edge_count(), 3);
        assert!(s.has_edge(0, 2) && s.has_edge(2, 3) && s.has_edge(3, 1));
    }

    #[test]
    fn subdivide_k4_counts() {
        let s = complete(4).subdivide(2);
        assert_eq!(s.n(), 16);
        assert_eq!(s.edge_count(), 18);
        for v in 4..16 {
            assert_eq!(s.degree(v), 2);
            assert!(matches!(s.label(v), VertexLabel::Division { .. }));
        }
    }

    #[test]
    fn subdivide_zero_is_identity() {
        let g = cycle(6);
        assert_eq!(g.subdivide(0), g);
    }

    #[test]
    fn k5_clique() {
        assert_eq!(max_clique_bruteforce(&complete(5)).len(), 5);
    }

    #[test]
    fn wheel_w6_clique_is_triangle() {
        // hub 0 plus 5-cycle 1..=5
        let mut g = Graph::new(6);
        for v in 1..6 {
            g.add_edge(0, v);
        }
        for v in 1..6 {
            let w = if v == 5 { 1 } else { v + 1 };
            g.add_edge(v, w);
        }
        let q = max_clique_bruteforce(&g);
        assert_eq!(q.len(), 3);
        assert!(is_clique(&g, &q));
    }

    #[test]
    fn alpha_equals_omega_of_complement_small_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [4usize, 6, 8, 10, 12] {
            for _ in 0..20 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.4) {
                            g.add_edge(u, v);
                        }
                    }
                }
                let alpha = max_independent_set(&g).len();
                let omega = max_clique_bruteforce(&g.complement()).len();
                assert_eq!(alpha, omega);
            }
        }
    }
}
