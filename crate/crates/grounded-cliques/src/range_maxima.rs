//! Dynamic weighted 2D point sets with axis-aligned rectangle maximum
//! queries under weight updates.
//!
//! Three interchangeable variants:
//!   - `Naive`: linear scan, the oracle the others are checked against.
//!   - `SegTree2D`: segment tree over x with per-node y-sorted lists and
//!     inner max trees. O(log^2 n) query/update.
//!   - `WideFanout`: range tree over y with node degree ~log^eps n,
//!     second-level trees over x of the same degree, and per-node summary
//!     blocks keyed by (x-child, y-child) pairs. The constant-time
//!     small-block machinery is replaced by a bounded linear scan over the
//!     block, which preserves answers exactly.
//!
//! Weight 0 is the "absent" sentinel: points with weight 0 never win a
//! query. Ties are broken towards the smallest point id.

use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub weight: u64,
    pub id: u32,
}

impl Entry {
    /// Max by weight, ties to the smaller id.
    fn better(a: Option<Entry>, b: Option<Entry>) -> Option<Entry> {
        match (a, b) {
            (None, e) | (e, None) => e,
            (Some(x), Some(y)) => {
                if (x.weight, std::cmp::Reverse(x.id)) >= (y.weight, std::cmp::Reverse(y.id)) {
                    Some(x)
                } else {
                    Some(y)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Naive,
    SegTree2D,
    WideFanout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedPoint {
    pub id: u32,
    pub x: u32,
    pub y: u32,
    pub weight: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RangeMaxError {
    #[error("duplicate coordinate ({0}, {1})")]
    DuplicateCoordinate(u32, u32),
    #[error("coordinates not in rank space: {0} repeats on the {1} axis")]
    RankCollision(u32, char),
    #[error("duplicate point id {0}")]
    DuplicateId(u32),
    #[error("unknown point id {0}")]
    UnknownId(u32),
}

#[derive(Debug, Clone, Copy)]
struct Pt {
    id: u32,
    x: u32,
    y: u32,
    weight: u64,
}

impl Pt {
    fn entry(&self) -> Option<Entry> {
        if self.weight > 0 {
            Some(Entry {
                weight: self.weight,
                id: self.id,
            })
        } else {
            None
        }
    }
}

pub struct RangeMaxIndex {
    pts: Vec<Pt>,
    by_id: HashMap<u32, usize>,
    variant: Variant,
    seg: Option<SegTree2D>,
    wide: Option<WideFanout>,
}

impl RangeMaxIndex {
    pub fn build(points: &[WeightedPoint], variant: Variant) -> Result<Self, RangeMaxError> {
        Self::build_with_epsilon(points, variant, 0.5)
    }

    /// `epsilon` controls the wide-fanout node degree ~ (log2 n)^epsilon;
    /// only meaningful for `Variant::WideFanout`.
    pub fn build_with_epsilon(
        points: &[WeightedPoint],
        variant: Variant,
        epsilon: f64,
    ) -> Result<Self, RangeMaxError> {
        let mut by_id = HashMap::new();
        let mut xs = HashMap::new();
        let mut ys = HashMap::new();
        let mut pts = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if by_id.insert(p.id, i).is_some() {
                return Err(RangeMaxError::DuplicateId(p.id));
            }
            // rank-space model: every x and every y occurs once
            if xs.insert(p.x, ()).is_some() {
                if ys.contains_key(&p.y) {
                    return Err(RangeMaxError::DuplicateCoordinate(p.x, p.y));
                }
                return Err(RangeMaxError::RankCollision(p.x, 'x'));
            }
            if ys.insert(p.y, ()).is_some() {
                return Err(RangeMaxError::RankCollision(p.y, 'y'));
            }
            pts.push(Pt {
                id: p.id,
                x: p.x,
                y: p.y,
                weight: p.weight,
            });
        }
        let seg = match variant {
            Variant::SegTree2D => Some(SegTree2D::build(&pts)),
            _ => None,
        };
        let wide = match variant {
            Variant::WideFanout => Some(WideFanout::build(&pts, epsilon)),
            _ => None,
        };
        Ok(RangeMaxIndex {
            pts,
            by_id,
            variant,
            seg,
            wide,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn set_weight(&mut self, id: u32, weight: u64) -> Result<(), RangeMaxError> {
        let &i = self.by_id.get(&id).ok_or(RangeMaxError::UnknownId(id))?;
        self.pts[i].weight = weight;
        if let Some(seg) = &mut self.seg {
            seg.update(&self.pts, i);
        }
        if let Some(wide) = &mut self.wide {
            wide.update(&self.pts, i);
        }
        Ok(())
    }

    /// Max-weight point with positive weight in the closed rectangle, ties
    /// to the smallest id; `None` if the rectangle holds no positive weight.
    pub fn query_max(&self, x_lo: u32, x_hi: u32, y_lo: u32, y_hi: u32) -> Option<Entry> {
        if x_lo > x_hi || y_lo > y_hi {
            return None;
        }
        match self.variant {
            Variant::Naive => {
                let mut best = None;
                for p in &self.pts {
                    if p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi {
                        best = Entry::better(best, p.entry());
                    }
                }
                best
            }
            Variant::SegTree2D => self.seg.as_ref().unwrap().query(x_lo, x_hi, y_lo, y_hi),
            Variant::WideFanout => {
                self.wide
                    .as_ref()
                    .unwrap()
                    .query(&self.pts, x_lo, x_hi, y_lo, y_hi)
            }
        }
    }

    /// Structural facts about the wide-fanout tree, for assertions:
    /// (fanout bound, max observed node degree, max local y index).
    pub fn wide_fanout_stats(&self) -> Option<(usize, usize, usize)> {
        self.wide.as_ref().map(|w| w.stats())
    }
}

// ---------------------------------------------------------------------------
// SegTree2D: segment tree over x, per node a y-sorted list with an inner
// iterative max tree.

const NIL: usize = usize::MAX;

struct SegNode {
    x_lo: u32,
    x_hi: u32,
    left: usize,
    right: usize,
    ys: Vec<u32>,
    point_at: Vec<usize>,
    tree: Vec<Option<Entry>>,
}

struct SegTree2D {
    nodes: Vec<SegNode>,
    root: usize,
}

impl SegTree2D {
    fn build(pts: &[Pt]) -> Self {
        let mut t = SegTree2D {
            nodes: Vec::new(),
            root: NIL,
        };
        if pts.is_empty() {
            return t;
        }
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by_key(|&i| pts[i].x);
        t.root = t.build_node(pts, &order);
        t
    }

    fn build_node(&mut self, pts: &[Pt], order: &[usize]) -> usize {
        let x_lo = pts[order[0]].x;
        let x_hi = pts[*order.last().unwrap()].x;
        let mut by_y: Vec<usize> = order.to_vec();
        by_y.sort_by_key(|&i| pts[i].y);
        let ys: Vec<u32> = by_y.iter().map(|&i| pts[i].y).collect();
        let m = ys.len();
        let mut tree = vec![None; 2 * m];
        for (pos, &i) in by_y.iter().enumerate() {
            tree[m + pos] = pts[i].entry();
        }
        for k in (1..m).rev() {
            tree[k] = Entry::better(tree[2 * k], tree[2 * k + 1]);
        }
        let (left, right) = if order.len() == 1 {
            (NIL, NIL)
        } else {
            let mid = order.len() / 2;
            let l = self.build_node(pts, &order[..mid]);
            let r = self.build_node(pts, &order[mid..]);
            (l, r)
        };
        self.nodes.push(SegNode {
            x_lo,
            x_hi,
            left,
            right,
            ys,
            point_at: by_y,
            tree,
        });
        self.nodes.len() - 1
    }

    fn inner_update(node: &mut SegNode, pts: &[Pt], i: usize) {
        let pos = node.ys.partition_point(|&y| y < pts[i].y);
        debug_assert_eq!(node.point_at[pos], i);
        let m = node.ys.len();
        let mut k = m + pos;
        node.tree[k] = pts[i].entry();
        while k > 1 {
            k /= 2;
            node.tree[k] = Entry::better(node.tree[2 * k], node.tree[2 * k + 1]);
        }
    }

    fn update(&mut self, pts: &[Pt], i: usize) {
        let mut cur = self.root;
        while cur != NIL {
            let (left, right);
            {
                let node = &mut self.nodes[cur];
                Self::inner_update(node, pts, i);
                left = node.left;
                right = node.right;
            }
            if left == NIL {
                break;
            }
            cur = if pts[i].x <= self.nodes[left].x_hi {
                left
            } else {
                right
            };
        }
    }

    fn inner_query(node: &SegNode, y_lo: u32, y_hi: u32) -> Option<Entry> {
        let m = node.ys.len();
        let mut lo = node.ys.partition_point(|&y| y < y_lo) + m;
        let mut hi = node.ys.partition_point(|&y| y <= y_hi) + m; // exclusive
        let mut best = None;
        while lo < hi {
            if lo & 1 == 1 {
                best = Entry::better(best, node.tree[lo]);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                best = Entry::better(best, node.tree[hi]);
            }
            lo /= 2;
            hi /= 2;
        }
        best
    }

    fn query(&self, x_lo: u32, x_hi: u32, y_lo: u32, y_hi: u32) -> Option<Entry> {
        if self.root == NIL {
            return None;
        }
        let mut best = None;
        let mut stack = vec![self.root];
        while let Some(cur) = stack.pop() {
            let node = &self.nodes[cur];
            if node.x_hi < x_lo || node.x_lo > x_hi {
                continue;
            }
            if x_lo <= node.x_lo && node.x_hi <= x_hi {
                best = Entry::better(best, Self::inner_query(node, y_lo, y_hi));
            } else if node.left != NIL {
                stack.push(node.left);
                stack.push(node.right);
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// WideFanout: first-level tree over y with wide nodes, second-level trees
// over x, per-node (x-child, y-child) summary blocks scanned linearly.

struct XNode {
    /// x-coordinate bounds of the points below this node
    x_min: u32,
    x_max: u32,
    /// leaf: index of the single point in the shared store
    point: Option<usize>,
    children: Vec<usize>,
    /// block[c * n_local_y + j] = best entry among points of x-child c whose
    /// containing child of the owning y-node has index j
    block: Vec<Option<Entry>>,
    n_local_y: usize,
}

struct XTree {
    nodes: Vec<XNode>,
    root: usize,
}

struct YNode {
    y_lo: u32,
    y_hi: u32,
    children: Vec<usize>,
    child_ranges: Vec<(u32, u32)>,
    /// single point of a leaf y-node
    point: Option<usize>,
    xtree: XTree,
}

struct WideFanout {
    fanout: usize,
    ynodes: Vec<YNode>,
    root: usize,
}

fn local_y_of(child_ranges: &[(u32, u32)], y: u32) -> usize {
    if child_ranges.is_empty() {
        0
    } else {
        child_ranges
            .iter()
            .position(|&(lo, hi)| y >= lo && y <= hi)
            .expect("point outside every child y-range")
    }
}

impl WideFanout {
    fn fanout_for(n: usize, epsilon: f64) -> usize {
        if n <= 2 {
            return 2;
        }
        let f = (n as f64).log2().powf(epsilon).ceil() as usize;
        f.max(2)
    }

    fn build(pts: &[Pt], epsilon: f64) -> Self {
        let fanout = Self::fanout_for(pts.len(), epsilon);
        let mut t = WideFanout {
            fanout,
            ynodes: Vec::new(),
            root: NIL,
        };
        if pts.is_empty() {
            return t;
        }
        let mut by_y: Vec<usize> = (0..pts.len()).collect();
        by_y.sort_by_key(|&i| pts[i].y);
        t.root = t.build_ynode(pts, &by_y);
        t
    }

    fn build_ynode(&mut self, pts: &[Pt], by_y: &[usize]) -> usize {
        let y_lo = pts[by_y[0]].y;
        let y_hi = pts[*by_y.last().unwrap()].y;
        let mut children = Vec::new();
        let mut child_ranges = Vec::new();
        if by_y.len() > 1 {
            let f = self.fanout.min(by_y.len());
            let chunk = by_y.len().div_ceil(f);
            for part in by_y.chunks(chunk) {
                let c = self.build_ynode(pts, part);
                let (lo, hi) = (self.ynodes[c].y_lo, self.ynodes[c].y_hi);
                children.push(c);
                child_ranges.push((lo, hi));
            }
        }
        let mut by_x: Vec<usize> = by_y.to_vec();
        by_x.sort_by_key(|&i| pts[i].x);
        let n_local_y = children.len().max(1);
        let mut xnodes = Vec::new();
        let root = Self::build_xnode(
            &mut xnodes,
            self.fanout,
            pts,
            &by_x,
            n_local_y,
            &child_ranges,
        );
        let point = if by_y.len() == 1 { Some(by_y[0]) } else { None };
        let idx = self.ynodes.len();
        self.ynodes.push(YNode {
            y_lo,
            y_hi,
            children,
            child_ranges,
            point,
            xtree: XTree { nodes: xnodes, root },
        });
        idx
    }

    fn build_xnode(
        nodes: &mut Vec<XNode>,
        fanout: usize,
        pts: &[Pt],
        by_x: &[usize],
        n_local_y: usize,
        child_ranges: &[(u32, u32)],
    ) -> usize {
        let x_min = pts[by_x[0]].x;
        let x_max = pts[*by_x.last().unwrap()].x;
        let mut children = Vec::new();
        if by_x.len() > 1 {
            let f = fanout.min(by_x.len());
            let chunk = by_x.len().div_ceil(f);
            for part in by_x.chunks(chunk) {
                let c = Self::build_xnode(nodes, fanout, pts, part, n_local_y, child_ranges);
                children.push(c);
            }
        }
        let nc = children.len().max(1);
        let mut block = vec![None; nc * n_local_y];
        if children.is_empty() {
            let p = &pts[by_x[0]];
            block[local_y_of(child_ranges, p.y)] = p.entry();
        } else {
            for (c, &ci) in children.iter().enumerate() {
                for j in 0..n_local_y {
                    block[c * n_local_y + j] = Self::column_max(&nodes[ci], j);
                }
            }
        }
        nodes.push(XNode {
            x_min,
            x_max,
            point: if by_x.len() == 1 { Some(by_x[0]) } else { None },
            children,
            block,
            n_local_y,
        });
        nodes.len() - 1
    }

    /// Max over a node's block column for local y index `j`.
    fn column_max(node: &XNode, j: usize) -> Option<Entry> {
        let nly = node.n_local_y;
        let nc = node.block.len() / nly;
        let mut best = None;
        for c in 0..nc {
            best = Entry::better(best, node.block[c * nly + j]);
        }
        best
    }

    fn update(&mut self, pts: &[Pt], i: usize) {
        if self.root == NIL {
            return;
        }
        let y = pts[i].y;
        let mut cur = self.root;
        loop {
            self.update_in_ynode(pts, cur, i);
            let node = &self.ynodes[cur];
            if node.children.is_empty() {
                break;
            }
            let next = local_y_of(&node.child_ranges, y);
            cur = node.children[next];
        }
    }

    fn update_in_ynode(&mut self, pts: &[Pt], w: usize, i: usize) {
        let x = pts[i].x;
        let j = local_y_of(&self.ynodes[w].child_ranges, pts[i].y);
        let ynode = &mut self.ynodes[w];
        let xt = &mut ynode.xtree;
        // root-to-leaf path for x
        let mut path = vec![xt.root];
        loop {
            let node = &xt.nodes[*path.last().unwrap()];
            if node.children.is_empty() {
                debug_assert_eq!(node.point, Some(i));
                break;
            }
            let next = node
                .children
                .iter()
                .copied()
                .find(|&c| {
                    let cn = &xt.nodes[c];
                    x >= cn.x_min && x <= cn.x_max
                })
                .expect("update point outside x-tree");
            path.push(next);
        }
        // refresh the (child-on-path, j) block entry bottom-up
        for k in (0..path.len()).rev() {
            let u = path[k];
            if xt.nodes[u].children.is_empty() {
                let e = pts[i].entry();
                xt.nodes[u].block[j] = e;
            } else {
                let child_on_path = path[k + 1];
                let c = xt.nodes[u]
                    .children
                    .iter()
                    .position(|&ci| ci == child_on_path)
                    .unwrap();
                let refreshed = Self::column_max(&xt.nodes[child_on_path], j);
                let nly = xt.nodes[u].n_local_y;
                xt.nodes[u].block[c * nly + j] = refreshed;
            }
        }
    }

    fn query(&self, pts: &[Pt], x_lo: u32, x_hi: u32, y_lo: u32, y_hi: u32) -> Option<Entry> {
        if self.root == NIL {
            return None;
        }
        let mut best = None;
        self.query_ynode(pts, self.root, x_lo, x_hi, y_lo, y_hi, &mut best);
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn query_ynode(
        &self,
        pts: &[Pt],
        w: usize,
        x_lo: u32,
        x_hi: u32,
        y_lo: u32,
        y_hi: u32,
        best: &mut Option<Entry>,
    ) {
        let node = &self.ynodes[w];
        if node.y_hi < y_lo || node.y_lo > y_hi {
            return;
        }
        if let Some(i) = node.point {
            let p = &pts[i];
            if p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi {
                *best = Entry::better(*best, p.entry());
            }
            return;
        }
        let mut covered: Option<(usize, usize)> = None;
        for (j, &(lo, hi)) in node.child_ranges.iter().enumerate() {
            if hi < y_lo || lo > y_hi {
                continue;
            }
            if y_lo <= lo && hi <= y_hi {
                covered = Some(match covered {
                    None => (j, j),
                    Some((a, _)) => (a, j),
                });
            } else {
                self.query_ynode(pts, node.children[j], x_lo, x_hi, y_lo, y_hi, best);
            }
        }
        if let Some((jl, jr)) = covered {
            Self::query_xtree(pts, node, x_lo, x_hi, jl, jr, best);
        }
    }

    fn query_xtree(
        pts: &[Pt],
        node: &YNode,
        x_lo: u32,
        x_hi: u32,
        jl: usize,
        jr: usize,
        best: &mut Option<Entry>,
    ) {
        let xt = &node.xtree;
        let mut stack = vec![xt.root];
        while let Some(u) = stack.pop() {
            let xn = &xt.nodes[u];
            if xn.x_max < x_lo || xn.x_min > x_hi {
                continue;
            }
            if let Some(i) = xn.point {
                let p = &pts[i];
                if p.x >= x_lo && p.x <= x_hi {
                    let j = local_y_of(&node.child_ranges, p.y);
                    if j >= jl && j <= jr {
                        *best = Entry::better(*best, p.entry());
                    }
                }
                continue;
            }
            for (c, &ci) in xn.children.iter().enumerate() {
                let child = &xt.nodes[ci];
                if child.x_max < x_lo || child.x_min > x_hi {
                    continue;
                }
                if x_lo <= child.x_min && child.x_max <= x_hi {
                    // fully covered in x: linear scan over the block column
                    for j in jl..=jr {
                        *best = Entry::better(*best, xn.block[c * xn.n_local_y + j]);
                    }
                } else {
                    stack.push(ci);
                }
            }
        }
    }

    fn stats(&self) -> (usize, usize, usize) {
        let mut max_deg = 0;
        let mut max_local_y = 0;
        for yn in &self.ynodes {
            max_deg = max_deg.max(yn.children.len());
            max_local_y = max_local_y.max(yn.children.len().saturating_sub(1));
            for xn in &yn.xtree.nodes {
                max_deg = max_deg.max(xn.children.len());
            }
        }
        (self.fanout, max_deg, max_local_y)
    }
}
