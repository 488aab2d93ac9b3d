//! Hardness-reduction instance generator: cubic graph -> 2-subdivision ->
//! complement -> explicit y-monotone grounded 1-bend string representation,
//! plus an exact verifier for the construction's combinatorial claims.
//!
//! Vertex i becomes an "original" string, a straight segment from (i, 0) to
//! (-3ni, 6n+2); all of them pass through p = (0, 2), so they pairwise
//! intersect. Edge j = (c, d) with c < d becomes two "division" strings:
//! s1 runs from near (c, 0) to a bend on the line x = -3n^2 - 1 and then
//! rightward, crossing every original except c's; s2 runs from near (d, 0)
//! to a bend one unit lower and then rightward, crossing every original
//! except d's. Division strings of distinct edges always cross; the two
//! strings of one edge never do. The resulting intersection graph is the
//! complement of the 2-subdivision.

use num::Zero;

use crate::geometry::{
    rat, ratio, GroundedString, Point, Rat, Representation, Segment, Shape, ShapeId,
};
use crate::graph::{
    build_intersection_graph, max_clique_bruteforce, max_independent_set, Graph,
};

#[derive(Debug, thiserror::Error)]
pub enum ReductionError {
    #[error("vertex {0} has degree {1}, expected 3")]
    NotCubic(usize, usize),
    #[error("graph order {0} is odd, a cubic graph has even order")]
    OddOrder(usize),
    #[error("graph too large for exhaustive independence check (n = {0}, limit {1})")]
    TooLarge(usize, usize),
    #[error("clique number {omega} of the representation differs from independence number {alpha}")]
    CountMismatch { omega: usize, alpha: usize },
}

/// A simple 3-regular graph.
#[derive(Debug, Clone)]
pub struct CubicGraph(Graph);

impl CubicGraph {
    pub fn new(g: Graph) -> Result<Self, ReductionError> {
        if g.n() % 2 != 0 {
            return Err(ReductionError::OddOrder(g.n()));
        }
        for v in 0..g.n() {
            if g.degree(v) != 3 {
                return Err(ReductionError::NotCubic(v, g.degree(v)));
            }
        }
        Ok(CubicGraph(g))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ReductionError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        CubicGraph::new(g)
    }

    pub fn k4() -> Self {
        CubicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn k33() -> Self {
        let es: Vec<(usize, usize)> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        CubicGraph::from_edges(6, &es).unwrap()
    }

    /// The 3-dimensional hypercube graph.
    pub fn cube3() -> Self {
        let es: Vec<(usize, usize)> = (0..8usize)
            .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
            .filter(|&(u, v)| u < v)
            .collect();
        CubicGraph::from_edges(8, &es).unwrap()
    }

    pub fn petersen() -> Self {
        let mut es = Vec::new();
        for i in 0..5 {
            es.push((i, (i + 1) % 5)); // outer cycle
            es.push((i, i + 5)); // spokes
            es.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        CubicGraph::from_edges(10, &es).unwrap()
    }
}

/// The full output of the construction. Shape ids are 1-based: original i
/// has id i, and the two division strings of edge j have ids n + 2j - 1 and
/// n + 2j, so shape id k corresponds to vertex k - 1 of `gbar`.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub h: CubicGraph,
    pub g: Graph,
    pub gbar: Graph,
    pub rep: Representation,
    pub shape_of_vertex: Vec<ShapeId>,
}

/// A pair whose geometric adjacency disagrees with the target graph.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub u: ShapeId,
    pub v: ShapeId,
    pub expected_adjacent: bool,
}

pub fn build_ymonotone_rep(h: &CubicGraph) -> ReductionArtifact {
    build_ymonotone_rep_with_slope(h, rat(0))
}

/// `slope` tilts the free segments of the division strings upward to the
/// right, turning the weakly y-monotone construction into a strictly
/// y-monotone one; callers should rerun [`verify_reduction`] when it is
/// nonzero, since a large slope can break crossings near a stop point.
pub fn build_ymonotone_rep_with_slope(h: &CubicGraph, slope: Rat) -> ReductionArtifact {
    let n = h.graph().n();
    let ni = n as i64;
    let edges = h.graph().edges();
    let g = h.graph().subdivide(2);
    let gbar = g.complement();

    // position of original i on the line y = height
    let orig_x = |i: i64, height: &Rat| -> Rat { rat(i) * (rat(2) - height) / rat(2) };

    // the arm of edge 1 lies on y = 6n+2, the exact height of the original
    // tips; that touching crossing vanishes once the arms are tilted, so
    // the sloped variant extends every original slightly past its tip
    let top_y = if slope.is_zero() {
        rat(6 * ni + 2)
    } else {
        rat(6 * ni + 3)
    };
    let mut shapes: Vec<Shape> = (1..=ni)
        .map(|i| {
            let tip_x = rat(i) * (rat(2) - &top_y) / rat(2);
            Shape::S(GroundedString::new(
                i as u32,
                Point::of(i, 0),
                Point::of(0, 2),
                Point::new(tip_x, top_y.clone()),
                true,
            ))
        })
        .collect();
    let mut ground_xs: Vec<Rat> = (1..=ni).map(rat).collect();
    let qx = rat(-3 * ni * ni - 1);

    // a division-string start just left of vertex v's original; nudged
    // right by 1/(j(3n+2)) when it would land on an existing ground point
    let mut start_at = |v: i64, j: i64| -> Rat {
        let mut x = rat(v) - ratio(1, j);
        if ground_xs.contains(&x) {
            x += ratio(1, j * (3 * ni + 2));
            assert!(!ground_xs.contains(&x), "perturbed start still collides");
        }
        ground_xs.push(x.clone());
        x
    };

    // where the free segment at height `y` with bend abscissa `bend_x` must
    // stop: past every still-uncrossed target, short of the excluded
    // original
    let stop_x = |fixed: &Segment, y: &Rat, bend_x: &Rat, excluded: i64, targets: &[&Shape]| {
        let mut last_required = bend_x.clone();
        for t in targets {
            if t.segments().iter().any(|s| crate::geometry::seg_intersect(fixed, s)) {
                continue;
            }
            let x = match t {
                // crossing of the target string with the line at height y;
                // originals pass y on their bend->tip half, previous
                // division strings on their ground->bend half
                Shape::S(s) if &s.bend.y >= y => {
                    &s.ground.x + (&s.bend.x - &s.ground.x) * y / &s.bend.y
                }
                Shape::S(s) => {
                    assert!(&s.tip.y >= y, "target does not reach the free segment");
                    &s.bend.x + (&s.tip.x - &s.bend.x) * (y - &s.bend.y) / (&s.tip.y - &s.bend.y)
                }
                Shape::L(_) => unreachable!("construction emits strings only"),
            };
            assert!(&x > bend_x, "required crossing behind the bend");
            last_required = last_required.max(x);
        }
        let forbidden = orig_x(excluded, y);
        assert!(
            last_required < forbidden,
            "required crossing at or past the excluded original"
        );
        (last_required + forbidden) / rat(2)
    };

    for (j, &(u, v)) in edges.iter().enumerate() {
        let j1 = (j + 1) as i64;
        let (c, d) = ((u + 1) as i64, (v + 1) as i64);
        let y1 = rat(6 * ni - 2 * j1 + 4);
        let y2 = rat(6 * ni - 2 * j1 + 3);

        // s1: excluded original c; the ground->bend segment crosses the
        // originals left of its start, the free segment crosses the rest
        let s1_start = start_at(c, j1);
        let s1_fixed = Segment::new(
            Point::new(s1_start.clone(), rat(0)),
            Point::new(qx.clone(), y1.clone()),
        );
        let division_targets: Vec<&Shape> = shapes[n..].iter().collect();
        let originals: Vec<&Shape> = shapes[..n]
            .iter()
            .enumerate()
            .filter(|&(i, _)| (i + 1) as i64 != c)
            .map(|(_, s)| s)
            .collect();
        let targets: Vec<&Shape> = originals.into_iter().chain(division_targets).collect();
        let stop = stop_x(&s1_fixed, &y1, &qx, c, &targets);
        let tip_y = &y1 + &slope * (&stop - &qx);
        shapes.push(Shape::S(GroundedString::new(
            (n + 2 * j + 1) as u32,
            Point::new(s1_start, rat(0)),
            Point::new(qx.clone(), y1.clone()),
            Point::new(stop, tip_y),
            false,
        )));

        // s2: excluded original d; bends where the line from its start to
        // q = (-3n^2 - 1, y1) meets y = y2, one unit below s1's arm
        let s2_start = start_at(d, j1);
        let s2_bend_x = &s2_start + (&qx - &s2_start) * &y2 / &y1;
        for i in 1..=ni {
            assert!(
                s2_bend_x < orig_x(i, &y2),
                "s2 bend not left of original {i} at its arm height"
            );
        }
        let s2_fixed = Segment::new(
            Point::new(s2_start.clone(), rat(0)),
            Point::new(s2_bend_x.clone(), y2.clone()),
        );
        // the pair string s1 is skipped: the two strings of one edge stay
        // disjoint, which is exactly the subdivision edge they represent
        let division_targets: Vec<&Shape> = shapes[n..shapes.len() - 1].iter().collect();
        let originals: Vec<&Shape> = shapes[..n]
            .iter()
            .enumerate()
            .filter(|&(i, _)| (i + 1) as i64 != d)
            .map(|(_, s)| s)
            .collect();
        let targets: Vec<&Shape> = originals.into_iter().chain(division_targets).collect();
        let stop = stop_x(&s2_fixed, &y2, &s2_bend_x, d, &targets);
        let tip_y = &y2 + &slope * (&stop - &s2_bend_x);
        shapes.push(Shape::S(GroundedString::new(
            (n + 2 * j + 2) as u32,
            Point::new(s2_start, rat(0)),
            Point::new(s2_bend_x, y2),
            Point::new(stop, tip_y),
            false,
        )));
    }

    let rep = Representation::new(shapes).expect("construction ids are unique");
    let shape_of_vertex = (1..=g.n() as u32).collect();
    ReductionArtifact {
        h: h.clone(),
        g,
        gbar,
        rep,
        shape_of_vertex,
    }
}

/// Recompute the intersection graph of the built strings and compare it
/// edge-for-edge against the complement of the subdivision.
pub fn verify_reduction(art: &ReductionArtifact) -> Result<(), Vec<Mismatch>> {
    let actual = build_intersection_graph(&art.rep);
    let id_of = |v: usize| art.shape_of_vertex[v];
    let check_row = |u: usize| -> Vec<Mismatch> {
        (u + 1..art.gbar.n())
            .filter(|&v| art.gbar.has_edge(u, v) != actual.has_edge(u, v))
            .map(|v| Mismatch {
                u: id_of(u),
                v: id_of(v),
                expected_adjacent: art.gbar.has_edge(u, v),
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let mismatches: Vec<Mismatch> = {
        use rayon::prelude::*;
        (0..art.gbar.n()).into_par_iter().flat_map_iter(check_row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mismatches: Vec<Mismatch> = (0..art.gbar.n()).flat_map(check_row).collect();
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(mismatches)
    }
}

/// Largest subdivision the exhaustive independence check accepts.
pub const INDEPENDENCE_LIMIT: usize = 100;

/// Check that the clique number of the built intersection graph equals the
/// independence number of the subdivision, computing both sides
/// independently; returns the common value.
pub fn clique_equals_independence(art: &ReductionArtifact) -> Result<usize, ReductionError> {
    if art.g.n() > INDEPENDENCE_LIMIT {
        return Err(ReductionError::TooLarge(art.g.n(), INDEPENDENCE_LIMIT));
    }
    let omega = max_clique_bruteforce(&build_intersection_graph(&art.rep)).len();
    let alpha = max_independent_set(&art.g).len();
    if omega != alpha {
        return Err(ReductionError::CountMismatch { omega, alpha });
    }
    Ok(omega)
}

/// Largest numerator/denominator bit length over every coordinate.
pub fn max_coord_bits(rep: &Representation) -> u64 {
    let bits = |r: &Rat| r.numer().bits().max(r.denom().bits());
    rep.shapes()
        .iter()
        .flat_map(|s| s.segments())
        .flat_map(|seg| [bits(&seg.a.x), bits(&seg.a.y), bits(&seg.b.x), bits(&seg.b.y)])
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify, validate_general_position, ClassTag};

    #[test]
    fn cubic_validation() {
        CubicGraph::k4().graph();
        assert!(matches!(
            CubicGraph::from_edges(2, &[(0, 1)]),
            Err(ReductionError::NotCubic(0, 1))
        ));
        assert!(matches!(
            CubicGraph::new(Graph::new(3)),
            Err(ReductionError::OddOrder(3))
        ));
    }

    #[test]
    fn k4_paper_coordinates() {
        let art = build_ymonotone_rep(&CubicGraph::k4());
        // original string 1: (1,0) to (-12, 26), recorded bend p = (0,2)
        match &art.rep.shapes()[0] {
            Shape::S(s) => {
                assert_eq!(s.ground, Point::of(1, 0));
                assert_eq!(s.bend, Point::of(0, 2));
                assert_eq!(s.tip, Point::of(-12, 26));
            }
            _ => panic!("expected a string"),
        }
        // edge 1 = (1,2): s1 starts at (0,0) with bend (-49, 26)
        match &art.rep.shapes()[4] {
            Shape::S(s) => {
                assert_eq!(s.ground, Point::of(0, 0));
                assert_eq!(s.bend, Point::of(-49, 26));
            }
            _ => panic!("expected a string"),
        }
    }

    #[test]
    fn originals_share_p() {
        let art = build_ymonotone_rep(&CubicGraph::cube3());
        let p = Point::of(0, 2);
        for s in &art.rep.shapes()[..8] {
            match s {
                Shape::S(g) => {
                    assert_eq!(crate::geometry::orient(&g.ground, &g.tip, &p), 0);
                    assert!(g.is_y_monotone());
                }
                _ => panic!("expected a string"),
            }
        }
    }

    #[test]
    fn k4_verifies_and_counts() {
        let art = build_ymonotone_rep(&CubicGraph::k4());
        assert_eq!(art.rep.len(), 4 + 12);
        validate_general_position(&art.rep).unwrap();
        assert_eq!(classify(&art.rep), ClassTag::YMonotone);
        verify_reduction(&art).unwrap();
        // one division vertex per edge avoiding a fixed original, plus that
        // original: alpha(2-subdivision) = m + alpha(H) = 6 + 1
        assert_eq!(clique_equals_independence(&art).unwrap(), 7);
    }

    #[test]
    fn all_fixtures_verify() {
        for h in [
            CubicGraph::k4(),
            CubicGraph::k33(),
            CubicGraph::cube3(),
            CubicGraph::petersen(),
        ] {
            let art = build_ymonotone_rep(&h);
            validate_general_position(&art.rep).unwrap();
            verify_reduction(&art).unwrap();
            clique_equals_independence(&art).unwrap();
        }
    }

    #[test]
    fn coordinate_bits_stay_small() {
        for h in [CubicGraph::k4(), CubicGraph::petersen()] {
            let art = build_ymonotone_rep(&h);
            let n = h.graph().n() as u64;
            assert!(max_coord_bits(&art.rep) <= 8 * (64 - (6 * n + 6).leading_zeros() as u64));
        }
    }

    #[test]
    fn sloped_variant_verifies() {
        let art = build_ymonotone_rep_with_slope(&CubicGraph::k4(), ratio(1, 1_000_000));
        verify_reduction(&art).unwrap();
        // every free segment now rises: strictly y-monotone
        for s in &art.rep.shapes()[4..] {
            match s {
                Shape::S(g) => assert!(g.tip.y > g.bend.y),
                _ => panic!("expected a string"),
            }
        }
    }

    #[test]
    fn truncated_division_string_is_reported() {
        let art = build_ymonotone_rep(&CubicGraph::k4());
        let mut shapes = art.rep.shapes().to_vec();
        // cut the free segment of edge 1's first division string just past
        // its bend, so it no longer reaches the originals it must cross
        if let Shape::S(g) = &mut shapes[4] {
            g.tip = Point::new(&g.bend.x + rat(1), g.bend.y.clone());
        }
        let broken = ReductionArtifact {
            rep: Representation::new(shapes).unwrap(),
            ..art
        };
        let report = verify_reduction(&broken).unwrap_err();
        assert!(!report.is_empty());
        assert!(report.iter().all(|m| m.expected_adjacent));
        assert!(report.iter().all(|m| m.u == 5 || m.v == 5));
    }
}
