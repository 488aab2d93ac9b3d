//! Maximum-clique algorithms over grounded L-shape representations:
//! a range-maxima-backed pair DP for two-sided L-shapes, a
//! permutation-graph reduction for square L-shapes, a highest-shape
//! sweep for one-sided L-shapes, and a class dispatcher.

use crate::geometry::{
    classify, validate_general_position, ClassTag, Dir, LShape, Rat, Representation, Shape,
    ShapeId,
};
use crate::graph::max_clique_rep_bruteforce;
use crate::permutation::PermutationInstance;
use crate::range_maxima::{RangeMaxIndex, Variant, WeightedPoint};

#[derive(Debug, thiserror::Error)]
pub enum CliqueError {
    #[error("representation is not in general position: {0:?}")]
    GeneralPosition(Vec<crate::geometry::Violation>),
    #[error("algorithm requires L-shapes only, shape {0} is a generic string")]
    NotLShapes(ShapeId),
    #[error("algorithm requires square L-shapes, shape {0} has arm != height")]
    NotSquare(ShapeId),
    #[error("algorithm requires one-sided L-shapes, mixed arm directions found")]
    MixedDirections,
    #[error("instance too large for the brute-force fallback (n = {0}, limit {1})")]
    TooLargeForBruteForce(usize, usize),
    #[error("internal: certificate failed geometric verification")]
    BadCertificate,
}

/// Maximum clique certificate: shape ids, pairwise intersecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub members: Vec<ShapeId>,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn require_l_shapes(rep: &Representation) -> Result<Vec<&LShape>, CliqueError> {
    rep.shapes()
        .iter()
        .map(|s| s.as_l().ok_or_else(|| CliqueError::NotLShapes(s.id())))
        .collect()
}

fn require_general_position(rep: &Representation) -> Result<(), CliqueError> {
    validate_general_position(rep).map_err(CliqueError::GeneralPosition)
}

/// Pairwise geometric re-verification of a certificate.
fn verify_certificate(rep: &Representation, members: &[ShapeId]) -> Result<(), CliqueError> {
    let shapes: Vec<&Shape> = members
        .iter()
        .map(|&id| rep.shape_by_id(id).ok_or(CliqueError::BadCertificate))
        .collect::<Result<_, _>>()?;
    for (i, a) in shapes.iter().enumerate() {
        for b in &shapes[i + 1..] {
            if !crate::geometry::strings_intersect(a, b) {
                return Err(CliqueError::BadCertificate);
            }
        }
    }
    Ok(())
}

fn rank_of<'a>(mut keys: Vec<(&'a Rat, usize)>) -> Vec<u32> {
    keys.sort();
    let mut rank = vec![0u32; keys.len()];
    for (r, &(_, i)) in keys.iter().enumerate() {
        rank[i] = (r + 1) as u32;
    }
    rank
}

// ---------------------------------------------------------------------------
// Two-sided L-shapes

/// Maximum clique for two-sided L-shapes via the pair DP with per-shape
/// range-maximum indexes. Default index variant is the wide-fanout tree.
pub fn max_clique_two_sided(rep: &Representation) -> Result<Clique, CliqueError> {
    max_clique_two_sided_with(rep, Variant::WideFanout)
}

pub fn max_clique_two_sided_with(
    rep: &Representation,
    variant: Variant,
) -> Result<Clique, CliqueError> {
    let ls = require_l_shapes(rep)?;
    require_general_position(rep)?;
    let n = ls.len();
    if n == 0 {
        return Ok(Clique {
            members: Vec::new(),
        });
    }

    // global rank spaces over ground x and height; the bend of shape i is
    // exactly (ground_x, height), so bends share the same rank space
    let xr = rank_of(ls.iter().enumerate().map(|(i, l)| (&l.ground_x, i)).collect());
    let hr = rank_of(ls.iter().enumerate().map(|(i, l)| (&l.height, i)).collect());

    // adjacency and intersecting pairs, normalized to (left, right)
    let pairs = intersecting_pairs(&ls);
    if pairs.is_empty() {
        return Ok(Clique {
            members: vec![ls[0].id],
        });
    }

    // per-shape index over the bends of its neighbors
    let mut neighbor_points: Vec<Vec<WeightedPoint>> = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        neighbor_points[a].push(WeightedPoint {
            id: b as u32,
            x: xr[b],
            y: hr[b],
            weight: 0,
        });
        neighbor_points[b].push(WeightedPoint {
            id: a as u32,
            x: xr[a],
            y: hr[a],
            weight: 0,
        });
    }
    let mut index: Vec<RangeMaxIndex> = neighbor_points
        .iter()
        .map(|pts| RangeMaxIndex::build(pts, variant).expect("rank space is collision-free"))
        .collect();

    // schedule: ascending height of the lower shape of the pair, so every
    // bend a query can see carries a final value
    let mut schedule = pairs;
    schedule.sort_by_key(|&(a, b)| hr[a].min(hr[b]));

    let nmax = n as u32;
    let mut best: (u32, (usize, usize)) = (0, (0, 0));
    for &(a, b) in &schedule {
        let h_low = hr[a].min(hr[b]);
        let left = index[b].query_max(1, xr[a].wrapping_sub(1), 1, h_low - 1);
        let right = index[a].query_max(xr[b] + 1, nmax, 1, h_low - 1);
        let d = match (left, right) {
            (None, None) => 2,
            (l, r) => {
                let lw = l.map(|e| e.weight).unwrap_or(0);
                let rw = r.map(|e| e.weight).unwrap_or(0);
                lw.max(rw) as u32 + 1
            }
        };
        index[a].set_weight(b as u32, d as u64).unwrap();
        index[b].set_weight(a as u32, d as u64).unwrap();
        if d > best.0 {
            best = (d, (a, b));
        }
    }

    // certificate by backtracking through the final indexes; every queried
    // rectangle was final before its pair was computed, so replaying the
    // queries reproduces the recurrence
    let (mut a, mut b) = best.1;
    let mut members = vec![ls[a].id, ls[b].id];
    let mut d = best.0;
    while d > 2 {
        let h_low = hr[a].min(hr[b]);
        let left = index[b].query_max(1, xr[a].wrapping_sub(1), 1, h_low - 1);
        let right = index[a].query_max(xr[b] + 1, nmax, 1, h_low - 1);
        let want = (d - 1) as u64;
        if let Some(e) = left.filter(|e| e.weight == want) {
            let c = e.id as usize;
            members.push(ls[c].id);
            a = c;
        } else if let Some(e) = right.filter(|e| e.weight == want) {
            let c = e.id as usize;
            members.push(ls[c].id);
            b = c;
        } else {
            return Err(CliqueError::BadCertificate);
        }
        d -= 1;
    }
    verify_certificate(rep, &members)?;
    Ok(Clique { members })
}

/// All intersecting index pairs, ordered (left, right) by ground x.
fn intersecting_pairs(ls: &[&LShape]) -> Vec<(usize, usize)> {
    let n = ls.len();
    let pair_row = |i: usize| -> Vec<(usize, usize)> {
        (i + 1..n)
            .filter(|&j| ls[i].intersects(ls[j]))
            .map(|j| {
                if ls[i].ground_x < ls[j].ground_x {
                    (i, j)
                } else {
                    (j, i)
                }
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().flat_map_iter(pair_row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).flat_map(pair_row).collect()
    }
}

// ---------------------------------------------------------------------------
// Square L-shapes

/// Maximum clique for two-sided square L-shapes by iterating over the
/// candidate lowest member and solving a permutation-graph clique among the
/// shapes crossing its horizontal segment.
pub fn max_clique_square(rep: &Representation) -> Result<Clique, CliqueError> {
    let ls = require_l_shapes(rep)?;
    for l in &ls {
        if !l.is_square() {
            return Err(CliqueError::NotSquare(l.id));
        }
    }
    require_general_position(rep)?;
    if ls.is_empty() {
        return Ok(Clique {
            members: Vec::new(),
        });
    }

    let candidate = |a_idx: usize| -> Vec<ShapeId> {
        let a = ls[a_idx];
        let (sigma, sigma_prime) = square_orders(&ls, a_idx);
        if sigma.is_empty() {
            return vec![a.id];
        }
        let inst = PermutationInstance::from_orders(&sigma, &sigma_prime)
            .expect("orders are permutations of one id set");
        let mut members = vec![a.id];
        members.extend(inst.max_clique());
        members
    };

    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        (0..ls.len())
            .into_par_iter()
            .map(candidate)
            .max_by_key(|m| (m.len(), std::cmp::Reverse(m[0])))
            .unwrap()
    };
    #[cfg(not(feature = "parallel"))]
    let best = (0..ls.len())
        .map(candidate)
        .max_by_key(|m| (m.len(), std::cmp::Reverse(m[0])))
        .unwrap();

    verify_certificate(rep, &best)?;
    Ok(Clique { members: best })
}

/// The two orderings (sigma, sigma') of the shapes crossing the horizontal
/// segment of `a`: left-to-right crossing order along the segment, and the
/// clockwise order of exit points on the boundary of the slab above it
/// (up the left line by exit height, then down the right line).
pub fn square_orders(ls: &[&LShape], a_idx: usize) -> (Vec<ShapeId>, Vec<ShapeId>) {
    let a = ls[a_idx];
    let x1 = a.arm_lo();
    let x2 = a.arm_hi();
    let mut crossing: Vec<&&LShape> = ls
        .iter()
        .filter(|l| {
            l.id != a.id && l.height > a.height && x1 < l.ground_x && l.ground_x < x2
        })
        .collect();
    crossing.sort_by(|p, q| p.ground_x.cmp(&q.ground_x));
    let sigma: Vec<ShapeId> = crossing.iter().map(|l| l.id).collect();

    let mut left_exits: Vec<&&&LShape> =
        crossing.iter().filter(|l| l.dir == Dir::Left).collect();
    let mut right_exits: Vec<&&&LShape> =
        crossing.iter().filter(|l| l.dir == Dir::Right).collect();
    left_exits.sort_by(|p, q| p.height.cmp(&q.height));
    right_exits.sort_by(|p, q| q.height.cmp(&p.height));
    let sigma_prime: Vec<ShapeId> = left_exits
        .iter()
        .map(|l| l.id)
        .chain(right_exits.iter().map(|l| l.id))
        .collect();
    (sigma, sigma_prime)
}

// ---------------------------------------------------------------------------
// One-sided L-shapes

/// Maximum clique for one-sided L-shapes: for every candidate highest shape
/// q, the shapes crossing its vertical segment form a permutation graph
/// (intersection iff ground order agrees with height order).
pub fn max_clique_one_sided(rep: &Representation) -> Result<Clique, CliqueError> {
    let ls = require_l_shapes(rep)?;
    if ls.is_empty() {
        return Ok(Clique {
            members: Vec::new(),
        });
    }
    let dir = ls[0].dir;
    if ls.iter().any(|l| l.dir != dir) {
        return Err(CliqueError::MixedDirections);
    }
    require_general_position(rep)?;

    // mirror left-turning input so the sweep below can assume right arms
    let mirrored: Vec<LShape>;
    let ls: Vec<&LShape> = if dir == Dir::Left {
        mirrored = ls
            .iter()
            .map(|l| {
                LShape::new(
                    l.id,
                    -l.ground_x.clone(),
                    l.height.clone(),
                    Dir::Right,
                    l.arm.clone(),
                )
            })
            .collect();
        mirrored.iter().collect()
    } else {
        ls
    };

    let mut s_x: Vec<usize> = (0..ls.len()).collect();
    s_x.sort_by(|&i, &j| ls[i].ground_x.cmp(&ls[j].ground_x));
    let mut s_h: Vec<usize> = (0..ls.len()).collect();
    s_h.sort_by(|&i, &j| ls[i].height.cmp(&ls[j].height));

    let candidate = |q_idx: usize| -> Vec<ShapeId> {
        let q = ls[q_idx];
        let in_nq = |l: &LShape| {
            l.id != q.id
                && l.height < q.height
                && l.ground_x < q.ground_x
                && l.arm_hi() >= q.ground_x
        };
        let order_ground: Vec<ShapeId> = s_x
            .iter()
            .filter(|&&i| in_nq(ls[i]))
            .map(|&i| ls[i].id)
            .collect();
        // crossing order along q's vertical, top to bottom, is descending
        // height; feeding the reversed height order turns the "agreeing
        // orders" chain into an inverted pair set
        let order_height_desc: Vec<ShapeId> = s_h
            .iter()
            .rev()
            .filter(|&&i| in_nq(ls[i]))
            .map(|&i| ls[i].id)
            .collect();
        let mut members = vec![q.id];
        if !order_ground.is_empty() {
            let inst = PermutationInstance::from_orders(&order_ground, &order_height_desc)
                .expect("filtered scans are permutations of one id set");
            members.extend(inst.max_clique());
        }
        members
    };

    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        (0..ls.len())
            .into_par_iter()
            .map(candidate)
            .max_by_key(|m| (m.len(), std::cmp::Reverse(m[0])))
            .unwrap()
    };
    #[cfg(not(feature = "parallel"))]
    let best = (0..ls.len())
        .map(candidate)
        .max_by_key(|m| (m.len(), std::cmp::Reverse(m[0])))
        .unwrap();

    verify_certificate(rep, &best)?;
    Ok(Clique { members: best })
}

// ---------------------------------------------------------------------------
// Dispatcher

/// Largest instance the generic brute-force fallback accepts.
pub const BRUTE_FORCE_LIMIT: usize = 100;

/// Classify and route to the matching algorithm; generic / y-monotone
/// representations fall back to the Bron-Kerbosch oracle under a size guard.
pub fn max_clique(rep: &Representation) -> Result<Clique, CliqueError> {
    match classify(rep) {
        ClassTag::SquareL => max_clique_square(rep),
        ClassTag::OneSidedL => max_clique_one_sided(rep),
        ClassTag::TwoSidedL => max_clique_two_sided(rep),
        ClassTag::YMonotone | ClassTag::Generic1Bend => {
            if rep.len() > BRUTE_FORCE_LIMIT {
                return Err(CliqueError::TooLargeForBruteForce(
                    rep.len(),
                    BRUTE_FORCE_LIMIT,
                ));
            }
            let members = max_clique_rep_bruteforce(rep);
            Ok(Clique { members })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn rep_of(ls: Vec<LShape>) -> Representation {
        Representation::new(ls.into_iter().map(Shape::L).collect()).unwrap()
    }

    fn staircase() -> Representation {
        rep_of(vec![
            LShape::of(1, 0, 2, Dir::Right, 10),
            LShape::of(2, 1, 3, Dir::Right, 10),
            LShape::of(3, 2, 4, Dir::Right, 10),
        ])
    }

    #[test]
    fn two_sided_empty_and_singleton() {
        let r = max_clique_two_sided(&Representation::empty()).unwrap();
        assert_eq!(r.size(), 0);
        let r = max_clique_two_sided(&rep_of(vec![LShape::of(1, 0, 1, Dir::Right, 1)])).unwrap();
        assert_eq!(r.members, vec![1]);
    }

    #[test]
    fn two_sided_staircase_is_triangle() {
        let r = max_clique_two_sided(&staircase()).unwrap();
        assert_eq!(r.size(), 3);
    }

    #[test]
    fn two_sided_disconnected_pair() {
        let rep = rep_of(vec![
            LShape::of(1, 0, 1, Dir::Right, 1),
            LShape::of(2, 5, 2, Dir::Right, 1),
        ]);
        let r = max_clique_two_sided(&rep).unwrap();
        assert_eq!(r.size(), 1);
    }

    #[test]
    fn one_sided_staircase_and_disjoint() {
        assert_eq!(max_clique_one_sided(&staircase()).unwrap().size(), 3);
        let rep = rep_of(vec![
            LShape::of(1, 0, 1, Dir::Right, 1),
            LShape::of(2, 5, 2, Dir::Right, 1),
        ]);
        assert_eq!(max_clique_one_sided(&rep).unwrap().size(), 1);
    }

    #[test]
    fn square_hand_instance() {
        // A(x=0,s=4,R), B(x=2,s=6,L), C(x=3,s=5,R): brute-force size 2
        let rep = rep_of(vec![
            LShape::of(1, 0, 4, Dir::Right, 4),
            LShape::of(2, 2, 6, Dir::Left, 6),
            LShape::of(3, 3, 5, Dir::Right, 5),
        ]);
        let brute = max_clique_rep_bruteforce(&rep).len();
        let r = max_clique_square(&rep).unwrap();
        assert_eq!(r.size(), brute);
        assert_eq!(r.size(), 2);
    }

    #[test]
    fn square_two_crossing() {
        let rep = rep_of(vec![
            LShape::of(1, 0, 3, Dir::Right, 3),
            LShape::of(2, 1, 5, Dir::Right, 5),
        ]);
        assert_eq!(max_clique_square(&rep).unwrap().size(), 2);
    }

    #[test]
    fn dispatcher_routes_by_class() {
        // square instance routed through the dispatcher
        let rep = rep_of(vec![
            LShape::of(1, 0, 3, Dir::Right, 3),
            LShape::of(2, 1, 5, Dir::Left, 5),
        ]);
        assert_eq!(classify(&rep), ClassTag::SquareL);
        max_clique(&rep).unwrap();
        // mixed-direction non-square goes to the two-sided DP
        let rep = rep_of(vec![
            LShape::of(1, 0, 3, Dir::Right, 7),
            LShape::of(2, 1, 5, Dir::Left, 4),
        ]);
        assert_eq!(classify(&rep), ClassTag::TwoSidedL);
        max_clique(&rep).unwrap();
    }

    #[test]
    fn general_position_enforced() {
        let rep = rep_of(vec![
            LShape::of(1, 0, 3, Dir::Right, 2),
            LShape::of(2, 1, 3, Dir::Right, 2),
        ]);
        assert!(matches!(
            max_clique_two_sided(&rep),
            Err(CliqueError::GeneralPosition(_))
        ));
    }

    #[test]
    fn non_l_shape_rejected() {
        use crate::geometry::{GroundedString, Point};
        let s = GroundedString::new(
            9,
            Point::of(5, 0),
            Point::of(5, 2),
            Point::of(6, 7),
            false,
        );
        let rep = Representation::new(vec![
            Shape::L(LShape::of(1, 0, 3, Dir::Right, 2)),
            Shape::S(s),
        ])
        .unwrap();
        assert!(matches!(
            max_clique_two_sided(&rep),
            Err(CliqueError::NotLShapes(9))
        ));
    }

    #[test]
    fn random_instances_match_bruteforce() {
        use crate::gen::{generate, GenConfig};
        for seed in 0..40 {
            for &n in &[5usize, 10, 18] {
                let rep = generate(&GenConfig::new(ClassTag::TwoSidedL, n, seed));
                let want = max_clique_rep_bruteforce(&rep).len();
                assert_eq!(max_clique_two_sided(&rep).unwrap().size(), want);

                let rep = generate(&GenConfig::new(ClassTag::SquareL, n, seed));
                let want = max_clique_rep_bruteforce(&rep).len();
                assert_eq!(max_clique_square(&rep).unwrap().size(), want);

                let rep = generate(&GenConfig::new(ClassTag::OneSidedL, n, seed));
                let want = max_clique_rep_bruteforce(&rep).len();
                assert_eq!(max_clique_one_sided(&rep).unwrap().size(), want);
            }
        }
    }

    #[test]
    #[ignore]
    fn profile_two_sided_phases() {
        use crate::gen::{generate, GenConfig};
        use std::time::Instant;
        for n in [500usize, 1000, 2000] {
            let rep = generate(&GenConfig::new(ClassTag::TwoSidedL, n, 0));
            let ls: Vec<&LShape> = rep.shapes().iter().map(|s| s.as_l().unwrap()).collect();
            let t0 = Instant::now();
            let pairs = intersecting_pairs(&ls);
            let t1 = Instant::now();
            let xr = rank_of(ls.iter().enumerate().map(|(i, l)| (&l.ground_x, i)).collect());
            let hr = rank_of(ls.iter().enumerate().map(|(i, l)| (&l.height, i)).collect());
            let mut neighbor_points: Vec<Vec<WeightedPoint>> = vec![Vec::new(); n];
            for &(a, b) in &pairs {
                neighbor_points[a].push(WeightedPoint { id: b as u32, x: xr[b], y: hr[b], weight: 0 });
                neighbor_points[b].push(WeightedPoint { id: a as u32, x: xr[a], y: hr[a], weight: 0 });
            }
            let variant = match std::env::var("PROFILE_VARIANT").as_deref() {
                Ok("seg") => Variant::SegTree2D,
                Ok("naive") => Variant::Naive,
                _ => Variant::WideFanout,
            };
            let mut index: Vec<RangeMaxIndex> = neighbor_points
                .iter()
                .map(|pts| RangeMaxIndex::build(pts, variant).unwrap())
                .collect();
            let t2 = Instant::now();
            let mut schedule = pairs.clone();
            schedule.sort_by_key(|&(a, b)| hr[a].min(hr[b]));
            let nmax = n as u32;
            let mut best = 0u64;
            for &(a, b) in &schedule {
                let h_low = hr[a].min(hr[b]);
                let left = index[b].query_max(1, xr[a].wrapping_sub(1), 1, h_low - 1);
                let right = index[a].query_max(xr[b] + 1, nmax, 1, h_low - 1);
                let lw = left.map(|e| e.weight).unwrap_or(1);
                let rw = right.map(|e| e.weight).unwrap_or(1);
                let d = lw.max(rw) + 1;
                index[a].set_weight(b as u32, d).unwrap();
                index[b].set_weight(a as u32, d).unwrap();
                best = best.max(d);
            }
            let t3 = Instant::now();
            println!(
                "n={n} pairs={} omega={} pairs={:.2}s build={:.2}s loop={:.2}s",
                pairs.len(),
                best,
                (t1 - t0).as_secs_f64(),
                (t2 - t1).as_secs_f64(),
                (t3 - t2).as_secs_f64()
            );
        }
    }

    #[test]
    fn rational_coordinates_accepted() {
        let rep = rep_of(vec![
            LShape::new(1, rat(0), crate::geometry::ratio(5, 2), Dir::Right, rat(9)),
            LShape::new(2, crate::geometry::ratio(3, 2), rat(3), Dir::Left, rat(1)),
        ]);
        let r = max_clique_two_sided(&rep).unwrap();
        assert_eq!(r.size(), 2);
    }
}
