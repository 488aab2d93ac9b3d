//! Exact rational plane primitives and grounded shape types.
//!
//! Every predicate here is exact: coordinates are arbitrary-precision
//! rationals and no epsilon comparison appears anywhere. Closed-segment
//! semantics are used throughout, so touching endpoints count as an
//! intersection.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Exact rational coordinate. `BigRational` keeps the canonical form
/// (reduced, positive denominator) for us.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat<T: Into<BigInt>>(v: T) -> Rat {
    BigRational::from_integer(v.into())
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub type ShapeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn of(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// `a` and `b` must differ.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment");
        Segment { a, b }
    }
}

fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of the cross product (b - a) x (c - a).
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let cross = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&cross)
}

fn within(lo: &Rat, v: &Rat, hi: &Rat) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= v && v <= hi
}

/// `p` assumed collinear with `a`-`b`; true iff `p` lies on the closed segment.
fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    within(&a.x, &p.x, &b.x) && within(&a.y, &p.y, &b.y)
}

/// Exact closed-segment intersection test.
pub fn seg_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (p1, p2, p3, p4) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(p3, p4, p1))
        || (d2 == 0 && on_segment(p3, p4, p2))
        || (d3 == 0 && on_segment(p1, p2, p3))
        || (d4 == 0 && on_segment(p1, p2, p4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Left,
    Right,
}

/// Axis-aligned grounded 1-bend string: a vertical segment from the ground
/// line up to the bend, plus a horizontal arm at the bend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LShape {
    pub id: ShapeId,
    pub ground_x: Rat,
    pub height: Rat,
    pub dir: Dir,
    pub arm: Rat,
}

impl LShape {
    pub fn new(id: ShapeId, ground_x: Rat, height: Rat, dir: Dir, arm: Rat) -> Self {
        assert!(height.is_positive(), "L-shape height must be positive");
        assert!(arm.is_positive(), "L-shape arm must be positive");
        LShape {
            id,
            ground_x,
            height,
            dir,
            arm,
        }
    }

    pub fn of(id: ShapeId, ground_x: i64, height: i64, dir: Dir, arm: i64) -> Self {
        LShape::new(id, rat(ground_x), rat(height), dir, rat(arm))
    }

    /// Bend point: `(ground_x, height)`.
    pub fn bend(&self) -> Point {
        Point::new(self.ground_x.clone(), self.height.clone())
    }

    /// X-coordinate of the free end of the horizontal arm.
    pub fn arm_end_x(&self) -> Rat {
        match self.dir {
            Dir::Left => &self.ground_x - &self.arm,
            Dir::Right => &self.ground_x + &self.arm,
        }
    }

    /// Leftmost x of the horizontal arm.
    pub fn arm_lo(&self) -> Rat {
        match self.dir {
            Dir::Left => self.arm_end_x(),
            Dir::Right => self.ground_x.clone(),
        }
    }

    /// Rightmost x of the horizontal arm.
    pub fn arm_hi(&self) -> Rat {
        match self.dir {
            Dir::Left => self.ground_x.clone(),
            Dir::Right => self.arm_end_x(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.arm == self.height
    }

    pub fn vertical(&self) -> Segment {
        Segment::new(
            Point::new(self.ground_x.clone(), rat(0)),
            self.bend(),
        )
    }

    pub fn horizontal(&self) -> Segment {
        Segment::new(self.bend(), Point::new(self.arm_end_x(), self.height.clone()))
    }

    pub fn segments(&self) -> Vec<Segment> {
        vec![self.vertical(), self.horizontal()]
    }

    /// Specialized exact intersection predicate for two L-shapes.
    ///
    /// Case analysis instead of generic segment tests: verticals meet only
    /// when they share an x, horizontals only when they share a height, and
    /// otherwise a horizontal of one crosses the vertical of the other.
    pub fn intersects(&self, other: &LShape) -> bool {
        let (a, b) = (self, other);
        // vertical x vertical
        if a.ground_x == b.ground_x {
            return true;
        }
        // horizontal x horizontal
        if a.height == b.height && a.arm_lo() <= b.arm_hi() && b.arm_lo() <= a.arm_hi() {
            return true;
        }
        // horizontal of a x vertical of b
        if a.height <= b.height && a.arm_lo() <= b.ground_x && b.ground_x <= a.arm_hi() {
            return true;
        }
        // horizontal of b x vertical of a
        if b.height <= a.height && b.arm_lo() <= a.ground_x && a.ground_x <= b.arm_hi() {
            return true;
        }
        false
    }
}

/// Grounded 1-bend string with arbitrary (not axis-aligned) segments.
///
/// A collinear bend is allowed when `degenerate_bend` is set, so straight
/// grounded segments can be carried in the same type with a nominal bend
/// point placed anywhere on the segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedString {
    pub id: ShapeId,
    pub ground: Point,
    pub bend: Point,
    pub tip: Point,
    pub degenerate_bend: bool,
}

impl GroundedString {
    pub fn new(
        id: ShapeId,
        ground: Point,
        bend: Point,
        tip: Point,
        degenerate_bend: bool,
    ) -> Self {
        assert!(ground.y.is_zero(), "ground endpoint must lie on y = 0");
        assert!(bend.y.is_positive(), "bend must lie strictly above the ground line");
        assert!(ground != bend && bend != tip, "degenerate string segment");
        if !degenerate_bend {
            assert!(
                orient(&ground, &bend, &tip) != 0,
                "collinear bend requires the degenerate_bend flag"
            );
        }
        GroundedString {
            id,
            ground,
            bend,
            tip,
            degenerate_bend,
        }
    }

    pub fn segments(&self) -> Vec<Segment> {
        vec![
            Segment::new(self.ground.clone(), self.bend.clone()),
            Segment::new(self.bend.clone(), self.tip.clone()),
        ]
    }

    /// Weakly y-monotone along the ground -> bend -> tip path.
    pub fn is_y_monotone(&self) -> bool {
        self.bend.y >= self.ground.y && self.tip.y >= self.bend.y
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    L(LShape),
    S(GroundedString),
}

impl Shape {
    pub fn id(&self) -> ShapeId {
        match self {
            Shape::L(l) => l.id,
            Shape::S(s) => s.id,
        }
    }

    pub fn ground_x(&self) -> &Rat {
        match self {
            Shape::L(l) => &l.ground_x,
            Shape::S(s) => &s.ground.x,
        }
    }

    pub fn segments(&self) -> Vec<Segment> {
        match self {
            Shape::L(l) => l.segments(),
            Shape::S(s) => s.segments(),
        }
    }

    pub fn as_l(&self) -> Option<&LShape> {
        match self {
            Shape::L(l) => Some(l),
            Shape::S(_) => None,
        }
    }
}

/// True iff the two shapes share at least one point.
pub fn strings_intersect(a: &Shape, b: &Shape) -> bool {
    if let (Shape::L(la), Shape::L(lb)) = (a, b) {
        return la.intersects(lb);
    }
    let sa = a.segments();
    let sb = b.segments();
    sa.iter().any(|s| sb.iter().any(|t| seg_intersect(s, t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Generic1Bend,
    YMonotone,
    TwoSidedL,
    OneSidedL,
    SquareL,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::Generic1Bend => "generic-1-bend",
            ClassTag::YMonotone => "y-monotone",
            ClassTag::TwoSidedL => "two-sided-l",
            ClassTag::OneSidedL => "one-sided-l",
            ClassTag::SquareL => "square-l",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("duplicate shape id {0}")]
    DuplicateId(ShapeId),
}

/// An ordered collection of grounded shapes with distinct ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Representation {
    shapes: Vec<Shape>,
}

impl Representation {
    pub fn new(shapes: Vec<Shape>) -> Result<Self, GeometryError> {
        let mut seen = HashMap::new();
        for s in &shapes {
            if seen.insert(s.id(), ()).is_some() {
                return Err(GeometryError::DuplicateId(s.id()));
            }
        }
        Ok(Representation { shapes })
    }

    pub fn empty() -> Self {
        Representation { shapes: Vec::new() }
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn shape_by_id(&self, id: ShapeId) -> Option<&Shape> {
        self.shapes.iter().find(|s| s.id() == id)
    }
}

/// Most specific class the representation belongs to.
pub fn classify(rep: &Representation) -> ClassTag {
    if rep.is_empty() {
        return ClassTag::SquareL;
    }
    let ls: Option<Vec<&LShape>> = rep.shapes().iter().map(|s| s.as_l()).collect();
    if let Some(ls) = ls {
        if ls.iter().all(|l| l.is_square()) {
            return ClassTag::SquareL;
        }
        if ls.iter().all(|l| l.dir == ls[0].dir) {
            return ClassTag::OneSidedL;
        }
        return ClassTag::TwoSidedL;
    }
    let monotone = rep.shapes().iter().all(|s| match s {
        Shape::L(_) => true,
        Shape::S(g) => g.is_y_monotone(),
    });
    if monotone {
        ClassTag::YMonotone
    } else {
        ClassTag::Generic1Bend
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SharedGroundX(ShapeId, ShapeId),
    SharedHeight(ShapeId, ShapeId),
    CollinearSegments(ShapeId, ShapeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedGroundX(a, b) => write!(f, "shapes {a} and {b} share a ground x"),
            Violation::SharedHeight(a, b) => write!(f, "shapes {a} and {b} share a height"),
            Violation::CollinearSegments(a, b) => {
                write!(f, "shapes {a} and {b} have collinear segments")
            }
        }
    }
}

fn collinear_segments(s: &Segment, t: &Segment) -> bool {
    orient(&s.a, &s.b, &t.a) == 0 && orient(&s.a, &s.b, &t.b) == 0
}

/// General-position check: distinct ground x-coordinates, distinct L-shape
/// heights, and no two segments of distinct generic strings on a common
/// supporting line.
pub fn validate_general_position(rep: &Representation) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let shapes = rep.shapes();
    for i in 0..shapes.len() {
        for j in i + 1..shapes.len() {
            let (a, b) = (&shapes[i], &shapes[j]);
            if a.ground_x() == b.ground_x() {
                violations.push(Violation::SharedGroundX(a.id(), b.id()));
            }
            match (a, b) {
                (Shape::L(la), Shape::L(lb)) => {
                    if la.height == lb.height {
                        violations.push(Violation::SharedHeight(la.id, lb.id));
                    }
                }
                _ => {
                    // Generic strings: no pair of segments may share a line.
                    let sa = a.segments();
                    let sb = b.segments();
                    if sa
                        .iter()
                        .any(|s| sb.iter().any(|t| collinear_segments(s, t)))
                    {
                        violations.push(Violation::CollinearSegments(a.id(), b.id()));
                    }
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> Segment {
        Segment::new(Point::of(ax, ay), Point::of(bx, by))
    }

    #[test]
    fn crossing_diagonals() {
        assert!(seg_intersect(&seg(0, 0, 2, 2), &seg(0, 2, 2, 0)));
    }

    #[test]
    fn disjoint_collinear() {
        assert!(!seg_intersect(&seg(0, 0, 1, 0), &seg(2, 0, 3, 0)));
    }

    #[test]
    fn overlapping_collinear() {
        assert!(seg_intersect(&seg(0, 0, 2, 0), &seg(1, 0, 3, 0)));
    }

    #[test]
    fn touching_endpoint_counts() {
        assert!(seg_intersect(&seg(0, 0, 1, 1), &seg(1, 1, 2, 0)));
    }

    #[test]
    fn l_shapes_crossing() {
        let a = LShape::of(1, 0, 2, Dir::Right, 5);
        let b = LShape::of(2, 3, 4, Dir::Left, 2);
        assert!(a.intersects(&b));
        assert!(strings_intersect(&Shape::L(a), &Shape::L(b)));
    }

    #[test]
    fn l_shapes_disjoint() {
        let a = LShape::of(1, 0, 1, Dir::Right, 1);
        let b = LShape::of(2, 5, 1, Dir::Right, 1);
        assert!(!a.intersects(&b));
    }

    #[test]
    fn l_predicate_matches_generic_segments() {
        // small exhaustive sweep over integer parameters
        let mut cases = Vec::new();
        for x in 0..4i64 {
            for h in 1..4i64 {
                for arm in 1..4i64 {
                    for dir in [Dir::Left, Dir::Right] {
                        cases.push(LShape::new(0, rat(x), rat(h), dir, rat(arm)));
                    }
                }
            }
        }
        for a in &cases {
            for b in &cases {
                let fast = a.intersects(b);
                let slow = a
                    .segments()
                    .iter()
                    .any(|s| b.segments().iter().any(|t| seg_intersect(s, t)));
                assert_eq!(fast, slow, "mismatch for {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn equal_heights_violate_general_position() {
        let rep = Representation::new(vec![
            Shape::L(LShape::of(1, 0, 2, Dir::Right, 1)),
            Shape::L(LShape::of(2, 3, 2, Dir::Right, 1)),
        ])
        .unwrap();
        let vs = validate_general_position(&rep).unwrap_err();
        assert_eq!(vs, vec![Violation::SharedHeight(1, 2)]);
    }

    #[test]
    fn staircase_is_ok_and_one_sided() {
        let rep = Representation::new(vec![
            Shape::L(LShape::of(1, 0, 2, Dir::Right, 10)),
            Shape::L(LShape::of(2, 1, 3, Dir::Right, 10)),
            Shape::L(LShape::of(3, 2, 4, Dir::Right, 10)),
        ])
        .unwrap();
        assert!(validate_general_position(&rep).is_ok());
        assert_eq!(classify(&rep), ClassTag::OneSidedL);
    }

    #[test]
    fn classify_square_beats_mixed_dir() {
        let rep = Representation::new(vec![
            Shape::L(LShape::of(1, 0, 2, Dir::Right, 2)),
            Shape::L(LShape::of(2, 3, 4, Dir::Left, 4)),
        ])
        .unwrap();
        assert_eq!(classify(&rep), ClassTag::SquareL);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let r = Representation::new(vec![
            Shape::L(LShape::of(1, 0, 2, Dir::Right, 2)),
            Shape::L(LShape::of(1, 3, 4, Dir::Left, 4)),
        ]);
        assert!(r.is_err());
    }
}
