//! Text formats for shape sets and graphs.
//!
//! Shape files start with `GROUNDED v1`, then one record per line:
//! `L <id> <xg> <h> <L|R> <arm>` or `S <id> <x0> <y0> <xb> <yb> <x1> <y1>`.
//! Rationals are written `p/q` or as integer literals; `#` starts a comment.
//! Graph files start with `GRAPH v1 <n> <m>`, then m lines `u v` (1-based).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, Signed, Zero};

use crate::geometry::{
    Dir, GroundedString, LShape, Point, Rat, Representation, Shape,
};
use crate::graph::Graph;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate id {id}")]
    DuplicateId { line: usize, id: u32 },
}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Malformed {
        line,
        reason: reason.into(),
    })
}

fn parse_rat(tok: &str, line: usize) -> Result<Rat, IoError> {
    let parse_int = |s: &str| -> Result<BigInt, IoError> {
        BigInt::from_str(s).or_else(|_| err(line, format!("bad integer `{s}`")))
    };
    match tok.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q == BigInt::from(0) {
                return err(line, format!("zero denominator in `{tok}`"));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from(parse_int(tok)?)),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn parse_shapes(text: &str) -> Result<Representation, IoError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "GROUNDED v1")) => {}
        Some((ln, other)) => return err(ln, format!("expected `GROUNDED v1` header, got `{other}`")),
        None => return err(1, "empty file, expected `GROUNDED v1` header"),
    }
    let mut shapes = Vec::new();
    let mut seen = HashSet::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let shape = match toks[0] {
            "L" => {
                if toks.len() != 6 {
                    return err(ln, format!("L record needs 5 fields, got {}", toks.len() - 1));
                }
                let id: u32 = toks[1]
                    .parse()
                    .or_else(|_| err(ln, format!("bad id `{}`", toks[1])))?;
                let dir = match toks[4] {
                    "L" => Dir::Left,
                    "R" => Dir::Right,
                    d => return err(ln, format!("bad direction `{d}`, expected L or R")),
                };
                let ground_x = parse_rat(toks[2], ln)?;
                let height = parse_rat(toks[3], ln)?;
                let arm = parse_rat(toks[5], ln)?;
                if !height.is_positive() {
                    return err(ln, "L-shape height must be positive");
                }
                if !arm.is_positive() {
                    return err(ln, "L-shape arm must be positive");
                }
                Shape::L(LShape::new(id, ground_x, height, dir, arm))
            }
            "S" => {
                if toks.len() != 8 {
                    return err(ln, format!("S record needs 7 fields, got {}", toks.len() - 1));
                }
                let id: u32 = toks[1]
                    .parse()
                    .or_else(|_| err(ln, format!("bad id `{}`", toks[1])))?;
                let pt = |a: usize| -> Result<Point, IoError> {
                    Ok(Point::new(parse_rat(toks[a], ln)?, parse_rat(toks[a + 1], ln)?))
                };
                let ground = pt(2)?;
                let bend = pt(4)?;
                let tip = pt(6)?;
                if !ground.y.is_zero() {
                    return err(ln, "string ground endpoint must have y = 0");
                }
                if !bend.y.is_positive() {
                    return err(ln, "string bend must lie strictly above the ground line");
                }
                if ground == bend || bend == tip {
                    return err(ln, "degenerate string segment");
                }
                let degenerate = crate::geometry::orient(&ground, &bend, &tip) == 0;
                Shape::S(GroundedString::new(id, ground, bend, tip, degenerate))
            }
            k => return err(ln, format!("unknown record kind `{k}`")),
        };
        if !seen.insert(shape.id()) {
            return Err(IoError::DuplicateId {
                line: ln,
                id: shape.id(),
            });
        }
        shapes.push(shape);
    }
    Ok(Representation::new(shapes).expect("ids checked above"))
}

pub fn emit_shapes(rep: &Representation) -> String {
    let mut out = String::from("GROUNDED v1\n");
    for s in rep.shapes() {
        match s {
            Shape::L(l) => {
                let d = match l.dir {
                    Dir::Left => "L",
                    Dir::Right => "R",
                };
                writeln!(out, "L {} {} {} {} {}", l.id, l.ground_x, l.height, d, l.arm).unwrap();
            }
            Shape::S(g) => {
                writeln!(
                    out,
                    "S {} {} {} {} {} {} {}",
                    g.id, g.ground.x, g.ground.y, g.bend.x, g.bend.y, g.tip.x, g.tip.y
                )
                .unwrap();
            }
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let (n, m, hln) = match lines.next() {
        Some((ln, header)) => {
            let toks: Vec<&str> = header.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "GRAPH" || toks[1] != "v1" {
                return err(ln, format!("expected `GRAPH v1 <n> <m>` header, got `{header}`"));
            }
            let n: usize = toks[2]
                .parse()
                .or_else(|_| err(ln, format!("bad vertex count `{}`", toks[2])))?;
            let m: usize = toks[3]
                .parse()
                .or_else(|_| err(ln, format!("bad edge count `{}`", toks[3])))?;
            (n, m, ln)
        }
        None => return err(1, "empty file, expected `GRAPH v1 <n> <m>` header"),
    };
    let mut g = Graph::new(n);
    let mut count = 0usize;
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return err(ln, format!("edge line needs 2 fields, got {}", toks.len()));
        }
        let v = |s: &str| -> Result<usize, IoError> {
            let v: usize = s.parse().or_else(|_| err(ln, format!("bad vertex `{s}`")))?;
            if v == 0 || v > n {
                return err(ln, format!("vertex {v} out of range 1..={n}"));
            }
            Ok(v - 1)
        };
        let (u, w) = (v(toks[0])?, v(toks[1])?);
        if u == w {
            return err(ln, format!("self-loop at vertex {}", u + 1));
        }
        if g.has_edge(u, w) {
            return err(ln, format!("duplicate edge {} {}", u + 1, w + 1));
        }
        g.add_edge(u, w);
        count += 1;
    }
    if count != m {
        return err(hln, format!("header declares {m} edges, found {count}"));
    }
    Ok(g)
}

pub fn emit_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("GRAPH v1 {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    #[test]
    fn parse_l_record() {
        let rep = parse_shapes("GROUNDED v1\nL 1 0 2 R 5\n").unwrap();
        let l = rep.shapes()[0].as_l().unwrap();
        assert_eq!((l.id, &l.ground_x, &l.height, l.dir, &l.arm),
                   (1, &rat(0), &rat(2), Dir::Right, &rat(5)));
    }

    #[test]
    fn parse_s_record_collinear() {
        let rep = parse_shapes("GROUNDED v1\nS 1 0/1 0 0 2 5 2\n").unwrap();
        match &rep.shapes()[0] {
            Shape::S(g) => {
                assert_eq!(g.bend, Point::of(0, 2));
                assert!(!g.degenerate_bend);
            }
            _ => panic!("expected string record"),
        }
        // straight string gets the degenerate flag automatically
        let rep = parse_shapes("GROUNDED v1\nS 2 0 0 1 1 2 2\n").unwrap();
        match &rep.shapes()[0] {
            Shape::S(g) => assert!(g.degenerate_bend),
            _ => panic!("expected string record"),
        }
    }

    #[test]
    fn round_trip_identity() {
        let text = "GROUNDED v1\nL 1 0 2 R 5\nL 2 7/2 4 L 3/2\nS 3 1/3 0 2 5 -4 9\n";
        let rep = parse_shapes(text).unwrap();
        assert_eq!(emit_shapes(&rep), text);
        assert_eq!(parse_shapes(&emit_shapes(&rep)).unwrap(), rep);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_shapes("GROUNDED v1\nL 1 0 2 R 5\nL 1 9 2 R 5\n").unwrap_err();
        assert!(matches!(e, IoError::DuplicateId { line: 3, id: 1 }));
        let e = parse_shapes("GROUNDED v1\nL 5 0 2 X 5\n").unwrap_err();
        assert!(matches!(e, IoError::Malformed { line: 2, .. }));
        let e = parse_shapes("GROUNDED v1\nL 5 1/0 2 R 5\n").unwrap_err();
        assert!(e.to_string().contains("zero denominator"));
        let e = parse_shapes("BAD HEADER\n").unwrap_err();
        assert!(matches!(e, IoError::Malformed { line: 1, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let rep = parse_shapes("# fixture\nGROUNDED v1\n\nL 1 0 2 R 5 # arm\n").unwrap();
        assert_eq!(rep.len(), 1);
    }

    #[test]
    fn graph_round_trip() {
        let text = "GRAPH v1 4 3\n1 2\n2 3\n3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 3));
        assert_eq!(emit_graph(&g), text);
    }

    #[test]
    fn graph_errors() {
        assert!(parse_graph("GRAPH v1 3 1\n1 1\n").is_err());
        assert!(parse_graph("GRAPH v1 3 1\n1 4\n").is_err());
        assert!(parse_graph("GRAPH v1 3 2\n1 2\n").is_err());
        assert!(parse_graph("GRAPH v1 3 1\n1 2\n1 2\n").is_err());
    }
}
