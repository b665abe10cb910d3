use crate::exact::{format_rat, NumberSet, PairGraph, Rat};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A point with exact rational coordinates. Ordering is lexicographic in
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", format_rat(&self.x), format_rat(&self.y))
    }
}

/// The four axis-tied line families an arrangement may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineFamily {
    /// `y = p`
    Horizontal,
    /// `x = p`
    Vertical,
    /// `x - y = p`
    Diagonal,
    /// `x + y = p`
    Antidiagonal,
}

impl LineFamily {
    /// The parameter of the unique line of this family through `p`.
    pub fn parameter_of(&self, p: &Point2) -> Rat {
        match self {
            LineFamily::Horizontal => p.y.clone(),
            LineFamily::Vertical => p.x.clone(),
            LineFamily::Diagonal => &p.x - &p.y,
            LineFamily::Antidiagonal => &p.x + &p.y,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LineFamily::Horizontal => "horizontal",
            LineFamily::Vertical => "vertical",
            LineFamily::Diagonal => "diagonal",
            LineFamily::Antidiagonal => "antidiagonal",
        }
    }
}

/// One line: a family plus the family parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line2 {
    pub family: LineFamily,
    pub parameter: Rat,
}

impl Line2 {
    pub fn contains(&self, p: &Point2) -> bool {
        self.family.parameter_of(p) == self.parameter
    }

    /// Crossing point of two lines from different families. Lines of the
    /// same family are parallel and never cross.
    pub fn crossing(&self, other: &Line2) -> Option<Point2> {
        use LineFamily::*;
        let (a, b) = (self, other);
        if a.family == b.family {
            return None;
        }
        // Normalize so the match below covers each unordered pair once.
        let (a, b) = if a.family <= b.family { (a, b) } else { (b, a) };
        let (p, q) = (&a.parameter, &b.parameter);
        let half = |r: Rat| r / Rat::from_integer(2.into());
        Some(match (a.family, b.family) {
            (Horizontal, Vertical) => Point2::new(q.clone(), p.clone()),
            (Horizontal, Diagonal) => Point2::new(q + p, p.clone()),
            (Horizontal, Antidiagonal) => Point2::new(q - p, p.clone()),
            (Vertical, Diagonal) => Point2::new(p.clone(), p - q),
            (Vertical, Antidiagonal) => Point2::new(p.clone(), q - p),
            (Diagonal, Antidiagonal) => Point2::new(half(p + q), half(q - p)),
            _ => unreachable!("families are ordered"),
        })
    }
}

/// A point/line incidence structure whose lines come from fixed families.
///
/// Construction guarantees that every point lies on exactly one line of
/// each active family and that this line is present in the arrangement, so
/// the counts `|P|` and `|L|` and all incidences are exact.
#[derive(Debug, Clone)]
pub struct Arrangement2 {
    points: Vec<Point2>,
    families: Vec<LineFamily>,
    lines: BTreeMap<LineFamily, BTreeSet<Rat>>,
}

impl Arrangement2 {
    /// Assembles an arrangement and checks the per-family covering
    /// invariant. `lines` must supply, per active family, the parameters of
    /// the lines present.
    fn assemble(
        points: BTreeSet<Point2>,
        families: Vec<LineFamily>,
        lines: BTreeMap<LineFamily, BTreeSet<Rat>>,
    ) -> Result<Self> {
        for p in &points {
            for fam in &families {
                let param = fam.parameter_of(p);
                if !lines.get(fam).is_some_and(|ps| ps.contains(&param)) {
                    return Err(Error::UncoveredPoint {
                        x: format_rat(&p.x),
                        y: format_rat(&p.y),
                        family: fam.name(),
                    });
                }
            }
        }
        Ok(Arrangement2 {
            points: points.into_iter().collect(),
            families,
            lines,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn contains_point(&self, p: &Point2) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn families(&self) -> &[LineFamily] {
        &self.families
    }

    pub fn has_family(&self, fam: LineFamily) -> bool {
        self.families.contains(&fam)
    }

    /// Line parameters of one family, ascending.
    pub fn family_parameters(&self, fam: LineFamily) -> impl Iterator<Item = &Rat> {
        self.lines.get(&fam).into_iter().flatten()
    }

    pub fn line_count(&self) -> usize {
        self.lines.values().map(|s| s.len()).sum()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// All lines in canonical order (family, then parameter).
    pub fn lines(&self) -> Vec<Line2> {
        let mut out = Vec::with_capacity(self.line_count());
        for (fam, params) in &self.lines {
            for p in params {
                out.push(Line2 {
                    family: *fam,
                    parameter: p.clone(),
                });
            }
        }
        out
    }

    pub(crate) fn expect_families(&self, expected: &[LineFamily]) -> Result<()> {
        if self.families != expected {
            return Err(Error::WrongFamilies {
                expected: expected.iter().map(|f| f.name()).collect(),
                got: self.families.iter().map(|f| f.name().to_string()).collect(),
            });
        }
        Ok(())
    }
}

/// Points of the edge set of `g` drawn inside `A x A`: each edge `{i, j}`
/// contributes both `(a_i, a_j)` and `(a_j, a_i)`, a loop contributes the
/// diagonal point `(a_i, a_i)`.
fn edge_points(a: &NumberSet, g: &PairGraph) -> Result<BTreeSet<Point2>> {
    if g.vertex_count() != a.len() {
        return Err(Error::DimensionMismatch {
            set: a.len(),
            graph: g.vertex_count(),
        });
    }
    let mut points = BTreeSet::new();
    for (i, j) in g.edges() {
        points.insert(Point2::new(a.get(i).clone(), a.get(j).clone()));
        points.insert(Point2::new(a.get(j).clone(), a.get(i).clone()));
    }
    for i in g.loops() {
        points.insert(Point2::new(a.get(i).clone(), a.get(i).clone()));
    }
    Ok(points)
}

/// The vertical/horizontal/antidiagonal arrangement of a sumset instance:
/// points from the edges of `g`, lines `x = a` and `y = a` for every
/// `a` in `A`, and `x + y = t` for every sum `t` along `g`.
pub fn build_sum_arrangement(a: &NumberSet, g: &PairGraph) -> Result<Arrangement2> {
    let points = edge_points(a, g)?;
    let sums = crate::exact::sumset_along_graph(a, g)?;
    let axis: BTreeSet<Rat> = a.iter().cloned().collect();
    let mut lines = BTreeMap::new();
    lines.insert(LineFamily::Vertical, axis.clone());
    lines.insert(LineFamily::Horizontal, axis);
    lines.insert(LineFamily::Antidiagonal, sums.iter().cloned().collect());
    Arrangement2::assemble(
        points,
        vec![
            LineFamily::Vertical,
            LineFamily::Horizontal,
            LineFamily::Antidiagonal,
        ],
        lines,
    )
}

/// The horizontal/diagonal/antidiagonal arrangement used for progression
/// extraction: points from the edges of `gp`, lines `y = a` for `a` in `A`,
/// `x - y = t` for `t` in `diffs`, and `x + y = s` for `s` in `sums`.
///
/// `diffs` and `sums` must cover the difference and sum sets along `gp`;
/// an uncovered point reports which family was too small.
pub fn build_ap_arrangement(
    a: &NumberSet,
    gp: &PairGraph,
    diffs: &NumberSet,
    sums: &NumberSet,
) -> Result<Arrangement2> {
    let points = edge_points(a, gp)?;
    let mut lines = BTreeMap::new();
    lines.insert(LineFamily::Horizontal, a.iter().cloned().collect());
    lines.insert(LineFamily::Diagonal, diffs.iter().cloned().collect());
    lines.insert(LineFamily::Antidiagonal, sums.iter().cloned().collect());
    Arrangement2::assemble(
        points,
        vec![
            LineFamily::Horizontal,
            LineFamily::Diagonal,
            LineFamily::Antidiagonal,
        ],
        lines,
    )
}
