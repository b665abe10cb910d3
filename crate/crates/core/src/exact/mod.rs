//! Exact rational number sets, graphs on their indices, sumsets and
//! difference sets along a graph, iterated sumsets, and the brute-force
//! arithmetic-progression oracle the rest of the crate is validated
//! against.

mod ap;
mod graph;
mod rat;
mod set;

pub use ap::{count_k_aps, ApWitness};
pub use graph::PairGraph;
pub use rat::{format_rat, parse_rat, rat, rat_pow, ratio, Rat};
pub use set::NumberSet;

use crate::{Error, Result};

/// Sumset of `a` along `g`: all sums `a_i + a_j` over edges `{i,j}` of `g`.
/// A loop at `i` contributes `2 a_i`.
pub fn sumset_along_graph(a: &NumberSet, g: &PairGraph) -> Result<NumberSet> {
    check_paired(a, g)?;
    let mut out = Vec::with_capacity(g.edge_count() + g.loop_count());
    for (i, j) in g.edges() {
        out.push(a.get(i) + a.get(j));
    }
    for i in g.loops() {
        out.push(a.get(i) + a.get(i));
    }
    Ok(NumberSet::from_values(out))
}

/// Difference set of `a` along `g`: all values `a_i - a_j` and `a_j - a_i`
/// over edges of `g`. Undirected edges contribute both signs; a loop
/// contributes 0.
pub fn difference_set_along_graph(a: &NumberSet, g: &PairGraph) -> Result<NumberSet> {
    check_paired(a, g)?;
    let mut out = Vec::with_capacity(2 * g.edge_count() + g.loop_count());
    for (i, j) in g.edges() {
        let d = a.get(i) - a.get(j);
        out.push(-&d);
        out.push(d);
    }
    for _ in g.loops() {
        out.push(rat(0));
    }
    Ok(NumberSet::from_values(out))
}

/// Full sumset `{x + y : x in a, y in b}` over all pairs.
pub fn full_sumset(a: &NumberSet, b: &NumberSet) -> NumberSet {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            out.push(x + y);
        }
    }
    NumberSet::from_values(out)
}

/// Iterated sumset `kB - lB`: sums of `k` elements of `b` minus sums of `l`
/// elements of `b`. With `k = l = 0` the result is `{0}`; an empty `b` with
/// `k + l > 0` yields the empty set.
pub fn iterated_sumset(b: &NumberSet, k: usize, l: usize) -> NumberSet {
    if k + l == 0 {
        return NumberSet::from_values([rat(0)]);
    }
    if b.is_empty() {
        return NumberSet::empty();
    }
    let neg = NumberSet::from_values(b.iter().map(|x| -x));
    let mut acc = NumberSet::from_values([rat(0)]);
    for _ in 0..k {
        acc = full_sumset(&acc, b);
    }
    for _ in 0..l {
        acc = full_sumset(&acc, &neg);
    }
    acc
}

/// `|A + B| / |A|` as an exact rational.
pub fn doubling_ratio(a: &NumberSet, b: &NumberSet) -> Result<Rat> {
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    let sum = full_sumset(a, b);
    Ok(ratio(sum.len() as i64, a.len() as i64))
}

fn check_paired(a: &NumberSet, g: &PairGraph) -> Result<()> {
    if g.vertex_count() != a.len() {
        return Err(Error::DimensionMismatch {
            set: a.len(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}
