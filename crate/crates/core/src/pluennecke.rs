//! Exact additive-growth checks: the Plünnecke–Ruzsa inequality on
//! iterated sumsets, scaled-copy cover counts, and the doubling gate
//! that decides whether a set is concentrated enough for the direct
//! enumeration route.

use crate::exact::{doubling_ratio, full_sumset, iterated_sumset, rat, rat_pow, NumberSet, Rat};
use crate::pattern::{facet_normals, IntVector};
use crate::{Error, Result};

/// One verified instance of the growth inequality
/// `|kB - lB| <= (|A+B|/|A|)^(k+l) * |A|`, kept exactly in rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluenneckeResult {
    pub base_size: u64,
    pub delta: Rat,
    pub k: usize,
    pub l: usize,
    pub lhs: u64,
    pub rhs_bound: Rat,
    pub holds: bool,
}

/// Evaluates the growth inequality for one `(A, B, k, l)` instance.
/// Both sides are exact, so `holds` is a theorem check, not a float
/// comparison; it is expected to be true for every input.
pub fn pluennecke_check(
    a: &NumberSet,
    b: &NumberSet,
    k: usize,
    l: usize,
) -> Result<PluenneckeResult> {
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    let delta = doubling_ratio(a, b)?;
    let lhs = iterated_sumset(b, k, l).len() as u64;
    let rhs_bound = rat_pow(&delta, (k + l) as u32) * Rat::from_integer(a.len().into());
    let holds = Rat::from_integer(lhs.into()) <= rhs_bound;
    Ok(PluenneckeResult {
        base_size: a.len() as u64,
        delta,
        k,
        l,
        lhs,
        rhs_bound,
        holds,
    })
}

/// The distinct values of `x_1·A + x_2·A + ... + x_d·A` for one integer
/// coefficient vector, computed by folding scaled copies of `A` into a
/// running sumset. This equals the number of nonempty hyperplane
/// classes of `A^d` orthogonal to the coefficient vector, which the
/// class census recomputes independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub coefficients: IntVector,
    pub distinct_offsets: u64,
}

pub fn cover_count(a: &NumberSet, coefficients: &IntVector) -> Result<CoverResult> {
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    let mut acc = NumberSet::from_values([rat(0)]);
    for c in coefficients.coords() {
        let scaled = a.scale(&Rat::from_integer(c.clone()));
        acc = full_sumset(&acc, &scaled);
    }
    Ok(CoverResult {
        coefficients: coefficients.clone(),
        distinct_offsets: acc.len() as u64,
    })
}

/// Verdict of the small-doubling gate for the direct enumeration route
/// in dimension `d`: a set qualifies when its doubling ratio `|A+A|/|A|`
/// stays under the cap. Singletons always qualify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectModeGate {
    pub dimension: usize,
    pub set_size: u64,
    pub doubling: Rat,
    pub cap: Rat,
    pub allowed: bool,
    /// One cover count per simplex facet normal, in facet order; empty
    /// when the gate refuses, since the direct route is not taken.
    pub facet_counts: Vec<CoverResult>,
}

pub fn direct_mode_gate(a: &NumberSet, d: usize, cap: &Rat) -> Result<DirectModeGate> {
    // The direct route enumerates simplex images, so the dimension must
    // support a full facet frame.
    let normals = facet_normals(d)?;
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    let doubling = doubling_ratio(a, a)?;
    let allowed = a.len() == 1 || doubling <= *cap;
    let facet_counts = if allowed {
        normals
            .iter()
            .map(|nu| cover_count(a, nu))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(DirectModeGate {
        dimension: d,
        set_size: a.len() as u64,
        doubling,
        cap: cap.clone(),
        allowed,
        facet_counts,
    })
}
