use super::rat::Rat;
use super::set::NumberSet;
use num::Signed;

/// A `k`-term arithmetic progression found inside a number set, canonical
/// form: terms ascending, common difference positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApWitness {
    terms: Vec<Rat>,
    diff: Rat,
}

impl ApWitness {
    /// Builds a witness from its terms. Panics unless the terms form a
    /// progression with positive common difference and length at least 3.
    pub fn new(terms: Vec<Rat>) -> Self {
        assert!(terms.len() >= 3, "progression needs at least 3 terms");
        let diff = &terms[1] - &terms[0];
        assert!(diff.is_positive(), "common difference must be positive");
        for w in terms.windows(2) {
            assert_eq!(&w[1] - &w[0], diff, "terms are not equally spaced");
        }
        ApWitness { terms, diff }
    }

    /// The canonical witness with first term `start`, the given difference
    /// taken by absolute value, and `k` terms.
    pub fn from_start(start: &Rat, diff: &Rat, k: usize) -> Self {
        let d = diff.abs();
        let mut terms = Vec::with_capacity(k);
        let mut t = start.clone();
        for _ in 0..k {
            terms.push(t.clone());
            t += &d;
        }
        ApWitness::new(terms)
    }

    pub fn terms(&self) -> &[Rat] {
        &self.terms
    }

    pub fn common_difference(&self) -> &Rat {
        &self.diff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Counts all nontrivial `k`-term arithmetic progressions inside `a`
/// (`k >= 3`, positive common difference), returning the count and the
/// witnesses in lexicographic order.
///
/// This is the exhaustive oracle: every pair of elements is tried as the
/// first two terms of a progression and the remaining terms are membership
/// checks.
pub fn count_k_aps(a: &NumberSet, k: usize) -> (u64, Vec<ApWitness>) {
    assert!(k >= 3, "progressions of length {k} are not counted");
    let elems = a.as_slice();
    let mut witnesses = Vec::new();
    for i in 0..elems.len() {
        'pair: for j in (i + 1)..elems.len() {
            let d = &elems[j] - &elems[i];
            let mut t = elems[j].clone();
            for _ in 2..k {
                t += &d;
                if !a.contains(&t) {
                    continue 'pair;
                }
            }
            witnesses.push(ApWitness::from_start(&elems[i], &d, k));
        }
    }
    // Outer loops emit first terms ascending, then differences ascending,
    // which is exactly lexicographic order on the term sequences.
    (witnesses.len() as u64, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn set(vals: &[i64]) -> NumberSet {
        NumberSet::from_values(vals.iter().map(|&v| rat(v)))
    }

    #[test]
    fn interval_three_term() {
        let (count, ws) = count_k_aps(&set(&[0, 1, 2, 3, 4]), 3);
        assert_eq!(count, 4);
        let diffs: Vec<_> = ws.iter().map(|w| w.common_difference().clone()).collect();
        assert_eq!(diffs.iter().filter(|d| **d == rat(1)).count(), 3);
        assert_eq!(diffs.iter().filter(|d| **d == rat(2)).count(), 1);
    }

    #[test]
    fn interval_four_term() {
        let (count, ws) = count_k_aps(&set(&[0, 1, 2, 3]), 4);
        assert_eq!(count, 1);
        assert_eq!(ws[0].terms(), &[rat(0), rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn no_midpoint_no_ap() {
        assert_eq!(count_k_aps(&set(&[0, 1, 3]), 3).0, 0);
    }

    #[test]
    fn witnesses_are_sorted_and_inside_the_set() {
        let a = set(&[0, 2, 4, 6, 10]);
        let (_, ws) = count_k_aps(&a, 3);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
        for w in &ws {
            for t in w.terms() {
                assert!(a.contains(t));
            }
        }
    }

    #[test]
    fn closed_form_on_intervals() {
        // An n-term progression holds sum over q >= 1 of max(0, n - (k-1)q)
        // k-term progressions.
        for n in 3..=30i64 {
            let a = set(&(0..n).collect::<Vec<_>>());
            for k in 3..=5usize {
                let expected: i64 = (1..)
                    .map(|q| n - (k as i64 - 1) * q)
                    .take_while(|&c| c > 0)
                    .sum();
                assert_eq!(count_k_aps(&a, k).0, expected as u64, "n={n} k={k}");
            }
        }
    }

    #[test]
    #[should_panic]
    fn rejects_short_progressions() {
        count_k_aps(&set(&[0, 1]), 2);
    }
}
