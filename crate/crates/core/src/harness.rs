//! Reproducible instance generation and canned experiments: structured
//! set families, graph families over them, a portable seeded generator,
//! and a battery runner for the growth inequality.

use crate::arrangement::pipeline_k3;
use crate::exact::{count_k_aps, rat, sumset_along_graph, NumberSet, PairGraph, Rat};
use crate::pluennecke::pluennecke_check;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::time::Instant;

/// SplitMix64 generator. Hand-rolled on purpose: the fixture values in
/// the test suite depend on the exact stream, and this algorithm is
/// tiny, well known, and identical on every platform and toolchain.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n`, unbiased by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let n128 = n as u128;
        let bound = ((u64::MAX as u128 + 1) / n128) * n128;
        loop {
            let v = self.next_u64() as u128;
            if v < bound {
                return (v % n128) as u64;
            }
        }
    }

    /// Bernoulli draw with exact rational probability `p` in `[0, 1]`,
    /// realized as `next_u64 < floor(p·2^64)`.
    pub fn hit(&mut self, p: &Rat) -> bool {
        let two64 = num::BigInt::from(1u8) << 64;
        let threshold = (p.numer() * two64) / p.denom();
        num::BigInt::from(self.next_u64()) < threshold
    }
}

/// Structured number-set families the generator can build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    /// `start, start+step, ..., start+(length-1)·step`.
    Ap { start: Rat, step: Rat, length: usize },
    /// Generalized progression `start + Σ c_i·steps[i]`, `0 <= c_i < dims[i]`,
    /// required to be proper (no colliding cells).
    Gap {
        start: Rat,
        steps: Vec<Rat>,
        dims: Vec<usize>,
    },
    /// Uniform random `size`-subset of the integers `0..=max`.
    RandomSubset { max: u64, size: usize },
    /// Exactly these values.
    Explicit { values: Vec<Rat> },
}

/// Graph families over a set's index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Complete,
    CompleteWithLoops,
    /// Loopless graph keeping each pair `{i, j}`, `i < j`, scanned in
    /// index order, with probability `p`.
    Random { probability: Rat },
    /// Start from the complete graph with loops and keep exactly the
    /// pairs whose sum lands among the `kept_sums` smallest distinct
    /// pair sums.
    SumRestricted { kept_sums: usize },
}

/// A fully reproducible instance: set family, graph family, seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub set: SetSpec,
    pub graph: GraphSpec,
    pub seed: u64,
}

fn draw_subset(rng: &mut SplitMix64, max: u64, size: usize) -> NumberSet {
    let mut chosen: BTreeSet<u64> = BTreeSet::new();
    while chosen.len() < size {
        chosen.insert(rng.below(max + 1));
    }
    NumberSet::from_values(chosen.into_iter().map(|v| rat(v as i64)))
}

fn build_set(spec: &SetSpec, rng: &mut SplitMix64) -> Result<NumberSet> {
    match spec {
        SetSpec::Ap {
            start,
            step,
            length,
        } => {
            if *length == 0 {
                return Err(Error::InfeasibleSpec("progression length is zero".into()));
            }
            if step == &rat(0) {
                return Err(Error::InfeasibleSpec("progression step is zero".into()));
            }
            Ok(NumberSet::from_values(
                (0..*length).map(|i| start + step * Rat::from_integer(i.into())),
            ))
        }
        SetSpec::Gap { start, steps, dims } => {
            if steps.is_empty() || steps.len() != dims.len() {
                return Err(Error::InfeasibleSpec(
                    "generalized progression needs matching nonempty steps and dims".into(),
                ));
            }
            if dims.contains(&0) {
                return Err(Error::InfeasibleSpec(
                    "generalized progression has an empty axis".into(),
                ));
            }
            let mut values = vec![start.clone()];
            for (step, &n) in steps.iter().zip(dims) {
                let mut next = Vec::with_capacity(values.len() * n);
                for v in &values {
                    for c in 0..n {
                        next.push(v + step * Rat::from_integer(c.into()));
                    }
                }
                values = next;
            }
            let expected = values.len();
            let set = NumberSet::from_values(values);
            if set.len() != expected {
                return Err(Error::InfeasibleSpec(
                    "generalized progression is not proper: cells collide".into(),
                ));
            }
            Ok(set)
        }
        SetSpec::RandomSubset { max, size } => {
            if *size == 0 {
                return Err(Error::InfeasibleSpec("random subset size is zero".into()));
            }
            if *size as u64 > max + 1 {
                return Err(Error::InfeasibleSpec(format!(
                    "random subset wants {size} values from a universe of {}",
                    max + 1
                )));
            }
            Ok(draw_subset(rng, *max, *size))
        }
        SetSpec::Explicit { values } => {
            if values.is_empty() {
                return Err(Error::InfeasibleSpec("explicit set is empty".into()));
            }
            Ok(NumberSet::from_values(values.iter().cloned()))
        }
    }
}

fn build_graph(spec: &GraphSpec, a: &NumberSet, rng: &mut SplitMix64) -> Result<PairGraph> {
    let n = a.len();
    match spec {
        GraphSpec::Complete => Ok(PairGraph::complete(n)),
        GraphSpec::CompleteWithLoops => Ok(PairGraph::complete_with_loops(n)),
        GraphSpec::Random { probability } => {
            if *probability < rat(0) || *probability > rat(1) {
                return Err(Error::EpsilonOutOfRange(format!(
                    "edge probability {probability} is outside [0, 1]"
                )));
            }
            let mut g = PairGraph::new(n, false);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.hit(probability) {
                        g.add_edge(i, j)?;
                    }
                }
            }
            Ok(g)
        }
        GraphSpec::SumRestricted { kept_sums } => {
            if *kept_sums == 0 {
                return Err(Error::InfeasibleSpec("no sums were kept".into()));
            }
            let mut sums: BTreeSet<Rat> = BTreeSet::new();
            for i in 0..n {
                for j in i..n {
                    sums.insert(a.get(i) + a.get(j));
                }
            }
            let kept: BTreeSet<Rat> = sums.into_iter().take(*kept_sums).collect();
            let mut g = PairGraph::new(n, true);
            for i in 0..n {
                for j in i..n {
                    if kept.contains(&(a.get(i) + a.get(j))) {
                        g.add_edge(i, j)?;
                    }
                }
            }
            Ok(g)
        }
    }
}

/// Builds the instance a spec describes. The seed feeds one SplitMix64
/// stream; the set is drawn before the graph, so deterministic set
/// families leave the graph stream unaffected by their parameters.
pub fn generate(spec: &InstanceSpec) -> Result<(NumberSet, PairGraph)> {
    let mut rng = SplitMix64::new(spec.seed);
    let a = build_set(&spec.set, &mut rng)?;
    let g = build_graph(&spec.graph, &a, &mut rng)?;
    Ok((a, g))
}

/// What to measure on a generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    /// Sumset growth along the graph: size, ratio, pair density.
    Growth,
    /// The three-term pipeline at this refinement tolerance, next to
    /// the brute-force progression count of the bare set.
    CountProgressions { epsilon: Rat },
}

/// Outcome of one experiment. Growth figures are always filled; the
/// progression fields only for the counting task. `elapsed_millis` is
/// wall-clock and therefore not part of any fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub seed: u64,
    pub set_size: u64,
    pub edge_slots: u64,
    pub sumset_size: u64,
    pub growth_ratio: Rat,
    pub pair_density: Rat,
    pub progression_count: Option<u64>,
    pub oracle_count: Option<u64>,
    pub elapsed_millis: Option<u64>,
}

/// Generates the instance and runs one task on it.
pub fn run_experiment(spec: &InstanceSpec, task: &Task) -> Result<ExperimentReport> {
    let started = Instant::now();
    let (a, g) = generate(spec)?;
    let n = a.len() as u64;
    let sumset = if g.edge_count() + g.loop_count() == 0 {
        NumberSet::empty()
    } else {
        sumset_along_graph(&a, &g)?
    };
    let slots = (g.edge_count() + g.loop_count()) as u64;
    let all_pairs = n * (n + 1) / 2;
    let mut report = ExperimentReport {
        seed: spec.seed,
        set_size: n,
        edge_slots: slots,
        sumset_size: sumset.len() as u64,
        growth_ratio: if n == 0 {
            rat(0)
        } else {
            Rat::new((sumset.len()).into(), n.into())
        },
        pair_density: if all_pairs == 0 {
            rat(0)
        } else {
            Rat::new(slots.into(), all_pairs.into())
        },
        progression_count: None,
        oracle_count: None,
        elapsed_millis: None,
    };
    if let Task::CountProgressions { epsilon } = task {
        let pipeline = pipeline_k3(&a, &g, epsilon)?;
        report.progression_count = Some(pipeline.distinct_ap_count());
        report.oracle_count = Some(count_k_aps(&a, 3).0);
    }
    report.elapsed_millis = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

/// Outcome of a randomized growth-inequality battery.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryReport {
    pub seed: u64,
    pub instances: u64,
    pub violations: u64,
    /// Largest observed `lhs / bound`; at most 1 unless a violation
    /// occurred.
    pub worst_ratio: Rat,
}

/// Runs `instances` random growth-inequality checks: `A` and `B` are
/// random subsets of `{0..=100}` with 2 to 20 elements, and the
/// exponents `k, l` each range over `1..=3`.
pub fn pluennecke_battery(instances: usize, seed: u64) -> Result<BatteryReport> {
    let mut rng = SplitMix64::new(seed);
    let mut violations = 0;
    let mut worst = rat(0);
    for _ in 0..instances {
        let asize = 2 + rng.below(19) as usize;
        let bsize = 2 + rng.below(19) as usize;
        let a = draw_subset(&mut rng, 100, asize);
        let b = draw_subset(&mut rng, 100, bsize);
        let k = 1 + rng.below(3) as usize;
        let l = 1 + rng.below(3) as usize;
        let r = pluennecke_check(&a, &b, k, l)?;
        if !r.holds {
            violations += 1;
        }
        let ratio = Rat::from_integer(r.lhs.into()) / &r.rhs_bound;
        if ratio > worst {
            worst = ratio;
        }
    }
    Ok(BatteryReport {
        seed,
        instances: instances as u64,
        violations,
        worst_ratio: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ap(length: usize) -> SetSpec {
        SetSpec::Ap {
            start: rat(0),
            step: rat(1),
            length,
        }
    }

    #[test]
    fn splitmix_streams_are_reproducible() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        let mut c = SplitMix64::new(43);
        assert_ne!(xs[0], c.next_u64());
        for _ in 0..100 {
            assert!(a.below(7) < 7);
        }
    }

    #[test]
    fn bernoulli_extremes_are_exact() {
        let mut rng = SplitMix64::new(1);
        assert!(!rng.hit(&rat(0)));
        assert!(rng.hit(&rat(1)));
    }

    #[test]
    fn progression_growth_on_the_complete_graph() {
        let spec = InstanceSpec {
            set: ap(8),
            graph: GraphSpec::Complete,
            seed: 7,
        };
        let report = run_experiment(&spec, &Task::Growth).unwrap();
        assert_eq!(report.set_size, 8);
        assert_eq!(report.edge_slots, 28);
        assert_eq!(report.sumset_size, 13);
        assert_eq!(report.growth_ratio, ratio(13, 8));
        assert_eq!(report.pair_density, ratio(28, 36));
        assert!(report.elapsed_millis.is_some());
    }

    #[test]
    fn proper_generalized_progression_and_its_doubling() {
        let spec = InstanceSpec {
            set: SetSpec::Gap {
                start: rat(0),
                steps: vec![rat(1), rat(100)],
                dims: vec![4, 4],
            },
            graph: GraphSpec::CompleteWithLoops,
            seed: 0,
        };
        let (a, g) = generate(&spec).unwrap();
        assert_eq!(a.len(), 16);
        let sums = sumset_along_graph(&a, &g).unwrap();
        assert_eq!(sums.len(), 49);
    }

    #[test]
    fn improper_generalized_progression_is_refused() {
        let spec = InstanceSpec {
            set: SetSpec::Gap {
                start: rat(0),
                steps: vec![rat(1), rat(2)],
                dims: vec![4, 4],
            },
            graph: GraphSpec::Complete,
            seed: 0,
        };
        assert!(matches!(generate(&spec), Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn degenerate_set_specs_are_refused() {
        for set in [
            SetSpec::Ap {
                start: rat(0),
                step: rat(0),
                length: 4,
            },
            ap(0),
            SetSpec::RandomSubset { max: 10, size: 0 },
            SetSpec::RandomSubset { max: 10, size: 12 },
            SetSpec::Explicit { values: vec![] },
        ] {
            let spec = InstanceSpec {
                set,
                graph: GraphSpec::Complete,
                seed: 1,
            };
            assert!(matches!(generate(&spec), Err(Error::InfeasibleSpec(_))));
        }
    }

    #[test]
    fn random_subsets_are_seed_deterministic() {
        let spec = InstanceSpec {
            set: SetSpec::RandomSubset { max: 60, size: 12 },
            graph: GraphSpec::Random {
                probability: ratio(1, 2),
            },
            seed: 2024,
        };
        let (a1, g1) = generate(&spec).unwrap();
        let (a2, g2) = generate(&spec).unwrap();
        assert_eq!(a1.as_slice(), a2.as_slice());
        assert_eq!(a1.len(), 12);
        assert_eq!(g1.edge_count(), g2.edge_count());
        let e1: Vec<(usize, usize)> = g1.edges().collect();
        let e2: Vec<(usize, usize)> = g2.edges().collect();
        assert_eq!(e1, e2);
        assert!(g1.edge_count() <= 66);
    }

    #[test]
    fn random_graph_extremes() {
        for (p, want) in [(rat(0), 0), (rat(1), 28)] {
            let spec = InstanceSpec {
                set: ap(8),
                graph: GraphSpec::Random { probability: p },
                seed: 5,
            };
            let (_, g) = generate(&spec).unwrap();
            assert_eq!(g.edge_count(), want);
        }
        let spec = InstanceSpec {
            set: ap(8),
            graph: GraphSpec::Random {
                probability: rat(2),
            },
            seed: 5,
        };
        assert!(matches!(generate(&spec), Err(Error::EpsilonOutOfRange(_))));
    }

    #[test]
    fn sum_restriction_caps_the_sumset() {
        let spec = InstanceSpec {
            set: ap(3),
            graph: GraphSpec::SumRestricted { kept_sums: 2 },
            seed: 0,
        };
        let (a, g) = generate(&spec).unwrap();
        assert_eq!(g.edge_count() + g.loop_count(), 2);
        let sums = sumset_along_graph(&a, &g).unwrap();
        assert_eq!(sums.as_slice(), &[rat(0), rat(1)]);

        let generous = InstanceSpec {
            set: ap(3),
            graph: GraphSpec::SumRestricted { kept_sums: 50 },
            seed: 0,
        };
        let (a, g) = generate(&generous).unwrap();
        let sums = sumset_along_graph(&a, &g).unwrap();
        assert_eq!(sums.len(), 5);
    }

    #[test]
    fn pipeline_task_counts_progressions_of_a_progression() {
        let spec = InstanceSpec {
            set: ap(32),
            graph: GraphSpec::CompleteWithLoops,
            seed: 0,
        };
        let report = run_experiment(&spec, &Task::CountProgressions { epsilon: ratio(1, 10) })
            .unwrap();
        assert_eq!(report.progression_count, Some(240));
        assert_eq!(report.oracle_count, Some(240));
    }

    #[test]
    fn battery_holds_on_every_instance() {
        let report = pluennecke_battery(25, 99).unwrap();
        assert_eq!(report.instances, 25);
        assert_eq!(report.violations, 0);
        assert!(report.worst_ratio <= rat(1));
        assert!(report.worst_ratio > rat(0));
        let again = pluennecke_battery(25, 99).unwrap();
        assert_eq!(report, again);
    }
}
