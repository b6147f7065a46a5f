//! The EF1-preserving black-box reduction and its supporting machinery:
//! desire profiles, the exhaustive inner algorithm, the per-agent EF1 set,
//! the opponent-profile constructor that realizes any allocation in that
//! set, and the worst-case monotonicity check underpinning the
//! non-manipulability of the reduction.

use std::collections::BTreeSet;

use crate::checkers;
use crate::enumerate::partial_allocations;
use crate::error::{Error, Result};
use crate::lp;
use crate::model::{Instance, IntegralAllocation};
use crate::rational::Rat;

/// Per-agent desire structure computed from the reported bids:
/// `desired[i]` is the set of items agent i bids positively on,
/// `leftover[i]` is everything no *other* agent desires, and
/// `rest_disjoint[i]` records whether the desire sets of the other agents
/// are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesireProfile {
    pub desired: Vec<BTreeSet<usize>>,
    pub leftover: Vec<BTreeSet<usize>>,
    pub rest_disjoint: Vec<bool>,
}

pub fn desire_profile(bids: &Instance) -> DesireProfile {
    let n = bids.agents();
    let m = bids.items();
    let desired: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| {
            (0..m)
                .filter(|&j| bids.value(i, j).is_positive())
                .collect()
        })
        .collect();
    let leftover = (0..n)
        .map(|i| {
            let mut others: BTreeSet<usize> = BTreeSet::new();
            for (j, set) in desired.iter().enumerate() {
                if j != i {
                    others.extend(set.iter().copied());
                }
            }
            (0..m).filter(|j| !others.contains(j)).collect()
        })
        .collect();
    let rest_disjoint = (0..n)
        .map(|i| pairwise_disjoint(desired.iter().enumerate().filter(|(j, _)| *j != i)))
        .collect();
    DesireProfile {
        desired,
        leftover,
        rest_disjoint,
    }
}

fn pairwise_disjoint<'a>(sets: impl Iterator<Item = (usize, &'a BTreeSet<usize>)>) -> bool {
    let mut seen = BTreeSet::new();
    for (_, set) in sets {
        for &item in set {
            if !seen.insert(item) {
                return false;
            }
        }
    }
    true
}

/// An algorithm plugged into the reduction. Its contract: on any input it
/// returns a clean, non-wasteful and EF1 (possibly partial) allocation.
pub trait InnerAlgorithm {
    fn allocate(&self, bids: &Instance) -> Result<IntegralAllocation>;
}

impl<F> InnerAlgorithm for F
where
    F: Fn(&Instance) -> Result<IntegralAllocation>,
{
    fn allocate(&self, bids: &Instance) -> Result<IntegralAllocation> {
        self(bids)
    }
}

/// Desk-scale inner algorithm: enumerates partial allocations and returns
/// the lexicographically smallest (by bundle encoding) one that is clean,
/// non-wasteful, EF1 and fractionally Pareto efficient. Such an allocation
/// always exists.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveInner {
    pub cap: u64,
}

impl Default for ExhaustiveInner {
    fn default() -> Self {
        ExhaustiveInner {
            cap: crate::enumerate::DEFAULT_ENUM_CAP,
        }
    }
}

impl InnerAlgorithm for ExhaustiveInner {
    fn allocate(&self, bids: &Instance) -> Result<IntegralAllocation> {
        let n = bids.agents();
        let m = bids.items();
        let mut candidates: Vec<IntegralAllocation> = Vec::new();
        for owners in partial_allocations(n, m, self.cap)? {
            let alloc = IntegralAllocation::from_owners(n, &owners);
            if checkers::is_clean(bids, &alloc)?
                && checkers::is_non_wasteful(bids, &alloc)?
                && checkers::is_ef1(bids, &alloc)?.ok
            {
                candidates.push(alloc);
            }
        }
        candidates.sort();
        for alloc in candidates {
            if lp::is_fpo(bids, &alloc, &Rat::one())? {
                return Ok(alloc);
            }
        }
        Err(Error::Internal(
            "no clean, non-wasteful, EF1 and fPO allocation found".into(),
        ))
    }
}

fn bundles_from_sets(m: usize, sets: Vec<BTreeSet<usize>>) -> Result<IntegralAllocation> {
    IntegralAllocation::new(m, sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Removes every item its holder bid zero on, in ascending item order.
/// Order is irrelevant for additive bids.
fn clean_by_bids(bids: &Instance, alloc: &IntegralAllocation) -> IntegralAllocation {
    alloc.retain(|agent, item| bids.value(agent, item).is_positive())
}

/// The black-box reduction. Four cases on the desire sets decide a
/// temporary assignment; items with zero marginal reported value are then
/// removed from every bundle.
///
/// * Case I: all desire sets pairwise disjoint — give each agent her set.
/// * Case II: exactly one agent whose removal makes the rest disjoint —
///   try handing her the leftover items, fall back to the inner algorithm
///   if that is not EF1 under the bids.
/// * Case III: exactly two such agents — same idea, the agent valuing the
///   contested intersection less is the one diverted to the leftovers.
/// * Case IV: otherwise — run the inner algorithm.
///
/// With a contract-satisfying inner algorithm, the output is always clean,
/// non-wasteful and EF1, and the reduction preserves (alpha-)Pareto
/// efficiency of the inner algorithm. Outputs may be partial.
pub fn reduction_mechanism(
    bids: &Instance,
    inner: &dyn InnerAlgorithm,
) -> Result<IntegralAllocation> {
    let n = bids.agents();
    let m = bids.items();
    let dp = desire_profile(bids);

    let run_inner = |bids: &Instance| -> Result<IntegralAllocation> {
        let alloc = inner.allocate(bids)?;
        if cfg!(debug_assertions) {
            if !checkers::is_clean(bids, &alloc)? {
                return Err(Error::InnerContract("output not clean".into()));
            }
            if !checkers::is_non_wasteful(bids, &alloc)? {
                return Err(Error::InnerContract("output not non-wasteful".into()));
            }
            if !checkers::is_ef1(bids, &alloc)?.ok {
                return Err(Error::InnerContract("output not EF1".into()));
            }
        }
        Ok(alloc)
    };

    let all_disjoint = pairwise_disjoint(dp.desired.iter().enumerate());
    let flagged: Vec<usize> = (0..n).filter(|&i| dp.rest_disjoint[i]).collect();

    let temporary = if all_disjoint {
        // Case I
        bundles_from_sets(m, dp.desired.clone())?
    } else if flagged.len() == 1 {
        // Case II
        let i = flagged[0];
        let mut sets = dp.desired.clone();
        sets[i] = dp.leftover[i].clone();
        let candidate = bundles_from_sets(m, sets)?;
        if checkers::is_ef1(bids, &candidate)?.ok {
            candidate
        } else {
            run_inner(bids)?
        }
    } else if flagged.len() == 2 {
        // Case III
        let (i, j) = (flagged[0], flagged[1]);
        let contested: Vec<usize> = dp.desired[i]
            .intersection(&dp.desired[j])
            .copied()
            .collect();
        let i_value = bids.utility(i, &contested)?;
        let j_value = bids.utility(j, &contested)?;
        let diverted = if i_value < j_value { i } else { j };
        let mut sets = dp.desired.clone();
        sets[diverted] = dp.leftover[diverted].clone();
        let candidate = bundles_from_sets(m, sets)?;
        if checkers::is_ef1(bids, &candidate)?.ok {
            candidate
        } else {
            run_inner(bids)?
        }
    } else if flagged.len() >= 3 {
        // Three or more flagged agents force pairwise disjointness, which
        // Case I already consumed.
        return Err(Error::Internal(
            "unreachable desire-set configuration".into(),
        ));
    } else {
        // Case IV
        run_inner(bids)?
    };

    Ok(clean_by_bids(bids, &temporary))
}

/// Builds the instance in which everyone except `agent` reports a zero row.
/// Useful as an evaluation probe for the one-sided checkers.
pub fn single_row_instance(n: usize, agent: usize, values: &[Rat]) -> Result<Instance> {
    let m = values.len();
    Instance::new(
        (0..n)
            .map(|i| {
                if i == agent {
                    values.to_vec()
                } else {
                    vec![Rat::zero(); m]
                }
            })
            .collect(),
    )
}

/// The set of partial allocations that are clean for `agent`, envy-free up
/// to one item from `agent`'s perspective, and leave unallocated only items
/// `agent` values at zero — all with respect to the valuation row `values`.
pub fn ef1_set_for_agent(
    agent: usize,
    values: &[Rat],
    n: usize,
    m: usize,
    cap: u64,
) -> Result<Vec<IntegralAllocation>> {
    if agent >= n {
        return Err(Error::AgentOutOfRange { agent, n });
    }
    let probe = single_row_instance(n, agent, values)?;
    let mut out = Vec::new();
    for owners in partial_allocations(n, m, cap)? {
        let alloc = IntegralAllocation::from_owners(n, &owners);
        if in_ef1_set(agent, values, &probe, &alloc)? {
            out.push(alloc);
        }
    }
    Ok(out)
}

/// Membership test for the per-agent EF1 set.
pub fn in_ef1_set(
    agent: usize,
    values: &[Rat],
    probe: &Instance,
    alloc: &IntegralAllocation,
) -> Result<bool> {
    // (a) own bundle clean under `values`
    if alloc
        .bundle(agent)
        .iter()
        .any(|&g| !values[g].is_positive())
    {
        return Ok(false);
    }
    // (b) EF1 from the agent's perspective
    if !checkers::is_ef1_for_agent(probe, agent, alloc)?.ok {
        return Ok(false);
    }
    // (c) unallocated items are worthless to the agent
    Ok(alloc
        .unallocated()
        .iter()
        .all(|&g| values[g].is_zero()))
}

/// Minimum value of the agent's own bundle over a set of allocations,
/// evaluated with the row `eval`.
pub fn worst_in_set(agent: usize, eval: &[Rat], set: &[IntegralAllocation]) -> Option<Rat> {
    set.iter()
        .map(|alloc| {
            alloc
                .bundle(agent)
                .iter()
                .map(|&g| eval[g].clone())
                .sum::<Rat>()
        })
        .min()
}

/// Constructs opponent valuations under which the reduction outputs
/// exactly `target`, given that `target` lies in the EF1 set of
/// (`agent`, `values`). The inner algorithm is never consulted on the
/// constructed profile. Returns the full instance (row `agent` is
/// `values`).
pub fn realize_allocation(
    agent: usize,
    values: &[Rat],
    target: &IntegralAllocation,
) -> Result<Instance> {
    let n = target.agents();
    let m = target.items();
    if values.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} items",
            values.len(),
            m
        )));
    }
    let probe = single_row_instance(n, agent, values)?;
    if !in_ef1_set(agent, values, &probe, target)? {
        return Err(Error::InvalidAllocation(
            "target is outside the agent's EF1 set".into(),
        ));
    }

    let desired: BTreeSet<usize> = (0..m).filter(|&j| values[j].is_positive()).collect();
    let intersecting: Vec<usize> = (0..n)
        .filter(|&j| {
            j != agent
                && target
                    .bundle(j)
                    .iter()
                    .any(|item| desired.contains(item))
        })
        .collect();

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        if j == agent {
            rows.push(values.to_vec());
            continue;
        }
        let mut row = vec![Rat::zero(); m];
        if intersecting.len() == 1 && j == intersecting[0] {
            // Opponent overlapping the agent's desired set: price the
            // contested items so the reduction diverts the agent, not her.
            let contested: Vec<usize> = target
                .bundle(j)
                .iter()
                .copied()
                .filter(|item| desired.contains(item))
                .collect();
            let contested_value: Rat =
                contested.iter().map(|&g| values[g].clone()).sum();
            let premium = Rat::from_int(2) * contested_value;
            for &item in target.bundle(j) {
                row[item] = if desired.contains(&item) {
                    premium.clone()
                } else {
                    Rat::one()
                };
            }
        } else {
            for &item in target.bundle(j) {
                row[item] = Rat::one();
            }
        }
        rows.push(row);
    }
    Instance::new(rows)
}

/// Report of the worst-case monotonicity check between two valuation rows.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    /// Worst own-bundle value (under `values`) over the EF1 set of `values`.
    pub honest_worst: Rat,
    /// Worst own-bundle value (under `values`) over the EF1 set of `other`.
    pub other_worst: Rat,
    /// honest_worst >= other_worst
    pub ok: bool,
    /// Whether the constructive swap argument was exercised.
    pub swap_checked: bool,
}

/// Checks that the worst allocation (by `values`) in the EF1 set of
/// `values` is at least as good as the worst allocation in the EF1 set of
/// any `other` row. When the honest minimizer fails the other row's envy
/// condition, the constructive swap from the proof is replayed as an
/// internal cross-check.
pub fn worst_case_monotonicity(
    agent: usize,
    values: &[Rat],
    other: &[Rat],
    n: usize,
    m: usize,
    cap: u64,
) -> Result<MonotonicityReport> {
    let own_set = ef1_set_for_agent(agent, values, n, m, cap)?;
    let other_set = ef1_set_for_agent(agent, other, n, m, cap)?;
    let honest_worst = worst_in_set(agent, values, &own_set)
        .ok_or_else(|| Error::Internal("EF1 set of the honest row is empty".into()))?;
    let other_worst = worst_in_set(agent, values, &other_set)
        .ok_or_else(|| Error::Internal("EF1 set of the other row is empty".into()))?;

    // Constructive swap cross-check on the honest minimizer.
    let minimizer = own_set
        .iter()
        .find(|a| {
            a.bundle(agent)
                .iter()
                .map(|&g| values[g].clone())
                .sum::<Rat>()
                == honest_worst
        })
        .expect("minimum is attained");
    let probe_other = single_row_instance(n, agent, other)?;
    let mut swap_checked = false;
    if !checkers::is_ef1_for_agent(&probe_other, agent, minimizer)?.ok {
        swap_checked = swap_cross_check(agent, values, other, minimizer, &probe_other)?;
    }

    Ok(MonotonicityReport {
        ok: honest_worst >= other_worst,
        honest_worst,
        other_worst,
        swap_checked,
    })
}

/// Replays the proof's transfer: the envied-up-to-one-item maximal bundle
/// (under `other`) moves to the agent minus its best item, which goes back
/// with the agent's old bundle. The result must not improve the agent's
/// `values`-utility and must satisfy the swapped envy condition.
fn swap_cross_check(
    agent: usize,
    values: &[Rat],
    other: &[Rat],
    minimizer: &IntegralAllocation,
    probe_other: &Instance,
) -> Result<bool> {
    let n = minimizer.agents();
    let m = minimizer.items();
    let occupied: Vec<usize> = (0..n)
        .filter(|&k| k != agent && !minimizer.bundle(k).is_empty())
        .collect();
    if occupied.is_empty() {
        return Ok(false);
    }
    let up_to_one = |bundle: &[usize]| -> Rat {
        let total: Rat = bundle.iter().map(|&g| other[g].clone()).sum();
        let best = bundle
            .iter()
            .map(|&g| other[g].clone())
            .max()
            .expect("non-empty");
        total - best
    };
    let star = *occupied
        .iter()
        .max_by_key(|&&k| up_to_one(minimizer.bundle(k)))
        .expect("non-empty occupied set");
    let best_item = *minimizer
        .bundle(star)
        .iter()
        .max_by(|&&a, &&b| other[a].cmp(&other[b]).then(b.cmp(&a)))
        .expect("non-empty bundle");

    let mut bundles: Vec<Vec<usize>> = minimizer.bundles().to_vec();
    let mut to_agent: Vec<usize> = bundles[star]
        .iter()
        .copied()
        .filter(|&g| g != best_item)
        .collect();
    let mut to_star: Vec<usize> = bundles[agent].clone();
    to_star.push(best_item);
    std::mem::swap(&mut bundles[agent], &mut to_agent);
    bundles[star] = to_star;
    let swapped = IntegralAllocation::new(m, bundles)?;

    let before: Rat = minimizer
        .bundle(agent)
        .iter()
        .map(|&g| values[g].clone())
        .sum();
    let after: Rat = swapped
        .bundle(agent)
        .iter()
        .map(|&g| values[g].clone())
        .sum();
    if after > before {
        return Err(Error::Internal(
            "swap construction increased the agent's utility".into(),
        ));
    }
    if !checkers::is_ef1_for_agent(probe_other, agent, &swapped)?.ok {
        return Err(Error::Internal(
            "swap construction failed the envy condition".into(),
        ));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(s: &str) -> Rat {
        Rat::parse(s).unwrap()
    }

    fn rats(row: &[&str]) -> Vec<Rat> {
        row.iter().map(|s| rat(s)).collect()
    }

    #[test]
    fn desire_profile_examples() {
        // All-positive values: everyone desires everything.
        let inst = Instance::from_ints(&[&[1, 2], &[3, 4]]);
        let dp = desire_profile(&inst);
        assert_eq!(dp.desired[0], BTreeSet::from([0, 1]));
        assert!(dp.leftover[0].is_empty());
        // Each "others" family is a single set, vacuously disjoint.
        assert_eq!(dp.rest_disjoint, vec![true, true]);

        // Disjoint supports.
        let inst = Instance::from_ints(&[&[1, 0], &[0, 1]]);
        let dp = desire_profile(&inst);
        assert_eq!(dp.rest_disjoint, vec![true, true]);
        assert_eq!(dp.leftover[0], BTreeSet::from([0]));

        // The four-item manipulation instance.
        let inst = Instance::new(vec![
            rats(&["3.9", "3", "2", "0.9"]),
            rats(&["0", "1", "0", "0"]),
            rats(&["2", "0", "0", "1"]),
        ])
        .unwrap();
        let dp = desire_profile(&inst);
        assert_eq!(dp.desired[0], BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(dp.desired[1], BTreeSet::from([1]));
        assert_eq!(dp.desired[2], BTreeSet::from([0, 3]));
        assert_eq!(dp.leftover[0], BTreeSet::from([2]));
        assert_eq!(dp.rest_disjoint, vec![true, false, false]);
    }

    #[test]
    fn case_one_disjoint_supports() {
        let inst = Instance::from_ints(&[&[1, 0, 1], &[0, 1, 0]]);
        let inner = ExhaustiveInner::default();
        let alloc = reduction_mechanism(&inst, &inner).unwrap();
        assert_eq!(alloc.bundle(0), &[0, 2]);
        assert_eq!(alloc.bundle(1), &[1]);
    }

    #[test]
    fn strictly_positive_values_defer_to_inner() {
        let inst = Instance::from_ints(&[&[2, 1], &[1, 2]]);
        let inner = ExhaustiveInner::default();
        let expected = inner.allocate(&inst).unwrap();
        let got = reduction_mechanism(&inst, &inner).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn inner_is_never_called_on_realized_profiles() {
        struct PanickingInner;
        impl InnerAlgorithm for PanickingInner {
            fn allocate(&self, _: &Instance) -> Result<IntegralAllocation> {
                panic!("inner must not run on constructed profiles");
            }
        }

        let values = rats(&["2", "1", "0"]);
        let set = ef1_set_for_agent(0, &values, 3, 3, 10_000).unwrap();
        assert!(!set.is_empty());
        for target in &set {
            let inst = realize_allocation(0, &values, target).unwrap();
            let out = reduction_mechanism(&inst, &PanickingInner).unwrap();
            assert_eq!(&out, target);
        }
    }

    #[test]
    fn exhaustive_inner_examples() {
        // Single agent: all positively-valued items.
        let inst = Instance::from_ints(&[&[1, 0, 2]]);
        let alloc = ExhaustiveInner::default().allocate(&inst).unwrap();
        assert_eq!(alloc.bundle(0), &[0, 2]);

        // Two agents, two identical items: one each.
        let inst = Instance::from_ints(&[&[1, 1], &[1, 1]]);
        let alloc = ExhaustiveInner::default().allocate(&inst).unwrap();
        assert_eq!(alloc.bundle(0).len(), 1);
        assert_eq!(alloc.bundle(1).len(), 1);
    }

    #[test]
    fn exhaustive_inner_satisfies_contract_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let inner = ExhaustiveInner::default();
        for _ in 0..100 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(0..=4);
            let values = (0..n)
                .map(|_| {
                    (0..m)
                        .map(|_| Rat::new(rng.gen_range(0..=5), rng.gen_range(1..=6)))
                        .collect()
                })
                .collect();
            let inst = Instance::new(values).unwrap();
            let alloc = inner.allocate(&inst).unwrap();
            assert!(checkers::is_clean(&inst, &alloc).unwrap());
            assert!(checkers::is_non_wasteful(&inst, &alloc).unwrap());
            assert!(checkers::is_ef1(&inst, &alloc).unwrap().ok);
            assert!(lp::is_fpo(&inst, &alloc, &Rat::one()).unwrap());
        }
    }

    #[test]
    fn ef1_set_one_item_two_agents() {
        // One item the agent values: it must go somewhere, and the agent's
        // own bundle stays clean. The empty allocation is wasteful.
        let values = rats(&["1"]);
        let set = ef1_set_for_agent(0, &values, 2, 1, 100).unwrap();
        let a = IntegralAllocation::new(1, vec![vec![0], vec![]]).unwrap();
        let b = IntegralAllocation::new(1, vec![vec![], vec![0]]).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&a) && set.contains(&b));
    }

    #[test]
    fn ef1_set_zero_row() {
        // All-zero row: cleanliness forces an empty own bundle, everything
        // else is free.
        let values = rats(&["0", "0"]);
        let set = ef1_set_for_agent(0, &values, 2, 2, 100).unwrap();
        assert_eq!(set.len(), 4); // items each in {other agent, unallocated}
        assert!(set.iter().all(|a| a.bundle(0).is_empty()));
    }

    #[test]
    fn reduction_output_lands_in_ef1_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let inner = ExhaustiveInner::default();
        for _ in 0..50 {
            let n = 3;
            let m = 3;
            let values: Vec<Vec<Rat>> = (0..n)
                .map(|_| {
                    (0..m)
                        .map(|_| Rat::from_int(rng.gen_range(0..=3)))
                        .collect()
                })
                .collect();
            let inst = Instance::new(values.clone()).unwrap();
            let alloc = reduction_mechanism(&inst, &inner).unwrap();
            for agent in 0..n {
                let probe = single_row_instance(n, agent, &values[agent]).unwrap();
                assert!(
                    in_ef1_set(agent, &values[agent], &probe, &alloc).unwrap(),
                    "output must lie in every agent's EF1 set"
                );
            }
        }
    }

    #[test]
    fn worst_in_set_basics() {
        let values = rats(&["1"]);
        let set = ef1_set_for_agent(0, &values, 2, 1, 100).unwrap();
        assert_eq!(worst_in_set(0, &values, &set).unwrap(), Rat::zero());

        let singleton = vec![IntegralAllocation::new(1, vec![vec![0], vec![]]).unwrap()];
        assert_eq!(worst_in_set(0, &values, &singleton).unwrap(), Rat::one());
    }

    #[test]
    fn monotonicity_identity_and_zero_row() {
        let v = rats(&["2", "1", "0"]);
        let report = worst_case_monotonicity(0, &v, &v, 2, 3, 10_000).unwrap();
        assert!(report.ok);
        assert_eq!(report.honest_worst, report.other_worst);

        let zero = rats(&["0", "0", "0"]);
        let report = worst_case_monotonicity(0, &v, &zero, 2, 3, 10_000).unwrap();
        assert!(report.ok);
        assert_eq!(report.other_worst, Rat::zero());
    }

    #[test]
    fn monotonicity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..60 {
            let n = rng.gen_range(2..=3);
            let m = rng.gen_range(1..=3);
            let row = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
                (0..m)
                    .map(|_| Rat::new(rng.gen_range(0..=4), rng.gen_range(1..=4)))
                    .collect()
            };
            let v = row(&mut rng);
            let v_prime = row(&mut rng);
            let report =
                worst_case_monotonicity(0, &v, &v_prime, n, m, 100_000).unwrap();
            assert!(report.ok, "violation for v={v:?} v'={v_prime:?}");
        }
    }
}
