//! Concrete allocation mechanisms: Round-Robin with its closed-form
//! worst/best-case utilities, and the utilitarian, egalitarian, Nash and
//! leximin welfare maximizers with exact tie-breaking.

use std::cmp::Ordering;

use crate::enumerate::{complete_allocations, owners_to_allocation};
use crate::error::{Error, Result};
use crate::model::{Instance, IntegralAllocation};
use crate::rational::Rat;

/// Tie-breaking for the utilitarian maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Ties go to the smallest agent index.
    SmallestIndex,
    /// Ties go to the smallest agent index, except a tie exactly between
    /// the first and the last agent, which goes to the last.
    FirstLastException,
}

/// Round-Robin: agents pick one item per round in the given order, each
/// taking a highest-value remaining item (item ties broken by smallest
/// index). The output is always complete and bundle sizes differ by at
/// most one.
pub fn round_robin(bids: &Instance, order: &[usize]) -> Result<IntegralAllocation> {
    let n = bids.agents();
    let m = bids.items();
    if order.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "order has {} entries for {} agents",
            order.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &a in order {
        if a >= n {
            return Err(Error::AgentOutOfRange { agent: a, n });
        }
        if seen[a] {
            return Err(Error::InvalidInstance(format!(
                "agent {} appears twice in the order",
                a + 1
            )));
        }
        seen[a] = true;
    }

    let mut remaining: Vec<bool> = vec![true; m];
    let mut bundles = vec![Vec::new(); n];
    let mut allocated = 0usize;
    'rounds: loop {
        for &agent in order {
            if allocated == m {
                break 'rounds;
            }
            let mut best: Option<usize> = None;
            for item in 0..m {
                if !remaining[item] {
                    continue;
                }
                match best {
                    None => best = Some(item),
                    Some(b) => {
                        if bids.value(agent, item) > bids.value(agent, b) {
                            best = Some(item);
                        }
                    }
                }
            }
            let pick = best.expect("items remain");
            remaining[pick] = false;
            bundles[agent].push(pick);
            allocated += 1;
        }
    }
    IntegralAllocation::new(m, bundles)
}

/// Closed-form worst-case and best-case utilities of the agent at 1-based
/// `rank` in a Round-Robin over `n` agents and `m` items, when her true
/// values are `true_values`. With values sorted in descending order, her
/// k-th pick is worth at least the value at sorted position `rank + (k-1)n`
/// (worst case, attained when everyone shares her ranking) and at most the
/// k-th largest value (best case, attained when everyone ranks items in
/// the opposite order).
pub fn round_robin_worst_best(
    true_values: &[Rat],
    rank: usize,
    n: usize,
    m: usize,
) -> Result<(Rat, Rat)> {
    if rank == 0 || rank > n {
        return Err(Error::AgentOutOfRange {
            agent: rank,
            n,
        });
    }
    if true_values.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} items",
            true_values.len(),
            m
        )));
    }
    let mut sorted = true_values.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut worst = Rat::zero();
    let mut best = Rat::zero();
    let mut k = 0usize;
    while rank + k * n <= m {
        worst += &sorted[rank + k * n - 1];
        best += &sorted[k];
        k += 1;
    }
    Ok((worst, best))
}

/// Result of the utilitarian maximizer; `renormalized` records whether the
/// input rows had to be rescaled to sum to one.
#[derive(Debug, Clone)]
pub struct UtilitarianOutcome {
    pub allocation: IntegralAllocation,
    pub renormalized: bool,
}

/// Utilitarian social-welfare maximizer: each item goes to an agent with
/// the largest reported value for it, under the chosen tie-breaking. Rows
/// are normalized internally (the guarantee only holds for normalized
/// reports); an all-zero row is an error.
pub fn max_utilitarian(bids: &Instance, tie: TieBreak) -> Result<UtilitarianOutcome> {
    let renormalized = !bids.is_normalized();
    let bids = if renormalized {
        bids.normalize()?
    } else {
        bids.clone()
    };
    let n = bids.agents();
    let m = bids.items();
    let mut bundles = vec![Vec::new(); n];
    for item in 0..m {
        let top = (0..n)
            .map(|i| bids.value(i, item))
            .max()
            .expect("at least one agent");
        let tied: Vec<usize> = (0..n).filter(|&i| bids.value(i, item) == top).collect();
        let winner = match tie {
            TieBreak::SmallestIndex => tied[0],
            TieBreak::FirstLastException => {
                if n >= 2 && tied == vec![0, n - 1] {
                    n - 1
                } else {
                    tied[0]
                }
            }
        };
        bundles[winner].push(item);
    }
    Ok(UtilitarianOutcome {
        allocation: IntegralAllocation::new(m, bundles)?,
        renormalized,
    })
}

/// Count of positive-utility agents and their utilities under `bids`.
fn utilities(bids: &Instance, alloc: &IntegralAllocation) -> Vec<Rat> {
    (0..bids.agents())
        .map(|i| {
            bids.utility(i, alloc.bundle(i))
                .expect("enumerated allocation is in range")
        })
        .collect()
}

fn positive_count(utils: &[Rat]) -> usize {
    utils.iter().filter(|u| u.is_positive()).count()
}

/// Generic argmax-set enumeration over complete allocations under a
/// lexicographic score. Returns the full argmax set sorted by the canonical
/// bundle encoding, so `set[0]` is the deterministic-mechanism selection.
fn argmax_complete<S, F>(bids: &Instance, cap: u64, score: F) -> Result<Vec<IntegralAllocation>>
where
    S: Ord,
    F: Fn(&[Rat]) -> S,
{
    let n = bids.agents();
    let m = bids.items();
    let mut best_score: Option<S> = None;
    let mut best: Vec<IntegralAllocation> = Vec::new();
    for owners in complete_allocations(n, m, cap)? {
        let alloc = owners_to_allocation(n, &owners);
        let s = score(&utilities(bids, &alloc));
        match &best_score {
            None => {
                best_score = Some(s);
                best.push(alloc);
            }
            Some(current) => match s.cmp(current) {
                Ordering::Greater => {
                    best_score = Some(s);
                    best.clear();
                    best.push(alloc);
                }
                Ordering::Equal => best.push(alloc),
                Ordering::Less => {}
            },
        }
    }
    best.sort();
    Ok(best)
}

/// Egalitarian maximizer: among complete allocations, lexicographically
/// maximize (number of positive-utility agents, minimum utility among the
/// positive-utility agents). Returns the full argmax set, canonically
/// sorted.
pub fn max_egalitarian(bids: &Instance, cap: u64) -> Result<Vec<IntegralAllocation>> {
    argmax_complete(bids, cap, |utils| {
        let count = positive_count(utils);
        let min_positive = utils
            .iter()
            .filter(|u| u.is_positive())
            .min()
            .cloned()
            .unwrap_or_else(Rat::zero);
        (count, min_positive)
    })
}

/// Nash-welfare maximizer: among complete allocations, lexicographically
/// maximize (number of positive-utility agents, product of the positive
/// utilities). Comparing products at equal support size is equivalent to
/// comparing geometric means.
pub fn max_nash(bids: &Instance, cap: u64) -> Result<Vec<IntegralAllocation>> {
    argmax_complete(bids, cap, |utils| {
        let count = positive_count(utils);
        let product = utils
            .iter()
            .filter(|u| u.is_positive())
            .fold(Rat::one(), |acc, u| acc * u);
        (count, product)
    })
}

/// Leximin: maximize the sorted (ascending) utility vector
/// lexicographically. This implies first maximizing the number of agents
/// with positive utility.
pub fn leximin(bids: &Instance, cap: u64) -> Result<Vec<IntegralAllocation>> {
    argmax_complete(bids, cap, |utils| {
        let mut sorted = utils.to_vec();
        sorted.sort();
        sorted
    })
}

/// Complete allocations maximizing the number of positive-utility agents.
pub fn max_positive_count(bids: &Instance, cap: u64) -> Result<Vec<IntegralAllocation>> {
    argmax_complete(bids, cap, |utils| positive_count(utils))
}

/// The uniform lottery over a set of allocations.
pub fn uniform_lottery(set: Vec<IntegralAllocation>) -> Result<crate::model::Lottery> {
    let k = set.len() as i64;
    let p = Rat::new(1, k.max(1));
    crate::model::Lottery::new(set.into_iter().map(|a| (p.clone(), a)).collect())
}

/// Randomized utilitarian maximizer: every item goes to a uniformly random
/// agent among those with the largest (normalized) bid for it,
/// independently across items.
pub fn utilitarian_lottery(bids: &Instance) -> Result<crate::model::Lottery> {
    let bids = bids.normalize()?;
    let n = bids.agents();
    let m = bids.items();
    let tied: Vec<Vec<usize>> = (0..m)
        .map(|item| {
            let top = (0..n).map(|i| bids.value(i, item)).max().expect("n >= 1");
            (0..n).filter(|&i| bids.value(i, item) == top).collect()
        })
        .collect();
    let mut support: Vec<(Rat, IntegralAllocation)> = vec![(
        Rat::one(),
        IntegralAllocation::empty(n, m),
    )];
    for (item, winners) in tied.iter().enumerate() {
        let share = Rat::new(1, winners.len() as i64);
        let mut next = Vec::with_capacity(support.len() * winners.len());
        for (p, alloc) in support {
            for &w in winners {
                let mut bundles: Vec<Vec<usize>> = alloc.bundles().to_vec();
                bundles[w].push(item);
                next.push((
                    &p * &share,
                    IntegralAllocation::new(m, bundles)?,
                ));
            }
        }
        support = next;
    }
    crate::model::Lottery::new(support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers;
    use crate::rational::Rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(s: &str) -> Rat {
        Rat::parse(s).unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
        let values = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| Rat::new(rng.gen_range(0..=9), rng.gen_range(1..=10)))
                    .collect()
            })
            .collect();
        Instance::new(values).unwrap()
    }

    #[test]
    fn round_robin_forced_picks() {
        let inst = Instance::from_ints(&[&[3, 1], &[3, 1]]);
        let alloc = round_robin(&inst, &[0, 1]).unwrap();
        assert_eq!(alloc.bundle(0), &[0]);
        assert_eq!(alloc.bundle(1), &[1]);
    }

    #[test]
    fn round_robin_identical_decreasing() {
        // Three agents sharing a strictly decreasing ranking over six
        // items: agent at rank i picks items i-1 and i+2 (0-based).
        let row: Vec<i64> = vec![6, 5, 4, 3, 2, 1];
        let inst = Instance::from_ints(&[&row, &row, &row]);
        let alloc = round_robin(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(alloc.bundle(0), &[0, 3]);
        assert_eq!(alloc.bundle(1), &[1, 4]);
        assert_eq!(alloc.bundle(2), &[2, 5]);
    }

    #[test]
    fn round_robin_is_ef1_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let inst = random_instance(&mut rng, 3, 7);
            let alloc = round_robin(&inst, &[0, 1, 2]).unwrap();
            assert!(alloc.is_complete());
            let sizes: Vec<usize> = alloc.bundles().iter().map(Vec::len).collect();
            let max = sizes.iter().max().unwrap();
            let min = sizes.iter().min().unwrap();
            assert!(max - min <= 1);
            assert!(checkers::is_ef1(&inst, &alloc).unwrap().ok);
        }
    }

    #[test]
    fn worst_best_closed_forms() {
        // First picker with four items, two agents: worst takes sorted
        // ranks 1 and 3, best takes ranks 1 and 2.
        let values: Vec<Rat> = [4, 3, 2, 1].iter().map(|&v| Rat::from_int(v)).collect();
        let (worst, best) = round_robin_worst_best(&values, 1, 2, 4).unwrap();
        assert_eq!(worst, Rat::from_int(6));
        assert_eq!(best, Rat::from_int(7));

        // Single agent takes everything either way.
        let (worst, best) = round_robin_worst_best(&values, 1, 1, 4).unwrap();
        assert_eq!(worst, Rat::from_int(10));
        assert_eq!(best, Rat::from_int(10));
    }

    #[test]
    fn worst_best_matches_brute_force_over_orderings() {
        // n = 2, m = 4: opponent reports every permutation of the agent's
        // own value multiset; exhaustive min/max equals the closed forms.
        let values: Vec<Rat> = [7, 5, 2, 1].iter().map(|&v| Rat::from_int(v)).collect();
        let (worst, best) = round_robin_worst_best(&values, 1, 2, 4).unwrap();

        let perms = permutations(&values);
        let mut min: Option<Rat> = None;
        let mut max: Option<Rat> = None;
        for p in &perms {
            let inst = Instance::new(vec![values.clone(), p.clone()]).unwrap();
            let alloc = round_robin(&inst, &[0, 1]).unwrap();
            let u = inst.utility(0, alloc.bundle(0)).unwrap();
            min = Some(min.map_or(u.clone(), |m: Rat| m.min(u.clone())));
            max = Some(max.map_or(u.clone(), |m: Rat| m.max(u)));
        }
        assert_eq!(min.unwrap(), worst);
        assert_eq!(max.unwrap(), best);
    }

    fn permutations(values: &[Rat]) -> Vec<Vec<Rat>> {
        if values.len() <= 1 {
            return vec![values.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..values.len() {
            let mut rest = values.to_vec();
            let head = rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, head.clone());
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn utilitarian_tie_rules() {
        // Both agents bid (1, 0): the first-last exception sends item 1 to
        // the last agent.
        let inst = Instance::from_ints(&[&[1, 0], &[1, 0]]);
        let out = max_utilitarian(&inst, TieBreak::FirstLastException).unwrap();
        assert!(out.allocation.contains(1, 0));

        // Tie among agents 1 and 2 of three goes to agent 1.
        let inst = Instance::from_ints(&[&[1, 0], &[1, 0], &[0, 1]]);
        let out = max_utilitarian(&inst, TieBreak::FirstLastException).unwrap();
        assert!(out.allocation.contains(0, 0));

        // Unique maxima make the tie policy irrelevant.
        let inst = Instance::from_ints(&[&[3, 1], &[1, 3]]);
        let a = max_utilitarian(&inst, TieBreak::SmallestIndex).unwrap();
        let b = max_utilitarian(&inst, TieBreak::FirstLastException).unwrap();
        assert_eq!(a.allocation, b.allocation);
        assert!(a.renormalized);
        assert!(a.allocation.contains(0, 0));
        assert!(a.allocation.contains(1, 1));
    }

    #[test]
    fn utilitarian_rejects_zero_rows() {
        let inst = Instance::from_ints(&[&[0, 0], &[1, 0]]);
        assert!(max_utilitarian(&inst, TieBreak::SmallestIndex).is_err());
    }

    #[test]
    fn utilitarian_maximizes_total_welfare() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut inst = random_instance(&mut rng, 3, 4);
            // Ensure normalizable rows.
            if (0..3).any(|i| inst.total_value(i).is_zero()) {
                inst = Instance::from_ints(&[&[1, 1, 1, 1], &[2, 1, 1, 1], &[1, 2, 1, 1]]);
            }
            let norm = inst.normalize().unwrap();
            let out = max_utilitarian(&inst, TieBreak::SmallestIndex).unwrap();
            let achieved: Rat = (0..3)
                .map(|i| norm.utility(i, out.allocation.bundle(i)).unwrap())
                .sum();
            for owners in crate::enumerate::complete_allocations(3, 4, 10_000).unwrap() {
                let cand = owners_to_allocation(3, &owners);
                let total: Rat = (0..3)
                    .map(|i| norm.utility(i, cand.bundle(i)).unwrap())
                    .sum();
                assert!(total <= achieved);
            }
        }
    }

    #[test]
    fn egalitarian_unique_on_pinned_instance() {
        // The three-agent, four-item instance whose unique egalitarian
        // optimum hands agent 1 only her least-valued item.
        let inst = Instance::new(vec![
            vec![rat("0.3"), rat("0.3"), rat("0.3"), rat("0.1")],
            vec![rat("0"), rat("0"), rat("1"), rat("0")],
            vec![rat("0.05"), rat("0.05"), rat("0.9"), rat("0")],
        ])
        .unwrap();
        let set = max_egalitarian(&inst, 10_000).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set[0].bundle(0), &[3]);
        assert_eq!(set[0].bundle(1), &[2]);
        assert_eq!(set[0].bundle(2), &[0, 1]);
    }

    #[test]
    fn egalitarian_matches_independent_two_stage_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let inst = random_instance(&mut rng, 2, 3);
            let got = max_egalitarian(&inst, 10_000).unwrap();

            // Independent two-stage enumerator.
            let mut best_count = 0usize;
            for owners in crate::enumerate::complete_allocations(2, 3, 1000).unwrap() {
                let a = owners_to_allocation(2, &owners);
                let utils = utilities(&inst, &a);
                best_count = best_count.max(positive_count(&utils));
            }
            let mut best_min: Option<Rat> = None;
            let mut expect: Vec<IntegralAllocation> = Vec::new();
            for owners in crate::enumerate::complete_allocations(2, 3, 1000).unwrap() {
                let a = owners_to_allocation(2, &owners);
                let utils = utilities(&inst, &a);
                if positive_count(&utils) != best_count {
                    continue;
                }
                let min_pos = utils
                    .iter()
                    .filter(|u| u.is_positive())
                    .min()
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                match &best_min {
                    None => {
                        best_min = Some(min_pos);
                        expect.push(a);
                    }
                    Some(cur) => {
                        if min_pos > *cur {
                            best_min = Some(min_pos);
                            expect.clear();
                            expect.push(a);
                        } else if min_pos == *cur {
                            expect.push(a);
                        }
                    }
                }
            }
            expect.sort();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn nash_unique_on_pinned_instance() {
        // Honest reports of the four-item manipulation instance: the Nash
        // optimum is unique and gives agent 1 exactly the value-2 item.
        let inst = Instance::new(vec![
            vec![rat("3.9"), rat("3"), rat("2"), rat("0.9")],
            vec![rat("0"), rat("1"), rat("0"), rat("0")],
            vec![rat("2"), rat("0"), rat("0"), rat("1")],
        ])
        .unwrap();
        let set = max_nash(&inst, 10_000).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set[0].bundle(0), &[2]);
        assert_eq!(set[0].bundle(1), &[1]);
        assert_eq!(set[0].bundle(2), &[0, 3]);
        assert_eq!(
            inst.utility(0, set[0].bundle(0)).unwrap(),
            Rat::from_int(2)
        );
    }

    #[test]
    fn nash_allocations_are_ef1() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let inst = random_instance(&mut rng, 3, 4);
            for alloc in max_nash(&inst, 10_000).unwrap() {
                assert!(checkers::is_ef1(&inst, &alloc).unwrap().ok);
            }
        }
    }

    #[test]
    fn nash_single_agent_gets_grand_bundle() {
        let inst = Instance::from_ints(&[&[2, 0, 3]]);
        let set = max_nash(&inst, 1000).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set[0].bundle(0), &[0, 1, 2]);
    }

    #[test]
    fn leximin_examples() {
        // Identical values (1,1): both one-item splits are leximin.
        let inst = Instance::from_ints(&[&[1, 1], &[1, 1]]);
        let set = leximin(&inst, 1000).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set
            .iter()
            .all(|a| a.bundle(0).len() == 1 && a.bundle(1).len() == 1));

        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let inst = random_instance(&mut rng, 2, 3);
            let lex = leximin(&inst, 1000).unwrap();
            let egal = max_egalitarian(&inst, 1000).unwrap();
            for a in &lex {
                assert!(egal.contains(a), "leximin set within egalitarian set");
            }
        }
    }

    #[test]
    fn maximizers_are_pareto_efficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let inst = random_instance(&mut rng, 2, 4);
            for alloc in max_nash(&inst, 10_000).unwrap() {
                assert!(crate::lp::is_po(&inst, &alloc, &Rat::one(), 10_000).unwrap());
            }
            for alloc in leximin(&inst, 10_000).unwrap() {
                // Leximin allocations are egalitarian-stage optimal; check
                // Pareto efficiency directly.
                assert!(crate::lp::is_po(&inst, &alloc, &Rat::one(), 10_000).unwrap());
            }
        }
    }

    #[test]
    fn maximizer_sets_invariant_under_item_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let inst = random_instance(&mut rng, 2, 4);
        let perm = [2usize, 0, 3, 1];
        let permuted = Instance::new(
            inst.rows()
                .iter()
                .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        )
        .unwrap();
        // Position p of the permuted instance is original item perm[p].
        let mut nash_permuted: Vec<IntegralAllocation> = max_nash(&permuted, 10_000)
            .unwrap()
            .into_iter()
            .map(|a| {
                let bundles = a
                    .bundles()
                    .iter()
                    .map(|b| b.iter().map(|&p| perm[p]).collect())
                    .collect();
                IntegralAllocation::new(4, bundles).unwrap()
            })
            .collect();
        nash_permuted.sort();
        assert_eq!(nash_permuted, max_nash(&inst, 10_000).unwrap());
    }
}
