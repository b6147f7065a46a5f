//! Testable predicates for the fairness and structural notions used by the
//! mechanisms and audits: envy-freeness, proportionality, EF1, cleanliness,
//! non-wastefulness and completeness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{FractionalAllocation, Instance, IntegralAllocation};
use crate::rational::Rat;

/// Verdict of an envy-style check. `ok` holds iff `witness` is absent; the
/// witness is the lexicographically smallest violating (envious, envied)
/// pair. Proportionality failures are reported as `(i, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvyReport {
    pub ok: bool,
    pub witness: Option<(usize, usize)>,
}

impl EnvyReport {
    fn ok() -> Self {
        EnvyReport {
            ok: true,
            witness: None,
        }
    }

    fn witness(i: usize, j: usize) -> Self {
        EnvyReport {
            ok: false,
            witness: Some((i, j)),
        }
    }
}

/// An integral or fractional allocation, viewed uniformly.
#[derive(Debug, Clone, Copy)]
pub enum AllocView<'a> {
    Integral(&'a IntegralAllocation),
    Fractional(&'a FractionalAllocation),
}

impl<'a> From<&'a IntegralAllocation> for AllocView<'a> {
    fn from(a: &'a IntegralAllocation) -> Self {
        AllocView::Integral(a)
    }
}

impl<'a> From<&'a FractionalAllocation> for AllocView<'a> {
    fn from(a: &'a FractionalAllocation) -> Self {
        AllocView::Fractional(a)
    }
}

impl AllocView<'_> {
    pub fn agents(&self) -> usize {
        match self {
            AllocView::Integral(a) => a.agents(),
            AllocView::Fractional(a) => a.agents(),
        }
    }

    pub fn items(&self) -> usize {
        match self {
            AllocView::Integral(a) => a.items(),
            AllocView::Fractional(a) => a.items(),
        }
    }

    /// `inst`-utility of `evaluator` for the share held by `holder`.
    pub fn utility_of_bundle(
        &self,
        inst: &Instance,
        evaluator: usize,
        holder: usize,
    ) -> Result<Rat> {
        match self {
            AllocView::Integral(a) => inst.utility(evaluator, a.bundle(holder)),
            AllocView::Fractional(a) => inst.utility_fractional(evaluator, a.row(holder)),
        }
    }
}

fn check_dims(inst: &Instance, alloc: &AllocView<'_>) -> Result<()> {
    if inst.agents() != alloc.agents() || inst.items() != alloc.items() {
        return Err(Error::DimensionMismatch(format!(
            "instance is {}x{}, allocation is {}x{}",
            inst.agents(),
            inst.items(),
            alloc.agents(),
            alloc.items()
        )));
    }
    Ok(())
}

/// Envy-freeness: every agent values her own share at least as much as any
/// other agent's share.
pub fn is_ef<'a>(inst: &Instance, alloc: impl Into<AllocView<'a>>) -> Result<EnvyReport> {
    let alloc = alloc.into();
    check_dims(inst, &alloc)?;
    let n = inst.agents();
    for i in 0..n {
        let own = alloc.utility_of_bundle(inst, i, i)?;
        for j in 0..n {
            if i == j {
                continue;
            }
            if alloc.utility_of_bundle(inst, i, j)? > own {
                return Ok(EnvyReport::witness(i, j));
            }
        }
    }
    Ok(EnvyReport::ok())
}

/// Proportionality: every agent gets at least a 1/n fraction of her value
/// for the grand bundle.
pub fn is_prop<'a>(inst: &Instance, alloc: impl Into<AllocView<'a>>) -> Result<EnvyReport> {
    let alloc = alloc.into();
    check_dims(inst, &alloc)?;
    let n = Rat::from_int(inst.agents() as i64);
    for i in 0..inst.agents() {
        let own = alloc.utility_of_bundle(inst, i, i)?;
        let fair_share = inst.total_value(i) / &n;
        if own < fair_share {
            return Ok(EnvyReport::witness(i, i));
        }
    }
    Ok(EnvyReport::ok())
}

/// Envy-freeness up to one item for a single envier `i`: for every agent `j`
/// with a non-empty bundle there is an item whose removal eliminates `i`'s
/// envy. Empty envied bundles are vacuously fine.
pub fn is_ef1_for_agent(
    inst: &Instance,
    agent: usize,
    alloc: &IntegralAllocation,
) -> Result<EnvyReport> {
    check_dims(inst, &AllocView::Integral(alloc))?;
    if agent >= inst.agents() {
        return Err(Error::AgentOutOfRange {
            agent,
            n: inst.agents(),
        });
    }
    let own = inst.utility(agent, alloc.bundle(agent))?;
    for j in 0..inst.agents() {
        if j == agent || alloc.bundle(j).is_empty() {
            continue;
        }
        let other = inst.utility(agent, alloc.bundle(j))?;
        let best_removable = alloc
            .bundle(j)
            .iter()
            .map(|&g| inst.value(agent, g))
            .max()
            .expect("non-empty bundle");
        if own < other - best_removable {
            return Ok(EnvyReport::witness(agent, j));
        }
    }
    Ok(EnvyReport::ok())
}

/// Envy-freeness up to one item over all pairs of agents.
pub fn is_ef1(inst: &Instance, alloc: &IntegralAllocation) -> Result<EnvyReport> {
    for i in 0..inst.agents() {
        let report = is_ef1_for_agent(inst, i, alloc)?;
        if !report.ok {
            return Ok(report);
        }
    }
    Ok(EnvyReport::ok())
}

/// Clean: every allocated item has strictly positive value to its holder.
pub fn is_clean(inst: &Instance, alloc: &IntegralAllocation) -> Result<bool> {
    check_dims(inst, &AllocView::Integral(alloc))?;
    for (agent, bundle) in alloc.bundles().iter().enumerate() {
        for &item in bundle {
            if !inst.value(agent, item).is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Non-wasteful: every unallocated item has zero value to every agent.
pub fn is_non_wasteful(inst: &Instance, alloc: &IntegralAllocation) -> Result<bool> {
    check_dims(inst, &AllocView::Integral(alloc))?;
    for item in alloc.unallocated() {
        for agent in 0..inst.agents() {
            if inst.value(agent, item).is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Completeness: every item is assigned to some agent.
pub fn is_complete(alloc: &IntegralAllocation) -> bool {
    alloc.is_complete()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ef_examples() {
        let inst = Instance::from_ints(&[&[1, 1], &[1, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_ef(&inst, &alloc).unwrap().ok);

        // One item both agents want; the loser envies.
        let inst = Instance::from_ints(&[&[1], &[1]]);
        let alloc = IntegralAllocation::new(1, vec![vec![0], vec![]]).unwrap();
        let report = is_ef(&inst, &alloc).unwrap();
        assert_eq!(report.witness, Some((1, 0)));
    }

    #[test]
    fn prop_examples() {
        let inst = Instance::from_ints(&[&[3, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![0, 1]]).unwrap();
        assert!(is_prop(&inst, &alloc).unwrap().ok);

        // Agent 1 of the egalitarian impossibility instance, holding only
        // the 0.1-valued item, is below her 1/3 share.
        let row: Vec<Rat> = ["3/10", "3/10", "3/10", "1/10"]
            .iter()
            .map(|s| Rat::parse(s).unwrap())
            .collect();
        let inst = Instance::new(vec![
            row,
            vec![Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
            vec![Rat::zero(); 4],
        ])
        .unwrap();
        let alloc =
            IntegralAllocation::new(4, vec![vec![3], vec![2], vec![0, 1]]).unwrap();
        let report = is_prop(&inst, &alloc).unwrap();
        assert_eq!(report.witness, Some((0, 0)));
    }

    #[test]
    fn ef1_examples() {
        // Agent 1 with values (1,1) and an empty bundle envies a two-item
        // bundle even after a removal.
        let inst = Instance::from_ints(&[&[1, 1], &[1, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![], vec![0, 1]]).unwrap();
        let report = is_ef1(&inst, &alloc).unwrap();
        assert_eq!(report.witness, Some((0, 1)));

        // EF implies EF1.
        let alloc = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_ef1(&inst, &alloc).unwrap().ok);

        // Empty envied bundles never witness; m = 0 is trivially fine.
        let inst = Instance::from_ints(&[&[], &[]]);
        let alloc = IntegralAllocation::empty(2, 0);
        assert!(is_ef1(&inst, &alloc).unwrap().ok);
    }

    #[test]
    fn one_sided_ef1() {
        let inst = Instance::from_ints(&[&[1, 1], &[5, 5]]);
        let alloc = IntegralAllocation::new(2, vec![vec![], vec![0, 1]]).unwrap();
        assert!(!is_ef1_for_agent(&inst, 0, &alloc).unwrap().ok);
        assert!(is_ef1_for_agent(&inst, 1, &alloc).unwrap().ok);
    }

    #[test]
    fn clean_and_non_wasteful() {
        let inst = Instance::from_ints(&[&[1, 0], &[1, 1]]);
        let zero_held = IntegralAllocation::new(2, vec![vec![0, 1], vec![]]).unwrap();
        assert!(!is_clean(&inst, &zero_held).unwrap());

        let complete = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_clean(&inst, &complete).unwrap());
        assert!(is_non_wasteful(&inst, &complete).unwrap());

        // Item 1 is valued by agent 2, so leaving it out is wasteful.
        let partial = IntegralAllocation::new(2, vec![vec![0], vec![]]).unwrap();
        assert!(!is_non_wasteful(&inst, &partial).unwrap());
    }
}
