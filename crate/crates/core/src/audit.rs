//! Exact manipulability audits over declared finite report spaces.
//!
//! For a mechanism, an audited agent with a true valuation row, and a list
//! of candidate misreports, the auditor computes the exact worst-case and
//! best-case utilities (by the truth) over every tuple of opponent reports
//! drawn from the space, and compares honest reporting against each
//! misreport. A misreport that strictly improves the worst or the best
//! case is an obvious-manipulation witness; such witnesses are sound for
//! the unrestricted type space since the extremizing profiles are concrete.
//! A no-witness verdict certifies non-manipulability only relative to the
//! declared grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{checked_pow, decode_index};
use crate::error::{Error, Result};
use crate::model::{Instance, IntegralAllocation, Lottery};
use crate::rational::Rat;

/// Named structural families instantiated against the audited agent's row;
/// these are the extremizers that recur across worst/best-case arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// The audited agent's row itself: everyone shares her ranking.
    SameOrder,
    /// Her value multiset rearranged to reverse her ranking.
    OppositeOrder,
    /// One unit row per item.
    UnitVectors,
    /// The all-zero row.
    AllZero,
}

pub const DEFAULT_FAMILIES: [Family; 4] = [
    Family::SameOrder,
    Family::OppositeOrder,
    Family::UnitVectors,
    Family::AllZero,
];

/// A finite set of admissible opponent reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportSpace {
    rows: Vec<Vec<Rat>>,
}

impl ReportSpace {
    /// Builds a space from explicit rows plus structural families derived
    /// from `reference` (the audited agent's truth). Duplicates are merged.
    pub fn new(
        explicit: Vec<Vec<Rat>>,
        families: &[Family],
        reference: &[Rat],
    ) -> Result<Self> {
        let m = reference.len();
        let mut rows = explicit;
        for row in &rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "report row has {} entries, expected {}",
                    row.len(),
                    m
                )));
            }
        }
        for family in families {
            match family {
                Family::SameOrder => rows.push(reference.to_vec()),
                Family::OppositeOrder => rows.push(opposite_order(reference)),
                Family::UnitVectors => {
                    for j in 0..m {
                        let mut row = vec![Rat::zero(); m];
                        row[j] = Rat::one();
                        rows.push(row);
                    }
                }
                Family::AllZero => rows.push(vec![Rat::zero(); m]),
            }
        }
        rows.sort();
        rows.dedup();
        if rows.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(ReportSpace { rows })
    }

    /// Only the given rows, no families.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySpace);
        }
        let m = rows[0].len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(
                "report rows of mixed lengths".into(),
            ));
        }
        let mut rows = rows;
        rows.sort();
        rows.dedup();
        Ok(ReportSpace { rows })
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Rearranges the row's values so the induced ranking is reversed: the
/// favorite item receives the smallest value and so on.
fn opposite_order(reference: &[Rat]) -> Vec<Rat> {
    let m = reference.len();
    let mut by_pref: Vec<usize> = (0..m).collect();
    by_pref.sort_by(|&a, &b| reference[b].cmp(&reference[a]).then(a.cmp(&b)));
    let mut sorted_desc: Vec<Rat> = reference.to_vec();
    sorted_desc.sort_by(|a, b| b.cmp(a));
    let mut out = vec![Rat::zero(); m];
    for (rank, &item) in by_pref.iter().enumerate() {
        out[item] = sorted_desc[m - 1 - rank].clone();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No improvement over honesty anywhere in the grid.
    GridNom,
    /// The misreport strictly improves the worst case; globally sound.
    OmWitnessWorst,
    /// The misreport strictly improves the best case; globally sound.
    OmWitnessBest,
}

/// Exact audit result for one (truth, misreport) pair.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    /// 0-based audited agent.
    pub agent: usize,
    pub truth: Vec<Rat>,
    pub misreport: Vec<Rat>,
    pub honest_worst: Rat,
    pub honest_best: Rat,
    pub misreport_worst: Rat,
    pub misreport_best: Rat,
    /// Opponent rows (in increasing agent order, skipping the audited
    /// agent) attaining each extreme.
    pub honest_worst_profile: Vec<Vec<Rat>>,
    pub honest_best_profile: Vec<Vec<Rat>>,
    pub misreport_worst_profile: Vec<Vec<Rat>>,
    pub misreport_best_profile: Vec<Vec<Rat>>,
    pub verdict: Verdict,
}

/// Worst/best utilities with the flat profile indices attaining them.
#[derive(Debug, Clone)]
struct Extremes {
    min: Option<(Rat, u64)>,
    max: Option<(Rat, u64)>,
}

impl Extremes {
    fn empty() -> Self {
        Extremes {
            min: None,
            max: None,
        }
    }

    fn update(&mut self, value: Rat, index: u64) {
        match &self.min {
            Some((v, i)) if (v, *i) <= (&value, index) => {}
            _ => self.min = Some((value.clone(), index)),
        }
        match &self.max {
            Some((v, i)) if *v > value || (*v == value && *i <= index) => {}
            _ => self.max = Some((value, index)),
        }
    }

    fn merge(&mut self, other: Extremes) {
        if let Some((v, i)) = other.min {
            match &self.min {
                Some((cv, ci)) if (cv, *ci) <= (&v, i) => {}
                _ => self.min = Some((v, i)),
            }
        }
        if let Some((v, i)) = other.max {
            match &self.max {
                Some((cv, ci)) if *cv > v || (*cv == v && *ci <= i) => {}
                _ => self.max = Some((v, i)),
            }
        }
    }
}

/// Exact min/max of the audited agent's truth-utility of `mech`'s output,
/// over all opponent tuples from the space. The mechanism must be a pure
/// function; evaluation order is irrelevant to the result.
fn extremes_for_report<F>(
    mech: &F,
    n: usize,
    agent: usize,
    truth: &[Rat],
    report: &[Rat],
    space: &ReportSpace,
    cap: u64,
) -> Result<(Extremes, u64)>
where
    F: Fn(&Instance) -> Result<Rat> + Sync,
{
    let slots = n - 1;
    let total = checked_pow(space.len() as u64, slots as u32, cap)?;
    let _ = truth;
    let evaluate = |index: u64| -> Result<Rat> {
        let digits = decode_index(index, space.len(), slots);
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut slot = 0usize;
        for i in 0..n {
            if i == agent {
                rows.push(report.to_vec());
            } else {
                rows.push(space.rows()[digits[slot]].clone());
                slot += 1;
            }
        }
        mech(&Instance::new(rows)?)
    };

    let result: Result<Extremes> = (0..total)
        .into_par_iter()
        .fold(
            || Ok(Extremes::empty()),
            |acc: Result<Extremes>, index| {
                let mut acc = acc?;
                acc.update(evaluate(index)?, index);
                Ok(acc)
            },
        )
        .reduce(
            || Ok(Extremes::empty()),
            |a, b| {
                let mut a = a?;
                a.merge(b?);
                Ok(a)
            },
        );
    Ok((result?, total))
}

fn profile_rows(space: &ReportSpace, n: usize, index: u64) -> Vec<Vec<Rat>> {
    decode_index(index, space.len(), n - 1)
        .into_iter()
        .map(|d| space.rows()[d].clone())
        .collect()
}

fn audit_generic<F>(
    utility_of_output: &F,
    n: usize,
    agent: usize,
    truth: &[Rat],
    misreports: &[Vec<Rat>],
    space: &ReportSpace,
    cap: u64,
) -> Result<Vec<AuditReport>>
where
    F: Fn(&Instance) -> Result<Rat> + Sync,
{
    if n == 0 || agent >= n {
        return Err(Error::AgentOutOfRange { agent, n });
    }
    let (honest, _) =
        extremes_for_report(utility_of_output, n, agent, truth, truth, space, cap)?;
    let (honest_worst, hw_idx) = honest.min.expect("non-empty space");
    let (honest_best, hb_idx) = honest.max.expect("non-empty space");

    let mut reports = Vec::with_capacity(misreports.len());
    for misreport in misreports {
        let (extremes, _) = extremes_for_report(
            utility_of_output,
            n,
            agent,
            truth,
            misreport,
            space,
            cap,
        )?;
        let (mis_worst, mw_idx) = extremes.min.expect("non-empty space");
        let (mis_best, mb_idx) = extremes.max.expect("non-empty space");
        let verdict = if mis_worst > honest_worst {
            Verdict::OmWitnessWorst
        } else if mis_best > honest_best {
            Verdict::OmWitnessBest
        } else {
            Verdict::GridNom
        };
        reports.push(AuditReport {
            agent,
            truth: truth.to_vec(),
            misreport: misreport.clone(),
            honest_worst: honest_worst.clone(),
            honest_best: honest_best.clone(),
            misreport_worst: mis_worst,
            misreport_best: mis_best,
            honest_worst_profile: profile_rows(space, n, hw_idx),
            honest_best_profile: profile_rows(space, n, hb_idx),
            misreport_worst_profile: profile_rows(space, n, mw_idx),
            misreport_best_profile: profile_rows(space, n, mb_idx),
            verdict,
        });
    }
    Ok(reports)
}

/// Audits a deterministic mechanism: utilities are the truth-values of the
/// audited agent's output bundle.
pub fn audit_deterministic<M>(
    mech: M,
    n: usize,
    agent: usize,
    truth: &[Rat],
    misreports: &[Vec<Rat>],
    space: &ReportSpace,
    cap: u64,
) -> Result<Vec<AuditReport>>
where
    M: Fn(&Instance) -> Result<IntegralAllocation> + Sync,
{
    let utility = |inst: &Instance| -> Result<Rat> {
        let alloc = mech(inst)?;
        Ok(alloc
            .bundle(agent)
            .iter()
            .map(|&j| truth[j].clone())
            .sum())
    };
    audit_generic(&utility, n, agent, truth, misreports, space, cap)
}

/// Audits a randomized mechanism in expectation: utilities are the exact
/// expected truth-values of the audited agent's share.
pub fn audit_randomized<M>(
    mech: M,
    n: usize,
    agent: usize,
    truth: &[Rat],
    misreports: &[Vec<Rat>],
    space: &ReportSpace,
    cap: u64,
) -> Result<Vec<AuditReport>>
where
    M: Fn(&Instance) -> Result<Lottery> + Sync,
{
    let utility = |inst: &Instance| -> Result<Rat> {
        let lot = mech(inst)?;
        let expected = lot.expected_allocation();
        Ok(truth
            .iter()
            .zip(expected.row(agent))
            .map(|(v, x)| v * x)
            .sum())
    };
    audit_generic(&utility, n, agent, truth, misreports, space, cap)
}

/// Honest-reporting extremes only (no misreports).
pub fn honest_extremes<F>(
    utility_of_output: F,
    n: usize,
    agent: usize,
    truth: &[Rat],
    space: &ReportSpace,
    cap: u64,
) -> Result<(Rat, Rat)>
where
    F: Fn(&Instance) -> Result<Rat> + Sync,
{
    let (extremes, _) =
        extremes_for_report(&utility_of_output, n, agent, truth, truth, space, cap)?;
    Ok((
        extremes.min.expect("non-empty space").0,
        extremes.max.expect("non-empty space").0,
    ))
}
