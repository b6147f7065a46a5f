//! Best-of-both-worlds feasibility: can a lottery over integral
//! allocations with a given ex-post property satisfy a fairness property
//! in expectation? Decided exactly via LP feasibility over the enumerated
//! ex-post set, with a Farkas certificate on the infeasible side.

use serde::Serialize;

use crate::enumerate::{complete_allocations, owners_to_allocation};
use crate::error::{Error, Result};
use crate::lp::{self, FarkasCertificate, LinearProgram, LpStatus, Relation};
use crate::mechanisms;
use crate::model::{Instance, IntegralAllocation, Lottery};
use crate::rational::Rat;

/// Ex-post requirement on every support allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExPost {
    /// Pareto efficient and maximizing the number of positive-utility
    /// agents.
    ParetoMaxPositiveCount,
    Leximin,
    Mnw,
    /// Pareto efficient and egalitarian-welfare maximizing.
    ParetoEgalitarian,
}

/// Ex-ante requirement on the expected fractional allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExAnte {
    Prop,
    Ef,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub expost: ExPost,
    pub exante: ExAnte,
    /// Size of the enumerated ex-post set.
    pub expost_count: usize,
    pub feasible: bool,
    /// A witness lottery over the ex-post set when feasible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lottery: Option<Lottery>,
    /// A verified exact infeasibility certificate otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FarkasCertificate>,
}

/// All complete allocations satisfying the ex-post predicate.
pub fn expost_set(
    inst: &Instance,
    expost: ExPost,
    cap: u64,
) -> Result<Vec<IntegralAllocation>> {
    let with_po_filter = |set: Vec<IntegralAllocation>| -> Result<Vec<IntegralAllocation>> {
        let mut kept = Vec::with_capacity(set.len());
        for alloc in set {
            if pareto_efficient(inst, &alloc, cap)? {
                kept.push(alloc);
            }
        }
        Ok(kept)
    };
    match expost {
        ExPost::ParetoMaxPositiveCount => {
            with_po_filter(mechanisms::max_positive_count(inst, cap)?)
        }
        ExPost::Leximin => mechanisms::leximin(inst, cap),
        ExPost::Mnw => mechanisms::max_nash(inst, cap),
        ExPost::ParetoEgalitarian => with_po_filter(mechanisms::max_egalitarian(inst, cap)?),
    }
}

fn pareto_efficient(inst: &Instance, alloc: &IntegralAllocation, cap: u64) -> Result<bool> {
    lp::is_po(inst, alloc, &Rat::one(), cap)
}

/// Decides whether some lottery over the ex-post set meets the ex-ante
/// requirement. Exact: the LP is solved in rational arithmetic, and the
/// infeasible side carries a Farkas certificate over the proportionality
/// (or pairwise envy) constraints.
pub fn bobw_feasible(
    inst: &Instance,
    expost: ExPost,
    exante: ExAnte,
    cap: u64,
) -> Result<FeasibilityReport> {
    let set = expost_set(inst, expost, cap)?;
    if set.is_empty() {
        return Err(Error::Internal(
            "ex-post set is empty; complete allocations always exist".into(),
        ));
    }
    let n = inst.agents();
    let k = set.len();

    // Variables: one probability per ex-post allocation.
    let mut lp = LinearProgram::new(vec![Rat::zero(); k]);
    lp.constrain(vec![Rat::one(); k], Relation::Eq, Rat::one());

    let utility = |i: usize, z: usize| -> Result<Rat> { inst.utility(i, set[z].bundle(i)) };
    match exante {
        ExAnte::Prop => {
            let n_rat = Rat::from_int(n as i64);
            for i in 0..n {
                let mut coeffs = Vec::with_capacity(k);
                for z in 0..k {
                    coeffs.push(utility(i, z)?);
                }
                lp.constrain(coeffs, Relation::Ge, inst.total_value(i) / &n_rat);
            }
        }
        ExAnte::Ef => {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let mut coeffs = Vec::with_capacity(k);
                    for z in 0..k {
                        let own = utility(i, z)?;
                        let theirs = inst.utility(i, set[z].bundle(j))?;
                        coeffs.push(own - theirs);
                    }
                    lp.constrain(coeffs, Relation::Ge, Rat::zero());
                }
            }
        }
    }

    let result = lp::solve(&lp)?;
    match result.status {
        LpStatus::Optimal => {
            let probs = result.solution.expect("optimal");
            let support: Vec<(Rat, IntegralAllocation)> = probs
                .into_iter()
                .zip(set.iter().cloned())
                .filter(|(p, _)| p.is_positive())
                .collect();
            Ok(FeasibilityReport {
                expost,
                exante,
                expost_count: k,
                feasible: true,
                lottery: Some(Lottery::new(support)?),
                certificate: None,
            })
        }
        LpStatus::Infeasible => Ok(FeasibilityReport {
            expost,
            exante,
            expost_count: k,
            feasible: false,
            lottery: None,
            certificate: result.certificate,
        }),
        LpStatus::Unbounded => Err(Error::Internal(
            "feasibility program has a constant objective".into(),
        )),
    }
}
