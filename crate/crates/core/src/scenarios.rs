//! Pinned reproduction scenarios: each runs a fixed instance and report
//! grid through the relevant mechanism and asserts the documented
//! inequalities exactly. Scenario names are stable CLI tokens.

use serde::Serialize;

use crate::audit::{
    audit_deterministic, audit_randomized, AuditReport, Family, ReportSpace, Verdict,
    DEFAULT_FAMILIES,
};
use crate::bobw::{bobw_feasible, ExAnte, ExPost, FeasibilityReport};
use crate::error::{Error, Result};
use crate::lottery;
use crate::mechanisms::{self, TieBreak};
use crate::model::{Instance, IntegralAllocation, Lottery};
use crate::rational::Rat;
use crate::reduction::{self, ExhaustiveInner};

const CAP: u64 = crate::enumerate::DEFAULT_ENUM_CAP;

/// All scenario names accepted by `run`.
pub const SCENARIO_NAMES: [&str; 11] = [
    "thm3.1",
    "lemma3.3",
    "thm3.4",
    "thm4.1",
    "thm4.2-nom",
    "thm4.3",
    "thm4.4",
    "thm5.5",
    "thm6.1",
    "thm6.2",
    "cor6.3",
];

/// One exact assertion inside a scenario.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub name: String,
    pub claim: String,
    /// Whether the documented outcome is a manipulation witness or an
    /// infeasibility (`true`) rather than a no-witness/feasible verdict.
    pub expect_negative: bool,
    /// What the run actually found.
    pub found_negative: bool,
    /// Every pinned inequality, with pass/fail.
    pub checks: Vec<Check>,
    /// All checks passed and the verdict matches the documented outcome.
    pub matches: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub audits: Vec<AuditReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub feasibility: Vec<FeasibilityReport>,
}

fn outcome(
    name: &str,
    claim: &str,
    expect_negative: bool,
    found_negative: bool,
    checks: Vec<Check>,
    audits: Vec<AuditReport>,
    feasibility: Vec<FeasibilityReport>,
) -> ScenarioOutcome {
    let matches = checks.iter().all(|c| c.pass) && expect_negative == found_negative;
    ScenarioOutcome {
        name: name.to_string(),
        claim: claim.to_string(),
        expect_negative,
        found_negative,
        checks,
        matches,
        audits,
        feasibility,
    }
}

fn rats(row: &[&str]) -> Vec<Rat> {
    row.iter().map(|s| Rat::parse(s).expect("pinned rational")).collect()
}

fn any_witness(reports: &[AuditReport]) -> bool {
    reports.iter().any(|r| r.verdict != Verdict::GridNom)
}

fn worst_witness(reports: &[AuditReport]) -> bool {
    reports
        .iter()
        .any(|r| r.misreport_worst > r.honest_worst)
}

/// Deterministic selections from argmax sets: the canonically smallest
/// bundle encoding.
fn nash_lex(inst: &Instance) -> Result<IntegralAllocation> {
    mechanisms::max_nash(inst, CAP)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty argmax set".into()))
}

fn egalitarian_lex(inst: &Instance) -> Result<IntegralAllocation> {
    mechanisms::max_egalitarian(inst, CAP)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty argmax set".into()))
}

fn count_max_lex(inst: &Instance) -> Result<IntegralAllocation> {
    mechanisms::max_positive_count(inst, CAP)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty argmax set".into()))
}

fn count_max_lottery(inst: &Instance) -> Result<Lottery> {
    mechanisms::uniform_lottery(mechanisms::max_positive_count(inst, CAP)?)
}

/// Runs a scenario by name.
pub fn run(name: &str) -> Result<ScenarioOutcome> {
    match name {
        "thm3.1" => round_robin_nom(),
        "lemma3.3" => ps_lottery_worst_case(),
        "thm3.4" => ps_lottery_nom(),
        "thm4.1" => utilitarian_two_agents(),
        "thm4.2-nom" => utilitarian_three_agents_grid(),
        "thm4.3" => egalitarian_manipulation(),
        "thm4.4" => nash_manipulation(),
        "thm5.5" => reduction_nom(),
        "thm6.1" => count_max_manipulation(),
        "thm6.2" => bobw_infeasibility(),
        "cor6.3" => bobw_corollaries(),
        _ => Err(Error::Internal(format!(
            "unknown scenario {name:?}; valid names: {}",
            SCENARIO_NAMES.join(", ")
        ))),
    }
}

/// Runs every scenario in declaration order.
pub fn run_all() -> Result<Vec<ScenarioOutcome>> {
    SCENARIO_NAMES.iter().map(|name| run(name)).collect()
}

/// Round-Robin over a fully ranked four-item row: the grid extremes match
/// the closed forms and no grid misreport beats honesty on either side.
fn round_robin_nom() -> Result<ScenarioOutcome> {
    let truth = rats(&["4", "3", "2", "1"]);
    let n = 2;
    let perms = crate::testgen::distinct_permutations(&truth);
    let space = ReportSpace::new(perms, &DEFAULT_FAMILIES, &truth)?;
    let misreports: Vec<Vec<Rat>> = space.rows().to_vec();
    let mech =
        |inst: &Instance| -> Result<IntegralAllocation> { mechanisms::round_robin(inst, &[0, 1]) };
    let reports = audit_deterministic(mech, n, 0, &truth, &misreports, &space, CAP)?;

    let (worst, best) = mechanisms::round_robin_worst_best(&truth, 1, n, truth.len())?;
    let honest = &reports[0];
    let mut checks = vec![
        Check::new(
            "honest grid worst equals closed form",
            honest.honest_worst == worst,
            format!("grid {} vs closed {}", honest.honest_worst, worst),
        ),
        Check::new(
            "honest grid best equals closed form",
            honest.honest_best == best,
            format!("grid {} vs closed {}", honest.honest_best, best),
        ),
    ];
    let witness = any_witness(&reports);
    checks.push(Check::new(
        "no grid misreport improves either extreme",
        !witness,
        format!("{} misreports audited", reports.len()),
    ));
    Ok(outcome(
        "thm3.1",
        "Round-Robin admits no obvious manipulation over the ordering grid",
        false,
        witness,
        checks,
        reports,
        vec![],
    ))
}

/// The eating-lottery mechanism guarantees every agent her proportional
/// share in expectation, so no misreport can improve the worst case.
fn ps_lottery_worst_case() -> Result<ScenarioOutcome> {
    let truth = rats(&["1/2", "1/4", "1/8", "1/8"]);
    let n = 3;
    let space = ReportSpace::new(
        vec![rats(&["1/4", "1/4", "1/4", "1/4"]), rats(&["0", "1/2", "1/2", "0"])],
        &DEFAULT_FAMILIES,
        &truth,
    )?;
    let misreports: Vec<Vec<Rat>> = space.rows().to_vec();
    let reports =
        audit_randomized(lottery::ps_lottery, n, 0, &truth, &misreports, &space, CAP)?;

    let share = truth.iter().sum::<Rat>() / Rat::from_int(n as i64);
    let honest = &reports[0];
    let witness = worst_witness(&reports);
    let checks = vec![
        Check::new(
            "honest worst at least the proportional share",
            honest.honest_worst >= share,
            format!("worst {} vs share {}", honest.honest_worst, share),
        ),
        Check::new(
            "no grid misreport improves the worst case",
            !witness,
            format!("{} misreports audited", reports.len()),
        ),
    ];
    Ok(outcome(
        "lemma3.3",
        "ex-ante proportionality shields the worst case of the eating lottery",
        false,
        witness,
        checks,
        reports,
        vec![],
    ))
}

/// Full audit of the eating lottery: proportional worst case, closed-form
/// best case, and no witness on either side.
fn ps_lottery_nom() -> Result<ScenarioOutcome> {
    let truth = rats(&["1/2", "1/3", "1/6"]);
    let n = 2;
    let perms = crate::testgen::distinct_permutations(&truth);
    let space = ReportSpace::new(perms, &DEFAULT_FAMILIES, &truth)?;
    let misreports: Vec<Vec<Rat>> = space.rows().to_vec();
    let reports =
        audit_randomized(lottery::ps_lottery, n, 0, &truth, &misreports, &space, CAP)?;

    // Best case: the top floor(m/n) items whole plus the leftover fraction
    // of the next one.
    let mut sorted = truth.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    let m = truth.len();
    let whole = m / n;
    let mut best = sorted[..whole].iter().sum::<Rat>();
    let leftover = Rat::new(m as i64, n as i64) - Rat::from_int(whole as i64);
    if leftover.is_positive() && whole < m {
        best += &leftover * &sorted[whole];
    }
    let share = truth.iter().sum::<Rat>() / Rat::from_int(n as i64);

    let honest = &reports[0];
    let witness = any_witness(&reports);
    let checks = vec![
        Check::new(
            "honest worst at least the proportional share",
            honest.honest_worst >= share,
            format!("worst {} vs share {}", honest.honest_worst, share),
        ),
        Check::new(
            "honest best equals the closed form",
            honest.honest_best == best,
            format!("grid {} vs closed {}", honest.honest_best, best),
        ),
        Check::new(
            "no grid misreport improves either extreme",
            !witness,
            format!("{} misreports audited", reports.len()),
        ),
    ];
    Ok(outcome(
        "thm3.4",
        "the eating lottery is non-manipulable in expectation over the grid",
        false,
        witness,
        checks,
        reports,
        vec![],
    ))
}

/// Two agents, utilitarian maximization: misreporting full weight on the
/// favorite item strictly improves the worst case, on the deterministic
/// tie path and on the uniform-lottery tie path.
fn utilitarian_two_agents() -> Result<ScenarioOutcome> {
    let eps = Rat::new(1, 100);
    let truth = rats(&["203/300", "97/300"]);
    let misreport = rats(&["1", "0"]);
    let n = 2;
    // Normalized rows only: the maximizer rescales reports and cannot
    // accept all-zero rows.
    let space = ReportSpace::new(
        vec![rats(&["1/2", "1/2"])],
        &[Family::SameOrder, Family::OppositeOrder, Family::UnitVectors],
        &truth,
    )?;

    let det = |inst: &Instance| -> Result<IntegralAllocation> {
        Ok(mechanisms::max_utilitarian(inst, TieBreak::SmallestIndex)?.allocation)
    };
    let det_reports = audit_deterministic(
        det,
        n,
        0,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let det_report = &det_reports[0];

    let lot_reports = audit_randomized(
        mechanisms::utilitarian_lottery,
        n,
        0,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let lot_report = &lot_reports[0];

    // The tied all-favorite profile hands the audited agent the contested
    // item with probability exactly one half.
    let tie_inst = Instance::new(vec![misreport.clone(), misreport.clone()])?;
    let tie_lottery = mechanisms::utilitarian_lottery(&tie_inst)?;
    let tie_share = tie_lottery.expected_allocation().share(0, 0).clone();

    let third_minus = Rat::new(1, 3) - &eps;
    let third_plus_half = Rat::new(1, 3) + Rat::new(1, 200);
    let two_thirds_plus = Rat::new(2, 3) + &eps;
    let checks = vec![
        Check::new(
            "deterministic honest worst at most 1/3 - eps",
            det_report.honest_worst <= third_minus,
            format!("{} vs {}", det_report.honest_worst, third_minus),
        ),
        Check::new(
            "deterministic misreport worst at least 2/3 + eps",
            det_report.misreport_worst >= two_thirds_plus,
            format!("{} vs {}", det_report.misreport_worst, two_thirds_plus),
        ),
        Check::new(
            "deterministic worst-case witness",
            det_report.verdict == Verdict::OmWitnessWorst,
            format!("{:?}", det_report.verdict),
        ),
        Check::new(
            "lottery honest worst at most 1/3 - eps",
            lot_report.honest_worst <= third_minus,
            format!("{} vs {}", lot_report.honest_worst, third_minus),
        ),
        Check::new(
            "lottery misreport worst at least 1/3 + eps/2",
            lot_report.misreport_worst >= third_plus_half,
            format!("{} vs {}", lot_report.misreport_worst, third_plus_half),
        ),
        Check::new(
            "tied favorite item won with probability at least 1/2",
            tie_share >= Rat::new(1, 2),
            format!("share {}", tie_share),
        ),
        Check::new(
            "lottery worst-case witness",
            lot_report.verdict == Verdict::OmWitnessWorst,
            format!("{:?}", lot_report.verdict),
        ),
    ];
    let found = det_report.verdict == Verdict::OmWitnessWorst
        && lot_report.verdict == Verdict::OmWitnessWorst;
    let mut audits = det_reports;
    audits.extend(lot_reports);
    Ok(outcome(
        "thm4.1",
        "two-agent utilitarian maximization is obviously manipulable",
        true,
        found,
        checks,
        audits,
        vec![],
    ))
}

/// All normalized rows over the value set {0, 1/3, 1/2, 1}.
fn normalized_grid_rows(m: usize) -> Vec<Vec<Rat>> {
    let levels = rats(&["0", "1/3", "1/2", "1"]);
    let mut rows = Vec::new();
    let total = levels.len().pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let mut row = Vec::with_capacity(m);
        for _ in 0..m {
            row.push(levels[c % levels.len()].clone());
            c /= levels.len();
        }
        if row.iter().sum::<Rat>() == Rat::one() {
            rows.push(row);
        }
    }
    rows.sort();
    rows
}

/// Three agents, utilitarian maximization with the first-last tie
/// exception: over the full normalized grid, no (truth, misreport) pair
/// for any agent yields a witness.
fn utilitarian_three_agents_grid() -> Result<ScenarioOutcome> {
    let n = 3;
    let rows = normalized_grid_rows(3);
    let space = ReportSpace::from_rows(rows.clone())?;
    let mech = |inst: &Instance| -> Result<IntegralAllocation> {
        Ok(mechanisms::max_utilitarian(inst, TieBreak::FirstLastException)?.allocation)
    };

    let mut audit_count = 0usize;
    let mut witness_count = 0usize;
    for agent in 0..n {
        for truth in &rows {
            let reports =
                audit_deterministic(mech, n, agent, truth, &rows, &space, CAP)?;
            audit_count += reports.len();
            witness_count += reports
                .iter()
                .filter(|r| r.verdict != Verdict::GridNom)
                .count();
        }
    }
    let checks = vec![Check::new(
        "no witness for any agent/truth/misreport over the full grid",
        witness_count == 0,
        format!("{audit_count} pairs audited, {witness_count} witnesses"),
    )];
    Ok(outcome(
        "thm4.2-nom",
        "three-agent utilitarian maximization with the first-last tie \
         exception is non-manipulable over the normalized grid",
        false,
        witness_count > 0,
        checks,
        vec![],
        vec![],
    ))
}

/// Egalitarian maximization: dropping the low-value item from the report
/// lifts the worst case from 1/10 to 3/10.
fn egalitarian_manipulation() -> Result<ScenarioOutcome> {
    let truth = rats(&["3/10", "3/10", "3/10", "1/10"]);
    let misreport = rats(&["1/3", "1/3", "1/3", "0"]);
    let space = ReportSpace::new(
        vec![rats(&["0", "0", "1", "0"]), rats(&["1/20", "1/20", "9/10", "0"])],
        &DEFAULT_FAMILIES,
        &truth,
    )?;
    let reports = audit_deterministic(
        egalitarian_lex,
        3,
        0,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let r = &reports[0];
    let tenth = Rat::new(1, 10);
    let three_tenths = Rat::new(3, 10);
    let checks = vec![
        Check::new(
            "honest worst exactly 1/10",
            r.honest_worst == tenth,
            format!("{}", r.honest_worst),
        ),
        Check::new(
            "misreport worst exactly 3/10",
            r.misreport_worst == three_tenths,
            format!("{}", r.misreport_worst),
        ),
        Check::new(
            "worst-case witness",
            r.verdict == Verdict::OmWitnessWorst,
            format!("{:?}", r.verdict),
        ),
    ];
    let found = r.verdict == Verdict::OmWitnessWorst;
    Ok(outcome(
        "thm4.3",
        "egalitarian welfare maximization is obviously manipulable",
        true,
        found,
        checks,
        reports,
        vec![],
    ))
}

/// Rows supported on at most two items with values in {1, 2}.
fn small_support_rows(m: usize) -> Vec<Vec<Rat>> {
    let levels = [Rat::one(), Rat::from_int(2)];
    let mut rows = Vec::new();
    for a in 0..m {
        for va in &levels {
            let mut row = vec![Rat::zero(); m];
            row[a] = va.clone();
            rows.push(row.clone());
            for b in (a + 1)..m {
                for vb in &levels {
                    let mut pair = row.clone();
                    pair[b] = vb.clone();
                    rows.push(pair);
                }
            }
        }
    }
    rows
}

/// Nash-welfare maximization: flattening the report lifts the worst case
/// strictly above 2.
fn nash_manipulation() -> Result<ScenarioOutcome> {
    let truth = rats(&["3.9", "3", "2", "0.9"]);
    let misreport = rats(&["2", "2", "1", "1"]);
    let mut explicit = vec![rats(&["0", "1", "0", "0"]), rats(&["2", "0", "0", "1"])];
    explicit.extend(small_support_rows(4));
    let space = ReportSpace::new(explicit, &DEFAULT_FAMILIES, &truth)?;
    let reports = audit_deterministic(
        nash_lex,
        3,
        0,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let r = &reports[0];
    let two = Rat::from_int(2);
    let checks = vec![
        Check::new(
            "honest worst exactly 2",
            r.honest_worst == two,
            format!("{}", r.honest_worst),
        ),
        Check::new(
            "misreport worst strictly above 2",
            r.misreport_worst > two,
            format!("{}", r.misreport_worst),
        ),
        Check::new(
            "worst-case witness",
            r.verdict == Verdict::OmWitnessWorst,
            format!("{:?}", r.verdict),
        ),
    ];
    let found = r.verdict == Verdict::OmWitnessWorst;
    Ok(outcome(
        "thm4.4",
        "Nash welfare maximization is obviously manipulable",
        true,
        found,
        checks,
        reports,
        vec![],
    ))
}

/// The black-box reduction with the exhaustive inner algorithm: over a
/// grid containing every realizing profile, the honest worst case equals
/// the EF1-set minimum and no misreport improves either side.
fn reduction_nom() -> Result<ScenarioOutcome> {
    let n = 3;
    let m = 3;
    let truth = rats(&["2", "1", "0"]);
    let misreports = vec![
        rats(&["1", "1", "1"]),
        rats(&["0", "0", "1"]),
        rats(&["3", "2", "1"]),
    ];

    // Opponent rows realizing every allocation in the EF1 sets of the
    // truth and of each misreport.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for report in std::iter::once(&truth).chain(misreports.iter()) {
        for target in reduction::ef1_set_for_agent(0, report, n, m, CAP)? {
            let inst = reduction::realize_allocation(0, report, &target)?;
            for j in 1..n {
                rows.push(inst.row(j).to_vec());
            }
        }
    }
    let space = ReportSpace::new(rows, &[Family::AllZero], &truth)?;

    let inner = ExhaustiveInner::default();
    let mech = |inst: &Instance| -> Result<IntegralAllocation> {
        reduction::reduction_mechanism(inst, &inner)
    };
    let reports = audit_deterministic(mech, n, 0, &truth, &misreports, &space, CAP)?;

    let honest_set = reduction::ef1_set_for_agent(0, &truth, n, m, CAP)?;
    let set_worst = reduction::worst_in_set(0, &truth, &honest_set)
        .ok_or_else(|| Error::Internal("empty EF1 set".into()))?;
    let r0 = &reports[0];
    let witness = any_witness(&reports);
    let checks = vec![
        Check::new(
            "honest grid worst equals the EF1-set minimum",
            r0.honest_worst == set_worst,
            format!("grid {} vs set {}", r0.honest_worst, set_worst),
        ),
        Check::new(
            "no grid misreport improves either extreme",
            !witness,
            format!("{} misreports audited over {} rows", reports.len(), space.len()),
        ),
    ];
    Ok(outcome(
        "thm5.5",
        "the EF1-preserving reduction admits no obvious manipulation over \
         the realizing grid",
        false,
        witness,
        checks,
        reports,
        vec![],
    ))
}

/// Two agents, maximize-the-number-of-positive-utility-agents: the
/// favored agent improves her worst case by reporting all weight on the
/// contested item. Both the deterministic selection and the uniform
/// lottery are manipulable.
fn count_max_manipulation() -> Result<ScenarioOutcome> {
    let truth = rats(&["203/300", "97/300"]);
    let misreport = rats(&["1", "0"]);
    let n = 2;
    // The canonical selection hands the contested item to the later agent
    // on the all-tied profile, so agent 2 (index 1) is the favored one.
    let agent = 1;
    let space = ReportSpace::new(
        vec![rats(&["1/2", "1/2"])],
        &[Family::SameOrder, Family::OppositeOrder, Family::UnitVectors],
        &truth,
    )?;

    let det_reports = audit_deterministic(
        count_max_lex,
        n,
        agent,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let det = &det_reports[0];

    let lot_reports = audit_randomized(
        count_max_lottery,
        n,
        agent,
        &truth,
        std::slice::from_ref(&misreport),
        &space,
        CAP,
    )?;
    let lot = &lot_reports[0];

    let tie_inst = Instance::new(vec![misreport.clone(), misreport.clone()])?;
    let tie_share = count_max_lottery(&tie_inst)?
        .expected_allocation()
        .share(agent, 0)
        .clone();

    let third_minus = Rat::new(97, 300);
    let two_thirds_plus = Rat::new(203, 300);
    let third_plus_half = Rat::new(1, 3) + Rat::new(1, 200);
    let checks = vec![
        Check::new(
            "deterministic honest worst at most 1/3 - eps",
            det.honest_worst <= third_minus,
            format!("{}", det.honest_worst),
        ),
        Check::new(
            "deterministic misreport worst at least 2/3 + eps",
            det.misreport_worst >= two_thirds_plus,
            format!("{}", det.misreport_worst),
        ),
        Check::new(
            "lottery misreport worst at least 1/3 + eps/2",
            lot.misreport_worst >= third_plus_half,
            format!("{}", lot.misreport_worst),
        ),
        Check::new(
            "tied contested item won with probability at least 1/2",
            tie_share >= Rat::new(1, 2),
            format!("share {}", tie_share),
        ),
        Check::new(
            "worst-case witness on both paths",
            det.verdict == Verdict::OmWitnessWorst && lot.verdict == Verdict::OmWitnessWorst,
            format!("det {:?}, lottery {:?}", det.verdict, lot.verdict),
        ),
    ];
    let found =
        det.verdict == Verdict::OmWitnessWorst && lot.verdict == Verdict::OmWitnessWorst;
    let mut audits = det_reports;
    audits.extend(lot_reports);
    Ok(outcome(
        "thm6.1",
        "maximizing the number of positive-utility agents is obviously \
         manipulable for two agents",
        true,
        found,
        checks,
        audits,
        vec![],
    ))
}

/// The two-agent witness instance for which no lottery over
/// Pareto-efficient, count-maximizing allocations is proportional in
/// expectation.
fn bobw_witness_instance() -> Result<Instance> {
    Instance::new(vec![rats(&["203/300", "97/300"]), rats(&["1", "0"])])
}

fn feasibility_checks(
    reports: &[FeasibilityReport],
) -> (Vec<Check>, bool) {
    let mut checks = Vec::new();
    let mut all_infeasible = true;
    for report in reports {
        let label = format!("{:?} + {:?} infeasible with verified certificate", report.expost, report.exante);
        let verified = report
            .certificate
            .as_ref()
            .map(|c| c.verify())
            .unwrap_or(false);
        let pass = !report.feasible && verified;
        all_infeasible &= pass;
        checks.push(Check::new(
            label,
            pass,
            format!(
                "feasible: {}, ex-post set size {}",
                report.feasible, report.expost_count
            ),
        ));
    }
    (checks, all_infeasible)
}

/// Ex-ante proportionality is incompatible with ex-post Pareto efficiency
/// plus count maximization on the witness instance.
fn bobw_infeasibility() -> Result<ScenarioOutcome> {
    let inst = bobw_witness_instance()?;
    let reports = vec![bobw_feasible(
        &inst,
        ExPost::ParetoMaxPositiveCount,
        ExAnte::Prop,
        CAP,
    )?];
    let (checks, all_infeasible) = feasibility_checks(&reports);
    Ok(outcome(
        "thm6.2",
        "no lottery over Pareto-efficient count-maximizing allocations is \
         proportional in expectation on the witness instance",
        true,
        all_infeasible,
        checks,
        vec![],
        reports,
    ))
}

/// The same witness kills ex-post egalitarian, leximin and Nash-optimal
/// supports as well.
fn bobw_corollaries() -> Result<ScenarioOutcome> {
    let inst = bobw_witness_instance()?;
    let reports = vec![
        bobw_feasible(&inst, ExPost::ParetoEgalitarian, ExAnte::Prop, CAP)?,
        bobw_feasible(&inst, ExPost::Leximin, ExAnte::Prop, CAP)?,
        bobw_feasible(&inst, ExPost::Mnw, ExAnte::Prop, CAP)?,
    ];
    let (checks, all_infeasible) = feasibility_checks(&reports);
    Ok(outcome(
        "cor6.3",
        "ex-ante proportionality also fails against ex-post egalitarian, \
         leximin and Nash-optimal supports",
        true,
        all_infeasible,
        checks,
        vec![],
        reports,
    ))
}
