//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex with Bland's anti-cycling rule. All
//! pivots are exact; there are no tolerances anywhere. Infeasible programs
//! come with a Farkas certificate (a non-negative combination of the
//! constraints proving emptiness) that is re-verified by substitution
//! before being returned.

use serde::Serialize;

use crate::checkers::AllocView;
use crate::enumerate::{complete_allocations, owners_to_allocation};
use crate::error::{Error, Result};
use crate::model::{Instance, IntegralAllocation};
use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `maximize objective . x` subject to linear constraints and per-variable
/// optional bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub constraints: Vec<(Vec<Rat>, Relation, Rat)>,
    /// Per-variable `(lower, upper)`; `None` means unbounded on that side.
    pub bounds: Vec<(Option<Rat>, Option<Rat>)>,
}

impl LinearProgram {
    /// A program over the given objective with default bounds `x >= 0`.
    pub fn new(objective: Vec<Rat>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds: vec![(Some(Rat::zero()), None); n],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) {
        self.constraints.push((coeffs, rel, rhs));
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.bounds.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (i, (coeffs, _, _)) in self.constraints.iter().enumerate() {
            if coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "constraint {} has {} coefficients for {} variables",
                    i,
                    coeffs.len(),
                    n
                )));
            }
        }
        for (j, (lo, hi)) in self.bounds.iter().enumerate() {
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if lo > hi {
                    return Err(Error::MalformedLp(format!(
                        "variable {} has lower bound {} above upper bound {}",
                        j, lo, hi
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// A non-negative combination of `>=`-canonical rows summing to the
/// contradiction `0 >= positive`. Rows are in the original variable space
/// and include finite variable bounds.
#[derive(Debug, Clone, Serialize)]
pub struct FarkasCertificate {
    pub rows: Vec<(Vec<Rat>, Rat)>,
    pub multipliers: Vec<Rat>,
}

impl FarkasCertificate {
    /// Checks `sum(lambda_r g_r) = 0` and `sum(lambda_r h_r) > 0` exactly.
    pub fn verify(&self) -> bool {
        if self.rows.len() != self.multipliers.len()
            || self.multipliers.iter().any(Rat::is_negative)
        {
            return false;
        }
        let nvars = self.rows.first().map_or(0, |(g, _)| g.len());
        for j in 0..nvars {
            let s: Rat = self
                .rows
                .iter()
                .zip(&self.multipliers)
                .map(|((g, _), l)| &g[j] * l)
                .sum();
            if !s.is_zero() {
                return false;
            }
        }
        let rhs: Rat = self
            .rows
            .iter()
            .zip(&self.multipliers)
            .map(|((_, h), l)| h * l)
            .sum();
        rhs.is_positive()
    }
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    pub optimum: Option<Rat>,
    pub solution: Option<Vec<Rat>>,
    pub certificate: Option<FarkasCertificate>,
}

/// How each original variable maps to tableau columns.
#[derive(Clone)]
enum VarMap {
    /// `x = lower + column`
    Shifted { col: usize, lower: Rat },
    /// `x = column(pos) - column(neg)` for variables without a lower bound
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Structural and slack columns; the artificial block starts as the
    /// identity and is tracked implicitly via `basis`.
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    /// Basic column per row; artificial of row r is encoded as `cols + r`.
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.b.len()
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.cols
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.a[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for x in self.a[row].iter_mut() {
            *x /= &pivot;
        }
        self.b[row] /= &pivot;
        for r in 0..self.rows() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let factor = self.a[r][col].clone();
            for c in 0..self.cols {
                let delta = &factor * &self.a[row][c];
                self.a[r][c] -= delta;
            }
            let delta = &factor * &self.b[row];
            self.b[r] -= delta;
        }
        self.basis[row] = col;
    }

    /// Simplex iterations maximizing `costs . x` (`art_cost` for artificial
    /// columns) from the current basis, with Bland's rule for both the
    /// entering and the leaving choice. Returns false iff unbounded.
    fn maximize(&mut self, costs: &[Rat], art_cost: &Rat) -> bool {
        loop {
            let basic_costs: Vec<Rat> = self
                .basis
                .iter()
                .map(|&c| {
                    if self.is_artificial(c) {
                        art_cost.clone()
                    } else {
                        costs[c].clone()
                    }
                })
                .collect();

            let mut entering = None;
            for j in 0..self.cols {
                if self.basis.contains(&j) {
                    continue;
                }
                let z: Rat = basic_costs
                    .iter()
                    .zip(self.a.iter())
                    .map(|(cb, row)| cb * &row[j])
                    .sum();
                if costs[j] > z {
                    entering = Some(j);
                    break; // smallest eligible index
                }
            }
            let Some(col) = entering else {
                return true;
            };

            let mut leaving: Option<(usize, Rat)> = None;
            for r in 0..self.rows() {
                if !self.a[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][col];
                let better = match &leaving {
                    None => true,
                    Some((prev_r, prev)) => {
                        ratio < *prev || (ratio == *prev && self.basis[r] < self.basis[*prev_r])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

struct Standardized {
    /// Pre-pivot coefficient rows (structural + slack columns), rhs >= 0.
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    /// Whether source row k was negated to make its rhs non-negative.
    flipped: Vec<bool>,
    /// All source constraints: the program's own plus one `<=` row per
    /// finite upper bound.
    sources: Vec<(Vec<Rat>, Relation, Rat)>,
    var_map: Vec<VarMap>,
    total_cols: usize,
}

fn standardize(lp: &LinearProgram) -> Standardized {
    let nvars = lp.objective.len();

    let mut var_map = Vec::with_capacity(nvars);
    let mut ncols = 0usize;
    for (lo, _) in &lp.bounds {
        match lo {
            Some(l) => {
                var_map.push(VarMap::Shifted {
                    col: ncols,
                    lower: l.clone(),
                });
                ncols += 1;
            }
            None => {
                var_map.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }

    let mut sources = lp.constraints.clone();
    for (j, (_, hi)) in lp.bounds.iter().enumerate() {
        if let Some(u) = hi {
            let mut coeffs = vec![Rat::zero(); nvars];
            coeffs[j] = Rat::one();
            sources.push((coeffs, Relation::Le, u.clone()));
        }
    }

    let nrows = sources.len();
    let total_cols = ncols + nrows;
    let mut rows = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    let mut flipped = Vec::with_capacity(nrows);
    for (k, (coeffs, rel, b)) in sources.iter().enumerate() {
        let mut row = vec![Rat::zero(); total_cols];
        let mut offset = Rat::zero();
        for (j, c) in coeffs.iter().enumerate() {
            match &var_map[j] {
                VarMap::Shifted { col, lower } => {
                    row[*col] = c.clone();
                    offset += c * lower;
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] = c.clone();
                    row[*neg] = -c;
                }
            }
        }
        row[ncols + k] = match rel {
            Relation::Le => Rat::one(),
            Relation::Ge => -Rat::one(),
            Relation::Eq => Rat::zero(),
        };
        let mut b = b - &offset;
        let flip = b.is_negative();
        if flip {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        flipped.push(flip);
    }

    Standardized {
        rows,
        rhs,
        flipped,
        sources,
        var_map,
        total_cols,
    }
}

/// Recovers the phase-1 dual and assembles non-negative multipliers over
/// the `>=`-canonical rows of the original system.
fn build_farkas(lp: &LinearProgram, std: &Standardized, tab: &Tableau) -> Result<FarkasCertificate> {
    let nrows = tab.rows();
    let nvars = lp.objective.len();

    // Solve B^T w = c_B exactly, where B's columns are the pre-pivot columns
    // of the basic variables (artificial r = e_r) and c_B is -1 on
    // artificial basics, 0 otherwise.
    let mut mat: Vec<Vec<Rat>> = (0..nrows)
        .map(|i| {
            let col = tab.basis[i];
            (0..nrows)
                .map(|k| {
                    if tab.is_artificial(col) {
                        if col - tab.cols == k {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    } else {
                        std.rows[k][col].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut w: Vec<Rat> = (0..nrows)
        .map(|i| {
            if tab.is_artificial(tab.basis[i]) {
                -Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect();
    gaussian_solve(&mut mat, &mut w);

    // Undo row flips and negate: u = -tau * w gives multipliers with
    // u <= 0 on Le sources, u >= 0 on Ge sources, free on Eq sources.
    let u: Vec<Rat> = (0..nrows)
        .map(|k| if std.flipped[k] { w[k].clone() } else { -&w[k] })
        .collect();

    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut multipliers: Vec<Rat> = Vec::new();
    let mut push = |g: Vec<Rat>, h: Rat, lambda: Rat| {
        if lambda.is_positive() {
            rows.push((g, h));
            multipliers.push(lambda);
        }
    };
    for (k, (coeffs, rel, b)) in std.sources.iter().enumerate() {
        let lam = &u[k];
        match rel {
            Relation::Le => push(coeffs.iter().map(|c| -c).collect(), -b, -lam),
            Relation::Ge => push(coeffs.clone(), b.clone(), lam.clone()),
            Relation::Eq => {
                if lam.is_positive() {
                    push(coeffs.clone(), b.clone(), lam.clone());
                } else {
                    push(coeffs.iter().map(|c| -c).collect(), -b, -lam);
                }
            }
        }
    }

    // Lower-bound rows absorb the residual so the combination sums to zero.
    let mut residual = vec![Rat::zero(); nvars];
    for ((g, _), lam) in rows.iter().zip(&multipliers) {
        for (j, c) in g.iter().enumerate() {
            residual[j] += c * lam;
        }
    }
    for (j, (lo, _)) in lp.bounds.iter().enumerate() {
        if residual[j].is_zero() {
            continue;
        }
        // Dual feasibility zeroes the residual of free variables.
        let Some(l) = lo.clone() else {
            return Err(Error::Internal(format!(
                "free variable {j} carries a certificate residual"
            )));
        };
        let mut g = vec![Rat::zero(); nvars];
        g[j] = Rat::one();
        push(g, l, -&residual[j]);
    }

    Ok(FarkasCertificate { rows, multipliers })
}

/// Solves the program exactly via two-phase simplex with Bland's rule.
pub fn solve(lp: &LinearProgram) -> Result<LpResult> {
    lp.validate()?;
    let std = standardize(lp);
    let nrows = std.rows.len();
    let total_cols = std.total_cols;

    let mut tab = Tableau {
        a: std.rows.clone(),
        b: std.rhs.clone(),
        basis: (0..nrows).map(|r| total_cols + r).collect(),
        cols: total_cols,
    };

    // Phase 1: maximize -(sum of artificial levels).
    let zero_costs = vec![Rat::zero(); total_cols];
    let neg_one = -Rat::one();
    let bounded = tab.maximize(&zero_costs, &neg_one);
    debug_assert!(bounded, "phase 1 objective is bounded by zero");

    let infeasibility: Rat = (0..nrows)
        .filter(|&r| tab.is_artificial(tab.basis[r]))
        .map(|r| tab.b[r].clone())
        .sum();
    if infeasibility.is_positive() {
        let certificate = build_farkas(lp, &std, &tab)?;
        if !certificate.verify() {
            return Err(Error::Internal(
                "derived infeasibility certificate failed verification".into(),
            ));
        }
        return Ok(LpResult {
            status: LpStatus::Infeasible,
            optimum: None,
            solution: None,
            certificate: Some(certificate),
        });
    }

    // Pivot zero-level artificials out where possible; rows that are all
    // zero are redundant and their artificial harmlessly stays basic at 0.
    for r in 0..nrows {
        if !tab.is_artificial(tab.basis[r]) {
            continue;
        }
        if let Some(col) = (0..total_cols)
            .find(|&c| !tab.a[r][c].is_zero() && !tab.basis.contains(&c))
        {
            tab.pivot(r, col);
        }
    }

    // Phase 2.
    let mut costs = vec![Rat::zero(); total_cols];
    for (j, c) in lp.objective.iter().enumerate() {
        match &std.var_map[j] {
            VarMap::Shifted { col, .. } => costs[*col] = c.clone(),
            VarMap::Split { pos, neg } => {
                costs[*pos] = c.clone();
                costs[*neg] = -c;
            }
        }
    }
    if !tab.maximize(&costs, &Rat::zero()) {
        return Ok(LpResult {
            status: LpStatus::Unbounded,
            optimum: None,
            solution: None,
            certificate: None,
        });
    }

    let mut y = vec![Rat::zero(); total_cols];
    for r in 0..nrows {
        if tab.basis[r] < total_cols {
            y[tab.basis[r]] = tab.b[r].clone();
        }
    }
    let solution: Vec<Rat> = std
        .var_map
        .iter()
        .map(|vm| match vm {
            VarMap::Shifted { col, lower } => lower + &y[*col],
            VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
        })
        .collect();
    if let Err(e) = check_solution(lp, &solution) {
        return Err(Error::Internal(format!(
            "simplex produced an invalid solution: {e}"
        )));
    }
    let optimum: Rat = lp
        .objective
        .iter()
        .zip(&solution)
        .map(|(c, x)| c * x)
        .sum();

    Ok(LpResult {
        status: LpStatus::Optimal,
        optimum: Some(optimum),
        solution: Some(solution),
        certificate: None,
    })
}

/// Verifies that `x` satisfies every constraint and bound of `lp` exactly.
pub fn check_solution(lp: &LinearProgram, x: &[Rat]) -> Result<()> {
    if x.len() != lp.objective.len() {
        return Err(Error::DimensionMismatch("solution length".into()));
    }
    for (k, (coeffs, rel, rhs)) in lp.constraints.iter().enumerate() {
        let lhs: Rat = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let ok = match rel {
            Relation::Le => lhs <= *rhs,
            Relation::Eq => lhs == *rhs,
            Relation::Ge => lhs >= *rhs,
        };
        if !ok {
            return Err(Error::Internal(format!(
                "constraint {k} violated: lhs {lhs}, rhs {rhs}"
            )));
        }
    }
    for (j, (lo, hi)) in lp.bounds.iter().enumerate() {
        if let Some(l) = lo {
            if &x[j] < l {
                return Err(Error::Internal(format!("variable {j} below lower bound")));
            }
        }
        if let Some(u) = hi {
            if &x[j] > u {
                return Err(Error::Internal(format!("variable {j} above upper bound")));
            }
        }
    }
    Ok(())
}

/// In-place exact Gaussian elimination solving `mat * x = rhs`. The matrix
/// is invertible for every basis the simplex produces.
fn gaussian_solve(mat: &mut [Vec<Rat>], rhs: &mut [Rat]) {
    let n = rhs.len();
    let mut row_of_col = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for col in 0..n {
        let Some(pivot_row) = (0..n).find(|&r| !used[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used[pivot_row] = true;
        row_of_col[col] = pivot_row;
        let pv = mat[pivot_row][col].clone();
        for c in 0..n {
            mat[pivot_row][c] /= &pv;
        }
        rhs[pivot_row] /= &pv;
        for r in 0..n {
            if r == pivot_row || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            for c in 0..n {
                let delta = &f * &mat[pivot_row][c];
                mat[r][c] -= delta;
            }
            let delta = &f * &rhs[pivot_row];
            rhs[r] -= delta;
        }
    }
    let solved: Vec<Rat> = (0..n)
        .map(|col| {
            let r = row_of_col[col];
            if r == usize::MAX {
                Rat::zero()
            } else {
                rhs[r].clone()
            }
        })
        .collect();
    rhs.clone_from_slice(&solved);
}

/// Fractional Pareto efficiency via the exact LP that maximizes total
/// (alpha-scaled) utility subject to every agent weakly keeping her current
/// utility: the allocation is alpha-fPO iff no feasible point improves on
/// the baseline total.
pub fn is_fpo<'a>(inst: &Instance, alloc: impl Into<AllocView<'a>>, alpha: &Rat) -> Result<bool> {
    let alloc = alloc.into();
    let n = inst.agents();
    let m = inst.items();
    let baseline: Vec<Rat> = (0..n)
        .map(|i| alloc.utility_of_bundle(inst, i, i))
        .collect::<Result<_>>()?;
    let total_baseline: Rat = baseline.iter().sum();

    // Variables x_{i,j}, agent-major. Upper bounds are implied by the
    // column-sum rows, so plain x >= 0 suffices.
    let nvars = n * m;
    let mut objective = vec![Rat::zero(); nvars];
    for i in 0..n {
        for j in 0..m {
            objective[i * m + j] = alpha * inst.value(i, j);
        }
    }
    let mut lp = LinearProgram::new(objective);
    for j in 0..m {
        let mut coeffs = vec![Rat::zero(); nvars];
        for i in 0..n {
            coeffs[i * m + j] = Rat::one();
        }
        lp.constrain(coeffs, Relation::Le, Rat::one());
    }
    for i in 0..n {
        let mut coeffs = vec![Rat::zero(); nvars];
        for j in 0..m {
            coeffs[i * m + j] = alpha * inst.value(i, j);
        }
        lp.constrain(coeffs, Relation::Ge, baseline[i].clone());
    }

    let result = solve(&lp)?;
    match result.status {
        // Nothing even weakly dominates (possible when alpha < 1).
        LpStatus::Infeasible => Ok(true),
        LpStatus::Unbounded => Err(Error::Internal(
            "fPO feasibility program cannot be unbounded".into(),
        )),
        LpStatus::Optimal => Ok(result.optimum.expect("optimal") <= total_baseline),
    }
}

/// Pareto efficiency among integral allocations, by exhaustive enumeration
/// of complete allocations (a dominating partial allocation extends to a
/// dominating complete one since values are non-negative).
pub fn is_po(inst: &Instance, alloc: &IntegralAllocation, alpha: &Rat, cap: u64) -> Result<bool> {
    let n = inst.agents();
    let m = inst.items();
    let baseline: Vec<Rat> = (0..n)
        .map(|i| inst.utility(i, alloc.bundle(i)))
        .collect::<Result<_>>()?;

    for owners in complete_allocations(n, m, cap)? {
        let candidate = owners_to_allocation(n, &owners);
        let mut strict = false;
        let mut dominates = true;
        for i in 0..n {
            let w = alpha * inst.utility(i, candidate.bundle(i))?;
            if w < baseline[i] {
                dominates = false;
                break;
            }
            if w > baseline[i] {
                strict = true;
            }
        }
        if dominates && strict {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn maximize_single_variable() {
        // max x s.t. x <= 3, x >= 0
        let mut lp = LinearProgram::new(vec![r(1)]);
        lp.constrain(vec![r(1)], Relation::Le, r(3));
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.optimum.unwrap(), r(3));
        assert_eq!(res.solution.unwrap(), vec![r(3)]);
    }

    #[test]
    fn infeasible_with_certificate() {
        // x >= 1 and x <= 0
        let mut lp = LinearProgram::new(vec![r(1)]);
        lp.constrain(vec![r(1)], Relation::Ge, r(1));
        lp.constrain(vec![r(1)], Relation::Le, r(0));
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Infeasible);
        let cert = res.certificate.unwrap();
        assert!(cert.verify());
    }

    #[test]
    fn unbounded() {
        let lp = LinearProgram::new(vec![r(1)]);
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // max x + y s.t. x + y = 2, x - y = 0, y free
        let mut lp = LinearProgram::new(vec![r(1), r(1)]);
        lp.bounds[1] = (None, None);
        lp.constrain(vec![r(1), r(1)], Relation::Eq, r(2));
        lp.constrain(vec![r(1), -r(1)], Relation::Eq, r(0));
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.optimum.unwrap(), r(2));
        assert_eq!(res.solution.unwrap(), vec![r(1), r(1)]);
    }

    #[test]
    fn degenerate_and_fractional_solution() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 with x <= 3
        let mut lp = LinearProgram::new(vec![r(3), r(2)]);
        lp.bounds[0] = (Some(r(0)), Some(r(3)));
        lp.constrain(vec![r(1), r(1)], Relation::Le, r(4));
        lp.constrain(vec![r(1), r(3)], Relation::Le, r(6));
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        // x = 3, y = 1: objective 11.
        assert_eq!(res.optimum.unwrap(), r(11));
    }

    #[test]
    fn infeasible_via_equalities() {
        // x + y = 1, x + y = 2
        let mut lp = LinearProgram::new(vec![r(0), r(0)]);
        lp.constrain(vec![r(1), r(1)], Relation::Eq, r(1));
        lp.constrain(vec![r(1), r(1)], Relation::Eq, r(2));
        let res = solve(&lp).unwrap();
        assert_eq!(res.status, LpStatus::Infeasible);
        assert!(res.certificate.unwrap().verify());
    }

    #[test]
    fn fpo_examples() {
        // Disjoint desired sets, each agent gets exactly her set: fPO.
        let inst = Instance::from_ints(&[&[1, 0], &[0, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_fpo(&inst, &alloc, &Rat::one()).unwrap());

        // A positively-valued item parked on a zero-value agent is not
        // even Pareto efficient.
        let inst = Instance::from_ints(&[&[1, 1], &[0, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![1], vec![0]]).unwrap();
        assert!(!is_fpo(&inst, &alloc, &Rat::one()).unwrap());
        assert!(!is_po(&inst, &alloc, &Rat::one(), 1000).unwrap());

        // Single agent holding everything.
        let inst = Instance::from_ints(&[&[2, 3]]);
        let alloc = IntegralAllocation::new(2, vec![vec![0, 1]]).unwrap();
        assert!(is_fpo(&inst, &alloc, &Rat::one()).unwrap());
    }

    #[test]
    fn fpo_dominated_fractionally_but_not_integrally() {
        // Identical agents, one item each: PO integrally, and also fPO
        // (any fractional reshuffle keeps the total fixed).
        let inst = Instance::from_ints(&[&[2, 1], &[2, 1]]);
        let alloc = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_po(&inst, &alloc, &Rat::one(), 1000).unwrap());
        assert!(is_fpo(&inst, &alloc, &Rat::one()).unwrap());

        // Crossed preferences, crossed allocation: swapping helps both.
        let inst = Instance::from_ints(&[&[3, 1], &[1, 3]]);
        let alloc = IntegralAllocation::new(2, vec![vec![1], vec![0]]).unwrap();
        assert!(!is_fpo(&inst, &alloc, &Rat::one()).unwrap());
        assert!(!is_po(&inst, &alloc, &Rat::one(), 1000).unwrap());
    }
}
