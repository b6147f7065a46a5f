//! Probabilistic serial, Birkhoff decomposition of bistochastic matrices,
//! and the construction implementing the probabilistic-serial fractional
//! allocation as a lottery over EF1 integral allocations.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{FractionalAllocation, Instance, IntegralAllocation, Lottery};
use crate::rational::Rat;

/// Per-agent consumption segments `(item, start, end)` of the continuous
/// eating procedure. Each agent's segments tile `[0, m/n]` with no gaps or
/// overlaps, and every item is fully consumed across agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EatingSchedule {
    pub segments: Vec<Vec<(usize, Rat, Rat)>>,
}

impl EatingSchedule {
    /// End time of the procedure, `m/n`.
    pub fn horizon(n: usize, m: usize) -> Rat {
        Rat::new(m as i64, n as i64)
    }
}

/// The simultaneous-eating procedure: every agent consumes her best
/// remaining item at unit rate, by descending value with ties (including
/// zero values) broken toward the smallest item index. Terminates at time
/// `m/n` with every item fully consumed and every agent holding exactly
/// `m/n` total fraction. The resulting fractional allocation is envy-free
/// with respect to the bids.
pub fn probabilistic_serial(bids: &Instance) -> Result<(FractionalAllocation, EatingSchedule)> {
    let n = bids.agents();
    let m = bids.items();
    let mut shares = vec![vec![Rat::zero(); m]; n];
    let mut segments: Vec<Vec<(usize, Rat, Rat)>> = vec![Vec::new(); n];

    // Preference orders: value descending, then item index ascending.
    let prefs: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| {
                bids.value(i, b)
                    .cmp(bids.value(i, a))
                    .then(a.cmp(&b))
            });
            order
        })
        .collect();

    let mut remaining: Vec<Rat> = vec![Rat::one(); m];
    let mut depleted = vec![false; m];
    let mut cursor = vec![0usize; n]; // position in each agent's preference list
    let mut now = Rat::zero();
    let mut consumed = 0usize;

    while consumed < m {
        // Advance cursors to the first remaining item.
        let mut eaters_of: Vec<Vec<usize>> = vec![Vec::new(); m];
        for i in 0..n {
            while depleted[prefs[i][cursor[i]]] {
                cursor[i] += 1;
            }
            eaters_of[prefs[i][cursor[i]]].push(i);
        }
        // Next depletion: min over active items of remaining / eater count.
        let mut dt: Option<Rat> = None;
        for j in 0..m {
            if eaters_of[j].is_empty() {
                continue;
            }
            let t = &remaining[j] / &Rat::from_int(eaters_of[j].len() as i64);
            dt = Some(match dt {
                None => t,
                Some(cur) => cur.min(t),
            });
        }
        let dt = dt.expect("agents are always eating while items remain");
        let end = &now + &dt;

        for j in 0..m {
            if eaters_of[j].is_empty() {
                continue;
            }
            for &i in &eaters_of[j] {
                shares[i][j] += &dt;
                match segments[i].last_mut() {
                    Some((item, _, seg_end)) if *item == j && *seg_end == now => {
                        *seg_end = end.clone();
                    }
                    _ => segments[i].push((j, now.clone(), end.clone())),
                }
            }
            remaining[j] -= &dt * &Rat::from_int(eaters_of[j].len() as i64);
            if remaining[j].is_zero() {
                depleted[j] = true;
                consumed += 1;
            }
        }
        now = end;
    }

    Ok((
        FractionalAllocation::new(shares)?,
        EatingSchedule { segments },
    ))
}

/// A square matrix of rationals whose rows and columns each sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BistochasticMatrix {
    entries: Vec<Vec<Rat>>,
}

impl BistochasticMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let k = entries.len();
        let one = Rat::one();
        for (r, row) in entries.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotBistochastic(format!(
                    "row {} has {} entries in a {}x{} matrix",
                    r + 1,
                    row.len(),
                    k,
                    k
                )));
            }
            if row.iter().any(Rat::is_negative) {
                return Err(Error::NotBistochastic(format!(
                    "negative entry in row {}",
                    r + 1
                )));
            }
            if row.iter().sum::<Rat>() != one {
                return Err(Error::NotBistochastic(format!(
                    "row {} does not sum to one",
                    r + 1
                )));
            }
        }
        for c in 0..k {
            if entries.iter().map(|row| &row[c]).sum::<Rat>() != one {
                return Err(Error::NotBistochastic(format!(
                    "column {} does not sum to one",
                    c + 1
                )));
            }
        }
        Ok(BistochasticMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r][c]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }
}

/// Augmenting-path search for a perfect matching on the positive-entry
/// support, preferring smaller column indices.
fn try_augment(
    residual: &[Vec<Rat>],
    row: usize,
    visited: &mut [bool],
    col_match: &mut [Option<usize>],
) -> bool {
    let k = residual.len();
    for col in 0..k {
        if visited[col] || !residual[row][col].is_positive() {
            continue;
        }
        visited[col] = true;
        let free = match col_match[col] {
            None => true,
            Some(occupant) => try_augment(residual, occupant, visited, col_match),
        };
        if free {
            col_match[col] = Some(row);
            return true;
        }
    }
    false
}

/// Decomposes a bistochastic matrix into a convex combination of
/// permutation matrices: `sum_i p_i P_i = M` exactly, `sum p_i = 1`, at
/// most `k^2 - k + 1` terms. Each returned permutation maps row index to
/// column index.
pub fn birkhoff(matrix: &BistochasticMatrix) -> Result<Vec<(Rat, Vec<usize>)>> {
    let k = matrix.size();
    if k == 0 {
        return Ok(vec![(Rat::one(), Vec::new())]);
    }
    let mut residual: Vec<Vec<Rat>> = matrix.rows().to_vec();
    let mut total = Rat::zero();
    let mut terms: Vec<(Rat, Vec<usize>)> = Vec::new();
    let one = Rat::one();

    while total < one {
        let mut col_match: Vec<Option<usize>> = vec![None; k];
        for row in 0..k {
            let mut visited = vec![false; k];
            if !try_augment(&residual, row, &mut visited, &mut col_match) {
                return Err(Error::NotBistochastic(
                    "no perfect matching on the positive support; \
                     the residual is not doubly stochastic"
                        .into(),
                ));
            }
        }
        let mut perm = vec![0usize; k];
        for (col, occupant) in col_match.iter().enumerate() {
            perm[occupant.expect("perfect matching")] = col;
        }
        let weight = (0..k)
            .map(|r| residual[r][perm[r]].clone())
            .min()
            .expect("k > 0");
        debug_assert!(weight.is_positive());
        for (r, &c) in perm.iter().enumerate() {
            residual[r][c] -= &weight;
        }
        total += &weight;
        terms.push((weight, perm));
    }
    debug_assert!(residual.iter().all(|row| row.iter().all(Rat::is_zero)));
    Ok(terms)
}

/// Implements the probabilistic-serial outcome as a lottery over integral
/// allocations:
///
/// 1. pad with dummy zero-valued items so the padded item count is `n*c`
///    with `c = ceil(m/n)` (dummies sit after the real items, so the eating
///    tie rule reaches them only once every real item is gone);
/// 2. run the eating procedure on the padded instance and record, for each
///    agent and each unit time window, the fractions consumed in that
///    window — an `(n*c) x (n*c)` bistochastic matrix;
/// 3. decompose it with Birkhoff's algorithm;
/// 4. map every permutation to an integral allocation (each agent receives
///    the items of her `c` window slots, dummies dropped).
///
/// The expected allocation of the result equals the probabilistic-serial
/// fractional allocation on the real items, exactly.
pub fn ps_lottery(bids: &Instance) -> Result<Lottery> {
    let n = bids.agents();
    let m = bids.items();
    if m == 0 {
        return Ok(Lottery::point_mass(IntegralAllocation::empty(n, 0)));
    }
    let c = m.div_ceil(n);
    let padded_m = n * c;

    let padded = Instance::new(
        (0..n)
            .map(|i| {
                let mut row = bids.row(i).to_vec();
                row.resize(padded_m, Rat::zero());
                row
            })
            .collect(),
    )?;
    let (_, schedule) = probabilistic_serial(&padded)?;

    // Row (i, w) = fractions agent i consumes during window (w, w+1].
    let mut entries = vec![vec![Rat::zero(); padded_m]; padded_m];
    for (agent, segs) in schedule.segments.iter().enumerate() {
        for (item, start, end) in segs {
            // Slice the segment at integer window boundaries.
            let mut window_start = start.clone();
            let mut window = to_floor(start);
            while &window_start < end {
                let boundary = Rat::from_int(window as i64 + 1);
                let slice_end = if end < &boundary { end.clone() } else { boundary };
                let amount = &slice_end - &window_start;
                if amount.is_positive() {
                    entries[agent * c + window][*item] += &amount;
                }
                window_start = slice_end;
                window += 1;
            }
        }
    }
    let matrix = BistochasticMatrix::new(entries)?;
    let terms = birkhoff(&matrix)?;

    let mut support: BTreeMap<IntegralAllocation, Rat> = BTreeMap::new();
    for (weight, perm) in terms {
        let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for w in 0..c {
                let item = perm[i * c + w];
                if item < m {
                    bundles[i].push(item);
                }
            }
        }
        let alloc = IntegralAllocation::new(m, bundles)?;
        *support.entry(alloc).or_insert_with(Rat::zero) += &weight;
    }
    Lottery::new(support.into_iter().map(|(a, p)| (p, a)).collect())
}

fn to_floor(t: &Rat) -> usize {
    // Times are within [0, c], so this stays tiny.
    let f = t.numer().div_floor(t.denom());
    let (_, digits) = f.to_u64_digits();
    debug_assert!(!f.is_negative());
    digits.first().copied().unwrap_or(0) as usize
}

fn biguint_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    let bits = bound.bits();
    if bits <= 1 {
        return BigUint::zero();
    }
    let nbytes = bits.div_ceil(8) as usize;
    let excess = (nbytes as u64) * 8 - bits;
    loop {
        let mut buf = vec![0u8; nbytes];
        rng.fill_bytes(&mut buf);
        let mut x = BigUint::from_bytes_le(&buf);
        x >>= excess as usize;
        if &x < bound {
            return x;
        }
    }
}

/// Draws one allocation from the lottery with the exact stated
/// probabilities, deterministically per seed.
pub fn sample(lottery: &Lottery, seed: u64) -> IntegralAllocation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom_lcm: BigInt = lottery
        .support()
        .iter()
        .fold(BigInt::from(1), |acc, atom| acc.lcm(atom.prob.denom()));
    let weights: Vec<BigUint> = lottery
        .support()
        .iter()
        .map(|atom| {
            ((atom.prob.numer() * &denom_lcm) / atom.prob.denom())
                .to_biguint()
                .expect("probabilities are positive")
        })
        .collect();
    let total = denom_lcm.to_biguint().expect("positive lcm");
    debug_assert_eq!(weights.iter().sum::<BigUint>(), total);

    let draw = biguint_below(&mut rng, &total);
    let mut acc = BigUint::zero();
    for (w, atom) in weights.iter().zip(lottery.support()) {
        acc += w;
        if draw < acc {
            return atom.alloc.clone();
        }
    }
    lottery
        .support()
        .last()
        .expect("non-empty support")
        .alloc
        .clone()
}
