//! Core domain types: instances, allocations and lotteries.
//!
//! All types are immutable value types; every operation here is a pure
//! function. Item and agent indices are 0-based in memory; the JSON forms
//! use 1-based item and agent indices.

use std::cmp::Ordering;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A fair-division instance: `n` agents, `m` items, and an `n x m` matrix of
/// non-negative valuations (reported or true, depending on context).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    m: usize,
    values: Vec<Vec<Rat>>,
}

impl Instance {
    pub fn new(values: Vec<Vec<Rat>>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidInstance("need at least one agent".into()));
        }
        let m = values[0].len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    m
                )));
            }
            if let Some(j) = row.iter().position(|v| v.is_negative()) {
                return Err(Error::InvalidInstance(format!(
                    "negative value for agent {} item {}",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Instance { n, m, values })
    }

    /// Builds an instance from integer values; convenient in tests.
    pub fn from_ints(values: &[&[i64]]) -> Self {
        Instance::new(
            values
                .iter()
                .map(|row| row.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
        .expect("valid integer instance")
    }

    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> usize {
        self.m
    }

    pub fn value(&self, agent: usize, item: usize) -> &Rat {
        &self.values[agent][item]
    }

    pub fn row(&self, agent: usize) -> &[Rat] {
        &self.values[agent]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.values
    }

    /// Additive utility of `agent` for a bundle of item indices.
    pub fn utility(&self, agent: usize, bundle: &[usize]) -> Result<Rat> {
        if agent >= self.n {
            return Err(Error::AgentOutOfRange { agent, n: self.n });
        }
        let mut total = Rat::zero();
        for &item in bundle {
            if item >= self.m {
                return Err(Error::ItemOutOfRange { item, m: self.m });
            }
            total += &self.values[agent][item];
        }
        Ok(total)
    }

    /// Utility of `agent` for a fractional share row.
    pub fn utility_fractional(&self, agent: usize, shares: &[Rat]) -> Result<Rat> {
        if agent >= self.n {
            return Err(Error::AgentOutOfRange { agent, n: self.n });
        }
        if shares.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "share row has {} entries, expected {}",
                shares.len(),
                self.m
            )));
        }
        Ok(self.values[agent]
            .iter()
            .zip(shares)
            .map(|(v, x)| v * x)
            .sum())
    }

    /// Agent's value for the grand bundle of all items.
    pub fn total_value(&self, agent: usize) -> Rat {
        self.values[agent].iter().sum()
    }

    /// Rescales every row to sum to one. Fails on an all-zero row.
    pub fn normalize(&self) -> Result<Instance> {
        let mut values = Vec::with_capacity(self.n);
        for (i, row) in self.values.iter().enumerate() {
            let total: Rat = row.iter().sum();
            if total.is_zero() {
                return Err(Error::Normalization(i + 1));
            }
            values.push(row.iter().map(|v| v / &total).collect());
        }
        Ok(Instance {
            n: self.n,
            m: self.m,
            values,
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.values
            .iter()
            .all(|row| row.iter().sum::<Rat>() == Rat::one())
    }

    /// Replaces agent `i`'s row, keeping everything else.
    pub fn with_row(&self, agent: usize, row: Vec<Rat>) -> Result<Instance> {
        if agent >= self.n {
            return Err(Error::AgentOutOfRange { agent, n: self.n });
        }
        if row.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.m
            )));
        }
        if let Some(j) = row.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidInstance(format!(
                "negative value at item {}",
                j + 1
            )));
        }
        let mut values = self.values.clone();
        values[agent] = row;
        Ok(Instance {
            n: self.n,
            m: self.m,
            values,
        })
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: Serializer,
    {
        #[derive(Serialize)]
        struct Repr<'a> {
            agents: usize,
            items: usize,
            values: &'a Vec<Vec<Rat>>,
        }
        Repr {
            agents: self.n,
            items: self.m,
            values: &self.values,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            agents: usize,
            items: usize,
            values: Vec<Vec<Rat>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let inst = Instance::new(repr.values).map_err(D::Error::custom)?;
        if inst.n != repr.agents || inst.m != repr.items {
            return Err(D::Error::custom(format!(
                "declared {}x{} but value matrix is {}x{}",
                repr.agents, repr.items, inst.n, inst.m
            )));
        }
        Ok(inst)
    }
}

/// An ordered list of pairwise-disjoint bundles, one per agent. Partial
/// allocations (items left unassigned) are first-class; completeness is a
/// checker, not an invariant.
///
/// The derived ordering compares the bundle lists lexicographically; this is
/// the canonical "bundle encoding" used for deterministic tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralAllocation {
    bundles: Vec<Vec<usize>>,
    num_items: usize,
}

impl IntegralAllocation {
    pub fn new(num_items: usize, mut bundles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; num_items];
        for bundle in &mut bundles {
            bundle.sort_unstable();
            for &item in bundle.iter() {
                if item >= num_items {
                    return Err(Error::ItemOutOfRange {
                        item,
                        m: num_items,
                    });
                }
                if seen[item] {
                    return Err(Error::InvalidAllocation(format!(
                        "item {} assigned twice",
                        item + 1
                    )));
                }
                seen[item] = true;
            }
        }
        Ok(IntegralAllocation { bundles, num_items })
    }

    /// Builds an allocation from an owner vector: `owners[j]` is the agent
    /// receiving item `j`, or `n` (the agent count) for unallocated.
    pub fn from_owners(n: usize, owners: &[usize]) -> Self {
        let mut bundles = vec![Vec::new(); n];
        for (item, &owner) in owners.iter().enumerate() {
            if owner < n {
                bundles[owner].push(item);
            }
        }
        IntegralAllocation {
            bundles,
            num_items: owners.len(),
        }
    }

    pub fn empty(n: usize, num_items: usize) -> Self {
        IntegralAllocation {
            bundles: vec![Vec::new(); n],
            num_items,
        }
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn items(&self) -> usize {
        self.num_items
    }

    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn contains(&self, agent: usize, item: usize) -> bool {
        self.bundles[agent].binary_search(&item).is_ok()
    }

    pub fn allocated_count(&self) -> usize {
        self.bundles.iter().map(Vec::len).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.allocated_count() == self.num_items
    }

    pub fn unallocated(&self) -> Vec<usize> {
        let mut taken = vec![false; self.num_items];
        for bundle in &self.bundles {
            for &item in bundle {
                taken[item] = true;
            }
        }
        (0..self.num_items).filter(|&j| !taken[j]).collect()
    }

    /// `owners[j]` is the holder of item `j`, or `n` for unallocated.
    pub fn owners(&self) -> Vec<usize> {
        let n = self.bundles.len();
        let mut owners = vec![n; self.num_items];
        for (agent, bundle) in self.bundles.iter().enumerate() {
            for &item in bundle {
                owners[item] = agent;
            }
        }
        owners
    }

    /// The 0/1 share matrix of this allocation.
    pub fn to_fractional(&self) -> FractionalAllocation {
        let mut shares = vec![vec![Rat::zero(); self.num_items]; self.bundles.len()];
        for (agent, bundle) in self.bundles.iter().enumerate() {
            for &item in bundle {
                shares[agent][item] = Rat::one();
            }
        }
        FractionalAllocation {
            shares,
            num_items: self.num_items,
        }
    }

    /// Returns a copy with `keep(agent, item)` applied to every assignment.
    pub fn retain(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let bundles = self
            .bundles
            .iter()
            .enumerate()
            .map(|(agent, bundle)| {
                bundle
                    .iter()
                    .copied()
                    .filter(|&item| keep(agent, item))
                    .collect()
            })
            .collect();
        IntegralAllocation {
            bundles,
            num_items: self.num_items,
        }
    }
}

impl PartialOrd for IntegralAllocation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntegralAllocation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bundles
            .cmp(&other.bundles)
            .then(self.num_items.cmp(&other.num_items))
    }
}

impl Serialize for IntegralAllocation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            items: usize,
            bundles: Vec<Vec<usize>>,
        }
        let bundles = self
            .bundles
            .iter()
            .map(|b| b.iter().map(|&j| j + 1).collect())
            .collect();
        Repr {
            items: self.num_items,
            bundles,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegralAllocation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            items: usize,
            bundles: Vec<Vec<usize>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut bundles = Vec::with_capacity(repr.bundles.len());
        for bundle in repr.bundles {
            let mut fixed = Vec::with_capacity(bundle.len());
            for item in bundle {
                if item == 0 {
                    return Err(D::Error::custom("item indices are 1-based in JSON"));
                }
                fixed.push(item - 1);
            }
            bundles.push(fixed);
        }
        IntegralAllocation::new(repr.items, bundles).map_err(D::Error::custom)
    }
}

/// An `n x m` matrix of shares in `[0,1]` with column sums at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalAllocation {
    shares: Vec<Vec<Rat>>,
    num_items: usize,
}

impl FractionalAllocation {
    pub fn new(shares: Vec<Vec<Rat>>) -> Result<Self> {
        if shares.is_empty() {
            return Err(Error::InvalidAllocation("no agent rows".into()));
        }
        let m = shares[0].len();
        let one = Rat::one();
        for (i, row) in shares.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "share row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    m
                )));
            }
            for (j, x) in row.iter().enumerate() {
                if x.is_negative() || *x > one {
                    return Err(Error::InvalidAllocation(format!(
                        "share for agent {} item {} outside [0,1]",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for j in 0..m {
            let col: Rat = shares.iter().map(|row| &row[j]).sum();
            if col > one {
                return Err(Error::InvalidAllocation(format!(
                    "column {} sums to {} > 1",
                    j + 1,
                    col
                )));
            }
        }
        Ok(FractionalAllocation {
            shares,
            num_items: m,
        })
    }

    pub fn agents(&self) -> usize {
        self.shares.len()
    }

    pub fn items(&self) -> usize {
        self.num_items
    }

    pub fn share(&self, agent: usize, item: usize) -> &Rat {
        &self.shares[agent][item]
    }

    pub fn row(&self, agent: usize) -> &[Rat] {
        &self.shares[agent]
    }

    pub fn column_sum(&self, item: usize) -> Rat {
        self.shares.iter().map(|row| &row[item]).sum()
    }

    /// Total fraction of items held by `agent`.
    pub fn row_total(&self, agent: usize) -> Rat {
        self.shares[agent].iter().sum()
    }
}

impl Serialize for FractionalAllocation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            shares: &'a Vec<Vec<Rat>>,
        }
        Repr {
            shares: &self.shares,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FractionalAllocation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            shares: Vec<Vec<Rat>>,
        }
        FractionalAllocation::new(Repr::deserialize(deserializer)?.shares)
            .map_err(D::Error::custom)
    }
}

/// A finite-support probability distribution over integral allocations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lottery {
    support: Vec<LotteryAtom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LotteryAtom {
    pub prob: Rat,
    pub alloc: IntegralAllocation,
}

impl Lottery {
    pub fn new(support: Vec<(Rat, IntegralAllocation)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidLottery("empty support".into()));
        }
        let n = support[0].1.agents();
        let m = support[0].1.items();
        let mut total = Rat::zero();
        for (p, alloc) in &support {
            if !p.is_positive() {
                return Err(Error::InvalidLottery(format!(
                    "non-positive probability {}",
                    p
                )));
            }
            if alloc.agents() != n || alloc.items() != m {
                return Err(Error::DimensionMismatch(
                    "support allocations have mixed shapes".into(),
                ));
            }
            total += p;
        }
        if total != Rat::one() {
            return Err(Error::InvalidLottery(format!(
                "probabilities sum to {}, not 1",
                total
            )));
        }
        Ok(Lottery {
            support: support
                .into_iter()
                .map(|(prob, alloc)| LotteryAtom { prob, alloc })
                .collect(),
        })
    }

    pub fn point_mass(alloc: IntegralAllocation) -> Self {
        Lottery {
            support: vec![LotteryAtom {
                prob: Rat::one(),
                alloc,
            }],
        }
    }

    pub fn support(&self) -> &[LotteryAtom] {
        &self.support
    }

    pub fn agents(&self) -> usize {
        self.support[0].alloc.agents()
    }

    pub fn items(&self) -> usize {
        self.support[0].alloc.items()
    }

    /// The expected fractional allocation `sum_z p_z * A_z`.
    pub fn expected_allocation(&self) -> FractionalAllocation {
        let n = self.agents();
        let m = self.items();
        let mut shares = vec![vec![Rat::zero(); m]; n];
        for atom in &self.support {
            for (agent, bundle) in atom.alloc.bundles().iter().enumerate() {
                for &item in bundle {
                    shares[agent][item] += &atom.prob;
                }
            }
        }
        FractionalAllocation {
            shares,
            num_items: m,
        }
    }
}

impl<'de> Deserialize<'de> for Lottery {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            support: Vec<LotteryAtom>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Lottery::new(
            repr.support
                .into_iter()
                .map(|atom| (atom.prob, atom.alloc))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rat {
        Rat::parse(s).unwrap()
    }

    #[test]
    fn utility_examples() {
        // Row (3.9, 3, 2, 0.9): the bundle {item 3} is worth exactly 2.
        let inst = Instance::new(vec![vec![
            rat("3.9"),
            rat("3"),
            rat("2"),
            rat("0.9"),
        ]])
        .unwrap();
        assert_eq!(inst.utility(0, &[2]).unwrap(), Rat::from_int(2));
        assert_eq!(inst.utility(0, &[]).unwrap(), Rat::zero());

        let inst = Instance::new(vec![vec![
            rat("1/3"),
            rat("1/3"),
            rat("1/3"),
            rat("0"),
        ]])
        .unwrap();
        assert_eq!(inst.utility(0, &[0, 3]).unwrap(), rat("1/3"));
        assert!(inst.utility(0, &[4]).is_err());
        assert!(inst.utility(1, &[0]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let inst = Instance::from_ints(&[&[2, 2]]);
        let norm = inst.normalize().unwrap();
        assert_eq!(*norm.value(0, 0), Rat::new(1, 2));
        assert_eq!(*norm.value(0, 1), Rat::new(1, 2));

        // Row sum 9.8 = 49/5.
        let inst = Instance::new(vec![vec![
            rat("3.9"),
            rat("3"),
            rat("2"),
            rat("0.9"),
        ]])
        .unwrap();
        let norm = inst.normalize().unwrap();
        assert_eq!(*norm.value(0, 0), rat("39/98"));
        assert_eq!(*norm.value(0, 1), rat("30/98"));
        assert_eq!(*norm.value(0, 2), rat("20/98"));
        assert_eq!(*norm.value(0, 3), rat("9/98"));
        assert!(norm.is_normalized());

        let inst = Instance::from_ints(&[&[0, 0]]);
        assert!(matches!(inst.normalize(), Err(Error::Normalization(1))));
    }

    #[test]
    fn expected_allocation_examples() {
        let a = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        let lot = Lottery::point_mass(a.clone());
        let x = lot.expected_allocation();
        assert_eq!(*x.share(0, 0), Rat::one());
        assert_eq!(*x.share(0, 1), Rat::zero());

        let b = IntegralAllocation::new(2, vec![vec![1], vec![0]]).unwrap();
        let lot = Lottery::new(vec![(Rat::new(1, 2), a), (Rat::new(1, 2), b)]).unwrap();
        let x = lot.expected_allocation();
        for agent in 0..2 {
            for item in 0..2 {
                assert_eq!(*x.share(agent, item), Rat::new(1, 2));
            }
        }
    }

    #[test]
    fn allocation_validation() {
        assert!(IntegralAllocation::new(2, vec![vec![0], vec![0]]).is_err());
        assert!(IntegralAllocation::new(2, vec![vec![2], vec![]]).is_err());
        let partial = IntegralAllocation::new(3, vec![vec![2], vec![]]).unwrap();
        assert!(!partial.is_complete());
        assert_eq!(partial.unallocated(), vec![0, 1]);
    }

    #[test]
    fn lottery_validation() {
        let a = IntegralAllocation::new(1, vec![vec![0]]).unwrap();
        assert!(Lottery::new(vec![(Rat::new(1, 2), a.clone())]).is_err());
        assert!(Lottery::new(vec![]).is_err());
        assert!(Lottery::new(vec![(Rat::one(), a)]).is_ok());
    }

    #[test]
    fn bundle_encoding_order() {
        let a = IntegralAllocation::new(2, vec![vec![0], vec![1]]).unwrap();
        let b = IntegralAllocation::new(2, vec![vec![0, 1], vec![]]).unwrap();
        let c = IntegralAllocation::new(2, vec![vec![], vec![0, 1]]).unwrap();
        // Shorter own-bundle prefixes come first.
        assert!(c < a);
        assert!(a < b);
    }

    #[test]
    fn json_round_trip_is_one_based() {
        let alloc = IntegralAllocation::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        let json = serde_json::to_string(&alloc).unwrap();
        assert_eq!(json, r#"{"items":3,"bundles":[[1,3],[2]]}"#);
        let back: IntegralAllocation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, alloc);

        let inst: Instance = serde_json::from_str(
            r#"{"agents":2,"items":2,"values":[["3.9","1/2"],[1,0]]}"#,
        )
        .unwrap();
        assert_eq!(*inst.value(0, 0), Rat::new(39, 10));
        assert_eq!(*inst.value(1, 0), Rat::one());

        // Non-integer JSON numbers are rejected: they are not exact.
        assert!(serde_json::from_str::<Instance>(
            r#"{"agents":1,"items":1,"values":[[0.1]]}"#
        )
        .is_err());
    }
}
