//! Exhaustive enumeration of integral allocations, used by the welfare
//! maximizers, the Pareto checkers and the EF1-set machinery. Everything is
//! guarded by an explicit cap on the number of candidates.

use crate::error::{Error, Result};
use crate::model::IntegralAllocation;

/// Default cap on enumerated candidates.
pub const DEFAULT_ENUM_CAP: u64 = 2_000_000;

/// `base^exp`, failing with a scale error when it exceeds `cap`.
pub fn checked_pow(base: u64, exp: u32, cap: u64) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > cap as u128 {
            return Err(Error::Scale {
                required: acc,
                cap,
            });
        }
    }
    Ok(acc as u64)
}

/// Decodes a flat index into `len` base-`choices` digits, most significant
/// first (the same order `OwnerVectors` produces).
pub fn decode_index(mut index: u64, choices: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0usize; len];
    for slot in (0..len).rev() {
        digits[slot] = (index % choices as u64) as usize;
        index /= choices as u64;
    }
    digits
}

/// Iterates over owner vectors with entries in `0..choices`, odometer-style
/// with item 0 as the most significant digit, so vectors appear in
/// lexicographic order.
pub struct OwnerVectors {
    choices: usize,
    next: Option<Vec<usize>>,
}

impl OwnerVectors {
    fn new(choices: usize, len: usize) -> Self {
        OwnerVectors {
            choices,
            next: if choices == 0 && len > 0 {
                None
            } else {
                Some(vec![0; len])
            },
        }
    }
}

impl Iterator for OwnerVectors {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bumped = current.clone();
        let mut pos = bumped.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            bumped[pos] += 1;
            if bumped[pos] < self.choices {
                self.next = Some(bumped);
                break;
            }
            bumped[pos] = 0;
        }
        Some(current)
    }
}

/// All complete allocations of `m` items to `n` agents (`n^m` of them).
pub fn complete_allocations(n: usize, m: usize, cap: u64) -> Result<OwnerVectors> {
    checked_pow(n as u64, m as u32, cap)?;
    Ok(OwnerVectors::new(n, m))
}

/// All partial allocations of `m` items to `n` agents, item owner `n`
/// meaning unallocated (`(n+1)^m` of them).
pub fn partial_allocations(n: usize, m: usize, cap: u64) -> Result<OwnerVectors> {
    checked_pow(n as u64 + 1, m as u32, cap)?;
    Ok(OwnerVectors::new(n + 1, m))
}

/// Materializes an owner vector into an allocation for `n` agents.
pub fn owners_to_allocation(n: usize, owners: &[usize]) -> IntegralAllocation {
    IntegralAllocation::from_owners(n, owners)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(complete_allocations(2, 3, 100).unwrap().count(), 8);
        assert_eq!(partial_allocations(2, 3, 100).unwrap().count(), 27);
        assert_eq!(complete_allocations(3, 0, 100).unwrap().count(), 1);
        assert!(matches!(
            complete_allocations(10, 10, 100).unwrap_err(),
            Error::Scale { .. }
        ));
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<_> = complete_allocations(2, 2, 100).unwrap().collect();
        assert_eq!(
            all,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }
}
