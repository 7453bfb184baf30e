//! Set partitions of `{0, …, ℓ−1}`, enumerated as restricted growth strings.

use crate::error::{Error, Result};

/// Largest ground set size accepted (Bell(8) = 4140 partitions).
pub const MAX_ELL: usize = 8;

/// Streams every partition of `{0, …, ℓ−1}` as a list of blocks.
/// Blocks are ordered by their smallest element; block members ascend.
pub struct PartitionIter {
    rgs: Vec<usize>,
    done: bool,
}

impl PartitionIter {
    pub fn new(ell: usize) -> Result<Self> {
        if ell > MAX_ELL {
            return Err(Error::PartitionGuardExceeded {
                ell,
                limit: MAX_ELL,
            });
        }
        Ok(Self {
            rgs: vec![0; ell],
            done: false,
        })
    }
}

impl Iterator for PartitionIter {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let blocks = self.rgs.iter().copied().max().map_or(0, |b| b + 1);
        let mut out = vec![Vec::new(); blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b].push(i);
        }
        // advance: rightmost position that can grow, given max of its prefix
        let n = self.rgs.len();
        self.done = true;
        for i in (1..n).rev() {
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for r in self.rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                self.done = false;
                break;
            }
        }
        Some(out)
    }
}

/// Bell numbers for `ℓ ≤ MAX_ELL`.
pub fn bell(ell: usize) -> u64 {
    const BELL: [u64; MAX_ELL + 1] = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    BELL[ell]
}

/// Bitmask of a block.
pub fn mask_of(block: &[usize]) -> u32 {
    block.iter().fold(0, |m, &i| m | (1 << i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_are_bell_numbers() {
        for ell in 0..=MAX_ELL {
            let all: Vec<_> = PartitionIter::new(ell).unwrap().collect();
            assert_eq!(all.len() as u64, bell(ell));
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for p in &all {
                let mut seen: Vec<usize> = p.iter().flatten().copied().collect();
                seen.sort_unstable();
                assert_eq!(seen, (0..ell).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(
            PartitionIter::new(9),
            Err(Error::PartitionGuardExceeded { .. })
        ));
    }

    #[test]
    fn three_element_partitions() {
        let all: Vec<_> = PartitionIter::new(3).unwrap().collect();
        assert_eq!(all[0], vec![vec![0, 1, 2]]);
        assert_eq!(all[4], vec![vec![0], vec![1], vec![2]]);
    }
}
