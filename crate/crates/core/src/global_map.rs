//! Exhaustive image table of one rule over every configuration of a ring.

use crate::config::step_cells;
use crate::error::{Error, Result};
use crate::rule::LocalRule;

/// Default cap on the number of configurations a map may enumerate.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// The full transition table of one rule at a fixed lattice size, with
/// injectivity and surjectivity decided by exhaustive preimage counting.
#[derive(Debug, Clone)]
pub struct GlobalMap {
    rule: LocalRule,
    size: usize,
    image: Vec<u64>,
    preimage_counts: Vec<u32>,
    injective: bool,
    non_reachable: Vec<u64>,
}

impl GlobalMap {
    pub fn build(rule: &LocalRule, n: usize) -> Result<Self> {
        Self::build_with_budget(rule, n, DEFAULT_BUDGET)
    }

    pub fn build_with_budget(rule: &LocalRule, n: usize, budget: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let k = rule.states();
        let required = (k as u128)
            .checked_pow(n as u32)
            .ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget,
            })?;
        if required > budget as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let count = required as usize;

        let mut image = Vec::with_capacity(count);
        let mut preimage_counts = vec![0u32; count];
        let mut cells = vec![0u8; n];
        let mut next = vec![0u8; n];
        for _ in 0..count {
            step_cells(rule, &cells, &mut next);
            let mut y: u64 = 0;
            for &c in next.iter() {
                y = y * k as u64 + c as u64;
            }
            image.push(y);
            preimage_counts[y as usize] += 1;
            // advance the row as a base-k counter, least significant cell last
            for cell in cells.iter_mut().rev() {
                *cell += 1;
                if *cell < k {
                    break;
                }
                *cell = 0;
            }
        }

        let injective = preimage_counts.iter().all(|&c| c <= 1);
        let non_reachable = preimage_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(e, _)| e as u64)
            .collect();
        Ok(GlobalMap {
            rule: rule.clone(),
            size: n,
            image,
            preimage_counts,
            injective,
            non_reachable,
        })
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn states(&self) -> u8 {
        self.rule.states()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of configurations, k^n.
    pub fn config_count(&self) -> u64 {
        self.image.len() as u64
    }

    pub fn image_of(&self, e: u64) -> u64 {
        self.image[e as usize]
    }

    /// The whole image table, indexed by source encoding.
    pub fn image_table(&self) -> &[u64] {
        &self.image
    }

    pub fn preimage_count(&self, e: u64) -> u32 {
        self.preimage_counts[e as usize]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// Equal to injectivity on this finite equal-cardinality space.
    pub fn is_surjective(&self) -> bool {
        self.non_reachable.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.non_reachable.is_empty()
    }

    /// Encodings with no predecessor, ascending.
    pub fn non_reachable(&self) -> &[u64] {
        &self.non_reachable
    }
}

/// Checks two maps describe the same configuration space.
pub(crate) fn check_same_space(a: &GlobalMap, b: &GlobalMap) -> Result<()> {
    if a.size() != b.size() || a.states() != b.states() {
        return Err(Error::MapMismatch {
            left_n: a.size(),
            left_k: a.states(),
            right_n: b.size(),
            right_k: b.states(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_map_is_bijective() {
        let m = GlobalMap::build(&LocalRule::eca(204), 4).unwrap();
        assert!(m.is_bijective());
        assert!(m.non_reachable().is_empty());
        for e in 0..16 {
            assert_eq!(m.image_of(e), e);
        }
    }

    #[test]
    fn left_complement_is_bijective() {
        assert!(GlobalMap::build(&LocalRule::eca(85), 4).unwrap().is_bijective());
    }

    #[test]
    fn injective_iff_surjective() {
        for code in [0u8, 3, 14, 15, 30, 51, 90, 105, 170, 204, 254] {
            let m = GlobalMap::build(&LocalRule::eca(code), 5).unwrap();
            assert_eq!(m.is_injective(), m.is_surjective(), "rule {code}");
        }
    }

    #[test]
    fn preimage_counts_sum_to_config_count() {
        let m = GlobalMap::build(&LocalRule::eca(30), 6).unwrap();
        let total: u64 = (0..m.config_count()).map(|e| m.preimage_count(e) as u64).sum();
        assert_eq!(total, m.config_count());
    }

    #[test]
    fn budget_rejects_oversized_spaces() {
        let err = GlobalMap::build_with_budget(&LocalRule::eca(30), 5, 16).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required: 32, budget: 16 }));
    }
}
