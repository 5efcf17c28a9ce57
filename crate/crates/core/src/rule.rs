//! Local update rules identified by their base-k decimal code.

use crate::error::{Error, Result};

/// A k-state rule over a centered window of `arity` cells.
///
/// The table entry for a window is looked up at the index obtained by reading
/// the window left to right as a base-k number, so for elementary rules
/// (k=2, arity 3) the code is the standard Wolfram number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    states: u8,
    arity: u8,
    table: Vec<u8>,
    code: u128,
}

fn table_len(k: u8, m: u8) -> Result<usize> {
    if k < 2 {
        return Err(Error::BadStateCount(k));
    }
    if m.is_multiple_of(2) {
        return Err(Error::EvenArity(m));
    }
    (k as usize)
        .checked_pow(m as u32)
        .filter(|&len| len <= 1 << 24)
        .ok_or(Error::TableTooLarge { k, m })
}

impl LocalRule {
    /// Decodes `code` into its base-k digit table, least significant digit first.
    pub fn from_code(k: u8, m: u8, code: u128) -> Result<Self> {
        let len = table_len(k, m)?;
        let mut rest = code;
        let mut table = Vec::with_capacity(len);
        for _ in 0..len {
            table.push((rest % k as u128) as u8);
            rest /= k as u128;
        }
        if rest != 0 {
            return Err(Error::BadRuleCode { code, k, m });
        }
        Ok(LocalRule {
            states: k,
            arity: m,
            table,
            code,
        })
    }

    /// Builds a rule from an explicit table and recomputes its code.
    pub fn from_table(k: u8, m: u8, table: Vec<u8>) -> Result<Self> {
        let len = table_len(k, m)?;
        if table.len() != len {
            return Err(Error::BadTableLength {
                expected: len,
                got: table.len(),
            });
        }
        let mut code: u128 = 0;
        for &v in table.iter().rev() {
            if v >= k {
                return Err(Error::BadTableEntry { value: v, k });
            }
            code = code
                .checked_mul(k as u128)
                .and_then(|c| c.checked_add(v as u128))
                .ok_or(Error::BadRuleCode { code: 0, k, m })?;
        }
        Ok(LocalRule {
            states: k,
            arity: m,
            table,
            code,
        })
    }

    /// Elementary rule by Wolfram number (2 states, window of 3).
    pub fn eca(code: u8) -> Self {
        Self::from_code(2, 3, code as u128).expect("every 8-bit code is a valid elementary rule")
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    /// Window reach on each side of the updated cell.
    pub fn radius(&self) -> usize {
        (self.arity as usize - 1) / 2
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Applies the rule to one window, given as (left .. self .. right).
    pub fn apply(&self, window: &[u8]) -> Result<u8> {
        if window.len() != self.arity as usize {
            return Err(Error::BadWindowLength {
                expected: self.arity as usize,
                got: window.len(),
            });
        }
        let mut idx = 0usize;
        for &v in window {
            if v >= self.states {
                return Err(Error::BadCellState {
                    value: v,
                    k: self.states,
                });
            }
            idx = idx * self.states as usize + v as usize;
        }
        Ok(self.table[idx])
    }

    /// Table lookup by precomputed window index, for hot loops.
    pub(crate) fn apply_index(&self, idx: usize) -> u8 {
        self.table[idx]
    }
}
