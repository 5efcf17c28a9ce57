//! Ring configurations and the synchronous global step.

use crate::error::{Error, Result};
use crate::rule::LocalRule;

/// A row of cell states on a ring, with periodic boundary.
///
/// The canonical integer encoding reads the row left to right as a base-k
/// numeral, so cell 0 carries the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    states: u8,
    cells: Vec<u8>,
}

impl Configuration {
    pub fn new(cells: Vec<u8>, k: u8) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadStateCount(k));
        }
        if cells.is_empty() {
            return Err(Error::EmptyLattice);
        }
        if let Some(&v) = cells.iter().find(|&&v| v >= k) {
            return Err(Error::BadCellState { value: v, k });
        }
        Ok(Configuration { states: k, cells })
    }

    /// Decodes an integer encoding into an n-cell configuration.
    pub fn from_code(code: u128, k: u8, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadStateCount(k));
        }
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut cells = vec![0u8; n];
        let mut rest = code;
        for cell in cells.iter_mut().rev() {
            *cell = (rest % k as u128) as u8;
            rest /= k as u128;
        }
        if rest != 0 {
            return Err(Error::BadEncoding { code, k, n });
        }
        Ok(Configuration { states: k, cells })
    }

    /// The canonical encoding, if k^n fits the encoding integer.
    pub fn code(&self) -> Result<u128> {
        let mut v: u128 = 0;
        for &c in &self.cells {
            v = v
                .checked_mul(self.states as u128)
                .and_then(|v| v.checked_add(c as u128))
                .ok_or(Error::EncodingOverflow {
                    k: self.states,
                    n: self.cells.len(),
                })?;
        }
        Ok(v)
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }
}

/// Applies one synchronous update of `rule` to every cell of `c`.
pub fn global_step(rule: &LocalRule, c: &Configuration) -> Result<Configuration> {
    if rule.states() != c.states() {
        return Err(Error::AlphabetMismatch {
            rule_states: rule.states(),
            config_states: c.states(),
        });
    }
    let mut next = vec![0u8; c.len()];
    step_cells(rule, c.cells(), &mut next);
    Ok(Configuration {
        states: c.states(),
        cells: next,
    })
}

/// Cell-level step without validation, shared by the exhaustive map builder.
pub(crate) fn step_cells(rule: &LocalRule, cells: &[u8], out: &mut [u8]) {
    let n = cells.len();
    let k = rule.states() as usize;
    let r = rule.radius();
    // pad keeps the index arithmetic in unsigned range even when r >= n
    let pad = n * r.div_ceil(n).max(1);
    for (i, slot) in out.iter_mut().enumerate() {
        let mut idx = 0usize;
        for d in 0..rule.arity() as usize {
            let j = (i + pad + d - r) % n;
            idx = idx * k + cells[j] as usize;
        }
        *slot = rule.apply_index(idx);
    }
}
