//! Brute-force reference implementations the integration tests check the
//! crate against. Everything here recomputes from first principles and shares
//! no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Rule table by repeated division: entry for window index w is the w-th
/// base-k digit of the code, counted from the least significant.
pub fn naive_table(code: u128, k: u8, m: u8) -> Vec<u8> {
    let len = (k as usize).pow(m as u32);
    let mut table = vec![0u8; len];
    let mut rest = code;
    for entry in table.iter_mut() {
        *entry = (rest % k as u128) as u8;
        rest /= k as u128;
    }
    assert_eq!(rest, 0, "code does not fit the table");
    table
}

/// One synchronous step on a ring, windows gathered with explicit wrap-around.
pub fn naive_step(table: &[u8], k: u8, cells: &[u8]) -> Vec<u8> {
    let n = cells.len();
    let m = {
        let mut m = 0u32;
        while (k as usize).pow(m) < table.len() {
            m += 1;
        }
        assert_eq!((k as usize).pow(m), table.len());
        m as usize
    };
    let r = m / 2;
    (0..n)
        .map(|i| {
            let mut idx = 0usize;
            for d in 0..m {
                // neighbor at offset d - r, wrapped onto the ring
                let j = ((i + n * (r / n + 1) + d) - r) % n;
                idx = idx * k as usize + cells[j] as usize;
            }
            table[idx]
        })
        .collect()
}

/// Cells to encoding: read left to right as a base-k numeral.
pub fn encode(cells: &[u8], k: u8) -> u64 {
    cells.iter().fold(0u64, |acc, &c| acc * k as u64 + c as u64)
}

/// Encoding back to cells, most significant digit first.
pub fn decode(e: u64, k: u8, n: usize) -> Vec<u8> {
    let mut cells = vec![0u8; n];
    let mut rest = e;
    for cell in cells.iter_mut().rev() {
        *cell = (rest % k as u64) as u8;
        rest /= k as u64;
    }
    assert_eq!(rest, 0, "encoding does not fit the lattice");
    cells
}

/// Image of every configuration under one rule, by brute force.
pub fn naive_image_table(code: u128, k: u8, m: u8, n: usize) -> Vec<u64> {
    let table = naive_table(code, k, m);
    let count = (k as u64).pow(n as u32);
    (0..count)
        .map(|e| encode(&naive_step(&table, k, &decode(e, k, n)), k))
        .collect()
}

pub fn trial_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether the first rule applies at step t, straight from the definitions.
pub fn seq_bit(spec: &str, t: u64) -> bool {
    assert!(t >= 1);
    match spec {
        "A005408" => t % 2 == 1,
        "A001651" => !t.is_multiple_of(3),
        "A018252" => !trial_prime(t),
        _ => {
            let bits = spec
                .strip_prefix("pat:")
                .or_else(|| spec.strip_prefix("bits:"))
                .expect("unknown sequence spec");
            let chars: Vec<char> = bits.chars().collect();
            chars[((t - 1) % chars.len() as u64) as usize] == '1'
        }
    }
}

/// Step-by-step set simulation: the family C_1, C_2, ... where C_{t+1} is the
/// pointwise image of C_t under the scheduled rule.
pub fn naive_reach_sets(
    f_table: &[u64],
    g_table: &[u64],
    spec: &str,
    c1: &BTreeSet<u64>,
    steps: u64,
) -> Vec<BTreeSet<u64>> {
    let mut sets = vec![c1.clone()];
    for t in 1..=steps {
        let table = if seq_bit(spec, t) { f_table } else { g_table };
        let next = sets
            .last()
            .unwrap()
            .iter()
            .map(|&e| table[e as usize])
            .collect();
        sets.push(next);
    }
    sets
}
