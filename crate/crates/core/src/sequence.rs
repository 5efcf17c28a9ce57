//! Temporal rule schedules: which of the two rules applies at each step.

use crate::error::{Error, Result};
use serde::Serialize;

/// Which rule a schedule picks at a given step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleChoice {
    F,
    G,
}

impl RuleChoice {
    pub fn other(self) -> Self {
        match self {
            RuleChoice::F => RuleChoice::G,
            RuleChoice::G => RuleChoice::F,
        }
    }
}

impl std::fmt::Display for RuleChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleChoice::F => write!(f, "F"),
            RuleChoice::G => write!(f, "G"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Periodicity {
    Periodic(u64),
    Aperiodic,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    /// Repeating bit pattern, 1 means the first rule applies.
    Pattern(Vec<bool>),
    /// First rule at odd steps (OEIS A005408).
    Odd,
    /// First rule when the step is not divisible by 3 (OEIS A001651).
    NotDivisibleByThree,
    /// First rule at non-prime steps (OEIS A018252).
    NotPrime,
    /// Finite prefix; stepping past it is an error.
    Explicit(Vec<bool>),
}

/// A deterministic schedule over {F, G} for 1-based time steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSequence {
    kind: Kind,
    id: String,
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    if s.is_empty() {
        return None;
    }
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

impl RuleSequence {
    pub fn odd() -> Self {
        RuleSequence {
            kind: Kind::Odd,
            id: "A005408".into(),
        }
    }

    pub fn not_divisible_by_three() -> Self {
        RuleSequence {
            kind: Kind::NotDivisibleByThree,
            id: "A001651".into(),
        }
    }

    pub fn not_prime() -> Self {
        RuleSequence {
            kind: Kind::NotPrime,
            id: "A018252".into(),
        }
    }

    pub fn pattern(bits: &str) -> Result<Self> {
        let pattern = parse_bits(bits).ok_or_else(|| Error::BadPattern {
            pattern: bits.to_string(),
        })?;
        Ok(RuleSequence {
            kind: Kind::Pattern(pattern),
            id: format!("({bits})^+"),
        })
    }

    pub fn explicit(bits: &str) -> Result<Self> {
        let prefix = parse_bits(bits).ok_or_else(|| Error::BadPattern {
            pattern: bits.to_string(),
        })?;
        Ok(RuleSequence {
            kind: Kind::Explicit(prefix),
            id: format!("bits:{bits}"),
        })
    }

    /// Parses a CLI specifier: an OEIS id, `pat:<bits>`, or `bits:<bits>`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "A005408" => Ok(Self::odd()),
            "A001651" => Ok(Self::not_divisible_by_three()),
            "A018252" => Ok(Self::not_prime()),
            _ => {
                if let Some(bits) = spec.strip_prefix("pat:") {
                    Self::pattern(bits)
                } else if let Some(bits) = spec.strip_prefix("bits:") {
                    Self::explicit(bits)
                } else {
                    Err(Error::BadSequenceSpec {
                        spec: spec.to_string(),
                    })
                }
            }
        }
    }

    /// Display name, e.g. "A001651" or "(10)^+".
    pub fn identifier(&self) -> &str {
        &self.id
    }

    /// The rule applied at step t >= 1.
    pub fn rule_at(&self, t: u64) -> Result<RuleChoice> {
        if t == 0 {
            return Err(Error::ZeroTimeStep);
        }
        let first = match &self.kind {
            Kind::Pattern(p) => p[((t - 1) % p.len() as u64) as usize],
            Kind::Odd => t % 2 == 1,
            Kind::NotDivisibleByThree => !t.is_multiple_of(3),
            Kind::NotPrime => !is_prime(t),
            Kind::Explicit(bits) => *bits.get((t - 1) as usize).ok_or(Error::ExplicitExhausted {
                t,
                len: bits.len(),
            })?,
        };
        Ok(if first { RuleChoice::F } else { RuleChoice::G })
    }

    /// Minimal period where one exists; patterns reduce to their primitive root.
    pub fn period(&self) -> Periodicity {
        match &self.kind {
            Kind::Pattern(p) => Periodicity::Periodic(primitive_period(p) as u64),
            Kind::Odd => Periodicity::Periodic(2),
            Kind::NotDivisibleByThree => Periodicity::Periodic(3),
            Kind::NotPrime => Periodicity::Aperiodic,
            Kind::Explicit(_) => Periodicity::Unknown,
        }
    }

    /// First `horizon` choices as a bit string, 1 where the first rule applies.
    pub fn prefix(&self, horizon: u64) -> Result<String> {
        (1..=horizon)
            .map(|t| self.rule_at(t).map(|c| if c == RuleChoice::F { '1' } else { '0' }))
            .collect()
    }
}

fn primitive_period(pattern: &[bool]) -> usize {
    let l = pattern.len();
    for d in 1..=l {
        if l.is_multiple_of(d) && pattern.iter().enumerate().all(|(i, &b)| b == pattern[i % d]) {
            return d;
        }
    }
    l
}

/// Deterministic primality for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // these witnesses are exact for every 64-bit candidate
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_steps_pick_the_first_rule() {
        let s = RuleSequence::odd();
        assert_eq!(s.rule_at(1).unwrap(), RuleChoice::F);
        assert_eq!(s.rule_at(2).unwrap(), RuleChoice::G);
    }

    #[test]
    fn skip_multiples_of_three() {
        let s = RuleSequence::not_divisible_by_three();
        let choices: Vec<_> = (1..=6).map(|t| s.rule_at(t).unwrap()).collect();
        use RuleChoice::{F, G};
        assert_eq!(choices, vec![F, F, G, F, F, G]);
        assert_eq!(s.prefix(6).unwrap(), "110110");
    }

    #[test]
    fn non_prime_steps() {
        let s = RuleSequence::not_prime();
        assert_eq!(s.rule_at(2).unwrap(), RuleChoice::G);
        assert_eq!(s.rule_at(4).unwrap(), RuleChoice::F);
        assert_eq!(s.prefix(8).unwrap(), "10010101");
    }

    #[test]
    fn pattern_periods_reduce() {
        assert_eq!(
            RuleSequence::pattern("110").unwrap().period(),
            Periodicity::Periodic(3)
        );
        assert_eq!(
            RuleSequence::pattern("1010").unwrap().period(),
            Periodicity::Periodic(2)
        );
        assert_eq!(RuleSequence::not_prime().period(), Periodicity::Aperiodic);
    }

    #[test]
    fn explicit_prefix_errors_past_its_end() {
        let s = RuleSequence::explicit("110").unwrap();
        assert_eq!(s.rule_at(3).unwrap(), RuleChoice::G);
        assert!(matches!(
            s.rule_at(4),
            Err(Error::ExplicitExhausted { t: 4, len: 3 })
        ));
        assert_eq!(s.period(), Periodicity::Unknown);
    }

    #[test]
    fn parse_accepts_known_specs_only() {
        assert_eq!(RuleSequence::parse("A005408").unwrap().identifier(), "A005408");
        assert_eq!(RuleSequence::parse("pat:10").unwrap().identifier(), "(10)^+");
        assert_eq!(RuleSequence::parse("bits:01").unwrap().identifier(), "bits:01");
        assert!(RuleSequence::parse("A000001").is_err());
        assert!(RuleSequence::parse("pat:12").is_err());
    }

    #[test]
    fn primality_matches_trial_division_on_small_range() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), trial(n), "n={n}");
        }
    }
}
