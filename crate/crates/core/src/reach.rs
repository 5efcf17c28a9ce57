//! Reachability under a schedule: restriction chains and the reversibility
//! taxonomy (reversible, restricted reversible, weakly reversible, irreversible).

use crate::error::{Error, Result};
use crate::global_map::{check_same_space, GlobalMap};
use crate::sequence::{Periodicity, RuleChoice, RuleSequence};
use serde::Serialize;
use std::collections::HashMap;

/// Two configurations merged into one image within a single step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Collision {
    pub first: u64,
    pub second: u64,
    pub image: u64,
}

/// One step of a restriction chain: the domain it acted on and what it produced.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainStep {
    pub t: u64,
    pub rule: RuleChoice,
    pub domain: Vec<u64>,
    pub image: Vec<u64>,
    pub injective_on_domain: bool,
    pub collisions: Vec<Collision>,
}

/// Why a chain stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChainClosure {
    /// The (domain, phase) pair at step `at` already occurred at step `matches`;
    /// from here the chain repeats.
    RepeatedState { at: u64, matches: u64 },
    /// The step cap was reached first.
    Horizon { at: u64 },
}

/// The sequence of restricted images from an initial set.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictionChain {
    pub steps: Vec<ChainStep>,
    pub closure: ChainClosure,
}

impl RestrictionChain {
    /// Union of every step's image set, ascending.
    pub fn reached(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.steps.iter().flat_map(|s| s.image.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.closure, ChainClosure::RepeatedState { .. })
    }
}

fn sorted_dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

fn full_set(count: u64) -> Vec<u64> {
    (0..count).collect()
}

/// Default step cap when a sequence has no usable period.
fn default_horizon(count: u64) -> u64 {
    count.saturating_mul(4)
}

/// Iterates C_{t+1} = image of C_t under the scheduled rule, recording
/// per-step injectivity, until the (set, phase) pair repeats or a horizon hits.
pub fn run_restriction_chain(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    c1: &[u64],
    horizon: Option<u64>,
) -> Result<RestrictionChain> {
    check_same_space(f, g)?;
    if c1.is_empty() {
        return Err(Error::EmptyInitialSet);
    }
    let count = f.config_count();
    let period = match seq.period() {
        Periodicity::Periodic(l) => Some(l),
        Periodicity::Aperiodic | Periodicity::Unknown => None,
    };
    let cap = match (horizon, period) {
        (Some(h), _) => h,
        (None, Some(_)) => u64::MAX,
        (None, None) => default_horizon(count),
    };

    let mut current = sorted_dedup(c1.to_vec());
    let mut seen: HashMap<(Vec<u64>, u64), u64> = HashMap::new();
    let mut steps = Vec::new();
    let mut t: u64 = 1;
    loop {
        if let Some(l) = period {
            let key = (current.clone(), (t - 1) % l);
            if let Some(&prev) = seen.get(&key) {
                return Ok(RestrictionChain {
                    steps,
                    closure: ChainClosure::RepeatedState { at: t, matches: prev },
                });
            }
            seen.insert(key, t);
        }
        if t > cap {
            return Ok(RestrictionChain {
                steps,
                closure: ChainClosure::Horizon { at: t },
            });
        }
        let rule = seq.rule_at(t)?;
        let map = match rule {
            RuleChoice::F => f,
            RuleChoice::G => g,
        };
        let mut image_of: HashMap<u64, u64> = HashMap::with_capacity(current.len());
        let mut collisions = Vec::new();
        for &x in &current {
            let y = map.image_of(x);
            if let Some(&prev_x) = image_of.get(&y) {
                // keep the first witness pair per merged image
                if !collisions.iter().any(|c: &Collision| c.image == y) {
                    collisions.push(Collision {
                        first: prev_x,
                        second: x,
                        image: y,
                    });
                }
            } else {
                image_of.insert(y, x);
            }
        }
        let image = sorted_dedup(current.iter().map(|&x| map.image_of(x)).collect());
        collisions.sort_unstable_by_key(|c| (c.image, c.first, c.second));
        steps.push(ChainStep {
            t,
            rule,
            domain: current,
            image: image.clone(),
            injective_on_domain: collisions.is_empty(),
            collisions,
        });
        current = image;
        t += 1;
    }
}

/// Whether every configuration is reached at some step of the full-set chain.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictedSurjectivity {
    pub holds: bool,
    pub never_reached: Vec<u64>,
    /// False when an open-ended sequence was truncated at a horizon and the
    /// verdict is only "up to horizon".
    pub exact: bool,
    #[serde(skip)]
    pub chain: RestrictionChain,
}

pub fn is_restricted_surjective(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    horizon: Option<u64>,
) -> Result<RestrictedSurjectivity> {
    let chain = run_restriction_chain(f, g, seq, &full_set(f.config_count()), horizon)?;
    let reached = chain.reached();
    let never_reached: Vec<u64> = (0..f.config_count())
        .filter(|e| reached.binary_search(e).is_err())
        .collect();
    let holds = never_reached.is_empty();
    Ok(RestrictedSurjectivity {
        holds,
        never_reached,
        exact: holds || chain.is_closed(),
        chain,
    })
}

/// First injectivity defect found along a chain.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum InjectivityViolation {
    /// Two domain members of one step share an image.
    #[serde(rename_all = "camelCase")]
    StepCollision {
        t: u64,
        rule: RuleChoice,
        collision: Collision,
    },
    /// The same rule produced the same image from different preimages at
    /// different steps.
    #[serde(rename_all = "camelCase")]
    CrossStep {
        rule: RuleChoice,
        image: u64,
        first_preimage: u64,
        first_t: u64,
        second_preimage: u64,
        second_t: u64,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictedInjectivity {
    pub holds: bool,
    pub violation: Option<InjectivityViolation>,
    pub exact: bool,
    #[serde(skip)]
    pub chain: RestrictionChain,
}

/// Checks the chain from `cin` for step-level and cross-step injectivity.
///
/// Cross-step consistency demands, per rule, that equal images always come
/// from the same preimage no matter which step produced them.
pub fn verify_restricted_injective(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    cin: &[u64],
    horizon: Option<u64>,
) -> Result<RestrictedInjectivity> {
    let chain = run_restriction_chain(f, g, seq, cin, horizon)?;
    let mut inverse: HashMap<(RuleChoice, u64), (u64, u64)> = HashMap::new();
    let mut violation = None;
    'scan: for step in &chain.steps {
        if let Some(c) = step.collisions.first() {
            violation = Some(InjectivityViolation::StepCollision {
                t: step.t,
                rule: step.rule,
                collision: *c,
            });
            break 'scan;
        }
        for &x in &step.domain {
            let y = match step.rule {
                RuleChoice::F => f.image_of(x),
                RuleChoice::G => g.image_of(x),
            };
            match inverse.get(&(step.rule, y)) {
                Some(&(prev_x, prev_t)) if prev_x != x => {
                    violation = Some(InjectivityViolation::CrossStep {
                        rule: step.rule,
                        image: y,
                        first_preimage: prev_x,
                        first_t: prev_t,
                        second_preimage: x,
                        second_t: step.t,
                    });
                    break 'scan;
                }
                Some(_) => {}
                None => {
                    inverse.insert((step.rule, y), (x, step.t));
                }
            }
        }
    }
    Ok(RestrictedInjectivity {
        holds: violation.is_none(),
        exact: chain.is_closed(),
        violation,
        chain,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictedReversibility {
    pub holds: bool,
    pub injectivity: RestrictedInjectivity,
    /// Configurations in neither `cin` nor any chain image.
    pub uncovered: Vec<u64>,
}

/// Restricted reversibility from a given initial set: injectivity along the
/// chain plus full coverage by the initial set and the chain images.
pub fn verify_restricted_reversible(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    cin: &[u64],
    horizon: Option<u64>,
) -> Result<RestrictedReversibility> {
    let injectivity = verify_restricted_injective(f, g, seq, cin, horizon)?;
    let mut covered = injectivity.chain.reached();
    covered.extend_from_slice(cin);
    let covered = sorted_dedup(covered);
    let uncovered: Vec<u64> = (0..f.config_count())
        .filter(|e| covered.binary_search(e).is_err())
        .collect();
    Ok(RestrictedReversibility {
        holds: injectivity.holds && uncovered.is_empty(),
        injectivity,
        uncovered,
    })
}

/// Outcome of the greedy initial-set search.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InitialSetSearch {
    /// A set passing the full restricted-reversibility check, when one was found.
    pub found: Option<Vec<u64>>,
    /// The largest injectivity-preserving set the greedy pass kept.
    pub injective_set: Vec<u64>,
    /// Coverage gap of the kept set when the search failed.
    pub uncovered: Vec<u64>,
}

/// Greedy search for an initial set witnessing restricted reversibility.
///
/// Candidates are visited in ascending encoding order and kept whenever the
/// grown set still verifies restricted injectivity; the result is maximal for
/// that visit order, not globally.
pub fn find_restricted_initial_set(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    horizon: Option<u64>,
) -> Result<InitialSetSearch> {
    check_same_space(f, g)?;
    let mut kept: Vec<u64> = Vec::new();
    for cand in 0..f.config_count() {
        kept.push(cand);
        if !verify_restricted_injective(f, g, seq, &kept, horizon)?.holds {
            kept.pop();
        }
    }
    if kept.is_empty() {
        return Ok(InitialSetSearch {
            found: None,
            injective_set: kept,
            uncovered: full_set(f.config_count()),
        });
    }
    let report = verify_restricted_reversible(f, g, seq, &kept, horizon)?;
    Ok(InitialSetSearch {
        found: report.holds.then(|| kept.clone()),
        injective_set: kept,
        uncovered: report.uncovered,
    })
}

/// X_f intersected with X_g: configurations no schedule can ever produce.
pub fn common_non_reachable(f: &GlobalMap, g: &GlobalMap) -> Result<Vec<u64>> {
    check_same_space(f, g)?;
    Ok(f.non_reachable()
        .iter()
        .copied()
        .filter(|e| g.non_reachable().binary_search(e).is_ok())
        .collect())
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReversibilityVerdict {
    pub reversible: bool,
    pub f_bijective: bool,
    pub g_bijective: bool,
}

/// Reversibility for every schedule: both rules bijective.
pub fn reversibility(f: &GlobalMap, g: &GlobalMap) -> Result<ReversibilityVerdict> {
    check_same_space(f, g)?;
    let f_bijective = f.is_bijective();
    let g_bijective = g.is_bijective();
    Ok(ReversibilityVerdict {
        reversible: f_bijective && g_bijective,
        f_bijective,
        g_bijective,
    })
}

/// How the two leading image sets already rule out restricted reversibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "camelCase")]
pub enum ObstructionCase {
    /// The second image set sits inside the first, so the first step's losses
    /// are permanent.
    SecondImageInsideFirst,
    /// Some configuration lies outside both image sets.
    #[serde(rename_all = "camelCase")]
    OutsideBothImages { witness: u64 },
}

/// Result of the two-step image obstruction test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum IrreversibilityCertificate {
    /// A bijective rule voids the test's hypothesis.
    #[serde(rename_all = "camelCase")]
    NotApplicable { bijective_rule: RuleChoice },
    /// Certified not restricted or weakly reversible under any schedule that
    /// applies the first rule first.
    Certified { obstruction: ObstructionCase },
    /// Neither case fired; the test is silent.
    Inconclusive,
}

/// Tests whether S_f and its image under g already certify irreversibility,
/// for schedules that start with the first rule. Needs both rules non-bijective.
pub fn certify_not_restricted_reversible(
    f: &GlobalMap,
    g: &GlobalMap,
) -> Result<IrreversibilityCertificate> {
    check_same_space(f, g)?;
    if f.is_bijective() {
        return Ok(IrreversibilityCertificate::NotApplicable {
            bijective_rule: RuleChoice::F,
        });
    }
    if g.is_bijective() {
        return Ok(IrreversibilityCertificate::NotApplicable {
            bijective_rule: RuleChoice::G,
        });
    }
    let s_f = sorted_dedup((0..f.config_count()).map(|e| f.image_of(e)).collect());
    let s_g = sorted_dedup(s_f.iter().map(|&e| g.image_of(e)).collect());
    if s_g.iter().all(|e| s_f.binary_search(e).is_ok()) {
        return Ok(IrreversibilityCertificate::Certified {
            obstruction: ObstructionCase::SecondImageInsideFirst,
        });
    }
    let witness = (0..f.config_count())
        .find(|e| s_g.binary_search(e).is_err() && s_f.binary_search(e).is_err());
    if let Some(witness) = witness {
        return Ok(IrreversibilityCertificate::Certified {
            obstruction: ObstructionCase::OutsideBothImages { witness },
        });
    }
    Ok(IrreversibilityCertificate::Inconclusive)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleSummary {
    pub code: u128,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    pub non_reachable_count: usize,
}

impl RuleSummary {
    fn of(map: &GlobalMap) -> Self {
        RuleSummary {
            code: map.rule().code(),
            injective: map.is_injective(),
            surjective: map.is_surjective(),
            bijective: map.is_bijective(),
            non_reachable_count: map.non_reachable().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportInputs {
    pub f: u128,
    pub g: u128,
    pub n: usize,
    pub k: u8,
    pub sequence: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerRule {
    pub f: RuleSummary,
    pub g: RuleSummary,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    pub injective: bool,
    pub surjective: bool,
    pub reversible: bool,
    pub restricted_surjective: bool,
    pub restricted_injective: bool,
    pub restricted_reversible: bool,
    pub weakly_reversible: bool,
    pub irreversible: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witnesses {
    /// A configuration the schedule never reaches, when one exists.
    pub non_reachable: Option<u64>,
    /// Distinct collisions observed along the full-set chain, each the first
    /// two preimages that merged into one image.
    pub collisions: Vec<Collision>,
    /// Initial set found by the greedy search.
    pub initial_set: Option<Vec<u64>>,
}

/// Every verdict of the taxonomy with machine-checkable witnesses.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub inputs: ReportInputs,
    pub per_rule: PerRule,
    /// Configurations unreachable under both rules, hence under any schedule.
    pub common_non_reachable: Vec<u64>,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses,
    /// False when an aperiodic sequence was truncated at a horizon.
    pub exact: bool,
}

/// Runs the full taxonomy for one rule pair under one schedule.
pub fn classify(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    horizon: Option<u64>,
) -> Result<ClassificationReport> {
    check_same_space(f, g)?;
    let rev = reversibility(f, g)?;
    let surj = is_restricted_surjective(f, g, seq, horizon)?;
    let search = find_restricted_initial_set(f, g, seq, horizon)?;
    let restricted_injective = !search.injective_set.is_empty();
    let restricted_reversible = search.found.is_some();

    let collisions: Vec<Collision> = surj
        .chain
        .steps
        .iter()
        .flat_map(|s| s.collisions.iter().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(ClassificationReport {
        schema_version: 1,
        inputs: ReportInputs {
            f: f.rule().code(),
            g: g.rule().code(),
            n: f.size(),
            k: f.states(),
            sequence: seq.identifier().to_string(),
        },
        per_rule: PerRule {
            f: RuleSummary::of(f),
            g: RuleSummary::of(g),
        },
        common_non_reachable: common_non_reachable(f, g)?,
        verdicts: Verdicts {
            injective: f.is_injective() && g.is_injective(),
            surjective: f.is_surjective() && g.is_surjective(),
            reversible: rev.reversible,
            restricted_surjective: surj.holds,
            restricted_injective,
            restricted_reversible,
            weakly_reversible: surj.holds,
            irreversible: !rev.reversible,
        },
        witnesses: Witnesses {
            non_reachable: surj.never_reached.first().copied(),
            collisions,
            initial_set: search.found,
        },
        exact: surj.exact,
    })
}
