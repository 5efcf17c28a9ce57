//! Trajectories, partial transition diagrams, and recurrence of single
//! configurations under a schedule.

use crate::error::{Error, Result};
use crate::global_map::{check_same_space, GlobalMap};
use crate::reach::run_restriction_chain;
use crate::sequence::{Periodicity, RuleChoice, RuleSequence};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectoryStep {
    pub t: u64,
    pub rule: RuleChoice,
    pub result: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Trajectory {
    pub initial: u64,
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    /// The visited encodings including the start, in time order.
    pub fn states(&self) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.steps.len() + 1);
        v.push(self.initial);
        v.extend(self.steps.iter().map(|s| s.result));
        v
    }
}

/// Runs `initial` forward for `steps` scheduled applications.
pub fn evolve(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    initial: u64,
    steps: u64,
) -> Result<Trajectory> {
    check_same_space(f, g)?;
    let count = f.config_count();
    if initial >= count {
        return Err(Error::BadEncoding {
            code: initial as u128,
            k: f.states(),
            n: f.size(),
        });
    }
    let mut current = initial;
    let mut out = Vec::with_capacity(steps as usize);
    for t in 1..=steps {
        let rule = seq.rule_at(t)?;
        current = match rule {
            RuleChoice::F => f.image_of(current),
            RuleChoice::G => g.image_of(current),
        };
        out.push(TrajectoryStep { t, rule, result: current });
    }
    Ok(Trajectory { initial, steps: out })
}

/// Where a node sits in a partial diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeRole {
    Initial,
    Intermediate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramArc {
    pub from: u64,
    pub rule: RuleChoice,
    pub to: u64,
}

/// The transitions actually exercised by a chain from a chosen initial set.
///
/// Nodes carry the full configuration space; only members of the initial set
/// or some chain image get a role.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PartialDiagram {
    pub nodes: Vec<(u64, Option<NodeRole>)>,
    pub arcs: Vec<DiagramArc>,
}

/// Builds the diagram of transitions used by the restriction chain from `cin`.
/// Arcs are deduplicated; repeated traversals of one transition draw once.
pub fn partial_transition_diagram(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    cin: &[u64],
    horizon: Option<u64>,
) -> Result<PartialDiagram> {
    let chain = run_restriction_chain(f, g, seq, cin, horizon)?;
    let mut arcs = BTreeSet::new();
    for step in &chain.steps {
        let map = match step.rule {
            RuleChoice::F => f,
            RuleChoice::G => g,
        };
        for &x in &step.domain {
            arcs.insert(DiagramArc {
                from: x,
                rule: step.rule,
                to: map.image_of(x),
            });
        }
    }
    let initial: BTreeSet<u64> = cin.iter().copied().collect();
    let reached: BTreeSet<u64> = chain.reached().into_iter().collect();
    let nodes = (0..f.config_count())
        .map(|e| {
            let role = if initial.contains(&e) {
                Some(NodeRole::Initial)
            } else if reached.contains(&e) {
                Some(NodeRole::Intermediate)
            } else {
                None
            };
            (e, role)
        })
        .collect();
    Ok(PartialDiagram {
        nodes,
        arcs: arcs.into_iter().collect(),
    })
}

/// Deterministic successor structure on (configuration, phase) pairs for a
/// periodic schedule.
#[derive(Debug, Clone)]
pub struct PhaseGraph {
    period: u64,
    config_count: u64,
    /// succ[p * config_count + c] = encoding after applying the rule of phase p.
    succ: Vec<u64>,
    /// rules[p] is the rule applied when leaving phase p, i.e. at times
    /// t with (t - 1) % period == p.
    rules: Vec<RuleChoice>,
}

impl PhaseGraph {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn config_count(&self) -> u64 {
        self.config_count
    }

    pub fn rule_of_phase(&self, phase: u64) -> RuleChoice {
        self.rules[phase as usize]
    }

    /// Successor of (config, phase) in the product space.
    pub fn step(&self, config: u64, phase: u64) -> (u64, u64) {
        let next = self.succ[(phase * self.config_count + config) as usize];
        (next, (phase + 1) % self.period)
    }

    fn node_count(&self) -> u64 {
        self.period * self.config_count
    }

    /// Nodes lying on some cycle of the functional graph, as (config, phase).
    ///
    /// Every node has out-degree one, so repeated pointer chasing with
    /// three-state marking finds exactly the cyclic part.
    pub fn recurrent_nodes(&self) -> Vec<(u64, u64)> {
        const UNSEEN: u8 = 0;
        const ACTIVE: u8 = 1;
        const DONE: u8 = 2;
        let n = self.node_count() as usize;
        let mut mark = vec![UNSEEN; n];
        let mut on_cycle = vec![false; n];
        let index = |c: u64, p: u64| (p * self.config_count + c) as usize;
        for start_c in 0..self.config_count {
            for start_p in 0..self.period {
                if mark[index(start_c, start_p)] != UNSEEN {
                    continue;
                }
                let mut path = Vec::new();
                let (mut c, mut p) = (start_c, start_p);
                loop {
                    let i = index(c, p);
                    match mark[i] {
                        UNSEEN => {
                            mark[i] = ACTIVE;
                            path.push(i);
                            let (nc, np) = self.step(c, p);
                            c = nc;
                            p = np;
                        }
                        ACTIVE => {
                            // closed a new cycle inside the current path
                            let pos = path.iter().position(|&j| j == i).unwrap();
                            for &j in &path[pos..] {
                                on_cycle[j] = true;
                            }
                            break;
                        }
                        DONE => break,
                        _ => unreachable!(),
                    }
                }
                for &j in &path {
                    mark[j] = DONE;
                }
            }
        }
        let mut out = Vec::new();
        for p in 0..self.period {
            for c in 0..self.config_count {
                if on_cycle[index(c, p)] {
                    out.push((c, p));
                }
            }
        }
        out
    }
}

/// Materializes the (configuration, phase) successor map for a periodic
/// schedule. Open-ended sequences have no finite phase space and are rejected.
pub fn build_phase_graph(f: &GlobalMap, g: &GlobalMap, seq: &RuleSequence) -> Result<PhaseGraph> {
    check_same_space(f, g)?;
    let period = match seq.period() {
        Periodicity::Periodic(l) => l,
        _ => {
            return Err(Error::NeedsPeriodicSequence {
                operation: "phase graph",
            })
        }
    };
    let count = f.config_count();
    let mut succ = Vec::with_capacity((period * count) as usize);
    let mut rules = Vec::with_capacity(period as usize);
    for p in 0..period {
        let rule = seq.rule_at(p + 1)?;
        rules.push(rule);
        let map = match rule {
            RuleChoice::F => f,
            RuleChoice::G => g,
        };
        for c in 0..count {
            succ.push(map.image_of(c));
        }
    }
    Ok(PhaseGraph {
        period,
        config_count: count,
        succ,
        rules,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RecurrenceStatus {
    /// Visited infinitely often along this trajectory.
    Recurrent,
    /// Visited at least once, then abandoned.
    Transient,
    NotVisited,
}

/// Recurrence data for one configuration along one trajectory.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceRecord {
    pub initial: u64,
    pub config: u64,
    pub status: RecurrenceStatus,
    /// Gaps between consecutive visits before the visits settle into a cycle.
    pub preperiod: Vec<u64>,
    /// Repeating gap block; its sum is the trajectory's cycle length.
    pub block: Vec<u64>,
    pub cycle_length: Option<u64>,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceAnalysis {
    pub initial: u64,
    /// Time of the first repeated (configuration, phase) pair, when known.
    pub cycle_start: Option<u64>,
    pub cycle_length: Option<u64>,
    pub exact: bool,
    pub records: Vec<RecurrenceRecord>,
}

fn gaps(visits: &[u64]) -> Vec<u64> {
    visits.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Classifies configurations along the trajectory from `initial` as recurrent
/// or transient, with visit-gap structure.
///
/// `target` limits the report to one configuration. Periodic schedules give
/// exact answers via the phase graph; open-ended ones are observed up to
/// `horizon` and marked inexact.
pub fn recurrence_analysis(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    initial: u64,
    target: Option<u64>,
    horizon: Option<u64>,
) -> Result<RecurrenceAnalysis> {
    check_same_space(f, g)?;
    let count = f.config_count();
    if initial >= count {
        return Err(Error::BadEncoding {
            code: initial as u128,
            k: f.states(),
            n: f.size(),
        });
    }
    if let Some(x) = target {
        if x >= count {
            return Err(Error::BadEncoding {
                code: x as u128,
                k: f.states(),
                n: f.size(),
            });
        }
    }
    match seq.period() {
        Periodicity::Periodic(_) => {
            let graph = build_phase_graph(f, g, seq)?;
            Ok(periodic_recurrence(&graph, initial, target))
        }
        Periodicity::Aperiodic | Periodicity::Unknown => {
            let horizon = horizon.ok_or(Error::AperiodicNeedsHorizon {
                operation: "recurrence analysis",
            })?;
            observed_recurrence(f, g, seq, initial, target, horizon)
        }
    }
}

fn periodic_recurrence(
    graph: &PhaseGraph,
    initial: u64,
    target: Option<u64>,
) -> RecurrenceAnalysis {
    // walk (config, phase) until the pair repeats; everything after is replay
    let mut order: Vec<u64> = Vec::new();
    let mut seen: std::collections::HashMap<(u64, u64), u64> = std::collections::HashMap::new();
    let (mut c, mut p) = (initial, 0u64);
    let (cycle_start, total) = loop {
        if let Some(&first) = seen.get(&(c, p)) {
            break (first, order.len() as u64);
        }
        seen.insert((c, p), order.len() as u64);
        order.push(c);
        let (nc, np) = graph.step(c, p);
        c = nc;
        p = np;
    };
    let cycle_length = total - cycle_start;

    let mut visits: std::collections::HashMap<u64, Vec<u64>> = std::collections::HashMap::new();
    for (t, &cfg) in order.iter().enumerate() {
        visits.entry(cfg).or_default().push(t as u64);
    }

    let mut first_seen: Vec<u64> = Vec::new();
    let mut seen_set = std::collections::HashSet::new();
    for &cfg in &order {
        if seen_set.insert(cfg) {
            first_seen.push(cfg);
        }
    }
    let subjects: Vec<u64> = match target {
        Some(x) => vec![x],
        None => first_seen,
    };

    let records = subjects
        .into_iter()
        .map(|cfg| {
            let v = visits.get(&cfg).cloned().unwrap_or_default();
            if v.is_empty() {
                return RecurrenceRecord {
                    initial,
                    config: cfg,
                    status: RecurrenceStatus::NotVisited,
                    preperiod: Vec::new(),
                    block: Vec::new(),
                    cycle_length: None,
                    exact: true,
                };
            }
            let on_cycle_pos = v.iter().position(|&t| t >= cycle_start);
            match on_cycle_pos {
                Some(pos) => {
                    // gaps up to the first on-cycle visit never repeat; from
                    // there one cycle's worth of gaps repeats forever
                    let first_on = v[pos];
                    let cycle_visits: Vec<u64> = v[pos..]
                        .iter()
                        .copied()
                        .take_while(|&t| t < first_on + cycle_length)
                        .chain(std::iter::once(first_on + cycle_length))
                        .collect();
                    RecurrenceRecord {
                        initial,
                        config: cfg,
                        status: RecurrenceStatus::Recurrent,
                        preperiod: gaps(&v[..=pos]),
                        block: gaps(&cycle_visits),
                        cycle_length: Some(cycle_length),
                        exact: true,
                    }
                }
                None => RecurrenceRecord {
                    initial,
                    config: cfg,
                    status: RecurrenceStatus::Transient,
                    preperiod: gaps(&v),
                    block: Vec::new(),
                    cycle_length: None,
                    exact: true,
                },
            }
        })
        .collect();

    RecurrenceAnalysis {
        initial,
        cycle_start: Some(cycle_start),
        cycle_length: Some(cycle_length),
        exact: true,
        records,
    }
}

fn observed_recurrence(
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    initial: u64,
    target: Option<u64>,
    horizon: u64,
) -> Result<RecurrenceAnalysis> {
    let trajectory = evolve(f, g, seq, initial, horizon)?;
    let order = trajectory.states();
    let mut visits: std::collections::HashMap<u64, Vec<u64>> = std::collections::HashMap::new();
    for (t, &cfg) in order.iter().enumerate() {
        visits.entry(cfg).or_default().push(t as u64);
    }
    let mut first_seen: Vec<u64> = Vec::new();
    let mut seen_set = std::collections::HashSet::new();
    for &cfg in &order {
        if seen_set.insert(cfg) {
            first_seen.push(cfg);
        }
    }
    let subjects: Vec<u64> = match target {
        Some(x) => vec![x],
        None => first_seen,
    };
    let records = subjects
        .into_iter()
        .map(|cfg| {
            let v = visits.get(&cfg).cloned().unwrap_or_default();
            let status = match v.len() {
                0 => RecurrenceStatus::NotVisited,
                1 => RecurrenceStatus::Transient,
                _ => RecurrenceStatus::Recurrent,
            };
            RecurrenceRecord {
                initial,
                config: cfg,
                status,
                preperiod: gaps(&v),
                block: Vec::new(),
                cycle_length: None,
                exact: false,
            }
        })
        .collect();
    Ok(RecurrenceAnalysis {
        initial,
        cycle_start: None,
        cycle_length: None,
        exact: false,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::LocalRule;

    fn map(code: u8, n: usize) -> GlobalMap {
        GlobalMap::build(&LocalRule::eca(code), n).unwrap()
    }

    #[test]
    fn evolve_alternates_rules() {
        let f = map(51, 4);
        let g = map(204, 4);
        let tr = evolve(&f, &g, &RuleSequence::odd(), 5, 2).unwrap();
        assert_eq!(tr.states(), vec![5, 10, 10]);
        assert_eq!(tr.steps[0].rule, RuleChoice::F);
        assert_eq!(tr.steps[1].rule, RuleChoice::G);
    }

    #[test]
    fn evolve_rejects_out_of_range_start() {
        let f = map(51, 4);
        assert!(evolve(&f, &f, &RuleSequence::odd(), 16, 1).is_err());
    }

    #[test]
    fn phase_graph_matches_evolve() {
        let f = map(90, 5);
        let g = map(30, 5);
        let seq = RuleSequence::not_divisible_by_three();
        let graph = build_phase_graph(&f, &g, &seq).unwrap();
        let tr = evolve(&f, &g, &seq, 7, 12).unwrap();
        let (mut c, mut p) = (7u64, 0u64);
        for step in &tr.steps {
            let (nc, np) = graph.step(c, p);
            assert_eq!(nc, step.result);
            c = nc;
            p = np;
        }
        let _ = p;
    }

    #[test]
    fn phase_graph_rejects_open_ended_sequences() {
        let f = map(90, 4);
        assert!(build_phase_graph(&f, &f, &RuleSequence::not_prime()).is_err());
    }

    #[test]
    fn identity_everything_recurrent_with_unit_gaps() {
        let m = map(204, 3);
        let seq = RuleSequence::pattern("1").unwrap();
        let a = recurrence_analysis(&m, &m, &seq, 5, None, None).unwrap();
        assert_eq!(a.cycle_length, Some(1));
        assert_eq!(a.records.len(), 1);
        let r = &a.records[0];
        assert_eq!(r.status, RecurrenceStatus::Recurrent);
        assert_eq!(r.block, vec![1]);
        assert!(r.preperiod.is_empty());
    }

    #[test]
    fn aperiodic_requires_horizon() {
        let m = map(204, 3);
        let err = recurrence_analysis(&m, &m, &RuleSequence::not_prime(), 1, None, None);
        assert!(matches!(err, Err(Error::AperiodicNeedsHorizon { .. })));
    }

    #[test]
    fn aperiodic_with_horizon_is_inexact() {
        let m = map(204, 3);
        let a = recurrence_analysis(&m, &m, &RuleSequence::not_prime(), 1, None, Some(10)).unwrap();
        assert!(!a.exact);
        assert!(a.records.iter().all(|r| !r.exact));
    }

    #[test]
    fn partial_diagram_arcs_deduplicate() {
        let m = map(204, 3);
        let seq = RuleSequence::pattern("1").unwrap();
        let d = partial_transition_diagram(&m, &m, &seq, &[2, 5], None).unwrap();
        assert_eq!(
            d.arcs,
            vec![
                DiagramArc { from: 2, rule: RuleChoice::F, to: 2 },
                DiagramArc { from: 5, rule: RuleChoice::F, to: 5 },
            ]
        );
        assert_eq!(d.nodes.len(), 8);
        assert_eq!(d.nodes[2].1, Some(NodeRole::Initial));
        assert_eq!(d.nodes[3].1, None);
    }
}
