//! The combined transition multigraph of a rule pair: one arrow per
//! configuration per rule, with component, Hamiltonian, and Euler analysis.

use crate::error::{Error, Result};
use crate::global_map::{check_same_space, GlobalMap};
use crate::sequence::RuleChoice;
use serde::Serialize;

/// Component size cap for the exact Hamiltonian search.
pub const DEFAULT_HAMILTONIAN_BUDGET: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Edge {
    pub from: u64,
    pub rule: RuleChoice,
    pub to: u64,
}

/// A functional multigraph on the configuration space: each layer maps every
/// vertex to exactly one successor.
#[derive(Debug, Clone)]
pub struct TransitionDiagram {
    states: u8,
    size: usize,
    count: u64,
    layers: Vec<(RuleChoice, Vec<u64>)>,
}

impl TransitionDiagram {
    /// Both rules' arrows on one vertex set.
    pub fn combined(f: &GlobalMap, g: &GlobalMap) -> Result<Self> {
        check_same_space(f, g)?;
        Ok(TransitionDiagram {
            states: f.states(),
            size: f.size(),
            count: f.config_count(),
            layers: vec![
                (RuleChoice::F, f.image_table().to_vec()),
                (RuleChoice::G, g.image_table().to_vec()),
            ],
        })
    }

    /// One rule's arrows only.
    pub fn single(map: &GlobalMap, label: RuleChoice) -> Self {
        TransitionDiagram {
            states: map.states(),
            size: map.size(),
            count: map.config_count(),
            layers: vec![(label, map.image_table().to_vec())],
        }
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn config_count(&self) -> u64 {
        self.count
    }

    pub fn layers(&self) -> &[(RuleChoice, Vec<u64>)] {
        &self.layers
    }

    pub fn layer_of(&self, rule: RuleChoice) -> Option<&[u64]> {
        self.layers
            .iter()
            .find(|(label, _)| *label == rule)
            .map(|(_, table)| table.as_slice())
    }

    /// Every edge, vertices ascending, layers in stored order per vertex.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.count).flat_map(move |v| {
            self.layers.iter().map(move |(rule, table)| Edge {
                from: v,
                rule: *rule,
                to: table[v as usize],
            })
        })
    }

    pub fn edge_count(&self) -> u64 {
        self.count * self.layers.len() as u64
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Weakly connected components, each sorted ascending, ordered by smallest
/// member.
pub fn connected_components(diagram: &TransitionDiagram) -> Vec<Vec<u64>> {
    let n = diagram.count as usize;
    let mut uf = UnionFind::new(n);
    for (_, table) in &diagram.layers {
        for (v, &w) in table.iter().enumerate() {
            uf.union(v, w as usize);
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<u64>> = std::collections::BTreeMap::new();
    for v in 0..n {
        let root = uf.find(v);
        buckets.entry(root).or_default().push(v as u64);
    }
    buckets.into_values().collect()
}

/// Exact Hamiltonian verdict for one component, or the claim that the search
/// was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HamiltonianVerdict {
    /// A directed cycle through every component vertex exactly once, listed
    /// from the smallest encoding.
    True { cycle: Vec<u64> },
    False,
    /// Component larger than the search budget.
    Unknown { budget: u64 },
}

fn hamiltonian_search(
    len: usize,
    succs: &[Vec<usize>],
    visited: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return succs[last].binary_search(&0).is_ok();
    }
    for &w in &succs[last] {
        if !visited[w] {
            visited[w] = true;
            path.push(w);
            if hamiltonian_search(len, succs, visited, path) {
                return true;
            }
            path.pop();
            visited[w] = false;
        }
    }
    false
}

/// Backtracking search for a Hamiltonian cycle within one component.
pub fn hamiltonian_in_component(
    diagram: &TransitionDiagram,
    component: &[u64],
    budget: u64,
) -> HamiltonianVerdict {
    if component.len() as u64 > budget {
        return HamiltonianVerdict::Unknown { budget };
    }
    let index: std::collections::HashMap<u64, usize> = component
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let succs: Vec<Vec<usize>> = component
        .iter()
        .map(|&v| {
            let mut s: Vec<usize> = diagram
                .layers
                .iter()
                .map(|(_, table)| index[&table[v as usize]])
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut visited = vec![false; component.len()];
    visited[0] = true;
    let mut path = vec![0usize];
    if hamiltonian_search(component.len(), &succs, &mut visited, &mut path) {
        HamiltonianVerdict::True {
            cycle: path.into_iter().map(|i| component[i]).collect(),
        }
    } else {
        HamiltonianVerdict::False
    }
}

/// In and out degree per layer for one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeCensus {
    pub vertex: u64,
    pub out_f: u64,
    pub out_g: u64,
    pub in_f: u64,
    pub in_g: u64,
}

impl DegreeCensus {
    pub fn in_total(&self) -> u64 {
        self.in_f + self.in_g
    }

    pub fn out_total(&self) -> u64 {
        self.out_f + self.out_g
    }
}

fn component_degrees(diagram: &TransitionDiagram, component: &[u64]) -> Vec<DegreeCensus> {
    let index: std::collections::HashMap<u64, usize> = component
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut census: Vec<DegreeCensus> = component
        .iter()
        .map(|&v| DegreeCensus {
            vertex: v,
            out_f: 0,
            out_g: 0,
            in_f: 0,
            in_g: 0,
        })
        .collect();
    for (rule, table) in &diagram.layers {
        for (i, &v) in component.iter().enumerate() {
            let target = index[&table[v as usize]];
            match rule {
                RuleChoice::F => {
                    census[i].out_f += 1;
                    census[target].in_f += 1;
                }
                RuleChoice::G => {
                    census[i].out_g += 1;
                    census[target].in_g += 1;
                }
            }
        }
    }
    census
}

/// Whether every vertex of the component balances total in against total out
/// degree; with each component weakly connected this settles the existence of
/// an Euler circuit.
pub fn component_eulerian(diagram: &TransitionDiagram, component: &[u64]) -> bool {
    component_degrees(diagram, component)
        .iter()
        .all(|d| d.in_total() == d.out_total())
}

/// Euler-circuit existence in every component.
pub fn fully_eulerian(diagram: &TransitionDiagram) -> bool {
    connected_components(diagram)
        .iter()
        .all(|c| component_eulerian(diagram, c))
}

/// Walks the unique rule-alternating circuit from the component's smallest
/// vertex, starting with `first`. Succeeds when the walk closes after using
/// every edge of the component exactly once.
pub fn alternating_euler_circuit(
    diagram: &TransitionDiagram,
    component: &[u64],
    first: RuleChoice,
) -> Result<Option<Vec<Edge>>> {
    if diagram.layers.len() != 2 {
        return Err(Error::AlternatingNeedsBothRules);
    }
    let edge_count = 2 * component.len();
    let start = (component[0], first);
    let mut state = start;
    let mut circuit = Vec::with_capacity(edge_count);
    loop {
        let (v, label) = state;
        let to = diagram.layer_of(label).unwrap()[v as usize];
        circuit.push(Edge {
            from: v,
            rule: label,
            to,
        });
        state = (to, label.other());
        if state == start {
            break;
        }
        if circuit.len() >= edge_count {
            return Ok(None);
        }
    }
    Ok(if circuit.len() == edge_count {
        Some(circuit)
    } else {
        None
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentAnalysis {
    /// Smallest member, used as the component's name.
    pub id: u64,
    pub vertices: Vec<u64>,
    pub edge_count: u64,
    pub degrees: Vec<DegreeCensus>,
    pub eulerian: bool,
    pub hamiltonian: HamiltonianVerdict,
    /// The alternating circuit when one closes; absent for single-layer
    /// diagrams and for components where the forced walk falls short.
    pub alternating_euler: Option<Vec<Edge>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramAnalysis {
    /// At least one layer permutes the configuration space. Reported beside
    /// the exact verdicts rather than folded into them.
    pub sufficient_condition: bool,
    /// Conjunction of exact per-component verdicts; absent while any
    /// component is over budget and none refutes.
    pub fully_hamiltonian: Option<bool>,
    pub fully_eulerian: bool,
    pub components: Vec<ComponentAnalysis>,
}

fn layer_is_permutation(table: &[u64]) -> bool {
    let mut seen = vec![false; table.len()];
    for &w in table {
        if seen[w as usize] {
            return false;
        }
        seen[w as usize] = true;
    }
    true
}

/// Runs the component, Hamiltonian, and Euler analyses over the whole diagram.
pub fn analyze(
    diagram: &TransitionDiagram,
    hamiltonian_budget: u64,
    euler_first: RuleChoice,
) -> Result<DiagramAnalysis> {
    let comps = connected_components(diagram);
    let mut components = Vec::with_capacity(comps.len());
    for comp in &comps {
        let hamiltonian = hamiltonian_in_component(diagram, comp, hamiltonian_budget);
        let eulerian = component_eulerian(diagram, comp);
        let alternating_euler = if diagram.layers.len() == 2 {
            alternating_euler_circuit(diagram, comp, euler_first)?
        } else {
            None
        };
        components.push(ComponentAnalysis {
            id: comp[0],
            vertices: comp.clone(),
            edge_count: diagram.layers.len() as u64 * comp.len() as u64,
            degrees: component_degrees(diagram, comp),
            eulerian,
            hamiltonian,
            alternating_euler,
        });
    }
    let any_false = components
        .iter()
        .any(|c| c.hamiltonian == HamiltonianVerdict::False);
    let any_unknown = components
        .iter()
        .any(|c| matches!(c.hamiltonian, HamiltonianVerdict::Unknown { .. }));
    let fully_hamiltonian = if any_false {
        Some(false)
    } else if any_unknown {
        None
    } else {
        Some(true)
    };
    Ok(DiagramAnalysis {
        sufficient_condition: diagram
            .layers
            .iter()
            .any(|(_, table)| layer_is_permutation(table)),
        fully_hamiltonian,
        fully_eulerian: components.iter().all(|c| c.eulerian),
        components,
    })
}
