//! Command-line front end: argument shapes and the handlers behind each
//! subcommand. Kept in the library so the handlers stay testable.

use crate::config::Configuration;
use crate::dot::{diagram_dot, partial_dot};
use crate::dynamics::{partial_transition_diagram, recurrence_analysis, RecurrenceAnalysis};
use crate::error::{Error, Result};
use crate::global_map::GlobalMap;
use crate::graph::{analyze, DiagramAnalysis, TransitionDiagram, DEFAULT_HAMILTONIAN_BUDGET};
use crate::reach::{classify, find_restricted_initial_set};
use crate::render::{render_spacetime, write_ppm, RenderSpec};
use crate::rule::LocalRule;
use crate::sequence::{RuleChoice, RuleSequence};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use serde::Serialize;
use std::io::Write;

#[derive(Debug, Parser)]
#[command(
    name = "tnuca",
    version,
    about = "Cellular automata on a ring with two local rules applied on a temporal schedule"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reversibility taxonomy of a rule pair under a schedule, as JSON
    Classify(ClassifyArgs),
    /// Transition diagram as Graphviz DOT
    Diagram(DiagramArgs),
    /// Spacetime raster of one trajectory, written as a binary PPM
    Spacetime(SpacetimeArgs),
    /// Recurrence analysis along one trajectory, as JSON
    Cycles(CyclesArgs),
    /// Components, Hamiltonicity, and Euler structure of the combined diagram, as JSON
    Graph(GraphArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Rule code applied when the schedule says F
    #[arg(long)]
    pub f: u128,
    /// Rule code applied when the schedule says G
    #[arg(long)]
    pub g: u128,
    /// Ring size in cells
    #[arg(long)]
    pub n: usize,
    /// States per cell
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    /// Schedule: A005408, A001651, A018252, pat:BITS, or bits:BITS
    #[arg(long)]
    pub seq: String,
    /// Step cap for schedules without a period
    #[arg(long)]
    pub horizon: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramMode {
    /// Only the first rule's arrows
    SingleF,
    /// Only the second rule's arrows
    SingleG,
    /// Both rules' arrows on one vertex set
    Combined,
    /// Arrows actually used by a restriction chain
    Partial,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[arg(long)]
    pub f: u128,
    #[arg(long)]
    pub g: u128,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    #[arg(long, value_enum, default_value_t = DiagramMode::Combined)]
    pub mode: DiagramMode,
    /// Schedule; required for partial mode
    #[arg(long, required_if_eq("mode", "partial"))]
    pub seq: Option<String>,
    /// Initial set for partial mode: "all", "auto", or comma-separated encodings
    #[arg(long, default_value = "all")]
    pub cin: String,
    #[arg(long)]
    pub horizon: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SpacetimeArgs {
    #[arg(long)]
    pub f: u128,
    #[arg(long)]
    pub g: u128,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    #[arg(long)]
    pub seq: String,
    /// Number of steps below the initial row
    #[arg(long)]
    pub steps: u64,
    /// Starting configuration: an encoding, "center", or "random:SEED"
    #[arg(long)]
    pub init: String,
    /// Output PPM path
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Pixels per cell
    #[arg(long, default_value_t = 1)]
    pub scale: u32,
}

#[derive(Debug, Args)]
pub struct CyclesArgs {
    #[arg(long)]
    pub f: u128,
    #[arg(long)]
    pub g: u128,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    #[arg(long)]
    pub seq: String,
    /// Trajectory start encoding
    #[arg(long)]
    pub init: u64,
    /// Report only this configuration
    #[arg(long)]
    pub target: Option<u64>,
    #[arg(long)]
    pub horizon: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EulerFirst {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
}

impl From<EulerFirst> for RuleChoice {
    fn from(v: EulerFirst) -> Self {
        match v {
            EulerFirst::F => RuleChoice::F,
            EulerFirst::G => RuleChoice::G,
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub f: u128,
    #[arg(long)]
    pub g: u128,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    /// Largest component size the exact Hamiltonian search will attempt
    #[arg(long, default_value_t = DEFAULT_HAMILTONIAN_BUDGET)]
    pub hamiltonian_budget: u64,
    /// Rule the alternating circuit leaves with
    #[arg(long, value_enum, default_value_t = EulerFirst::F)]
    pub euler_first: EulerFirst,
}

fn build_pair(f: u128, g: u128, k: u8, n: usize) -> Result<(GlobalMap, GlobalMap)> {
    let f = GlobalMap::build(&LocalRule::from_code(k, 3, f)?, n)?;
    let g = GlobalMap::build(&LocalRule::from_code(k, 3, g)?, n)?;
    Ok((f, g))
}

fn parse_initial(spec: &str, k: u8, n: usize) -> Result<Configuration> {
    if spec == "center" {
        let mut cells = vec![0u8; n];
        cells[n / 2] = 1;
        return Configuration::new(cells, k);
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| Error::BadInitSpec {
            spec: spec.to_string(),
        })?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cells = (0..n).map(|_| rng.gen_range(0..k)).collect();
        return Configuration::new(cells, k);
    }
    let code: u128 = spec.parse().map_err(|_| Error::BadInitSpec {
        spec: spec.to_string(),
    })?;
    Configuration::from_code(code, k, n)
}

fn parse_cin(
    spec: &str,
    f: &GlobalMap,
    g: &GlobalMap,
    seq: &RuleSequence,
    horizon: Option<u64>,
) -> Result<Vec<u64>> {
    match spec {
        "all" => Ok((0..f.config_count()).collect()),
        "auto" => find_restricted_initial_set(f, g, seq, horizon)?
            .found
            .ok_or(Error::NoRestrictedInitialSet),
        list => {
            let mut cin = Vec::new();
            for part in list.split(',') {
                let e: u64 = part.trim().parse().map_err(|_| Error::BadCinSpec {
                    spec: spec.to_string(),
                })?;
                if e >= f.config_count() {
                    return Err(Error::BadEncoding {
                        code: e as u128,
                        k: f.states(),
                        n: f.size(),
                    });
                }
                cin.push(e);
            }
            Ok(cin)
        }
    }
}

pub fn cmd_classify(args: &ClassifyArgs, out: &mut impl Write) -> Result<()> {
    let (f, g) = build_pair(args.f, args.g, args.k, args.n)?;
    let seq = RuleSequence::parse(&args.seq)?;
    let report = classify(&f, &g, &seq, args.horizon)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

pub fn cmd_diagram(args: &DiagramArgs, out: &mut impl Write) -> Result<()> {
    let (f, g) = build_pair(args.f, args.g, args.k, args.n)?;
    let text = match args.mode {
        DiagramMode::SingleF => diagram_dot(&TransitionDiagram::single(&f, RuleChoice::F)),
        DiagramMode::SingleG => diagram_dot(&TransitionDiagram::single(&g, RuleChoice::G)),
        DiagramMode::Combined => diagram_dot(&TransitionDiagram::combined(&f, &g)?),
        DiagramMode::Partial => {
            let seq = RuleSequence::parse(args.seq.as_deref().unwrap_or_default())?;
            let cin = parse_cin(&args.cin, &f, &g, &seq, args.horizon)?;
            partial_dot(&partial_transition_diagram(&f, &g, &seq, &cin, args.horizon)?)
        }
    };
    write!(out, "{text}")?;
    Ok(())
}

pub fn cmd_spacetime(args: &SpacetimeArgs) -> Result<()> {
    let f = LocalRule::from_code(args.k, 3, args.f)?;
    let g = LocalRule::from_code(args.k, 3, args.g)?;
    let seq = RuleSequence::parse(&args.seq)?;
    let initial = parse_initial(&args.init, args.k, args.n)?;
    let spec = RenderSpec {
        scale: args.scale,
        ..RenderSpec::default()
    };
    let image = render_spacetime(&f, &g, &seq, &initial, args.steps, &spec)?;
    let mut file = std::fs::File::create(&args.out)?;
    write_ppm(&image, &mut file)?;
    Ok(())
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CyclesInputs {
    f: u128,
    g: u128,
    n: usize,
    k: u8,
    sequence: String,
    initial: u64,
    target: Option<u64>,
    horizon: Option<u64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CyclesOutput {
    schema_version: u32,
    inputs: CyclesInputs,
    #[serde(flatten)]
    analysis: RecurrenceAnalysis,
}

pub fn cmd_cycles(args: &CyclesArgs, out: &mut impl Write) -> Result<()> {
    let (f, g) = build_pair(args.f, args.g, args.k, args.n)?;
    let seq = RuleSequence::parse(&args.seq)?;
    let analysis = recurrence_analysis(&f, &g, &seq, args.init, args.target, args.horizon)?;
    let output = CyclesOutput {
        schema_version: 1,
        inputs: CyclesInputs {
            f: args.f,
            g: args.g,
            n: args.n,
            k: args.k,
            sequence: seq.identifier().to_string(),
            initial: args.init,
            target: args.target,
            horizon: args.horizon,
        },
        analysis,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&output)?)?;
    Ok(())
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphInputs {
    f: u128,
    g: u128,
    n: usize,
    k: u8,
    hamiltonian_budget: u64,
    euler_first: RuleChoice,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphOutput {
    schema_version: u32,
    inputs: GraphInputs,
    component_count: usize,
    #[serde(flatten)]
    analysis: DiagramAnalysis,
}

pub fn cmd_graph(args: &GraphArgs, out: &mut impl Write) -> Result<()> {
    let (f, g) = build_pair(args.f, args.g, args.k, args.n)?;
    let diagram = TransitionDiagram::combined(&f, &g)?;
    let analysis = analyze(&diagram, args.hamiltonian_budget, args.euler_first.into())?;
    let output = GraphOutput {
        schema_version: 1,
        inputs: GraphInputs {
            f: args.f,
            g: args.g,
            n: args.n,
            k: args.k,
            hamiltonian_budget: args.hamiltonian_budget,
            euler_first: args.euler_first.into(),
        },
        component_count: analysis.components.len(),
        analysis,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&output)?)?;
    Ok(())
}

/// Dispatches one parsed invocation, writing any stdout payload to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    match &cli.command {
        Command::Classify(args) => cmd_classify(args, out),
        Command::Diagram(args) => cmd_diagram(args, out),
        Command::Spacetime(args) => cmd_spacetime(args),
        Command::Cycles(args) => cmd_cycles(args, out),
        Command::Graph(args) => cmd_graph(args, out),
    }
}
