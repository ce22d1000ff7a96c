//! `jlab`: classify, verify, survey, construct and export Jacobson graphs.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jacobson::constructions::{self, ElementWalk, Strategy};
use jacobson::jgraph::{ExportFormat, DEFAULT_VERTEX_LIMIT};
use jacobson::oracles::{self, EulerOutcome, SearchBudget, DEFAULT_ORACLE_VERTEX_LIMIT, DEFAULT_TIME_LIMIT_MS};
use jacobson::survey::{self, CatalogFilter, FactorKind};
use jacobson::theorems::{self, HamStatus};
use jacobson::{Error, JacobsonGraph, ProductRing};

const EXIT_PARSE: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EXIT_SIZE_LIMIT: u8 = 5;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(name = "jlab", version, about = "Jacobson graphs of finite commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Largest graph handed to the exponential searches.
    #[arg(long, default_value_t = DEFAULT_ORACLE_VERTEX_LIMIT)]
    oracle_vertex_limit: usize,
    /// Wall-clock limit for each exponential search.
    #[arg(long, default_value_t = DEFAULT_TIME_LIMIT_MS)]
    time_limit_ms: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            vertex_limit: self.oracle_vertex_limit,
            time_limit_ms: self.time_limit_ms,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form classification, no graph work.
    Classify { spec: String },
    /// Closed forms compared against exact oracles; exit 3 on any discrepancy.
    Verify {
        spec: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Verification CSV over a catalog of rings.
    Survey {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_order: u64,
        /// Also list local rings.
        #[arg(long)]
        include_local: bool,
        /// Restrict factors to these kinds: z, gf, truncated.
        #[arg(long = "factor-kind", value_name = "KIND")]
        factor_kinds: Vec<FactorKind>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Validated witness walks as JSON.
    Construct {
        spec: String,
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The graph in DOT or edge-list form.
    Graph {
        spec: String,
        #[arg(long, default_value = "dot")]
        format: ExportFormat,
        #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
        max_vertices: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum WitnessKind {
    Hamiltonian,
    Eulerian,
    Pancyclic,
}

#[derive(Serialize)]
struct Witness {
    spec: String,
    kind: WitnessKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<Strategy>,
    walks: Vec<WitnessWalk>,
}

#[derive(Serialize)]
struct WitnessWalk {
    kind: oracles::WalkKind,
    length: usize,
    vertices: Vec<Vec<u32>>,
}

impl From<&ElementWalk> for WitnessWalk {
    fn from(w: &ElementWalk) -> Self {
        WitnessWalk {
            kind: w.kind,
            length: w.length(),
            vertices: w.elements.iter().map(|x| x.coords().to_vec()).collect(),
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VertexLimit { .. } | Error::TooLarge(_) => EXIT_SIZE_LIMIT,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

fn parse_ring(spec: &str) -> Result<ProductRing, Failure> {
    jacobson::parse(spec).map_err(|e| match e {
        Error::TooLarge(_) => Failure::from(e),
        e => Failure::new(EXIT_PARSE, format!("cannot parse `{spec}`: {e}")),
    })
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), Failure> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn hamiltonian_witness(ring: &ProductRing) -> Result<Witness, Failure> {
    if theorems::thm_hamiltonian(ring) == HamStatus::Neither {
        return Err(Failure::new(
            EXIT_INFEASIBLE,
            format!(
                "Hamiltonicity theorem: {} has neither a Hamiltonian cycle nor a Hamiltonian path \
                 (a local ring qualifies only when its residue field is Z2 and |J(R)| >= 2)",
                jacobson::format(ring)
            ),
        ));
    }
    let trace = constructions::construct_hamiltonian(ring)?;
    constructions::check_elements(ring, &trace.walk, true)?;
    Ok(Witness {
        spec: jacobson::format(ring),
        kind: WitnessKind::Hamiltonian,
        strategy: Some(trace.strategy),
        walks: vec![WitnessWalk::from(&trace.walk)],
    })
}

fn eulerian_witness(ring: &ProductRing) -> Result<Witness, Failure> {
    if !theorems::thm_eulerian(ring) && !theorems::thm_euler_trail(ring) {
        return Err(Failure::new(
            EXIT_INFEASIBLE,
            format!(
                "Eulerian theorems: {} has neither an Eulerian tour nor an Eulerian trail \
                 (tours need Z2 or an odd-order ring with R/J(R) = Z3^n, n >= 2; \
                 trails exist only for Z4, GF(2)[x]/(x^2), Z2 x Z2 and Z2 x GF(4))",
                jacobson::format(ring)
            ),
        ));
    }
    let g = JacobsonGraph::build(ring)?;
    let walk = match oracles::eulerian(&g) {
        EulerOutcome::Tour(w) | EulerOutcome::Trail(w) => w,
        EulerOutcome::Neither => {
            return Err(Failure::new(
                EXIT_DISCREPANCY,
                "the Eulerian classification predicts a tour or trail but the graph has none",
            ))
        }
    };
    oracles::validate_eulerian(&g, &walk).map_err(|v| Failure::new(EXIT_DISCREPANCY, v.to_string()))?;
    Ok(Witness {
        spec: jacobson::format(ring),
        kind: WitnessKind::Eulerian,
        strategy: None,
        walks: vec![WitnessWalk::from(&ElementWalk::from_walk(&g, &walk))],
    })
}

fn pancyclic_witness(ring: &ProductRing, budget: &SearchBudget) -> Result<Witness, Failure> {
    if !theorems::thm_pancyclic(ring) {
        return Err(Failure::new(
            EXIT_INFEASIBLE,
            format!(
                "pancyclicity theorem: {} is not pancyclic \
                 (local rings and Z2 x F for a field F are excluded)",
                jacobson::format(ring)
            ),
        ));
    }
    let walks = constructions::cycles_all_lengths(ring, budget)?;
    for w in &walks {
        constructions::check_elements(ring, w, false)?;
    }
    Ok(Witness {
        spec: jacobson::format(ring),
        kind: WitnessKind::Pancyclic,
        strategy: None,
        walks: walks.iter().map(WitnessWalk::from).collect(),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { spec } => {
            let ring = parse_ring(&spec)?;
            write_json(&theorems::classify(&ring), None)?;
            Ok(0)
        }
        Command::Verify { spec, budget } => {
            let ring = parse_ring(&spec)?;
            let report = survey::verify(&ring, &budget.budget());
            write_json(&report, None)?;
            Ok(if report.has_discrepancy() { EXIT_DISCREPANCY } else { 0 })
        }
        Command::Survey { max_order, include_local, factor_kinds, out, budget } => {
            let filter = CatalogFilter { max_order, include_local, kinds: factor_kinds };
            let reports = survey::survey(&filter, &budget.budget());
            let mut w = output(out.as_ref())?;
            survey::write_csv(&reports, &mut w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Construct { spec, kind, out, budget } => {
            let ring = parse_ring(&spec)?;
            let witness = match kind {
                WitnessKind::Hamiltonian => hamiltonian_witness(&ring)?,
                WitnessKind::Eulerian => eulerian_witness(&ring)?,
                WitnessKind::Pancyclic => pancyclic_witness(&ring, &budget.budget())?,
            };
            write_json(&witness, out.as_ref())?;
            Ok(0)
        }
        Command::Graph { spec, format, max_vertices } => {
            let ring = parse_ring(&spec)?;
            let g = JacobsonGraph::build_with_limit(&ring, max_vertices)?;
            let mut out = output(None)?;
            out.write_all(g.export(format).as_bytes())?;
            out.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("jlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
