//! Command-line front end: exact sat/ex solving, construction building,
//! verification suites, and the structural formula, with JSON (default),
//! CSV, or markdown output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 search
//! budget exhausted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use cgh::constructions::{construction_report, CONSTRUCTION_NAMES};
use cgh::cyclic::Cgh;
use cgh::m1::{extract_tuple, structural_sat};
use cgh::patterns::{classify_pair, PatternId};
use cgh::saturation::{
    closure, enumerate_minimum_saturated, ex_exact, is_saturated, sat_exact, DEFAULT_BUDGET,
};
use cgh::verify::{run_suite, CheckStatus, SuiteReport, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "cgh", version, about = "saturation problems in convex geometric hypergraphs")]
struct Cli {
    /// Worker thread count (default: CGH_SAT_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file providing defaults for --threads, --format, --budget
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Default, Deserialize)]
struct Config {
    threads: Option<usize>,
    format: Option<String>,
    budget: Option<f64>,
}

#[derive(Args)]
struct EdgesArg {
    /// Number of vertices on the circle
    #[arg(long)]
    n: usize,
    /// An edge as comma-separated vertices; repeat for each edge
    #[arg(long = "edge", value_name = "V,V,..")]
    edges: Vec<String>,
}

impl EdgesArg {
    fn cgh(&self) -> Result<Cgh, String> {
        let mut parsed: Vec<Vec<usize>> = Vec::new();
        for e in &self.edges {
            let vs: Result<Vec<usize>, _> = e.split(',').map(|v| v.trim().parse()).collect();
            parsed.push(vs.map_err(|_| format!("bad edge '{e}'"))?);
        }
        let r = parsed.first().map(|e| e.len()).unwrap_or(3);
        Cgh::from_edges(self.n, r, parsed).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact saturation number sat(n, F)
    Sat {
        #[arg(long)]
        n: usize,
        /// Pattern tag: M1, M2, M3, S1, S2, S3, D1, D2, G0, G1, G2, or M1r:<r>
        #[arg(long)]
        pattern: String,
        /// Search node budget (accepts scientific notation, e.g. 1e8)
        #[arg(long)]
        budget: Option<String>,
        /// Also enumerate all minimum saturated families up to rotation
        #[arg(long)]
        enumerate: bool,
    },
    /// Exact extremal number ex(n, F)
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        budget: Option<String>,
    },
    /// Build a named construction and report its recomputed flags
    Construct {
        /// One of: star_plus, consecutive_triples, s2_blocks, s1_k4_blocks,
        /// m2, s3_recursive, d1_chords, d2_sum
        name: String,
        #[arg(long)]
        n: usize,
        /// Exit nonzero unless the construction is free and saturated
        #[arg(long)]
        verify: bool,
    },
    /// Run a named verification suite
    Verify {
        /// One of: thm11, thm12-lower, thm12-upper, structure, lambda-rho,
        /// move-delta, appendix-bounds, table1
        suite: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        budget: Option<String>,
    },
    /// Saturation number from the structural formula (no search)
    StructuralSat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Classify the pattern formed by two edges
    Classify {
        #[arg(long)]
        n: usize,
        /// First edge, comma-separated
        #[arg(long)]
        e: String,
        /// Second edge, comma-separated
        #[arg(long)]
        f: String,
    },
    /// Deterministic completion of a free family to a saturated one
    Closure {
        #[command(flatten)]
        family: EdgesArg,
        #[arg(long)]
        pattern: String,
    },
    /// Witness tuple of a saturated family (two-disjoint-edges pattern)
    ExtractTuple {
        #[command(flatten)]
        family: EdgesArg,
    },
}

fn parse_budget(s: Option<&String>, config: &Config) -> Result<u64, String> {
    match s {
        Some(s) => {
            let v: f64 = s.parse().map_err(|_| format!("bad budget '{s}'"))?;
            if v < 1.0 || !v.is_finite() {
                return Err(format!("bad budget '{s}'"));
            }
            Ok(v as u64)
        }
        None => Ok(config.budget.map(|v| v as u64).unwrap_or(DEFAULT_BUDGET)),
    }
}

fn parse_pattern(s: &str) -> Result<PatternId, String> {
    s.parse::<PatternId>().map_err(|e| e.to_string())
}

fn parse_edge(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| format!("bad edge '{s}'")))
        .collect()
}

#[derive(Serialize)]
struct SolveOut {
    n: usize,
    #[serde(rename = "F")]
    pattern: PatternId,
    value: usize,
    exhaustive: bool,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimum_families: Option<Vec<Cgh>>,
}

/// A row-oriented view of a report for the csv and markdown renderers.
struct Rows {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn render(rows: &Rows, format: Format) -> String {
    match format {
        Format::Json => unreachable!("json is rendered from the report itself"),
        Format::Csv => {
            let mut out = rows.header.join(",");
            for r in &rows.rows {
                out.push('\n');
                out.push_str(&r.join(","));
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("| {} |", rows.header.join(" | "));
            out.push_str(&format!("\n|{}|", rows.header.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")));
            for r in &rows.rows {
                out.push_str(&format!("\n| {} |", r.join(" | ")));
            }
            out
        }
    }
}

fn suite_rows(rep: &SuiteReport) -> Rows {
    if rep.suite == "table1" {
        Rows {
            header: vec!["pattern", "n", "sat_exact", "paper_lower", "paper_upper", "construction_size"],
            rows: rep
                .table
                .iter()
                .map(|r| {
                    vec![
                        r.pattern.clone(),
                        r.n.to_string(),
                        r.sat_exact.map(|v| v.to_string()).unwrap_or_default(),
                        r.paper_lower.to_string(),
                        r.paper_upper.map(|v| v.to_string()).unwrap_or_default(),
                        r.construction_size.map(|v| v.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        }
    } else {
        Rows {
            header: vec!["check", "status", "detail"],
            rows: rep
                .checks
                .iter()
                .map(|c| {
                    let status = match c.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Warn => "warn",
                        CheckStatus::Fail => "fail",
                    };
                    vec![c.name.clone(), status.to_string(), c.detail.replace(',', ";")]
                })
                .collect(),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let config: Config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            toml::from_str(&text).map_err(|e| format!("bad config: {e}"))?
        }
        None => Config::default(),
    };
    let threads = cli.threads.or(config.threads).or_else(|| {
        std::env::var("CGH_SAT_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let format = cli.format.unwrap_or(match config.format.as_deref() {
        Some("csv") => Format::Csv,
        Some("markdown") => Format::Markdown,
        _ => Format::Json,
    });

    match cli.cmd {
        Cmd::Sat { n, pattern, budget, enumerate } => {
            let p = parse_pattern(&pattern)?;
            let budget = parse_budget(budget.as_ref(), &config)?;
            let rep = sat_exact(n, p, budget).map_err(|e| e.to_string())?;
            let minimum_families = if enumerate && rep.exhaustive {
                Some(enumerate_minimum_saturated(n, p, budget).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let out = SolveOut {
                n,
                pattern: p,
                value: rep.value,
                exhaustive: rep.exhaustive,
                nodes: rep.nodes,
                minimum_families,
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&out).unwrap()),
                f => {
                    let rows = Rows {
                        header: vec!["n", "F", "value", "exhaustive", "nodes"],
                        rows: vec![vec![
                            n.to_string(),
                            p.to_string(),
                            rep.value.to_string(),
                            rep.exhaustive.to_string(),
                            rep.nodes.to_string(),
                        ]],
                    };
                    println!("{}", render(&rows, f));
                }
            }
            Ok(if rep.exhaustive { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Cmd::Ex { n, pattern, budget } => {
            let p = parse_pattern(&pattern)?;
            let budget = parse_budget(budget.as_ref(), &config)?;
            let rep = ex_exact(n, p, budget).map_err(|e| e.to_string())?;
            let out = SolveOut {
                n,
                pattern: p,
                value: rep.value,
                exhaustive: rep.exhaustive,
                nodes: rep.nodes,
                minimum_families: None,
            };
            println!("{}", serde_json::to_string(&out).unwrap());
            Ok(if rep.exhaustive { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Cmd::Construct { name, n, verify } => {
            if !CONSTRUCTION_NAMES.contains(&name.as_str())
                && name != "m2_construction"
                && name != "d2_sum_construction"
            {
                return Err(format!(
                    "unknown construction '{name}'; available: {}",
                    CONSTRUCTION_NAMES.join(", ")
                ));
            }
            let rep = construction_report(&name, n).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&rep).unwrap());
            if verify && !(rep.free && rep.saturated) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, nmax, budget } => {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                return Err(format!(
                    "unknown suite '{suite}'; available: {}",
                    SUITE_NAMES.join(", ")
                ));
            }
            let budget = parse_budget(budget.as_ref(), &config)?;
            let rep = run_suite(&suite, nmax, budget).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&rep).unwrap()),
                f => println!("{}", render(&suite_rows(&rep), f)),
            }
            for c in &rep.checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Warn => "WARN",
                    CheckStatus::Fail => "FAIL",
                };
                eprintln!("{status} {}: {}", c.name, c.detail);
            }
            Ok(if rep.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::StructuralSat { n, r } => {
            let value = structural_sat(n, r).map_err(|e| e.to_string())?;
            println!("{}", json!({"n": n, "r": r, "value": value}));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { n, e, f } => {
            let e = parse_edge(&e)?;
            let f = parse_edge(&f)?;
            let p = classify_pair(n, &e, &f).map_err(|err| err.to_string())?;
            println!("{}", json!({"n": n, "pattern": p}));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Closure { family, pattern } => {
            let p = parse_pattern(&pattern)?;
            let h = family.cgh()?;
            let closed = closure(&h, p).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&closed).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ExtractTuple { family } => {
            let h = family.cgh()?;
            let p = if h.r == 3 { PatternId::M1 } else { PatternId::M1r(h.r) };
            if !is_saturated(&h, p).map_err(|e| e.to_string())? {
                return Err("input family is not saturated for the disjoint-pair pattern".into());
            }
            let c = extract_tuple(&h).map_err(|e| e.to_string())?;
            println!("{}", json!({"n": c.n, "points": c.points}));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
