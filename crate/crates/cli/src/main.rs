use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bilink::campaign::{run_campaign, CampaignConfig, CampaignMode};
use bilink::classify::{classify, ClassifyError};
use bilink::diagram::{project_generic, CurveRef};
use bilink::extract::{edge_nlink, extract_nlink, verify_certificate, ExtractError, ExtractOptions, LinkCertificate, Method};
use bilink::format::{emit_certificate, emit_curve, emit_embedding, parse_certificate, parse_curve, parse_embedding};
use bilink::geometry::{random_closed_curve, random_embedding, validate_scene, EmbeddedGraph};
use bilink::graph::{parse_shape, PartitionedGraph};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bilink", version, about = "Mod-2 linking in embedded complete bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Follow the case analysis of the inductive step.
    Proof,
    /// Scan every disjoint pair of squares.
    Search,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Proof => Method::ProofGuided,
            MethodArg::Search => Method::Exhaustive,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a random embedding, or with --curve-of a random closed curve avoiding one.
    Gen {
        #[arg(long, default_value = "k5,5")]
        graph: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        bends: usize,
        /// Embedding the generated curve must avoid.
        #[arg(long)]
        curve_of: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print how a closed curve links the squares of a K_{3,3} subgraph.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// Six vertex labels, comma separated (or concatenated if single characters).
        #[arg(long)]
        subgraph: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extract a certified non-split n-component link.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value = "proof")]
        method: MethodArg,
        #[arg(long)]
        allow_fallback: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a certified link with a component through the given edge.
    EdgeLink {
        #[arg(long = "in")]
        input: PathBuf,
        /// Two vertex labels, e.g. `1,2`.
        #[arg(long)]
        edge: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value = "proof")]
        method: MethodArg,
        #[arg(long)]
        allow_fallback: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate under a fresh projection; exit 1 on any failed check.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run seeded extraction trials and write a report.
    Campaign {
        #[arg(long, default_value = "k5,5")]
        graph: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        bends: usize,
        #[arg(long, value_enum, default_value = "proof")]
        method: MethodArg,
        #[arg(long)]
        allow_fallback: bool,
        /// Extract a link through every edge of each embedding.
        #[arg(long)]
        edges: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

impl From<ExtractError> for Failure {
    fn from(e: ExtractError) -> Self {
        let code = if matches!(e, ExtractError::TheoremViolation { .. }) { 3 } else { 2 };
        Failure { code, msg: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_embedding(path: &Path) -> Result<EmbeddedGraph, Failure> {
    let e = parse_embedding(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let rep = validate_scene(&e, &[]);
    if !rep.is_valid() {
        return Err(usage(format!("invalid embedding: {}", rep.describe(e.graph()).join("; "))));
    }
    Ok(e)
}

fn split_labels(s: &str) -> Vec<String> {
    if s.contains(',') {
        s.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        s.chars().map(String::from).collect()
    }
}

fn summary(g: &PartitionedGraph, c: &LinkCertificate) -> String {
    let comps: Vec<String> = c.components.iter().map(|q| g.square_name(q)).collect();
    let cases: Vec<&str> = c.trace.iter().map(|s| s.case.as_str()).collect();
    format!(
        "link n={} components={} designated={} cases={} direction={}",
        c.components.len(),
        comps.join(","),
        c.designated,
        cases.join(","),
        c.direction
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Gen { graph, seed, bends, curve_of, vertices, out } => {
            let text = match curve_of {
                Some(p) => {
                    let e = load_embedding(&p)?;
                    emit_curve(&random_closed_curve(&e, &[], seed, vertices).map_err(usage)?)
                }
                None => {
                    let (r, s) = parse_shape(&graph).map_err(usage)?;
                    let g = PartitionedGraph::complete(r, s).map_err(usage)?;
                    emit_embedding(&random_embedding(&g, seed, bends).map_err(usage)?)
                }
            };
            write_out(&out, &text)
        }
        Cmd::Classify { input, curve, subgraph, seed } => {
            let e = load_embedding(&input)?;
            let c = parse_curve(&read(&curve)?).map_err(usage)?;
            let rep = validate_scene(&e, std::slice::from_ref(&c));
            if !rep.is_valid() {
                return Err(usage(format!("curve meets the embedding: {}", rep.describe(e.graph()).join("; "))));
            }
            let g = e.graph();
            let m = g.subgraph(&split_labels(&subgraph)).map_err(usage)?;
            if m.shape() != (3, 3) {
                return Err(usage("--subgraph must name three vertices of each part"));
            }
            let d = project_generic(&e, &[c], seed).map_err(usage)?;
            match classify(&d, &CurveRef::External(0), &m) {
                Ok(p) => {
                    println!("{}", p.describe(g));
                    Ok(())
                }
                Err(ClassifyError::Violation(v)) => {
                    println!("VIOLATION {}", v.reason);
                    Err(Failure { code: 3, msg: "linking pattern outside the trichotomy".into() })
                }
                Err(err) => Err(usage(err)),
            }
        }
        Cmd::Extract { input, n, method, allow_fallback, seed, out } => {
            let e = load_embedding(&input)?;
            let opts = ExtractOptions { method: method.into(), allow_fallback, seed };
            let c = extract_nlink(&e, n, &opts)?;
            eprintln!("{}", summary(e.graph(), &c));
            write_out(&out, &emit_certificate(e.graph(), &c))
        }
        Cmd::EdgeLink { input, edge, n, method, allow_fallback, seed, out } => {
            let e = load_embedding(&input)?;
            let ends = split_labels(&edge);
            let [a, b] = &ends[..] else {
                return Err(usage("--edge needs two labels"));
            };
            let target = e.graph().edge(a, b).map_err(usage)?;
            let opts = ExtractOptions { method: method.into(), allow_fallback, seed };
            let c = edge_nlink(&e, target, n, &opts)?;
            eprintln!("{}", summary(e.graph(), &c));
            write_out(&out, &emit_certificate(e.graph(), &c))
        }
        Cmd::Verify { input, cert, seed } => {
            let e = load_embedding(&input)?;
            let c = parse_certificate(&read(&cert)?, e.graph()).map_err(usage)?;
            let rep = verify_certificate(&e, &c, seed);
            if let Some(d) = &rep.direction {
                println!("direction {d}");
            }
            for k in &rep.checks {
                println!("{} {}: {}", if k.passed { "ok  " } else { "FAIL" }, k.name, k.detail);
            }
            if rep.passed() {
                Ok(())
            } else {
                Err(Failure { code: 1, msg: "certificate rejected".into() })
            }
        }
        Cmd::Campaign { graph, n, trials, seed, bends, method, allow_fallback, edges, out } => {
            let shape = parse_shape(&graph).map_err(usage)?;
            let cfg = CampaignConfig {
                shape,
                n,
                trials,
                seed0: seed,
                bends,
                method: method.into(),
                allow_fallback,
                mode: if edges { CampaignMode::EdgeLink } else { CampaignMode::Extract },
            };
            let r = run_campaign(&cfg)?;
            let mut text = serde_json::to_string_pretty(&r).expect("report serializes");
            text.push('\n');
            write_out(&out, &text)?;
            eprintln!(
                "{} trials, {} certificates, {} failures, {:.0} ms",
                r.trials,
                r.certificates,
                r.failures.len(),
                r.wall_clock.total_ms
            );
            if r.failures.iter().any(|f| f.theorem_violation) {
                Err(Failure { code: 3, msg: "theorem violation in campaign".into() })
            } else if !r.passed() {
                Err(Failure { code: 1, msg: "campaign had failures".into() })
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
