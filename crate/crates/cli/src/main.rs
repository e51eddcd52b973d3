//! `dpcolor`: chromatic polynomials, DP color functions, certificates and
//! the verification harness from the command line.
//!
//! Exit status: 0 on success, 1 when a check fails or a search proves that
//! nothing exists, 2 on usage errors, refused searches and inconclusive
//! results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dpcolor_core::constructions::{
    clique_sum, join_complete, parse_graph_spec, phi_family, theta, NamedGraph, ThetaSpec,
};
use dpcolor_core::cover::{
    count_transversals, count_transversals_ie, dp_color_function_with, Cover, CoverError, CoverJson, SearchOptions,
    DEFAULT_BUDGET,
};
use dpcolor_core::exec::Exec;
use dpcolor_core::graph::io::{parse_graph, to_dot, to_edge_list};
use dpcolor_core::graph::DEFAULT_TREE_CAP;
use dpcolor_core::poly::{chromatic_number, chromatic_polynomial};
use dpcolor_core::structure::{
    edge_profile, even_ell_witness, girth, gt_certificate_with, CertKind, CertificateOutcome,
};
use dpcolor_core::verify::{default_corpus, load_corpus, verify_theorems, VerifyOptions};
use dpcolor_core::Graph;

#[derive(Parser, Debug)]
#[command(name = "dpcolor", version, about = "Chromatic polynomials and DP color functions of small graphs")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Run every search on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the chromatic polynomial.
    Poly { graph: String },
    /// Compute P_DP(G, m) with minimizing gauge assignments.
    Dpf {
        graph: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Largest number of witnesses to print.
        #[arg(long, default_value_t = 1)]
        witnesses: usize,
    },
    /// Operations on explicit covers.
    Cover {
        #[command(subcommand)]
        action: CoverCommand,
    },
    /// Edge profiles, girth and the even-ℓ witness.
    Analyze { graph: String },
    /// Search spanning-tree certificates.
    Certify {
        graph: String,
        /// Require fundamental-cycle witnesses.
        #[arg(long)]
        gt0: bool,
        #[arg(long, default_value_t = DEFAULT_TREE_CAP)]
        tree_cap: usize,
    },
    /// Build a graph from one of the families.
    Construct {
        /// Print Graphviz DOT instead of an edge list.
        #[arg(long, global = true)]
        dot: bool,
        #[command(subcommand)]
        family: ConstructCommand,
    },
    /// Run the consistency checks over a corpus.
    Verify {
        /// Directory with manifest.txt and/or graph files; defaults to the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_TREE_CAP)]
        tree_cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CoverCommand {
    /// Count the transversals of a cover given as JSON.
    Count {
        graph: String,
        cover: PathBuf,
        /// Also count by inclusion-exclusion.
        #[arg(long)]
        ie: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Theta graph from path lengths, e.g. `theta 1 2 2`.
    Theta {
        #[arg(required = true, num_args = 2..)]
        lengths: Vec<usize>,
    },
    /// Triangle-gluing family of a graph (prints one graph per member).
    Phi {
        graph: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// One of the fixed figure graphs.
    Named { name: String },
    /// Identify clique c2 of g2 with clique c1 of g1.
    CliqueSum {
        g1: String,
        g2: String,
        #[arg(long, value_delimiter = ',')]
        c1: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        c2: Vec<usize>,
    },
    /// Join with a complete graph K_p.
    Join {
        graph: String,
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

/// What a command produced: JSON, a plain-text rendering, and an exit code.
struct Output {
    json: Value,
    table: String,
    code: u8,
    /// Print `table` whatever the format.
    raw: bool,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output {
            json,
            table,
            code: 0,
            raw: false,
        }
    }
}

/// A file path if one exists, otherwise a generator string like `C5`.
fn load_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
        return parse_graph(&text).map_err(|e| Failure::usage(format!("{arg}: {e}")));
    }
    parse_graph_spec(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges() })
}

fn cover_failure(e: CoverError) -> Failure {
    match e {
        CoverError::BudgetExceeded { .. } => Failure::usage(format!("search refused: {e}")),
        other => Failure::usage(other),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Poly { graph } => {
            let g = load_graph(graph)?;
            let p = chromatic_polynomial(&g);
            Ok(Output::ok(
                json!({ "graph": graph_json(&g), "coefficients": p, "polynomial": p.to_string() }),
                format!("P(G, x) = {p}"),
            ))
        }
        Command::Dpf {
            graph,
            m,
            budget,
            witnesses,
        } => dpf(graph, *m, *budget, *witnesses, exec),
        Command::Cover {
            action: CoverCommand::Count { graph, cover, ie },
        } => {
            let g = load_graph(graph)?;
            let text = fs::read_to_string(cover).map_err(|e| Failure::usage(format!("{}: {e}", cover.display())))?;
            let parsed: CoverJson = serde_json::from_str(&text).map_err(Failure::usage)?;
            let cover = Cover::from_json(g, &parsed).map_err(Failure::usage)?;
            let count = count_transversals(&cover);
            let mut out = json!({ "m": cover.fold(), "count": count.to_string(), "h0_isomorphic": cover.is_h0_isomorphic() });
            let mut table = format!("transversals: {count}");
            if *ie {
                let by_ie = count_transversals_ie(&cover).map_err(Failure::usage)?;
                out["count_ie"] = json!(by_ie.to_string());
                table.push_str(&format!("\ninclusion-exclusion: {by_ie}"));
            }
            Ok(Output::ok(out, table))
        }
        Command::Analyze { graph } => analyze(graph),
        Command::Certify { graph, gt0, tree_cap } => certify(graph, *gt0, *tree_cap, exec),
        Command::Construct { dot, family } => construct(family, *dot),
        Command::Verify {
            corpus,
            max_m,
            budget,
            tree_cap,
        } => {
            let entries = match corpus {
                Some(dir) => load_corpus(dir).map_err(Failure::usage)?,
                None => default_corpus(),
            };
            let opts = VerifyOptions {
                max_m: *max_m,
                budget: *budget,
                exec,
                seed: cli.seed,
                tree_cap: *tree_cap,
            };
            let report = verify_theorems(&entries, &opts);
            let mut table = format!("{} ({})\n", "verify", report.semantics);
            for c in &report.checks {
                table.push_str(&format!(
                    "{} {:<24} items={} skipped={}  {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.items,
                    c.skipped,
                    c.detail
                ));
            }
            table.push_str(&format!("pass={} fail={}", report.summary.pass, report.summary.fail));
            let code = if report.all_passed() { 0 } else { 1 };
            let json = serde_json::to_value(&report).map_err(Failure::usage)?;
            Ok(Output {
                json,
                table,
                code,
                raw: false,
            })
        }
    }
}

fn dpf(graph: &str, m: usize, budget: u128, witnesses: usize, exec: Exec) -> Result<Output, Failure> {
    let g = load_graph(graph)?;
    if !g.is_connected() {
        return Err(Failure::usage("dpf needs a connected graph; run it per component"));
    }
    let opts = SearchOptions {
        budget,
        exec,
        max_witnesses: witnesses,
        ..SearchOptions::default()
    };
    let r = dp_color_function_with(&g, m, &opts).map_err(cover_failure)?;
    let wit: Vec<_> = r.witnesses.iter().map(|w| w.to_json()).collect();
    let json = json!({
        "m": m,
        "value": r.value.to_string(),
        "P": r.chromatic.to_string(),
        "equal": r.equals_chromatic(),
        "assignments": r.assignments.to_string(),
        "minimizers": r.minimizers.to_string(),
        "witnesses": wit,
    });
    let mut table = format!("{}\nP(G, {m}) = {}\nminimizers: {}", r.value, r.chromatic, r.minimizers);
    for w in &wit {
        table.push_str(&format!("\nwitness: {}", serde_json::to_string(w).unwrap_or_default()));
    }
    Ok(Output::ok(json, table))
}

fn analyze(graph: &str) -> Result<Output, Failure> {
    let g = load_graph(graph)?;
    let mut rows = Vec::new();
    let mut table = String::from("edge  ell  shortest_cycles  bridge\n");
    for &e in g.edges() {
        let p = edge_profile(&g, e).map_err(Failure::usage)?;
        table.push_str(&format!(
            "{:<5} {:<4} {:<16} {}\n",
            e.key(),
            p.ell.to_string(),
            p.shortest_cycle_count.to_string(),
            p.is_bridge
        ));
        rows.push(json!({
            "edge": e,
            "ell": p.ell,
            "is_bridge": p.is_bridge,
            "shortest_cycle_count": p.shortest_cycle_count.to_string(),
        }));
    }
    let witness = even_ell_witness(&g);
    table.push_str(&format!(
        "girth: {}\neven-ell witness: {}\nchromatic number: {}",
        girth(&g),
        witness.map_or("none".to_string(), |e| e.key()),
        chromatic_number(&g)
    ));
    Ok(Output::ok(
        json!({
            "graph": graph_json(&g),
            "profiles": rows,
            "girth": girth(&g),
            "even_ell_witness": witness,
            "cyclomatic_number": g.cyclomatic_number(),
            "chromatic_number": chromatic_number(&g),
        }),
        table,
    ))
}

fn certify(graph: &str, gt0: bool, tree_cap: usize, exec: Exec) -> Result<Output, Failure> {
    let g = load_graph(graph)?;
    let kind = if gt0 { CertKind::Gt0 } else { CertKind::Gt };
    let outcome = gt_certificate_with(&g, kind, tree_cap, exec).map_err(Failure::usage)?;
    Ok(match outcome {
        CertificateOutcome::Found { cert, trees_checked } => {
            let c = cert.to_json();
            Output::ok(
                json!({ "outcome": "found", "trees_checked": trees_checked, "certificate": c }),
                format!(
                    "certificate ({kind:?}) after {trees_checked} trees\n{}",
                    serde_json::to_string_pretty(&c).unwrap_or_default()
                ),
            )
        }
        CertificateOutcome::NoneDefinitive { trees_checked } => Output {
            json: json!({ "outcome": "none", "definitive": true, "trees_checked": trees_checked }),
            table: format!("no certificate ({kind:?}); all {trees_checked} spanning trees checked"),
            code: 1,
            raw: false,
        },
        CertificateOutcome::Inconclusive {
            trees_checked,
            total_trees,
        } => Output {
            json: json!({
                "outcome": "inconclusive",
                "definitive": false,
                "trees_checked": trees_checked,
                "total_trees": total_trees.to_string(),
            }),
            table: format!("inconclusive: {trees_checked} of {total_trees} spanning trees checked"),
            code: 2,
            raw: false,
        },
    })
}

fn construct(family: &ConstructCommand, dot: bool) -> Result<Output, Failure> {
    let graphs: Vec<(String, Graph)> = match family {
        ConstructCommand::Theta { lengths } => {
            let spec = ThetaSpec::new(lengths.clone()).map_err(Failure::usage)?;
            vec![("theta".into(), theta(&spec))]
        }
        ConstructCommand::Phi { graph, depth } => {
            let q = load_graph(graph)?;
            phi_family(&q, *depth)
                .map_err(Failure::usage)?
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("phi_{i}"), g))
                .collect()
        }
        ConstructCommand::Named { name } => {
            let named: NamedGraph = name.parse().map_err(Failure::usage)?;
            vec![(named.name().replace('-', "_"), named.graph())]
        }
        ConstructCommand::CliqueSum { g1, g2, c1, c2 } => {
            let g = clique_sum(&load_graph(g1)?, &load_graph(g2)?, c1, c2).map_err(Failure::usage)?;
            vec![("clique_sum".into(), g)]
        }
        ConstructCommand::Join { graph, p } => vec![("join".into(), join_complete(&load_graph(graph)?, *p))],
    };
    let text: Vec<String> = graphs
        .iter()
        .map(|(name, g)| if dot { to_dot(g, name) } else { to_edge_list(g) })
        .collect();
    let json = Value::Array(graphs.iter().map(|(_, g)| graph_json(g)).collect());
    Ok(Output {
        raw: dot,
        ..Output::ok(json, text.join("\n"))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json if !out.raw => serde_json::to_string_pretty(&out.json).unwrap_or_default(),
                _ => out.table.trim_end().to_string(),
            };
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
