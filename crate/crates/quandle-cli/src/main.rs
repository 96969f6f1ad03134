//! `quandle`: batch commands over Cayley tables, presentations, and link
//! diagrams. Every command is deterministic given its inputs and flags;
//! output is byte-identical across runs and worker counts.
//!
//! Exit codes: 0 success, 1 domain failure (invalid table, unknown verdict,
//! no witness, bound exceeded), 2 usage or I/O errors.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quandle::{
    associated_group, braid_closure, count_colorings, link_group, parse_braid, parse_pd,
    separate, wirtinger_quandle, word_problem, Budget, FiniteQuandle, LinkDiagram,
    QuandlePresentation, WpVerdict, DEFAULT_CATALOG_BOUND,
};

use output::Format;

#[derive(Parser)]
#[command(name = "quandle", version, about = "A workbench for finite quandles and link quandles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest census order used for catalogs and separation sweeps
    #[arg(long, global = true, default_value_t = DEFAULT_CATALOG_BOUND)]
    catalog_max_order: usize,

    /// Cap on word length in the rewrite search
    #[arg(long, global = true, default_value_t = Budget::default().max_len)]
    budget_len: usize,

    /// Node budget for the rewrite search and separation sweeps
    #[arg(long, global = true, default_value_t = Budget::default().max_nodes)]
    budget_nodes: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (0 uses all cores)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Seed for randomized workloads; reserved, every current command is
    /// deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Cayley-table JSON file against the quandle axioms
    Validate {
        /// `{"order": n, "table": [[...], ...], "label": "..."}`
        file: PathBuf,
    },
    /// Emit the census of order-n quandles up to isomorphism
    Catalog { n: usize },
    /// Count colorings of a link or presentation by a finite quandle
    Colorings {
        #[command(flatten)]
        source: Source,
        /// Number of strands for --braid (default: largest index + 1)
        #[arg(long)]
        strands: Option<usize>,
        /// Target: `trivial:N`, `dihedral:N`, or a Cayley JSON file
        quandle: String,
    },
    /// Decide whether two words are equal in a presented quandle
    Wp {
        /// Presentation JSON file
        presentation: PathBuf,
        /// Left word, e.g. "(t * a1) * a2"
        left: String,
        /// Right word
        right: String,
    },
    /// Print the associated group of a presentation
    Assoc {
        /// Presentation JSON file
        presentation: PathBuf,
    },
    /// Search for a finite homomorphism separating two words
    Separate {
        /// Presentation JSON file
        presentation: PathBuf,
        left: String,
        right: String,
    },
    /// Convert a braid word or PD code into a link-quandle presentation
    Link {
        #[command(flatten)]
        source: Source,
        /// Number of strands for --braid (default: largest index + 1)
        #[arg(long)]
        strands: Option<usize>,
        /// Include the diagram JSON in the output
        #[arg(long)]
        diagram: bool,
    },
}

/// Where a link or presentation comes from. Exactly one of the three.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Braid word, e.g. "s1 s1 s1"
    #[arg(long)]
    braid: Option<String>,
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long)]
    pd: Option<String>,
    /// Presentation JSON file
    #[arg(long)]
    presentation: Option<PathBuf>,
}

enum Failure {
    /// exit 2: unusable input
    Usage(String),
    /// exit 1: the domain said no
    Domain(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Domain(_) => ExitCode::from(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Domain(m) => eprintln!("error: {m}"),
            }
            f.code()
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = Budget {
        max_len: cli.budget_len,
        max_nodes: cli.budget_nodes,
        max_catalog_order: cli.catalog_max_order,
    };
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, format),
        Command::Catalog { n } => cmd_catalog(n, cli.catalog_max_order, format),
        Command::Colorings { source, strands, quandle } => {
            let p = load_source(&source, strands)?;
            let q = parse_quandle_spec(&quandle)?;
            let count = count_colorings(&p, &q);
            output::emit(format, &serde_json::json!({ "colorings": count }), |_| {
                count.to_string()
            });
            Ok(())
        }
        Command::Wp { presentation, left, right } => {
            let p = load_presentation(&presentation)?;
            let (u, v) = parse_pair(&p, &left, &right)?;
            let catalog = cache::load_catalog(cli.catalog_max_order);
            let result = word_problem(&p, &u, &v, &budget, &catalog);
            catalog.persist();
            let unknown = matches!(result.verdict, WpVerdict::Unknown(_));
            output::emit(format, &result, output::describe_wp);
            if unknown {
                Err(Failure::Domain("verdict unknown at the given budget".into()))
            } else {
                Ok(())
            }
        }
        Command::Assoc { presentation } => {
            let p = load_presentation(&presentation)?;
            output::emit(format, &associated_group(&p), output::describe_group);
            Ok(())
        }
        Command::Separate { presentation, left, right } => {
            let p = load_presentation(&presentation)?;
            let (u, v) = parse_pair(&p, &left, &right)?;
            let catalog = cache::load_catalog(cli.catalog_max_order);
            let members = catalog
                .up_to(cli.catalog_max_order)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match separate(&p, &u, &v, &members, &budget) {
                Ok(Some(w)) => {
                    output::emit(format, &w, output::describe_witness);
                    Ok(())
                }
                Ok(None) => Err(Failure::Domain(format!(
                    "no witness at catalog order <= {}",
                    cli.catalog_max_order
                ))),
                Err(e) => Err(Failure::Domain(e.to_string())),
            }
        }
        Command::Link { source, strands, diagram } => {
            let d = load_diagram(&source, strands)?;
            let p = wirtinger_quandle(&d);
            let g = link_group(&d);
            let mut obj = serde_json::json!({
                "presentation": p,
                "group": g,
            });
            if diagram {
                obj["diagram"] = serde_json::to_value(&d).expect("diagram serializes");
            }
            output::emit(format, &obj, output::describe_link);
            Ok(())
        }
    }
}

fn cmd_validate(file: &PathBuf, format: Format) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let raw: quandle::finite_quandle::CayleyTableFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    if raw.order != raw.table.len() {
        return Err(Failure::Usage(format!(
            "declared order {} does not match table size {}",
            raw.order,
            raw.table.len()
        )));
    }
    match FiniteQuandle::validate(raw.table, raw.label) {
        Ok(q) => {
            output::emit(
                format,
                &serde_json::json!({ "valid": true, "order": q.order() }),
                |_| format!("valid quandle of order {}", q.order()),
            );
            Ok(())
        }
        Err(quandle::ValidateError::Axiom(v)) => {
            output::emit(
                format,
                &serde_json::json!({ "valid": false, "axiom": v.axiom(), "violation": v }),
                |_| format!("invalid: {v}"),
            );
            Err(Failure::Domain(v.to_string()))
        }
        Err(e) => {
            output::emit(
                format,
                &serde_json::json!({ "valid": false, "error": e.to_string() }),
                |_| format!("invalid: {e}"),
            );
            Err(Failure::Domain(e.to_string()))
        }
    }
}

fn cmd_catalog(n: usize, bound: usize, format: Format) -> Result<(), Failure> {
    let catalog = cache::load_catalog(bound);
    let members = catalog
        .order(n)
        .map_err(|e| Failure::Domain(e.to_string()))?
        .to_vec();
    output::emit(format, &members, |ms: &Vec<FiniteQuandle>| {
        let mut s = format!("{} classes of order {n}", ms.len());
        for q in ms {
            s.push_str(&format!("\n{:?}", q.rows()));
        }
        s
    });
    Ok(())
}

fn load_presentation(path: &PathBuf) -> Result<QuandlePresentation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_diagram(source: &Source, strands: Option<usize>) -> Result<LinkDiagram, Failure> {
    if let Some(braid) = &source.braid {
        let b = parse_braid(braid, strands).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(braid_closure(&b));
    }
    if let Some(pd) = &source.pd {
        if pd.trim().is_empty() {
            eprintln!("warning: empty PD code; using the crossingless unknot");
        }
        return parse_pd(pd).map_err(|e| Failure::Usage(e.to_string()));
    }
    Err(Failure::Usage(
        "a presentation file is not a diagram; use --braid or --pd here".into(),
    ))
}

fn load_source(source: &Source, strands: Option<usize>) -> Result<QuandlePresentation, Failure> {
    if let Some(path) = &source.presentation {
        return load_presentation(path);
    }
    Ok(wirtinger_quandle(&load_diagram(source, strands)?))
}

fn parse_pair(
    p: &QuandlePresentation,
    left: &str,
    right: &str,
) -> Result<(quandle::QuandleWord, quandle::QuandleWord), Failure> {
    let u = p
        .parse_word_checked(left)
        .map_err(|e| Failure::Usage(format!("left word: {e}")))?;
    let v = p
        .parse_word_checked(right)
        .map_err(|e| Failure::Usage(format!("right word: {e}")))?;
    Ok((u, v))
}

fn parse_quandle_spec(spec: &str) -> Result<FiniteQuandle, Failure> {
    for (prefix, build) in [
        ("trivial:", FiniteQuandle::trivial as fn(usize) -> FiniteQuandle),
        ("dihedral:", FiniteQuandle::dihedral),
    ] {
        if let Some(digits) = spec.strip_prefix(prefix) {
            let n: usize = digits
                .parse()
                .map_err(|_| Failure::Usage(format!("bad quandle spec {spec:?}")))?;
            if n == 0 {
                return Err(Failure::Usage("order must be at least 1".into()));
            }
            return Ok(build(n));
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{spec}: {e}")))
}
