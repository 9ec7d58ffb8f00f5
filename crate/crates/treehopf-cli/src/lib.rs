//! Command dispatch for the `treehopf` binary.
//!
//! Exit status: 0 on success, 1 when a verification or series check
//! reports failures, 2 on usage or input parse errors. Output for
//! fixed flags is byte-stable across runs.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use treehopf::algebra::{tensor_vector_json, tree_vector_json, TreeVector};
use treehopf::enumeration::{dimension_series, enumerate_trees, factor_odot};
use treehopf::family::{FamilyId, FamilyKind};
use treehopf::series::cayley_series_report;
use treehopf::text::{max_label, parse_tree};
use treehopf::verify::{
    primitive_space_dimension, verify_associated_graded, verify_family_axioms, verify_freeness,
    verify_hopf_axioms, verify_milnor_moore, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "treehopf",
    version,
    about = "Exact computer algebra on rooted-tree families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List all canonical trees of one degree, one per line
    Enumerate {
        #[arg(long)]
        family: String,
        /// Label alphabet size (inferred from inputs, default 1)
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension table by degree from the counting recurrence
    Count {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Multiply two trees ("-" reads a tree from stdin)
    Mul {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        lhs: String,
        rhs: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coproduct of a tree
    Coprod {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        tree: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Antipode of a tree
    Antipode {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        tree: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension of the primitive subspace in one degree
    PrimitiveDim {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Factor a tree into ⊙-indecomposables
    Factor {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        tree: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify the counting series against its product form
    SeriesCheck {
        #[arg(long, default_value = "1")]
        m: u32,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exit 0 iff every check passes
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: Option<u32>,
        /// family | hopf | milnor-moore | freeness | graded
        #[arg(long)]
        suite: String,
        /// Degree bound for hopf/milnor-moore/freeness/graded
        #[arg(long, default_value = "4")]
        max_degree: usize,
        /// Node bound for the family suite
        #[arg(long, default_value = "4")]
        max_nodes: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Run with the given argv (including the program name). Tree
/// arguments equal to "-" consume whitespace-separated tokens from
/// `stdin`.
pub fn run(args: &[String], stdin: &str, out: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprintln!("{e}");
                    2
                }
            };
        }
    };
    let mut stdin_tokens = stdin.split_whitespace();
    let mut take = |arg: &str| -> String {
        if arg == "-" {
            stdin_tokens.next().unwrap_or("").to_string()
        } else {
            arg.to_string()
        }
    };
    let outcome = match cli.command {
        Command::Enumerate {
            family,
            m,
            degree,
            format,
        } => enumerate_cmd(&family, m, degree, format, out),
        Command::Count {
            family,
            m,
            upto,
            format,
        } => count_cmd(&family, m, upto, format, out),
        Command::Mul {
            family,
            m,
            lhs,
            rhs,
            format,
        } => {
            let (lhs, rhs) = (take(&lhs), take(&rhs));
            mul_cmd(&family, m, &lhs, &rhs, format, out)
        }
        Command::Coprod {
            family,
            m,
            tree,
            format,
        } => {
            let tree = take(&tree);
            coprod_cmd(&family, m, &tree, format, out)
        }
        Command::Antipode {
            family,
            m,
            tree,
            format,
        } => {
            let tree = take(&tree);
            antipode_cmd(&family, m, &tree, format, out)
        }
        Command::PrimitiveDim {
            family,
            m,
            degree,
            format,
        } => primitive_dim_cmd(&family, m, degree, format, out),
        Command::Factor {
            family,
            m,
            tree,
            format,
        } => {
            let tree = take(&tree);
            factor_cmd(&family, m, &tree, format, out)
        }
        Command::SeriesCheck { m, order, format } => series_check_cmd(m, order, format, out),
        Command::Verify {
            family,
            m,
            suite,
            max_degree,
            max_nodes,
            format,
        } => verify_cmd(&family, m, &suite, max_degree, max_nodes, format, out),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

type CmdResult = Result<i32, String>;

/// Resolve the family from its code, an optional explicit M, and the
/// labels appearing in the inputs (M defaults to the largest label).
fn resolve_family(code: &str, m: Option<u32>, inputs: &[&str]) -> Result<FamilyId, String> {
    let kind = FamilyKind::from_code(code).ok_or_else(|| {
        format!("unknown family '{code}' (expected T, LT, OT, LOT, HOT, or LHOT)")
    })?;
    let m = m.unwrap_or_else(|| {
        if kind.is_labeled() {
            inputs
                .iter()
                .filter_map(|s| max_label(s))
                .max()
                .unwrap_or(1)
        } else {
            1
        }
    });
    FamilyId::new(kind, m).map_err(|e| e.to_string())
}

fn parse_input(family: FamilyId, text: &str) -> Result<treehopf::CanonicalTree, String> {
    parse_tree(family, text).map_err(|e| e.to_string())
}

fn enumerate_cmd(
    family: &str,
    m: Option<u32>,
    degree: usize,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[])?;
    let trees = enumerate_trees(&family, degree);
    match format {
        Format::Json => {
            let value = json!({
                "family": family.kind().code(),
                "M": family.label_count(),
                "degree": degree,
                "trees": trees.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{value}");
        }
        _ => {
            for t in &trees {
                let _ = writeln!(out, "{t}");
            }
        }
    }
    Ok(0)
}

fn count_cmd(
    family: &str,
    m: Option<u32>,
    upto: usize,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[])?;
    let series = dimension_series(&family, upto);
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", series.to_json());
        }
        _ => {
            let _ = write!(out, "{}", series.to_csv());
        }
    }
    Ok(0)
}

fn mul_cmd(
    family: &str,
    m: Option<u32>,
    lhs: &str,
    rhs: &str,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[lhs, rhs])?;
    let a = TreeVector::from_tree(parse_input(family, lhs)?);
    let b = TreeVector::from_tree(parse_input(family, rhs)?);
    let product = a.multiply(&b).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", tree_vector_json(&product));
        }
        _ => {
            let _ = writeln!(out, "{product}");
        }
    }
    Ok(0)
}

fn coprod_cmd(
    family: &str,
    m: Option<u32>,
    tree: &str,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[tree])?;
    let t = TreeVector::from_tree(parse_input(family, tree)?);
    let coproduct = t.coproduct();
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", tensor_vector_json(&coproduct));
        }
        _ => {
            let _ = writeln!(out, "{coproduct}");
        }
    }
    Ok(0)
}

fn antipode_cmd(
    family: &str,
    m: Option<u32>,
    tree: &str,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[tree])?;
    let t = TreeVector::from_tree(parse_input(family, tree)?);
    let antipode = t.antipode();
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", tree_vector_json(&antipode));
        }
        _ => {
            let _ = writeln!(out, "{antipode}");
        }
    }
    Ok(0)
}

fn primitive_dim_cmd(
    family: &str,
    m: Option<u32>,
    degree: usize,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    if degree == 0 {
        return Err("degree must be at least 1".to_string());
    }
    let family = resolve_family(family, m, &[])?;
    let dim = primitive_space_dimension(&family, degree);
    match format {
        Format::Json => {
            let value = json!({
                "family": family.kind().code(),
                "M": family.label_count(),
                "degree": degree,
                "dimension": dim,
            });
            let _ = writeln!(out, "{value}");
        }
        _ => {
            let _ = writeln!(out, "{dim}");
        }
    }
    Ok(0)
}

fn factor_cmd(
    family: &str,
    m: Option<u32>,
    tree: &str,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[tree])?;
    let t = parse_input(family, tree)?;
    let factors = factor_odot(&t).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let value = json!({
                "family": family.kind().code(),
                "M": family.label_count(),
                "tree": t.to_string(),
                "factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{value}");
        }
        _ => {
            let rendered: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            let _ = writeln!(out, "{}", rendered.join(" ⊙ "));
        }
    }
    Ok(0)
}

fn series_check_cmd(m: u32, order: usize, format: Format, out: &mut impl Write) -> CmdResult {
    if order == 0 {
        return Err("order must be at least 1".to_string());
    }
    let report = cayley_series_report(m, order);
    match format {
        Format::Json => {
            let mismatch = report.first_mismatch.as_ref().map(|(power, lhs, rhs)| {
                json!({"power": power, "series": lhs.to_string(), "product": rhs.to_string()})
            });
            let value = json!({
                "m": m,
                "order": order,
                "ok": report.ok,
                "first_mismatch": mismatch,
            });
            let _ = writeln!(out, "{value}");
        }
        _ => {
            if report.ok {
                let _ = writeln!(
                    out,
                    "ok: counting series matches its product form mod z^{}",
                    order + 1
                );
            } else {
                let (power, lhs, rhs) = report.first_mismatch.as_ref().expect("mismatch recorded");
                let _ = writeln!(out, "MISMATCH at z^{power}: series={lhs} product={rhs}");
            }
        }
    }
    Ok(if report.ok { 0 } else { 1 })
}

fn verify_cmd(
    family: &str,
    m: Option<u32>,
    suite: &str,
    max_degree: usize,
    max_nodes: usize,
    format: Format,
    out: &mut impl Write,
) -> CmdResult {
    let family = resolve_family(family, m, &[])?;
    let report: VerificationReport = match suite {
        "family" => verify_family_axioms(&family, max_nodes),
        "hopf" => verify_hopf_axioms(&family, max_degree),
        "milnor-moore" => verify_milnor_moore(&family, max_degree),
        "freeness" => verify_freeness(&family, max_degree).map_err(|e| e.to_string())?,
        "graded" => verify_associated_graded(&family, max_degree),
        other => {
            return Err(format!(
                "unknown suite '{other}' (expected family, hopf, milnor-moore, freeness, or graded)"
            ))
        }
    };
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", report.to_json());
        }
        _ => {
            let _ = write!(out, "{}", report.summary());
        }
    }
    Ok(if report.all_ok() { 0 } else { 1 })
}
