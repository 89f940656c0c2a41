use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use webcalc_core::braiding::{braid_invariant, Closure, ColoredBraid};
use webcalc_core::exterior::{generator_map, render_basis, Gen, LinearMap};
use webcalc_core::functor::eval_lincomb;
use webcalc_core::harness::{
    fuzz_ladderize, howe_rank, relcheck, RelcheckOptions, Status, Variant,
};
use webcalc_core::ladderize::ladderize_verify;
use webcalc_core::qgroup::{phi_matrix, word_matrix, word_to_ladder, GlWeight, UWord};
use webcalc_core::{RootOrder, WebIR, WebLinComb};

#[derive(Parser)]
#[command(
    name = "webcalc",
    version,
    about = "Exact evaluation of gl_n webs, ladders and braid closures"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a web or linear combination of webs from a file ("-" for stdin).
    Eval { file: PathBuf },
    /// Print a matrix: a web file densely, or a quantum group generator on an object.
    Matrix(MatrixArgs),
    /// Rewrite an upward web as a ladder.
    Ladder {
        file: PathBuf,
        /// Compare the evaluations of the web and the ladder.
        #[arg(long)]
        verify: bool,
    },
    /// Act with a word in divided powers on a weight space.
    Uword(UwordArgs),
    /// Framed invariant of a colored braid closure.
    Invariant(InvariantArgs),
    /// Check the spider relations on every admissible labelling.
    Relcheck(RelcheckArgs),
    /// Compare the span of evaluated words with the commutant dimension.
    HoweRank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Weight totals to check, comma separated.
        #[arg(long = "total", value_delimiter = ',', default_value = "0")]
        totals: Vec<i64>,
    },
    /// Ladderize random webs and compare evaluations.
    FuzzLadderize {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct MatrixArgs {
    /// Web file to evaluate.
    file: Option<PathBuf>,
    /// Generator such as E1, F2 or K1.
    #[arg(long, requires_all = ["n", "object"], conflicts_with = "file")]
    gen: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Object such as "1+,2-".
    #[arg(long)]
    object: Option<String>,
}

#[derive(Args)]
struct UwordArgs {
    /// Word such as "F1^2 E2"; the rightmost letter acts first.
    word: String,
    /// Source weight, comma separated.
    #[arg(long, value_delimiter = ',')]
    weight: Vec<i64>,
    #[arg(long)]
    n: usize,
    /// Print the ladder instead of the matrix.
    #[arg(long)]
    ladder: bool,
    /// Compute the matrix from the direct action rather than through webs.
    #[arg(long)]
    direct: bool,
}

#[derive(Args)]
struct InvariantArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',')]
    colors: Vec<usize>,
    /// Braid word such as "s1 s2^-1 s1".
    #[arg(long, default_value = "")]
    word: String,
    #[arg(long, default_value = "trace")]
    closure: Closure,
}

#[derive(Args)]
struct RelcheckArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    n: Vec<usize>,
    /// Largest label in the grid; defaults to n.
    #[arg(long)]
    max_label: Option<usize>,
    /// Relation identifiers such as 2.3, comma separated; all when omitted.
    #[arg(long, value_delimiter = ',')]
    relation: Vec<String>,
    /// Only the untransformed relations, without mirrors and reversals.
    #[arg(long)]
    plain: bool,
    /// Perturb the opposite-bigon coefficient, which must then fail.
    #[arg(long)]
    perturb: bool,
    /// Print failing records only.
    #[arg(long)]
    failures: bool,
}

fn read(file: &PathBuf) -> Result<String> {
    if file.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))
}

fn parse_lincomb(file: &PathBuf) -> Result<WebLinComb> {
    let text = read(file)?;
    WebLinComb::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))
}

#[derive(Serialize)]
struct Entry {
    row: String,
    col: String,
    value: String,
}

fn listing(m: &LinearMap, root: RootOrder) -> Vec<Entry> {
    m.entries()
        .into_iter()
        .map(|(r, c, x)| Entry {
            row: render_basis(&m.tgt, &r),
            col: render_basis(&m.src, &c),
            value: x.render(root),
        })
        .collect()
}

fn print_listing(m: &LinearMap, root: RootOrder) {
    println!("{} -> {}", m.src, m.tgt);
    for e in listing(m, root) {
        println!("{} {} {}", e.row, e.col, e.value);
    }
}

fn print_dense(m: &LinearMap, root: RootOrder) {
    let rows = m.tgt.basis();
    let cols = m.src.basis();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| m.entry(r, c).render(root)).collect())
        .collect();
    let head: Vec<String> = cols.iter().map(|c| render_basis(&m.src, c)).collect();
    let label: Vec<String> = rows.iter().map(|r| render_basis(&m.tgt, r)).collect();
    let lw = label.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|j| {
            cells
                .iter()
                .map(|row| row[j].len())
                .chain([head[j].len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let line = |first: &str, items: &[String]| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        println!("{first:<lw$} | {}", parts.join("  "));
    };
    line("", &head);
    for (l, row) in label.iter().zip(&cells) {
        line(l, row);
    }
}

fn emit_map(json_out: bool, m: &LinearMap, root: RootOrder) {
    if json_out {
        if let Some(v) = m.scalar_value() {
            println!("{}", json!({ "root": root.get(), "value": v.render(root) }));
        } else {
            let out = json!({
                "source": m.src.to_string(),
                "target": m.tgt.to_string(),
                "root": root.get(),
                "entries": listing(m, root),
            });
            println!("{out}");
        }
    } else if let Some(v) = m.scalar_value() {
        println!("{}", v.render(root));
    } else {
        print_listing(m, root);
    }
}

fn parse_gen(text: &str) -> Result<(Gen, usize)> {
    let mut chars = text.chars();
    let g = match chars.next() {
        Some('E') => Gen::E,
        Some('F') => Gen::F,
        Some('K') => Gen::K,
        _ => bail!("generator {text:?}: expected E, F or K followed by an index"),
    };
    let i: usize = chars
        .as_str()
        .parse()
        .with_context(|| format!("generator {text:?}: bad index"))?;
    Ok((g, i))
}

fn run(cli: Cli) -> Result<bool> {
    let js = cli.json;
    match cli.command {
        Command::Eval { file } => {
            let c = parse_lincomb(&file)?;
            let m = eval_lincomb(&c)?;
            emit_map(js, &m, c.root);
            Ok(true)
        }
        Command::Matrix(args) => {
            let (m, root) = match (&args.file, &args.gen) {
                (Some(file), None) => {
                    let c = parse_lincomb(file)?;
                    (eval_lincomb(&c)?, c.root)
                }
                (None, Some(g)) => {
                    let n = args.n.unwrap_or_default();
                    let object = args.object.as_deref().unwrap_or_default();
                    let header = format!(
                        "web n={n} src=({})",
                        object.trim_matches(|c| c == '(' || c == ')')
                    );
                    let w = WebIR::parse(&header)
                        .map_err(|e| anyhow::anyhow!("object {object:?}: {e}"))?;
                    let (g, i) = parse_gen(g)?;
                    (generator_map(g, i, &w.source)?, RootOrder::ONE)
                }
                _ => bail!("give either a web file or --gen with --n and --object"),
            };
            if js {
                emit_map(true, &m, root);
            } else {
                print_dense(&m, root);
            }
            Ok(true)
        }
        Command::Ladder { file, verify } => {
            let text = read(&file)?;
            let w = WebIR::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
            let (l, report) = ladderize_verify(&w)?;
            if js {
                let mut out = json!({ "ladder": l.render(), "negative": l.negative });
                if verify {
                    out["verify"] = serde_json::to_value(&report)?;
                }
                println!("{out}");
            } else {
                print!("{}", l.render());
                if verify {
                    match &report.witness {
                        None => println!(
                            "# verify: equal ({} uprights, {} rungs)",
                            report.uprights, report.rungs
                        ),
                        Some(w) => println!(
                            "# verify: DIFFER at row {} col {}: web {} ladder {}",
                            w.row, w.col, w.web, w.ladder
                        ),
                    }
                }
            }
            Ok(!verify || report.equal)
        }
        Command::Uword(args) => {
            let weight = GlWeight::new(args.weight.clone());
            let w = UWord::parse(&args.word, weight)?;
            if let Some(k) = w.weights().into_iter().find(|k| !k.is_bounded(args.n)) {
                if js {
                    println!("{}", json!({ "zero": true, "weight": k.to_string() }));
                } else {
                    println!(
                        "0 (passes through weight {k}, which is not {}-bounded)",
                        args.n
                    );
                }
                return Ok(true);
            }
            if args.ladder {
                let l = word_to_ladder(&w, args.n)?;
                let text = l.map(|l| l.render()).unwrap_or_default();
                if js {
                    println!("{}", json!({ "ladder": text }));
                } else {
                    print!("{text}");
                }
            } else {
                let m = if args.direct {
                    phi_matrix(&w, args.n)?
                } else {
                    word_matrix(&w, args.n)?
                };
                emit_map(js, &m, RootOrder::ONE);
            }
            Ok(true)
        }
        Command::Invariant(args) => {
            let word = ColoredBraid::parse_word(&args.word)?;
            let b = ColoredBraid::new(args.colors, word, args.closure);
            let v = braid_invariant(&b, args.n)?;
            let root = RootOrder::new(args.n as u32);
            if js {
                println!(
                    "{}",
                    json!({ "braid": b.to_string(), "n": args.n, "root": args.n, "value": v.render(root) })
                );
            } else {
                println!("N={} (q = u^{})", args.n, args.n);
                println!("{}", v.render(root));
            }
            Ok(true)
        }
        Command::Relcheck(args) => {
            let mut all = Vec::new();
            for &n in &args.n {
                let mut opts = RelcheckOptions::new(n, args.max_label.unwrap_or(n));
                opts.relations = args.relation.clone();
                opts.perturb = args.perturb;
                if args.plain {
                    opts.variants = vec![Variant::Plain];
                }
                all.extend(relcheck(&opts)?);
            }
            let failed = all.iter().filter(|r| r.status == Status::Fail).count();
            let shown: Vec<_> = all
                .iter()
                .filter(|r| !args.failures || r.status == Status::Fail)
                .collect();
            if js {
                println!("{}", serde_json::to_string(&shown)?);
            } else {
                for r in &shown {
                    let status = if r.status == Status::Pass {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    print!(
                        "{status} {} {} n={} {} [{}]",
                        r.relation,
                        r.name,
                        r.n,
                        r.params,
                        r.variant.name()
                    );
                    if let Some(w) = &r.witness {
                        print!(
                            " witness row {} col {}: {} vs {}",
                            w.row, w.col, w.lhs, w.rhs
                        );
                    }
                    println!();
                }
                println!("# {} checks, {} failed", all.len(), failed);
            }
            Ok(failed == 0)
        }
        Command::HoweRank { n, m, totals } => {
            let mut ok = true;
            let mut records = Vec::new();
            for total in totals {
                let r = howe_rank(n, m, total)?;
                ok &= r.equal;
                if !js {
                    let dims: Vec<String> = r
                        .points
                        .iter()
                        .map(|p| {
                            format!(
                                "u={}: span {} commutant {}",
                                p.u0, p.span_dim, p.commutant_dim
                            )
                        })
                        .collect();
                    println!(
                        "{} n={n} m={m} K={total} ({} weights): {}",
                        if r.equal { "PASS" } else { "FAIL" },
                        r.weights,
                        dims.join("; ")
                    );
                }
                records.push(json!({
                    "relation": "howe-rank",
                    "params": format!("n={n} m={m} K={total}"),
                    "status": if r.equal { "pass" } else { "fail" },
                    "report": r,
                }));
            }
            if js {
                println!("{}", serde_json::Value::Array(records));
            }
            Ok(ok)
        }
        Command::FuzzLadderize {
            n,
            count,
            budget,
            seed,
        } => {
            if n.is_empty() || n.iter().any(|&k| k < 2) {
                bail!("--n needs ranks of at least 2");
            }
            let r = fuzz_ladderize(&n, count, budget, seed);
            if js {
                println!("{}", serde_json::to_string(&r)?);
            } else {
                for f in &r.failures {
                    println!("FAIL seed={} n={}: {}\n{}", f.seed, f.n, f.reason, f.web);
                }
                println!(
                    "# {} webs, {} equal, {} with sign -1, {} failed",
                    r.webs,
                    r.equal,
                    r.negative,
                    r.failures.len()
                );
            }
            Ok(r.failures.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
