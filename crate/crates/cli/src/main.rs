//! `cluster`: command-line front end for seed patterns, mutation classes,
//! folding and triangulation models.
//!
//! Indices are 1-based on the command line and in every output.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cluster_core::classify::{count_type, identify_type, Classification, DynkinType};
use cluster_core::explore::{
    explore_matrix_class, explore_seed_pattern, is_embeddable, EmbeddingResult, ExplorationReport,
    ExplorationStatus, ExploreOptions, Quiver,
};
use cluster_core::folding::{check_admissible, fold_matrix, global_foldability, Foldability, VertexGroupAction};
use cluster_core::geom::{
    polygon_flip_graph, polygon_matrix, tagged_flip_graph, tagged_matrix_bullet, PolygonTriangulation, TaggedArc,
    TaggedTriangulation,
};
use cluster_core::laurent::tropical_orbit;
use cluster_core::{Error, ExtendedExchangeMatrix, Int, Seed};

#[derive(Parser)]
#[command(name = "cluster", version, about = "Exact computations with cluster seed patterns")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for exploration (results do not depend on it).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mutation sequence to a matrix (or to the initial seed).
    Mutate {
        #[arg(short, long, value_name = "FILE")]
        input: String,
        /// Space-separated 1-based directions, applied left to right.
        #[arg(short, long, value_name = "SEQ")]
        sequence: String,
        /// Print the mutated initial seed instead of the matrix.
        #[arg(long)]
        seed: bool,
    },
    /// Explore the seed pattern (or, with --class, the mutation class).
    Explore {
        #[arg(short, long, value_name = "FILE")]
        input: String,
        #[arg(long)]
        class: bool,
        #[command(flatten)]
        caps: Caps,
        /// Count labeled seeds.
        #[arg(long)]
        labeled: bool,
        /// Keep exploring classes containing |b_ij b_ji| >= 4.
        #[arg(long)]
        no_abort: bool,
        /// Print the exchange graph in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Decide finite type and name the Cartan-Killing type.
    Classify {
        #[arg(short, long, value_name = "FILE")]
        input: String,
    },
    /// Seed and cluster variable counts of a finite type, e.g. `--type D4`.
    Count {
        #[arg(long = "type", value_name = "TYPE")]
        kind: String,
    },
    /// Fold a matrix along a group generated by vertex permutations.
    Fold {
        #[arg(short, long, value_name = "FILE")]
        input: String,
        /// A generator as a 1-based permutation "2 1 3 ..."; repeatable.
        #[arg(long = "perm", value_name = "PERM", required = true)]
        perms: Vec<String>,
        /// Also decide global foldability.
        #[arg(long)]
        global: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Triangulations of the polygon with n + 3 vertices.
    Polygon {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mode: PolygonMode,
    },
    /// Tagged triangulations of the once-punctured n-gon.
    Punctured {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mode: PuncturedMode,
    },
    /// Search for a mutation of R containing Q as a full subquiver.
    Embed {
        #[arg(short = 'q', long, value_name = "FILE")]
        sub: String,
        #[arg(short = 'r', long, value_name = "FILE")]
        ambient: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Tropical exponents certifying infinite type of the rank-2 pattern (b, c).
    Witness {
        #[arg(short)]
        b: u64,
        #[arg(short)]
        c: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

#[derive(Args)]
struct Caps {
    /// Stop after this many distinct matrices or seeds.
    #[arg(long, value_name = "N")]
    cap: Option<usize>,
    /// Stop after this many BFS levels.
    #[arg(long, value_name = "D")]
    depth: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolygonMode {
    /// The fan at vertex 1 and its extended matrix.
    #[arg(long)]
    fan: bool,
    /// Every triangulation, one per line.
    #[arg(long)]
    list: bool,
    /// The flip graph in DOT format.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PuncturedMode {
    /// Every tagged triangulation with its flavor.
    #[arg(long)]
    enumerate: bool,
    /// Extended matrix (with the two eigenvalue rows) of a triangulation
    /// given as arcs like "p-1:plain 2-4".
    #[arg(long, value_name = "ARCS")]
    matrix: Option<String>,
    /// The triangulation by all plain radii and its extended matrix.
    #[arg(long)]
    t_circ: bool,
    /// The flip graph in DOT format.
    #[arg(long)]
    dot: bool,
}

type Result<T> = std::result::Result<T, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(code) => {
            print!("{out}");
            code
        }
        Err(e) => {
            print!("{out}");
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 1 } else { 2 })
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Precondition(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{path}: {e}")))
}

/// Reads format v1, or the JSON mirror when the text starts with `{`.
fn read_matrix(path: &str) -> Result<ExtendedExchangeMatrix> {
    let text = read_input(path)?;
    if !text.trim_start().starts_with('{') {
        return ExtendedExchangeMatrix::parse_v1(&text);
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let bad = || Error::Parse("expected {\"n_mutable\": n, \"rows\": [[...]]}".into());
    let n = v["n_mutable"].as_u64().ok_or_else(bad)? as usize;
    let rows = v["rows"].as_array().ok_or_else(bad)?;
    let mut v1 = format!("{} {}\n", rows.len(), n);
    for r in rows {
        let r = r.as_array().ok_or_else(bad)?;
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        v1.push_str(&cells.join(" "));
        v1.push('\n');
    }
    ExtendedExchangeMatrix::parse_v1(&v1)
}

fn int_json(x: &Int) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn matrix_json(b: &ExtendedExchangeMatrix) -> Value {
    let rows: Vec<Value> =
        (0..b.n_rows()).map(|i| Value::Array((0..b.n_mutable()).map(|j| int_json(b.get(i, j))).collect())).collect();
    json!({ "n_mutable": b.n_mutable(), "rows": rows })
}

fn emit_json(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn parse_indices(text: &str, bound: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            let k: usize = t.parse().map_err(|_| Error::Parse(format!("bad index `{t}`")))?;
            if k == 0 || k > bound {
                return Err(Error::IndexOutOfRange { index: k, bound });
            }
            Ok(k - 1)
        })
        .collect()
}

fn options(cli: &Cli, caps: Option<&Caps>) -> ExploreOptions {
    let mut o = ExploreOptions { threads: cli.threads, ..ExploreOptions::default() };
    if let Some(c) = caps {
        o.max_depth = c.depth;
        if let Some(cap) = c.cap {
            o.max_count = cap;
        }
    }
    o
}

fn report_json(r: &ExplorationReport, count_key: &str) -> Value {
    let mut v = json!({ "status": r.status.name() });
    v[count_key] = json!(r.count);
    if count_key == "seeds" {
        v["variables"] = json!(r.variables);
    }
    v["depth_profile"] = json!(r.depth_profile);
    if let ExplorationStatus::AbortedInfiniteWitness { i, j, product, depth } = &r.status {
        v["witness"] = json!({ "i": i, "j": j, "product": int_json(product), "depth": depth });
    }
    v
}

fn report_text(out: &mut String, r: &ExplorationReport, count_key: &str) {
    out.push_str(&format!("status         {}\n", r.status.name()));
    if let ExplorationStatus::AbortedInfiniteWitness { i, j, product, depth } = &r.status {
        out.push_str(&format!("witness        |b_{i}{j} b_{j}{i}| = {product} at depth {depth}\n"));
    }
    out.push_str(&format!("{:<15}{}\n", count_key, r.count));
    if let Some(v) = r.variables {
        out.push_str(&format!("variables      {v}\n"));
    }
    let prof: Vec<String> = r.depth_profile.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("depth profile  {}\n", prof.join(" ")));
}

fn dot(name: &str, nodes: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in 0..nodes {
        s.push_str(&format!("  s{v};\n"));
    }
    for (a, b) in edges {
        s.push_str(&format!("  s{a} -- s{b};\n"));
    }
    s.push_str("}\n");
    s
}

fn run(cli: &Cli, out: &mut String) -> Result<ExitCode> {
    match &cli.command {
        Command::Mutate { input, sequence, seed } => {
            let b = read_matrix(input)?;
            let word = parse_indices(sequence, b.n_mutable())?;
            if *seed {
                let s = Seed::initial(b).mutate_seq(&word)?;
                if cli.json {
                    let cluster: Vec<String> = s.cluster().iter().map(|p| p.to_string()).collect();
                    emit_json(out, &json!({ "matrix": matrix_json(s.matrix()), "cluster": cluster }));
                } else {
                    out.push_str(&s.to_text());
                }
            } else {
                let m = b.mutate_seq(&word)?;
                if cli.json {
                    emit_json(out, &matrix_json(&m));
                } else {
                    out.push_str(&m.to_v1());
                }
            }
        }
        Command::Explore { input, class, caps, labeled, no_abort, dot: want_dot } => {
            let b = read_matrix(input)?;
            let mut opts = options(cli, Some(caps));
            opts.labeled = *labeled;
            opts.abort_on_2_infinite = !no_abort;
            if *class {
                let c = explore_matrix_class(&b, &opts)?;
                if *want_dot {
                    return Err(Error::Precondition("--dot is available for seed patterns only".into()));
                }
                if cli.json {
                    emit_json(out, &report_json(&c.report, "matrices"));
                } else {
                    report_text(out, &c.report, "matrices");
                }
            } else {
                opts.keep_seeds = *want_dot;
                if *want_dot && *labeled {
                    return Err(Error::Precondition("--dot needs unlabeled seeds".into()));
                }
                let p = explore_seed_pattern(&Seed::initial(b), &opts)?;
                if *want_dot {
                    out.push_str(&dot("exchange", p.seeds.len(), &p.exchange_edges()));
                } else if cli.json {
                    emit_json(out, &report_json(&p.report, "seeds"));
                } else {
                    report_text(out, &p.report, "seeds");
                }
            }
        }
        Command::Classify { input } => {
            let b = read_matrix(input)?;
            match identify_type(&b)? {
                Classification::Finite(t) => {
                    let (seeds, vars) = count_type(&t);
                    if cli.json {
                        emit_json(
                            out,
                            &json!({ "finite": true, "type": t.to_string(), "seeds": int_json(&seeds), "variables": int_json(&vars) }),
                        );
                    } else {
                        out.push_str(&format!("finite type {t}: {seeds} seeds, {vars} cluster variables\n"));
                    }
                }
                Classification::Infinite => {
                    if cli.json {
                        emit_json(out, &json!({ "finite": false, "type": null, "seeds": null, "variables": null }));
                    } else {
                        out.push_str("infinite type\n");
                    }
                }
            }
        }
        Command::Count { kind } => {
            let t: DynkinType = kind.parse()?;
            let (seeds, vars) = count_type(&t);
            if cli.json {
                emit_json(out, &json!({ "type": t.to_string(), "seeds": int_json(&seeds), "variables": int_json(&vars) }));
            } else {
                out.push_str(&format!("{t}: {seeds} seeds, {vars} cluster variables\n"));
            }
        }
        Command::Fold { input, perms, global, caps } => {
            let b = read_matrix(input)?;
            let m = b.n_rows();
            let gens: Vec<Vec<usize>> = perms
                .iter()
                .map(|p| p.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index `{t}`")))).collect())
                .collect::<Result<_>>()?;
            let g = VertexGroupAction::from_one_based(m, &gens)?;
            if let Err(v) = check_admissible(&b, &g)? {
                if cli.json {
                    emit_json(out, &json!({ "admissible": false, "violation": v.to_string() }));
                } else {
                    out.push_str(&format!("# not admissible: {v}\n"));
                }
                return Err(Error::NotAdmissible(v));
            }
            let f = fold_matrix(&b, &g)?;
            let orbits: Vec<Vec<usize>> = f.orbits.iter().map(|o| o.iter().map(|i| i + 1).collect()).collect();
            let verdict = if *global { Some(global_foldability(&b, &g, &options(cli, Some(caps)))?) } else { None };
            if cli.json {
                let mut v = json!({ "admissible": true, "orbits": orbits, "matrix": matrix_json(&f.matrix) });
                if let Some(fd) = &verdict {
                    v["global"] = match fd {
                        Foldability::Foldable { count } => json!({ "foldable": true, "matrices": count }),
                        Foldability::Counterexample { word, violation } => json!({
                            "foldable": false,
                            "word": word.iter().map(|k| k + 1).collect::<Vec<_>>(),
                            "violation": violation.to_string(),
                        }),
                        Foldability::Unknown => json!({ "foldable": null }),
                    };
                }
                emit_json(out, &v);
            } else {
                out.push_str("# admissible\n");
                let parts: Vec<String> = orbits
                    .iter()
                    .map(|o| format!("{{{}}}", o.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                out.push_str(&format!("# orbits {}\n", parts.join(" ")));
                match &verdict {
                    Some(Foldability::Foldable { count }) => {
                        out.push_str(&format!("# globally foldable ({count} matrices checked)\n"))
                    }
                    Some(Foldability::Counterexample { word, violation }) => {
                        let w: Vec<String> = word.iter().map(|k| (k + 1).to_string()).collect();
                        out.push_str(&format!("# not globally foldable: orbit word [{}] gives {violation}\n", w.join(" ")))
                    }
                    Some(Foldability::Unknown) => out.push_str("# global foldability undecided within the cap\n"),
                    None => {}
                }
                out.push_str(&f.matrix.to_v1());
            }
        }
        Command::Polygon { n, mode } => {
            if *n == 0 {
                return Err(Error::Precondition("--n must be at least 1".into()));
            }
            if mode.fan {
                let t = PolygonTriangulation::fan(*n);
                let b = polygon_matrix(&t, true);
                if cli.json {
                    let arcs: Vec<String> = t.to_string().split(' ').map(String::from).collect();
                    emit_json(out, &json!({ "triangulation": arcs, "matrix": matrix_json(&b) }));
                } else {
                    out.push_str(&format!("# {t}\n{}", b.to_v1()));
                }
            } else if mode.list {
                let all = PolygonTriangulation::all(*n);
                if cli.json {
                    let list: Vec<Vec<String>> =
                        all.iter().map(|t| t.to_string().split(' ').map(String::from).collect()).collect();
                    emit_json(out, &json!({ "count": all.len(), "triangulations": list }));
                } else {
                    for t in &all {
                        out.push_str(&format!("{t}\n"));
                    }
                }
            } else {
                out.push_str(&polygon_flip_graph(*n)?.to_dot("flips"));
            }
        }
        Command::Punctured { n, mode } => {
            if *n < 2 {
                return Err(Error::Precondition("--n must be at least 2".into()));
            }
            if mode.enumerate {
                let all = TaggedTriangulation::all(*n);
                if cli.json {
                    let list: Vec<Value> = all
                        .iter()
                        .map(|t| {
                            let arcs: Vec<String> = t.arcs().iter().map(|a| a.to_string()).collect();
                            json!({ "arcs": arcs, "flavor": format!("{:?}", t.flavor()) })
                        })
                        .collect();
                    emit_json(out, &json!({ "count": all.len(), "triangulations": list }));
                } else {
                    for t in &all {
                        out.push_str(&format!("{t}\t{:?}\n", t.flavor()));
                    }
                }
            } else if mode.dot {
                out.push_str(&tagged_flip_graph(*n)?.to_dot("flips"));
            } else {
                let t = match &mode.matrix {
                    Some(arcs) => {
                        let arcs: Vec<TaggedArc> = arcs.split_whitespace().map(str::parse).collect::<Result<_>>()?;
                        TaggedTriangulation::new(*n, arcs)?
                    }
                    None => TaggedTriangulation::t_circ(*n),
                };
                let b = tagged_matrix_bullet(&t)?;
                if cli.json {
                    let arcs: Vec<String> = t.arcs().iter().map(|a| a.to_string()).collect();
                    emit_json(out, &json!({ "triangulation": arcs, "flavor": format!("{:?}", t.flavor()), "matrix": matrix_json(&b) }));
                } else {
                    out.push_str(&format!("# {t}\n{}", b.to_v1()));
                }
            }
        }
        Command::Embed { sub, ambient, caps } => {
            let q = Quiver::from_matrix(&read_matrix(sub)?)?;
            let r = Quiver::from_matrix(&read_matrix(ambient)?)?;
            let res = is_embeddable(&q, &r, &options(cli, Some(caps)))?;
            let (verdict, detail) = match &res {
                EmbeddingResult::Embeddable(e) => {
                    (json!(true), Some((e.subset.clone(), e.word.iter().map(|k| k + 1).collect::<Vec<_>>())))
                }
                EmbeddingResult::NotEmbeddable => (json!(false), None),
                EmbeddingResult::Unknown => (Value::Null, None),
            };
            if cli.json {
                let mut v = json!({ "embeddable": verdict });
                if let Some((subset, word)) = &detail {
                    v["subset"] = json!(subset);
                    v["word"] = json!(word);
                }
                emit_json(out, &v);
            } else {
                match &detail {
                    Some((subset, word)) => out.push_str(&format!(
                        "embeddable: vertices {:?} after mutations {:?}\n",
                        subset, word
                    )),
                    None if verdict.is_null() => out.push_str("undecided within the cap\n"),
                    None => out.push_str("not embeddable\n"),
                }
            }
        }
        Command::Witness { b, c, steps } => {
            let orbit = tropical_orbit(*b, *c, *steps)?;
            let exps: Vec<String> = orbit.iter().map(|t| t.exponent.to_string()).collect();
            if cli.json {
                emit_json(out, &json!({ "b": b, "c": c, "exponents": exps }));
            } else {
                out.push_str(&exps.join(", "));
                out.push('\n');
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
