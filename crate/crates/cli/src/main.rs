//! Command-line front end for the outfn toolkit.
//!
//! Every subcommand prints one versioned JSON document to standard output
//! and a one-line human summary to standard error; `--json` suppresses the
//! summary. Identical invocations produce byte-identical JSON. Exit codes:
//! 0 success, 1 usage or input error, 2 a verified property fails, 3 a
//! resource bound was hit.

use clap::{ArgGroup, Args, Parser, Subcommand};
use outfn_core::error::Error;
use outfn_core::presentation::{
    standard_assignment, verify_assignment, ExactAutOps, Flavor, OuterAutOps,
};
use outfn_core::{affine, expectation, graph, schreier, theta};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

const SCHEMA: &str = "outfn/1";

#[derive(Parser)]
#[command(name = "outfn", version, about = "Automorphism groups of free groups: relation suites, abelian covers, and graph symmetries")]
struct Cli {
    /// Seed for the sampling subcommands; part of the reproducible config.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write the JSON document to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on coset enumeration size; overrides OUTFN_MAX_COSETS.
    #[arg(long, global = true)]
    max_cosets: Option<u64>,

    /// Print only the JSON document, no summary line.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the elementary-automorphism relation suite at a rank.
    Verify {
        #[arg(long)]
        rank: u32,
        /// Which suite: saut, aut, or out.
        #[arg(long, default_value = "aut")]
        flavor: String,
    },
    /// Verify the affine torus lifts of the generators at a modulus.
    Split {
        #[arg(long)]
        rank: u32,
        #[arg(long = "mod")]
        modulus: i64,
    },
    /// Build the congruence kernel basis and verify the induced outer action.
    Embed {
        #[arg(long)]
        rank: u32,
        #[arg(long = "mod")]
        modulus: u32,
    },
    /// Work in the rotation extension group of a rank and modulus.
    Theta {
        #[arg(long)]
        rank: u32,
        #[arg(long = "mod")]
        modulus: i64,
        #[command(subcommand)]
        action: ThetaAction,
    },
    /// Build a graph from a named family and query it.
    Graph {
        /// Family name: rose, cage, k3n, cl, rl, wedge_cages, bouquet_c3, x, complete.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[command(subcommand)]
        query: GraphQuery,
    },
    /// Prime expectation numerics.
    Expectation(ExpectationArgs),
}

#[derive(Subcommand)]
enum ThetaAction {
    /// Search for a finite-order lift of the quotient rotation.
    Search,
    /// Report the orders of the distinguished elements.
    Order,
    /// Compare the closed-form power exponents against direct powering
    /// on seeded random lift candidates.
    Formula {
        #[arg(long, default_value_t = 500)]
        samples: u32,
    },
}

#[derive(Subcommand)]
enum GraphQuery {
    /// First-homology rank.
    Genus,
    /// Order of the full symmetry group.
    Aut,
    /// Connectivity, valence, and invariant-forest check.
    Admissible,
    /// Action on first homology of a symmetry read from a JSON file
    /// holding vertex_map and dart_map arrays.
    H1 {
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["constant", "mean", "smallest_m"])))]
struct ExpectationArgs {
    /// Exact partial sum of the prime series with a decimal rendering.
    #[arg(long, requires = "bound")]
    constant: bool,
    /// Mean of the smallest nondividing prime over k = 2 ..= x + 1.
    #[arg(long, requires = "x")]
    mean: bool,
    /// Smallest usable torus side length at a rank, with its prime.
    #[arg(long = "smallest-m", requires = "n")]
    smallest_m: bool,
    /// Primes strictly below this bound enter the partial sum.
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Verify { .. } => "verify".into(),
            Command::Split { .. } => "split".into(),
            Command::Embed { .. } => "embed".into(),
            Command::Theta { action, .. } => match action {
                ThetaAction::Search => "theta search".into(),
                ThetaAction::Order => "theta order".into(),
                ThetaAction::Formula { .. } => "theta formula".into(),
            },
            Command::Graph { query, .. } => match query {
                GraphQuery::Genus => "graph genus".into(),
                GraphQuery::Aut => "graph aut".into(),
                GraphQuery::Admissible => "graph admissible".into(),
                GraphQuery::H1 { .. } => "graph h1".into(),
            },
            Command::Expectation(args) => {
                if args.constant {
                    "expectation constant".into()
                } else if args.mean {
                    "expectation mean".into()
                } else {
                    "expectation smallest-m".into()
                }
            }
        }
    }
}

struct Outcome {
    result: Value,
    summary: String,
    pass: bool,
}

struct Ctx {
    module: &'static str,
    operation: &'static str,
    err: Error,
}

fn at(module: &'static str, operation: &'static str) -> impl Fn(Error) -> Ctx {
    move |err| Ctx {
        module,
        operation,
        err,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::RankMismatch(..) => "rank_mismatch",
        Error::LetterOutOfRange { .. } => "letter_out_of_range",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::NotAutomorphism(_) => "not_automorphism",
        Error::Coprimality { .. } => "coprimality",
        Error::NotInSubgroup { .. } => "not_in_subgroup",
        Error::ResourceBound { .. } => "resource_bound",
        Error::Dimension(_) => "dimension",
        Error::NotInvolution => "not_involution",
        Error::InfiniteOrder => "infinite_order",
        Error::IncompatibleAction(_) => "incompatible_action",
        Error::Invalid(_) => "invalid",
        Error::Parse(_) => "parse",
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::ResourceBound { .. } => 3,
        Error::Coprimality { .. }
        | Error::NotInSubgroup { .. }
        | Error::NotAutomorphism(_)
        | Error::NotInvolution => 2,
        _ => 1,
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_verify(rank: u32, flavor: &str) -> Result<Outcome, Ctx> {
    let ctx = at("presentation", "verify_assignment");
    let flavor = Flavor::from_str(flavor).map_err(&ctx)?;
    let map = standard_assignment(rank);
    let assign = |g| map.get(&g).cloned();
    let report = match flavor {
        Flavor::Out => verify_assignment(rank, flavor, &OuterAutOps { rank }, &assign),
        _ => verify_assignment(rank, flavor, &ExactAutOps { rank }, &assign),
    }
    .map_err(&ctx)?;
    let pass = report.all_pass;
    let summary = format!(
        "rank {rank} {flavor} suite: {} of {} relation instances pass",
        report.total - report.failed,
        report.total
    );
    Ok(Outcome {
        result: serde_json::to_value(&report).expect("report serializes"),
        summary,
        pass,
    })
}

fn run_split(rank: u32, modulus: i64) -> Result<Outcome, Ctx> {
    let ctx = at("affine", "verify_lift_relations");
    let params = affine::make_split_params(rank, modulus).map_err(&ctx)?;
    let report = affine::verify_lift_relations(&params).map_err(&ctx)?;
    let pass = report.all_pass;
    let summary = format!(
        "affine lifts at rank {rank} mod {modulus} (s = {}): {} of {} relations pass, \
         product translation {:?}",
        params.s,
        report.relations.total - report.relations.failed,
        report.relations.total,
        report.product_translation
    );
    Ok(Outcome {
        result: serde_json::to_value(&report).expect("report serializes"),
        summary,
        pass,
    })
}

fn run_embed(rank: u32, modulus: u32) -> Result<Outcome, Ctx> {
    let ctx = at("schreier", "verify_embedding");
    let table = schreier::CosetTable::new(rank, modulus).map_err(&ctx)?;
    let report = schreier::verify_embedding(rank, modulus).map_err(&ctx)?;
    let pass = report.all_pass;
    let summary = format!(
        "kernel of rank {rank} mod {modulus}: free basis of rank {} over {} cosets; \
         outer suite: {} of {} instances pass",
        table.basis_rank(),
        table.num_cosets(),
        report.total - report.failed,
        report.total
    );
    Ok(Outcome {
        result: json!({
            "rank": rank,
            "modulus": modulus,
            "cosets": table.num_cosets(),
            "basis_rank": table.basis_rank(),
            "relations": serde_json::to_value(&report).expect("report serializes"),
        }),
        summary,
        pass,
    })
}

fn run_theta(rank: u32, modulus: i64, action: &ThetaAction, seed: u64) -> Result<Outcome, Ctx> {
    match action {
        ThetaAction::Search => {
            let ctx = at("theta", "splitting_search");
            let report = theta::splitting_search(rank, modulus).map_err(&ctx)?;
            let summary = match (&report.witness, report.witness_order) {
                (Some(w), Some(k)) => format!(
                    "splitting witness ({:?}; x^{}) of order {k}",
                    w.vec, w.xexp
                ),
                _ => format!(
                    "no splitting: gcd({modulus}, {} - 1) = {}",
                    rank, report.gcd
                ),
            };
            Ok(Outcome {
                result: serde_json::to_value(&report).expect("report serializes"),
                summary,
                pass: true,
            })
        }
        ThetaAction::Order => {
            let ctx = at("theta", "order");
            let group = theta::ThetaGroup::new(rank, modulus).map_err(&ctx)?;
            let group_order = if modulus == 0 {
                None
            } else {
                Some(
                    ((modulus as u128).pow(rank) * u128::from(rank - 1)).to_string(),
                )
            };
            let x = group.order(&group.x());
            let alpha0 = group.order(&group.alpha0());
            let mu = group.order(&group.mu());
            let summary = format!(
                "orders at rank {rank} mod {modulus}: x {}, alpha0 {}, mu {}, group {}",
                fmt_order(x),
                fmt_order(alpha0),
                fmt_order(mu),
                group_order.as_deref().unwrap_or("infinite")
            );
            Ok(Outcome {
                result: json!({
                    "rank": rank,
                    "modulus": modulus,
                    "group_order": group_order,
                    "x_order": x,
                    "alpha0_order": alpha0,
                    "mu_order": mu,
                }),
                summary,
                pass: true,
            })
        }
        ThetaAction::Formula { samples } => {
            let ctx = at("theta", "power_exponents");
            if modulus < 2 {
                return Err(ctx(Error::Invalid(format!(
                    "formula sampling needs a finite modulus of at least 2, got {modulus}"
                ))));
            }
            let group = theta::ThetaGroup::new(rank, modulus).map_err(&ctx)?;
            let mut state = seed;
            let span = 6 * modulus + 1;
            let mut matched = 0u32;
            for _ in 0..*samples {
                let m: Vec<i64> = (0..rank)
                    .map(|_| (splitmix64(&mut state) % span as u64) as i64 - 3 * modulus)
                    .collect();
                let cand = theta::lift_candidate(&group, &m).map_err(&ctx)?;
                let direct = group.pow(&cand, i64::from(rank - 1));
                let (a0, mu) = theta::power_exponents(rank, modulus, &m).map_err(&ctx)?;
                let closed = group.mul(
                    &group.pow(&group.alpha0(), a0),
                    &group.pow(&group.mu(), mu),
                );
                if direct == closed {
                    matched += 1;
                }
            }
            let pass = matched == *samples;
            let summary = format!(
                "{matched} of {samples} sampled lift candidates match the closed-form \
                 power exponents at rank {rank} mod {modulus}"
            );
            Ok(Outcome {
                result: json!({
                    "rank": rank,
                    "modulus": modulus,
                    "samples": samples,
                    "matched": matched,
                    "all_match": pass,
                }),
                summary,
                pass,
            })
        }
    }
}

fn fmt_order(k: Option<u64>) -> String {
    k.map_or_else(|| "infinite".to_string(), |k| k.to_string())
}

fn run_graph(family: &str, n: u32, query: &GraphQuery) -> Result<Outcome, Ctx> {
    let build_ctx = at("graph", "build");
    let family = graph::Family::from_str(family).map_err(&build_ctx)?;
    let g = family.build(n).map_err(&build_ctx)?;
    match query {
        GraphQuery::Genus => Ok(Outcome {
            result: json!({
                "family": family,
                "n": n,
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
                "genus": g.genus(),
            }),
            summary: format!(
                "{family}(n = {n}): genus {} with {} vertices and {} edges",
                g.genus(),
                g.num_vertices(),
                g.num_edges()
            ),
            pass: true,
        }),
        GraphQuery::Aut => {
            let order = graph::automorphism_count(&g).map_err(at("graph", "automorphism_count"))?;
            Ok(Outcome {
                result: json!({
                    "family": family,
                    "n": n,
                    "order": order.to_string(),
                }),
                summary: format!("{family}(n = {n}): symmetry group of order {order}"),
                pass: true,
            })
        }
        GraphQuery::Admissible => {
            let report = graph::is_admissible(&g).map_err(at("graph", "is_admissible"))?;
            let summary = match &report.witness {
                Some(w) => format!("{family}(n = {n}) is not admissible: {w}"),
                None => format!("{family}(n = {n}) is admissible"),
            };
            Ok(Outcome {
                result: json!({
                    "family": family,
                    "n": n,
                    "admissible": report.admissible,
                    "witness": report.witness,
                }),
                summary,
                pass: true,
            })
        }
        GraphQuery::H1 { map } => {
            let ctx = at("graph", "h1_action");
            let text = std::fs::read_to_string(map).map_err(|e| {
                ctx(Error::Parse(format!("cannot read {}: {e}", map.display())))
            })?;
            let f: graph::GraphMap = serde_json::from_str(&text).map_err(|e| {
                ctx(Error::Parse(format!("cannot parse {}: {e}", map.display())))
            })?;
            f.validate(&g).map_err(&ctx)?;
            let m = graph::h1_action(&g, &f).map_err(&ctx)?;
            let det = m.det().map_err(&ctx)?;
            Ok(Outcome {
                result: json!({
                    "family": family,
                    "n": n,
                    "genus": g.genus(),
                    "matrix": m.to_rows(),
                    "determinant": det,
                }),
                summary: format!(
                    "{family}(n = {n}): homology action is {} x {} with determinant {det}",
                    m.rows(),
                    m.cols()
                ),
                pass: true,
            })
        }
    }
}

fn run_expectation(args: &ExpectationArgs) -> Result<Outcome, Ctx> {
    if args.constant {
        let ctx = at("expectation", "expectation_constant");
        let bound = args.bound.expect("required by the mode group");
        let report = expectation::expectation_constant(bound).map_err(&ctx)?;
        let decimal = report.decimal(10);
        Ok(Outcome {
            result: json!({
                "bound": report.bound,
                "primes_used": report.primes_used,
                "exact": report.exact.to_string(),
                "decimal": decimal,
                "last_term": report.last_term.to_string(),
                "tail_estimate": report.tail_estimate.to_string(),
            }),
            summary: format!(
                "partial sum over {} primes below {bound}: {decimal} (exact {})",
                report.primes_used, report.exact
            ),
            pass: true,
        })
    } else if args.mean {
        let ctx = at("expectation", "empirical_mean");
        let x = args.x.expect("required by the mode group");
        let mean = expectation::empirical_mean(x).map_err(&ctx)?;
        let decimal = expectation::decimal_string(&mean, 10);
        Ok(Outcome {
            result: json!({
                "x": x,
                "mean": mean.to_string(),
                "decimal": decimal,
            }),
            summary: format!("mean of the smallest nondividing prime over k = 2..={}: {decimal}", x + 1),
            pass: true,
        })
    } else {
        let ctx = at("expectation", "smallest_modulus");
        let n = args.n.expect("required by the mode group");
        let (p, m) = expectation::smallest_modulus(n).map_err(&ctx)?;
        Ok(Outcome {
            result: json!({
                "n": n,
                "prime": p,
                "m": m.to_string(),
            }),
            summary: format!("rank {n}: smallest usable side length m = {m} with prime {p}"),
            pass: true,
        })
    }
}

fn run(cli: &Cli) -> Result<Outcome, Ctx> {
    match &cli.command {
        Command::Verify { rank, flavor } => run_verify(*rank, flavor),
        Command::Split { rank, modulus } => run_split(*rank, *modulus),
        Command::Embed { rank, modulus } => run_embed(*rank, *modulus),
        Command::Theta {
            rank,
            modulus,
            action,
        } => run_theta(*rank, *modulus, action, cli.seed),
        Command::Graph { family, n, query } => run_graph(family, *n, query),
        Command::Expectation(args) => run_expectation(args),
    }
}

fn emit(cli: &Cli, doc: &Value, summary: &str) {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cannot write {}: {e}", path.display());
        }
    }
    if !cli.json {
        eprintln!("{summary}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(limit) = cli.max_cosets {
        std::env::set_var("OUTFN_MAX_COSETS", limit.to_string());
    }
    let command = cli.command.name();
    match run(&cli) {
        Ok(outcome) => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "seed": cli.seed,
                "result": outcome.result,
            });
            emit(&cli, &doc, &outcome.summary);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(ctx) => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "seed": cli.seed,
                "error": {
                    "module": ctx.module,
                    "operation": ctx.operation,
                    "kind": error_kind(&ctx.err),
                    "message": ctx.err.to_string(),
                },
            });
            emit(&cli, &doc, &format!("error: {}", ctx.err));
            ExitCode::from(exit_for(&ctx.err))
        }
    }
}
