use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use pmatroid::evencut::{
    base_case_size, c_for_epsilon, connectivity_reduce, dim_feasible, dim_min_cocycle, repetitions,
    set_feasible, set_min_even_cut, ConnectivityReduction, ContractionOptions, CutResult,
    DEFAULT_T_CAP,
};
use pmatroid::format::{self, ParityInstance};
use pmatroid::gf2::{cogirth_oracle, girth_oracle, MatroidRep};
use pmatroid::parityjoin::{parity_cycle, parity_join, parity_walk};
use pmatroid::pfaffian::{
    default_reps, parity_matching, pfaffian_dag_with, pfaffian_naive, DagRules, DEFAULT_CONFIDENCE,
};
use pmatroid::pipeline::{cogirth_perturbed, girth_perturbed, SolverConfig};
use pmatroid::selftest::{selftest, SelftestOptions};
use pmatroid::{gen, ExtNat, Gf2Matrix};

/// Girth and cogirth of low-rank perturbations of graphic matroids, with
/// the underlying even-cut, parity-matching and parity-join solvers.
#[derive(Parser)]
#[command(name = "pmatroid", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Allowed failure probability of randomized commands.
    #[arg(long, global = true, default_value_t = 1e-6)]
    epsilon: f64,
    /// Print one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixInput {
    /// Incidence matrix A (gf2matrix file).
    #[arg(long = "A", requires = "p", conflicts_with = "pair")]
    a: Option<PathBuf>,
    /// Perturbation P (gf2matrix file).
    #[arg(long = "P", requires = "a")]
    p: Option<PathBuf>,
    /// A and P in one `perturbed` file.
    #[arg(long)]
    pair: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Girth,
    Cogirth,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Perturbed,
    EvencutSet,
    EvencutDim,
    Graft,
    Matching,
    Parity,
    Skewmatrix,
}

#[derive(Subcommand)]
enum Command {
    /// Girth of M(A + P).
    Girth(MatrixInput),
    /// Cogirth of M(A + P) with a minimum cocycle.
    Cogirth(MatrixInput),
    /// Minimum even cut of an `evencut-set` file.
    EvencutSet {
        file: PathBuf,
        /// Repetition multiplier; derived from --epsilon if absent.
        #[arg(long)]
        confidence: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_T_CAP)]
        t_cap: u32,
    },
    /// Minimum cocycle of an `evencut-dim` file.
    EvencutDim {
        file: PathBuf,
        #[arg(long)]
        confidence: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_T_CAP)]
        t_cap: u32,
    },
    /// Minimum-weight perfect matching of prescribed parity (`matching` file).
    Paritymatch {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
        confidence: u64,
        /// Repetitions; derived from --epsilon and the confidence if absent.
        #[arg(long)]
        reps: Option<u64>,
    },
    /// Minimum T-join of prescribed parity (`parity` file with a T line).
    Parityjoin {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
        confidence: u64,
        #[arg(long)]
        reps: Option<u64>,
    },
    /// Shortest walk of prescribed parity between the two vertices of the T line.
    Paritywalk { file: PathBuf },
    /// Smallest even subgraph of prescribed parity (`parity` file, no T line).
    Paritycycle { file: PathBuf },
    /// Pfaffian of a `skewmatrix` file.
    Pfaffian {
        file: PathBuf,
        /// Expand over all pairings instead (order at most 12).
        #[arg(long)]
        naive: bool,
    },
    /// Exhaustive girth or cogirth of M(A + P).
    Oracle {
        kind: OracleKind,
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Print a random instance.
    Gen {
        kind: GenKind,
        /// Rows of a perturbed pair.
        #[arg(long, default_value_t = 5)]
        r: usize,
        /// Vertices, or columns of a perturbed pair.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Edges.
        #[arg(long, default_value_t = 9)]
        m: usize,
        /// Parity dimension, rank of P, or columns of a graft.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Rows of a graft.
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        /// Size of the T line of a parity instance.
        #[arg(long, default_value_t = 2)]
        terminals: usize,
        /// Write A here instead of printing a `perturbed` file.
        #[arg(long, requires = "out_p")]
        out_a: Option<PathBuf>,
        #[arg(long, requires = "out_a")]
        out_p: Option<PathBuf>,
    },
    /// Compare every solver with its exhaustive reference.
    Selftest {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Corrupt the Pfaffian rule table (the Pfaffian suite must fail).
        #[arg(long)]
        mutate_dag: bool,
    },
}

/// Ordered output fields.
#[derive(Default)]
struct Output(Vec<(&'static str, Value)>);

impl Output {
    fn put(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }

    fn ext(&mut self, key: &'static str, v: ExtNat) -> &mut Self {
        match v.value() {
            Some(k) => self.put(key, k),
            None => self.put(key, "inf"),
        }
    }

    fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self
                .0
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut out = String::new();
        for (k, v) in &self.0 {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) => items
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}={text}\n"));
        }
        out
    }
}

/// Failure reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn with_path<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn matrices(input: &MatrixInput) -> Result<(Gf2Matrix, Gf2Matrix), InputError> {
    match (&input.pair, &input.a, &input.p) {
        (Some(pair), _, _) => with_path(pair, format::parse_perturbed(&read(pair)?)),
        (None, Some(a), Some(p)) => Ok((
            with_path(a, format::parse_gf2matrix(&read(a)?))?,
            with_path(p, format::parse_gf2matrix(&read(p)?))?,
        )),
        _ => Err(InputError("give --A and --P, or --pair".into())),
    }
}

fn cut_fields(out: &mut Output, best: Option<&CutResult>) {
    match best {
        Some(r) => out.put("value", r.size).put("witness", r.edges.clone()),
        None => out.put("value", "inf").put("witness", Vec::<usize>::new()),
    };
}

fn parity_file(path: &Path) -> Result<ParityInstance, InputError> {
    with_path(path, format::parse_parity(&read(path)?))
}

fn run(cli: &Cli) -> Result<(Output, bool), InputError> {
    if !(cli.epsilon > 0.0 && cli.epsilon < 1.0) {
        return Err(InputError(format!(
            "--epsilon must lie in (0, 1), got {}",
            cli.epsilon
        )));
    }
    let cfg = SolverConfig {
        epsilon: cli.epsilon,
        seed: cli.seed,
        ..SolverConfig::default()
    };
    let mut out = Output::default();
    match &cli.command {
        Command::Girth(input) => {
            let (a, p) = matrices(input)?;
            let r = girth_perturbed(&a, &p, &cfg)?;
            out.ext("value", r.value)
                .put("branches", r.branches)
                .put("c", r.c)
                .put("reps", r.reps);
        }
        Command::Cogirth(input) => {
            let (a, p) = matrices(input)?;
            let r = cogirth_perturbed(&a, &p, &cfg)?;
            out.ext("value", r.value)
                .put("witness", r.witness)
                .put("branches", r.branches)
                .put("c", r.c)
                .put("reps", r.reps);
        }
        Command::EvencutSet {
            file,
            confidence,
            t_cap,
        } => {
            let inst = with_path(file, format::parse_evencut_set(&read(file)?))?;
            let c = confidence.unwrap_or_else(|| c_for_epsilon(cli.epsilon));
            let n = inst.graph.n();
            let reps = if n <= base_case_size(inst.t()) {
                1
            } else {
                repetitions(c, n)
            };
            if set_feasible(&inst) {
                let r = set_min_even_cut(&inst, c, cli.seed, ContractionOptions { t_cap: *t_cap })?;
                cut_fields(&mut out, Some(&r));
                out.put("side", r.side);
            } else {
                cut_fields(&mut out, None);
                out.put("side", Vec::<usize>::new());
            }
            out.put("c", c).put("reps", reps);
        }
        Command::EvencutDim {
            file,
            confidence,
            t_cap,
        } => {
            let inst = with_path(file, format::parse_evencut_dim(&read(file)?))?;
            let c = confidence.unwrap_or_else(|| c_for_epsilon(cli.epsilon));
            let opts = ContractionOptions { t_cap: *t_cap };
            let n = inst.graph.n();
            let reps = if n <= base_case_size(inst.t) {
                1
            } else {
                repetitions(c, n)
            };
            let best = match connectivity_reduce(&inst) {
                ConnectivityReduction::Direct(best) => best,
                ConnectivityReduction::Connected(parts) => {
                    let mut best: Option<CutResult> = None;
                    for (i, part) in parts.iter().enumerate().filter(|(_, p)| dim_feasible(p)) {
                        let seed = pmatroid::seed::derive_seed(cli.seed, i as u64);
                        let r = dim_min_cocycle(part, c, seed, opts)?;
                        if best.as_ref().is_none_or(|b| r.better_than(b)) {
                            best = Some(r);
                        }
                    }
                    best
                }
            };
            cut_fields(&mut out, best.as_ref());
            out.put("c", c).put("reps", reps);
        }
        Command::Paritymatch {
            file,
            confidence,
            reps,
        } => {
            let inst = with_path(file, format::parse_matching(&read(file)?))?;
            if *confidence == 0 {
                return Err(InputError("--confidence must be positive".into()));
            }
            let reps = reps.unwrap_or_else(|| default_reps(cli.epsilon, *confidence));
            let v = parity_matching(&inst, *confidence, reps, cli.seed)?;
            out.ext("value", v).put("c", *confidence).put("reps", reps);
        }
        Command::Parityjoin {
            file,
            confidence,
            reps,
        } => {
            let inst = parity_file(file)?;
            let terminals: std::collections::BTreeSet<_> = inst.terminals.iter().copied().collect();
            if terminals.len() != inst.terminals.len() {
                return Err(InputError(format!(
                    "{}: T lists a vertex twice",
                    file.display()
                )));
            }
            if *confidence == 0 {
                return Err(InputError("--confidence must be positive".into()));
            }
            let reps = reps.unwrap_or_else(|| default_reps(cli.epsilon, *confidence));
            let v = parity_join(
                &inst.graph,
                &terminals,
                inst.alpha,
                *confidence,
                reps,
                cli.seed,
            )?;
            out.ext("value", v).put("c", *confidence).put("reps", reps);
        }
        Command::Paritywalk { file } => {
            let inst = parity_file(file)?;
            let [u, v] = inst.terminals[..] else {
                return Err(InputError(format!(
                    "{}: T must list exactly two vertices",
                    file.display()
                )));
            };
            out.ext("value", parity_walk(&inst.graph, inst.alpha, u, v)?);
        }
        Command::Paritycycle { file } => {
            let inst = parity_file(file)?;
            if !inst.terminals.is_empty() {
                return Err(InputError(format!(
                    "{}: a cycle file has no T line",
                    file.display()
                )));
            }
            out.ext("value", parity_cycle(&inst.graph, inst.alpha)?);
        }
        Command::Pfaffian { file, naive } => {
            let d = with_path(file, format::parse_skew(&read(file)?))?;
            if *naive {
                out.put("value", pfaffian_naive(&d)?.to_string());
            } else {
                let (pf, stats) = pfaffian_dag_with(&d, DagRules::FROZEN);
                out.put("value", pf.to_string())
                    .put("bigint", stats.used_bigint);
            }
        }
        Command::Oracle { kind, input } => {
            let (a, p) = matrices(input)?;
            let m = MatroidRep::from_matrix(a.add(&p)?);
            let v = match kind {
                OracleKind::Girth => girth_oracle(&m)?,
                OracleKind::Cogirth => cogirth_oracle(&m)?,
            };
            out.ext("value", v);
        }
        Command::Gen {
            kind,
            r,
            n,
            m,
            t,
            s,
            max_weight,
            terminals,
            out_a,
            out_p,
        } => {
            let (n, m, seed) = (*n, *m, cli.seed);
            let text = match kind {
                GenKind::Perturbed => {
                    let (a, p) = gen::perturbed(*r, n, *t as usize, seed)?;
                    if let (Some(fa), Some(fp)) = (out_a, out_p) {
                        fs::write(fa, format::write_gf2matrix(&a))?;
                        fs::write(fp, format::write_gf2matrix(&p))?;
                        return Ok((out, true));
                    }
                    format::write_perturbed(&a, &p)
                }
                GenKind::EvencutSet => {
                    format::write_evencut_set(&gen::evencut_set(n, m, *t, seed)?)
                }
                GenKind::EvencutDim => {
                    format::write_evencut_dim(&gen::evencut_dim(n, m, *t, seed)?)
                }
                GenKind::Graft => format::write_graft(&gen::graft(n, m, *s, *t as usize, seed)?),
                GenKind::Matching => {
                    format::write_matching(&gen::matching_instance(n, m, *t, *max_weight, seed)?)
                }
                GenKind::Parity => {
                    let (graph, set, alpha) =
                        gen::parity_join_instance(n, m, *t, *terminals, seed)?;
                    format::write_parity(&ParityInstance {
                        graph,
                        terminals: set.into_iter().collect(),
                        alpha,
                    })
                }
                GenKind::Skewmatrix => {
                    format::write_skew(&gen::skew_matrix(n, *t, 0.7, 2, 5, 3, seed)?)
                }
            };
            print!("{text}");
            return Ok((out, true));
        }
        Command::Selftest { trials, mutate_dag } => {
            let report = selftest(
                *trials,
                cli.seed,
                SelftestOptions {
                    mutate_dag: *mutate_dag,
                },
            );
            if cli.json {
                let suites: Vec<Value> = report
                    .suites
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "suite": s.name,
                            "passed": s.passed,
                            "trials": s.trials,
                            "ok": s.ok(),
                            "failures": s.failures,
                        })
                    })
                    .collect();
                out.put("ok", report.ok()).put("suites", suites);
            } else {
                print!("{report}");
            }
            return Ok((out, report.ok()));
        }
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{}", out.render(cli.json));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
