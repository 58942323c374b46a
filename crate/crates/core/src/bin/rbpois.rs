use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rbpois::json::{element_to_string, word_to_json};
use rbpois::kernel::{parse_scalar, Alphabet, Element, Policy, Weight};
use rbpois::models::{check_operator, check_prop2, ModelFile};
use rbpois::poisrb::{Engine, EngineError};
use rbpois::rblie::Strategy;
use rbpois::suites::{model_file_suite, run_suite, Suite, SuiteConfig};
use rbpois::syntax::{default_alphabet, evaluate, parse};

#[derive(Parser)]
#[command(name = "rbpois", version, about = "Normal forms in free Poisson Rota-Baxter and Poisson Nijenhuis algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Law {
    /// Rota-Baxter weight, an integer or `p/q` (default 0).
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true, conflicts_with = "ns")]
    weight: Option<String>,
    /// Nijenhuis operator `N` instead of a Rota-Baxter operator `R`.
    #[arg(long)]
    ns: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize an expression.
    Normalize {
        expr: String,
        #[command(flatten)]
        law: Law,
        /// Generator order, smallest first (default: natural sort of the names used).
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<String>>,
        /// Expand brackets by left-normed Jacobi rewriting instead of bottom-up.
        #[arg(long)]
        left_normed: bool,
        /// Also print the JSON form.
        #[arg(long)]
        json: bool,
    },
    /// Run an identity suite: rbcom, poisrb, nspois or models.
    Check {
        suite: String,
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        xdeg: u32,
        #[arg(long, default_value_t = 2)]
        rdeg: u32,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Number of generators.
        #[arg(long, default_value_t = 2)]
        gens: usize,
        /// Terms per random element.
        #[arg(long, default_value_t = 2)]
        terms: usize,
        /// Model file for the models suite (default: the built-in polynomial model).
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List basis words within bounds.
    Enumerate {
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 2)]
        xdeg: u32,
        #[arg(long, default_value_t = 1)]
        rdeg: u32,
        /// Generator symbols, smallest first.
        #[arg(long, value_delimiter = ',', default_value = "x,y")]
        gens: Vec<String>,
        /// Only words using every generator exactly once.
        #[arg(long)]
        multilinear: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an operator letter is expressible.
    Expressible {
        word: String,
        #[command(flatten)]
        law: Law,
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<String>>,
    },
    /// Validate a model file: axioms, operator law and attached tensor.
    ModelCheck { file: PathBuf },
    /// Dimension of the multilinear span of the derived products `Op(a)·b` and `[Op(a),b]`.
    SpanDim {
        n: usize,
        #[arg(long, default_value_t = 3)]
        rdeg_cap: u32,
        #[command(flatten)]
        law: Law,
    },
}

enum Exit {
    Fail,
    Usage(String),
    Internal(String),
}

impl From<EngineError> for Exit {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::FuelExhausted(_) => Exit::Internal(e.to_string()),
            EngineError::Bounds(b) => Exit::Usage(b.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Exit {
    Exit::Usage(e.to_string())
}

fn engine(law: &Law) -> Result<Engine, Exit> {
    let e = if law.ns {
        Engine::nijenhuis()
    } else {
        let w = law.weight.as_deref().map(parse_scalar).transpose().map_err(usage)?.unwrap_or_default();
        Engine::new(Policy::RotaBaxter(Weight(w)))
    };
    Ok(e.with_env_fuel())
}

fn alphabet_for(gens: &Option<Vec<String>>, expr: &rbpois::syntax::Expr) -> Result<Alphabet, Exit> {
    match gens {
        Some(g) => Alphabet::new(g).map_err(usage),
        None => default_alphabet(expr).map_err(usage),
    }
}

fn run(cli: Cli) -> Result<(), Exit> {
    match cli.cmd {
        Cmd::Normalize { expr, law, gens, left_normed, json } => {
            let e = engine(&law)?;
            let parsed = parse(&expr).map_err(usage)?;
            let abc = alphabet_for(&gens, &parsed)?;
            let strategy = if left_normed { Strategy::LeftNormed } else { Strategy::BottomUp };
            let c = e.guarded(|e| evaluate(e, &abc, &parsed, strategy))?.map_err(usage)?;
            println!("{}", c.to_text(e.symbol()));
            if json {
                println!("{}", element_to_string(&c, e.symbol()));
            }
        }
        Cmd::Check { suite, law, seed, xdeg, rdeg, cases, gens, terms, model, json } => {
            let suite: Suite = suite.parse().map_err(usage)?;
            let policy = engine(&law)?.policy().clone();
            let cfg = SuiteConfig { seed, xdeg, rdeg, cases, gens, max_terms: terms, policy };
            let report = match (&model, suite) {
                (Some(path), Suite::Models) => {
                    let text = std::fs::read_to_string(path).map_err(usage)?;
                    let file = ModelFile::parse(&text).map_err(usage)?;
                    model_file_suite(&cfg, &file).map_err(|m| {
                        eprintln!("{m}");
                        Exit::Fail
                    })?
                }
                (Some(_), _) => return Err(usage("--model applies to the models suite only")),
                (None, s) => run_suite(s, &cfg).map_err(usage)?,
            };
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
            if !report.passed() {
                return Err(Exit::Fail);
            }
        }
        Cmd::Enumerate { law, xdeg, rdeg, gens, multilinear, count, json } => {
            let e = engine(&law)?;
            let abc = Alphabet::new(&gens).map_err(usage)?;
            let words = e.guarded(|e| e.enumerate_basis(&abc, xdeg, rdeg, multilinear))?.map_err(usage)?;
            if json {
                let list: Vec<_> = words.iter().map(word_to_json).collect();
                let v = serde_json::json!({"schema": rbpois::json::SCHEMA_VERSION, "count": words.len(), "words": list});
                println!("{v}");
            } else {
                if !count {
                    for w in &words {
                        println!("{}", w.display(e.symbol()));
                    }
                }
                println!("count {}", words.len());
            }
        }
        Cmd::Expressible { word, law, gens } => {
            let e = engine(&law)?;
            let parsed = parse(&word).map_err(usage)?;
            let abc = alphabet_for(&gens, &parsed)?;
            let c: Element = e.guarded(|e| evaluate(e, &abc, &parsed, Strategy::BottomUp))?.map_err(usage)?;
            let sym = e.symbol();
            let atom = match c.sorted_terms().as_slice() {
                [(w, k)] if num_traits::One::is_one(*k) => w.as_r_letter().cloned(),
                _ => None,
            }
            .ok_or_else(|| usage(format!("`{}` is not a single operator letter", c.to_text(sym))))?;
            match e.guarded(|e| e.witness(&atom))? {
                Some(w) => {
                    println!(
                        "expressible: k={}, a={}, b={}",
                        rbpois::kernel::fmt_scalar(&w.k),
                        w.e.display(sym),
                        w.f.display(sym)
                    );
                    println!("residual: {}", w.residual.to_text(sym));
                }
                None => println!("not expressible"),
            }
        }
        Cmd::ModelCheck { file } => {
            let text = std::fs::read_to_string(&file).map_err(usage)?;
            let mf = ModelFile::parse(&text).map_err(usage)?;
            let alg = match mf.algebra() {
                Ok(a) => a,
                Err(err @ rbpois::models::ModelError::Axiom { .. }) => {
                    println!("FAIL: {err}");
                    return Err(Exit::Fail);
                }
                Err(err) => return Err(usage(err)),
            };
            println!("algebra: dimension {}, Poisson axioms ok", alg.dim());
            let mut ok = true;
            if let Some((op, policy)) = mf.operator().map_err(usage)? {
                let rep = check_operator(&alg, &op, &policy, &alg.basis());
                println!("operator: {rep}");
                ok &= rep.passed();
            }
            if let Some((r, lambda)) = mf.tensor().map_err(usage)? {
                match check_prop2(&alg, &r, &lambda) {
                    Ok(rep) => {
                        println!(
                            "tensor: solves the equation of weight {}; principal operator of weight {}: {}; contraction identity: {}",
                            rbpois::kernel::fmt_scalar(&rep.aybe_weight),
                            rbpois::kernel::fmt_scalar(&rep.operator_weight),
                            rep.operator,
                            if rep.contraction { "ok" } else { "fails" }
                        );
                        ok &= rep.passed();
                    }
                    Err(err) => {
                        println!("tensor: {err}");
                        ok = false;
                    }
                }
            }
            println!("{}", if ok { "PASS" } else { "FAIL" });
            if !ok {
                return Err(Exit::Fail);
            }
        }
        Cmd::SpanDim { n, rdeg_cap, law } => {
            let e = engine(&law)?;
            let d = e.guarded(|e| e.pre_post_span_dim(n, rdeg_cap))?.map_err(usage)?;
            println!("{d}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit::Fail) => ExitCode::from(1),
        Err(Exit::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Exit::Internal(m)) => {
            eprintln!("internal: {m}");
            ExitCode::from(3)
        }
    }
}
