use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hierarchy_lab::ast::{parse_with, Formula, Signature};
use hierarchy_lab::hierarchy::{classify_report, DEFAULT_RANK_CAP};
use hierarchy_lab::normalize::{
    b_decompose, e_neg_witness_epi, e_witness_esigma, prenex_in_class, prenex_in_class_as,
    u_neg_witness_esigma, u_witness_epi, witness_sigma, Polarity, Side, WitnessResult,
};
use hierarchy_lab::oracle::{run_suite, EnumConfig, Enumerator, ExecMode, SuiteConfig, SUITES};
use hierarchy_lab::translate::{
    a_translate, dollar_translate, dual, kuroda_translate, scheme_instance, SchemeId,
};
use hierarchy_lab::Error;

const GRAMMAR: &str = "\
formula grammar (loosest first, -> is right-associative):
  formula := (forall|exists) ident+ . formula | impl
  impl    := disj (-> impl)?
  disj    := conj (\\/ conj)*
  conj    := neg (/\\ neg)*
  neg     := ~ neg | atom
  atom    := bot | $ | ident(term, ...) | ident | term = term | term <= term | (formula)
  term    := ident | 0 | S term | term + term | term * term | (term)
a formula may also be given as a JSON AST object";

#[derive(Parser)]
#[command(
    name = "hierarchy-lab",
    version,
    about = "Arithmetical-hierarchy classes, translations and witnesses"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Signature file with one `name/arity` per line; predicates are unchecked without it.
    #[arg(long, global = true)]
    sig: Option<String>,
    /// Read formulas from a file, one per line (`-` for stdin).
    #[arg(long, global = true)]
    file: Option<String>,
    /// RNG seed for sampled checks.
    #[arg(long, global = true, env = "HIERARCHY_LAB_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dollar,
    A,
    Kuroda,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassSide {
    E,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    UEpi,
    EEpiNeg,
    UEsigmaNeg,
    EEsigma,
    SigmaPos,
    SigmaNeg,
    BDecompose,
}

#[derive(Subcommand)]
enum Command {
    /// Alternation paths, degree and least rank in every class family.
    Classify {
        formula: Option<String>,
        /// Highest rank tried per family.
        #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
        cap: i32,
    },
    /// Apply a translation.
    Translate {
        #[arg(long, value_enum)]
        kind: Kind,
        formula: Option<String>,
    },
    /// Prenex a formula into strict Sigma_k or Pi_k.
    Prenex {
        #[arg(long)]
        rank: usize,
        /// Force the existential (Sigma) or universal (Pi) side.
        #[arg(long, value_enum)]
        class: Option<ClassSide>,
        formula: Option<String>,
    },
    /// Build a witness formula.
    Witness {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        rank: usize,
        formula: Option<String>,
    },
    /// Instantiate a logical scheme.
    Scheme {
        /// LEM, DNE, DNS, CD, DML, DMLDUAL, DNEC, DNSC or DNER.
        #[arg(long)]
        name: String,
        /// Bound variable for DNS and CD.
        #[arg(long)]
        var: Option<String>,
        /// Formula payload.
        formulas: Vec<String>,
    },
    /// List the enumeration over atoms bot, p, q(x) and variables x, y.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Print only the number of formulas.
        #[arg(long)]
        count: bool,
    },
    /// Run an oracle suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Ctx {
    format: Format,
    sig: Signature,
}

impl Ctx {
    fn parse(&self, src: &str) -> Result<Formula, Failure> {
        let src = src.trim();
        if src.starts_with('{') {
            let f: Formula = serde_json::from_str(src)
                .map_err(|e| Failure::Domain(format!("bad JSON formula: {e}")))?;
            // reparse the rendering to apply the signature checks
            return parse_with(&f.to_string(), &self.sig)
                .map_err(|e| Failure::Domain(e.to_string()));
        }
        parse_with(src, &self.sig).map_err(|e| Failure::Domain(format!("{e}\n\n{GRAMMAR}")))
    }
}

fn formula_json(f: &Formula) -> Value {
    json!({ "text": f.to_string(), "ast": f })
}

fn witness_json(input: &Formula, w: &WitnessResult) -> Value {
    json!({
        "input": input.to_string(),
        "witness": formula_json(&w.witness),
        "target_class": w.target_class.to_string(),
        "forward_over": w.forward_over.to_string(),
        "backward_over": w.backward_over.to_string(),
    })
}

/// One formula's result: JSON value and its text rendering.
type Output = (Value, String);

fn run_one(ctx: &Ctx, cmd: &Command, src: &str) -> Result<Output, Failure> {
    let f = ctx.parse(src)?;
    match cmd {
        Command::Classify { cap, .. } => {
            let r = classify_report(&f, *cap);
            let classes = r
                .classes
                .iter()
                .map(|(name, k)| match k {
                    Some(k) => format!("{name}:{k}"),
                    None => format!("{name}:-"),
                })
                .collect::<Vec<_>>()
                .join(" ");
            let text = format!("degree {} {classes}", r.degree);
            Ok((serde_json::to_value(&r).expect("serializable"), text))
        }
        Command::Translate { kind, .. } => {
            let g = match kind {
                Kind::Dollar => dollar_translate(&f)?,
                Kind::A => a_translate(&f)?,
                Kind::Kuroda => kuroda_translate(&f),
                Kind::Dual => dual(&f)?,
            };
            let v = json!({ "input": f.to_string(), "output": formula_json(&g) });
            Ok((v, g.to_string()))
        }
        Command::Prenex { rank, class, .. } => {
            let w = match class {
                None => prenex_in_class(&f, *rank)?,
                Some(ClassSide::E) => prenex_in_class_as(&f, *rank, Side::E)?,
                Some(ClassSide::U) => prenex_in_class_as(&f, *rank, Side::U)?,
            };
            Ok((witness_json(&f, &w), w.witness.to_string()))
        }
        Command::Witness { lemma, rank, .. } => {
            let k = *rank;
            let w = match lemma {
                Lemma::UEpi => u_witness_epi(&f, k)?,
                Lemma::EEpiNeg => e_neg_witness_epi(&f, k)?,
                Lemma::UEsigmaNeg => u_neg_witness_esigma(&f, k)?,
                Lemma::EEsigma => e_witness_esigma(&f, k)?,
                Lemma::SigmaPos => witness_sigma(&f, k, Polarity::Pos)?,
                Lemma::SigmaNeg => witness_sigma(&f, k, Polarity::Neg)?,
                Lemma::BDecompose => {
                    let d = b_decompose(&f, k)?;
                    let v = json!({
                        "input": f.to_string(),
                        "pos": formula_json(&d.pos),
                        "neg": formula_json(&d.neg),
                        "rank": d.rank,
                        "forward_over": d.forward_over.to_string(),
                        "backward_over": d.backward_over.to_string(),
                    });
                    return Ok((v, format!("pos: {}\nneg: {}", d.pos, d.neg)));
                }
            };
            Ok((witness_json(&f, &w), w.witness.to_string()))
        }
        _ => unreachable!("formula commands only"),
    }
}

fn emit(ctx: &Ctx, out: &mut impl Write, (v, text): &Output) -> io::Result<()> {
    match ctx.format {
        Format::Json => writeln!(out, "{v}"),
        Format::Text => writeln!(out, "{text}"),
    }
}

fn read_lines(path: &str) -> Result<Vec<String>, Failure> {
    let lines: io::Result<Vec<String>> = if path == "-" {
        io::stdin().lock().lines().collect()
    } else {
        std::fs::read_to_string(path).map(|s| s.lines().map(str::to_string).collect())
    };
    let lines = lines.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(lines
        .into_iter()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let sig = match &cli.sig {
        None => Signature::open(),
        Some(path) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            Signature::from_decls(&src).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
        }
    };
    let ctx = Ctx {
        format: cli.format,
        sig,
    };
    let io_err = |e: io::Error| Failure::Domain(e.to_string());
    match &cli.command {
        Command::Classify { formula, .. }
        | Command::Translate { formula, .. }
        | Command::Prenex { formula, .. }
        | Command::Witness { formula, .. } => {
            let inputs = match (formula, &cli.file) {
                (Some(f), None) => vec![f.clone()],
                (None, Some(path)) => read_lines(path)?,
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage("give a formula or --file, not both".into()))
                }
                (None, None) => return Err(Failure::Usage("missing formula".into())),
            };
            let mut first_err = None;
            for src in &inputs {
                match run_one(&ctx, &cli.command, src) {
                    Ok(o) => emit(&ctx, out, &o).map_err(io_err)?,
                    Err(Failure::Domain(e)) if inputs.len() > 1 => {
                        eprintln!("{src}: {e}");
                        if ctx.format == Format::Json {
                            writeln!(out, "{}", json!({ "input": src, "error": e }))
                                .map_err(io_err)?;
                        }
                        first_err.get_or_insert(Failure::Domain(format!("{src}: {e}")));
                    }
                    Err(e) => return Err(e),
                }
            }
            first_err.map_or(Ok(()), Err)
        }
        Command::Scheme {
            name,
            var,
            formulas,
        } => {
            let id = SchemeId::from_name(&name.to_uppercase())
                .ok_or_else(|| Failure::Usage(format!("unknown scheme {name}")))?;
            let phis = formulas
                .iter()
                .map(|s| ctx.parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            let inst = scheme_instance(id, &phis, var.as_deref())?;
            let o = (
                json!({ "scheme": id.name(), "instance": inst }),
                inst.to_string(),
            );
            emit(&ctx, out, &o).map_err(io_err)
        }
        Command::Enumerate { max_size, count } => {
            let e = Enumerator::new(EnumConfig::standard(*max_size));
            if *count {
                let o = (
                    json!({ "max_size": max_size, "count": e.total() }),
                    e.total().to_string(),
                );
                return emit(&ctx, out, &o).map_err(io_err);
            }
            for f in e.iter() {
                let o = (formula_json(&f), f.to_string());
                emit(&ctx, out, &o).map_err(io_err)?;
            }
            Ok(())
        }
        Command::Check {
            suite,
            max_size,
            samples,
            sequential,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite}; registered: {}",
                    SUITES.join(", ")
                )));
            }
            let mut cfg = SuiteConfig {
                max_size: *max_size,
                samples: *samples,
                ..SuiteConfig::default()
            };
            if let Some(seed) = cli.seed {
                cfg = cfg.with_seed(seed);
            }
            if *sequential {
                cfg.mode = ExecMode::Sequential;
            }
            let r = run_suite(suite, &cfg)?;
            match ctx.format {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))
                        .map_err(io_err)?
                }
                Format::Text => {
                    let status = if r.passed() { "pass" } else { "FAIL" };
                    writeln!(
                        out,
                        "{}: {status} ({} checked, {} failures, {} inconclusive)",
                        r.suite,
                        r.checked,
                        r.failures.len(),
                        r.inconclusive
                    )
                    .map_err(io_err)?;
                    for p in &r.parts {
                        writeln!(
                            out,
                            "  {}: {} checked, {} failures",
                            p.name, p.checked, p.failures
                        )
                        .map_err(io_err)?;
                    }
                    for f in r.failures.iter().take(10) {
                        writeln!(out, "  counterexample: {} ({})", f.formula, f.reason)
                            .map_err(io_err)?;
                    }
                }
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Domain(format!("suite {} failed", r.suite)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            if !usage {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{GRAMMAR}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
