//! Command-line surface for the equational-reasoning library.
//!
//! Exit codes: 0 pass, 1 fail/counterexample, 2 bounded exhaustion,
//! 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eqmon::decomp;
use eqmon::families;
use eqmon::identity::{
    critical_pairs, derive, Certificate, DeriveBudget, DeriveOutcome, Identity,
};
use eqmon::monoid;
use eqmon::paperlab;
use eqmon::variety::{holds_in_f, holds_in_lrb, invariant_preserved, InvariantFn, NfbBudget};
use eqmon::words::{Letter, Word};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Equational reasoning over monoid words.
#[derive(Parser)]
#[command(name = "eqmon", version, about, after_help = "\
WORD GRAMMAR:
    word     := \"1\" | token (WS token)*     (\"1\" is the empty word)
    token    := [a-z][a-z0-9]*
    identity := WORD = WORD                  (one shell argument, e.g. \"x y = x y x\")

EXAMPLES:
    eqmon word depth \"x s x t\" x
    eqmon id check --variety lrb \"x y = x y x\"
    eqmon fam gen delta 2 1
    eqmon monoid check p21 \"x y = y x\"
    eqmon prove --axioms i11,kappa1 \"x x1 x x0 x1 = x x x1 x0 x1\"
    eqmon nfb check --axioms kappa1 --pattern \"x y t x y\" --samples 10000 --seed 42
    eqmon paperlab run all --report report.json")]
struct Cli {
    /// Worker threads for parallel suites (0 = available parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word-level operations: parsing, projections, decompositions.
    Word(WordCmd),
    /// Identity-level checks against decidable varieties.
    Id(IdCmd),
    /// Identity-family generators.
    Fam(FamCmd),
    /// Finite-monoid model checking.
    Monoid(MonoidCmd),
    /// Bounded derivation search with optional certificate output.
    Prove(ProveArgs),
    /// Re-verify a stored proof certificate.
    Replay(ReplayArgs),
    /// Bounded invariant-preservation evidence runs.
    Nfb(NfbCmd),
    /// Named verification suites.
    Paperlab(PaperlabCmd),
}

#[derive(Args)]
struct WordCmd {
    #[command(subcommand)]
    op: WordOp,
}

#[derive(Subcommand)]
enum WordOp {
    /// Parse and re-render a word.
    Parse { word: String },
    /// Content, simple and multiple letters.
    Classify {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Depth of a letter (prints `inf` for infinite depth).
    Depth { word: String, letter: String },
    /// Decomposition levels, one line per level 0..=max (capped by --level).
    Decompose {
        word: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// First-occurrence projection.
    Ini { word: String },
    /// First-and-second-occurrence projection.
    Ini2 { word: String },
    /// Squared initial part.
    Inisq { word: String },
    /// Are the two words k-well-balanced?
    Wb {
        u: String,
        v: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
}

#[derive(Args)]
struct IdCmd {
    #[command(subcommand)]
    op: IdOp,
}

#[derive(Subcommand)]
enum IdOp {
    /// Decide the identity in a variety with a word-problem decider
    /// (`lrb` or `f:K`).
    Check {
        #[arg(long)]
        variety: String,
        identity: String,
    },
    /// List the critical pairs of a balanced identity.
    Critical { identity: String },
}

#[derive(Args)]
struct FamCmd {
    #[command(subcommand)]
    op: FamOp,
}

#[derive(Subcommand)]
enum FamOp {
    /// Print a family member, e.g. `fam gen delta 2 1`.
    Gen { name: String, params: Vec<usize> },
    /// List family names and arities.
    List,
}

#[derive(Args)]
struct MonoidCmd {
    #[command(subcommand)]
    op: MonoidOp,
}

#[derive(Subcommand)]
enum MonoidOp {
    /// Check an identity against a builtin monoid (p21, b21, lz2_1) or a
    /// JSON table file.
    Check {
        name: String,
        identity: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a monoid table (or its JSON form).
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ProveArgs {
    /// Axiom set, e.g. `i11,kappa1` or `omega1:1`.
    #[arg(long)]
    axioms: String,
    identity: String,
    #[arg(long, default_value_t = 12)]
    max_steps: usize,
    /// Word-length cap (default: max side length + 6).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    max_nodes: usize,
    /// Write the certificate to this file on success.
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// Certificate file produced by `prove`.
    file: PathBuf,
    /// Axiom set to verify against (default: the certificate's own list,
    /// resolved through the family catalog).
    #[arg(long)]
    axioms: Option<String>,
}

#[derive(Args)]
struct NfbCmd {
    #[command(subcommand)]
    op: NfbOp,
}

#[derive(Subcommand)]
enum NfbOp {
    /// Sample single deduction steps from words matching the pattern and
    /// report any change of the projected ini2 value. The ambient axiom
    /// (1.1) is always included.
    Check {
        #[arg(long)]
        axioms: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct PaperlabCmd {
    #[command(subcommand)]
    op: PaperlabOp,
}

#[derive(Subcommand)]
enum PaperlabOp {
    /// Run one suite or all of them.
    Run {
        /// all | decomposition | chains | monoid | nfb | word-problems
        suite: String,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Store and re-verify proof certificates in this directory.
        #[arg(long)]
        certs: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn parse_word(text: &str) -> anyhow::Result<Word> {
    Ok(Word::parse(text)?)
}

fn parse_identity(text: &str) -> anyhow::Result<Identity> {
    Ok(Identity::parse(text)?)
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Word(cmd) => run_word(cmd.op),
        Command::Id(cmd) => run_id(cmd.op),
        Command::Fam(cmd) => run_fam(cmd.op),
        Command::Monoid(cmd) => run_monoid(cmd.op),
        Command::Prove(args) => run_prove(args),
        Command::Replay(args) => run_replay(args),
        Command::Nfb(cmd) => run_nfb(cmd.op),
        Command::Paperlab(cmd) => run_paperlab(cmd.op),
    }
}

fn run_word(op: WordOp) -> anyhow::Result<u8> {
    match op {
        WordOp::Parse { word } => {
            println!("{}", parse_word(&word)?);
        }
        WordOp::Classify { word, json } => {
            let c = parse_word(&word)?.classify();
            let names = |s: &eqmon::LetterSet| -> Vec<String> {
                s.iter().map(|l| l.name().to_string()).collect()
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "con": names(&c.con),
                        "sim": names(&c.sim),
                        "mul": names(&c.mul),
                    })
                );
            } else {
                println!("con: {}", names(&c.con).join(" "));
                println!("sim: {}", names(&c.sim).join(" "));
                println!("mul: {}", names(&c.mul).join(" "));
            }
        }
        WordOp::Depth { word, letter } => {
            let w = parse_word(&word)?;
            let l = Letter::new(&letter)?;
            println!("{}", decomp::depth(&w, &l)?);
        }
        WordOp::Decompose { word, level } => {
            let w = parse_word(&word)?;
            let top = decomp::max_level(&w);
            let cap = level.unwrap_or(top).min(top);
            for k in 0..=cap {
                println!("{}", decomp::decompose(&w, k).render(&w));
            }
        }
        WordOp::Ini { word } => println!("{}", parse_word(&word)?.ini()),
        WordOp::Ini2 { word } => println!("{}", parse_word(&word)?.ini2()),
        WordOp::Inisq { word } => println!("{}", parse_word(&word)?.ini_sq()),
        WordOp::Wb { u, v, level } => {
            let wb = decomp::well_balanced(&parse_word(&u)?, &parse_word(&v)?, level);
            println!("{wb}");
            return Ok(if wb { EXIT_PASS } else { EXIT_FAIL });
        }
    }
    Ok(EXIT_PASS)
}

fn run_id(op: IdOp) -> anyhow::Result<u8> {
    match op {
        IdOp::Check { variety, identity } => {
            let id = parse_identity(&identity)?;
            let holds = if variety == "lrb" {
                holds_in_lrb(&id)
            } else if let Some(k) = variety.strip_prefix("f:") {
                let k: usize = k.parse()?;
                anyhow::ensure!(k >= 1, "f:K needs K >= 1");
                holds_in_f(k, &id)
            } else {
                anyhow::bail!("unknown variety `{variety}` (expected lrb or f:K)");
            };
            println!("{holds}");
            Ok(if holds { EXIT_PASS } else { EXIT_FAIL })
        }
        IdOp::Critical { identity } => {
            let id = parse_identity(&identity)?;
            let pairs = critical_pairs(&id)?;
            for p in &pairs {
                println!("{p}");
            }
            if pairs.is_empty() {
                println!("(none)");
            }
            Ok(EXIT_PASS)
        }
    }
}

fn run_fam(op: FamOp) -> anyhow::Result<u8> {
    match op {
        FamOp::Gen { name, params } => {
            if name == "b" {
                anyhow::ensure!(params.len() == 2, "b takes parameters s q");
                println!("{}", families::b(params[0], params[1])?);
            } else {
                println!("{}", families::family(&name, &params)?);
            }
            Ok(EXIT_PASS)
        }
        FamOp::List => {
            for (name, arity, synopsis) in families::list() {
                println!("{name:10} {arity:6} {synopsis}");
            }
            Ok(EXIT_PASS)
        }
    }
}

fn load_monoid(name: &str) -> anyhow::Result<monoid::FiniteMonoid> {
    match monoid::builtin(name) {
        Ok(m) => Ok(m),
        Err(monoid::MonoidError::UnknownBuiltin(_)) if std::path::Path::new(name).exists() => {
            let text = std::fs::read_to_string(name)?;
            Ok(monoid::FiniteMonoid::from_json(name, &text)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn run_monoid(op: MonoidOp) -> anyhow::Result<u8> {
    match op {
        MonoidOp::Check {
            name,
            identity,
            json,
        } => {
            let m = load_monoid(&name)?;
            let id = parse_identity(&identity)?;
            match m.counterexample(&id) {
                None => {
                    if json {
                        println!("{}", serde_json::json!({"holds": true}));
                    } else {
                        println!("true");
                    }
                    Ok(EXIT_PASS)
                }
                Some(asg) => {
                    if json {
                        let map: serde_json::Map<String, serde_json::Value> = asg
                            .iter()
                            .map(|(l, &e)| (l.name().to_string(), m.elements[e].clone().into()))
                            .collect();
                        println!(
                            "{}",
                            serde_json::json!({"holds": false, "counterexample": map})
                        );
                    } else {
                        println!("{}", m.render_assignment(&asg));
                    }
                    Ok(EXIT_FAIL)
                }
            }
        }
        MonoidOp::Show { name, json } => {
            let m = load_monoid(&name)?;
            if json {
                println!("{}", m.to_json());
            } else {
                print!("{m}");
            }
            Ok(EXIT_PASS)
        }
    }
}

fn run_prove(args: ProveArgs) -> anyhow::Result<u8> {
    let axioms = families::parse_axiom_set(&args.axioms)?;
    let id = parse_identity(&args.identity)?;
    let budget = DeriveBudget {
        max_steps: args.max_steps,
        max_len: args.max_len,
        max_nodes: args.max_nodes,
    };
    match derive(&axioms, &id.lhs, &id.rhs, budget) {
        DeriveOutcome::Found(derivation) => {
            let cert = Certificate::from_derivation(&axioms, &derivation);
            if args.json {
                println!("{}", cert.to_json());
            } else {
                println!("derived in {} step(s):", derivation.len());
                for (i, w) in derivation.chain.iter().enumerate() {
                    if i == 0 {
                        println!("  {w}");
                    } else {
                        println!("  = {w}   [{}]", derivation.steps[i - 1].axiom);
                    }
                }
            }
            if let Some(path) = args.cert {
                std::fs::write(&path, cert.to_json())?;
            }
            Ok(EXIT_PASS)
        }
        DeriveOutcome::Exhausted { explored } => {
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({"exhausted": true, "explored": explored})
                );
            } else {
                println!(
                    "exhausted after exploring {explored} words (not a non-derivability proof)"
                );
            }
            Ok(EXIT_EXHAUSTED)
        }
    }
}

fn run_replay(args: ReplayArgs) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.file)?;
    let cert = Certificate::from_json(&text)?;
    let axioms = match &args.axioms {
        Some(spec) => families::parse_axiom_set(spec)?,
        None => families::parse_axiom_set(&cert.axioms.join(","))?,
    };
    match cert.verify(&axioms) {
        Ok(derivation) => {
            println!(
                "verified: {} = {} in {} step(s)",
                derivation.first(),
                derivation.last(),
                derivation.len()
            );
            Ok(EXIT_PASS)
        }
        Err(e) => {
            println!("certificate rejected: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn run_nfb(op: NfbOp) -> anyhow::Result<u8> {
    let NfbOp::Check {
        axioms,
        pattern,
        samples,
        seed,
        json,
    } = op;
    let set = families::parse_axiom_set(&format!("i11,{axioms}"))?;
    let pattern = parse_word(&pattern)?;
    let invariant = InvariantFn::Ini2Retain(pattern.content());
    let report = invariant_preserved(
        &set,
        &invariant,
        &[pattern],
        NfbBudget {
            samples,
            ..NfbBudget::default()
        },
        seed,
    );
    if json {
        println!(
            "{}",
            serde_json::json!({
                "axioms": report.axioms,
                "invariant": report.invariant,
                "pattern": report.pattern.to_string(),
                "mode": report.mode,
                "steps_checked": report.steps_checked,
                "distinct_words": report.distinct_words,
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "seed": report.seed,
            })
        );
    } else {
        println!("{}", report.summary());
        for v in &report.violations {
            println!("  {v}");
        }
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn run_paperlab(op: PaperlabOp) -> anyhow::Result<u8> {
    let PaperlabOp::Run {
        suite,
        k_max,
        samples,
        seed,
        max_len,
        alphabet,
        report,
        certs,
    } = op;
    let cert_dir = certs.as_deref();
    let reports = match suite.as_str() {
        "all" => paperlab::run_all(
            &paperlab::AllConfig {
                max_len,
                alphabet,
                k_max,
                samples,
                seed,
            },
            cert_dir,
        ),
        "decomposition" => vec![paperlab::suite_decomposition(max_len, alphabet)],
        "chains" => vec![paperlab::suite_chains(&paperlab::ChainsConfig {
            k_max,
            island_words: 50,
            seed,
            cert_dir,
        })],
        "monoid" => vec![paperlab::suite_monoid(k_max)],
        "nfb" => vec![paperlab::suite_nfb(&paperlab::NfbConfig {
            n_max: 1,
            samples,
            seed,
        })],
        "word-problems" => vec![paperlab::suite_word_problems(
            &paperlab::WordProblemsConfig {
                samples: 1_000,
                seed,
            },
        )],
        other => anyhow::bail!("unknown suite `{other}`"),
    };

    for r in &reports {
        println!(
            "suite {}: {} case(s), {} pass, {} fail, {} exhausted ({} ms)",
            r.suite,
            r.totals.cases,
            r.totals.pass,
            r.totals.fail,
            r.totals.exhausted,
            r.totals.wall_ms
        );
        for c in &r.cases {
            if c.status != paperlab::Status::Pass {
                println!(
                    "  {:10} {} {}",
                    format!("{:?}", c.status).to_lowercase(),
                    c.id,
                    c.witness.as_deref().unwrap_or("")
                );
            }
        }
    }
    if let Some(path) = report {
        let text = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        std::fs::write(&path, text)?;
    }
    let worst = reports
        .iter()
        .map(paperlab::SuiteReport::status)
        .fold(paperlab::Status::Pass, |acc, s| match (acc, s) {
            (paperlab::Status::Fail, _) | (_, paperlab::Status::Fail) => paperlab::Status::Fail,
            (paperlab::Status::Exhausted, _) | (_, paperlab::Status::Exhausted) => {
                paperlab::Status::Exhausted
            }
            _ => paperlab::Status::Pass,
        });
    Ok(match worst {
        paperlab::Status::Pass => EXIT_PASS,
        paperlab::Status::Fail => EXIT_FAIL,
        paperlab::Status::Exhausted => EXIT_EXHAUSTED,
    })
}
