//! Command-line front end.
//!
//! Exit codes: 0 when every check passed or the question was answered, 1 on
//! a violation or counterexample, 2 when a class cap or resource bound left
//! the answer undecided, 3 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use permrel_core::theorems::cancellativity_necessary;
use permrel_core::{
    CancelWitness, Error, IdealSpec, Monoid, PermutationGroup, Presentation, PrimeVerdict, Status,
    SuiteConfig, SuiteReport, Word,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{enumerate_abelian_subgroups, CatalogEntry};
use crate::config::RunConfig;
use crate::report::{Outcome, PresentationJson, Report, SCHEMA};

pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "permrel", version, about = "Word problems, ideals and growth for S_n(H)")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest congruence class explored before giving up.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads for catalog runs.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

/// A presentation given by generators or by name.
#[derive(Debug, Args)]
struct PresentationArgs {
    /// Degree.
    #[arg(short = 'n', long = "degree")]
    n: Option<usize>,
    /// Generators in cycle notation separated by ';', e.g. "(1,2)(3,4);(1,3)(2,4)".
    #[arg(short = 'g', long = "gens", conflicts_with = "preset")]
    gens: Option<String>,
    /// cyclic, klein4, trivial or symN.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Flags of a permutation group.
    Group {
        /// Generators in cycle notation separated by ';'.
        cycles: String,
        #[arg(short = 'n', long = "degree")]
        n: usize,
    },
    /// Decide whether two words are equal in S.
    Eq {
        #[command(flatten)]
        p: PresentationArgs,
        u: String,
        v: String,
    },
    /// Lexicographically least word equal to w.
    Canon {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
    },
    /// Every word equal to w.
    Class {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
    },
    /// Predict cancellativity and search for witnesses against it.
    Cancellative {
        #[command(flatten)]
        p: PresentationArgs,
        /// Longest cancelled word searched.
        #[arg(long)]
        max_len: usize,
    },
    /// Membership of w in an ideal such as "z^1 + a_1^3" or "Sz".
    Member {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
        #[arg(long)]
        ideal: String,
    },
    /// Bounded primality check of an ideal.
    Prime {
        #[command(flatten)]
        p: PresentationArgs,
        /// Ideal as a sum of atoms, e.g. "z^2 + a_1^3".
        #[arg(long)]
        ideal: String,
        /// Longest u and v tried.
        #[arg(long, default_value_t = 3)]
        uv_len: usize,
        /// Longest separating middle word tried.
        #[arg(long, default_value_t = 4)]
        mid_len: usize,
        /// Construct a separating middle word for these u and v instead.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        witness: Option<Vec<String>>,
        /// Certify non-primality through z S z ⊆ Q instead.
        #[arg(long, conflicts_with = "witness")]
        not_prime: bool,
    },
    /// Dimension series by word length.
    Growth {
        #[command(flatten)]
        p: PresentationArgs,
        #[arg(long)]
        len: usize,
        /// Count normal words of K[S]/K[SzS ∪ Q] instead of classes.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Run the verification suite.
    Verify {
        #[command(flatten)]
        p: PresentationArgs,
        /// Run every check (the default).
        #[arg(long, conflicts_with = "checks")]
        all: bool,
        /// Run only this check; repeatable.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Abelian subgroups of Sym_n.
    Catalog {
        #[arg(short = 'n', long = "degree")]
        n: usize,
        /// Run the verification suite on every entry.
        #[arg(long)]
        run_suite: bool,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Group { .. } => "group",
            Command::Eq { .. } => "eq",
            Command::Canon { .. } => "canon",
            Command::Class { .. } => "class",
            Command::Cancellative { .. } => "cancellative",
            Command::Member { .. } => "member",
            Command::Prime { .. } => "prime",
            Command::Growth { .. } => "growth",
            Command::Verify { .. } => "verify",
            Command::Catalog { .. } => "catalog",
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a command found, before it is printed and saved.
struct Answer {
    outcome: Outcome,
    lines: Vec<String>,
    result: Value,
}

impl Answer {
    fn pass(lines: Vec<String>, result: Value) -> Self {
        Answer {
            outcome: Outcome::Pass,
            lines,
            result,
        }
    }
}

fn parse_presentation(args: &PresentationArgs) -> CliResult<Presentation> {
    let group = match (&args.gens, &args.preset) {
        (Some(gens), None) => {
            let n = args.n.ok_or_else(|| CliError::Usage("-g needs -n".to_string()))?;
            PermutationGroup::from_cycles(gens.split(';').map(str::trim).filter(|c| !c.is_empty()), n)?
        }
        (None, Some(preset)) => preset_group(preset, args.n)?,
        (None, None) => return Err(CliError::Usage("give generators with -g or a --preset".to_string())),
        (Some(_), Some(_)) => unreachable!("clap rejects -g with --preset"),
    };
    Ok(Presentation::build(&group))
}

fn preset_group(name: &str, n: Option<usize>) -> CliResult<PermutationGroup> {
    let need_n = || n.ok_or_else(|| CliError::Usage(format!("preset {name} needs -n")));
    let fixed = |degree: usize| match n {
        Some(n) if n != degree => Err(CliError::Usage(format!("preset {name} has degree {degree}, not {n}"))),
        _ => Ok(()),
    };
    Ok(match name {
        "cyclic" => PermutationGroup::cyclic(need_n()?),
        "trivial" => PermutationGroup::trivial(need_n()?),
        "klein4" => {
            fixed(4)?;
            PermutationGroup::klein4()
        }
        _ => match name.strip_prefix("sym").and_then(|d| d.parse::<usize>().ok()) {
            Some(degree) if degree >= 1 => {
                fixed(degree)?;
                PermutationGroup::symmetric(degree)
            }
            _ => return Err(CliError::Usage(format!("unknown preset {name:?}"))),
        },
    })
}

fn word(text: &str, p: &Presentation) -> CliResult<Word> {
    Ok(Word::parse(text, p.degree())?)
}

fn witness_line(label: &str, w: &Option<CancelWitness>) -> String {
    match w {
        Some(w) => format!("{label} witness: u=({}) v=({}) i={}", w.u, w.v, w.letter),
        None => format!("{label} witness: none"),
    }
}

fn suite_lines(report: &SuiteReport) -> Vec<String> {
    report
        .entries
        .iter()
        .map(|e| {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
                Status::Undecided => "undecided",
            };
            let cases = e.report.as_ref().map(|r| format!(" [{} cases]", r.cases_checked)).unwrap_or_default();
            match &e.detail {
                Some(d) => format!("{}: {status}{cases} ({d})", e.check),
                None => format!("{}: {status}{cases}", e.check),
            }
        })
        .collect()
}

fn suite_outcome(report: &SuiteReport) -> Outcome {
    match report.status() {
        Status::Fail => Outcome::Fail,
        Status::Undecided => Outcome::Undecided,
        _ => Outcome::Pass,
    }
}

fn suite_config(config: &RunConfig, samples: Option<usize>) -> SuiteConfig {
    SuiteConfig {
        cancel_max_len: config.max_len,
        boundary_max_len: config.max_len,
        radical_max_len: config.max_len,
        fractions_max_len: config.max_len,
        overlap_samples: samples.unwrap_or(config.sample_budget),
        seed: config.seed,
        only: config.checks.clone(),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn execute(command: &Command, config: &mut RunConfig) -> CliResult<(Option<Presentation>, Answer)> {
    let monoid = |p: &Presentation| Monoid::with_limits(p.clone(), config.class_cap, config.cache_words);
    let answer = match command {
        Command::Group { cycles, n } => {
            let group = PermutationGroup::from_cycles(cycles.split(';').map(str::trim).filter(|c| !c.is_empty()), *n)?;
            let entry = CatalogEntry::from_group(&group)?;
            let lines = vec![
                format!("order: {}", entry.order),
                format!("abelian: {}", entry.abelian),
                format!("transitive: {}", entry.transitive),
                format!("semiregular: {}", entry.semiregular),
                format!("contains (1,...,n): {}", entry.contains_full_cycle),
                format!("H_1 and H_n trivial: {}", cancellativity_necessary(&group)?),
                match entry.predicted_cancellative {
                    Some(p) => format!("predicted cancellative: {p}"),
                    None => "predicted cancellative: no prediction (non-abelian)".to_string(),
                },
            ];
            return Ok((Some(Presentation::build(&group)), Answer::pass(lines, json(&entry))));
        }
        Command::Eq { p, u, v } => {
            let p = parse_presentation(p)?;
            let (u, v) = (word(u, &p)?, word(v, &p)?);
            let equal = monoid(&p).equal(&u, &v)?;
            let text = if equal { "equal" } else { "not equal" };
            (p, Answer::pass(vec![text.to_string()], json!({"u": u, "v": v, "equal": equal})))
        }
        Command::Canon { p, w } => {
            let p = parse_presentation(p)?;
            let w = word(w, &p)?;
            let canonical = monoid(&p).canonical_form(&w)?;
            (p, Answer::pass(vec![canonical.to_string()], json!({"word": w, "canonical": canonical})))
        }
        Command::Class { p, w } => {
            let p = parse_presentation(p)?;
            let w = word(w, &p)?;
            let class = monoid(&p).congruence_class(&w);
            let mut lines: Vec<String> = class.members().iter().map(|m| m.to_string()).collect();
            lines.push(format!("size: {}", class.len()));
            let outcome = if class.is_truncated() {
                lines.push(format!("truncated at cap {}", config.class_cap));
                Outcome::Undecided
            } else {
                Outcome::Pass
            };
            let result = json!({"word": w, "members": class.members(), "truncated": class.is_truncated()});
            (p, Answer { outcome, lines, result })
        }
        Command::Cancellative { p, max_len } => {
            let p = parse_presentation(p)?;
            let m = monoid(&p);
            config.max_len = Some(*max_len);
            config.validate()?;
            let report = m.cancellativity_report(*max_len)?;
            let group = p.group().expect("built from a group");
            let agrees = report.agrees(group)?;
            let mut confirmed = true;
            for w in report.right_witness.iter().chain(&report.left_witness) {
                confirmed &= w.confirm(&m)?;
            }
            let lines = vec![
                match report.predicted {
                    Some(true) => "predicted: cancellative".to_string(),
                    Some(false) => "predicted: not cancellative".to_string(),
                    None => format!(
                        "predicted: no prediction (non-abelian); H_1 and H_n trivial: {}",
                        report.necessary_condition
                    ),
                },
                witness_line("right", &report.right_witness),
                witness_line("left", &report.left_witness),
                format!("searched |u| ≤ {max_len}; agreement: {agrees}; witnesses re-verified: {confirmed}"),
            ];
            let found = report.right_witness.is_some() || report.left_witness.is_some();
            let outcome = if found || !agrees || !confirmed {
                Outcome::Fail
            } else {
                Outcome::Pass
            };
            let result = json!({"report": report, "agrees": agrees, "witnesses_confirmed": confirmed});
            (p, Answer { outcome, lines, result })
        }
        Command::Member { p, w, ideal } => {
            let p = parse_presentation(p)?;
            let w = word(w, &p)?;
            let spec = IdealSpec::parse(ideal, p.degree())?;
            let member = monoid(&p).in_spec(&w, &spec)?;
            let text = if member { "member" } else { "not member" };
            let result = json!({"word": w, "ideal": spec.to_string(), "member": member});
            (p, Answer::pass(vec![format!("{text} of {spec}")], result))
        }
        Command::Prime {
            p,
            ideal,
            uv_len,
            mid_len,
            witness,
            not_prime,
        } => {
            let p = parse_presentation(p)?;
            let spec = IdealSpec::parse(ideal, p.degree())?;
            let m = monoid(&p);
            if let Some(pair) = witness {
                let (u, v) = (word(&pair[0], &p)?, word(&pair[1], &p)?);
                let w = m.prime_witness(&spec, &u, &v)?;
                let lines = vec![
                    format!("case: {:?}", w.case),
                    format!("middle: {}", w.middle),
                    format!("u·s·v = {} lies outside {spec}", w.product),
                ];
                (p, Answer::pass(lines, json(&w)))
            } else {
                let verdict = if *not_prime {
                    m.verify_not_prime_zsz(&spec)?
                } else {
                    m.check_prime_bounded(&spec, *uv_len, *mid_len)?
                };
                let (outcome, line) = match &verdict {
                    PrimeVerdict::NoCounterexampleUpTo { pairs_checked, .. } => (
                        Outcome::Pass,
                        format!("no counterexample: {pairs_checked} pairs with |u|,|v| ≤ {uv_len}, |s| ≤ {mid_len}"),
                    ),
                    PrimeVerdict::Counterexample { u, v, max_mid_len } => (
                        Outcome::Fail,
                        format!("counterexample: u=({u}) v=({v}), u·s·v ∈ {spec} for all |s| ≤ {max_mid_len}"),
                    ),
                    PrimeVerdict::NotPrimeCertified { .. } => {
                        (Outcome::Pass, format!("not prime: z ∉ {spec} but z·S·z ⊆ {spec}"))
                    }
                    PrimeVerdict::Uncertified { gap } => (Outcome::Fail, format!("no certificate: {gap:?}")),
                };
                (
                    p,
                    Answer {
                        outcome,
                        lines: vec![line],
                        result: json(&verdict),
                    },
                )
            }
        }
        Command::Growth { p, len, ideal } => {
            let p = parse_presentation(p)?;
            let m = monoid(&p);
            config.max_len = Some(*len);
            let (label, series) = match ideal {
                Some(text) => {
                    let spec = IdealSpec::parse(text, p.degree())?;
                    (format!("normal words mod SzS ∪ {spec}"), m.normal_series(&spec, *len)?)
                }
                None => ("classes".to_string(), m.class_series(*len)?),
            };
            let width = series.counts.iter().map(|c| c.to_string().len()).max().unwrap_or(1).max(5);
            let mut lines = vec![json(&series.counts).to_string(), format!("{:>3}  {:>width$}", "len", "count")];
            for (l, c) in series.counts.iter().enumerate() {
                lines.push(format!("{l:>3}  {c:>width$}"));
            }
            let result = json!({"series": label, "counts": series.counts});
            (p, Answer::pass(lines, result))
        }
        Command::Verify {
            p,
            all: _,
            checks,
            max_len,
            samples,
        } => {
            let p = parse_presentation(p)?;
            config.max_len = *max_len;
            config.checks = checks.clone();
            if let Some(s) = samples {
                config.sample_budget = *s;
            }
            config.validate()?;
            let report = monoid(&p).run_suite(&suite_config(config, None))?;
            let answer = Answer {
                outcome: suite_outcome(&report),
                lines: suite_lines(&report),
                result: json(&report),
            };
            (p, answer)
        }
        Command::Catalog {
            n,
            run_suite,
            max_len,
            samples,
        } => {
            config.max_len = *max_len;
            if let Some(s) = samples {
                config.sample_budget = *s;
            }
            config.validate()?;
            let entries = enumerate_abelian_subgroups(*n)?;
            let mut lines: Vec<String> = entries.iter().map(entry_line).collect();
            if !*run_suite {
                return Ok((None, Answer::pass(lines, json(&entries))));
            }
            let suite = suite_config(config, None);
            let run = |entry: &CatalogEntry| -> CliResult<SuiteReport> {
                let p = Presentation::build(&entry.group()?);
                Ok(monoid(&p).run_suite(&suite)?)
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let reports = pool.install(|| entries.par_iter().map(run).collect::<CliResult<Vec<_>>>())?;
            let mut outcome = Outcome::Pass;
            lines.clear();
            for (entry, report) in entries.iter().zip(&reports) {
                outcome = outcome.and(suite_outcome(report));
                lines.push(entry_line(entry));
                lines.extend(suite_lines(report).into_iter().map(|l| format!("  {l}")));
            }
            let result = json!(entries
                .iter()
                .zip(&reports)
                .map(|(e, r)| json!({"entry": e, "suite": r}))
                .collect::<Vec<_>>());
            return Ok((None, Answer { outcome, lines, result }));
        }
    };
    Ok((Some(answer.0), answer.1))
}

fn entry_line(e: &CatalogEntry) -> String {
    let gens = if e.generators.is_empty() {
        "()".to_string()
    } else {
        e.generators.join(";")
    };
    let mut flags = Vec::new();
    for (on, name) in [
        (e.transitive, "transitive"),
        (e.semiregular, "semiregular"),
        (e.contains_full_cycle, "full-cycle"),
    ] {
        if on {
            flags.push(name);
        }
    }
    let cancellative = match e.predicted_cancellative {
        Some(true) => "cancellative",
        Some(false) => "non-cancellative",
        None => "no prediction",
    };
    flags.push(cancellative);
    format!("order {:>2}  {gens}  [{}]", e.order, flags.join(", "))
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Undecided { .. } | Error::Resource(_) => Outcome::Undecided.exit_code(),
        Error::WitnessRejected(_) => Outcome::Fail.exit_code(),
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut config = match RunConfig::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(cap) = cli.cap {
        config.class_cap = cap;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.workers = cli.workers;
    config.out = cli.out.clone();
    if let Err(e) = config.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    let (presentation, answer) = match execute(&cli.command, &mut config) {
        Ok(done) => done,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            let code = error_exit(&e);
            if code == Outcome::Undecided.exit_code() {
                let _ = writeln!(out, "undecided");
                let report = Report {
                    schema: SCHEMA,
                    command: cli.command.name().to_string(),
                    config: config.clone(),
                    presentation: None,
                    outcome: Outcome::Undecided,
                    result: json!({"error": e.to_string()}),
                };
                if let Some(path) = &cli.out {
                    if let Err(io) = report.write(path) {
                        let _ = writeln!(err, "error: cannot write {}: {io}", path.display());
                    }
                }
            }
            return code;
        }
    };
    for line in &answer.lines {
        let _ = writeln!(out, "{line}");
    }
    if let Some(path) = &cli.out {
        let report = Report {
            schema: SCHEMA,
            command: cli.command.name().to_string(),
            config,
            presentation: presentation.as_ref().map(PresentationJson::from_presentation),
            outcome: answer.outcome,
            result: answer.result,
        };
        if let Err(io) = report.write(path) {
            let _ = writeln!(err, "error: cannot write {}: {io}", path.display());
            return EXIT_USAGE;
        }
    }
    answer.outcome.exit_code()
}
