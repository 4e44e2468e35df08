//! Command-line front end: sweeps, single checks, pair and triality demos,
//! prime sets. Output goes to a caller-supplied writer so the whole command
//! can be driven from tests.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::forms::Sign;
use crate::generators::{build_pair, eval_table, triality_tables, Family};
use crate::ring::Ring;
use crate::steinberg::{eval_word, word_x, word_y, MacroReading};
use crate::verify::sweep::{run_sweep, APolicy, Summary, SweepConfig};
use crate::verify::{self, all_check_ids, prime_set_omega, structural_check, CheckReport, Status};

/// Exit code for malformed command lines and config files.
pub const EXIT_USAGE: i32 = 64;
/// Exit codes for failures are the failure count, capped here.
pub const EXIT_FAIL_MAX: i32 = 63;

pub const REPORT_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "ortho8", version, about = "Checks for (2,3)-generating pairs of 8-dimensional orthogonal groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the check battery over a range of fields and parameters.
    Sweep(SweepArgs),
    /// Run one check at one parameter set.
    Check {
        id: String,
        #[command(flatten)]
        p: PairArgs,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a generator pair, its form and membership evidence.
    Pair {
        family: String,
        #[command(flatten)]
        p: PairArgs,
    },
    /// Print the Steinberg words, their triality images and the comparison
    /// with the printed matrices.
    Triality {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
    },
    /// Prime divisors of the order of Omega_8^sign(q).
    Primes { sign: SignArg, q: u64 },
    /// List every check id.
    List,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    q: u64,
    /// Canonical integer encoding of `a` (coefficients in base p, low first).
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    xi: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    /// key=value file mirroring these flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated family names.
    #[arg(long)]
    families: Option<String>,
    #[arg(long)]
    q_even_max: Option<u64>,
    #[arg(long)]
    q_odd_max: Option<u64>,
    /// `exhaustive` or `sample`.
    #[arg(long)]
    a_policy: Option<String>,
    /// Values of `a` per field when sampling.
    #[arg(long)]
    sample_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Glob over check ids.
    #[arg(long)]
    checks: Option<String>,
    /// Pseudorandom instances above the bounds.
    #[arg(long)]
    beyond: Option<usize>,
    /// `true` or `false`.
    #[arg(long)]
    symbolic: Option<bool>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    /// Worker threads; defaults to ORTHO8_JOBS, then the core count.
    #[arg(long)]
    jobs: Option<usize>,
}

/// A fully resolved sweep invocation.
#[derive(Clone, Debug, Serialize)]
pub struct SweepInvocation {
    #[serde(flatten)]
    pub config: SweepConfig,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
struct Meta<'a> {
    version: &'a str,
    config: &'a SweepInvocation,
    /// Seconds since the Unix epoch.
    started: u64,
    /// Seconds.
    elapsed: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    meta: Meta<'a>,
    results: &'a [CheckReport],
    summary: Summary,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Parses a flat `key = value` file; `#` starts a comment line.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn resolve_sweep(args: SweepArgs) -> Result<SweepInvocation, Usage> {
    let file = match &args.config {
        Some(p) => parse_config_file(&std::fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display())))?)
            .map_err(Usage)?,
        None => BTreeMap::new(),
    };
    const KEYS: [&str; 12] = [
        "families", "q-even-max", "q-odd-max", "a-policy", "sample-n", "seed", "checks", "beyond", "symbolic", "output", "format", "jobs",
    ];
    if let Some(k) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Usage(format!("unknown config key `{k}`")));
    }
    fn pick<T: std::str::FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, Usage>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => file.get(key).map(|s| s.parse::<T>().map_err(|e| Usage(format!("config `{key}`: {e}")))).transpose(),
        }
    }
    let d = SweepConfig::default();
    let families = match pick::<String>(args.families, &file, "families")? {
        Some(s) => s.split(',').map(|f| f.trim().parse::<Family>()).collect::<Result<Vec<_>, _>>()?,
        None => d.families,
    };
    let seed = pick(args.seed, &file, "seed")?;
    let a_policy = match pick::<String>(args.a_policy, &file, "a-policy")?.as_deref() {
        None | Some("exhaustive") => APolicy::Exhaustive,
        Some("sample") => APolicy::Sample {
            n: pick(args.sample_n, &file, "sample-n")?.ok_or_else(|| Usage("sampling needs --sample-n".into()))?,
            seed: seed.ok_or_else(|| Usage("sampling needs --seed".into()))?,
        },
        Some(other) => return Err(Usage(format!("unknown a-policy `{other}`"))),
    };
    let format = match pick::<String>(args.format, &file, "format")?.as_deref() {
        None | Some("json") => Format::Json,
        Some("text") => Format::Text,
        Some(other) => return Err(Usage(format!("unknown format `{other}`"))),
    };
    let env_jobs = std::env::var("ORTHO8_JOBS").ok().and_then(|s| s.parse().ok());
    let config = SweepConfig {
        families,
        q_even_max: pick(args.q_even_max, &file, "q-even-max")?.unwrap_or(d.q_even_max),
        q_odd_max: pick(args.q_odd_max, &file, "q-odd-max")?.unwrap_or(d.q_odd_max),
        a_policy,
        checks: pick(args.checks, &file, "checks")?.unwrap_or(d.checks),
        beyond: pick(args.beyond, &file, "beyond")?.unwrap_or(0),
        seed,
        symbolic: pick(args.symbolic, &file, "symbolic")?.unwrap_or(true),
        jobs: pick(args.jobs, &file, "jobs")?.or(env_jobs).unwrap_or(0),
    };
    config.validate().map_err(Usage)?;
    Ok(SweepInvocation { config, output: pick(args.output, &file, "output")?, format })
}

/// Serializes the result array alone; byte-identical for identical configs.
pub fn results_json(results: &[CheckReport]) -> String {
    serde_json::to_string_pretty(results).expect("reports serialize")
}

fn exit_for(summary: &Summary) -> i32 {
    (summary.fail.min(EXIT_FAIL_MAX as usize)) as i32
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let inv = resolve_sweep(args)?;
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let t = Instant::now();
    let results = run_sweep(&inv.config).map_err(Usage)?;
    let summary = Summary::of(&results);
    let text = match inv.format {
        Format::Json => {
            let report = Report { meta: Meta { version: REPORT_VERSION, config: &inv, started, elapsed: t.elapsed().as_secs_f64() }, results: &results, summary };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Text => {
            let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
            s += &format!("pass {} fail {} skipped {} rejected {}\n", summary.pass, summary.fail, summary.skipped, summary.rejected);
            s
        }
    };
    match &inv.output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Usage(format!("{}: {e}", p.display())))?;
            writeln!(out, "pass {} fail {} skipped {} rejected {}", summary.pass, summary.fail, summary.skipped, summary.rejected)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(exit_for(&summary))
}

fn print_report(r: &CheckReport, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(r).expect("report serializes")),
        Format::Text => {
            writeln!(out, "{}", r.line())?;
            for e in &r.evidence {
                writeln!(out, "  {e}")?;
            }
            Ok(())
        }
    }
}

fn status_exit(r: &CheckReport) -> i32 {
    i32::from(r.status == Status::Fail)
}

fn cmd_pair(family: &str, p: PairArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let family = Family::resolve(family, p.q)?;
    let pair = match build_pair(family, p.q, p.a, p.xi) {
        Ok(pair) => pair,
        Err(e) => {
            print_report(&verify::rejected(family, p.q, p.a, p.xi, e.to_string()), Format::Text, out)?;
            return Ok(0);
        }
    };
    writeln!(out, "family {family} over {}", pair.field)?;
    if let Some(xi) = pair.xi {
        writeln!(out, "xi = {}", pair.field.render(&xi))?;
    }
    writeln!(out, "x =\n{}\ny =\n{}", pair.x.to_text(), pair.y.to_text())?;
    writeln!(out, "xy =\n{}", pair.xy().to_text())?;
    writeln!(out, "Gram matrix =\n{}", pair.form.gram.to_text())?;
    let diag: Vec<String> = pair.form.diag.iter().map(|d| pair.field.render(d)).collect();
    writeln!(out, "Q(e_i, e_i) = {}", diag.join(", "))?;
    let mut fails = 0;
    for id in ["pair.gate", "pair.sign", "pair.spin", "pair.spin-tau"] {
        if let Some(r) = structural_check(id, &pair) {
            fails += status_exit(&r);
            print_report(&r, Format::Text, out)?;
        }
    }
    Ok(fails)
}

fn cmd_triality(q: u64, a: u64, out: &mut dyn Write) -> Result<i32, Usage> {
    let family = Family::resolve("plus", q)?;
    let pair = match build_pair(family, q, Some(a), None) {
        Ok(pair) => pair,
        Err(e) => {
            print_report(&verify::rejected(family, q, Some(a), None, e.to_string()), Format::Text, out)?;
            return Ok(0);
        }
    };
    let k = &pair.field;
    let words = [("x", word_x(k.p(), MacroReading::Alpha)), ("y", word_y())];
    let tables = triality_tables(k.p());
    for (wi, (name, w)) in words.iter().enumerate() {
        for i in 0..3 {
            let wt = w.tau_pow(i);
            let label = match i {
                0 => name.to_string(),
                1 => format!("tau({name})"),
                _ => format!("tau^2({name})"),
            };
            writeln!(out, "{label} word: {wt}")?;
            let m = eval_word(k, &wt, &pair.a);
            writeln!(out, "{label} =\n{}", m.to_text())?;
            let printed = match i {
                0 if wi == 0 => pair.x.clone(),
                0 => pair.y.clone(),
                _ => eval_table(k, tables[(i - 1) + 2 * wi], &pair.a, None).map_err(|e| Usage(e.to_string()))?,
            };
            if m.equals(&printed) {
                writeln!(out, "{label}: matches the printed matrix")?;
            } else {
                writeln!(out, "{label}: differs from the printed matrix; difference =\n{}", m.sub(&printed).to_text())?;
            }
        }
    }
    let mut fails = 0;
    for id in ["steinberg.words", "steinberg.triality"] {
        if let Some(r) = structural_check(id, &pair) {
            fails += status_exit(&r);
            print_report(&r, Format::Text, out)?;
        }
    }
    Ok(fails)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Usage> {
    match cli.cmd {
        Cmd::Sweep(args) => cmd_sweep(args, out),
        Cmd::Check { id, p, family, format } => {
            let family = family.map(|f| Family::resolve(&f, p.q)).transpose()?;
            let r = verify::check(&id, family, p.q, p.a, p.xi)?;
            print_report(&r, format, out)?;
            Ok(status_exit(&r))
        }
        Cmd::Pair { family, p } => cmd_pair(&family, p, out),
        Cmd::Triality { q, a } => cmd_triality(q, a, out),
        Cmd::Primes { sign, q } => {
            if crate::arith::prime_power(q).is_none() {
                return Err(Usage(format!("{q} is not a prime power")));
            }
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let ps: Vec<String> = prime_set_omega(sign, q).iter().map(|p| p.to_string()).collect();
            writeln!(out, "{{{}}}", ps.join(", "))?;
            Ok(0)
        }
        Cmd::List => {
            for id in all_check_ids() {
                writeln!(out, "{id}")?;
            }
            Ok(0)
        }
    }
}

/// Runs the command line `argv` (including the program name), writing normal
/// output to `out` and diagnostics to stderr. Returns the exit code: 0 when
/// every executed check passed, the failure count (at most 63) otherwise,
/// and 64 for usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Usage(m)) => {
            eprintln!("ortho8: {m}");
            EXIT_USAGE
        }
    }
}
