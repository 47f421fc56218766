//! Command-line front end. Every command renders either human-readable text
//! or line-oriented `key=value; key=value` records (`--structured`); both carry
//! the same decision content.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::catalog::{self, CatalogStore, Source};
use crate::census::{eval_count, SignClass, XSet};
use crate::error::{Error, Result};
use crate::family::{oracle_count, Family};
use crate::goodness::{Basis, Classifier};
use crate::mlcif::extract_generators;
use crate::setcore::{Generator, Params, RSet};
use crate::verify::{Report, Suite, Verifier};

/// Environment variable naming the catalog cache directory.
pub const CACHE_ENV: &str = "LCIF_CACHE_DIR";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lcif",
    version,
    about = "Maximal left-compressed intersecting families and the sets X they beat the star on"
)]
pub struct Cli {
    /// Emit `key=value` records instead of prose.
    #[arg(long, global = true)]
    pub structured: bool,

    /// Catalog cache directory (falls back to $LCIF_CACHE_DIR; no cache if neither is set).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Lift the size guards on enumeration, oracles and searches.
    #[arg(long, global = true)]
    pub override_guard: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the catalog of generator antichains for r.
    Enumerate {
        #[arg(long)]
        r: u32,
    },
    /// Count the members of the generated family that meet X.
    Count {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        /// Generators, e.g. "1,4|2,3,4".
        #[arg(long)]
        gens: String,
        /// Raw hitting set inside [2, n], e.g. "2,3,9".
        #[arg(long)]
        x: String,
        /// Also count by enumerating every r-subset of [n], and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether X is good at (n, r), listing every violating family.
    Classify {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
        /// Compare against the catalog even when |X| > r.
        #[arg(long)]
        confirm: bool,
    },
    /// Decide whether X is good for all large n, and from which n.
    ClassifyEventual {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        x: String,
    },
    /// Good sets with no good set of the same size below them in the shift order.
    MinimalGood {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Run a verification suite: borg, main, thresholds, ekr, lemmas or all.
    Verify {
        #[arg(long)]
        suite: String,
        /// Range of r, e.g. "2..5" or "3".
        #[arg(long)]
        r: Option<String>,
        /// Range of n, e.g. "8..14".
        #[arg(long)]
        n: Option<String>,
    },
    /// Report the basic properties of a family literal such as "1,2;1,3;2,3".
    Inspect {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        family: String,
    },
}

/// Resolved run-time settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub cache_dir: Option<PathBuf>,
    pub structured: bool,
    pub override_guard: bool,
}

impl CliConfig {
    /// The flag wins over the environment.
    pub fn resolve(cli: &Cli, env_cache: Option<PathBuf>) -> Self {
        CliConfig {
            cache_dir: cli.cache_dir.clone().or(env_cache),
            structured: cli.structured,
            override_guard: cli.override_guard,
        }
    }

    fn store(&self) -> CatalogStore {
        let store = match &self.cache_dir {
            Some(d) => CatalogStore::with_dir(d),
            None => CatalogStore::in_memory(),
        };
        store.override_guard(self.override_guard)
    }
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

/// One structured record.
struct Rec(Vec<(&'static str, String)>);

impl Rec {
    fn new() -> Self {
        Rec(Vec::new())
    }

    fn kv(mut self, k: &'static str, v: impl ToString) -> Self {
        self.0.push((k, v.to_string()));
        self
    }

    fn line(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join("; ") + "\n"
    }
}

/// Parses `a..b`, `a..=b` or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let err = |reason: &str| Error::Parse {
        what: "range",
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| err(&e.to_string()));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(err("empty range"));
    }
    Ok(lo..=hi)
}

/// Parses a raw hitting set and checks it lies in `[2, n]`.
fn parse_x(lit: &str, p: Params) -> Result<(RSet, XSet)> {
    let raw: RSet = lit.parse()?;
    if raw.contains(1) {
        return Err(Error::InvalidX(format!("{raw:?} contains 1")));
    }
    if raw.max_element() > p.n() {
        return Err(Error::InvalidX(format!(
            "{raw:?} is not inside [2, {}]",
            p.n()
        )));
    }
    let x = XSet::from_raw(&raw, p.r())?;
    x.check_at(p)?;
    Ok((raw, x))
}

/// Parses a raw hitting set for `n`-independent questions.
fn parse_x_any_n(lit: &str, r: u32) -> Result<(RSet, XSet)> {
    let raw: RSet = lit.parse()?;
    let x = XSet::from_raw(&raw, r)?;
    Ok((raw, x))
}

fn parse_gens(lit: &str, r: u32) -> Result<Vec<Generator>> {
    lit.split('|').map(|g| Generator::parse(g, r)).collect()
}

fn braces(s: impl std::fmt::Display) -> String {
    format!("{{{s}}}")
}

fn inside_str(x: &XSet) -> String {
    x.inside().map(|s| s.to_string()).unwrap_or_default()
}

fn sign_fields(rec: Rec, s: &SignClass) -> Rec {
    match *s {
        SignClass::AlwaysNonneg => rec.kv("sign", "always-nonneg"),
        SignClass::NonnegFrom(n) => rec.kv("sign", "nonneg-from").kv("from", n),
        SignClass::EventuallyNegative {
            first_negative,
            negative_from,
        } => rec
            .kv("sign", "eventually-negative")
            .kv("first_negative", first_negative)
            .kv("negative_from", negative_from),
    }
}

fn sign_human(s: &SignClass) -> String {
    match *s {
        SignClass::AlwaysNonneg => "never beats the star".into(),
        SignClass::NonnegFrom(n) => format!("beats the star only below n = {n}"),
        SignClass::EventuallyNegative {
            first_negative,
            negative_from,
        } => format!("beats the star from n = {first_negative}, and at every n >= {negative_from}"),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, cfg: &CliConfig) -> Result<Outcome> {
    let store = cfg.store();
    let s = cfg.structured;
    let mut out = String::new();
    let mut code = EXIT_OK;
    match &cli.command {
        Command::Enumerate { r } => {
            let (cat, source) = store.get_with_source(*r)?;
            if s {
                out.push_str(&catalog::to_text(&cat));
            } else {
                let src = match source {
                    Source::Memory | Source::Computed => "computed",
                    Source::Disk => "cache",
                };
                writeln!(out, "r = {r}: {} maximal families ({src})", cat.len()).ok();
                for e in cat.entries() {
                    let gens: Vec<String> = e.antichain.generators().iter().map(braces).collect();
                    writeln!(out, "  {}", gens.join(" ")).ok();
                }
            }
        }
        Command::Count {
            r,
            n,
            gens,
            x,
            oracle,
        } => {
            let p = Params::new(*n, *r)?;
            let gens = parse_gens(gens, *r)?;
            let (raw, xs) = parse_x(x, p)?;
            let count = eval_count(&gens, &xs, p)?;
            let gens_str: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            let oracle_val = if *oracle {
                Some(oracle_count(&gens, p, &raw)?)
            } else {
                None
            };
            let matches = oracle_val.map(|o| count == o.into());
            if matches == Some(false) {
                code = EXIT_FAILED;
            }
            if s {
                let mut rec = Rec::new()
                    .kv("r", r)
                    .kv("n", n)
                    .kv("gens", gens_str.join("|"))
                    .kv("x", raw)
                    .kv("inside", inside_str(&xs))
                    .kv("outside", xs.outside())
                    .kv("count", &count);
                if let (Some(o), Some(m)) = (oracle_val, matches) {
                    rec = rec.kv("oracle", o).kv("match", m);
                }
                out.push_str(&rec.line());
            } else {
                writeln!(
                    out,
                    "X = {} reduces to {xs} (inside part + outside count)",
                    braces(raw)
                )
                .ok();
                writeln!(
                    out,
                    "|<{}>(X)| = {count} at n = {n}, r = {r}",
                    gens_str.join("|")
                )
                .ok();
                if let (Some(o), Some(m)) = (oracle_val, matches) {
                    let word = if m { "agrees" } else { "DISAGREES" };
                    writeln!(out, "oracle count {o} {word}").ok();
                }
            }
        }
        Command::Classify { r, n, x, confirm } => {
            let p = Params::new(*n, *r)?;
            let (raw, xs) = parse_x(x, p)?;
            let c = Classifier::new(store.get(*r)?)?;
            let v = c.classify_at(&xs, p, *confirm)?;
            let basis = match v.basis {
                Basis::Catalog => "catalog",
                Basis::LargeX => "borg-a",
            };
            let verdict = if v.good { "good" } else { "not-good" };
            if s {
                out.push_str(
                    &Rec::new()
                        .kv("verdict", verdict)
                        .kv("r", r)
                        .kv("n", n)
                        .kv("x", raw)
                        .kv("inside", inside_str(&xs))
                        .kv("outside", xs.outside())
                        .kv("star", &v.star_count)
                        .kv("basis", basis)
                        .kv("witnesses", v.witnesses.len())
                        .line(),
                );
                for w in &v.witnesses {
                    out.push_str(
                        &Rec::new()
                            .kv("witness", &w.antichain)
                            .kv("count", &w.family_count)
                            .kv("star", &w.star_count)
                            .line(),
                    );
                }
            } else {
                writeln!(out, "X = {} reduces to {xs}", braces(raw)).ok();
                let how = match v.basis {
                    Basis::Catalog => "compared with every catalog family",
                    Basis::LargeX => "|X| > r, good by Borg's theorem (a)",
                };
                writeln!(
                    out,
                    "{verdict} at n = {n}, r = {r} ({how}); |S(X)| = {}",
                    v.star_count
                )
                .ok();
                if !v.witnesses.is_empty() {
                    writeln!(out, "families beating the star: {}", v.witnesses.len()).ok();
                    for w in &v.witnesses {
                        writeln!(
                            out,
                            "  gens {}: {} > {}",
                            w.antichain, w.family_count, w.star_count
                        )
                        .ok();
                    }
                }
            }
        }
        Command::ClassifyEventual { r, x } => {
            let (raw, xs) = parse_x_any_n(x, *r)?;
            let c = Classifier::new(store.get(*r)?)?;
            let v = c.classify_eventual(&xs)?;
            let verdict = if v.eventually_good {
                "eventually-good"
            } else {
                "not-eventually-good"
            };
            if s {
                let mut rec = Rec::new()
                    .kv("verdict", verdict)
                    .kv("r", r)
                    .kv("x", raw)
                    .kv("inside", inside_str(&xs))
                    .kv("outside", xs.outside());
                if let Some(t) = v.threshold {
                    rec = rec.kv("threshold", t);
                }
                out.push_str(&rec.kv("families", v.per_family.len()).line());
                for (a, sign) in &v.per_family {
                    out.push_str(&sign_fields(Rec::new().kv("family", a), sign).line());
                }
            } else {
                writeln!(out, "X = {} reduces to {xs}", braces(raw)).ok();
                match v.threshold {
                    Some(t) if t > xs.min_n() => writeln!(
                        out,
                        "{verdict}: good for every n >= {t}, not good at n = {}",
                        t - 1
                    ),
                    Some(t) => writeln!(
                        out,
                        "{verdict}: good for every n >= {t}, the smallest n at which X fits"
                    ),
                    None => writeln!(out, "{verdict}: some family beats the star for all large n"),
                }
                .ok();
                for (a, sign) in &v.per_family {
                    writeln!(out, "  gens {a}: {}", sign_human(sign)).ok();
                }
            }
        }
        Command::MinimalGood { r, n, size } => {
            let p = Params::new(*n, *r)?;
            let c = Classifier::new(store.get(*r)?)?;
            let found = c.minimal_good(p, *size, cfg.override_guard)?;
            let size_str = size.map_or_else(|| "all".to_string(), |k| k.to_string());
            if s {
                out.push_str(
                    &Rec::new()
                        .kv("r", r)
                        .kv("n", n)
                        .kv("size", &size_str)
                        .kv("order", "shift")
                        .kv("count", found.len())
                        .line(),
                );
                for x in &found {
                    out.push_str(&Rec::new().kv("minimal", x).kv("size", x.len()).line());
                }
            } else {
                writeln!(
                    out,
                    "minimal good sets at n = {n}, r = {r}, size {size_str} (minimal under the positionwise shift order among good sets of the same size): {}",
                    found.len()
                )
                .ok();
                for x in &found {
                    writeln!(out, "  {x}").ok();
                }
            }
        }
        Command::Verify { suite, r, n } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let rs = r.as_deref().map(parse_range).transpose()?;
            let ns = n.as_deref().map(parse_range).transpose()?;
            let mut verifier = Verifier::new(&store);
            for suite in suites {
                let report = verifier.run(suite, rs.clone(), ns.clone())?;
                render_report(&mut out, &report, s);
                if !report.passed() {
                    code = EXIT_FAILED;
                }
            }
        }
        Command::Inspect { r, n, family } => {
            let f = Family::parse(*n, *r, family)?;
            let intersecting = f.is_intersecting();
            let compressed = f.is_left_compressed();
            let maximal = if intersecting {
                Some(f.is_maximal_intersecting()?)
            } else {
                None
            };
            let full = f.fully_compress();
            let gens = if *n == 2 * *r && intersecting && compressed && maximal == Some(true) {
                Some(extract_generators(&f)?)
            } else {
                None
            };
            let mut rec = Rec::new()
                .kv("n", n)
                .kv("r", r)
                .kv("size", f.len())
                .kv("intersecting", intersecting)
                .kv("left_compressed", compressed);
            if let Some(m) = maximal {
                rec = rec.kv("maximal", m);
            }
            rec = rec.kv("potential", f.potential()).kv("compressed", &full);
            if let Some(g) = &gens {
                rec = rec.kv("gens", g);
            }
            if s {
                out.push_str(&rec.line());
            } else {
                for (k, v) in &rec.0 {
                    writeln!(out, "{k:>16}: {v}").ok();
                }
            }
        }
    }
    Ok(Outcome { stdout: out, code })
}

fn render_report(out: &mut String, report: &Report, structured: bool) {
    let status = if report.passed() { "pass" } else { "fail" };
    let failed = report.failures().count();
    if structured {
        for rec in &report.records {
            writeln!(out, "suite={}; {rec}", report.suite).ok();
        }
        for note in &report.notes {
            writeln!(out, "suite={}; note={note}", report.suite).ok();
        }
        out.push_str(
            &Rec::new()
                .kv("suite", report.suite)
                .kv("status", status)
                .kv("claims", report.records.len())
                .kv("failed", failed)
                .line(),
        );
    } else {
        writeln!(
            out,
            "suite {}: {status} ({} claims, {failed} failed)",
            report.suite,
            report.records.len()
        )
        .ok();
        for rec in &report.records {
            writeln!(out, "  [{}] {rec}", rec.status).ok();
        }
        for note in &report.notes {
            writeln!(out, "  note: {note}").ok();
        }
    }
}

/// Parses `std::env::args`, runs, prints, and maps errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let cfg = CliConfig::resolve(&cli, std::env::var_os(CACHE_ENV).map(PathBuf::from));
    match run(&cli, &cfg) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
