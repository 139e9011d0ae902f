//! `lefkit` command implementation. `main.rs` only parses arguments and maps
//! [`CliError`] to an exit code.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lefkit_core::{
    abelianization, build_bn, cover_invariants, invariant_report, kodaira_exclusion,
    matsumoto_factorization, orientation_reverse, parse_factorization, tietze_simplify, to_dsl,
    total_space_pi1, twisted_fiber_sum, validate, MappingClass, MonodromyFactorization, Pi1Class,
};

pub const MAX_N: i64 = 10_000;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable/malformed input. Exit code 2.
    Usage(String),
    /// The computation itself was refused. Exit code 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<lefkit_core::Error> for CliError {
    fn from(e: lefkit_core::Error) -> Self {
        match e {
            lefkit_core::Error::Syntax { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "lefkit",
    version,
    about = "Invariants of Lefschetz fibrations from monodromy factorizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Print parse warnings and input summaries to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Keyvalue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Matsumoto,
    Bn,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct Source {
    /// Built-in factorization.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,

    /// Factorization file in the text format.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    #[command(flatten)]
    pub source: Source,

    /// Twist exponent for `--builtin bn`.
    #[arg(long)]
    pub n: Option<i64>,

    /// Allow the hyperelliptic signature formula for fiber genus other than 2.
    #[arg(long)]
    pub hyperelliptic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Show {
    H1,
    Pi1,
    Invariants,
    Validate,
    Obstruct,
    Dsl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total-space fundamental group, before and after Tietze simplification.
    Pi1 {
        #[command(flatten)]
        input: Input,
        /// Maximum number of generator eliminations.
        #[arg(long, default_value_t = 8)]
        passes: usize,
    },
    /// Abelianization of the total-space fundamental group.
    H1 {
        #[command(flatten)]
        input: Input,
    },
    /// Euler characteristic, signature and Betti numbers of the total space.
    Invariants {
        #[command(flatten)]
        input: Input,
    },
    /// H1 monodromy triviality and cycle-kind consistency.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Exclusion tests for each class of minimal complex surface with b1 = 1.
    Obstruct {
        #[command(flatten)]
        input: Input,
        /// Run on a finite cover with b1 = 1 and pi1 = Z.
        #[arg(long)]
        cover: bool,
        /// Cover degree; defaults to n for `--builtin bn`.
        #[arg(long)]
        degree: Option<i64>,
        /// Reverse the orientation before testing.
        #[arg(long)]
        reverse: bool,
    },
    /// The B_n family, for one n or an inclusive range `a..b`.
    Bn {
        /// Twist exponent, 1 to 10000
        #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
        n: Option<i64>,
        /// Inclusive range `a..b`, computed in parallel
        #[arg(long, value_parser = parse_range)]
        n_range: Option<RangeInclusive<i64>>,
        /// What to print for each n
        #[arg(long, value_enum, default_value_t = Show::H1)]
        show: Show,
    },
    /// Twisted fiber sum of two factorization files.
    Fibersum {
        left: PathBuf,
        right: PathBuf,
        /// Gluing mapping class, e.g. `D(a2)^3 D(b1)^-1`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        twist: String,
        #[arg(long, value_enum, default_value_t = Show::Dsl)]
        show: Show,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("invalid range start `{a}`"))?;
    let b: i64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("invalid range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

fn check_n(n: i64) -> CliResult<i64> {
    if !(1..=MAX_N).contains(&n) {
        return Err(CliError::Usage(format!(
            "n must be in 1..={MAX_N}, got {n}"
        )));
    }
    Ok(n)
}

/// Options that shape what gets rendered for one factorization.
#[derive(Debug, Clone, Default)]
struct RenderOptions {
    passes: usize,
    hyperelliptic: bool,
    cover: bool,
    degree: Option<i64>,
    reverse: bool,
}

struct Loaded {
    factorization: MonodromyFactorization,
    n: Option<i64>,
}

fn read_file(path: &Path, verbose: u8, log: &mut Vec<String>) -> CliResult<MonodromyFactorization> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let parsed = parse_factorization(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        log.push(format!(
            "warning: {}:{}: {}",
            path.display(),
            w.line,
            w.message
        ));
    }
    if verbose > 0 {
        let f = &parsed.factorization;
        log.push(format!(
            "{}: genus {}, base {}, {} cycles",
            path.display(),
            f.fiber_genus(),
            f.base_genus(),
            f.len()
        ));
    }
    Ok(parsed.factorization)
}

fn load(input: &Input, verbose: u8, log: &mut Vec<String>) -> CliResult<Loaded> {
    match (&input.source.builtin, &input.source.file) {
        (Some(Builtin::Matsumoto), _) => Ok(Loaded {
            factorization: matsumoto_factorization(),
            n: None,
        }),
        (Some(Builtin::Bn), _) => {
            let n = input
                .n
                .ok_or_else(|| CliError::Usage("`--builtin bn` needs `--n`".into()))?;
            let n = check_n(n)?;
            Ok(Loaded {
                factorization: build_bn(n)?,
                n: Some(n),
            })
        }
        (None, Some(path)) => Ok(Loaded {
            factorization: read_file(path, verbose, log)?,
            n: None,
        }),
        (None, None) => Err(CliError::Usage(
            "one of `--builtin` or `--file` is required".into(),
        )),
    }
}

/// Ordered `(key, value)` pairs plus the text rendering of the same data.
struct Rendered {
    pairs: Vec<(String, String)>,
    text: String,
}

impl Rendered {
    fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Keyvalue => self
                .pairs
                .iter()
                .map(|(k, v)| format!("{k}={v}\n"))
                .collect(),
        }
    }
}

fn render(
    f: &MonodromyFactorization,
    show: Show,
    n: Option<i64>,
    opts: &RenderOptions,
) -> CliResult<Rendered> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut text = String::new();
    let kv = |pairs: &mut Vec<(String, String)>, k: &str, v: String| pairs.push((k.to_string(), v));

    match show {
        Show::H1 => {
            let ab = abelianization(&total_space_pi1(f)?)?;
            kv(&mut pairs, "rank", ab.rank.to_string());
            kv(
                &mut pairs,
                "torsion",
                ab.torsion
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            kv(&mut pairs, "h1", ab.to_string());
            let _ = writeln!(text, "{ab}");
        }
        Show::Pi1 => {
            let p = total_space_pi1(f)?;
            let s = tietze_simplify(&p, opts.passes);
            kv(&mut pairs, "generators", p.generator_count().to_string());
            kv(&mut pairs, "relators", p.relators().len().to_string());
            kv(&mut pairs, "presentation", p.to_string());
            kv(
                &mut pairs,
                "simplified_generators",
                s.generator_count().to_string(),
            );
            kv(
                &mut pairs,
                "simplified_relators",
                s.relators().len().to_string(),
            );
            kv(&mut pairs, "simplified", s.to_string());
            let _ = writeln!(text, "presentation: {p}");
            let _ = writeln!(text, "simplified:   {s}");
        }
        Show::Invariants => {
            let r = invariant_report(f, opts.hyperelliptic)?;
            for (k, v) in r.key_values() {
                kv(&mut pairs, k, v);
            }
            let _ = writeln!(text, "{r}");
        }
        Show::Validate => {
            let v = validate(f)?;
            let offending = v
                .offending_indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",");
            kv(
                &mut pairs,
                "h1_monodromy_trivial",
                v.h1_monodromy_trivial.to_string(),
            );
            kv(&mut pairs, "kind_consistent", v.kind_consistent.to_string());
            kv(&mut pairs, "offending_indices", offending.clone());
            let _ = writeln!(
                text,
                "h1_monodromy_trivial={} kind_consistent={} offending_indices=[{offending}]",
                v.h1_monodromy_trivial, v.kind_consistent
            );
        }
        Show::Obstruct => {
            let base = invariant_report(f, opts.hyperelliptic)?;
            let (mut report, pi1) = if opts.cover {
                let degree = opts.degree.or(n).ok_or_else(|| {
                    CliError::Usage(
                        "`--cover` needs `--degree` unless the input is `--builtin bn`".into(),
                    )
                })?;
                (
                    cover_invariants(&base, degree, 1)?,
                    Pi1Class::InfiniteCyclic,
                )
            } else {
                let simplified = tietze_simplify(&total_space_pi1(f)?, opts.passes);
                let pi1 = Pi1Class::classify(&simplified, &base.h1);
                (base, pi1)
            };
            if opts.reverse {
                report = orientation_reverse(&report);
            }
            for v in kodaira_exclusion(&report, &pi1) {
                let class = v.kodaira_class.to_string();
                kv(
                    &mut pairs,
                    &format!("{class}.excluded"),
                    v.excluded.to_string(),
                );
                kv(&mut pairs, &format!("{class}.reason"), v.reason.clone());
                kv(
                    &mut pairs,
                    &format!("{class}.premises"),
                    v.premises.join(","),
                );
                let _ = writeln!(text, "{v}");
            }
        }
        Show::Dsl => {
            let dsl = to_dsl(f);
            kv(&mut pairs, "cycles", f.len().to_string());
            kv(&mut pairs, "dsl", dsl.trim_end().replace('\n', "; "));
            text.push_str(&dsl);
        }
    }
    Ok(Rendered { pairs, text })
}

/// Runs one command, returning everything destined for stdout and the
/// diagnostics destined for stderr.
pub fn run(cli: &Cli) -> (CliResult<String>, Vec<String>) {
    let mut log = Vec::new();
    let result = run_inner(cli, &mut log);
    (result, log)
}

fn run_inner(cli: &Cli, log: &mut Vec<String>) -> CliResult<String> {
    let default_opts = |input: &Input| RenderOptions {
        passes: 8,
        hyperelliptic: input.hyperelliptic,
        ..RenderOptions::default()
    };
    let single = |input: &Input,
                  show: Show,
                  opts: RenderOptions,
                  log: &mut Vec<String>|
     -> CliResult<String> {
        let loaded = load(input, cli.verbose, log)?;
        Ok(render(&loaded.factorization, show, loaded.n, &opts)?.emit(cli.format))
    };

    match &cli.command {
        Command::Pi1 { input, passes } => single(
            input,
            Show::Pi1,
            RenderOptions {
                passes: *passes,
                ..default_opts(input)
            },
            log,
        ),
        Command::H1 { input } => single(input, Show::H1, default_opts(input), log),
        Command::Invariants { input } => single(input, Show::Invariants, default_opts(input), log),
        Command::Validate { input } => {
            let loaded = load(input, cli.verbose, log)?;
            let out = render(
                &loaded.factorization,
                Show::Validate,
                loaded.n,
                &default_opts(input),
            )?
            .emit(cli.format);
            if validate(&loaded.factorization)?.is_valid() {
                Ok(out)
            } else {
                Err(CliError::Domain(out.trim_end().to_string()))
            }
        }
        Command::Obstruct {
            input,
            cover,
            degree,
            reverse,
        } => single(
            input,
            Show::Obstruct,
            RenderOptions {
                cover: *cover,
                degree: *degree,
                reverse: *reverse,
                ..default_opts(input)
            },
            log,
        ),
        Command::Bn { n, n_range, show } => {
            let opts = RenderOptions {
                passes: 8,
                cover: true,
                ..RenderOptions::default()
            };
            if let Some(n) = n {
                let n = check_n(*n)?;
                return Ok(render(&build_bn(n)?, *show, Some(n), &opts)?.emit(cli.format));
            }
            let range = n_range.clone().expect("clap enforces --n or --n-range");
            check_n(*range.start())?;
            check_n(*range.end())?;
            let rows: Vec<CliResult<Rendered>> = range
                .clone()
                .into_par_iter()
                .map(|n| render(&build_bn(n)?, *show, Some(n), &opts))
                .collect();
            let mut out = String::new();
            for (n, row) in range.zip(rows) {
                let row = row?;
                match cli.format {
                    Format::Text => {
                        let body = row.text.trim_end();
                        if body.contains('\n') {
                            let _ = writeln!(out, "n={n}\n{body}");
                        } else {
                            let _ = writeln!(out, "{n}\t{body}");
                        }
                    }
                    Format::Keyvalue => {
                        let _ = writeln!(out, "n={n}");
                        out.push_str(&row.emit(Format::Keyvalue));
                    }
                }
            }
            Ok(out)
        }
        Command::Fibersum {
            left,
            right,
            twist,
            show,
        } => {
            let f1 = read_file(left, cli.verbose, log)?;
            let f2 = read_file(right, cli.verbose, log)?;
            let phi = MappingClass::parse(twist, f1.fiber_genus())
                .map_err(|e| CliError::Usage(format!("--twist: {e}")))?;
            let sum = twisted_fiber_sum(&f1, &f2, &phi)?;
            let opts = RenderOptions {
                passes: 8,
                ..RenderOptions::default()
            };
            Ok(render(&sum, *show, None, &opts)?.emit(cli.format))
        }
    }
}
