//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse, validation or parameter error, 2 I/O
//! error, 3 internal invariant violation, 4 verifier rejected the relation.
//! Data goes to stdout (or `-o`), diagnostics to stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::automaton::{gen_fixture_named, gen_random, gen_separation_family, parse_nfa, to_dot, Nfa};
use crate::colex::{cfs_order, max_colex_relation, Analysis, CompareReport};
use crate::error::Error;
use crate::fs_partition::{block_name, build_quotient, coarsest_fs_partition, Partition};
use crate::json;
use crate::oracle::{cross_check, Outcome};
use crate::relations::{
    check_colex_order, check_colex_relation, check_wheeler_order, check_wheeler_preorder,
    induced_equivalence, width, Relation,
};
use crate::Verdict;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

/// Environment variable capping sweep concurrency; unset or 0 is sequential.
pub const THREADS_VAR: &str = "NFA_INDEX_THREADS";

#[derive(Debug, Parser)]
#[command(name = "nfa-index", version, about = "Co-lex orders, CFS orders and widths of NFAs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    ColexOrder,
    ColexRelation,
    WheelerOrder,
    WheelerPreorder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// The maximum co-lex relation.
    R,
    /// The CFS order.
    Fs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sep,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Automaton file in the text format.
    #[arg(conflicts_with = "fixture", required_unless_present = "fixture")]
    pub path: Option<PathBuf>,
    /// Built-in automaton: fig2, wheeler3 or sep:<n>.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write data here instead of stdout.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomParams {
    #[arg(long, default_value_t = 6)]
    pub states: usize,
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full comparison report of ≤_R and ≤_FS.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// The CFS order ≤_FS.
    Cfs {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// The maximum co-lex relation ≤_R.
    Maxrel {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// The coarsest forward-stable partition and its quotient automaton.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Width of ≤_R or ≤_FS with a chain cover and antichain.
    Width {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_enum, default_value_t = Which::R)]
        of: Which,
    },
    /// Verify a relation against the automaton.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// Relation JSON: {"n": .., "pairs": [[u, v], ...]}.
        #[arg(long)]
        relation: PathBuf,
    },
    /// Print a fixture or a seeded random automaton.
    Gen {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        fixture: Option<String>,
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        params: RandomParams,
        #[command(flatten)]
        out: Output,
    },
    /// Side-by-side table of ≤_R and ≤_FS.
    Compare {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Table of reports over a family or a random ensemble.
    Sweep {
        #[arg(long, value_enum, conflicts_with = "random", required_unless_present = "random")]
        family: Option<Family>,
        #[arg(long, default_value_t = 5)]
        from: usize,
        #[arg(long, default_value_t = 20)]
        to: usize,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        params: RandomParams,
        #[command(flatten)]
        out: Output,
        #[arg(long, hide = true)]
        oracle: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

type CmdResult<T> = std::result::Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load(input: &Input) -> CmdResult<Nfa> {
    match (&input.path, &input.fixture) {
        (_, Some(name)) => Ok(gen_fixture_named(name)?),
        (Some(path), None) => Ok(parse_nfa(&read(path)?)?),
        (None, None) => Err(usage("an input path or --fixture is required")),
    }
}

fn format_of(out: &Output, default: Format, allowed: &[Format]) -> CmdResult<Format> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(usage(format!("format {f:?} is not available for this command").to_lowercase()));
    }
    Ok(f)
}

fn report_text(r: &CompareReport) -> String {
    format!(
        "n_states {}\nclasses_R {}\nclasses_FS {}\nwidth_R {}\nwidth_FS {}\nsuperset_holds {}\nquasi_wheeler {}\nmax_order_exists {}\n",
        r.n_states,
        r.classes_r,
        r.classes_fs,
        r.width_r,
        r.width_fs,
        r.superset_holds,
        r.quasi_wheeler,
        r.max_order_exists
    )
}

fn report_json(r: &CompareReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("serializable");
    s.push('\n');
    s
}

/// Classes in canonical order, then the strict pairs between them.
fn relation_text(nfa: &Nfa, r: &Relation) -> CmdResult<String> {
    let classes = induced_equivalence(r)?;
    let order = crate::relations::induced_order(r, &classes)?;
    let mut s = String::new();
    for (i, b) in classes.blocks().iter().enumerate() {
        writeln!(s, "class {i} {}", block_name(nfa, b)).unwrap();
    }
    for (x, y) in order.pairs() {
        writeln!(s, "less {x} {y}").unwrap();
    }
    Ok(s)
}

fn print_checks(label: &str, nfa: &Nfa, checks: &[crate::oracle::Check]) -> CmdResult<()> {
    let mut failed = 0;
    for c in checks {
        match &c.outcome {
            Outcome::Pass => {}
            Outcome::Skipped(why) => eprintln!("{label}: oracle {} skipped ({why})", c.name),
            Outcome::Fail(why) => {
                failed += 1;
                eprintln!("{label}: oracle {} FAILED: {why}", c.name);
            }
        }
    }
    if failed > 0 {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("{label}: {failed} oracle checks failed on {} states", nfa.n_states()),
        });
    }
    Ok(())
}

/// Output of a successful command: data and the exit code to report.
struct Done {
    data: String,
    code: i32,
}

fn ok(data: String) -> CmdResult<Done> {
    Ok(Done { data, code: EXIT_OK })
}

fn cmd_analyze(input: &Input, out: &Output, oracle: bool) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Json, &[Format::Json, Format::Text])?;
    let analysis = Analysis::compute(&nfa)?;
    if oracle {
        print_checks("analyze", &nfa, &cross_check(&nfa)?)?;
    }
    ok(match f {
        Format::Json => report_json(&analysis.report),
        _ => report_text(&analysis.report),
    })
}

fn cmd_cfs(input: &Input, out: &Output) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let cfs = cfs_order(&nfa)?;
    ok(match f {
        Format::Json => json::relation_to_json(&nfa, &cfs.relation),
        Format::Dot => to_dot(&nfa, Some(cfs.partition())),
        Format::Text => relation_text(&nfa, &cfs.relation)?,
    })
}

fn cmd_maxrel(input: &Input, out: &Output) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let rel = max_colex_relation(&nfa)?;
    ok(match f {
        Format::Json => json::relation_to_json(&nfa, &rel),
        Format::Dot => to_dot(&nfa, Some(&induced_equivalence(&rel)?)),
        Format::Text => relation_text(&nfa, &rel)?,
    })
}

fn cmd_quotient(input: &Input, out: &Output) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Text, &[Format::Json, Format::Dot, Format::Text])?;
    let p: Partition = coarsest_fs_partition(&nfa);
    let qm = build_quotient(&nfa, &p)?;
    ok(match f {
        Format::Json => json::partition_to_json(&nfa, &p),
        Format::Dot => to_dot(&qm.quotient, None),
        Format::Text => qm.quotient.to_text(),
    })
}

fn cmd_width(input: &Input, out: &Output, of: Which) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Json, &[Format::Json, Format::Text])?;
    let rel = match of {
        Which::R => max_colex_relation(&nfa)?,
        Which::Fs => cfs_order(&nfa)?.relation,
    };
    let cert = width(&rel)?;
    ok(match f {
        Format::Json => json::width_to_json(&nfa, &cert),
        _ => {
            let names = |ids: &[usize]| {
                ids.iter().map(|&u| nfa.name(u)).collect::<Vec<_>>().join(" ")
            };
            let mut s = format!("width {}\nantichain {}\n", cert.width, names(&cert.antichain));
            for c in &cert.chains {
                writeln!(s, "chain {}", names(c)).unwrap();
            }
            s
        }
    })
}

fn cmd_check(input: &Input, out: &Output, kind: CheckKind, relation: &Path) -> CmdResult<Done> {
    let nfa = load(input)?;
    format_of(out, Format::Text, &[Format::Text])?;
    let rel = json::relation_from_json(&nfa, &read(relation)?)?;
    let verdict = match kind {
        CheckKind::ColexOrder => check_colex_order(&nfa, &rel)?,
        CheckKind::ColexRelation => check_colex_relation(&nfa, &rel)?,
        CheckKind::WheelerOrder => check_wheeler_order(&nfa, &rel)?,
        CheckKind::WheelerPreorder => check_wheeler_preorder(&nfa, &rel)?,
    };
    Ok(match verdict {
        Verdict::Valid => Done {
            data: "valid\n".into(),
            code: EXIT_OK,
        },
        Verdict::Invalid(v) => Done {
            data: format!("invalid: {}\n", v.describe(&nfa)),
            code: EXIT_INVALID,
        },
    })
}

fn cmd_gen(fixture: Option<&str>, params: &RandomParams, out: &Output) -> CmdResult<Done> {
    let f = format_of(out, Format::Text, &[Format::Dot, Format::Text])?;
    let nfa = match fixture {
        Some(name) => gen_fixture_named(name)?,
        None => gen_random(params.states, params.alphabet, params.density, params.seed)?,
    };
    ok(match f {
        Format::Dot => to_dot(&nfa, None),
        _ => nfa.to_text(),
    })
}

fn cmd_compare(input: &Input, out: &Output) -> CmdResult<Done> {
    let nfa = load(input)?;
    let f = format_of(out, Format::Text, &[Format::Json, Format::Text])?;
    let an = Analysis::compute(&nfa)?;
    let r = &an.report;
    ok(match f {
        Format::Json => report_json(r),
        _ => {
            let mut s = String::new();
            writeln!(s, "{:<10} {:>8} {:>8}", "", "R", "FS").unwrap();
            writeln!(s, "{:<10} {:>8} {:>8}", "classes", r.classes_r, r.classes_fs).unwrap();
            writeln!(s, "{:<10} {:>8} {:>8}", "width", r.width_r, r.width_fs).unwrap();
            writeln!(
                s,
                "{:<10} {:>8} {:>8}",
                "pairs",
                an.max_relation.len(),
                an.cfs.relation.len()
            )
            .unwrap();
            writeln!(s, "superset_holds {}", r.superset_holds).unwrap();
            writeln!(s, "quasi_wheeler {}", r.quasi_wheeler).unwrap();
            writeln!(s, "max_order_exists {}", r.max_order_exists).unwrap();
            s
        }
    })
}

fn sweep_threads() -> CmdResult<usize> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{THREADS_VAR} must be a non-negative integer, got {v:?}"))),
    }
}

#[derive(serde::Serialize)]
struct SweepRow {
    n: usize,
    #[serde(rename = "classes_R")]
    classes_r: usize,
    #[serde(rename = "classes_FS")]
    classes_fs: usize,
    #[serde(rename = "width_R")]
    width_r: usize,
    #[serde(rename = "width_FS")]
    width_fs: usize,
    quasi_wheeler: bool,
}

fn sweep_one(nfa: &Nfa, label: &str, oracle: bool) -> CmdResult<SweepRow> {
    let r = Analysis::compute(nfa)?.report;
    if oracle {
        print_checks(label, nfa, &cross_check(nfa)?)?;
    }
    Ok(SweepRow {
        n: r.n_states,
        classes_r: r.classes_r,
        classes_fs: r.classes_fs,
        width_r: r.width_r,
        width_fs: r.width_fs,
        quasi_wheeler: r.quasi_wheeler,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: Option<Family>,
    from: usize,
    to: usize,
    count: usize,
    params: &RandomParams,
    out: &Output,
    oracle: bool,
) -> CmdResult<Done> {
    let f = format_of(out, Format::Text, &[Format::Json, Format::Text])?;
    let threads = sweep_threads()?;
    let instances: Vec<(String, Nfa)> = match family {
        Some(Family::Sep) => {
            if from > to {
                return Err(usage(format!("empty range {from}..={to}")));
            }
            (from..=to)
                .map(|n| Ok((format!("sep:{n}"), gen_separation_family(n)?)))
                .collect::<CmdResult<_>>()?
        }
        None => (0..count as u64)
            .map(|i| {
                let seed = params.seed.wrapping_add(i);
                let nfa = gen_random(params.states, params.alphabet, params.density, seed)?;
                Ok((format!("seed {seed}"), nfa))
            })
            .collect::<CmdResult<_>>()?,
    };

    let rows: Vec<CmdResult<SweepRow>> = if threads == 0 {
        instances.iter().map(|(l, a)| sweep_one(a, l, oracle)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                message: format!("thread pool: {e}"),
            })?;
        pool.install(|| instances.par_iter().map(|(l, a)| sweep_one(a, l, oracle)).collect())
    };
    let rows = rows.into_iter().collect::<CmdResult<Vec<_>>>()?;

    ok(match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::from("n,classes_R,classes_FS,width_R,width_FS,quasi_wheeler\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.n, r.classes_r, r.classes_fs, r.width_r, r.width_fs, r.quasi_wheeler
                )
                .unwrap();
            }
            s
        }
    })
}

fn dispatch(cmd: &Command) -> CmdResult<(Done, Option<&Path>)> {
    let (done, out) = match cmd {
        Command::Analyze { input, out, oracle } => (cmd_analyze(input, out, *oracle)?, out),
        Command::Cfs { input, out } => (cmd_cfs(input, out)?, out),
        Command::Maxrel { input, out } => (cmd_maxrel(input, out)?, out),
        Command::Quotient { input, out } => (cmd_quotient(input, out)?, out),
        Command::Width { input, out, of } => (cmd_width(input, out, *of)?, out),
        Command::Check {
            input,
            out,
            kind,
            relation,
        } => (cmd_check(input, out, *kind, relation)?, out),
        Command::Gen {
            fixture,
            params,
            out,
            ..
        } => (cmd_gen(fixture.as_deref(), params, out)?, out),
        Command::Compare { input, out } => (cmd_compare(input, out)?, out),
        Command::Sweep {
            family,
            from,
            to,
            count,
            params,
            out,
            oracle,
            ..
        } => (cmd_sweep(*family, *from, *to, *count, params, out, *oracle)?, out),
    };
    Ok((done, out.output.as_deref()))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((done, path)) => {
            let written = match path {
                Some(p) => fs::write(p, &done.data).map_err(|e| io_failure(p, e)),
                None => {
                    use std::io::Write;
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(done.data.as_bytes())
                        .and_then(|_| stdout.flush())
                        .map_err(|e| io_failure(Path::new("<stdout>"), e))
                }
            };
            match written {
                Ok(()) => done.code,
                Err(f) => {
                    eprintln!("error: {}", f.message);
                    f.code
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
