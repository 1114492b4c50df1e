use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use unitfrac::analysis::{
    expand_solution, greedy_expand, identity_expand, to_structure, validate_solution, Constraints,
    Identity,
};
use unitfrac::automaton::count_total_parallel;
use unitfrac::enumerator::{
    emit, enumerate_parallel, enumerate_with, EmissionTable, Format, DEFAULT_ENUMERATION_LIMIT,
};
use unitfrac::families::{catalog_theorem1, family_u, family_v, family_z1};
use unitfrac::io::{
    parse_brace_line, parse_listing, parse_range, parse_rational, parse_solution_json,
};
use unitfrac::oracle::{as_set, default_cap, restricted_brute_force, DEFAULT_NODE_BUDGET};
use unitfrac::recurrence::{depth_bounds, theorem2_total};
use unitfrac::{Error, SolutionSet};

#[derive(Parser)]
#[command(
    name = "unitfrac",
    version,
    about = "Unit-fraction representations of 1 with denominators 2^a*q^b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count q = 3 solutions, one "(n,count)" line per n
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// List every q = 3 solution
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the emission table exactly as originally printed
        #[arg(long)]
        printed: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: u32,
    },
    /// Validate a solution file (JSON or brace listing)
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Require pairwise distinct values
        #[arg(long)]
        distinct: bool,
        /// Require the 2^a*q^b form, a <= 2, for this q (defaults to the file's prime)
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Brute-force the restricted equation and compare with the known answer
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Print the closed-form families and the total count
    Families {
        #[arg(long)]
        n: u32,
        /// Also print the labeled n = 9 catalog in fixture format
        #[arg(long)]
        catalog: bool,
    },
    /// Depth-based bounds on the q = 3 count
    Bounds {
        #[command(flatten)]
        target: Target,
    },
    /// Greedy expansion of a rational, or an identity expansion of one denominator
    Expand {
        /// Rational p/q in (0, 1] for the greedy expansion
        #[arg(long, conflicts_with_all = ["value", "solution"])]
        rational: Option<String>,
        /// Denominator to expand with --identity
        #[arg(long, requires = "identity")]
        value: Option<BigUint>,
        /// Solution {..} whose element at --index is expanded with --identity
        #[arg(long, requires_all = ["identity", "index"], conflicts_with = "value")]
        solution: Option<String>,
        #[arg(long)]
        index: Option<usize>,
        /// four | two
        #[arg(long)]
        identity: Option<String>,
    },
    /// Arithmetical structure (d, r) on K_n of a solution
    Structure {
        /// Solution in brace form, e.g. {2,3,6}
        solution: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    n: Option<u32>,
    /// a..b, inclusive
    #[arg(long)]
    range: Option<String>,
}

impl Target {
    fn values(&self) -> Result<Vec<u32>, Error> {
        match (&self.n, &self.range) {
            (Some(n), _) => Ok(vec![*n]),
            (None, Some(r)) => Ok(parse_range(r)?.collect()),
            (None, None) => unreachable!("clap enforces one of --n and --range"),
        }
    }
}

enum Failure {
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::Json(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::Overflow(_) => ExitCode::from(3),
                Error::Domain(_) | Error::Parse { .. } | Error::NotPrime(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    match cmd {
        Command::Count { target, threads } => {
            for n in target.values()? {
                writeln!(out, "({n},{})", count_total_parallel(n, threads)?)?;
            }
        }
        Command::Enumerate {
            n,
            format,
            out: path,
            printed,
            threads,
            limit,
        } => {
            let format: Format = format.parse()?;
            let table = if printed {
                EmissionTable::AsPrinted
            } else {
                EmissionTable::Corrected
            };
            let sols = if threads > 1 {
                enumerate_parallel(n, table, limit)?
            } else {
                enumerate_with(n, table, limit)?
            };
            match path {
                Some(p) => {
                    emit(n, 3, &sols, format, BufWriter::new(File::create(p)?))?;
                }
                None => {
                    emit(n, 3, &sols, format, &mut *out)?;
                }
            }
        }
        Command::Verify {
            file,
            distinct,
            prime,
        } => verify(&file, distinct, prime, out)?,
        Command::Oracle {
            n,
            prime,
            cap,
            budget,
        } => oracle(n, prime, cap, budget, out)?,
        Command::Families { n, catalog } => {
            writeln!(out, "U {}", family_u(n)?)?;
            match family_v(n) {
                Ok(v) => writeln!(out, "V {v}")?,
                Err(_) => writeln!(out, "V none (n even)")?,
            }
            writeln!(out, "Z_1 {}", family_z1(n)?)?;
            writeln!(out, "total {}", theorem2_total(n)?)?;
            if catalog {
                write!(out, "{}", catalog_theorem1().to_text())?;
            }
        }
        Command::Bounds { target } => {
            for n in target.values()? {
                let b = depth_bounds(n)?;
                write!(
                    out,
                    "n={} d1_min={} d2_min={} d_max={} lower={} upper={} upper(n-4)={} count={} ",
                    b.n, b.d1_min, b.d2_min, b.d_max, b.lower, b.upper, b.upper_alt, b.observed
                )?;
                if b.holds {
                    write!(out, "holds")?;
                } else {
                    write!(out, "erratum")?;
                }
                if !b.note.is_empty() {
                    write!(out, " ({})", b.note)?;
                }
                writeln!(out)?;
            }
        }
        Command::Expand {
            rational,
            value,
            solution,
            index,
            identity,
        } => {
            let identity: Option<Identity> = identity.map(|s| s.parse()).transpose()?;
            let list = match (rational, value, solution, identity) {
                (Some(r), None, None, _) => greedy_expand(&parse_rational(&r)?)?,
                (None, Some(v), None, Some(id)) => identity_expand(&v, id)?,
                (None, None, Some(s), Some(id)) => {
                    let s = SolutionSet::new(parse_brace_line(&s)?);
                    let i = index.expect("clap requires --index with --solution");
                    expand_solution(&s, i, id)?.values().to_vec()
                }
                _ => {
                    return Err(Error::Domain(
                        "give --rational, or --value/--solution with --identity".into(),
                    )
                    .into())
                }
            };
            writeln!(out, "{}", SolutionSet::new(list))?;
        }
        Command::Structure { solution } => {
            let s = SolutionSet::new(parse_brace_line(&solution)?);
            let st = to_structure(&s)?;
            let show = |v: &[BigUint]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(out, "r=({})", show(&st.r))?;
            writeln!(out, "d=({})", show(&st.d))?;
        }
    }
    Ok(())
}

fn verify(
    file: &PathBuf,
    distinct: bool,
    prime: Option<u64>,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let text = fs::read_to_string(file)?;
    let (solutions, declared_prime, count) = match parse_solution_json(&text) {
        Ok(f) => (f.to_solutions(), f.prime, f.count),
        Err(json_err) => match parse_listing(&text) {
            Ok((lines, count)) => (
                lines.into_iter().map(SolutionSet::new).collect(),
                None,
                count,
            ),
            Err(_) => return Err(json_err.into()),
        },
    };
    let c = Constraints {
        distinct,
        form: prime.or(declared_prime).map(|q| (q, 2)),
    };
    let reports: Vec<_> = solutions.iter().map(|s| validate_solution(s, &c)).collect();
    let count_ok = count.is_none_or(|k| k == solutions.len());
    let pass = count_ok && reports.iter().all(|r| r.pass);
    let doc = serde_json::json!({
        "solutions": solutions.len(),
        "declared_count": count,
        "count_matches": count_ok,
        "pass": pass,
        "reports": reports,
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    if !pass {
        let failed = reports.iter().filter(|r| !r.pass).count();
        return Err(Failure::Invalid(format!(
            "{failed} of {} solutions failed{}",
            solutions.len(),
            if count_ok {
                ""
            } else {
                ", declared count differs"
            }
        )));
    }
    Ok(())
}

fn oracle(
    n: u32,
    q: u64,
    cap: Option<u32>,
    budget: u64,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let cap = match cap {
        Some(c) => c,
        None => default_cap(n, q)?,
    };
    let found = restricted_brute_force(n, q, cap, budget)?;
    for s in &found {
        writeln!(out, "{s}")?;
    }
    writeln!(out, "There are {} solutions (q={q}, B={cap})", found.len())?;
    let reference: Option<(&str, Vec<SolutionSet>)> = match q {
        3 if (9..=DEFAULT_ENUMERATION_LIMIT).contains(&n) => Some((
            "enumerator",
            enumerate_with(n, EmissionTable::Corrected, DEFAULT_ENUMERATION_LIMIT)?,
        )),
        5 if n >= 9 => Some(("family U", vec![family_u(n)?])),
        7 if n >= 9 => Some(("family V", family_v(n).into_iter().collect())),
        _ => None,
    };
    match reference {
        Some((name, r)) => {
            if as_set(&found) == as_set(&r) {
                writeln!(out, "agrees with {name}")?;
            } else {
                writeln!(
                    out,
                    "DISAGREES with {name} ({} reference solutions)",
                    r.len()
                )?;
                return Err(Failure::Invalid(format!("oracle and {name} differ")));
            }
        }
        None => writeln!(out, "no reference for q={q}, n={n}")?,
    }
    Ok(())
}
