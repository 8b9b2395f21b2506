//! `hurwitz` — exact q-combinatorics, finite geometry, Fano-coded octonion
//! tables, Cayley–Dickson law probes, and n-square identities from one
//! binary.  Every command is deterministic for fixed flags and seed.

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz::acceptance::{run_library_criteria, CriterionResult};
use hurwitz::cayley_dickson::{probe_law, unit_table, AlgebraLaw, Counterexample, UnitTable};
use hurwitz::fano_octonions::{
    fano_dot, orientation_sweep, validate_table, FanoPoint, MultTable, UnitLabeling,
};
use hurwitz::finite_geometry::{
    build_lattice, enumerate_subspaces, projective_space, subspaces_to_json,
};
use hurwitz::identities::{derive_identity, NSquareIdentity};
use hurwitz::qcalc::galois_number;
use std::error::Error;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Exactly-verified q-combinatorics, finite geometry, and the Cayley-Dickson tower"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coding {
    /// The Fano-plane table built from the seven classic oriented lines.
    Classic,
    /// The table of the doubling construction at level 3.
    Doubling,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawArg {
    Commutative,
    Associative,
    Alternative,
    Flexible,
    Moufang,
    NormComposing,
}

impl From<LawArg> for AlgebraLaw {
    fn from(arg: LawArg) -> Self {
        match arg {
            LawArg::Commutative => AlgebraLaw::Commutative,
            LawArg::Associative => AlgebraLaw::Associative,
            LawArg::Alternative => AlgebraLaw::Alternative,
            LawArg::Flexible => AlgebraLaw::Flexible,
            LawArg::Moufang => AlgebraLaw::Moufang,
            LawArg::NormComposing => AlgebraLaw::NormComposing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Galois number G_{n,q}: the total number of subspaces of
    /// V(n, q).
    Galois {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the k-dimensional subspaces of V(n, q) by canonical RREF basis.
    Subspaces {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The full subspace lattice of V(n, q) with its cover relations.
    Lattice {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The lines of the projective plane PG(2, q) as sorted point strings
    /// (q = 2 gives the Fano plane).
    Fano {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// An 8 x 8 octonion multiplication table.
    OctonionTable {
        #[arg(long, value_enum, default_value_t = Coding::Classic)]
        coding: Coding,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Read a multiplication table (JSON, as emitted by octonion-table)
    /// from standard input and validate it symbolically.  Exits nonzero
    /// when any check fails.
    Validate {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Derive and verify the n-square identity (n = 1, 2, 4, or 8).
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Coding::Doubling)]
        coding: Coding,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Probe an algebraic law at a tower level: decisive exhaustive basis
    /// pass plus seeded random confirmation trials.
    Probe {
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum)]
        law: LawArg,
        #[arg(long, default_value_t = 64)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep all 128 orientation assignments of the classic labeling's
    /// lines and count those whose tables validate.
    Sweep {
        /// Required switch selecting the orientation sweep.
        #[arg(long, required = true)]
        orientations: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full acceptance suite and print one pass/fail line per
    /// criterion.  Exits nonzero unless every criterion passes.
    Acceptance,
}

fn main() -> ExitCode {
    // Behave like a classic Unix filter when the downstream end of a pipe
    // closes early (e.g. `hurwitz subspaces ... | head`): terminate on
    // SIGPIPE instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn unsupported_format(sub: &str, supported: &str) -> Box<dyn Error> {
    format!("{sub} supports only --format {supported}").into()
}

/// Executes one subcommand; `Ok(true)` means every check passed.
fn run(command: Command) -> Result<bool, Box<dyn Error>> {
    match command {
        Command::Galois { n, q, format } => {
            let g = galois_number(n, q)?;
            match format {
                Format::Text => println!("{g}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "galois": g.to_string(), "n": n, "q": q })
                ),
                Format::Dot => return Err(unsupported_format("galois", "text, json")),
            }
            Ok(true)
        }
        Command::Subspaces { n, q, k, format } => {
            let subs = enumerate_subspaces(n, q, k)?;
            match format {
                Format::Text => {
                    for s in &subs {
                        println!("{s}");
                    }
                }
                Format::Json => println!("{}", subspaces_to_json(&subs)),
                Format::Dot => return Err(unsupported_format("subspaces", "text, json")),
            }
            Ok(true)
        }
        Command::Lattice { n, q, format } => {
            let lattice = build_lattice(n, q)?;
            match format {
                Format::Text => {
                    println!(
                        "subspace lattice of V({n}, {q}): {} nodes, {} cover relations",
                        lattice.node_count(),
                        lattice.covers().len()
                    );
                    for k in 0..=n {
                        println!("level {k}: {} subspaces", lattice.level(k).len());
                    }
                }
                Format::Json => println!("{}", lattice.to_json()),
                Format::Dot => print!("{}", lattice.to_dot()),
            }
            Ok(true)
        }
        Command::Fano { q, format } => {
            let plane = projective_space(2, q)?;
            let mut lines = plane.line_point_strings();
            lines.sort();
            match format {
                Format::Text => {
                    for line in &lines {
                        println!("{}", line.join(" "));
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::Value::from(lines))
                }
                Format::Dot => print!("{}", plane.to_dot()),
            }
            Ok(true)
        }
        Command::OctonionTable { coding, format } => {
            let table = table_for(coding)?;
            match format {
                Format::Text => {
                    for i in 0..8 {
                        let row: Vec<String> =
                            (0..8).map(|j| table.product(i, j).to_string()).collect();
                        println!("{}", row.join(" "));
                    }
                }
                Format::Json => println!("{}", table.to_json()?),
                Format::Dot => print!("{}", fano_dot(&table, &labeling_for(coding))?),
            }
            Ok(true)
        }
        Command::Validate { format } => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            let table = MultTable::from_json(&text)?;
            let report = validate_table(&table);
            match format {
                Format::Text => {
                    println!("anticommutative: {}", report.anticommutative);
                    println!(
                        "units-square-to-minus-one: {}",
                        report.units_square_to_minus_one
                    );
                    println!("norm-composing: {}", report.norm_composing);
                    println!("alternative: {}", report.alternative);
                    println!("all-hold: {}", report.all_hold());
                    for failure in &report.failures {
                        println!("failure: {failure}");
                    }
                }
                Format::Json => {
                    let failures: Vec<String> =
                        report.failures.iter().map(|f| f.to_string()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "anticommutative": report.anticommutative,
                            "units_square_to_minus_one": report.units_square_to_minus_one,
                            "norm_composing": report.norm_composing,
                            "alternative": report.alternative,
                            "all_hold": report.all_hold(),
                            "failures": failures,
                        })
                    );
                }
                Format::Dot => return Err(unsupported_format("validate", "text, json")),
            }
            Ok(report.all_hold())
        }
        Command::Identity { n, coding, format } => {
            let identity = identity_for(n, coding)?;
            match format {
                Format::Text => println!("{}", identity.emit_text()?),
                Format::Json => println!("{}", identity.emit_json()?),
                Format::Dot => return Err(unsupported_format("identity", "text, json")),
            }
            Ok(identity.is_verified())
        }
        Command::Probe {
            level,
            law,
            trials,
            seed,
            format,
        } => {
            let report = probe_law(level, law.into(), trials, seed)?;
            let rechecked = report.recheck();
            match format {
                Format::Text => {
                    println!(
                        "law: {}\nlevel: {}\nholds: {}\ntrials: {}\nseed: {}",
                        report.law, report.level, report.holds, report.trials, report.seed
                    );
                    if let Some(ce) = &report.counterexample {
                        println!("counterexample: {ce}");
                    }
                    println!("recheck: {rechecked}");
                }
                Format::Json => {
                    let ce = report.counterexample.as_ref().map(|ce| match ce {
                        Counterexample::Pair(x, y) => {
                            serde_json::json!({ "x": x.to_string(), "y": y.to_string() })
                        }
                        Counterexample::Triple(x, y, z) => serde_json::json!({
                            "x": x.to_string(),
                            "y": y.to_string(),
                            "z": z.to_string(),
                        }),
                    });
                    println!(
                        "{}",
                        serde_json::json!({
                            "law": report.law.to_string(),
                            "level": report.level,
                            "holds": report.holds,
                            "counterexample": ce,
                            "trials": report.trials,
                            "seed": report.seed,
                            "recheck": rechecked,
                        })
                    );
                }
                Format::Dot => return Err(unsupported_format("probe", "text, json")),
            }
            // The probe *ran*; holds = false is a finding, not a failure.
            // Only an internally inconsistent report is an error.
            Ok(rechecked)
        }
        Command::Sweep {
            orientations,
            format,
        } => {
            debug_assert!(orientations, "clap enforces the required switch");
            let sweep = orientation_sweep(&UnitLabeling::classic());
            match format {
                Format::Text => {
                    println!(
                        "valid orientation assignments: {} of {}",
                        sweep.valid_count(),
                        sweep.total
                    );
                    let masks: Vec<String> =
                        sweep.valid_masks.iter().map(|m| m.to_string()).collect();
                    println!("valid masks: {}", masks.join(" "));
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "labeling": "classic",
                        "total": sweep.total,
                        "valid_count": sweep.valid_count(),
                        "valid_masks": sweep.valid_masks,
                    })
                ),
                Format::Dot => return Err(unsupported_format("sweep", "text, json")),
            }
            Ok(true)
        }
        Command::Acceptance => {
            let mut results = run_library_criteria();
            results.push(criterion_8_determinism());
            let mut all = true;
            for r in &results {
                println!("{}", r.line());
                all &= r.passed;
            }
            println!(
                "acceptance: {}/{} criteria passed",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            Ok(all)
        }
    }
}

fn table_for(coding: Coding) -> Result<MultTable, Box<dyn Error>> {
    match coding {
        Coding::Classic => Ok(MultTable::classic()),
        Coding::Doubling => Ok(MultTable::from_unit_table(&unit_table(3)?)?),
    }
}

/// The labeling whose point strings annotate a table's DOT rendering: the
/// classic assignment for the classic table, the binary-value assignment
/// (unit i on the point of value i) for the doubling table.
fn labeling_for(coding: Coding) -> UnitLabeling {
    match coding {
        Coding::Classic => UnitLabeling::classic(),
        Coding::Doubling => {
            let points: [FanoPoint; 7] = [1u8, 2, 3, 4, 5, 6, 7]
                .map(|v| FanoPoint::new(v).expect("values 1..=7 are points"));
            UnitLabeling::new(points).expect("distinct points")
        }
    }
}

fn source_table_for(n: usize, coding: Coding) -> Result<UnitTable, Box<dyn Error>> {
    match coding {
        Coding::Classic => {
            if n != 8 {
                return Err("the classic Fano coding is eight-dimensional; use --n 8".into());
            }
            Ok(MultTable::classic().to_unit_table())
        }
        Coding::Doubling => {
            // n is 1, 2, 4, or 8 here, so the level is its log2.
            Ok(unit_table(n.trailing_zeros() as usize)?)
        }
    }
}

fn identity_for(n: usize, coding: Coding) -> Result<NSquareIdentity, Box<dyn Error>> {
    if !matches!(n, 1 | 2 | 4 | 8) {
        return Err(format!(
            "no n-square identity is derived for n = {n}; use 1, 2, 4, or 8 \
             (the 16-square analogue provably fails: see the acceptance suite)"
        )
        .into());
    }
    let source = source_table_for(n, coding)?;
    Ok(derive_identity(n, &source)?)
}

/// Criterion 8: every CLI command byte-identical across two runs with the
/// same flags and seed.  Runs a corpus covering all subcommands (except
/// `acceptance` itself) twice through the actual binary.
fn criterion_8_determinism() -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match determinism_check() {
        Ok(count) => (
            true,
            format!("{count} invocations, each byte-identical (stdout and exit status) across two runs"),
        ),
        Err(e) => (false, e.to_string()),
    };
    CriterionResult {
        number: 8,
        name: "cli-determinism",
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn determinism_check() -> Result<usize, Box<dyn Error>> {
    let exe = std::env::current_exe()?;
    let corpus: &[&[&str]] = &[
        &["galois", "--n", "3", "--q", "2"],
        &["galois", "--n", "4", "--q", "3", "--format", "json"],
        &["subspaces", "--n", "4", "--q", "2", "--k", "2"],
        &["subspaces", "--n", "3", "--q", "3", "--k", "1", "--format", "json"],
        &["lattice", "--n", "3", "--q", "2", "--format", "json"],
        &["lattice", "--n", "3", "--q", "2", "--format", "dot"],
        &["fano"],
        &["fano", "--format", "json"],
        &["fano", "--q", "3", "--format", "json"],
        &["octonion-table", "--format", "json"],
        &["octonion-table", "--coding", "doubling"],
        &["octonion-table", "--format", "dot"],
        &["identity", "--n", "2"],
        &["identity", "--n", "4", "--format", "json"],
        &["identity", "--n", "8", "--coding", "classic"],
        &["probe", "--level", "2", "--law", "commutative"],
        &["probe", "--level", "4", "--law", "alternative", "--trials", "16", "--seed", "7", "--format", "json"],
        &["sweep", "--orientations", "--format", "json"],
    ];
    let mut count = 0usize;
    for args in corpus {
        let first = run_self(&exe, args, None)?;
        let second = run_self(&exe, args, None)?;
        if first != second {
            return Err(format!("output differs across runs for: {}", args.join(" ")).into());
        }
        count += 1;
    }
    // validate reads stdin: feed it the classic table both times.
    let table = MultTable::classic().to_json()?;
    let first = run_self(&exe, &["validate", "--format", "json"], Some(&table))?;
    let second = run_self(&exe, &["validate", "--format", "json"], Some(&table))?;
    if first != second {
        return Err("output differs across runs for: validate".into());
    }
    count += 1;
    Ok(count)
}

fn run_self(
    exe: &std::path::Path,
    args: &[&str],
    stdin: Option<&str>,
) -> Result<(Vec<u8>, Option<i32>), Box<dyn Error>> {
    use std::process::{Command as Process, Stdio};
    let mut child = Process::new(exe)
        .args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()?;
    if let Some(text) = stdin {
        use std::io::Write;
        child
            .stdin
            .take()
            .expect("stdin was piped")
            .write_all(text.as_bytes())?;
    }
    let output = child.wait_with_output()?;
    Ok((output.stdout, output.status.code()))
}
