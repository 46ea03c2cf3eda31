//! The `mnv` command line.
//!
//! Exit status: 0 success, 1 a check failed, 2 usage or input error, 3 an
//! exhaustive enumeration was refused by its cap.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::families::{FamilyError, SetFamily};
use crate::homology::reduced_betti;
use crate::io::{self, ParseError, FORMATS};
use crate::leray::{j_index, leray_number, LerayConfig, LerayError, DEFAULT_CAP};
use crate::nerve::{multinerve, nerve, reduced_multinerve};
use crate::poset::{barycentric_subdivision, SimplicialPoset};
use crate::verify::{
    archive_report, helly_number, random_family, record_candidate, verify_helly_bound, verify_multinerve_homology,
    verify_projection_bound, BoundReport, HellyMode, RandomSpec, VerifyError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mnv", about = "Nerves, multinerves, Leray numbers and Helly-type bounds", disable_version_flag = true)]
struct Cli {
    /// Print the tool version and supported formats.
    #[arg(long)]
    version: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
struct LerayArgs {
    /// Largest vertex count for exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Sample this many random vertex subsets instead (lower bound only).
    #[arg(long, conflicts_with = "cap")]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl LerayArgs {
    fn config(&self) -> LerayConfig {
        LerayConfig {
            cap: self.cap,
            sample: self.sample,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// A `family v1` file.
    family: PathBuf,
    /// Override d_Γ of the ambient space (reported as assumed).
    #[arg(long)]
    gamma_dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Betti numbers of a poset or complex (`betti v1`).
    Homology { input: PathBuf },
    /// Barycentric subdivision of a poset (`complex v1`).
    Sd { input: PathBuf },
    /// Leray number L (`leray v1`).
    Leray {
        input: PathBuf,
        #[command(flatten)]
        leray: LerayArgs,
    },
    /// J index (`leray v1`); with --candidates, posets with L < J are saved.
    JIndex {
        input: PathBuf,
        #[command(flatten)]
        leray: LerayArgs,
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    /// Nerve of a family (`complex v1`, vertices are member indices).
    Nerve {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Multinerve, or reduced multinerve with --t (labelled `poset v1`).
    Multinerve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Helly number of a family with empty intersection.
    Helly {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Checks acyclicity with slack s.
    CheckAcyclic {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
    /// Bound checks (`report v1`).
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Random family (`family v1`).
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Multinerve homology against the union, in dimensions >= s.
    Multinerve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// L(N) <= r J(M_red) + r - 1 and related inequalities.
    Projection {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        leray: LerayArgs,
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// h <= r (max(d_Γ, s, t) + 1) and h <= L(N) + 1.
    Helly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Prune the Helly search by the bound being checked.
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        leray: LerayArgs,
        #[arg(long)]
        archive: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Unions of open boxes.
    Box {
        #[arg(long, default_value_t = 4)]
        members: usize,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        boxes: usize,
        #[arg(long, default_value_t = 6)]
        extent: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unions of vertex stars (and optionally links) in a triangulated grid.
    Subcomplex {
        #[arg(long, default_value_t = 4)]
        members: usize,
        #[arg(long, default_value_t = 6)]
        grid: usize,
        #[arg(long, default_value_t = 2)]
        stars: usize,
        #[arg(long)]
        rings: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<LerayError> for Failure {
    fn from(e: LerayError) -> Self {
        Failure {
            code: EXIT_CAP,
            message: e.to_string(),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = if matches!(e, FamilyError::TooManyMembers { .. }) { EXIT_CAP } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Leray(l) => l.into(),
            VerifyError::Family(f) => f.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

/// Reads a `poset v1` or `complex v1` file as a poset.
fn load_poset(path: &Path) -> Result<SimplicialPoset, Failure> {
    let text = read(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.starts_with("complex") {
        io::parse_complex(&text).map(|k| k.to_poset()).map_err(|e| parse_failure(path, e))
    } else {
        io::parse_poset(&text).map_err(|e| parse_failure(path, e))
    }
}

fn load_family(args: &FamilyArgs) -> Result<SetFamily, Failure> {
    let text = read(&args.family)?;
    let f = io::parse_family(&text).map_err(|e| parse_failure(&args.family, e))?;
    match args.gamma_dim {
        Some(g) => Ok(f.with_gamma_dim(g)?),
        None => Ok(f),
    }
}

fn report_status(r: &BoundReport, archive: &Option<PathBuf>, f: &SetFamily) -> Result<(String, i32), Failure> {
    if let Some(dir) = archive {
        archive_report(dir, r, f).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    }
    let code = if r.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((r.to_report_v1(), code))
}

fn run(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Homology { input } => Ok((io::write_betti(&reduced_betti(&load_poset(&input)?)), EXIT_OK)),
        Command::Sd { input } => Ok((io::write_complex(&barycentric_subdivision(&load_poset(&input)?)), EXIT_OK)),
        Command::Leray { input, leray } => {
            let p = load_poset(&input)?;
            Ok((leray_number(&p, &leray.config())?.to_leray_v1(), EXIT_OK))
        }
        Command::JIndex { input, leray, candidates } => {
            let p = load_poset(&input)?;
            let cfg = leray.config();
            let j = j_index(&p, &cfg)?;
            let mut text = j.to_leray_v1();
            if let Some(dir) = candidates {
                let l = leray_number(&p, &cfg)?;
                if let Some(path) = record_candidate(&dir, &p, &l, &j).map_err(|e| Failure::usage(e.to_string()))? {
                    text.push_str(&format!("candidate = {}\n", path.display()));
                }
            }
            Ok((text, EXIT_OK))
        }
        Command::Nerve { family } => Ok((io::write_complex(&nerve(&load_family(&family)?)?), EXIT_OK)),
        Command::Multinerve { family, t } => {
            let f = load_family(&family)?;
            let m = match t {
                None => multinerve(&f)?,
                Some(0) => return Err(Failure::usage("--t must be at least 1")),
                Some(t) => reduced_multinerve(&f, t)?.0,
            };
            Ok((io::write_labeled_poset(&m), EXIT_OK))
        }
        Command::Helly { family } => {
            let f = load_family(&family)?;
            let h = helly_number(&f, HellyMode::Exhaustive)?;
            let w: Vec<String> = h.witness.iter().map(|m| m.to_string()).collect();
            Ok((format!("report v1\nkind = helly_number\nh = {}\nwitness.helly = {{{}}}\n", h.h, w.join(",")), EXIT_OK))
        }
        Command::CheckAcyclic { family, s } => {
            let f = load_family(&family)?;
            let a = f.is_acyclic_with_slack(s)?;
            let mut text = format!("report v1\nkind = acyclicity\ns = {s}\nmin_slack = {}\n", f.min_slack()?);
            let code = match &a.violation {
                None => {
                    text.push_str("CHECK slack_violations: 0 == 0 : PASS\nstatus = PASS\n");
                    EXIT_OK
                }
                Some((g, i)) => {
                    let g: Vec<String> = g.iter().map(|m| m.to_string()).collect();
                    text.push_str(&format!(
                        "CHECK slack_violations: 1 == 0 : FAIL\nwitness.violation = G={{{}}} i={i}\nstatus = FAIL\n",
                        g.join(",")
                    ));
                    EXIT_CHECK_FAILED
                }
            };
            Ok((text, code))
        }
        Command::Verify { which } => match which {
            VerifyCommand::Multinerve { family, s, archive } => {
                let f = load_family(&family)?;
                report_status(&verify_multinerve_homology(&f, s)?, &archive, &f)
            }
            VerifyCommand::Projection {
                family,
                t,
                s,
                leray,
                archive,
            } => {
                let f = load_family(&family)?;
                report_status(&verify_projection_bound(&f, t, s, &leray.config())?, &archive, &f)
            }
            VerifyCommand::Helly {
                family,
                s,
                t,
                fast,
                leray,
                archive,
            } => {
                let f = load_family(&family)?;
                let mode = if fast { HellyMode::Fast { bound: 0 } } else { HellyMode::Exhaustive };
                report_status(&verify_helly_bound(&f, s, t, mode, &leray.config())?, &archive, &f)
            }
        },
        Command::Gen { which } => {
            let (spec, seed) = match which {
                GenCommand::Box {
                    members,
                    dim,
                    boxes,
                    extent,
                    seed,
                } => (
                    RandomSpec::Boxes {
                        members,
                        dim,
                        boxes_per_member: boxes,
                        extent,
                    },
                    seed,
                ),
                GenCommand::Subcomplex {
                    members,
                    grid,
                    stars,
                    rings,
                    seed,
                } => (
                    RandomSpec::Subcomplex {
                        members,
                        grid,
                        stars_per_member: stars,
                        rings,
                    },
                    seed,
                ),
            };
            Ok((io::write_family(&random_family(&spec, seed)?), EXIT_OK))
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit status. Results go to `out` (or `--output`), diagnostics to `err`.
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    if cli.version {
        let _ = writeln!(out, "mnv {}\nformats: {}", env!("CARGO_PKG_VERSION"), FORMATS.join(", "));
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "error: a subcommand is required (see --help)");
        return EXIT_USAGE;
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| run(command)) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
