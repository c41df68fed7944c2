//! The `cubespec` command line: exact tiling and spectral checks for
//! unit-cube translate systems, all I/O in the cubeset JSON format.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use cubespec_core::analysis::has_face_twin;
use cubespec_core::cover::enumerate_tilings;
use cubespec_core::tiling::check_tiling;
use cubespec_core::transforms::{integerize_steps, slide, LineOrder, SlideSpec};
use cubespec_core::{Rational, TranslateSet, Window};
use cubespec::cross::{cross_check_many, CrossCheckResult};
use cubespec::format::{parse_samples, read_set, read_sets, to_json, write_set};
use cubespec::gen::{gen_lattice, gen_random_slides, gen_shifted_columns};
use cubespec::report::{
    completeness_csv_row, completeness_line, spectrum_line, tiling_line, violation_lines,
    COMPLETENESS_CSV_HEADER,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact checks, transformations and enumeration for unit-cube translate
/// systems (tilings of space by unit cubes and spectra of the unit cube).
#[derive(Parser)]
#[command(name = "cubespec", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide exactly whether a periodic set tiles; prints TILES or a
    /// witness cell.
    CheckTiling {
        /// Cubeset file.
        file: PathBuf,
    },
    /// List all orthogonality violations among window translates.
    CheckOrthogonal {
        /// Cubeset file.
        file: PathBuf,
        /// Scan the centered radius-N window instead of the set's own
        /// verification window.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Evaluate completeness partial sums at sample points and report a
    /// spectrum verdict.
    Spectrum {
        /// Cubeset file.
        file: PathBuf,
        /// Window cutoff N for the partial sums.
        #[arg(long, default_value_t = 100)]
        n: u32,
        /// Tolerance for the complete-within verdict.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// JSON samples file (array of points as rational strings);
        /// defaults to the fixed sample grid.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Also write per-sample rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the tiling and spectrum oracles on every set and require the
    /// verdicts to agree; disagreement exits with code 2.
    CrossCheck {
        /// Cubeset files (each one document or a JSONL stream).
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Window cutoff N for the spectral side.
        #[arg(long, default_value_t = 100)]
        n: u32,
        /// Tolerance for the complete-within verdict.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Also write all per-sample completeness rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Apply one sliding map: translates whose axis coordinate differs
    /// from the anchor by an integer stay, all others move by the shift.
    Slide {
        /// Cubeset file.
        file: PathBuf,
        /// Axis to slide along, 1-based.
        #[arg(long)]
        axis: usize,
        /// Anchor a (rational); the class with coordinate - a integral
        /// stays put.
        #[arg(long)]
        anchor: String,
        /// Shift b (rational) applied to every other class.
        #[arg(long)]
        shift: String,
        /// Write the image here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slide an orthogonal set until every translate in the radius-N
    /// window has integer coordinates.
    Integerize {
        /// Cubeset file.
        file: PathBuf,
        /// Window radius N.
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Emit one cubeset per intermediate step (JSONL) before the
        /// final set.
        #[arg(long)]
        trace: bool,
        /// Write the final set here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all tilings with the given period and offset denominator,
    /// streamed as cubeset JSONL.
    Enumerate {
        #[arg(long)]
        dim: usize,
        /// Comma-separated period entries, e.g. 2,2.
        #[arg(long)]
        period: String,
        /// Offset denominator q: offsets range over the (1/q)-grid.
        #[arg(long)]
        den: u64,
        /// Emit one tiling per translation class instead of all tilings.
        #[arg(long)]
        dedup: bool,
    },
    /// Emit a generated set as a cubeset document.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Report a face twin (two translates sharing a whole cube face), if
    /// any exists.
    Twins {
        /// Cubeset file.
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// The integer lattice Z^d.
    Lattice {
        #[arg(long)]
        dim: usize,
    },
    /// Integer columns with per-column shifts along one axis.
    Columns {
        #[arg(long)]
        dim: usize,
        /// Comma-separated rational shifts, one per column.
        #[arg(long)]
        shifts: String,
        /// Axis the shifts act on, 1-based (must not be axis 1, the
        /// column axis).
        #[arg(long, default_value_t = 2)]
        axis: usize,
    },
    /// Z^d after a seeded sequence of random sliding maps.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::CheckTiling { file } => {
            let set = read_set(&file)?;
            let verdict = check_tiling(&set)?;
            println!("{}", tiling_line(&verdict));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckOrthogonal { file, window } => {
            let set = read_set(&file)?;
            let w = match window {
                Some(n) => Window::radius(set.dim(), n),
                None => set.verification_window(),
            };
            let report = cubespec_core::analysis::check_orthogonality(&set, &w)?;
            for line in violation_lines(&report) {
                println!("{line}");
            }
            if report.is_clean() {
                println!("clean");
            } else {
                println!("violations: {}", report.pairs.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Spectrum {
            file,
            n,
            eps,
            samples,
            csv,
        } => {
            let set = read_set(&file)?;
            let samples = match samples {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    parse_samples(&text, set.dim())?
                }
                None => {
                    let tiling = check_tiling(&set)?;
                    cubespec::cross::default_samples(set.dim(), &tiling)
                }
            };
            let outcome = cubespec_core::analysis::spectrum_verdict(&set, &samples, n, eps)?;
            for report in &outcome.reports {
                println!("{}", completeness_line(report));
            }
            println!("{}", spectrum_line(&outcome.verdict));
            if let Some(path) = csv {
                write_completeness_csv(&path, None, &outcome.reports)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CrossCheck { files, n, eps, csv } => {
            let mut inputs = Vec::new();
            for file in &files {
                let sets = read_sets(file)?;
                let single = sets.len() == 1;
                for (i, set) in sets.into_iter().enumerate() {
                    let id = if single {
                        file.display().to_string()
                    } else {
                        format!("{}:{}", file.display(), i + 1)
                    };
                    inputs.push((id, set));
                }
            }
            let results = cross_check_many(&inputs, n, eps);
            let mut all_agree = true;
            let mut rows: Vec<(String, Vec<_>)> = Vec::new();
            for result in results {
                let r = result?;
                print_cross_check(&r);
                all_agree &= r.agreement;
                rows.push((r.id.clone(), r.completeness));
            }
            if let Some(path) = csv {
                let mut text = format!("id,{COMPLETENESS_CSV_HEADER}\n");
                for (id, reports) in &rows {
                    for report in reports {
                        text.push_str(&format!("{id},{}\n", completeness_csv_row(report)));
                    }
                }
                fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if all_agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::Slide {
            file,
            axis,
            anchor,
            shift,
            out,
        } => {
            let set = read_set(&file)?;
            let spec = SlideSpec {
                axis: to_internal_axis(axis, set.dim())?,
                anchor: parse_rational(&anchor)?,
                shift: parse_rational(&shift)?,
            };
            let image = slide(&set, &spec)?;
            emit_set(out.as_deref(), &image)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Integerize {
            file,
            n,
            trace,
            out,
        } => {
            let set = read_set(&file)?;
            let (image, steps) = integerize_steps(&set, n, LineOrder::Ascending)?;
            if trace {
                let mut current = set;
                for step in &steps {
                    current = slide(&current, &step.spec)?;
                    println!("{}", to_json(&current));
                }
            }
            emit_set(out.as_deref(), &image)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enumerate {
            dim,
            period,
            den,
            dedup,
        } => {
            let period = parse_period(&period)?;
            for set in enumerate_tilings(dim, &period, den, dedup)? {
                println!("{}", to_json(&set));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { what } => {
            let set = match what {
                GenCmd::Lattice { dim } => {
                    anyhow::ensure!(dim >= 1, "dimension must be positive");
                    gen_lattice(dim)
                }
                GenCmd::Columns { dim, shifts, axis } => {
                    let shifts = shifts
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    gen_shifted_columns(dim, &shifts, to_internal_axis(axis, dim)?)?
                }
                GenCmd::Random { dim, steps, seed } => {
                    anyhow::ensure!(dim >= 1, "dimension must be positive");
                    gen_random_slides(seed, dim, steps)
                }
            };
            println!("{}", to_json(&set));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Twins { file } => {
            let set = read_set(&file)?;
            match has_face_twin(&set) {
                Some((t, u)) => println!("twin: {t} | {u}"),
                None => println!("none"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_cross_check(r: &CrossCheckResult) {
    println!(
        "{}: agreement={} tiling={} spectrum={}",
        r.id,
        r.agreement,
        tiling_line(&r.tiling),
        spectrum_line(&r.spectrum)
    );
    if !r.agreement {
        for line in violation_lines(&r.violations) {
            println!("  {line}");
        }
        for report in &r.completeness {
            println!("  {}", completeness_line(report));
        }
    }
}

fn write_completeness_csv(
    path: &Path,
    id: Option<&str>,
    reports: &[cubespec_core::analysis::CompletenessReport],
) -> Result<()> {
    let mut text = String::new();
    match id {
        Some(_) => text.push_str(&format!("id,{COMPLETENESS_CSV_HEADER}\n")),
        None => text.push_str(&format!("{COMPLETENESS_CSV_HEADER}\n")),
    }
    for report in reports {
        match id {
            Some(id) => text.push_str(&format!("{id},{}\n", completeness_csv_row(report))),
            None => text.push_str(&format!("{}\n", completeness_csv_row(report))),
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit_set(out: Option<&Path>, set: &TranslateSet) -> Result<()> {
    match out {
        Some(path) => write_set(path, set),
        None => {
            println!("{}", to_json(set));
            Ok(())
        }
    }
}

fn parse_rational(s: impl AsRef<str>) -> Result<Rational> {
    let s = s.as_ref().trim();
    s.parse::<Rational>()
        .map_err(|e| anyhow::anyhow!("bad rational {s:?}: {e}"))
}

fn parse_period(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .with_context(|| format!("bad period entry {part:?}"))
        })
        .collect()
}

/// CLI axes are 1-based (the mathematical convention x_1, ..., x_d);
/// internal axes are 0-based.
fn to_internal_axis(axis: usize, dim: usize) -> Result<usize> {
    if axis == 0 || axis > dim {
        bail!("axis must be between 1 and {dim} (1-based)");
    }
    Ok(axis - 1)
}
