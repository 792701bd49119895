use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use nichols_gk::admissibility::{flourish, gkdim_space, Contributions};
use nichols_gk::diagram::dynkin;
use nichols_gk::frontend::{dynkin_to_dot, flourished_to_dot, parse_spaces, reports};
use nichols_gk::pbw::{check_convex, gr_gkdim, PBWPresentation, Relation};
use nichols_gk::realization::principal_realization;
use nichols_gk::scalar::FieldTag;
use nichols_gk::space::{braiding_matrix, natural_field, truncate, validate, BraidedSpaceSpec, Selector};
use nichols_gk::symmetrizer::{nichols_dims, SymmetrizerJob, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "nichols-gk", version, about = "GKdim of Nichols algebras of points and blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every space of a file; exits 1 when some space is
    /// inadmissible or of infinite GKdim.
    Classify {
        file: PathBuf,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Exact GKdim values for T3 connections.
        #[arg(long)]
        contributions: Option<PathBuf>,
        /// Only this space of the file.
        #[arg(long)]
        space: Option<String>,
    },
    /// Emit the flourished graph (or the Dynkin diagram) as DOT.
    Render {
        file: PathBuf,
        /// Output file (`-` for standard output).
        #[arg(long)]
        dot: PathBuf,
        /// Vertices shown of every infinite tail.
        #[arg(long, default_value_t = 4)]
        prefix: usize,
        /// Draw the generalized Dynkin diagram of a diagonal space instead.
        #[arg(long)]
        dynkin: bool,
        #[arg(long)]
        space: Option<String>,
    },
    /// Graded dimensions of the Nichols algebra of a finite (truncated) space.
    Dims {
        file: PathBuf,
        #[arg(long)]
        n_max: usize,
        /// RAT, CYCLO(N) or RATFUNC; by default the smallest field that fits.
        #[arg(long)]
        field: Option<String>,
        /// Truncation selector `NAME=N,...,*=N` for infinite spaces.
        #[arg(long)]
        truncate: Option<String>,
        /// Sum over all permutations instead of the recursive factorization.
        #[arg(long)]
        literal: bool,
        /// Largest number of tensor words per degree.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        space: Option<String>,
    },
    /// Check a PBW presentation for convexity and count its GKdim.
    PbwCheck { file: PathBuf },
    /// Principal realization of a finite (truncated) space, as JSON.
    Realize {
        file: PathBuf,
        #[arg(long)]
        truncate: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        space: Option<String>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
    }
}

fn load(file: &Path, space: Option<&str>) -> Result<Vec<BraidedSpaceSpec>> {
    let text = read(file)?;
    let specs = parse_spaces(&text).map_err(|e| anyhow!("{}:{e}", file.display()))?;
    match space {
        None => Ok(specs),
        Some(name) => {
            let one: Vec<_> = specs.into_iter().filter(|s| s.name == name).collect();
            if one.is_empty() {
                bail!("no space `{name}` in {}", file.display());
            }
            Ok(one)
        }
    }
}

fn load_one(file: &Path, space: Option<&str>) -> Result<BraidedSpaceSpec> {
    let mut specs = load(file, space)?;
    if specs.len() > 1 {
        bail!("{} declares {} spaces; pick one with --space", file.display(), specs.len());
    }
    Ok(specs.remove(0))
}

fn finite(spec: &BraidedSpaceSpec, selector: Option<&str>) -> Result<BraidedSpaceSpec> {
    match selector {
        Some(sel) => Ok(truncate(spec, &sel.parse::<Selector>()?)?),
        None if spec.is_finite() => Ok(spec.clone()),
        None => bail!("space `{}` is infinite; choose a finite part with --truncate", spec.name),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Classify {
            file,
            json,
            contributions,
            space,
        } => {
            let specs = load(&file, space.as_deref())?;
            let contrib = match &contributions {
                Some(p) => Contributions::parse(&read(p)?, &p.display().to_string())?,
                None => Contributions::default(),
            };
            let mut verdicts = Vec::new();
            for s in &specs {
                verdicts.push(gkdim_space(s, &contrib)?);
            }
            let mut code = 0;
            for v in &verdicts {
                let status = if v.is_admissible() { "admissible" } else { "inadmissible" };
                println!("space {}: {status}, GKdim {}", v.space, v.total);
                for c in &v.components {
                    println!("  {} {} [{}]: {}", c.kind, c.id, c.vertices.join(" "), c.gkdim);
                    for viol in &c.violations {
                        println!("    violation {viol}");
                    }
                    if let Some(note) = &c.note {
                        println!("    note: {note}");
                    }
                }
                if !v.is_admissible() || v.total.is_infinite() {
                    code = 1;
                }
            }
            if let Some(out) = json {
                write_out(&out, &reports(&verdicts))?;
            }
            Ok(code)
        }
        Command::Render {
            file,
            dot,
            prefix,
            dynkin: as_dynkin,
            space,
        } => {
            let spec = load_one(&file, space.as_deref())?;
            let text = if as_dynkin {
                dynkin_to_dot(&dynkin(&spec)?, prefix)
            } else {
                flourished_to_dot(&flourish(&validate(&spec)?), prefix)
            };
            write_out(&dot, &text)?;
            Ok(0)
        }
        Command::Dims {
            file,
            n_max,
            field,
            truncate,
            literal,
            budget,
            space,
        } => {
            let spec = finite(&load_one(&file, space.as_deref())?, truncate.as_deref())?;
            let tag = match field {
                Some(f) => f.parse::<FieldTag>().map_err(|e| anyhow!(e))?,
                None => natural_field(&spec)?,
            };
            let mut job = SymmetrizerJob::new(braiding_matrix(&spec, tag)?, n_max);
            if literal {
                job = job.literal();
            }
            job.budget = budget;
            let dims = nichols_dims(&job)?;
            let s: Vec<String> = dims.iter().map(usize::to_string).collect();
            println!("[{}]", s.join(", "));
            Ok(0)
        }
        Command::PbwCheck { file } => {
            let p: PBWPresentation = read(&file)?
                .parse()
                .map_err(|e| anyhow!("{}:{e}", file.display()))?;
            let report = check_convex(&p)?;
            println!("generators: {}", p.generators().join(" "));
            println!("convex: {}", report.is_convex());
            for v in &report.violations {
                let rel = match v.relation {
                    Relation::Straighten(i, j) => format!("straighten {} {}", p.generators()[i], p.generators()[j]),
                    Relation::Power(i) => format!("power {}", p.generators()[i]),
                };
                println!("  violation [{rel}] term {}: degree {} is not below {}", v.term + 1, v.degree, v.bound);
            }
            if report.is_convex() {
                match gr_gkdim(&p) {
                    Ok(d) => println!("gr_gkdim: {d}"),
                    Err(e) => println!("gr_gkdim: unavailable ({e})"),
                }
            }
            Ok(0)
        }
        Command::Realize {
            file,
            truncate,
            json,
            space,
        } => {
            let spec = finite(&load_one(&file, space.as_deref())?, truncate.as_deref())?;
            let r = principal_realization(&spec)?;
            write_out(json.as_deref().unwrap_or(Path::new("-")), &r.to_json())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
