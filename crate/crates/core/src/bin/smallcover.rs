use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde::Serialize;

use smallcover::charmap::{self, preset, Preset};
use smallcover::chromatic::chromatic_number;
use smallcover::generators::{dual_cyclic, product, segment};
use smallcover::io::{load_charmap, load_polytope, to_canonical_json, write_json};
use smallcover::reproduce::{reproduce_with, Target};
use smallcover::resolution::{resolve, DEFAULT_BUDGET};
use smallcover::Polytope;

/// Exit code for findings: bad faces, bounds-only answers, lift failures,
/// failed reproduction checks.
const FINDING: u8 = 2;

#[derive(Parser)]
#[command(name = "smallcover", version, about = "Simple polytopes with characteristic maps over Z_2^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a polytope.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Decorate a polytope's facets with a preset characteristic map.
    Decorate {
        polytope: PathBuf,
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// List bad faces; exits 2 if there are any.
    Check {
        polytope: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Truncate bad faces until the map is non-singular.
    Resolve {
        polytope: PathBuf,
        map: PathBuf,
        /// Output polytope and map files.
        #[arg(short = 'o', long, num_args = 2, value_names = ["POLY", "MAP"], required = true)]
        output: Vec<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print the f-vector and Euler check.
    Fvector {
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact chromatic number of the facets; exits 2 if only bounds were found.
    Chromatic {
        polytope: PathBuf,
        #[arg(long)]
        hint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Search time limit in seconds.
        #[arg(long, default_value_t = 10)]
        time_budget: u64,
    },
    /// Integer determinants of the 0/1 lift; exits 2 if some |det| != 1.
    LiftCheck {
        polytope: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run one of the built-in constructions end to end.
    Reproduce {
        #[arg(value_parser = parse_target)]
        target: Target,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the summary JSON here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Directory for the final polytope, map and trace.
        #[arg(long)]
        artifacts: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Dual of the cyclic polytope C^N(M).
    DualCyclic {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        facets: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Product of two polytopes.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// The segment.
    Segment {
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: smallcover::Error| e.to_string())
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: smallcover::Error| e.to_string())
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => write_json(path, value)?,
        None => std::io::stdout().write_all(to_canonical_json(value).as_bytes())?,
    }
    Ok(())
}

fn face_label(p: &Polytope, face: &[usize]) -> String {
    face.iter().map(|&i| p.label(i)).join("∩")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { what } => {
            let (p, output) = match what {
                Gen::DualCyclic {
                    dim,
                    facets,
                    output,
                } => (dual_cyclic(dim, facets)?, output),
                Gen::Product { a, b, output } => {
                    (product(&load_polytope(&a)?, &load_polytope(&b)?)?, output)
                }
                Gen::Segment { output } => (segment(), output),
            };
            emit(&p, output.as_deref())?;
            Ok(0)
        }
        Command::Decorate {
            polytope,
            preset: name,
            output,
        } => {
            let p = load_polytope(&polytope)?;
            let l = preset(name, p.dim(), p.facet_count())?;
            emit(&l, output.as_deref())?;
            Ok(0)
        }
        Command::Check {
            polytope,
            map,
            format,
        } => {
            let p = load_polytope(&polytope)?;
            let l = load_charmap(&map)?;
            let bad = charmap::bad_faces(&p, &l)?;
            match format {
                Format::Json => emit(&bad, None)?,
                Format::Table => {
                    println!("{:<6} {:<28} witness vertex", "size", "face");
                    for b in &bad {
                        println!(
                            "{:<6} {:<28} {}",
                            b.circuit_size,
                            face_label(&p, &b.face),
                            face_label(&p, &b.witness_vertex)
                        );
                    }
                    println!("{} bad faces", bad.len());
                }
            }
            Ok(if bad.is_empty() { 0 } else { FINDING })
        }
        Command::Resolve {
            polytope,
            map,
            output,
            trace,
            budget,
        } => {
            let p = load_polytope(&polytope)?;
            let l = load_charmap(&map)?;
            let report = resolve(&p, &l, budget)?;
            write_json(&output[0], &report.final_polytope)?;
            write_json(&output[1], &report.final_map)?;
            if let Some(trace) = trace {
                write_json(&trace, &report)?;
            }
            eprintln!(
                "{:?}: {} initial bad faces, {} steps, {} facets, {} vertices",
                report.terminated,
                report.initial_bad_count,
                report.steps.len(),
                report.final_polytope.facet_count(),
                report.final_polytope.vertices().len()
            );
            Ok(if report.succeeded() { 0 } else { FINDING })
        }
        Command::Fvector { polytope, format } => {
            let p = load_polytope(&polytope)?;
            let f = p.f_vector();
            let sum = p.euler_sum();
            let expected = smallcover::polytope::expected_euler_sum(p.dim());
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        f_vector: Vec<usize>,
                        euler_sum: i64,
                        euler_expected: i64,
                    }
                    emit(
                        &Out {
                            f_vector: f,
                            euler_sum: sum,
                            euler_expected: expected,
                        },
                        None,
                    )?;
                }
                Format::Table => {
                    println!("f = [{}]", f.iter().join(", "));
                    println!("euler sum {sum} (expected {expected})");
                }
            }
            Ok(0)
        }
        Command::Chromatic {
            polytope,
            hint,
            format,
            time_budget,
        } => {
            let p = load_polytope(&polytope)?;
            let hint = hint.as_deref().map(load_charmap).transpose()?;
            let cert = chromatic_number(&p, hint.as_ref(), Duration::from_secs(time_budget))?;
            match format {
                Format::Json => emit(&cert, None)?,
                Format::Table => {
                    println!(
                        "chi = {} ({})",
                        cert.chi,
                        if cert.is_exact() { "exact" } else { "bounds only" }
                    );
                    println!("clique = [{}]", cert.clique.iter().join(", "));
                    println!("coloring = [{}]", cert.coloring.iter().join(", "));
                }
            }
            Ok(if cert.is_exact() { 0 } else { FINDING })
        }
        Command::LiftCheck {
            polytope,
            map,
            format,
        } => {
            let p = load_polytope(&polytope)?;
            let l = load_charmap(&map)?;
            let report = charmap::lift_determinant_report(&p, &l)?;
            match format {
                Format::Json => emit(&report, None)?,
                Format::Table => {
                    for d in &report.failures {
                        println!("{}  det = {}", face_label(&p, &d.vertex), d.determinant);
                    }
                    println!(
                        "{} vertices, {} with |det| != 1, all odd: {}",
                        report.determinants.len(),
                        report.failures.len(),
                        report.all_odd
                    );
                }
            }
            Ok(if report.failures.is_empty() { 0 } else { FINDING })
        }
        Command::Reproduce {
            target,
            format,
            output,
            artifacts,
            budget,
        } => {
            let r = reproduce_with(target, budget, smallcover::chromatic::DEFAULT_TIME_BUDGET)?;
            match format {
                Format::Json => emit(&r.summary, None)?,
                Format::Table => print!("{}", r.summary),
            }
            if let Some(path) = output {
                write_json(&path, &r.summary)?;
            }
            if let Some(dir) = artifacts {
                std::fs::create_dir_all(&dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
                let name = target.name();
                write_json(&dir.join(format!("{name}-polytope.json")), &r.report.final_polytope)?;
                write_json(&dir.join(format!("{name}-map.json")), &r.report.final_map)?;
                write_json(&dir.join(format!("{name}-trace.json")), &r.report)?;
            }
            Ok(if r.summary.all_passed() { 0 } else { FINDING })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
