//! Command-line front end: `analyze` runs the full pipeline on one input,
//! `check-cover` tests the spanning-subgraph necessary condition for a
//! polynomial set, `verify-an` replays the family claims.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 negative cover
//! verdict, 4 failed verification claims or exhausted resource caps.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cone::ConeModel;
use crate::error::Error;
use crate::family_an::{verify_an, VerifyOptions};
use crate::input::{parse_input_file, parse_polys_file};
use crate::poly::check_cover;
use crate::report::{
    analysis_summary, build_report, cover_summary, to_json_pretty, verify_table, ReportOptions,
};
use crate::sigma_graph::{build_graph, to_dot};
use crate::stanley_reisner::minimal_nonfaces;

#[derive(Parser, Debug)]
#[command(
    name = "arank",
    version,
    about = "Exact lower bounds for the arithmetical rank of lattice ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CommonFlags {
    /// Cap the number of worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full pipeline on a JSON input file and report the bounds.
    Analyze {
        input: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the graph in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Include the touched face lattice in the report.
        #[arg(long)]
        faces: bool,
        /// Skip exact clique cover for components above this many vertices.
        #[arg(long, default_value_t = 25)]
        max_clique_vertices: usize,
        /// Skip certificates; counts and bounds only.
        #[arg(long)]
        counts_only: bool,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Test whether a polynomial set touches every minimal non-face.
    CheckCover {
        input: PathBuf,
        polys: PathBuf,
        /// Write the JSON cover report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Recompute the family claims for a given n and compare.
    VerifyAn {
        n: usize,
        /// Write the JSON claim table here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Counts and bounds only; skip cover checks and certificates.
        #[arg(long)]
        counts_only: bool,
        /// Also check the fifth-power membership with a Groebner basis.
        #[arg(long)]
        groebner: bool,
        /// Also check every touched face against the two face patterns.
        #[arg(long)]
        faces: bool,
        /// Skip exact clique cover for components above this many vertices.
        #[arg(long, default_value_t = 25)]
        max_clique_vertices: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn init_threads(common: &CommonFlags) {
    if let Some(k) = common.threads {
        // ignore failure when a pool already exists (tests, repeat calls)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) | Error::ComponentTooLarge { .. } => 4,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Analyze {
            input,
            out,
            dot,
            faces,
            max_clique_vertices,
            counts_only,
            common,
        } => {
            init_threads(&common);
            cmd_analyze(
                &input,
                out.as_deref(),
                dot.as_deref(),
                &ReportOptions {
                    max_clique_vertices,
                    counts_only,
                    include_faces: faces,
                },
            )
        }
        Command::CheckCover {
            input,
            polys,
            out,
            common,
        } => {
            init_threads(&common);
            cmd_check_cover(&input, &polys, out.as_deref())
        }
        Command::VerifyAn {
            n,
            out,
            counts_only,
            groebner,
            faces,
            max_clique_vertices,
            common,
        } => {
            init_threads(&common);
            cmd_verify_an(
                n,
                out.as_deref(),
                &VerifyOptions {
                    counts_only,
                    groebner,
                    faces,
                    max_clique_vertices,
                },
            )
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_analyze(
    input_path: &Path,
    out: Option<&Path>,
    dot: Option<&Path>,
    opts: &ReportOptions,
) -> Result<i32, Error> {
    let input = parse_input_file(input_path)?;
    let cone = ConeModel::new(input.config.clone())?;
    let (gens, face_lattice) = minimal_nonfaces(&cone);
    let graph = build_graph(&cone, &gens);
    let report = build_report(&input, &cone, &gens, &face_lattice, &graph, opts)?;
    if let Some(path) = out {
        write_file(path, &to_json_pretty(&report))?;
    }
    if let Some(path) = dot {
        write_file(path, &to_dot(&graph))?;
    }
    print!("{}", analysis_summary(&report));
    Ok(0)
}

fn cmd_check_cover(
    input_path: &Path,
    polys_path: &Path,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let input = parse_input_file(input_path)?;
    let (variables, polys) = parse_polys_file(polys_path)?;
    if variables != input.config.len() {
        return Err(Error::Parse(format!(
            "polynomials use {variables} variables but the input has {}",
            input.config.len()
        )));
    }
    let cone = ConeModel::new(input.config.clone())?;
    let (gens, _) = minimal_nonfaces(&cone);
    let graph = build_graph(&cone, &gens);
    let report = check_cover(&polys, &cone, &gens, &graph);
    if let Some(path) = out {
        write_file(path, &to_json_pretty(&report))?;
    }
    print!("{}", cover_summary(&report, &gens));
    Ok(if report.spanning { 0 } else { 3 })
}

fn cmd_verify_an(n: usize, out: Option<&Path>, opts: &VerifyOptions) -> Result<i32, Error> {
    let report = verify_an(n, opts)?;
    if let Some(path) = out {
        write_file(path, &to_json_pretty(&report))?;
    }
    print!("{}", verify_table(&report));
    Ok(if report.all_pass { 0 } else { 4 })
}
