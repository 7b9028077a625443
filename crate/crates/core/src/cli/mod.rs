//! Command-line front end.
//!
//! Exit codes: 0 when every planned path is feasible, 2 when a run comes back
//! infeasible, 1 on usage or I/O errors.

mod output;
mod report;

pub use output::{path_from_csv, path_to_csv, render_svg};
pub use report::{PsoParams, RunReport, SweepAggregate, SweepReport};

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::envio::{bundled_environment, load_environment_file};
use crate::oracle;
use crate::planner::{plan, AxisChoice, PenaltyMode, PlanResult, PlannerConfig, Workspace};
use crate::pso::PsoConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pso-planner", version, about = "Particle swarm path planning among convex obstacles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan one path and write its artifacts.
    Plan(PlanCmd),
    /// Plan over consecutive seeds and aggregate the results.
    Sweep(SweepCmd),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Environment JSON file.
    #[arg(long, value_name = "PATH")]
    pub env: Option<PathBuf>,
    /// Bundled environment 1-4.
    #[arg(long, value_name = "ID")]
    pub bundled: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PenaltyArg {
    Soft,
    Hard,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AxisArg {
    Dominant,
    X,
    Y,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Swarm size.
    #[arg(long, default_value_t = 500)]
    pub particles: usize,
    /// Maximum iterations per waypoint.
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// Number of interior waypoints.
    #[arg(long, default_value_t = 100)]
    pub waypoints: usize,
    #[arg(long, default_value_t = 0.9)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 0.4)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c2: f64,
    #[arg(long, default_value_t = 200.0)]
    pub vmax: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub vmin: f64,
    /// Require collision-free segments between waypoints.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    pub strict_segments: bool,
    #[arg(long, value_enum, default_value_t = PenaltyArg::Soft)]
    pub penalty_mode: PenaltyArg,
    /// Grid sweep axis.
    #[arg(long, value_enum, default_value_t = AxisArg::Dominant)]
    pub axis: AxisArg,
    /// Also solve the visibility-graph shortest path and report the ratio.
    #[arg(long)]
    pub compare_oracle: bool,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

impl CommonArgs {
    pub fn planner_config(&self, seed: u64) -> PlannerConfig {
        PlannerConfig {
            waypoints: self.waypoints,
            strict_segments: self.strict_segments,
            penalty_mode: match self.penalty_mode {
                PenaltyArg::Soft => PenaltyMode::Soft,
                PenaltyArg::Hard => PenaltyMode::Hard,
            },
            axis: match self.axis {
                AxisArg::Dominant => AxisChoice::Dominant,
                AxisArg::X => AxisChoice::X,
                AxisArg::Y => AxisChoice::Y,
            },
            pso: PsoConfig {
                swarm_size: self.particles,
                max_iterations: self.iterations,
                omega_max: self.omega_max,
                omega_min: self.omega_min,
                c1: self.c1,
                c2: self.c2,
                v_max: self.vmax,
                v_min: self.vmin,
                rng_seed: seed,
                ..PsoConfig::default()
            },
        }
    }

    fn load(&self) -> Result<(String, Workspace), String> {
        match (&self.source.env, self.source.bundled) {
            (Some(path), _) => load_environment_file(path)
                .map(|ws| (path.display().to_string(), ws))
                .map_err(|e| e.to_string()),
            (None, Some(id)) => bundled_environment(id).map(|ws| (format!("bundled:{id}"), ws)).map_err(|e| e.to_string()),
            (None, None) => Err("one of --env or --bundled is required".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct PlanCmd {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Write the path as `x,y` CSV.
    #[arg(long, value_name = "CSV")]
    pub out: Option<PathBuf>,
    /// Write an SVG drawing.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of seeds, counting up from --seed.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Plan(cmd) => run_plan(cmd),
        Command::Sweep(cmd) => run_sweep(cmd),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

struct Planned {
    report: RunReport,
    result: PlanResult,
}

fn plan_once(name: &str, ws: &Workspace, common: &CommonArgs, seed: u64, oracle_length: Option<f64>) -> Result<Planned, String> {
    let config = common.planner_config(seed);
    let t0 = Instant::now();
    let result = plan(ws, &config).map_err(|e| e.to_string())?;
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    let report = RunReport::new(name, &config, &result, oracle_length, ms);
    Ok(Planned { report, result })
}

fn solve_oracle(ws: &Workspace) -> Option<oracle::OraclePath> {
    match oracle::shortest_path(ws) {
        Ok(p) => Some(p),
        Err(e) => {
            eprintln!("warning: oracle: {e}");
            None
        }
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn run_plan(cmd: &PlanCmd) -> Result<i32, String> {
    let common = &cmd.common;
    let (name, ws) = common.load()?;
    let reference = common.compare_oracle.then(|| solve_oracle(&ws)).flatten();
    let planned = plan_once(&name, &ws, common, common.seed, reference.as_ref().map(|r| r.length))?;
    println!("{}", planned.report.summary());

    if let Some(path) = &cmd.out {
        write_file(path, &path_to_csv(&planned.result.path))?;
    }
    if let Some(path) = &cmd.svg {
        let refpts = reference.as_ref().map(|r| r.points.as_slice());
        write_file(path, &render_svg(&ws, &planned.result.path, refpts))?;
    }
    if let Some(path) = &common.json {
        write_file(path, &to_json(&planned.report))?;
    }
    Ok(if planned.report.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn run_sweep(cmd: &SweepCmd) -> Result<i32, String> {
    let common = &cmd.common;
    let (name, ws) = common.load()?;
    let oracle_length = common.compare_oracle.then(|| solve_oracle(&ws)).flatten().map(|r| r.length);
    let runs = (0..cmd.seeds)
        .map(|k| {
            let planned = plan_once(&name, &ws, common, common.seed.wrapping_add(k), oracle_length)?;
            println!("{}", planned.report.summary());
            Ok(planned.report)
        })
        .collect::<Result<Vec<_>, String>>()?;
    let report = SweepReport::new(runs);
    println!("{}", report.summary());
    if let Some(path) = &common.json {
        write_file(path, &to_json(&report))?;
    }
    let all_feasible = report.aggregate.feasible_runs == report.aggregate.runs;
    Ok(if all_feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_planner_config() {
        let cli = Cli::try_parse_from(["pso-planner", "plan", "--bundled", "1"]).unwrap();
        let Command::Plan(cmd) = cli.command else { panic!() };
        let cfg = cmd.common.planner_config(0);
        assert_eq!(cfg.pso.swarm_size, 500);
        assert_eq!(cfg.pso.max_iterations, 100);
        assert_eq!(cfg.pso.omega_max, 0.9);
        assert_eq!(cfg.pso.omega_min, 0.4);
        assert_eq!(cfg.pso.c1, 2.0);
        assert_eq!(cfg.pso.c2, 2.0);
        assert_eq!(cfg.pso.v_max, 200.0);
        assert_eq!(cfg.pso.v_min, 0.0);
        assert_eq!(cfg.waypoints, 100);
        assert!(cfg.strict_segments);
        assert_eq!(cfg.penalty_mode, PenaltyMode::Soft);
        assert_eq!(cfg, PlannerConfig::default());
    }

    #[test]
    fn flags_override() {
        let cli = Cli::try_parse_from([
            "pso-planner", "sweep", "--env", "x.json", "--seeds", "3", "--strict-segments", "false",
            "--penalty-mode", "hard", "--axis", "x", "--c1", "1.5", "--vmin", "-1",
        ])
        .unwrap();
        let Command::Sweep(cmd) = cli.command else { panic!() };
        assert_eq!(cmd.seeds, 3);
        let cfg = cmd.common.planner_config(9);
        assert!(!cfg.strict_segments);
        assert_eq!(cfg.penalty_mode, PenaltyMode::Hard);
        assert_eq!(cfg.axis, AxisChoice::X);
        assert_eq!(cfg.pso.c1, 1.5);
        assert_eq!(cfg.pso.v_min, -1.0);
        assert_eq!(cfg.pso.rng_seed, 9);
    }

    #[test]
    fn source_is_exclusive_and_required() {
        assert!(Cli::try_parse_from(["pso-planner", "plan"]).is_err());
        assert!(Cli::try_parse_from(["pso-planner", "plan", "--env", "a", "--bundled", "1"]).is_err());
        assert!(Cli::try_parse_from(["pso-planner", "sweep", "--bundled", "1", "--seeds", "0"]).is_err());
    }
}
