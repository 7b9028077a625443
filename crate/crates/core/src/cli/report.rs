use serde::Serialize;

use crate::planner::{PenaltyMode, PlanResult, PlannerConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsoParams {
    pub particles: usize,
    pub iterations: usize,
    pub waypoints: usize,
    pub omega_max: f64,
    pub omega_min: f64,
    pub c1: f64,
    pub c2: f64,
    pub v_max: f64,
    pub v_min: f64,
    pub strict_segments: bool,
    pub penalty_mode: PenaltyMode,
}

impl From<&PlannerConfig> for PsoParams {
    fn from(c: &PlannerConfig) -> Self {
        Self {
            particles: c.pso.swarm_size,
            iterations: c.pso.max_iterations,
            waypoints: c.waypoints,
            omega_max: c.pso.omega_max,
            omega_min: c.pso.omega_min,
            c1: c.pso.c1,
            c2: c.pso.c2,
            v_max: c.pso.v_max,
            v_min: c.pso.v_min,
            strict_segments: c.strict_segments,
            penalty_mode: c.penalty_mode,
        }
    }
}

/// Summary of one planning run. Wall-clock time is kept out of the JSON
/// form so that identical runs serialize identically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub environment: String,
    pub seed: u64,
    pub pso: PsoParams,
    pub feasible: bool,
    pub path_length: f64,
    pub whole_path_objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_ratio: Option<f64>,
    #[serde(skip)]
    pub wall_clock_ms: f64,
    pub iterations_per_waypoint: Vec<usize>,
}

impl RunReport {
    pub fn new(
        environment: &str,
        config: &PlannerConfig,
        result: &PlanResult,
        oracle_length: Option<f64>,
        wall_clock_ms: f64,
    ) -> Self {
        Self {
            environment: environment.to_string(),
            seed: result.seed,
            pso: config.into(),
            feasible: result.feasible,
            path_length: result.total_length,
            whole_path_objective: result.whole_path_objective,
            oracle_length,
            length_ratio: oracle_length.map(|o| result.total_length / o),
            wall_clock_ms,
            iterations_per_waypoint: result.iterations_per_waypoint.clone(),
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "environment={} seed={} feasible={} length={:.6}",
            self.environment, self.seed, self.feasible, self.path_length
        );
        if let (Some(o), Some(r)) = (self.oracle_length, self.length_ratio) {
            s.push_str(&format!(" oracle={o:.6} ratio={r:.6}"));
        }
        s.push_str(&format!(" time_ms={:.1}", self.wall_clock_ms));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAggregate {
    pub runs: usize,
    pub feasible_runs: usize,
    pub success_rate: f64,
    /// Length statistics over feasible runs.
    pub min_length: Option<f64>,
    pub mean_length: Option<f64>,
    pub max_length: Option<f64>,
    #[serde(skip)]
    pub mean_runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub runs: Vec<RunReport>,
    pub aggregate: SweepAggregate,
}

impl SweepReport {
    pub fn new(runs: Vec<RunReport>) -> Self {
        let lengths: Vec<f64> = runs.iter().filter(|r| r.feasible).map(|r| r.path_length).collect();
        let n = runs.len();
        let aggregate = SweepAggregate {
            runs: n,
            feasible_runs: lengths.len(),
            success_rate: if n == 0 { 0.0 } else { lengths.len() as f64 / n as f64 },
            min_length: lengths.iter().copied().reduce(f64::min),
            mean_length: (!lengths.is_empty()).then(|| lengths.iter().sum::<f64>() / lengths.len() as f64),
            max_length: lengths.iter().copied().reduce(f64::max),
            mean_runtime_ms: if n == 0 { 0.0 } else { runs.iter().map(|r| r.wall_clock_ms).sum::<f64>() / n as f64 },
        };
        Self { runs, aggregate }
    }

    pub fn summary(&self) -> String {
        let a = &self.aggregate;
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
        format!(
            "runs={} feasible={} success_rate={:.3} min_length={} mean_length={} max_length={} mean_time_ms={:.1}",
            a.runs,
            a.feasible_runs,
            a.success_rate,
            fmt(a.min_length),
            fmt(a.mean_length),
            fmt(a.max_length),
            a.mean_runtime_ms
        )
    }
}
