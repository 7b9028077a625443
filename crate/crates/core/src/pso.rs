//! Seedable global-best particle swarm optimizer with a linearly decreasing
//! inertia weight.
//!
//! Each iteration evaluates every particle at its current position, folds the
//! results into the personal and global bests in particle index order, then
//! moves the swarm:
//!
//! ```text
//! v <- w(it) v + c1 r1 (pbest - x) + c2 r2 (gbest - x)
//! x <- x + v
//! ```
//!
//! Velocity components are clamped to `[-v_max, v_max]` and positions are
//! saturated at the search domain bounds.
//!
//! Random draws come from a ChaCha8 stream in a fixed order: at
//! initialization, for each particle, all position components then all
//! velocity components; at each step, for each particle and each dimension,
//! `r1` then `r2`.

use std::ops::{Div, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsoError {
    #[error("swarm size must be at least 2, got {0}")]
    SwarmTooSmall(usize),
    #[error("max iterations must be at least 1")]
    NoIterations,
    #[error("omega_max ({max}) must not be below omega_min ({min})")]
    InertiaOrder { max: f64, min: f64 },
    #[error("learning rates must be non-negative and finite")]
    BadLearningRate,
    #[error("v_max must be positive, got {0}")]
    BadVelocityCap(f64),
    #[error("v_min ({0}) must lie within [-v_max, v_max]")]
    BadVelocityFloor(f64),
    #[error("convergence epsilon must be non-negative, got {0}")]
    BadEpsilon(f64),
    #[error("iteration {it} is past max iterations {max}")]
    IterationOutOfRange { it: usize, max: usize },
    #[error("search domain dimension {0} has lower bound not below upper bound")]
    EmptyDomain(usize),
    #[error("search domain has no dimensions")]
    NoDimensions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub max_iterations: usize,
    pub omega_max: f64,
    pub omega_min: f64,
    /// Individual learning rate.
    pub c1: f64,
    /// Group learning rate.
    pub c2: f64,
    /// Cap on the magnitude of each velocity component.
    pub v_max: f64,
    /// Lower end of the initial velocity range `[v_min, v_max]`.
    pub v_min: f64,
    /// Stop once the swarm's spread drops below this.
    pub convergence_epsilon: f64,
    pub rng_seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 500,
            max_iterations: 100,
            omega_max: 0.9,
            omega_min: 0.4,
            c1: 2.0,
            c2: 2.0,
            v_max: 200.0,
            v_min: 0.0,
            convergence_epsilon: 1e-6,
            rng_seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<(), PsoError> {
        if self.swarm_size < 2 {
            return Err(PsoError::SwarmTooSmall(self.swarm_size));
        }
        if self.max_iterations < 1 {
            return Err(PsoError::NoIterations);
        }
        if !(self.omega_max >= self.omega_min) {
            return Err(PsoError::InertiaOrder { max: self.omega_max, min: self.omega_min });
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0 && self.c1.is_finite() && self.c2.is_finite()) {
            return Err(PsoError::BadLearningRate);
        }
        if !(self.v_max > 0.0 && self.v_max.is_finite()) {
            return Err(PsoError::BadVelocityCap(self.v_max));
        }
        if !(self.v_min.abs() <= self.v_max) {
            return Err(PsoError::BadVelocityFloor(self.v_min));
        }
        if !(self.convergence_epsilon >= 0.0) {
            return Err(PsoError::BadEpsilon(self.convergence_epsilon));
        }
        Ok(())
    }

    /// Inertia weight at iteration `it`, falling linearly from `omega_max`
    /// at 0 to `omega_min` at `max_iterations`.
    pub fn inertia_weight(&self, it: usize) -> Result<f64, PsoError> {
        if it > self.max_iterations {
            return Err(PsoError::IterationOutOfRange { it, max: self.max_iterations });
        }
        Ok(linear_inertia(
            self.omega_max,
            self.omega_min,
            self.max_iterations as f64,
            it as f64,
        ))
    }
}

/// `w_max - ((w_max - w_min) / it_max) * it`, over any field-like number type,
/// so the schedule can also be evaluated in exact arithmetic.
pub fn linear_inertia<T>(omega_max: T, omega_min: T, it_max: T, it: T) -> T
where
    T: Clone + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    omega_max.clone() - ((omega_max - omega_min) / it_max) * it
}

/// Linear interpolation `lo + sigma (hi - lo)` used for both position and
/// velocity initialization.
pub fn uniform_between(lo: f64, hi: f64, sigma: f64) -> f64 {
    lo + sigma * (hi - lo)
}

/// Box-shaped search domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, PsoError> {
        assert_eq!(lower.len(), upper.len(), "bound vectors differ in length");
        if lower.is_empty() {
            return Err(PsoError::NoDimensions);
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(PsoError::EmptyDomain(d));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self, PsoError> {
        Self::new(vec![lo], vec![hi])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(&self.lower).zip(&self.upper).all(|((v, lo), hi)| lo <= v && v <= hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    /// `+inf` until the particle has been evaluated once.
    pub pbest_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub iteration: usize,
}

impl SwarmState {
    /// Largest per-dimension range of particle positions.
    pub fn spread(&self) -> f64 {
        let dim = self.gbest_position.len();
        (0..dim)
            .map(|d| {
                let (lo, hi) = self.particles.iter().fold(
                    (f64::INFINITY, f64::NEG_INFINITY),
                    |(lo, hi), p| (lo.min(p.position[d]), hi.max(p.position[d])),
                );
                hi - lo
            })
            .fold(0.0, f64::max)
    }
}

/// Places the swarm uniformly in the domain with initial velocities from
/// `[v_min, v_max]`. Bests are unset (`+inf`).
pub fn init_swarm(config: &PsoConfig, domain: &SearchDomain, rng: &mut impl Rng) -> SwarmState {
    let dim = domain.dim();
    let particles = (0..config.swarm_size)
        .map(|_| {
            let position: Vec<f64> = (0..dim)
                .map(|d| {
                    let sigma: f64 = rng.random();
                    uniform_between(domain.lower[d], domain.upper[d], sigma)
                        .clamp(domain.lower[d], domain.upper[d])
                })
                .collect();
            let velocity = (0..dim)
                .map(|_| {
                    let sigma: f64 = rng.random();
                    uniform_between(config.v_min, config.v_max, sigma)
                        .clamp(-config.v_max, config.v_max)
                })
                .collect();
            Particle {
                pbest_position: position.clone(),
                position,
                velocity,
                pbest_fitness: f64::INFINITY,
            }
        })
        .collect::<Vec<_>>();
    let gbest_position = particles[0].position.clone();
    SwarmState { particles, gbest_position, gbest_fitness: f64::INFINITY, iteration: 0 }
}

/// One iteration: evaluate, update bests, move.
pub fn step<F>(
    state: &mut SwarmState,
    config: &PsoConfig,
    fitness: F,
    domain: &SearchDomain,
    rng: &mut impl Rng,
) where
    F: Fn(&[f64]) -> f64,
{
    for p in state.particles.iter_mut() {
        let mut f = fitness(&p.position);
        if f.is_nan() {
            f = f64::INFINITY;
        }
        if f < p.pbest_fitness {
            p.pbest_fitness = f;
            p.pbest_position.clone_from(&p.position);
        }
        if f < state.gbest_fitness {
            state.gbest_fitness = f;
            state.gbest_position.clone_from(&p.position);
        }
    }

    let it = state.iteration.min(config.max_iterations);
    let omega = linear_inertia(
        config.omega_max,
        config.omega_min,
        config.max_iterations as f64,
        it as f64,
    );
    let gbest = &state.gbest_position;
    for p in state.particles.iter_mut() {
        for d in 0..p.position.len() {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            let x = p.position[d];
            let v = omega * p.velocity[d]
                + config.c1 * r1 * (p.pbest_position[d] - x)
                + config.c2 * r2 * (gbest[d] - x);
            let v = v.clamp(-config.v_max, config.v_max);
            p.velocity[d] = v;
            p.position[d] = (x + v).clamp(domain.lower[d], domain.upper[d]);
        }
    }
    state.iteration += 1;
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsoOutcome {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub iterations: usize,
    /// Global best fitness after each iteration.
    pub history: Vec<f64>,
}

/// Runs the swarm with an RNG seeded from `config.rng_seed`.
pub fn optimize<F>(config: &PsoConfig, domain: &SearchDomain, fitness: F) -> Result<PsoOutcome, PsoError>
where
    F: Fn(&[f64]) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    optimize_with_rng(config, domain, fitness, &mut rng)
}

/// Runs until `max_iterations` or until the spread falls below
/// `convergence_epsilon`.
pub fn optimize_with_rng<F>(
    config: &PsoConfig,
    domain: &SearchDomain,
    fitness: F,
    rng: &mut impl Rng,
) -> Result<PsoOutcome, PsoError>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate()?;
    let mut state = init_swarm(config, domain, rng);
    let mut history = Vec::with_capacity(config.max_iterations);
    while state.iteration < config.max_iterations {
        step(&mut state, config, &fitness, domain, rng);
        history.push(state.gbest_fitness);
        if state.spread() < config.convergence_epsilon {
            break;
        }
    }
    Ok(PsoOutcome {
        position: state.gbest_position,
        fitness: state.gbest_fitness,
        iterations: state.iteration,
        history,
    })
}
