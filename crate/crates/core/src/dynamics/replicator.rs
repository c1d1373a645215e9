use super::payoff_matrix::PayoffMatrix;
use crate::{Error, Result};

const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A point of the probability simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct PopulationVector(Vec<f64>);

impl PopulationVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::NotOnSimplex("empty vector".into()));
        }
        if let Some(v) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::NotOnSimplex(format!("component {v} is negative or not finite")));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::NotOnSimplex(format!("components sum to {sum}")));
        }
        Ok(PopulationVector(x))
    }

    pub fn uniform(n: usize) -> Self {
        PopulationVector(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// `dx_i/dt = x_i ((S x)_i - x^T S x)`
pub fn replicator_field(s: &PayoffMatrix, x: &[f64]) -> Vec<f64> {
    let sx = s.apply(x);
    let mean: f64 = x.iter().zip(&sx).map(|(a, b)| a * b).sum();
    x.iter().zip(&sx).map(|(xi, fi)| xi * (fi - mean)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicatorOptions {
    /// Stop once `max_i |dx_i/dt|` drops below this.
    pub tol: f64,
    pub t_max: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub initial_step: f64,
    pub record_trajectory: bool,
}

impl Default for ReplicatorOptions {
    fn default() -> Self {
        ReplicatorOptions {
            tol: 1e-10,
            t_max: 1e5,
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            initial_step: 1e-3,
            record_trajectory: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplicatorOutcome {
    pub population: PopulationVector,
    pub converged: bool,
    pub time: f64,
    pub steps: usize,
    pub rejected_steps: usize,
    /// `max_i |dx_i/dt|` at the returned point.
    pub max_rate: f64,
    /// Accepted `(t, x)` points, present when requested.
    pub trajectory: Vec<(f64, Vec<f64>)>,
}

// Dormand-Prince 5(4) tableau; the field is autonomous so the nodes are unused
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Clips negative components to zero and rescales onto the simplex.
fn renormalize(x: &mut [f64]) {
    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= sum;
    }
}

/// Integrates the replicator equation with an adaptive Dormand-Prince
/// 5(4) scheme until the field falls below `tol` or `t_max` is reached
/// (`converged == false`).
pub fn replicator_stationary(
    s: &PayoffMatrix,
    x0: &PopulationVector,
    options: &ReplicatorOptions,
) -> Result<ReplicatorOutcome> {
    let n = s.len();
    if x0.as_slice().len() != n {
        return Err(Error::NotOnSimplex(format!(
            "population has {} components, matrix has {n} strategies",
            x0.as_slice().len()
        )));
    }
    if !(options.tol > 0.0) || !(options.t_max >= 0.0) {
        return Err(Error::InvalidConfig("tol must be positive and t_max nonnegative".into()));
    }

    let mut x = x0.as_slice().to_vec();
    let mut t = 0.0;
    let mut h = options.initial_step.min(options.t_max).max(f64::MIN_POSITIVE);
    let mut steps = 0;
    let mut rejected_steps = 0;
    let mut trajectory = Vec::new();
    if options.record_trajectory {
        trajectory.push((t, x.clone()));
    }

    let mut f = replicator_field(s, &x);
    let mut rate = max_abs(&f);
    let mut k = vec![vec![0.0; n]; 7];
    let mut stage = vec![0.0; n];
    while rate >= options.tol && t < options.t_max {
        h = h.min(options.t_max - t);
        k[0].copy_from_slice(&f);
        for i in 1..7 {
            for (c, v) in stage.iter_mut().enumerate() {
                *v = x[c] + h * (0..i).map(|j| A[i][j] * k[j][c]).sum::<f64>();
            }
            k[i] = replicator_field(s, &stage);
        }
        let mut error = 0.0f64;
        let mut next = vec![0.0; n];
        for c in 0..n {
            let high: f64 = (0..7).map(|j| B5[j] * k[j][c]).sum();
            let low: f64 = (0..7).map(|j| B4[j] * k[j][c]).sum();
            next[c] = x[c] + h * high;
            let scale = options.abs_tol + options.rel_tol * x[c].abs().max(next[c].abs());
            error = error.max((h * (high - low)).abs() / scale);
        }
        if error <= 1.0 || h <= 1e-14 {
            t += h;
            renormalize(&mut next);
            x = next;
            steps += 1;
            f = replicator_field(s, &x);
            rate = max_abs(&f);
            if options.record_trajectory {
                trajectory.push((t, x.clone()));
            }
        } else {
            rejected_steps += 1;
        }
        let factor = if error == 0.0 { 5.0 } else { (0.9 * error.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }

    Ok(ReplicatorOutcome {
        population: PopulationVector(x),
        converged: rate < options.tol,
        time: t,
        steps,
        rejected_steps,
        max_rate: rate,
        trajectory,
    })
}
