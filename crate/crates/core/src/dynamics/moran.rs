use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{play_match, score_history, seed, PayoffParams, StrategySpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixationMethod {
    Analytic,
    Simulated,
}

impl FixationMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FixationMethod::Analytic => "analytic",
            FixationMethod::Simulated => "simulated",
        }
    }
}

/// Probability that a single mutant takes over a population of `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixationResult {
    pub population_size: usize,
    pub x1: f64,
    /// Zero for analytic results.
    pub standard_error: f64,
    /// `N * x1`; 1 is neutral.
    pub normalized: f64,
    pub method: FixationMethod,
    pub trials: usize,
}

/// Fixation probability of one `A` among `N - 1` `B` in the
/// frequency-dependent Moran process with payoff-proportional fitness.
///
/// `a, b, c, d` are the mean payoffs of A against A, A against B, B
/// against A and B against B. With `j` mutants,
///
/// ```text
/// f_j = (a (j-1) + b (N-j)) / (N-1)
/// g_j = (c j + d (N-j-1)) / (N-1)
/// x1  = 1 / (1 + sum_{k=1}^{N-1} prod_{j=1}^{k} g_j / f_j)
/// ```
pub fn moran_fixation_analytic(a: f64, b: f64, c: f64, d: f64, n: usize) -> Result<FixationResult> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("population size must be at least 2, got {n}")));
    }
    for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::NonPositiveFitness(format!("payoff {name} = {v}")));
        }
    }
    let result = |x1: f64| FixationResult {
        population_size: n,
        x1,
        standard_error: 0.0,
        normalized: n as f64 * x1,
        method: FixationMethod::Analytic,
        trials: 0,
    };
    if a == b && b == c && c == d && a > 0.0 {
        return Ok(result(1.0 / n as f64));
    }

    let nf = n as f64;
    let mut sum = 1.0;
    let mut product = 1.0;
    for j in 1..n {
        let jf = j as f64;
        // the common 1/(N-1) factor cancels in g_j / f_j
        let f = a * (jf - 1.0) + b * (nf - jf);
        let g = c * jf + d * (nf - jf - 1.0);
        if f == 0.0 && g == 0.0 {
            return Err(Error::NonPositiveFitness(format!("all individuals have zero fitness with {j} mutants")));
        }
        product *= g / f;
        if product == 0.0 {
            break;
        }
        if product.is_infinite() {
            return Ok(result(0.0));
        }
        sum += product;
    }
    Ok(result(1.0 / sum))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoranConfig {
    pub population_size: usize,
    pub turns: usize,
    pub trials: usize,
    pub seed: u64,
    pub payoffs: PayoffParams,
}

/// Mean per-turn payoffs of the four pairings, when both strategies are
/// deterministic and every match is therefore identical.
struct FixedPayoffs {
    aa: f64,
    ab: f64,
    ba: f64,
    bb: f64,
}

impl FixedPayoffs {
    fn measure(a: &StrategySpec, b: &StrategySpec, cfg: &MoranConfig) -> Result<Self> {
        let per_turn = |x: &StrategySpec, y: &StrategySpec| -> Result<(f64, f64)> {
            let score = score_history(&play_match(x, y, cfg.turns, 0), &cfg.payoffs)?;
            Ok((score.focal_per_turn(), score.opponent_per_turn()))
        };
        let (aa, _) = per_turn(a, a)?;
        let (ab, ba) = per_turn(a, b)?;
        let (bb, _) = per_turn(b, b)?;
        Ok(FixedPayoffs { aa, ab, ba, bb })
    }
}

/// Picks an index with probability proportional to `weights`, uniformly
/// when every weight is zero.
fn select_proportional(weights: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return rng.gen_range(0..weights.len());
    }
    let mut target = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if target < *w {
            return i;
        }
        target -= w;
    }
    weights.len() - 1
}

fn run_trial_fixed(p: &FixedPayoffs, n: usize, rng: &mut ChaCha8Rng) -> bool {
    let nf = n as f64;
    let mut mutants = 1usize;
    while mutants > 0 && mutants < n {
        let j = mutants as f64;
        let fa = (p.aa * (j - 1.0) + p.ab * (nf - j)) / (nf - 1.0);
        let fb = (p.ba * j + p.bb * (nf - j - 1.0)) / (nf - 1.0);
        let reproducer_is_a = select_proportional(&[j * fa, (nf - j) * fb], rng) == 0;
        let replaced_is_a = rng.gen_range(0..n) < mutants;
        match (reproducer_is_a, replaced_is_a) {
            (true, false) => mutants += 1,
            (false, true) => mutants -= 1,
            _ => {}
        }
    }
    mutants == n
}

fn run_trial_played(
    a: &StrategySpec,
    b: &StrategySpec,
    cfg: &MoranConfig,
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    let n = cfg.population_size;
    // true marks a mutant (strategy A); individual 0 starts as the mutant
    let mut population: Vec<bool> = (0..n).map(|i| i == 0).collect();
    let mut fitness = vec![0.0; n];
    loop {
        let mutants = population.iter().filter(|&&m| m).count();
        if mutants == 0 || mutants == n {
            return Ok(mutants == n);
        }
        fitness.iter_mut().for_each(|f| *f = 0.0);
        for i in 0..n {
            for k in i + 1..n {
                let spec = |m: bool| if m { a } else { b };
                let history = play_match(spec(population[i]), spec(population[k]), cfg.turns, rng.next_u64());
                let score = score_history(&history, &cfg.payoffs)?;
                fitness[i] += score.focal_per_turn();
                fitness[k] += score.opponent_per_turn();
            }
        }
        let reproducer = select_proportional(&fitness, rng);
        let replaced = rng.gen_range(0..n);
        population[replaced] = population[reproducer];
    }
}

/// Estimates the fixation probability of one `a` invading `N - 1` copies of
/// `b` by simulation.
///
/// Each step every pair of individuals plays a match of `turns` rounds,
/// fitness is the mean per-turn payoff against the other `N - 1`
/// individuals, a reproducer is drawn proportionally to fitness and its
/// offspring replaces a uniformly chosen individual. Trials use seeds
/// derived from `cfg.seed` and the trial index, so the estimate does not
/// depend on thread count.
pub fn moran_fixation_simulated(
    a: &StrategySpec,
    b: &StrategySpec,
    cfg: &MoranConfig,
) -> Result<FixationResult> {
    if cfg.population_size < 2 {
        return Err(Error::InvalidConfig(format!(
            "population size must be at least 2, got {}",
            cfg.population_size
        )));
    }
    if cfg.trials == 0 || cfg.turns == 0 {
        return Err(Error::InvalidConfig("trials and turns must be positive".into()));
    }
    a.validate()?;
    b.validate()?;

    let fixed = if a.is_deterministic() && b.is_deterministic() {
        Some(FixedPayoffs::measure(a, b, cfg)?)
    } else {
        None
    };
    let fixations = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(cfg.seed, trial as u64));
            match &fixed {
                Some(p) => Ok(run_trial_fixed(p, cfg.population_size, &mut rng)),
                None => run_trial_played(a, b, cfg, &mut rng),
            }
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&fixed| fixed)
        .count();

    let x1 = fixations as f64 / cfg.trials as f64;
    Ok(FixationResult {
        population_size: cfg.population_size,
        x1,
        standard_error: (x1 * (1.0 - x1) / cfg.trials as f64).sqrt(),
        normalized: cfg.population_size as f64 * x1,
        method: FixationMethod::Simulated,
        trials: cfg.trials,
    })
}
