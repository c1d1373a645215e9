mod common;

use common::{exact_ols, f};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zdscan::engine::{catalog, run_tournament, TournamentConfig};
use zdscan::stats::{ols_fit, rank_strategies};

#[test]
fn random_systems_match_exact_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let x: Vec<Vec<f64>> = (0..10).map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]).collect();
        let y: Vec<f64> = (0..10).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let fit = ols_fit(&x, &y).unwrap();
        let exact = exact_ols(&x, &y);
        assert!((fit.intercept - f(&exact[0])).abs() < 1e-9);
        for (c, e) in fit.coefficients.iter().zip(&exact[1..]) {
            assert!((c - f(e)).abs() < 1e-9, "{c} vs {}", f(e));
        }
    }
}

#[test]
fn extortioner_wins_often_but_scores_poorly() {
    let mut cfg = TournamentConfig::new(catalog::default_catalog(), 2024);
    cfg.turns = 200;
    cfg.repetitions = 5;
    let names = cfg.names();
    let rankings = rank_strategies(&names, &run_tournament(&cfg).unwrap()).unwrap();
    let e = names.iter().position(|n| n == "Extort-2").unwrap();
    let third = names.len() / 3;
    assert!(rankings.wins_rank(e).unwrap() <= third, "wins rank {:?}", rankings.wins_rank(e));
    assert!(rankings.score_rank(e).unwrap() > names.len() / 2, "score rank {:?}", rankings.score_rank(e));
}

fn system() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (4usize..30, 1usize..4).prop_flat_map(|(n, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(-10.0..10.0f64, k), n.max(k + 2)),
            proptest::collection::vec(-10.0..10.0f64, n.max(k + 2)),
        )
    })
}

proptest! {
    #[test]
    fn residuals_are_orthogonal_to_features((x, y) in system()) {
        let Ok(fit) = ols_fit(&x, &y) else { return Ok(()) };
        let k = x[0].len();
        prop_assert!(fit.residuals.iter().sum::<f64>().abs() < 1e-9);
        for j in 0..k {
            let dot: f64 = x.iter().zip(&fit.residuals).map(|(row, r)| row[j] * r).sum();
            prop_assert!(dot.abs() < 1e-9, "column {} dot {}", j, dot);
        }
        prop_assert!((0.0..=1.0).contains(&fit.r_squared));
    }
}
