use proptest::prelude::*;
use zdscan::engine::{
    catalog, play_match, run_tournament_with_threads, score_history, state_distribution, Action, PayoffParams,
    StrategySpec, TournamentConfig,
};

fn catalog_spec() -> impl Strategy<Value = StrategySpec> {
    let all: Vec<StrategySpec> = catalog::default_catalog().into_iter().map(|s| s.spec).collect();
    proptest::sample::select(all)
}

fn memory_one() -> impl Strategy<Value = StrategySpec> {
    ([0.0..=1.0f64, 0.0..=1.0, 0.0..=1.0, 0.0..=1.0], 0.0..=1.0f64)
        .prop_map(|(p, init)| StrategySpec::memory_one(p, init).unwrap())
}

fn any_spec() -> impl Strategy<Value = StrategySpec> {
    prop_oneof![catalog_spec(), memory_one()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_are_pure(a in any_spec(), b in any_spec(), turns in 1usize..300, seed in any::<u64>()) {
        prop_assert_eq!(play_match(&a, &b, turns, seed), play_match(&a, &b, turns, seed));
    }

    #[test]
    fn payoffs_are_one_of_four_outcomes(a in any_spec(), b in any_spec(), turns in 1usize..300, seed in any::<u64>()) {
        let pd = PayoffParams::STANDARD;
        let h = play_match(&a, &b, turns, seed);
        prop_assert_eq!(h.len(), turns);
        let allowed = [(3.0, 3.0), (0.0, 5.0), (5.0, 0.0), (1.0, 1.0)];
        for turn in h.turns() {
            prop_assert!(allowed.contains(&pd.payoff(*turn)));
        }
        let score = score_history(&h, &pd).unwrap();
        let total: f64 = h.turns().iter().map(|t| pd.payoff(*t).0).sum();
        prop_assert_eq!(score.focal, total);
    }

    #[test]
    fn state_distribution_is_a_distribution(a in any_spec(), b in any_spec(), turns in 1usize..300, seed in any::<u64>()) {
        let d = state_distribution(&play_match(&a, &b, turns, seed)).unwrap();
        prop_assert!((d.0.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(d.0.iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn full_cooperation_vector_never_defects(b in any_spec(), turns in 1usize..300, seed in any::<u64>()) {
        let a = StrategySpec::memory_one([1.0; 4], 1.0).unwrap();
        let h = play_match(&a, &b, turns, seed);
        prop_assert!(h.turns().iter().all(|t| t.focal == Action::C));
    }

    #[test]
    fn swapping_deterministic_players_transposes(a in catalog_spec(), b in catalog_spec(), turns in 1usize..300, seed in any::<u64>()) {
        prop_assume!(a.is_deterministic() && b.is_deterministic());
        let pd = PayoffParams::STANDARD;
        let ab = play_match(&a, &b, turns, seed);
        let ba = play_match(&b, &a, turns, seed);
        prop_assert_eq!(ba.clone(), ab.transposed());
        prop_assert_eq!(score_history(&ba, &pd).unwrap(), score_history(&ab, &pd).unwrap().swapped());
    }
}

#[test]
fn tournament_is_independent_of_thread_count() {
    let mut cfg = TournamentConfig::new(catalog::default_catalog(), 11);
    cfg.turns = 50;
    cfg.repetitions = 3;
    cfg.include_self_interactions = true;
    let one = run_tournament_with_threads(&cfg, 1).unwrap();
    let four = run_tournament_with_threads(&cfg, 4).unwrap();
    assert_eq!(one, four);
    let n = cfg.corpus.len();
    assert_eq!(one.len(), n * (n + 1) / 2 * 3);
}
