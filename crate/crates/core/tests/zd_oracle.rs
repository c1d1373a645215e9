mod common;

use common::{exact_zd_fit, f, q, qf, Q};
use proptest::prelude::*;
use zdscan::engine::{Action, MatchHistory, PayoffParams, Side, Turn};
use zdscan::zd::{
    chi_closed_form, detect_extortion, fit_zd, is_extortionate_exact, measure_memory_one, project_onto_plane,
    DesignMatrix, Imputation, MemoryOneVector, Verdict,
};

const PD: PayoffParams = PayoffParams::STANDARD;

fn v(p: [f64; 4]) -> MemoryOneVector {
    MemoryOneVector::new(p).unwrap()
}

fn history(a: &str, b: &str) -> MatchHistory {
    Action::parse_seq(a).unwrap().into_iter().zip(Action::parse_seq(b).unwrap()).map(Turn::from).collect()
}

fn close(x: f64, y: &Q, tol: f64) -> bool {
    (x - f(y)).abs() <= tol
}

#[test]
fn all_cooperate_matches_exact_normal_equations() {
    let exact = exact_zd_fit(&[q(1, 1), q(1, 1), q(1, 1), q(1, 1)], [3, 0, 5, 1]);
    assert_eq!(exact.sse, q(21, 17));
    assert_eq!(exact.alpha, q(16, 85));
    assert_eq!(exact.beta, q(-1, 85));
    assert_eq!(-&exact.beta / &exact.alpha, q(1, 16));

    let fit = fit_zd(&v([1.0; 4]), &PD).unwrap();
    assert!(close(fit.sse, &q(21, 17), 1e-12));
    assert!(close(fit.chi, &q(1, 16), 1e-12));
    assert!(close(fit.alpha, &q(16, 85), 1e-12));
    assert!(close(fit.beta, &q(-1, 85), 1e-12));
    assert!(close(fit.gamma, &q(-15, 85), 1e-12));
    let design = DesignMatrix::new(&PD);
    assert!(close(fit.sse_matrix_form(&v([1.0; 4]).transformed(), &design), &q(21, 17), 1e-12));
}

#[test]
fn projection_of_all_cooperate() {
    let exact = exact_zd_fit(&[q(1, 1), q(1, 1), q(1, 1), q(1, 1)], [3, 0, 5, 1]);
    let projected = project_onto_plane(&v([1.0; 4]), &PD).unwrap();
    for (x, e) in projected.0.iter().zip(&exact.projected) {
        assert!(close(*x, e, 1e-12));
    }
    // C (16/85, -1/85)
    assert_eq!(exact.projected, vec![q(30, 85), q(-20, 85), q(65, 85), q(0, 1)]);
}

#[test]
fn extort_two_and_tit_for_tat_are_exact_plane_members() {
    let exact = exact_zd_fit(&[q(8, 9), q(1, 2), q(1, 3), q(0, 1)], [3, 0, 5, 1]);
    assert_eq!(exact.sse, q(0, 1));
    assert_eq!((exact.alpha.clone(), exact.beta.clone()), (q(1, 18), q(-1, 9)));
    let fit = fit_zd(&v([8.0 / 9.0, 0.5, 1.0 / 3.0, 0.0]), &PD).unwrap();
    assert!(fit.sse <= 1e-12);
    assert!((fit.chi - 2.0).abs() < 1e-9);
    assert_eq!(detect_extortion(&fit, 0.01), Verdict::Extortionate);

    let exact = exact_zd_fit(&[q(1, 1), q(0, 1), q(1, 1), q(0, 1)], [3, 0, 5, 1]);
    assert_eq!((exact.alpha, exact.beta, exact.sse), (q(1, 5), q(-1, 5), q(0, 1)));
    let fit = fit_zd(&v([1.0, 0.0, 1.0, 0.0]), &PD).unwrap();
    assert!((fit.chi - 1.0).abs() < 1e-12);
    assert_eq!(detect_extortion(&fit, 0.01), Verdict::Boundary);
}

#[test]
fn worked_plane_examples() {
    let check = is_extortionate_exact(&v([8.0 / 9.0, 0.5, 1.0 / 3.0, 0.0]), &PD, 1e-12);
    assert!(check.extortionate);
    assert!((check.required_p1 - 8.0 / 9.0).abs() < 1e-15);
    let check = is_extortionate_exact(&v([0.25; 4]), &PD, 1e-12);
    assert!(!check.extortionate);
    assert!((check.required_p1 - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn seeded_twenty_turn_fixture_measures_known_vector() {
    let h = history("CCCCDCDCDCDDDDDDDDDD", "CDCDCDCDCDCDCDCDCDCD");
    let m = measure_memory_one(&h, Side::A, Imputation::default()).unwrap();
    assert_eq!(m.cooperation_counts, [2, 1, 3, 0]);
    assert_eq!(m.visit_counts, [2, 5, 8, 4]);
    assert_eq!(m.p_hat.as_array(), [1.0, 0.2, 0.375, 0.0]);
    assert_eq!(m.imputed, [false; 4]);
}

#[test]
fn measurement_examples() {
    let m = measure_memory_one(&history("CCDDC", "CDCDC"), Side::A, Imputation::default()).unwrap();
    assert_eq!(m.p_hat.as_array(), [1.0, 0.0, 0.0, 1.0]);
    assert_eq!(m.visit_counts, [1, 1, 1, 1]);

    let m = measure_memory_one(&history("CCCCCCCCCC", "CCCCCCCCCC"), Side::A, Imputation::default()).unwrap();
    assert_eq!(m.p_hat.as_array(), [1.0; 4]);
    assert_eq!(m.imputed, [false, true, true, true]);

    let m = measure_memory_one(&history("CCCCCCCCCC", "CCCCCCCCCC"), Side::A, Imputation::Fixed(0.5)).unwrap();
    assert_eq!(m.p_hat.as_array(), [1.0, 0.5, 0.5, 0.5]);

    assert!(measure_memory_one(&history("C", "C"), Side::A, Imputation::default()).is_err());
}

fn payoffs() -> impl Strategy<Value = [i64; 4]> {
    (-3i64..3, 1i64..4, 1i64..4, 1i64..4)
        .prop_map(|(s, a, b, c)| {
            let p = s + a;
            let r = p + b;
            [r, s, r + c, p]
        })
        .prop_filter("nondegenerate", |[_, s, t, p]| 2 * p != s + t)
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn vector() -> impl Strategy<Value = [f64; 4]> {
    [unit(), unit(), unit(), unit()]
}

/// A point of the extortionate region built from `p2`, `p3`.
fn plane_point() -> impl Strategy<Value = [f64; 4]> {
    (unit(), unit()).prop_filter_map("inside region", |(p2, p3)| {
        if p2 + p3 >= 1.0 - 1e-6 {
            return None;
        }
        let p1 = (2.0 * (p2 + p3) - 3.0 + 5.0 + 0.0 - 1.0) / 3.0;
        (0.0..=1.0).contains(&p1).then_some([p1, p2, p3, 0.0])
    })
}

proptest! {
    #[test]
    fn fit_agrees_with_exact_oracle(p in vector(), pay in payoffs()) {
        let params = PayoffParams::new(pay[0] as f64, pay[1] as f64, pay[2] as f64, pay[3] as f64).unwrap();
        let fit = fit_zd(&v(p), &params).unwrap();
        let exact = exact_zd_fit(&p.map(qf), pay);
        prop_assert!(close(fit.alpha, &exact.alpha, 1e-10));
        prop_assert!(close(fit.beta, &exact.beta, 1e-10));
        prop_assert!(close(fit.sse, &exact.sse, 1e-10));
    }

    #[test]
    fn residual_and_matrix_forms_agree(p in vector(), pay in payoffs()) {
        let params = PayoffParams::new(pay[0] as f64, pay[1] as f64, pay[2] as f64, pay[3] as f64).unwrap();
        let fit = fit_zd(&v(p), &params).unwrap();
        let matrix = fit.sse_matrix_form(&v(p).transformed(), &DesignMatrix::new(&params));
        prop_assert!((fit.sse - matrix).abs() <= 1e-10);
        prop_assert!(fit.sse >= 0.0);
    }

    #[test]
    fn plane_points_fit_exactly(p in plane_point()) {
        let fit = fit_zd(&v(p), &PD).unwrap();
        prop_assert!(fit.sse < 1e-10);
        prop_assert!(is_extortionate_exact(&v(p), &PD, 1e-9).extortionate);
        if let Ok(chi) = chi_closed_form(&v(p), &PD) {
            if fit.chi.is_finite() {
                prop_assert!((chi - fit.chi).abs() <= 1e-8 * chi.abs().max(1.0), "{} vs {}", chi, fit.chi);
            }
        }
    }

    #[test]
    fn projection_is_idempotent(p in vector()) {
        let projected = project_onto_plane(&v(p), &PD).unwrap();
        let design = DesignMatrix::new(&PD);
        let x = design.solve_normal_equations(&projected.0).unwrap();
        let again = design.apply(x);
        let sse: f64 = again.iter().zip(projected.0).map(|(a, b)| (a - b) * (a - b)).sum();
        prop_assert!(sse < 1e-10);
        for (a, b) in again.iter().zip(projected.0) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn chi_and_sse_ignore_global_sign(p in vector()) {
        let fit = fit_zd(&v(p), &PD).unwrap();
        let mut flipped = fit.clone();
        flipped.alpha = -fit.alpha;
        flipped.beta = -fit.beta;
        prop_assert_eq!(-flipped.beta / flipped.alpha, fit.chi);
        prop_assert_eq!(detect_extortion(&flipped, 0.01), detect_extortion(&fit, 0.01));
    }

    #[test]
    fn extortionate_projections_cooperate_less_than_half(p in vector()) {
        let fit = fit_zd(&v(p), &PD).unwrap();
        let q = fit.projected.to_probabilities();
        if q.iter().all(|x| (0.0..=1.0).contains(x)) {
            let projected = v(q);
            let refit = fit_zd(&projected, &PD).unwrap();
            if detect_extortion(&refit, 1e-10) == Verdict::Extortionate {
                prop_assert!((q[1] + q[2]) / 2.0 < 0.5, "{:?}", q);
            }
        }
    }

    #[test]
    fn measurement_sanity(
        a in proptest::collection::vec(any::<bool>(), 2..200),
        b in proptest::collection::vec(any::<bool>(), 2..200),
    ) {
        let n = a.len().min(b.len());
        let act = |c: bool| if c { Action::C } else { Action::D };
        let h: MatchHistory = (0..n).map(|i| Turn { focal: act(a[i]), opponent: act(b[i]) }).collect();
        for side in [Side::A, Side::B] {
            let m = measure_memory_one(&h, side, Imputation::default()).unwrap();
            prop_assert_eq!(m.visit_counts.iter().sum::<u64>(), n as u64 - 1);
            prop_assert!(m.p_hat.as_array().iter().all(|x| (0.0..=1.0).contains(x)));
            for s in 0..4 {
                prop_assert_eq!(m.imputed[s], m.visit_counts[s] == 0);
                prop_assert!(m.cooperation_counts[s] <= m.visit_counts[s]);
            }
        }
    }
}
