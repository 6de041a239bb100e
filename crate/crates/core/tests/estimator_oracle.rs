//! Within estimator against a dense dummy-variable least-squares fit.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sanctions_migration::econometrics::{fe_within_estimate, RegressionObservation};
use sanctions_migration::Execution;

fn random_panel(rng: &mut ChaCha8Rng) -> Vec<RegressionObservation> {
    let countries = rng.gen_range(1..=10);
    let alpha = rng.gen_range(-0.1..0.0);
    let mut obs = Vec::new();
    for c in 0..countries {
        let effect = rng.gen_range(-1.0..3.0);
        let t_len = rng.gen_range(2..=20);
        for t in 0..t_len {
            let g: f64 = rng.gen_range(-15.0..10.0);
            obs.push(RegressionObservation {
                country_code: format!("K{c}"),
                year: 1990 + t,
                e: effect + alpha * g + rng.gen_range(-0.3..0.3),
                g,
            });
        }
    }
    obs
}

/// OLS of e on g plus one dummy per country, via the normal equations.
fn dummy_ols(obs: &[RegressionObservation]) -> (f64, Vec<f64>) {
    let mut codes: Vec<&str> = obs.iter().map(|o| o.country_code.as_str()).collect();
    codes.sort_unstable();
    codes.dedup();
    let x = DMatrix::from_fn(obs.len(), 1 + codes.len(), |i, j| {
        if j == 0 {
            obs[i].g
        } else if obs[i].country_code == codes[j - 1] {
            1.0
        } else {
            0.0
        }
    });
    let y = DVector::from_iterator(obs.len(), obs.iter().map(|o| o.e));
    let beta = (x.transpose() * &x).cholesky().unwrap().solve(&(x.transpose() * &y));
    let resid = &y - &x * &beta;
    (beta[0], resid.iter().copied().collect())
}

#[test]
fn matches_dummy_variable_regression() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    for _ in 0..200 {
        let obs = random_panel(&mut rng);
        let est = fe_within_estimate(&obs, Execution::Parallel).unwrap();
        let (alpha, resid) = dummy_ols(&obs);
        assert!(
            (est.alpha1 - alpha).abs() <= 1e-10 * alpha.abs().max(1e-3),
            "{} vs {alpha}",
            est.alpha1
        );
        for (a, b) in est.residuals.iter().zip(&resid) {
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
        assert_eq!(est.n_obs, obs.len());
    }
}

#[test]
fn country_effects_reproduce_fitted_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let obs = random_panel(&mut rng);
    let est = fe_within_estimate(&obs, Execution::Sequential).unwrap();
    for (o, r) in obs.iter().zip(&est.residuals) {
        let fitted = est.country_effects[&o.country_code] + est.alpha1 * o.g;
        assert!((o.e - fitted - r).abs() < 1e-12);
    }
}

#[test]
fn parallel_and_sequential_agree_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let obs = random_panel(&mut rng);
        let a = fe_within_estimate(&obs, Execution::Sequential).unwrap();
        let b = fe_within_estimate(&obs, Execution::Parallel).unwrap();
        assert_eq!(a.alpha1.to_bits(), b.alpha1.to_bits());
        assert_eq!(a.residuals, b.residuals);
        assert_eq!(a.country_effects, b.country_effects);
    }
}

#[test]
fn singleton_countries_do_not_move_the_slope() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let obs = random_panel(&mut rng);
    let base = fe_within_estimate(&obs, Execution::Sequential).unwrap();
    let mut with_singleton = obs.clone();
    with_singleton.push(RegressionObservation { country_code: "ZZ".into(), year: 2000, e: 9.0, g: -40.0 });
    let est = fe_within_estimate(&with_singleton, Execution::Sequential).unwrap();
    assert_eq!(est.alpha1, base.alpha1);
}
