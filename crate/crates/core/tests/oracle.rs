use infologic::gen::{self, seeded};
use infologic::oracle::{corollary_check, grid_min_g, lub_minimality_check, theorem1_check};
use infologic::{Distribution, ScoreRule};
use proptest::prelude::*;

#[test]
fn theorem1_log_example() {
    let p = Distribution::new(vec![0.9, 0.1]).unwrap();
    let q = Distribution::uniform(2).unwrap();
    let report = theorem1_check(&ScoreRule::Logarithmic, &p, &q, 100).unwrap();
    assert!(report.max_decomposition_error <= 1e-12);
    assert!(report.passed);
    // G(P, uniform) = -ln 2 = G(uniform): the conclusion holds with equality
    assert!(report.conclusion_slack.abs() < 1e-15);
}

#[test]
fn corollary_on_full_simplex_in_three_dimensions() {
    let simplex: Vec<Distribution> = (0..3).map(|k| Distribution::degenerate(3, k).unwrap()).collect();
    for score in [ScoreRule::Logarithmic, ScoreRule::Quadratic] {
        let report = corollary_check(&score, &simplex, 60, 100, 4).unwrap();
        assert!(report.passed);
        assert!(report.refined.point.max_abs_diff(&Distribution::uniform(3).unwrap()) < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_minimum_never_exceeds_a_vertex(seed in any::<u64>(), dim in 2usize..=4, nv in 1usize..=4) {
        let mut rng = seeded(seed);
        let vertices: Vec<Distribution> = (0..nv).map(|_| gen::distribution(&mut rng, dim)).collect();
        for score in [ScoreRule::Logarithmic, ScoreRule::Quadratic, ScoreRule::Decision(gen::payoff(&mut rng, 3, dim))] {
            let min = grid_min_g(&score, &vertices, 40).unwrap();
            for v in &vertices {
                prop_assert!(min.value <= score.g_value(v).unwrap());
            }
        }
    }

    #[test]
    fn theorem1_identity_is_exact(seed in any::<u64>(), dim in 2usize..=4) {
        let mut rng = seeded(seed);
        let p = gen::distribution(&mut rng, dim);
        let q = gen::distribution(&mut rng, dim);
        for score in [ScoreRule::Logarithmic, ScoreRule::Quadratic, ScoreRule::Decision(gen::payoff(&mut rng, 3, dim))] {
            let report = theorem1_check(&score, &p, &q, 100).unwrap();
            prop_assert!(report.max_decomposition_error <= 1e-12);
        }
    }

    #[test]
    fn lub_is_least(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let prior = gen::prior(&mut rng, 2, 0.05);
        let p = gen::system_with_prior(&mut rng, &prior, 3);
        let q = gen::system_with_prior(&mut rng, &prior, 4);
        let report = lub_minimality_check(&p, &q, 30, seed).unwrap();
        prop_assert!(report.passed());
    }
}
