use infologic::canonical::{
    canonicalize, compare, curve_equal, dominates, join, meet, reconstruct,
};
use infologic::gen::{self, seeded};
use infologic::{CanonicalCurve, Comparison, Distribution, InfoSystem, PayoffMatrix, Point, ScoreRule};
use proptest::prelude::*;

fn random_curve(rng: &mut gen::SeededRng) -> CanonicalCurve {
    use rand::Rng;
    let n = rng.random_range(2..=8);
    gen::curve(rng, n)
}

// Piecewise-linear interpolation over raw vertices, independent of the
// library's own evaluation.
fn interp(vertices: &[Point], x: f64) -> f64 {
    for w in vertices.windows(2) {
        let (a, b) = (w[0], w[1]);
        if x >= a.x && x <= b.x {
            if b.x == a.x {
                return b.y;
            }
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        }
    }
    vertices.last().unwrap().y
}

// Upper envelope of a point set: the best chord over every pair.
fn brute_upper_envelope(points: &[Point], x: f64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for a in points {
        for b in points {
            if a.x <= x && x <= b.x {
                let y = if b.x == a.x { a.y.max(b.y) } else { a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x) };
                best = best.max(y);
            }
        }
    }
    best
}

fn dense_grid() -> impl Iterator<Item = f64> {
    (1..=2000).map(|k| k as f64 / 2000.0)
}

#[test]
fn spec_join_meet_examples() {
    let a = CanonicalCurve::from_vertices(vec![Point::ORIGIN, Point::new(0.1, 0.9), Point::ONE]).unwrap();
    let b = CanonicalCurve::from_vertices(vec![Point::ORIGIN, Point::new(0.5, 0.95), Point::ONE]).unwrap();
    assert_eq!(compare(&a, &b), Comparison::Incomparable);

    let all: Vec<Point> = a.vertices().iter().chain(b.vertices()).copied().collect();
    let j = join(&a, &b);
    for x in dense_grid() {
        assert!((j.eval(x) - brute_upper_envelope(&all, x)).abs() < 1e-9);
    }
    // (0.5, 0.95) lies above the chord from (0.1, 0.9) to (1, 1)
    assert_eq!(j.vertices().len(), 4);

    let m = meet(&a, &b);
    for x in dense_grid() {
        let lower = interp(a.vertices(), x).min(interp(b.vertices(), x));
        assert!((m.eval(x) - lower).abs() < 1e-9);
    }
}

#[test]
fn bounds_and_identities() {
    let mut rng = seeded(17);
    let diagonal = CanonicalCurve::diagonal();
    let top = CanonicalCurve::perfect();
    for _ in 0..100 {
        let c = random_curve(&mut rng);
        assert!(dominates(&top, &c) && dominates(&c, &diagonal));
        assert!(curve_equal(&join(&c, &top), &top));
        assert!(curve_equal(&meet(&c, &diagonal), &diagonal));
        assert!(curve_equal(&join(&c, &diagonal), &c));
        assert!(curve_equal(&meet(&c, &top), &c));
    }
}

#[test]
fn null_and_perfect_systems_canonicalize_to_the_bounds() {
    let prior = Distribution::new(vec![0.3, 0.7]).unwrap();
    let null = InfoSystem::null(&prior, 5).unwrap();
    assert_eq!(canonicalize(&null).unwrap(), CanonicalCurve::diagonal());
    let star = InfoSystem::perfect(&prior).unwrap();
    assert_eq!(canonicalize(&star).unwrap(), CanonicalCurve::perfect());
    assert_eq!(reconstruct(&CanonicalCurve::perfect(), &prior).unwrap().rows(), vec![vec![0.3, 0.0], vec![0.0, 0.7]]);
}

#[test]
fn ten_observation_curves_are_strictly_concave() {
    let mut rng = seeded(23);
    for _ in 0..50 {
        let sys = gen::system(&mut rng, 2, 10);
        let c = canonicalize(&sys).unwrap();
        let slopes = c.slopes();
        assert!(slopes.windows(2).all(|w| w[0] > w[1]));
        // sorted-ratio oracle: cumulative sums in decreasing-ratio order
        let prior = sys.prior();
        let mut t: Vec<(f64, f64)> = (0..10)
            .map(|i| (sys.joint(1, i) / prior[1], sys.joint(0, i) / prior[0]))
            .collect();
        t.sort_by(|u, v| (v.1 / v.0).total_cmp(&(u.1 / u.0)));
        let mut acc = Point::ORIGIN;
        for (dx, dy) in t {
            acc = Point::new(acc.x + dx, acc.y + dy);
            assert!((c.eval(acc.x) - acc.y).abs() < 1e-9);
        }
    }
}

// Binary decision problems "act iff P(e | i) exceeds t", for a grid of t
// and for the thresholds matching each segment slope of either curve.
fn threshold_family(prior: &Distribution, curves: &[&CanonicalCurve]) -> Vec<ScoreRule> {
    let mut ts: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    for c in curves {
        for s in c.slopes() {
            if s.is_finite() && s > 0.0 {
                ts.push(s * prior[0] / (prior[1] + s * prior[0]));
            }
        }
    }
    ts.into_iter()
        .map(|t| ScoreRule::Decision(PayoffMatrix::new(vec![vec![0.0, 0.0], vec![1.0 - t, -t]]).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn idempotent_commutative_absorptive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_curve(&mut rng);
        let b = random_curve(&mut rng);
        prop_assert!(curve_equal(&join(&a, &a), &a));
        prop_assert!(curve_equal(&meet(&a, &a), &a));
        prop_assert!(curve_equal(&join(&a, &b), &join(&b, &a)));
        prop_assert!(curve_equal(&meet(&a, &b), &meet(&b, &a)));
        prop_assert!(curve_equal(&join(&a, &meet(&a, &b)), &a));
        prop_assert!(curve_equal(&meet(&a, &join(&a, &b)), &a));
    }

    #[test]
    fn associative_and_semi_distributive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_curve(&mut rng);
        let b = random_curve(&mut rng);
        let c = random_curve(&mut rng);
        prop_assert!(curve_equal(&join(&a, &join(&b, &c)), &join(&join(&a, &b), &c)));
        prop_assert!(curve_equal(&meet(&a, &meet(&b, &c)), &meet(&meet(&a, &b), &c)));
        prop_assert!(dominates(&meet(&join(&a, &b), &join(&a, &c)), &join(&a, &meet(&b, &c))));
        prop_assert!(dominates(&meet(&a, &join(&b, &c)), &join(&meet(&a, &b), &meet(&a, &c))));
    }

    #[test]
    fn consistency(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_curve(&mut rng);
        // half the time b is below a, so the equivalence is exercised both ways
        let b = if seed % 2 == 0 { meet(&a, &random_curve(&mut rng)) } else { random_curve(&mut rng) };
        let d = dominates(&a, &b);
        prop_assert_eq!(d, curve_equal(&join(&a, &b), &a));
        prop_assert_eq!(d, curve_equal(&meet(&a, &b), &b));
    }

    #[test]
    fn join_matches_brute_hull_and_meet_matches_pointwise_min(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_curve(&mut rng);
        let b = random_curve(&mut rng);
        let all: Vec<Point> = a.vertices().iter().chain(b.vertices()).copied().collect();
        let j = join(&a, &b);
        let m = meet(&a, &b);
        for x in dense_grid() {
            prop_assert!((interp(j.vertices(), x) - brute_upper_envelope(&all, x)).abs() < 1e-9);
            let lower = interp(a.vertices(), x).min(interp(b.vertices(), x));
            prop_assert!((interp(m.vertices(), x) - lower).abs() < 1e-9);
        }
    }

    #[test]
    fn round_trip(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let c = random_curve(&mut rng);
        let prior = gen::prior(&mut rng, 2, 0.05);
        let back = canonicalize(&reconstruct(&c, &prior).unwrap()).unwrap();
        prop_assert_eq!(back.vertices().len(), c.vertices().len());
        for (u, v) in back.vertices().iter().zip(c.vertices()) {
            prop_assert!((u.x - v.x).abs() <= 1e-9 && (u.y - v.y).abs() <= 1e-9);
        }
    }

    #[test]
    fn semi_cancellation_contrapositive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = random_curve(&mut rng);
        let q = random_curve(&mut rng);
        let r = random_curve(&mut rng);
        prop_assume!(!curve_equal(&q, &r));
        prop_assert!(!(curve_equal(&join(&p, &q), &join(&p, &r)) && curve_equal(&meet(&p, &q), &meet(&p, &r))));
    }

    #[test]
    fn dominance_orders_every_score(seed in any::<u64>(), n_obs in 2usize..=8, n_out in 1usize..=6) {
        let mut rng = seeded(seed);
        let p = gen::system(&mut rng, 2, n_obs);
        let q = gen::garbling(&mut rng, &p, n_out);
        let (a, b) = (canonicalize(&p).unwrap(), canonicalize(&q).unwrap());
        prop_assert!(dominates(&a, &b));
        let prior = p.prior();
        let (ra, rb) = (reconstruct(&a, &prior).unwrap(), reconstruct(&b, &prior).unwrap());
        let mut scores = vec![ScoreRule::Logarithmic, ScoreRule::Quadratic];
        scores.push(ScoreRule::Decision(gen::payoff(&mut rng, 3, 2)));
        scores.extend(threshold_family(&prior, &[&a, &b]));
        for score in &scores {
            prop_assert!(score.h_value(&ra).unwrap() >= score.h_value(&rb).unwrap() - 1e-9);
        }
    }

    #[test]
    fn incomparable_pairs_are_split_by_some_decision(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_curve(&mut rng);
        let b = random_curve(&mut rng);
        prop_assume!(compare(&a, &b) == Comparison::Incomparable);
        let prior = gen::prior(&mut rng, 2, 0.05);
        let (ra, rb) = (reconstruct(&a, &prior).unwrap(), reconstruct(&b, &prior).unwrap());
        let mut a_wins = false;
        let mut b_wins = false;
        for score in threshold_family(&prior, &[&a, &b]) {
            let diff = score.h_value(&ra).unwrap() - score.h_value(&rb).unwrap();
            a_wins |= diff > 0.0;
            b_wins |= diff < 0.0;
        }
        prop_assert!(a_wins && b_wins);
    }
}
