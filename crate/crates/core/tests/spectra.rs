use expores::mpcore::{abs, complex_f64};
use expores::spectra::{
    barrier_roots, bound_states, branch_index, compare_with_barrier, condition_argument,
    difference_estimate, energy_from_order, evaluate_condition, match_nearest, nearest_well_root,
    refine_root, sweep, well_resonances, Condition, Family, RootKind, SpectralRoot, SweepRecord, SweepTarget,
};
use expores::{Error, PrecisionContext};
use proptest::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float};

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits, 10).unwrap()
}

fn f(p: u32, s: &str) -> Float {
    Float::with_val(p, Float::parse(s).unwrap())
}

fn c(p: u32, re: &str, im: &str) -> Complex {
    Complex::with_val(p, (f(p, re), f(p, im)))
}

fn dist(a: &Complex, b: &Complex) -> f64 {
    abs(&Complex::with_val(a.prec().0, a - b)).to_f64()
}

#[test]
fn energy_from_order_examples() {
    let p = 128;
    let e = energy_from_order(&c(p, "0", "2"));
    assert_eq!(e, c(p, "1", "0"));
    let e = energy_from_order(&c(p, "0.5", "0"));
    assert_eq!(e, c(p, "-0.0625", "0"));
    let e = energy_from_order(&c(p, "-1.743166615207400", "0.281413275691191"));
    assert!(dist(&e, &c(p, "-0.73985", "0.2452")) < 1e-4, "{e}");
}

#[test]
fn barrier_roots_small_lambda() {
    let cx = ctx(30);
    let p = cx.prec();
    let roots = barrier_roots(&f(p, "0.5"), 4, &cx).unwrap();
    let want = [
        c(p, "-1.743166615207401927", "-0.281413275691190630"),
        c(p, "-3.014217627728968", "0"),
        c(p, "-3.999436029270236", "0"),
        c(p, "-5.000013324457121", "0"),
    ];
    for (r, w) in roots.iter().zip(&want) {
        assert!(dist(&r.order, w) < 1e-14, "{} vs {}", r.order, w);
        assert_eq!(r.kind, RootKind::Barrier);
        assert!(r.residual < 1e-24);
    }
    assert!(!roots[0].is_virtual());
    assert!(roots[1..].iter().all(SpectralRoot::is_virtual));
    assert_eq!(roots.iter().map(|r| r.n).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
}

#[test]
fn barrier_roots_reported_in_lower_half_plane() {
    let cx = ctx(30);
    let p = cx.prec();
    let roots = barrier_roots(&f(p, "2"), 3, &cx).unwrap();
    assert!(dist(&roots[0].order, &c(p, "-2.19996055822965", "-1.47382974508356")) < 1e-13);
    for r in &roots {
        assert!(*r.order.imag() <= 0);
        assert!(*r.order.real() < 0);
    }
}

#[test]
fn large_lambda_barrier_contains_printed_root() {
    let cx = ctx(30);
    let p = cx.prec();
    let roots = barrier_roots(&f(p, "100"), 4, &cx).unwrap();
    let printed = c(p, "-4.32572713644441", "-17.46003535736490");
    assert!(roots.iter().any(|r| dist(&r.order, &printed) < 1e-13));
    // ordering by |μ|
    for w in roots.windows(2) {
        assert!(abs(&w[0].order) <= abs(&w[1].order));
    }
}

#[test]
fn bound_state_energies() {
    let cx = ctx(40);
    let p = cx.prec();
    let roots = bound_states(&f(p, "10"), 3, &cx).unwrap();
    let want = ["24.095880341888706123", "39.078924487590608756", "54.342383405484864190"];
    for (r, w) in roots.iter().zip(want) {
        assert!(r.order.real().is_zero());
        assert!(r.energy.imag().clone().abs() < 1e-40);
        let d = Float::with_val(p, r.energy.real() - &f(p, w)).abs();
        assert!(d < 1e-18, "{} vs {w}", r.energy.real());
    }
    let roots = bound_states(&f(p, "0.5"), 2, &cx).unwrap();
    let want = ["3.2292159472536048534", "7.0837240758343799367"];
    for (r, w) in roots.iter().zip(want) {
        let d = Float::with_val(p, r.energy.real() - &f(p, w)).abs();
        assert!(d < 1e-18, "{} vs {w}", r.energy.real());
    }
}

#[test]
fn bound_states_stable_under_precision_doubling() {
    let lo = ctx(30);
    let hi = ctx(60);
    let a = bound_states(&f(lo.prec(), "2"), 2, &lo).unwrap();
    let b = bound_states(&f(hi.prec(), "2"), 2, &hi).unwrap();
    for (x, y) in a.iter().zip(&b) {
        let d = dist(&Complex::with_val(hi.prec(), &x.energy), &y.energy);
        assert!(d < 1e-24 * abs(&y.energy).to_f64(), "{} vs {} d={d}", x.energy, y.energy);
    }
}

#[test]
fn well_resonances_first_sheet() {
    let cx = ctx(30);
    let p = cx.prec();
    let roots = well_resonances(&f(p, "0.5"), 1, 4, &cx).unwrap();
    let want = [
        c(p, "-1.708889402333516342", "-0.313848239102419043"),
        c(p, "-2.9077344125896275", "0.6300063966559969"),
        c(p, "-3.8589352772343921", "1.4751595201936040"),
    ];
    for (r, w) in roots.iter().zip(&want) {
        assert!(dist(&r.order, w) < 1e-14, "{} vs {w}", r.order);
        assert_eq!(r.family, Some(Family::First));
        assert_eq!(r.m, 1);
    }
    // the printed growing-state value is the conjugate sheet
    let conj = well_resonances(&f(p, "0.5"), -1, 1, &cx).unwrap();
    assert!(dist(&conj[0].order, &c(p, "-1.708889402333520", "0.313848239102419")) < 5e-15);
}

#[test]
fn second_kind_roots_near_fractions() {
    let cx = ctx(30);
    let p = cx.prec();
    let roots = well_resonances(&f(p, "10"), 2, 2, &cx).unwrap();
    assert_eq!(roots[0].family, Some(Family::Second));
    let e = &roots[0].energy;
    assert!(dist(e, &c(p, "-0.0625", "0")) < 1e-6, "{e}");
    assert!(dist(&roots[1].order, &c(p, "-1.5", "0")) < 1e-5);
}

#[test]
fn well_roots_certified_and_symmetric() {
    let cx = ctx(30);
    let p = cx.prec();
    let lambda = f(p, "2");
    let x = condition_argument(&lambda, p);
    for m in [1i64, 3] {
        let roots = well_resonances(&lambda, m, 4, &cx).unwrap();
        for r in &roots {
            assert!(r.residual < cx.residual_tolerance());
            let neg = Complex::with_val(p, -&r.order);
            for cond in [Condition::Well { m }, Condition::WellCscForm { m: -m }] {
                let v = evaluate_condition(cond, &x, &neg, &cx, false).unwrap();
                assert!(v.relative_residual() < 1e-22, "m={m} {cond:?}");
            }
        }
        let conj = well_resonances(&lambda, -m, 4, &cx).unwrap();
        for (a, b) in roots.iter().zip(&conj) {
            assert_eq!(Complex::with_val(p, a.order.conj_ref()), b.order);
            assert_eq!(b.m, -m);
        }
    }
}

#[test]
fn well_rejects_sheet_zero() {
    let cx = ctx(30);
    let err = well_resonances(&f(cx.prec(), "1"), 0, 1, &cx).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
    let err = barrier_roots(&f(cx.prec(), "-1"), 1, &cx).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
    let err = barrier_roots(&f(cx.prec(), "1"), 0, &cx).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
}

#[test]
fn nearest_root_approach_is_monotone() {
    let cx = ctx(80);
    let p = cx.prec();
    let lambda = f(p, "10");
    let mu = &barrier_roots(&lambda, 1, &cx).unwrap()[0];
    let mut prev = 0.0;
    for m in 1..=5 {
        let rec = compare_with_barrier(mu, m, &cx).unwrap();
        assert_eq!(rec.n, 0);
        if m > 1 {
            let step = rec.log_diff_order - prev;
            assert!((step - 12.49).abs() < 0.1, "m={m} step={step}");
        }
        prev = rec.log_diff_order;
    }
}

#[test]
fn difference_estimate_tracks_direct_difference() {
    let cx = ctx(80);
    let p = cx.prec();
    let lambda = f(p, "10");
    let mu = &barrier_roots(&lambda, 1, &cx).unwrap()[0];
    for m in 1..=4 {
        let nu = nearest_well_root(&lambda, m, &mu.order, &cx).unwrap();
        let direct = Complex::with_val(p, &nu.order - &mu.order);
        let est = difference_estimate(&mu.order, &lambda, m, &cx).unwrap();
        let rel = dist(&est, &direct) / abs(&direct).to_f64();
        assert!(rel < 0.1, "m={m} rel={rel}");
        if m == 1 {
            // as an energy difference, Δε ≈ -μ Δν / 2
            let de = Complex::with_val(p, &est * &mu.order) / 2u32;
            let level = -abs(&de).to_f64().log10();
            assert!((level - 12.39).abs() < 0.2, "{level}");
        }
    }
}

#[test]
fn match_nearest_behaviour() {
    let cx = ctx(30);
    let p = cx.prec();
    let lambda = f(p, "0.5");
    let mu = barrier_roots(&lambda, 1, &cx).unwrap().remove(0);
    let well = well_resonances(&lambda, 1, 3, &cx).unwrap();
    let rec = match_nearest(&well[..1], &mu).unwrap();
    assert_eq!(rec.nu_star, well[0].order);
    let rec = match_nearest(&well, &mu).unwrap();
    assert_eq!(rec.nu_star, well[0].order);
    assert!(match_nearest(&[], &mu).is_none());

    // equidistant candidates: the smaller |ν| wins
    let make = |re: &str| SpectralRoot {
        order: c(p, re, "0"),
        ..well[0].clone()
    };
    let centre = SpectralRoot {
        order: c(p, "-2", "0"),
        ..mu.clone()
    };
    let rec = match_nearest(&[make("-3"), make("-1")], &centre).unwrap();
    assert_eq!(rec.nu_star, c(p, "-1", "0"));
}

#[test]
fn m_cascade_converges_to_barrier_root() {
    let cx = ctx(30);
    let p = cx.prec();
    let lambda = f(p, "0.5");
    let mu = &barrier_roots(&lambda, 1, &cx).unwrap()[0];
    let rec = compare_with_barrier(mu, 20, &cx).unwrap();
    assert!(rec.log_diff_order >= 15.0, "{}", rec.log_diff_order);
}

#[test]
fn branch_index_examples() {
    let p = 128;
    let pi = Float::with_val(p, Constant::Pi);
    let half_pi = Float::with_val(p, &pi / 2u32);
    let zero = Float::new(p);
    assert_eq!(branch_index(&f(p, "5"), &zero), 0);
    let two_pi = Float::with_val(p, &pi * 2u32);
    assert_eq!(branch_index(&two_pi, &half_pi), -1);
    let three_pi = Float::with_val(p, &pi * 3u32);
    assert_eq!(branch_index(&three_pi, &-half_pi), 2);
}

proptest! {
    #[test]
    fn branch_index_lands_in_interval(rho in 0.0f64..200.0, theta in -1.5f64..1.5) {
        let p = 128;
        let m = branch_index(&Float::with_val(p, rho), &Float::with_val(p, theta));
        let arg = rho * theta.sin() / 2.0 + m as f64 * std::f64::consts::PI;
        prop_assert!(arg > -std::f64::consts::FRAC_PI_2 - 1e-9);
        prop_assert!(arg <= std::f64::consts::FRAC_PI_2 + 1e-9);
    }
}

#[test]
fn refine_root_recovers_bound_state() {
    let cx = ctx(30);
    let p = cx.prec();
    let lambda = f(p, "10");
    let r = refine_root(RootKind::Bound, &lambda, 0, 0, &complex_f64(p, 0.0, 9.8), &cx).unwrap();
    let d = Float::with_val(p, r.energy.real() - &f(p, "24.095880341888706123")).abs();
    assert!(d < 1e-18);
}

#[test]
fn one_point_sweep_matches_direct_solve() {
    let cx = ctx(30);
    let p = cx.prec();
    let lambda = f(p, "2");
    let records = sweep(&lambda, &lambda, 1, &[SweepTarget::Well(2)], 3, &cx).unwrap();
    let direct = well_resonances(&lambda, 2, 3, &cx).unwrap();
    assert_eq!(records.len(), 3);
    for (r, d) in records.iter().zip(&direct) {
        assert_eq!(r.root.order, d.order);
        assert!(!r.coalescence);
    }
}

#[test]
fn small_lambda_barrier_roots_approach_negative_integers() {
    let cx = ctx(30);
    let p = cx.prec();
    let records = sweep(&f(p, "0.001"), &f(p, "0.01"), 3, &[SweepTarget::Barrier], 3, &cx).unwrap();
    for r in records.iter().filter(|r| r.root.lambda == f(p, "0.001")) {
        let re = r.root.order.real().to_f64();
        assert!((re - re.round()).abs() < 0.01 && re.round() < 0.0, "{re}");
        assert!(r.root.order.imag().is_zero());
    }
}

#[test]
fn second_kind_roots_trend_to_half_integers() {
    let cx = ctx(30);
    let p = cx.prec();
    let records = sweep(&f(p, "0.1"), &f(p, "12"), 12, &[SweepTarget::Well(2)], 4, &cx).unwrap();
    let chains: std::collections::BTreeSet<usize> = records.iter().map(|r| r.root.n).collect();
    let half_distance = |z: &Complex| {
        let re = z.real().to_f64();
        (re - (re - 0.5).round() - 0.5).hypot(z.imag().to_f64())
    };
    let mut trending = 0;
    for n in &chains {
        let chain: Vec<_> = records.iter().filter(|r| r.root.n == *n).collect();
        let first = half_distance(&chain.first().unwrap().root.order);
        let last = half_distance(&chain.last().unwrap().root.order);
        if last < 1e-3 && last < first {
            trending += 1;
        }
    }
    assert!(trending >= 2, "{trending} of {} chains", chains.len());
}

#[test]
fn merging_virtual_states_become_one_resonance_chain() {
    let cx = ctx(30);
    let p = cx.prec();
    let records = sweep(&f(p, "0.1"), &f(p, "1"), 10, &[SweepTarget::Barrier], 2, &cx).unwrap();
    let chain = |n: usize| -> Vec<&SweepRecord> { records.iter().filter(|r| r.root.n == n).collect() };
    let (first, second) = (chain(0), chain(1));
    assert_eq!(first.len(), 10);
    assert!(second.len() < first.len(), "partner chain must end at the merge");
    assert_eq!(first.iter().filter(|r| r.coalescence).count(), 1);
    // no jumps to distant virtual states: each step moves the root a little
    for pair in first.windows(2) {
        let d = Complex::with_val(p, &pair[1].root.order - &pair[0].root.order);
        assert!(abs(&d).to_f64() < 0.5);
    }
    let last = &first.last().unwrap().root.order;
    assert!(*last.imag() < 0 && !last.imag().is_zero());
}
