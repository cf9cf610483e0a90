use expores::bessel::{
    asymptotic_i, asymptotic_k, bessel_i, bessel_i_dnu, bessel_i_dx, bessel_k, bessel_k_dnu,
    bessel_k_dx, continue_i, continue_k,
};
use expores::mpcore::{abs, complex_f64};
use rug::ops::Pow;
use expores::PrecisionContext;
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

fn rel_err(a: &Complex, b: &Complex) -> f64 {
    let d = abs(&Complex::with_val(a.prec().0, a - b));
    (d / abs(b)).to_f64()
}

fn two_sqrt(p: u32, lambda: &str) -> Float {
    f(p, lambda).sqrt() * 2u32
}

#[test]
fn half_order_against_reference_series() {
    let cx = ctx(40);
    let p = cx.prec();
    let v = bessel_i(&c(p, "0.5", "0"), &f(p, "1"), &cx).unwrap();
    let want = c(p, "0.937674888245487646717262884391393367831789153", "0");
    assert!(rel_err(&v, &want) < 1e-40);
}

#[test]
fn complex_order_i_reference() {
    let cx = ctx(40);
    let p = cx.prec();
    let v = bessel_i(&c(p, "-2", "1.5"), &f(p, "2"), &cx).unwrap();
    let want = c(
        p,
        "-5.71491323154799185796850865096607859873137509",
        "-1.24128222877443881936196906350620355316072906",
    );
    assert!(rel_err(&v, &want) < 1e-40);
}

#[test]
fn conjugate_order_gives_conjugate_value() {
    let cx = ctx(40);
    let p = cx.prec();
    let nu = c(p, "-2", "1.5");
    let x = f(p, "2");
    let a = bessel_i(&nu, &x, &cx).unwrap();
    let b = bessel_i(&nu.clone().conj(), &x, &cx).unwrap();
    assert_eq!(a.conj(), b);
    let a = bessel_k(&nu, &x, &cx).unwrap();
    let b = bessel_k(&nu.clone().conj(), &x, &cx).unwrap();
    assert!(rel_err(&a.conj(), &b) < 1e-40);
}

#[test]
fn wronskian_on_grid() {
    let cx = ctx(40);
    let p = cx.prec();
    let tol = 1e-36;
    let mut count = 0;
    for i in 0..10 {
        for j in 0..5 {
            let nu = complex_f64(p, -2.45 + 0.53 * i as f64, -1.3 + 0.71 * j as f64);
            let x = Float::with_val(p, 0.4 + 0.9 * (i * 5 + j) as f64 / 7.0);
            let iv = bessel_i(&nu, &x, &cx).unwrap();
            let kv = bessel_k(&nu, &x, &cx).unwrap();
            let di = bessel_i_dx(&nu, &x, &cx).unwrap();
            let dk = bessel_k_dx(&nu, &x, &cx).unwrap();
            let w = Complex::with_val(p, &iv * &dk) - Complex::with_val(p, &di * &kv)
                + Float::with_val(p, x.recip_ref());
            assert!(abs(&w).to_f64() < tol, "nu={nu} x={x} W+1/x={w}");
            count += 1;
        }
    }
    assert_eq!(count, 50);
}

#[test]
fn k_near_integer_order_is_stable() {
    let lo = ctx(40);
    let hi = ctx(80);
    let nu = "0.9999999";
    let a = bessel_k(&c(lo.prec(), nu, "0"), &f(lo.prec(), "1"), &lo).unwrap();
    let b = bessel_k(&c(hi.prec(), nu, "0"), &f(hi.prec(), "1"), &hi).unwrap();
    assert!(rel_err(&a, &b) < 1e-40);
    let want = c(hi.prec(), "0.601907188094794154040998952498519709968419868", "0");
    assert!(rel_err(&b, &want) < 1e-44);
}

#[test]
fn order_derivatives_match_reference() {
    let cx = ctx(40);
    let p = cx.prec();
    let nu = c(p, "-1.7", "0.3");
    let x = f(p, "1.4");
    let di = bessel_i_dnu(&nu, &x, &cx).unwrap();
    let want = c(
        p,
        "0.275746979220254025309515422521493907106751546",
        "1.28667797997245393394280569817935066293230009",
    );
    assert!(rel_err(&di, &want) < 1e-39);
    let dk = bessel_k_dnu(&nu, &x, &cx).unwrap();
    let want = c(
        p,
        "-0.423788420154725607786871331303234881544737828",
        "0.186217966991925322531044117679326545038238439",
    );
    assert!(rel_err(&dk, &want) < 1e-39);
}

#[test]
fn order_derivative_against_central_difference() {
    let cx = ctx(40);
    let fine = ctx(120);
    let p = fine.prec();
    let nu = c(p, "-1.7", "0.3");
    let x = f(p, "1.4");
    let h = Float::with_val(p, 10).pow(-13i32);
    let up = Complex::with_val(p, &nu + &h);
    let down = Complex::with_val(p, &nu - &h);
    let fd = (bessel_i(&up, &x, &fine).unwrap() - bessel_i(&down, &x, &fine).unwrap())
        / Float::with_val(p, &h * 2u32);
    let exact = bessel_i_dnu(&c(cx.prec(), "-1.7", "0.3"), &f(cx.prec(), "1.4"), &cx).unwrap();
    assert!(rel_err(&exact, &Complex::with_val(cx.prec(), fd)) < 1e-20);
}

#[test]
fn antisymmetric_combination_derivative() {
    // Where I_ν = I_{-ν} (ν = 0), d/dν[I_ν - I_{-ν}] = 2 ∂I/∂ν.
    let cx = ctx(40);
    let p = cx.prec();
    let nu = c(p, "0", "0");
    let x = f(p, "1.1");
    let d = bessel_i_dnu(&nu, &x, &cx).unwrap();
    let neg = bessel_i_dnu(&Complex::with_val(p, -&nu), &x, &cx).unwrap();
    let combined = Complex::with_val(p, &d + &neg);
    let twice = Complex::with_val(p, &d * 2u32);
    assert!(rel_err(&combined, &twice) < 1e-40);
}

#[test]
fn barrier_resonance_is_zero_of_i() {
    let cx = ctx(30);
    let p = cx.prec();
    let mu = c(p, "-1.743166615207400", "0.281413275691191");
    let v = bessel_i(&mu, &two_sqrt(p, "0.5"), &cx).unwrap();
    assert!(abs(&v).to_f64() < 1e-14, "{v}");
}

#[test]
fn bound_state_is_zero_of_k() {
    let cx = ctx(30);
    let p = cx.prec();
    let eps = f(p, "24.095880341888706123");
    let nu = Complex::with_val(p, (0, Float::with_val(p, eps * 4u32).sqrt()));
    let v = bessel_k(&nu, &two_sqrt(p, "10"), &cx).unwrap();
    assert!(abs(&v).to_f64() < 1e-14, "{v}");
}

#[test]
fn continuation_reduces_at_zero_sheet() {
    let cx = ctx(40);
    let p = cx.prec();
    let nu = c(p, "0.3", "0.2");
    let s = f(p, "1.7");
    assert_eq!(
        continue_k(&nu, &s, 0, &cx).unwrap(),
        bessel_k(&nu, &s, &cx).unwrap()
    );
    let a = continue_i(&nu, &s, 1, &cx).unwrap();
    let b = continue_i(&nu, &s, -1, &cx).unwrap();
    let i = bessel_i(&nu, &s, &cx).unwrap();
    assert!(rel_err(&(a * b), &i.square()) < 1e-39);
}

#[test]
fn continuation_matches_explicit_branch_series() {
    let cx = ctx(40);
    let p = cx.prec();
    let cases = [
        ("0.3", "0.2", "1.7", -1, "0.4127309128036270151387812937933288202825", "5.640821421428133404046313676374181671708"),
        ("0.3", "0.2", "1.7", 1, "-0.1706028059821706988052305464421436230884", "-5.81568643279059620041506471781045734848"),
        ("0.3", "0.2", "1.7", 2, "-6.71811681745751821474457032486957487387", "-8.050947872104114051757604887852065111349"),
        ("-1.2", "0.7", "2.5", -1, "-3.71437733939981114527318276545026247485", "6.941608756387479948329054359759712969012"),
        ("-1.2", "0.7", "2.5", 1, "3.085666007823091471544748164238437317287", "-7.159117537929646707978601447928299380178"),
        ("-1.2", "0.7", "2.5", 2, "-60.33431924995956796263279943188162654601", "36.735021810937238599627807087990787406"),
        ("2.4", "-1.1", "0.8", -1, "102.6563424921884349280653786764883765757", "-66.67391242216880177794180043070937742944"),
        ("2.4", "-1.1", "0.8", 1, "-0.003180957975261003113685324216242597935775", "0.08403750819266993326331657622008097953655"),
        ("2.4", "-1.1", "0.8", 2, "-1.564510644880629125453831943960632882357", "4.462428627004436657380730193699695464577"),
    ];
    for (re, im, s, m, wr, wi) in cases {
        let v = continue_k(&c(p, re, im), &f(p, s), m, &cx).unwrap();
        let want = c(p, wr, wi);
        assert!(rel_err(&v, &want) < 1e-37, "nu={re}+{im}i s={s} m={m}: {v}");
    }
}

#[test]
fn continuation_steps_compose() {
    // K(z e^{πi}) = e^{-νπi} K(z) - πi I(z), applied to z = s e^{(m-1)πi}.
    let cx = ctx(40);
    let p = cx.prec();
    let nu = c(p, "-1.2", "0.7");
    let s = f(p, "2.5");
    let pi = Float::with_val(p, Constant::Pi);
    let phase = Complex::with_val(p, &nu * &pi).mul_i(true).exp();
    for m in -2..=3i64 {
        let prev_k = continue_k(&nu, &s, m - 1, &cx).unwrap();
        let prev_i = continue_i(&nu, &s, m - 1, &cx).unwrap();
        let step = Complex::with_val(p, &phase * &prev_k)
            - Complex::with_val(p, &prev_i * &pi).mul_i(false);
        let direct = continue_k(&nu, &s, m, &cx).unwrap();
        assert!(rel_err(&step, &direct) < 1e-38, "m={m}");
    }
}

#[test]
fn k_large_argument_reference() {
    let cx = ctx(40);
    let p = cx.prec();
    let v = bessel_k(&c(p, "1.3", "0.4"), &f(p, "25"), &cx).unwrap();
    let want = c(
        p,
        "0.00000000000356895419701723091054163856091353777276855076",
        "0.000000000000072793149777845229015973954376937310259369877",
    );
    assert!(rel_err(&v, &want) < 1e-39);
}

#[test]
fn series_and_asymptotics_overlap() {
    let cx = ctx(40);
    let p = cx.prec();
    for (nr, ni) in [(0.5, 0.0), (1.3, 0.4), (-2.2, 1.7), (0.1, -2.9)] {
        for x in [20.0f64, 27.5, 40.0] {
            let nu = complex_f64(p, nr, ni);
            let xf = Float::with_val(p, x);
            let s = Complex::with_val(p, &xf);
            let k = bessel_k(&nu, &xf, &cx).unwrap();
            let ak = asymptotic_k(&nu, &s, 12).unwrap();
            let dk = abs(&Complex::with_val(p, &k - &ak.value));
            assert!(dk <= Float::with_val(p, &ak.error_estimate * 2u32) + 1e-45 * abs(&k).to_f64());
            let i = bessel_i(&nu, &xf, &cx).unwrap();
            let ai = asymptotic_i(&nu, &s, 12).unwrap();
            let di = abs(&Complex::with_val(p, &i - &ai.value));
            // the recessive e^{-x} part of I is absent from its expansion
            let recessive = abs(&i).to_f64() * (-2.0 * x).exp();
            assert!(di.to_f64() <= 2.0 * ai.error_estimate.to_f64() + 2.0 * recessive);
        }
    }
}

#[test]
fn first_term_asymptotic_k_within_estimate() {
    let cx = ctx(40);
    let p = cx.prec();
    let nu = complex_f64(p, 0.5, 0.0);
    let x = Float::with_val(p, 30);
    let k = bessel_k(&nu, &x, &cx).unwrap();
    let a = asymptotic_k(&nu, &Complex::with_val(p, &x), 1).unwrap();
    let d = abs(&Complex::with_val(p, &k - &a.value)) / abs(&k);
    assert!(d.to_f64() <= a.error_estimate.to_f64() + 1e-38);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_symmetry(re in -3.0f64..3.0, im in -3.0f64..3.0, x in 0.2f64..8.0) {
        let cx = ctx(35);
        let p = cx.prec();
        let nu = complex_f64(p, re, im);
        let xf = Float::with_val(p, x);
        let a = bessel_i(&nu, &xf, &cx).unwrap();
        let b = bessel_i(&nu.clone().conj(), &xf, &cx).unwrap();
        prop_assert!(rel_err(&a.conj(), &b) < 1e-34);
    }

    #[test]
    fn wronskian_random(re in -3.0f64..3.0, im in -2.5f64..2.5, x in 0.3f64..6.0) {
        let cx = ctx(35);
        let p = cx.prec();
        let nu = complex_f64(p, re, im);
        prop_assume!((re - re.round()).abs() > 1e-6 || im.abs() > 1e-6);
        let xf = Float::with_val(p, x);
        let iv = bessel_i(&nu, &xf, &cx).unwrap();
        let kv = bessel_k(&nu, &xf, &cx).unwrap();
        let di = bessel_i_dx(&nu, &xf, &cx).unwrap();
        let dk = bessel_k_dx(&nu, &xf, &cx).unwrap();
        let w = Complex::with_val(p, &iv * &dk) - Complex::with_val(p, &di * &kv)
            + Float::with_val(p, xf.recip_ref());
        prop_assert!(abs(&w).to_f64() < 1e-31 * x.recip().max(1.0));
    }
}
