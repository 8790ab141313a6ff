//! Acceptance gate. Run with
//! `cargo test -p qsr-core --test acceptance -- --nocapture --test-threads=1`
//! to see one PASS/FAIL line per criterion.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsr_core::experiment::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use qsr_core::experiment::{
    detect_sr_with, run_sweep, Grid, ModelSpec, NoiseAxis, Smoothing, SweepResult, SweepSpec,
};
use qsr_core::info::{analytic_mi, estimate_mi};
use qsr_core::noise::{ChannelNoise, Spread};
use qsr_core::stats::{empirical_cf, ks_p_value, ks_statistic};
use qsr_core::{basic_interval, cvqkd_interval, BasicModelParams, CvqkdParams, StableParams};

fn report(n: u32, name: &str, pass: bool, detail: impl AsRef<str>) {
    println!(
        "criterion {n} [{}] {name}: {}",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    assert!(pass, "criterion {n} failed: {}", detail.as_ref());
}

fn figure_spec() -> SweepSpec {
    SweepSpec {
        noise_axis: NoiseAxis {
            spread: Spread::Std,
            values: Grid::linspace(0.01, 3.0, 25),
        },
        r_values: Grid::linspace(0.0, 1.5, 10),
        trials_per_run: 10_000,
        runs: 100,
        seed: 20_240_501,
        smoothing: Smoothing::None,
    }
}

fn figure_one_model() -> ModelSpec {
    ModelSpec::Basic(BasicModelParams {
        alpha_x: 1.1,
        theta: 1.6,
        r: 0.0,
        eta: 1.0,
        channel: ChannelNoise::gaussian(0.0, 1.0).unwrap(),
        p_s1: 0.5,
    })
}

fn figure_one() -> &'static SweepResult {
    static RESULT: OnceLock<SweepResult> = OnceLock::new();
    RESULT.get_or_init(|| run_sweep(&figure_spec(), &figure_one_model()).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

#[test]
fn criterion_1_forbidden_intervals() {
    let b = basic_interval(1.1, 1.6);
    let c = cvqkd_interval(1.1, 1.6);
    let pass = b.intervals.len() == 1
        && close(b.intervals[0].lower, 0.5)
        && close(b.intervals[0].upper, 2.7)
        && c.intervals.len() == 2
        && close(c.intervals[0].lower, -2.7)
        && close(c.intervals[0].upper, -0.5)
        && close(c.intervals[1].lower, 0.5)
        && close(c.intervals[1].upper, 2.7);
    let show = |f: &qsr_core::interval::ForbiddenIntervals| {
        f.intervals
            .iter()
            .map(|i| format!("({:.12}, {:.12})", i.lower, i.upper))
            .collect::<Vec<_>>()
            .join(" u ")
    };
    report(
        1,
        "forbidden intervals",
        pass,
        format!("basic {}, cvqkd {}", show(&b), show(&c)),
    );
}

#[test]
fn criterion_2_figure_one_surface() {
    let res = figure_one();
    let top = res.r_values.len() - 1;
    let (mi, se) = res.profile(top);
    let sr = detect_sr_with(&mi, &se, 0.05).unwrap();
    let predicted = figure_one_model().verdict().sr_predicted;
    let pass = sr.detected() && mi[0] < 0.02 && predicted;
    report(
        2,
        "figure 1 reproduction",
        pass,
        format!(
            "r = {}: peak {:.4} bits at sigma = {:.3} (rise {:.4}/{:.4}), MI(sigma = 0.01) = {:.5}",
            res.r_values[top],
            sr.peak_mi,
            res.noise_values[sr.peak_index],
            sr.rise_left,
            sr.rise_right,
            mi[0]
        ),
    );
}

#[test]
fn criterion_3_figure_two_surface() {
    let model = ModelSpec::Cvqkd(CvqkdParams {
        alpha: 1.1,
        theta: 1.6,
        r: 0.0,
        gain: 1.0,
        eta_e: 1.0,
        eta_b: 1.0,
        channel: ChannelNoise::cauchy(0.0, 1.0).unwrap(),
        p_s1: 0.5,
    });
    let mut spec = figure_spec();
    spec.noise_axis.spread = Spread::Dispersion;
    let res = run_sweep(&spec, &model).unwrap();
    let top = res.r_values.len() - 1;
    let (mi, se) = res.profile(top);
    let sr = detect_sr_with(&mi, &se, 0.01).unwrap();
    report(
        3,
        "figure 2 reproduction",
        sr.detected() && model.verdict().sr_predicted,
        format!(
            "r = {}: peak {:.4} bits at gamma = {:.3} (rise {:.4}/{:.4})",
            res.r_values[top],
            sr.peak_mi,
            res.noise_values[sr.peak_index],
            sr.rise_left,
            sr.rise_right
        ),
    );
}

fn suites(n: u32, name: &str, which: &[Suite]) {
    let reports: Vec<SuiteReport> = which
        .iter()
        .map(|&s| run_suite(s, &SuiteConfig::default()).unwrap())
        .collect();
    let pass = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| match r.first_failure() {
            None => format!("{}: {} checks ok", r.suite, r.checks),
            Some(f) => format!(
                "{}: {} of {} failed, first: {} / {:?}: {} ({})",
                r.suite,
                r.failures.len(),
                r.checks,
                f.case,
                f.family,
                f.detail,
                serde_json::to_string(&f.model).unwrap()
            ),
        })
        .collect::<Vec<_>>()
        .join("; ");
    report(n, name, pass, detail);
}

#[test]
fn criterion_4_basic_limit_suite() {
    suites(
        4,
        "basic-model limit suite",
        &[Suite::Theorem1Finite, Suite::Theorem1Stable],
    );
}

#[test]
fn criterion_5_cvqkd_limit_suite() {
    suites(
        5,
        "key-distribution limit suite",
        &[Suite::Theorem2Finite, Suite::Theorem2Stable],
    );
}

#[test]
fn criterion_6_chebyshev_bounds() {
    suites(6, "Chebyshev bounds", &[Suite::Chebyshev]);
}

#[test]
fn criterion_7_monte_carlo_matches_analytic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut worst_model = None;
    for i in 0..50 {
        let alpha = rng.random_range(0.3..1.5);
        let theta = rng.random_range(0.2..2.0);
        let r = rng.random_range(0.0..2.0);
        let channel =
            ChannelNoise::gaussian(rng.random_range(-2.0..2.0), rng.random_range(0.05..1.5))
                .unwrap();
        let model = if i % 2 == 0 {
            ModelSpec::Basic(BasicModelParams {
                alpha_x: alpha,
                theta,
                r,
                eta: rng.random_range(0.5..1.0),
                channel,
                p_s1: 0.5,
            })
        } else {
            ModelSpec::Cvqkd(CvqkdParams {
                alpha,
                theta,
                r,
                gain: rng.random_range(1.0..1.5),
                eta_e: rng.random_range(0.5..1.0),
                eta_b: rng.random_range(0.5..1.0),
                channel,
                p_s1: 0.5,
            })
        };
        let exact = analytic_mi(&model.transition().unwrap(), 0.5).unwrap();
        let counts = model.simulator().unwrap().simulate(1_000_000, &mut rng);
        let est = estimate_mi(&counts).unwrap();
        if (est - exact).abs() > worst {
            worst = (est - exact).abs();
            worst_model = Some(model);
        }
    }
    report(
        7,
        "Monte Carlo vs analytic MI",
        worst < 0.005,
        format!(
            "max |estimate - analytic| = {worst:.2e} bits over 50 sets (worst {})",
            serde_json::to_string(&worst_model).unwrap()
        ),
    );
}

#[test]
fn criterion_8_stable_samplers() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 1_000_000;
    let mut lines = Vec::new();
    let mut pass = true;
    for law in [
        StableParams::gaussian(0.3, 0.8).unwrap(),
        StableParams::cauchy(-0.2, 0.7).unwrap(),
    ] {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.sample(law)).collect();
        let d = ks_statistic(&mut xs, |x| law.closed_form_cdf(x).unwrap());
        let p = ks_p_value(d, n);
        pass &= p > 0.01;
        lines.push(format!("alpha {} KS p = {p:.3}", law.alpha));
    }
    for (alpha, beta) in [(0.8, 0.5), (1.5, -0.7)] {
        let law = StableParams::new(alpha, beta, 0.6, 0.25).unwrap();
        let xs: Vec<f64> = (0..n).map(|_| rng.sample(law)).collect();
        let mut worst: f64 = 0.0;
        for w in [0.1, 0.3, 0.7, 1.2, 2.0] {
            let (ecf, se_re, se_im) = empirical_cf(&xs, w);
            let cf = law.cf(w);
            worst = worst
                .max((ecf.re - cf.re).abs() / se_re)
                .max((ecf.im - cf.im).abs() / se_im);
        }
        pass &= worst < 3.0;
        lines.push(format!("alpha {alpha} ECF max deviation {worst:.2} SE"));
    }
    report(8, "stable samplers", pass, lines.join(", "));
}

#[test]
fn criterion_9_determinism() {
    let first = figure_one().to_csv();
    let again = run_sweep(&figure_spec(), &figure_one_model())
        .unwrap()
        .to_csv();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let threaded = pool
        .install(|| run_sweep(&figure_spec(), &figure_one_model()))
        .unwrap()
        .to_csv();
    report(
        9,
        "determinism",
        first == again && first == threaded,
        format!(
            "{} CSV bytes identical across reruns and thread counts",
            first.len()
        ),
    );
}
