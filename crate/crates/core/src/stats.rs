//! Goodness-of-fit helpers used to check samplers against their laws.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
/// Sorts `samples` in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic p-value of a KS statistic `d` at sample size `n`.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Small-argument form of the Kolmogorov distribution.
        let mut cdf = 0.0;
        for j in 1..=20 {
            let m = (2 * j - 1) as f64;
            cdf += (-m * m * PI * PI / (8.0 * lambda * lambda)).exp();
        }
        cdf *= (2.0 * PI).sqrt() / lambda;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let term = 2.0 * sign * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Empirical characteristic function at `omega` with the standard error of
/// its real and imaginary parts.
pub fn empirical_cf(samples: &[f64], omega: f64) -> (Complex64, f64, f64) {
    let n = samples.len() as f64;
    let (mut c, mut s, mut c2, mut s2) = (0.0, 0.0, 0.0, 0.0);
    for &x in samples {
        let (si, co) = (omega * x).sin_cos();
        c += co;
        s += si;
        c2 += co * co;
        s2 += si * si;
    }
    let (mc, ms) = (c / n, s / n);
    let se_re = ((c2 / n - mc * mc).max(0.0) / n).sqrt();
    let se_im = ((s2 / n - ms * ms).max(0.0) / n).sqrt();
    (Complex64::new(mc, ms), se_re, se_im)
}

pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}
