//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SUBDIVISIONS: usize = 4000;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive integration of `f` over `[a, b]` to an absolute
/// tolerance: the piece with the largest error estimate is bisected until
/// the summed estimate drops below `abs_tol`. Returns `None` if that does not
/// happen within the subdivision budget.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Option<f64> {
    if a == b {
        return Some(0.0);
    }
    let piece = |lo: f64, hi: f64| {
        let (value, err) = gk15(f, lo, hi);
        Piece { lo, hi, value, err }
    };
    let first = piece(a, b);
    if !first.value.is_finite() {
        return None;
    }
    let mut err = first.err;
    let mut heap = BinaryHeap::from([first]);
    let mut splits = 0;
    while err > abs_tol {
        let worst = heap.pop()?;
        let mid = 0.5 * (worst.lo + worst.hi);
        if splits >= MAX_SUBDIVISIONS || mid <= worst.lo || mid >= worst.hi {
            return None;
        }
        splits += 1;
        let (left, right) = (piece(worst.lo, mid), piece(mid, worst.hi));
        if !(left.value.is_finite() && right.value.is_finite()) {
            return None;
        }
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running update.
    Some(heap.iter().map(|p| p.value).sum())
}

/// Integrates over `[a, b]` split into `panels` equal pieces, each handled
/// adaptively. Suited to oscillatory integrands whose period is known.
pub(crate) fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
    abs_tol: f64,
) -> Option<f64> {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let tol = abs_tol / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { lo + width };
        total += integrate(f, lo, hi, tol)?;
    }
    Some(total)
}
