//! Adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The adaptive driver keeps a heap of intervals keyed by their error
//! estimate and bisects the worst one until the global tolerance is met.
//! [`integrate_panels`] splits the range into a fixed set of panels first and
//! runs them in parallel; the partition and the summation order do not
//! depend on scheduling, so results are reproducible bit for bit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

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

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },
    #[error("subdivision limit {limit} reached; estimate {estimate} with error {error}")]
    SubdivisionLimit {
        limit: usize,
        estimate: f64,
        error: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// Neumaier-compensated accumulation of interval contributions.
    pub compensated: bool,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_intervals: 4000,
            compensated: false,
        }
    }
}

impl QuadOptions {
    /// Tighter tolerances with compensated summation.
    pub fn extended() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-16,
            max_intervals: 20000,
            compensated: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

/// One 15-point Kronrod estimate and its embedded 7-point Gauss estimate.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite { at: x })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    Ok((kronrod * half, gauss * half))
}

/// Non-adaptive composite Kronrod rule on `n` equal panels.
pub fn composite_kronrod<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    n: usize,
) -> Result<f64, QuadError> {
    let h = (b - a) / n as f64;
    let mut sum = Accumulator::new(true);
    for k in 0..n {
        let lo = a + k as f64 * h;
        let hi = if k + 1 == n { b } else { lo + h };
        sum.add(gauss_kronrod_15(f, lo, hi)?.0);
    }
    Ok(sum.total())
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn estimate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Interval, QuadError> {
    let (k, g) = gauss_kronrod_15(f, a, b)?;
    Ok(Interval {
        a,
        b,
        value: k,
        error: (k - g).abs(),
    })
}

/// Running sum, optionally Neumaier-compensated.
#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    sum: f64,
    carry: f64,
    compensated: bool,
}

impl Accumulator {
    pub fn new(compensated: bool) -> Self {
        Self {
            sum: 0.0,
            carry: 0.0,
            compensated,
        }
    }

    pub fn add(&mut self, v: f64) {
        if !self.compensated {
            self.sum += v;
            return;
        }
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

fn summarize(intervals: &mut [Interval], compensated: bool) -> (f64, f64) {
    intervals.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = Accumulator::new(compensated);
    let mut error = 0.0;
    for iv in intervals.iter() {
        value.add(iv.value);
        error += iv.error;
    }
    (value.total(), error)
}

/// Adaptive integral of `f` over `[a, b]`. `b < a` integrates backwards.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            intervals: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = estimate(f, a, b)?;
    let mut total = first.value;
    let mut error = first.error;
    heap.push(first);
    let mut evaluations = 15;
    loop {
        if error <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            break;
        }
        if heap.len() >= opts.max_intervals {
            let mut ivs = heap.into_vec();
            let (estimate, error) = summarize(&mut ivs, opts.compensated);
            return Err(QuadError::SubdivisionLimit {
                limit: opts.max_intervals,
                estimate,
                error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // interval cannot be split further in f64
            heap.push(Interval {
                error: 0.0,
                ..worst
            });
            error -= worst.error;
            continue;
        }
        let left = estimate(f, worst.a, mid)?;
        let right = estimate(f, mid, worst.b)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let mut ivs = heap.into_vec();
    let intervals = ivs.len();
    let (value, error) = summarize(&mut ivs, opts.compensated);
    Ok(QuadResult {
        value,
        error,
        evaluations,
        intervals,
    })
}

/// Splits `[a, b]` into `panels` equal panels, integrates each adaptively in
/// parallel and sums in panel order. Each panel gets an equal share of the
/// absolute tolerance.
pub fn integrate_panels<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let share = QuadOptions {
        abs_tol: opts.abs_tol / panels as f64,
        ..*opts
    };
    let parts: Vec<QuadResult> = (0..panels)
        .into_par_iter()
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == panels {
                b
            } else {
                a + (k + 1) as f64 * h
            };
            integrate_adaptive(f, lo, hi, &share)
        })
        .collect::<Result<_, _>>()?;
    let mut value = Accumulator::new(opts.compensated);
    let mut out = QuadResult {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
        intervals: 0,
    };
    for p in &parts {
        value.add(p.value);
        out.error += p.error;
        out.evaluations += p.evaluations;
        out.intervals += p.intervals;
    }
    out.value = value.total();
    Ok(out)
}
