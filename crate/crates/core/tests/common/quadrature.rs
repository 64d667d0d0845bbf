//! Log-domain tanh-sinh quadrature, independent of the library kernels.
//!
//! Integrands are given as ln f(t) in terms of the distances of t from both
//! interval ends, so factors like t^(a-1) (1-t)^(b-1) keep full accuracy next
//! to either endpoint.

use std::f64::consts::FRAC_PI_2;

/// An interval [lo, hi] together with 1 - lo and 1 - hi computed without
/// cancellation (only meaningful for subsets of [0, 1]).
#[derive(Clone, Copy, Debug)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
    pub one_minus_lo: f64,
    pub one_minus_hi: f64,
}

impl Span {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            one_minus_lo: 1.0 - lo,
            one_minus_hi: 1.0 - hi,
        }
    }
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// ln ∫ f over one span. `ln_f(t, 1 - t)` must be finite or -inf.
fn ln_integral_span(span: Span, ln_f: &dyn Fn(f64, f64) -> f64) -> f64 {
    let half = 0.5 * (span.hi - span.lo);
    if half <= 0.0 {
        return f64::NEG_INFINITY;
    }
    // node at offset s: distances 2h/(1+q) from lo and 2hq/(1+q) from hi
    // (ln of weighted node value, |ln f| at the node)
    let node = |s: f64| -> (f64, f64) {
        let q = (-std::f64::consts::PI * s.sinh()).exp();
        let from_lo = 2.0 * half / (1.0 + q);
        let from_hi = 2.0 * half * q / (1.0 + q);
        if from_lo == 0.0 || from_hi == 0.0 || !q.is_finite() {
            return (f64::NEG_INFINITY, 0.0);
        }
        let (t, u) = if from_lo <= from_hi {
            (span.lo + from_lo, span.one_minus_lo - from_lo)
        } else {
            (span.hi - from_hi, span.one_minus_hi + from_hi)
        };
        let ln_w = (half * FRAC_PI_2 * s.cosh() * 4.0).ln() + q.ln() - 2.0 * q.ln_1p();
        let v = ln_f(t, u);
        (ln_w + v, v.abs())
    };
    let s_max = 6.5;
    let mut step = 0.5;
    let mut terms: Vec<f64> = Vec::new();
    // ln f itself is only good to a few ulps of its magnitude at the peak
    let mut peak = (f64::NEG_INFINITY, 0.0);
    fn push(terms: &mut Vec<f64>, peak: &mut (f64, f64), (v, mag): (f64, f64)) {
        if v > peak.0 {
            *peak = (v, mag);
        }
        terms.push(v);
    }
    let mut k = 0;
    while (k as f64) * step <= s_max {
        let s = k as f64 * step;
        push(&mut terms, &mut peak, node(s));
        if k > 0 {
            push(&mut terms, &mut peak, node(-s));
        }
        k += 1;
    }
    let mut estimate = log_sum_exp(&terms) + step.ln();
    for _ in 0..12 {
        step /= 2.0;
        let mut s = step;
        while s <= s_max {
            push(&mut terms, &mut peak, node(s));
            push(&mut terms, &mut peak, node(-s));
            s += 2.0 * step;
        }
        let next = log_sum_exp(&terms) + step.ln();
        let tol = f64::max(1e-15, 8.0 * f64::EPSILON * peak.1);
        if (next - estimate).abs() <= tol {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// ln ∫ f over [lo, hi] split at `breaks` (values outside are ignored).
pub fn ln_integral(lo: f64, hi: f64, one_minus_hi: f64, breaks: &[f64], ln_f: &dyn Fn(f64, f64) -> f64) -> f64 {
    let mut points: Vec<f64> = breaks.iter().cloned().filter(|&b| b > lo && b < hi).collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut spans = Vec::new();
    let mut left = Span::new(lo, lo);
    for p in points {
        let right = Span::new(p, p);
        spans.push(Span {
            lo: left.lo,
            hi: p,
            one_minus_lo: left.one_minus_lo,
            one_minus_hi: right.one_minus_lo,
        });
        left = right;
    }
    spans.push(Span {
        lo: left.lo,
        hi,
        one_minus_lo: left.one_minus_lo,
        one_minus_hi,
    });
    let parts: Vec<f64> = spans.iter().map(|&s| ln_integral_span(s, ln_f)).collect();
    log_sum_exp(&parts)
}

/// Break points around a peak: mode ± multiples of a width.
fn around(mode: f64, width: f64) -> Vec<f64> {
    [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
        .iter()
        .flat_map(|&c| [mode - c * width, mode + c * width])
        .collect()
}

fn gamma_breaks(k: f64) -> Vec<f64> {
    let mode = (k - 1.0).max(0.0);
    let mut b = around(mode, k.sqrt());
    b.extend([1e-8, 1e-4, 1e-2, 0.1, 1.0]);
    b
}

fn gamma_upper(k: f64) -> f64 {
    k + 60.0 * k.sqrt() + 800.0
}

/// ln Γ(x) by quadrature of t^(x-1) e^(-t) over [0, ∞).
///
/// Below 1 most of the mass of t^(x-1) sits under any representable node, so
/// the integral is taken at x + 1 and shifted back.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 1.0 {
        return ln_gamma(x + 1.0) - x.ln();
    }
    let f = |t: f64, _: f64| (x - 1.0) * t.ln() - t;
    ln_integral(0.0, gamma_upper(x), f64::NAN, &gamma_breaks(x), &f)
}

/// P(k, x) as the ratio of two quadratures.
pub fn reg_inc_gamma_lower(k: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let f = |t: f64, _: f64| (k - 1.0) * t.ln() - t;
    let upper = gamma_upper(k);
    let breaks = gamma_breaks(k);
    if x >= upper {
        return 1.0;
    }
    let below = ln_integral(0.0, x, f64::NAN, &breaks, &f);
    let above = ln_integral(x, upper, f64::NAN, &breaks, &f);
    // the smaller tail carries the accuracy
    if below < above {
        (below - log_sum_exp(&[below, above])).exp()
    } else {
        -(above - log_sum_exp(&[below, above])).exp_m1()
    }
}

/// I(x; a, b) as the ratio of two quadratures.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let f = |t: f64, u: f64| (a - 1.0) * t.ln() + (b - 1.0) * u.ln();
    let n = a + b;
    let mode = if a > 1.0 && b > 1.0 {
        (a - 1.0) / (n - 2.0)
    } else {
        a / n
    };
    let width = (a * b / (n * n * (n + 1.0))).sqrt();
    let mut breaks = around(mode, width);
    breaks.extend([1e-8, 1e-4, 1e-2, 0.5, 1.0 - 1e-2, 1.0 - 1e-4, 1.0 - 1e-8]);
    let below = ln_integral(0.0, x, 1.0 - x, &breaks, &f);
    let above = ln_integral(x, 1.0, 0.0, &breaks, &f);
    if below < above {
        (below - log_sum_exp(&[below, above])).exp()
    } else {
        -(above - log_sum_exp(&[below, above])).exp_m1()
    }
}
