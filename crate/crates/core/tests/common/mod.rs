#![allow(dead_code)]

/// `e^{-z} I_0(z)` by power series (small z) or the large-argument series.
pub fn scaled_i0(z: f64) -> f64 {
    if z <= 30.0 {
        let q = z * z / 4.0;
        let (mut term, mut sum, mut k) = (1.0f64, 1.0f64, 0.0f64);
        while term > 1e-18 * sum {
            k += 1.0;
            term *= q / (k * k);
            sum += term;
        }
        sum * (-z).exp()
    } else {
        let (mut term, mut sum) = (1.0f64, 1.0f64);
        for k in 1..200 {
            let kf = k as f64;
            let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * z);
            if next < 1e-18 || next > term {
                break;
            }
            term = next;
            sum += term;
        }
        sum / (2.0 * std::f64::consts::PI * z).sqrt()
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `Q₁(a,b) = ∫_b^∞ x·exp(-(x²+a²)/2)·I₀(ax) dx`, by quadrature.
pub fn marcum_oracle(a: f64, b: f64) -> f64 {
    let f = |x: f64| x * (-0.5 * (x - a) * (x - a)).exp() * scaled_i0(a * x);
    // unit panels so the adaptive rule cannot miss the peak
    let upper = a.max(b) + 40.0;
    let mut lo = b;
    let mut total = 0.0;
    while lo < upper {
        let hi = (lo + 1.0).min(upper);
        total += integrate(&f, lo, hi, 1e-15);
        lo = hi;
    }
    total
}
