//! Shared numerical machinery: adaptive quadrature, bracketing root
//! finding, golden-section maximization, least-squares circle fitting,
//! and an adaptive Dormand-Prince 5(4) integrator.

use std::sync::OnceLock;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

type Rule = (Vec<f64>, Vec<f64>);

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(7), gauss_legendre(15)))
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let ((n7, w7), (n15, w15)) = rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let g7: f64 = n7.iter().zip(w7).map(|(x, w)| w * f(mid + half * x)).sum();
    let g15: f64 = n15.iter().zip(w15).map(|(x, w)| w * f(mid + half * x)).sum();
    (half * g15, half * (g15 - g7).abs())
}

/// Adaptive panel quadrature of `f` over [a, b] to absolute tolerance
/// `tol`, refining wherever the embedded 7- vs 15-point error estimate
/// exceeds the local budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let len = (b - a).abs();
    let mut total = 0.0;
    let mut achieved = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = panel(&f, lo, hi);
        let budget = tol * ((hi - lo).abs() / len);
        if err <= budget || depth >= 52 {
            total += val;
            achieved += err;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    if achieved > tol {
        return Err(Error::QuadratureFailed { residual: achieved, tolerance: tol });
    }
    Ok(total)
}

/// Brent's method for a root of `f` in the bracket [a, b].
pub fn brent_root<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa * fb > 0.0 {
        return Err(Error::InvalidArgument(format!(
            "root not bracketed on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..200 {
        if fb == 0.0 || (b - a).abs() < tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // Inverse quadratic interpolation.
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let cond = !((lo.min(b) < s && s < lo.max(b))
            && (!mflag || (s - b).abs() < 0.5 * (b - c).abs())
            && (mflag || (s - b).abs() < 0.5 * (c - d).abs()));
        if cond {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}

/// Golden-section search for a maximum of `f` on [a, b].
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Least-squares circle through planar points (Kasa fit).
#[derive(Debug, Clone, Copy)]
pub struct CircleFit {
    pub center: [f64; 2],
    pub radius: f64,
    /// Largest |distance-to-center - radius| over the input points.
    pub max_residual: f64,
}

pub fn fit_circle(points: &[[f64; 2]]) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "circle fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    // Normal equations for y^2 + z^2 = 2 a y + 2 b z + d.
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for &[y, z] in points {
        let row = Vector3::new(2.0 * y, 2.0 * z, 1.0);
        let rhs = y * y + z * z;
        ata += row * row.transpose();
        atb += row * rhs;
    }
    let sol = ata
        .lu()
        .solve(&atb)
        .ok_or_else(|| Error::InvalidArgument("degenerate circle fit (collinear points?)".into()))?;
    let center = [sol[0], sol[1]];
    let radius = (sol[2] + sol[0] * sol[0] + sol[1] * sol[1]).sqrt();
    let max_residual = points
        .iter()
        .map(|&[y, z]| ((y - center[0]).hypot(z - center[1]) - radius).abs())
        .fold(0.0, f64::max);
    Ok(CircleFit { center, radius, max_residual })
}

// Dormand-Prince 5(4) coefficients.
const DP_C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One adaptive step attempt; returns (y_new, error_norm).
fn dp_step<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
    f: &F,
    t: f64,
    y: &[f64; N],
    h: f64,
    rtol: f64,
    atol: f64,
) -> ([f64; N], f64) {
    let mut k = [[0.0; N]; 7];
    k[0] = f(t, y);
    for stage in 0..6 {
        let mut yi = *y;
        for (j, kj) in k.iter().enumerate().take(stage + 1) {
            let a = DP_A[stage][j];
            if a != 0.0 {
                for n in 0..N {
                    yi[n] += h * a * kj[n];
                }
            }
        }
        k[stage + 1] = f(t + DP_C[stage] * h, &yi);
    }
    let mut y5 = *y;
    let mut y4 = *y;
    for (j, kj) in k.iter().enumerate() {
        for n in 0..N {
            y5[n] += h * DP_B5[j] * kj[n];
            y4[n] += h * DP_B4[j] * kj[n];
        }
    }
    let mut err = 0.0;
    for n in 0..N {
        let sc = atol + rtol * y[n].abs().max(y5[n].abs());
        err += ((y5[n] - y4[n]) / sc).powi(2);
    }
    (y5, (err / N as f64).sqrt())
}

/// Integrate y' = f(t, y) from (t0, y0), reporting the state at each of
/// the increasing `targets`. Steps are clipped at target boundaries, so
/// the reported states carry no interpolation error beyond the local
/// tolerance.
pub fn integrate_ode<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
    f: F,
    t0: f64,
    y0: [f64; N],
    targets: &[f64],
    rtol: f64,
    atol: f64,
) -> Result<Vec<[f64; N]>> {
    let mut out = Vec::with_capacity(targets.len());
    let mut t = t0;
    let mut y = y0;
    let mut h: f64 = 1e-3;
    let h_min = 1e-14;
    for &target in targets {
        if target < t0 {
            return Err(Error::InvalidArgument(format!(
                "ODE target {target} precedes the start point {t0}"
            )));
        }
        while t < target {
            let step = h.min(target - t);
            let (y_new, err) = dp_step(&f, t, &y, step, rtol, atol);
            if !err.is_finite() {
                return Err(Error::IntegrationFailed { s: t, reason: "non-finite state" });
            }
            if err <= 1.0 {
                t += step;
                y = y_new;
                h = step * (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            } else {
                h = step * (0.9 * err.powf(-0.2)).max(0.1);
                if h < h_min {
                    return Err(Error::IntegrationFailed { s: t, reason: "step size underflow" });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn quadrature_polynomial_is_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12).unwrap();
        // antiderivative x^4/4 - x^2 + x
        assert_abs_diff_eq!(v, (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0), epsilon = 1e-11);
    }

    #[test]
    fn quadrature_oscillatory() {
        let v = integrate(|x| (10.0 * x).sin(), 0.0, PI, 1e-12).unwrap();
        assert_abs_diff_eq!(v, (1.0 - (10.0 * PI).cos()) / 10.0, epsilon = 1e-10);
    }

    #[test]
    fn brent_finds_cosine_root() {
        let r = brent_root(|x| x.cos(), 1.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn golden_section_parabola() {
        let (x, fx) = golden_section_max(|x| 1.0 - (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-10);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn circle_fit_recovers_exact_circle() {
        let pts: Vec<[f64; 2]> = (0..32)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / 32.0;
                [1.5 + 0.7 * a.cos(), -0.4 + 0.7 * a.sin()]
            })
            .collect();
        let fit = fit_circle(&pts).unwrap();
        assert_abs_diff_eq!(fit.center[0], 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.center[1], -0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.radius, 0.7, epsilon = 1e-12);
        assert!(fit.max_residual < 1e-12);
    }

    #[test]
    fn ode_exponential() {
        let out = integrate_ode(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], &[1.0, 2.0], 1e-10, 1e-12)
            .unwrap();
        assert_abs_diff_eq!(out[0][0], 1.0f64.exp(), epsilon = 1e-8);
        assert_abs_diff_eq!(out[1][0], 2.0f64.exp(), epsilon = 1e-7);
    }

    #[test]
    fn ode_harmonic_oscillator() {
        let out = integrate_ode(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [1.0, 0.0],
            &[PI / 2.0, PI],
            1e-11,
            1e-13,
        )
        .unwrap();
        assert_abs_diff_eq!(out[0][0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(out[1][0], -1.0, epsilon = 1e-9);
    }
}
