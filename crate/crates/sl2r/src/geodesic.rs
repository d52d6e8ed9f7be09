//! Geodesics of SL(2,R)~ in hyperboloid coordinates: the metric tensor,
//! the three closed-form branches (hyperbolic-like, light, fibre-like),
//! a direct second-order ODE integrator used as an independent check,
//! the Euclidean model embedding, and a numeric distance-from-origin
//! solver.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::model::{FiberPolar, ProjPoint};
use crate::numeric;

/// Arc-length at which the ODE integrator is seeded from the closed
/// form, clear of the r = 0 polar coordinate singularity.
pub const ODE_SEED_S: f64 = 1e-4;

/// Metric tensor at radius r in (r, theta, phi) order:
/// ds^2 = dr^2 + sinh^2 r (sinh^2 r + cosh^2 r) dtheta^2
///        + 2 sinh^2 r dtheta dphi + dphi^2.
#[derive(Debug, Clone, Copy)]
pub struct MetricAt {
    pub r: f64,
    pub g: [[f64; 3]; 3],
}

impl MetricAt {
    pub fn det(&self) -> f64 {
        // Block determinant: g11 (g22 g33 - g23^2).
        self.g[0][0] * (self.g[1][1] * self.g[2][2] - self.g[1][2] * self.g[2][1])
    }
}

pub fn metric_at(r: f64) -> MetricAt {
    assert!(r.is_finite() && r >= 0.0, "radius must be finite and non-negative");
    let sh2 = r.sinh() * r.sinh();
    let ch2 = r.cosh() * r.cosh();
    MetricAt {
        r,
        g: [
            [1.0, 0.0, 0.0],
            [0.0, sh2 * (sh2 + ch2), sh2],
            [0.0, sh2, 1.0],
        ],
    }
}

/// Direction class of a unit-speed geodesic from the origin, by the
/// altitude angle against the base plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicBranch {
    /// |alpha| < pi/4: the base-plane projection escapes like an H^2 line.
    HyperbolicLike,
    /// |alpha| = pi/4.
    Light,
    /// |alpha| > pi/4: bounded radius, winding around the fibre.
    FibreLike,
}

/// Starting direction of a geodesic from the origin in geographical
/// coordinates: longitude lambda in (-pi, pi], altitude alpha in
/// [-pi/2, pi/2].
#[derive(Debug, Clone, Copy)]
pub struct GeodesicInitial {
    pub lambda: f64,
    pub alpha: f64,
}

impl GeodesicInitial {
    pub fn new(lambda: f64, alpha: f64) -> Result<Self> {
        if !(lambda.is_finite() && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite direction ({lambda}, {alpha})"
            )));
        }
        if !(-PI < lambda && lambda <= PI) {
            return Err(Error::InvalidArgument(format!(
                "longitude {lambda} outside (-pi, pi]"
            )));
        }
        if alpha.abs() > FRAC_PI_2 {
            return Err(Error::InvalidArgument(format!(
                "altitude {alpha} outside [-pi/2, pi/2]"
            )));
        }
        Ok(Self { lambda, alpha })
    }

    pub fn branch(&self) -> GeodesicBranch {
        let a = self.alpha.abs();
        if a < FRAC_PI_4 {
            GeodesicBranch::HyperbolicLike
        } else if a > FRAC_PI_4 {
            GeodesicBranch::FibreLike
        } else {
            GeodesicBranch::Light
        }
    }
}

/// One geodesic point: arc length, hyperboloid coordinates (with the
/// longitude already folded into theta), and the Euclidean model
/// coordinates (X, Y, Z).
///
/// On the fibre-like branch past the first axis crossing the closed
/// form keeps its signed-radius convention (r < 0 stands for the
/// antipodal base angle); the embedding is consistent either way.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicSample {
    pub s: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Table-form coordinates (r, theta, phi) at arc length s for a geodesic
/// with altitude alpha >= 0 and longitude 0. theta is continued across
/// the fibre-like branch's tangent poles, so all three components are
/// smooth in s.
fn table_coords(alpha: f64, s: f64) -> (f64, f64, f64) {
    debug_assert!((0.0..=FRAC_PI_2).contains(&alpha));
    let (sin_a, cos_a) = alpha.sin_cos();
    let c2 = (2.0 * alpha).cos();
    if c2 > 0.0 {
        let sg = c2.sqrt();
        let r = (cos_a / sg * (s * sg).sinh()).asinh();
        let theta = -(sin_a / sg * (s * sg).tanh()).atan();
        (r, theta, 2.0 * sin_a * s + theta)
    } else if c2 < 0.0 {
        let om = (-c2).sqrt();
        let lam = sin_a / om;
        let x = s * om;
        // Continuous branch of -atan(lam tan x): shift by k pi so the
        // reduced angle stays in (-pi/2, pi/2].
        let k = (x / PI + 0.5).floor();
        let y = x - k * PI;
        let theta = -((lam * y.sin()).atan2(y.cos()) + k * PI);
        let r = (cos_a / om * x.sin()).asinh();
        (r, theta, 2.0 * sin_a * s + theta)
    } else {
        let r = (cos_a * s).asinh();
        let theta = -(sin_a * s).atan();
        (r, theta, 2.0 * sin_a * s + theta)
    }
}

/// Arc-length derivatives of `table_coords` (analytic, used to seed the
/// ODE integrator independently of its right-hand side).
fn table_derivs(alpha: f64, s: f64) -> (f64, f64, f64) {
    debug_assert!((0.0..=FRAC_PI_2).contains(&alpha));
    let (sin_a, cos_a) = alpha.sin_cos();
    let c2 = (2.0 * alpha).cos();
    if c2 > 0.0 {
        let sg = c2.sqrt();
        let x = s * sg;
        let rd = cos_a * x.cosh() / (1.0 + (cos_a / sg * x.sinh()).powi(2)).sqrt();
        let lam = sin_a / sg;
        let thd = -lam * sg / (x.cosh().powi(2) + (lam * x.sinh()).powi(2));
        (rd, thd, 2.0 * sin_a + thd)
    } else if c2 < 0.0 {
        let om = (-c2).sqrt();
        let x = s * om;
        let rd = cos_a * x.cos() / (1.0 + (cos_a / om * x.sin()).powi(2)).sqrt();
        let lam = sin_a / om;
        let thd = -lam * om / (x.cos().powi(2) + (lam * x.sin()).powi(2));
        (rd, thd, 2.0 * sin_a + thd)
    } else {
        let rd = cos_a / (1.0 + (cos_a * s).powi(2)).sqrt();
        let thd = -sin_a / (1.0 + (sin_a * s).powi(2));
        (rd, thd, 2.0 * sin_a + thd)
    }
}

/// Closed-form coordinates for any altitude in [-pi/2, pi/2]; negative
/// altitudes mirror (theta, phi) -> (-theta, -phi).
pub fn closed_form_coords(alpha: f64, s: f64) -> (f64, f64, f64) {
    if alpha >= 0.0 {
        table_coords(alpha, s)
    } else {
        let (r, theta, phi) = table_coords(-alpha, s);
        (r, -theta, -phi)
    }
}


fn embed(s: f64, lambda: f64, r: f64, theta: f64, phi: f64) -> GeodesicSample {
    let theta = theta + lambda;
    let x = phi.tan();
    let scale = r.tanh() / phi.cos();
    let d = theta - phi;
    GeodesicSample { s, r, theta, phi, x, y: scale * d.cos(), z: scale * d.sin() }
}

/// Evaluate the branch-appropriate closed form at arc length s and map
/// it through the Euclidean embedding. At s = 0 this is the origin.
pub fn closed_form(init: &GeodesicInitial, s: f64) -> GeodesicSample {
    assert!(s.is_finite(), "arc length must be finite");
    let (r, theta, phi) = closed_form_coords(init.alpha, s);
    embed(s, init.lambda, r, theta, phi)
}

/// Geodesic equations in hyperboloid coordinates, first-order form on
/// (r, theta, phi, r', theta', phi'). The theta'' equation carries the
/// sign required by the variational derivation of the arc-length
/// functional (it also matches the conserved momenta of the closed
/// forms); singular at r = 0.
fn geodesic_rhs(_s: f64, y: &[f64; 6]) -> [f64; 6] {
    let [r, _th, _ph, rd, thd, phd] = *y;
    let s2 = (2.0 * r).sinh();
    let s4 = (4.0 * r).sinh();
    let c2 = (2.0 * r).cosh();
    let sh = r.sinh();
    let rdd = s2 * thd * phd + 0.5 * (s4 - s2) * thd * thd;
    let thdd = -(2.0 * rd / s2) * ((3.0 * c2 - 1.0) * thd + 2.0 * phd);
    let phdd = 2.0 * rd * r.tanh() * (2.0 * sh * sh * thd + phd);
    [rd, thd, phd, rdd, thdd, phdd]
}

/// Integrate the geodesic ODE and report samples at the given increasing
/// arc lengths. The integrator is seeded at `ODE_SEED_S` from the closed
/// form (values and analytic derivatives); targets at or below the seed
/// are returned from the closed form directly.
pub fn ode_at(init: &GeodesicInitial, s_values: &[f64], tol: f64) -> Result<Vec<GeodesicSample>> {
    if s_values.windows(2).any(|w| w[1] <= w[0]) || s_values.first().is_some_and(|&s| s < 0.0) {
        return Err(Error::InvalidArgument(
            "sample arc lengths must be non-negative and strictly increasing".into(),
        ));
    }
    // Pure fibre motion (cos alpha = 0) never leaves r = 0, where the
    // coordinate ODE is singular; the closed form is exact there.
    if init.alpha.abs() >= FRAC_PI_2 {
        return Ok(s_values.iter().map(|&s| closed_form(init, s)).collect());
    }

    let mirror = init.alpha < 0.0;
    let alpha = init.alpha.abs();
    let (r0, th0, ph0) = table_coords(alpha, ODE_SEED_S);
    let (rd0, thd0, phd0) = table_derivs(alpha, ODE_SEED_S);

    let mut out = Vec::with_capacity(s_values.len());
    let split = s_values.partition_point(|&s| s <= ODE_SEED_S);
    for &s in &s_values[..split] {
        out.push(closed_form(init, s));
    }
    let targets = &s_values[split..];
    if !targets.is_empty() {
        let states = numeric::integrate_ode(
            geodesic_rhs,
            ODE_SEED_S,
            [r0, th0, ph0, rd0, thd0, phd0],
            targets,
            tol,
            tol * 1e-2,
        )?;
        for (&s, y) in targets.iter().zip(&states) {
            let (r, theta, phi) = if mirror { (y[0], -y[1], -y[2]) } else { (y[0], y[1], y[2]) };
            out.push(embed(s, init.lambda, r, theta, phi));
        }
    }
    Ok(out)
}

/// Multi-start search options for `distance_from_origin`.
#[derive(Debug, Clone, Copy)]
pub struct DistanceSearch {
    /// Largest arc length considered.
    pub s_max: f64,
    /// Starts per axis of the (s, lambda, alpha) grid.
    pub grid: usize,
    /// Residual (unit-sphere coordinate gap) accepted as a solution.
    pub residual_tol: f64,
    pub max_iter: usize,
}

impl Default for DistanceSearch {
    fn default() -> Self {
        Self { s_max: 6.0, grid: 8, residual_tol: 1e-10, max_iter: 60 }
    }
}

fn endpoint_unit(s: f64, lambda: f64, alpha: f64) -> [f64; 4] {
    // Total in alpha: finite-difference probes may overshoot the clamp.
    let (r, theta, phi) = closed_form_coords(alpha.clamp(-FRAC_PI_2, FRAC_PI_2), s);
    // Signed radius means the antipodal base angle.
    let (r, theta) = if r < 0.0 { (-r, theta + PI) } else { (r, theta) };
    FiberPolar { r, theta: theta + lambda, phi }.to_proj().unit()
}

/// Geodesic distance from the origin: the smallest arc length s >= 0
/// over found directions (lambda, alpha) whose geodesic endpoint equals
/// `p` projectively.
///
/// Base-plane points are exact (the radial alpha = 0 geodesic gives
/// s = r), as are pure fibre points (alpha = pi/2 gives s = |phi|).
/// Otherwise a damped Gauss-Newton iteration runs from every node of an
/// (s, lambda, alpha) start grid and the smallest converged s is
/// returned; minimality is best-effort within the search budget.
pub fn distance_from_origin(p: &ProjPoint, search: &DistanceSearch) -> Result<f64> {
    let fp = p.fiber_polar()?;
    if fp.phi.abs() < 1e-12 {
        return Ok(fp.r);
    }
    if fp.r < 1e-12 {
        return Ok(fp.phi.abs());
    }

    let target = p.unit();
    let residual = |x: &[f64; 3]| -> [f64; 4] {
        let e = endpoint_unit(x[0], x[1], x[2]);
        [e[0] - target[0], e[1] - target[1], e[2] - target[2], e[3] - target[3]]
    };
    let norm2 = |f: &[f64; 4]| f.iter().map(|v| v * v).sum::<f64>();

    let clamp = |x: [f64; 3]| -> [f64; 3] {
        [
            x[0].clamp(1e-9, search.s_max * 1.5),
            x[1],
            x[2].clamp(-FRAC_PI_2 + 1e-9, FRAC_PI_2 - 1e-9),
        ]
    };

    let n = search.grid;
    let mut best_s: Option<f64> = None;
    let mut best_residual = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let start = [
                    search.s_max * (i as f64 + 1.0) / n as f64,
                    -PI + 2.0 * PI * (j as f64 + 0.5) / n as f64,
                    -FRAC_PI_2 + PI * (k as f64 + 0.5) / n as f64,
                ];
                let (converged, res) = damped_gauss_newton(
                    &residual,
                    &norm2,
                    clamp,
                    start,
                    search.residual_tol,
                    search.max_iter,
                );
                if res < best_residual {
                    best_residual = res;
                }
                if let Some(s) = converged {
                    if best_s.is_none_or(|b| s < b) {
                        best_s = Some(s);
                    }
                }
            }
        }
    }
    best_s.ok_or(Error::NoConvergence { residual: best_residual })
}

/// Levenberg-damped Gauss-Newton on a 3-parameter, 4-component residual.
/// Returns the arc length on convergence, plus the final residual norm
/// either way.
fn damped_gauss_newton(
    residual: &impl Fn(&[f64; 3]) -> [f64; 4],
    norm2: &impl Fn(&[f64; 4]) -> f64,
    clamp: impl Fn([f64; 3]) -> [f64; 3],
    start: [f64; 3],
    tol: f64,
    max_iter: usize,
) -> (Option<f64>, f64) {
    let mut x = clamp(start);
    let mut f = residual(&x);
    let mut mu = 1e-8;
    for _ in 0..max_iter {
        let fn2 = norm2(&f);
        if fn2.sqrt() < tol {
            return (Some(x[0]), fn2.sqrt());
        }
        // Forward-difference Jacobian.
        let mut jac = [[0.0f64; 3]; 4];
        for c in 0..3 {
            let h = 1e-7 * (1.0 + x[c].abs());
            let mut xh = x;
            xh[c] += h;
            let fh = residual(&xh);
            for r in 0..4 {
                jac[r][c] = (fh[r] - f[r]) / h;
            }
        }
        // Normal equations J^T J + mu I and right side -J^T f.
        let mut a = [[0.0f64; 3]; 3];
        let mut b = [0.0f64; 3];
        for r in 0..3 {
            for c in 0..3 {
                a[r][c] = (0..4).map(|k| jac[k][r] * jac[k][c]).sum();
            }
            b[r] = -(0..4).map(|k| jac[k][r] * f[k]).sum::<f64>();
        }
        let mut improved = false;
        for _ in 0..10 {
            let mut am = a;
            for (i, row) in am.iter_mut().enumerate() {
                row[i] += mu;
            }
            let Some(delta) = solve3(&am, &b) else {
                mu *= 10.0;
                continue;
            };
            let xt = clamp([x[0] + delta[0], x[1] + delta[1], x[2] + delta[2]]);
            let ft = residual(&xt);
            if norm2(&ft) < fn2 {
                x = xt;
                f = ft;
                mu = (mu / 3.0).max(1e-14);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let fin = norm2(&f).sqrt();
    ((fin < tol).then_some(x[0]), fin)
}

fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let m = nalgebra::Matrix3::from_fn(|r, c| a[r][c]);
    let v = nalgebra::Vector3::new(b[0], b[1], b[2]);
    m.lu().solve(&v).map(|s| [s[0], s[1], s[2]])
}

/// Quadratic form of the line element applied to a coordinate increment
/// at mid radius r: dr^2 + cosh^2 r sinh^2 r dtheta^2
/// + (dphi + sinh^2 r dtheta)^2.
pub fn line_element_sq(r: f64, dr: f64, dtheta: f64, dphi: f64) -> f64 {
    let sh2 = r.sinh() * r.sinh();
    let ch2 = r.cosh() * r.cosh();
    dr * dr + ch2 * sh2 * dtheta * dtheta + (dphi + sh2 * dtheta) * (dphi + sh2 * dtheta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn metric_degenerates_at_origin() {
        let m = metric_at(0.0);
        assert_eq!(m.g[1][1], 0.0);
        assert_eq!(m.g[1][2], 0.0);
        assert_eq!(m.g[0][0], 1.0);
        assert_eq!(m.g[2][2], 1.0);
    }

    #[test]
    fn metric_at_unit_radius() {
        let m = metric_at(1.0);
        // Pinned by high-precision evaluation of sinh^2 1 (sinh^2 1 + cosh^2 1).
        assert_abs_diff_eq!(m.g[1][1], 5.195960363462306, epsilon = 1e-12);
        // Line-element route: cosh^2 sinh^2 + sinh^4.
        let sh2 = 1.0f64.sinh().powi(2);
        let ch2 = 1.0f64.cosh().powi(2);
        assert_abs_diff_eq!(m.g[1][1], ch2 * sh2 + sh2 * sh2, epsilon = 1e-12);
        assert_abs_diff_eq!(m.g[1][2], sh2, epsilon = 1e-15);
    }

    #[test]
    fn metric_is_symmetric_and_positive() {
        for r in [0.1, 0.7, 1.9, 3.2] {
            let m = metric_at(r);
            assert_eq!(m.g[1][2], m.g[2][1]);
            assert!(m.det() > 0.0);
            // det = sinh^2 r cosh^2 r
            assert_abs_diff_eq!(m.det(), (r.sinh() * r.cosh()).powi(2), epsilon = 1e-10);
        }
    }

    #[test]
    fn branch_classification() {
        let b = |alpha: f64| GeodesicInitial::new(0.0, alpha).unwrap().branch();
        assert_eq!(b(0.3), GeodesicBranch::HyperbolicLike);
        assert_eq!(b(FRAC_PI_4), GeodesicBranch::Light);
        assert_eq!(b(-FRAC_PI_4), GeodesicBranch::Light);
        assert_eq!(b(1.0), GeodesicBranch::FibreLike);
    }

    #[test]
    fn closed_form_starts_at_origin() {
        for alpha in [0.0, 0.3, FRAC_PI_4, 1.1, FRAC_PI_2, -0.9] {
            let g = GeodesicInitial::new(0.4, alpha).unwrap();
            let s0 = closed_form(&g, 0.0);
            assert_eq!((s0.r, s0.phi), (0.0, 0.0));
            assert_eq!((s0.x, s0.y, s0.z), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn light_row_at_unit_arc_length() {
        let g = GeodesicInitial::new(0.0, FRAC_PI_4).unwrap();
        let smp = closed_form(&g, 1.0);
        let half_sqrt2 = std::f64::consts::SQRT_2 / 2.0;
        assert_abs_diff_eq!(smp.r, half_sqrt2.asinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(smp.theta, -half_sqrt2.atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(smp.phi, std::f64::consts::SQRT_2 - half_sqrt2.atan(), epsilon = 1e-15);
        // Frozen high-precision values.
        assert_abs_diff_eq!(smp.r, 0.6584789484624084, epsilon = 1e-14);
        assert_abs_diff_eq!(smp.theta, -0.6154797086703873, epsilon = 1e-14);
        assert_abs_diff_eq!(smp.phi, 0.7987338537027077, epsilon = 1e-14);
    }

    #[test]
    fn base_plane_geodesic_is_radial() {
        let g = GeodesicInitial::new(0.0, 0.0).unwrap();
        for s in [0.2, 1.0, 1.7] {
            let smp = closed_form(&g, s);
            assert_abs_diff_eq!(smp.r, s, epsilon = 1e-15);
            assert_eq!(smp.theta, 0.0);
            assert_eq!(smp.phi, 0.0);
        }
    }

    #[test]
    fn pure_fibre_motion() {
        let g = GeodesicInitial::new(0.0, FRAC_PI_2).unwrap();
        let smp = closed_form(&g, 0.3);
        assert_abs_diff_eq!(smp.r, 0.0, epsilon = 1e-15);
        // theta = -atan(tan s), phi = 2 s + theta.
        assert_abs_diff_eq!(smp.theta, -0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(smp.phi, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn branch_continuity_at_light_altitude() {
        for s in [0.25, 0.5, 1.0, 1.5, 2.0] {
            let mid = closed_form(&GeodesicInitial::new(0.0, FRAC_PI_4).unwrap(), s);
            for da in [-1e-6, 1e-6] {
                let near = closed_form(&GeodesicInitial::new(0.0, FRAC_PI_4 + da).unwrap(), s);
                assert!((near.r - mid.r).abs() < 1e-4);
                assert!((near.theta - mid.theta).abs() < 1e-4);
                assert!((near.phi - mid.phi).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn longitude_rotates_the_embedding() {
        let lam = 0.9;
        let a = closed_form(&GeodesicInitial::new(0.0, 0.6).unwrap(), 1.3);
        let b = closed_form(&GeodesicInitial::new(lam, 0.6).unwrap(), 1.3);
        assert_abs_diff_eq!(a.x, b.x, epsilon = 1e-14);
        let (sin_l, cos_l) = lam.sin_cos();
        assert_abs_diff_eq!(b.y, a.y * cos_l - a.z * sin_l, epsilon = 1e-13);
        assert_abs_diff_eq!(b.z, a.y * sin_l + a.z * cos_l, epsilon = 1e-13);
    }

    #[test]
    fn negative_altitude_mirrors() {
        let up = closed_form(&GeodesicInitial::new(0.0, 0.9).unwrap(), 1.1);
        let down = closed_form(&GeodesicInitial::new(0.0, -0.9).unwrap(), 1.1);
        assert_abs_diff_eq!(up.r, down.r, epsilon = 1e-15);
        assert_abs_diff_eq!(up.theta, -down.theta, epsilon = 1e-15);
        assert_abs_diff_eq!(up.phi, -down.phi, epsilon = 1e-15);
    }

    #[test]
    fn embedding_matches_model_point() {
        // (X, Y, Z) must be the inhomogeneous coordinates of the
        // hyperboloid-parametrized point.
        let g = GeodesicInitial::new(0.7, 0.5).unwrap();
        let smp = closed_form(&g, 1.4);
        let p = FiberPolar::new(smp.r, smp.theta, smp.phi).unwrap().to_proj();
        let ih = p.inhom().unwrap();
        assert_abs_diff_eq!(ih.x, smp.x, epsilon = 1e-12);
        assert_abs_diff_eq!(ih.y, smp.y, epsilon = 1e-12);
        assert_abs_diff_eq!(ih.z, smp.z, epsilon = 1e-12);
    }

    #[test]
    fn ode_matches_closed_form_base_plane() {
        let g = GeodesicInitial::new(0.0, 0.0).unwrap();
        let out = ode_at(&g, &[1.0], 1e-10).unwrap();
        assert_abs_diff_eq!(out[0].r, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(out[0].theta, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(out[0].phi, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn ode_matches_light_branch() {
        let g = GeodesicInitial::new(0.0, FRAC_PI_4).unwrap();
        let s: Vec<f64> = (1..=10).map(|i| 0.2 * i as f64).collect();
        let ode = ode_at(&g, &s, 1e-10).unwrap();
        for smp in &ode {
            let cf = closed_form(&g, smp.s);
            assert!((smp.r - cf.r).abs() < 1e-8);
            assert!((smp.theta - cf.theta).abs() < 1e-8);
            assert!((smp.phi - cf.phi).abs() < 1e-8);
        }
    }

    #[test]
    fn ode_matches_fibre_like_branch() {
        // Crosses the tangent pole of the theta closed form near
        // s ~ 1.83, exercising the angle continuation.
        let g = GeodesicInitial::new(0.0, 1.2).unwrap();
        let s: Vec<f64> = (1..=15).map(|i| 0.1 * i as f64).collect();
        let ode = ode_at(&g, &s, 1e-10).unwrap();
        for smp in &ode {
            let cf = closed_form(&g, smp.s);
            assert!((smp.r - cf.r).abs() < 1e-8, "r gap at s={}", smp.s);
            assert!((smp.theta - cf.theta).abs() < 1e-8, "theta gap at s={}", smp.s);
            assert!((smp.phi - cf.phi).abs() < 1e-8, "phi gap at s={}", smp.s);
        }
    }

    #[test]
    fn ode_matches_hyperbolic_branch() {
        let g = GeodesicInitial::new(0.0, 0.6).unwrap();
        let ode = ode_at(&g, &[0.5, 1.0, 1.5], 1e-10).unwrap();
        for smp in &ode {
            let cf = closed_form(&g, smp.s);
            assert!((smp.r - cf.r).abs() < 1e-8);
            assert!((smp.theta - cf.theta).abs() < 1e-8);
            assert!((smp.phi - cf.phi).abs() < 1e-8);
        }
    }

    #[test]
    fn ode_rejects_unsorted_targets() {
        let g = GeodesicInitial::new(0.0, 0.3).unwrap();
        assert!(ode_at(&g, &[1.0, 0.5], 1e-8).is_err());
    }

    #[test]
    fn unit_speed_from_line_element() {
        // Finite-difference increments of the closed form reproduce
        // (ds)^2 through the line element to O(ds^4).
        let g = GeodesicInitial::new(0.0, 0.85).unwrap();
        let ds = 1e-4;
        for s in [0.3, 0.9, 1.6] {
            let a = closed_form(&g, s);
            let b = closed_form(&g, s + ds);
            let rm = 0.5 * (a.r + b.r);
            let q = line_element_sq(rm, b.r - a.r, b.theta - a.theta, b.phi - a.phi);
            assert_abs_diff_eq!(q.sqrt(), ds, epsilon = 1e-10);
        }
    }

    #[test]
    fn distance_to_origin_is_zero() {
        let d = distance_from_origin(&ProjPoint::origin(), &DistanceSearch::default()).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn distance_to_base_plane_point_is_radius() {
        let p = ProjPoint::new(0.5f64.cosh(), 0.0, 0.5f64.sinh(), 0.0).unwrap();
        let d = distance_from_origin(&p, &DistanceSearch::default()).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn distance_to_fibre_point_is_fibre_parameter() {
        let p = FiberPolar::new(0.0, 0.0, 0.8).unwrap().to_proj();
        let d = distance_from_origin(&p, &DistanceSearch::default()).unwrap();
        assert_abs_diff_eq!(d, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn distance_search_reports_exhausted_budget() {
        // A point beyond the arc-length cap cannot be matched; the
        // error carries the best residual so callers can raise s_max.
        let far = closed_form(&GeodesicInitial::new(0.0, 0.5).unwrap(), 3.0);
        let p = FiberPolar::new(far.r, far.theta, far.phi).unwrap().to_proj();
        let tight = DistanceSearch { s_max: 0.5, grid: 4, ..Default::default() };
        match distance_from_origin(&p, &tight) {
            Err(Error::NoConvergence { residual }) => assert!(residual.is_finite()),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn distance_round_trip_light_endpoint() {
        let g = GeodesicInitial::new(0.0, FRAC_PI_4).unwrap();
        let smp = closed_form(&g, 1.0);
        let p = FiberPolar::new(smp.r, smp.theta, smp.phi).unwrap().to_proj();
        let d = distance_from_origin(&p, &DistanceSearch::default()).unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-6);
    }
}
