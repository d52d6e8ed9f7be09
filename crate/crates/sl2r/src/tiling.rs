//! Regular prism tilings T_p(q) of SL(2,R)~: parameter validation, the
//! base-figure geometry (vertex radius, circular side arcs, curvature),
//! sector and base areas, prism volumes, and the pq2_1 generator
//! matrices with their relation checks.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Isometry, ProjPoint};
use crate::numeric;

/// Validated parameters of a regular prism tiling: p >= 3 sides with
/// q prisms meeting at each side edge, subject to q (p - 2) > 2 p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingParams {
    p: u32,
    q: u32,
}

pub const P_CONSTRAINT: &str = "p must be at least 3";
pub const Q_CONSTRAINT: &str = "q must exceed 2p/(p-2)";

impl TilingParams {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidTiling { p, q, constraint: P_CONSTRAINT });
        }
        // Strict inequality: the Euclidean boundary case is excluded.
        if u64::from(q) * u64::from(p - 2) <= 2 * u64::from(p) {
            return Err(Error::InvalidTiling { p, q, constraint: Q_CONSTRAINT });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Prism height Psi = 2 (pi/2 - pi/p - pi/q); positive exactly on
    /// the valid parameter range.
    pub fn psi(&self) -> f64 {
        2.0 * (PI / 2.0 - PI / f64::from(self.p) - PI / f64::from(self.q))
    }
}

/// Circumscribed radius R_opt(p, q) = artanh sqrt((1 - tan(pi/p) tan(pi/q))
/// / (1 + tan(pi/p) tan(pi/q))), the distance from the prism axis to a
/// base vertex. Symmetric in p and q.
///
/// The denominator uses the symmetric product tan(pi/p) tan(pi/q); see
/// [`vertex_radius_asymmetric`] for the variant this replaces.
pub fn vertex_radius(params: &TilingParams) -> f64 {
    let t = (PI / f64::from(params.p)).tan() * (PI / f64::from(params.q)).tan();
    // Logarithmic form of artanh sqrt((1-t)/(1+t)): the direct artanh
    // loses precision near 1 for large p, q.
    ((1.0 - t).sqrt() + (1.0 + t).sqrt()).ln() - 0.5 * (2.0 * t).ln()
}

/// Vertex radius variant with the denominator 1 + tan^2(pi/q) instead
/// of the symmetric product. Kept only for comparison: it reproduces
/// neither the reference radius tables nor the doubling identity
/// against the hyperbolic mosaic circumradius, so [`vertex_radius`] is
/// what the rest of the crate uses.
pub fn vertex_radius_asymmetric(params: &TilingParams) -> f64 {
    let tq = (PI / f64::from(params.q)).tan();
    let num = 1.0 - (PI / f64::from(params.p)).tan() * tq;
    let den = 1.0 + tq * tq;
    (num / den).sqrt().atanh()
}

/// Rational-quadratic coefficients of the side curve c_{A1 A2} in the
/// base plane: y = k N(t)/D(t), z = k M(t)/D(t) with quadratic N, M and
/// D(t) = sin^2 A + t^2 cos^2 A, A = pi/p + pi/q. The curve runs from
/// the vertex at base angle 0 (t = 0) to the vertex at 2 pi / p (t = 1).
struct SideCurveCoeffs {
    k: f64,
    // y numerator a2 t^2 + a1 t + a0
    a0: f64,
    a1: f64,
    a2: f64,
    // z numerator d1 t^2 + d0 t
    d0: f64,
    d1: f64,
    // denominator sin^2 A + t^2 cos^2 A
    sin2_a: f64,
    cos2_a: f64,
}

impl SideCurveCoeffs {
    fn new(params: &TilingParams) -> Self {
        let p = PI / f64::from(params.p);
        let q = PI / f64::from(params.q);
        let a = p + q;
        let (sin_a, cos_a) = a.sin_cos();
        let sin2_a = sin_a * sin_a;
        let cos2_a = cos_a * cos_a;
        let sin_2p = (2.0 * p).sin();
        let cos_2p = (2.0 * p).cos();
        let sin_2a = (2.0 * a).sin();
        let k = (sin_2a / (sin_2p + (2.0 * q).sin())).sqrt();
        Self {
            k,
            a0: sin2_a,
            a1: cos_2p * sin2_a - 0.5 * sin_2p * sin_2a - sin2_a,
            a2: cos_a * (p - q).cos(),
            d0: sin_2p * sin2_a + 0.5 * cos_2p * sin_2a - sin_a * cos_a,
            d1: sin_2p * cos2_a - 0.5 * cos_2p * sin_2a + sin_a * cos_a,
            sin2_a,
            cos2_a,
        }
    }

    fn eval(&self, t: f64) -> (f64, f64) {
        let den = self.sin2_a + t * t * self.cos2_a;
        let y = self.k * ((self.a2 * t + self.a1) * t + self.a0) / den;
        let z = self.k * (self.d1 * t + self.d0) * t / den;
        (y, z)
    }

    fn eval_deriv(&self, t: f64) -> (f64, f64) {
        let den = self.sin2_a + t * t * self.cos2_a;
        let dden = 2.0 * t * self.cos2_a;
        let ny = (self.a2 * t + self.a1) * t + self.a0;
        let dny = 2.0 * self.a2 * t + self.a1;
        let nz = (self.d1 * t + self.d0) * t;
        let dnz = 2.0 * self.d1 * t + self.d0;
        (
            self.k * (dny * den - ny * dden) / (den * den),
            self.k * (dnz * den - nz * dden) / (den * den),
        )
    }
}

/// Point of the side curve c_{A1 A2} at parameter t in [0, 1], as a
/// base-plane model point (1; 0; y; z). Endpoints are the base vertices
/// at model radius tanh(R_opt) from the origin.
pub fn side_curve(params: &TilingParams, t: f64) -> Result<ProjPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("curve parameter {t} outside [0, 1]")));
    }
    let (y, z) = SideCurveCoeffs::new(params).eval(t);
    ProjPoint::new(1.0, 0.0, y, z)
}

/// Euclidean (y, z) coordinates and parameter derivatives of the side
/// curve; exposed for quadrature and curvature cross-checks.
pub fn side_curve_yz(params: &TilingParams, t: f64) -> ((f64, f64), (f64, f64)) {
    let c = SideCurveCoeffs::new(params);
    (c.eval(t), c.eval_deriv(t))
}

/// Euclidean curvature C_p(q) of the side curves; the curves are
/// circular arcs of radius 1 / C_p(q).
pub fn side_curvature(params: &TilingParams) -> f64 {
    let p = PI / f64::from(params.p);
    let q = PI / f64::from(params.q);
    let a = p + q;
    let num = a.cos() * ((2.0 * p).sin() + (2.0 * q).sin());
    let den = a.sin() * (1.0 - (2.0 * p).cos());
    (num / den).sqrt()
}

/// Volume of the sector-like domain over [theta1, theta2] with radial
/// boundary r(theta) and fibre height psi:
/// Psi * integral of (cosh(2 r(theta)) - 1)/4 dtheta.
pub fn sector_volume(
    r_of_theta: impl Fn(f64) -> f64,
    theta1: f64,
    theta2: f64,
    psi: f64,
    tol: f64,
) -> Result<f64> {
    if !(psi.is_finite() && psi > 0.0) {
        return Err(Error::InvalidArgument(format!("height psi = {psi} must be positive")));
    }
    let integral = numeric::integrate(
        |theta| ((2.0 * r_of_theta(theta)).cosh() - 1.0) / 4.0,
        theta1,
        theta2,
        tol,
    )?;
    Ok(psi * integral)
}

/// Base-figure area by quadrature along one side curve, times p.
/// With rho^2 = y^2 + z^2 and r = artanh rho, the sector integrand
/// (cosh 2r - 1)/4 dtheta collapses to (y z' - z y') / (2 (1 - rho^2)) dt.
pub(crate) fn base_area_quadrature(params: &TilingParams, tol: f64) -> Result<f64> {
    let c = SideCurveCoeffs::new(params);
    let integral = numeric::integrate(
        |t| {
            let (y, z) = c.eval(t);
            let (dy, dz) = c.eval_deriv(t);
            (y * dz - z * dy) / (2.0 * (1.0 - y * y - z * z))
        },
        0.0,
        1.0,
        tol,
    )?;
    Ok(f64::from(params.p) * integral)
}

const BASE_AREA_GATE: f64 = 1e-6;

/// Area of the base figure P(p, q), evaluated two ways: the closed form
/// p (pi/2 - pi/p - pi/q) / 2 and numeric sector quadrature along the
/// side-curve boundary. Returns the closed form after checking that the
/// routes agree to 1e-6 relative.
pub fn base_area(params: &TilingParams) -> Result<f64> {
    let closed = f64::from(params.p) * (PI / 2.0 - PI / f64::from(params.p) - PI / f64::from(params.q)) / 2.0;
    let quad = base_area_quadrature(params, (closed * 1e-9).max(1e-13))?;
    let gap = (quad - closed).abs() / closed;
    if gap > BASE_AREA_GATE {
        return Err(Error::Inconsistent { label: "base area", lhs: closed, rhs: quad, gap });
    }
    Ok(closed)
}

/// Volume of the bounded regular prism of height psi:
/// p sector volumes, i.e. psi times the base area.
pub fn prism_volume(params: &TilingParams, psi: f64) -> Result<f64> {
    if !(psi.is_finite() && psi > 0.0) {
        return Err(Error::InvalidArgument(format!("height psi = {psi} must be positive")));
    }
    Ok(psi * base_area(params)?)
}

/// Base-figure geometry in the frame of the side-curve parametrization:
/// vertex A1 at base angle 0, the opposite vertex at 2 pi / p, and the
/// side arc's Euclidean center on the bisector.
#[derive(Debug, Clone, Copy)]
pub struct BaseFigure {
    pub params: TilingParams,
    /// Euclidean model radius of the vertices, tanh(R_opt).
    pub vertex_model_radius: f64,
    /// Euclidean center of one side arc.
    pub side_arc_center: [f64; 2],
    /// Euclidean radius of the side arcs, 1 / C_p(q).
    pub side_arc_radius: f64,
    /// Prism height Psi.
    pub psi: f64,
}

impl BaseFigure {
    pub fn new(params: TilingParams) -> Self {
        let b = vertex_radius(&params).tanh();
        let rc = 1.0 / side_curvature(&params);
        let half = PI / f64::from(params.p);
        // Center on the bisector, beyond the chord (the arcs bow toward
        // the origin).
        let d = b * half.cos() + (rc * rc - (b * half.sin()).powi(2)).sqrt();
        Self {
            params,
            vertex_model_radius: b,
            side_arc_center: [d * half.cos(), d * half.sin()],
            side_arc_radius: rc,
            psi: params.psi(),
        }
    }

    /// Euclidean distance from the origin to the side arc along the ray
    /// at base angle theta (valid across one sector, theta in
    /// [0, 2 pi / p]).
    pub fn boundary_model_radius(&self, theta: f64) -> f64 {
        let half = PI / f64::from(self.params.p);
        let d = self.side_arc_center[0].hypot(self.side_arc_center[1]);
        let c = (theta - half).cos();
        let s = (theta - half).sin();
        d * c - (self.side_arc_radius * self.side_arc_radius - d * d * s * s).sqrt()
    }

    /// Hyperbolic distance from the origin to the side arc at base
    /// angle theta.
    pub fn boundary_radius(&self, theta: f64) -> f64 {
        self.boundary_model_radius(theta).atanh()
    }
}

/// Generators of the tiling group pq2_1 realized as model isometries:
/// `a` the p-rotation about the origin fibre, `b` the q-rotation about
/// the fibre through the vertex A1, `s = b a b` the screw motion, and
/// `tau = a b a b` the fibre translation of the tiling.
#[derive(Debug, Clone)]
pub struct GroupGenerators {
    pub params: TilingParams,
    pub a: Isometry,
    pub b: Isometry,
    pub s: Isometry,
    pub tau: Isometry,
    /// Vertex A1 the q-rotation is centred on.
    pub vertex: ProjPoint,
    /// Fibre-translation parameter of tau; equals the prism height Psi
    /// in this orientation convention.
    pub fibre_parameter: f64,
}

/// Residuals of the defining relations, measured on the constructed
/// matrices by projective comparison with the identity.
#[derive(Debug, Clone, Copy)]
pub struct RelationResiduals {
    pub a_power: f64,
    pub b_power: f64,
    pub word: f64,
    pub tau_fibre_form: f64,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.a_power.max(self.b_power).max(self.word).max(self.tau_fibre_form)
    }
}

const RELATION_TOL: f64 = 1e-9;
// Repeated products of the q-rotation accumulate rounding for very
// large orders; beyond the tabulated range a looser gate applies.
const RELATION_TOL_LARGE: f64 = 1e-6;

fn relation_tol(params: &TilingParams) -> f64 {
    if params.p <= 50 && params.q <= 50 {
        RELATION_TOL
    } else {
        RELATION_TOL_LARGE
    }
}

impl GroupGenerators {
    /// Raw relation residuals of the stored generators.
    pub fn relation_residuals(&self) -> RelationResiduals {
        let id = Isometry::identity();
        let a_power = self.a.pow(self.params.p as i32).map(|m| m.proportionality_residual(&id));
        let b_power = self.b.pow(self.params.q as i32).map(|m| m.proportionality_residual(&id));
        let a_inv = self.a.inverse();
        let b_inv = self.b.inverse();
        let word = match (a_inv, b_inv) {
            (Ok(ai), Ok(bi)) => {
                let w = self
                    .a
                    .then(&self.b)
                    .then(&self.a)
                    .then(&self.b)
                    .then(&ai)
                    .then(&bi)
                    .then(&ai)
                    .then(&bi);
                w.proportionality_residual(&id)
            }
            _ => f64::INFINITY,
        };
        let tau_fibre_form = self
            .tau
            .fibre_translation_parameter(f64::INFINITY)
            .map_or(f64::INFINITY, |(_, res)| res);
        RelationResiduals {
            a_power: a_power.unwrap_or(f64::INFINITY),
            b_power: b_power.unwrap_or(f64::INFINITY),
            word,
            tau_fibre_form,
        }
    }
}

/// Construct the pq2_1 generators for a valid parameter pair and verify
/// the group relations on the actual matrices. The vertex A1 sits at
/// base angle -pi/p so that the side curve c_{A1 A2} straddles the
/// positive y-axis; both rotations share one orientation (the relations
/// fail with mixed orientations).
pub fn group_generators(params: &TilingParams) -> Result<GroupGenerators> {
    let p = params.p;
    let q = params.q;
    let b_model = vertex_radius(params).tanh();
    let theta1 = -PI / f64::from(p);
    let vertex = ProjPoint::new(1.0, 0.0, b_model * theta1.cos(), b_model * theta1.sin())?;

    let a = Isometry::rotation_about_origin(2.0 * PI / f64::from(p))?;
    let b = Isometry::rotation_about_fibre(&vertex, 2.0 * PI / f64::from(q))?;
    let s = b.then(&a).then(&b);
    let tau = a.then(&b).then(&a).then(&b);

    let tol = relation_tol(params);
    let gens = GroupGenerators {
        params: *params,
        a,
        b,
        s,
        tau,
        vertex,
        fibre_parameter: 0.0,
    };
    let residuals = gens.relation_residuals();
    if residuals.a_power > tol {
        return Err(Error::GroupConstruction { p, q, reason: "a^p is not the identity", residual: residuals.a_power });
    }
    if residuals.b_power > tol {
        return Err(Error::GroupConstruction { p, q, reason: "b^q is not the identity", residual: residuals.b_power });
    }
    if residuals.word > tol {
        return Err(Error::GroupConstruction {
            p,
            q,
            reason: "abab a^-1 b^-1 a^-1 b^-1 is not the identity",
            residual: residuals.word,
        });
    }
    let Some((phi0, res)) = gens.tau.fibre_translation_parameter(tol) else {
        return Err(Error::GroupConstruction {
            p,
            q,
            reason: "tau = abab is not a fibre translation",
            residual: residuals.tau_fibre_form,
        });
    };
    // Measured convention: tau translates by exactly the prism height.
    let psi = params.psi();
    if (phi0 - psi).abs() > tol.max(1e-12 * (1.0 + psi)) {
        return Err(Error::GroupConstruction {
            p,
            q,
            reason: "tau parameter does not equal the prism height",
            residual: (phi0 - psi).abs(),
        });
    }
    let _ = res;
    Ok(GroupGenerators { fibre_parameter: phi0, ..gens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MATRIX_TOL;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validation_accepts_table_pairs() {
        assert!(TilingParams::new(3, 7).is_ok());
        assert!(TilingParams::new(7, 3).is_ok());
        assert!(TilingParams::new(5000, 3).is_ok());
    }

    #[test]
    fn validation_rejects_boundary_and_low_p() {
        let err = TilingParams::new(3, 6).unwrap_err();
        assert!(err.to_string().contains("2p/(p-2)"));
        let err = TilingParams::new(2, 100).unwrap_err();
        assert!(err.to_string().contains("at least 3"));
        assert!(TilingParams::new(4, 4).is_err()); // q (p-2) = 8 = 2p
    }

    #[test]
    fn vertex_radius_reproduces_reference_values() {
        let r37 = vertex_radius(&TilingParams::new(3, 7).unwrap());
        assert_abs_diff_eq!(r37, 0.31034, epsilon = 5e-5);
        let r73 = vertex_radius(&TilingParams::new(7, 3).unwrap());
        assert_abs_diff_eq!(r73, r37, epsilon = 1e-15);
        let r46 = vertex_radius(&TilingParams::new(4, 6).unwrap());
        assert_abs_diff_eq!(r46, 0.57311, epsilon = 5e-5);
        // (4,6): tanh(R_opt) = (sqrt 6 - sqrt 2)/2.
        assert_abs_diff_eq!(r46.tanh(), (6.0f64.sqrt() - 2.0f64.sqrt()) / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn asymmetric_vertex_radius_differs() {
        // The asymmetric denominator misses the reference 0.31034 by a
        // wide margin and is not symmetric in p and q.
        let params = TilingParams::new(3, 7).unwrap();
        assert_abs_diff_eq!(vertex_radius_asymmetric(&params), 0.3849044333022774, epsilon = 1e-13);
        assert!((vertex_radius_asymmetric(&params) - 0.31034).abs() > 5e-2);
        let swapped = TilingParams::new(7, 3).unwrap();
        assert_abs_diff_eq!(vertex_radius_asymmetric(&swapped), 0.2065343489748999, epsilon = 1e-13);
    }

    #[test]
    fn side_curve_endpoints_at_vertex_radius() {
        for (p, q) in [(3, 7), (4, 6), (7, 3)] {
            let params = TilingParams::new(p, q).unwrap();
            let b = vertex_radius(&params).tanh();
            for t in [0.0, 1.0] {
                let pt = side_curve(&params, t).unwrap();
                let [_, x1, y, z] = pt.normalized();
                assert_eq!(x1, 0.0);
                assert_abs_diff_eq!(y.hypot(z), b, epsilon = 1e-13);
            }
            // Far endpoint sits at base angle 2 pi / p.
            let (yz, _) = side_curve_yz(&params, 1.0);
            assert_abs_diff_eq!(yz.1.atan2(yz.0), 2.0 * PI / f64::from(p), epsilon = 1e-12);
        }
    }

    #[test]
    fn side_curve_rejects_out_of_range_parameter() {
        let params = TilingParams::new(3, 7).unwrap();
        assert!(side_curve(&params, -0.1).is_err());
        assert!(side_curve(&params, 1.1).is_err());
    }

    #[test]
    fn side_curve_points_stay_in_base_plane_and_interior() {
        let params = TilingParams::new(5, 4).unwrap();
        for i in 0..=20 {
            let pt = side_curve(&params, i as f64 / 20.0).unwrap();
            assert!(pt.is_interior());
            assert_eq!(pt.coords()[1], 0.0);
        }
    }

    #[test]
    fn curvature_matches_finite_difference_oracle() {
        for (p, q) in [(3, 7), (4, 6), (7, 3)] {
            let params = TilingParams::new(p, q).unwrap();
            let c = side_curvature(&params);
            // kappa = |y' z'' - z' y''| / (y'^2 + z'^2)^(3/2) by central
            // differences at mid-curve.
            let h = 1e-5;
            let t = 0.5;
            let (_, (y1, z1)) = side_curve_yz(&params, t);
            let ((ym, zm), _) = side_curve_yz(&params, t - h);
            let ((y0, z0), _) = side_curve_yz(&params, t);
            let ((yp, zp), _) = side_curve_yz(&params, t + h);
            let ypp = (yp - 2.0 * y0 + ym) / (h * h);
            let zpp = (zp - 2.0 * z0 + zm) / (h * h);
            let kappa = (y1 * zpp - z1 * ypp).abs() / (y1 * y1 + z1 * z1).powf(1.5);
            assert_abs_diff_eq!(kappa, c, epsilon = 1e-5 * c);
        }
    }

    #[test]
    fn side_curve_fits_circle_of_curvature_radius() {
        let params = TilingParams::new(3, 7).unwrap();
        let pts: Vec<[f64; 2]> = (0..64)
            .map(|i| {
                let ((y, z), _) = side_curve_yz(&params, i as f64 / 63.0);
                [y, z]
            })
            .collect();
        let fit = numeric::fit_circle(&pts).unwrap();
        assert!(fit.max_residual < 1e-9);
        assert_abs_diff_eq!(fit.radius * side_curvature(&params), 1.0, epsilon = 1e-8);
        // Frozen high-precision curvature.
        assert_abs_diff_eq!(side_curvature(&params), 0.286926008881191, epsilon = 1e-13);
    }

    #[test]
    fn sector_volume_of_constant_radius_is_circle_area() {
        let r = 0.8;
        let v = sector_volume(|_| r, 0.0, 2.0 * PI, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, PI * r.sinh() * r.sinh(), epsilon = 1e-10);
    }

    #[test]
    fn sector_volume_is_linear_in_height() {
        let v1 = sector_volume(|th| 0.3 + 0.1 * th.sin(), 0.0, 1.0, 1.0, 1e-12).unwrap();
        let v2 = sector_volume(|th| 0.3 + 0.1 * th.sin(), 0.0, 1.0, 2.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v2, 2.0 * v1, epsilon = 1e-12);
    }

    #[test]
    fn sector_volume_rejects_bad_height() {
        assert!(sector_volume(|_| 0.5, 0.0, 1.0, 0.0, 1e-10).is_err());
        assert!(sector_volume(|_| 0.5, 0.0, 1.0, -1.0, 1e-10).is_err());
    }

    #[test]
    fn base_sector_times_p_matches_reference_area() {
        // Sector OA1A2 of (3,7) integrated over the arc boundary.
        let params = TilingParams::new(3, 7).unwrap();
        let fig = BaseFigure::new(params);
        let v = sector_volume(|th| fig.boundary_radius(th), 0.0, 2.0 * PI / 3.0, 1.0, 1e-11).unwrap();
        assert_abs_diff_eq!(3.0 * v, 0.11220, epsilon = 5e-5);
    }

    #[test]
    fn base_area_reference_values() {
        for (p, q, expect) in [(3u32, 7u32, 0.11220), (7, 3, 0.26180), (4, 1000, 1.56451)] {
            let a = base_area(&TilingParams::new(p, q).unwrap()).unwrap();
            assert_abs_diff_eq!(a, expect, epsilon = 5e-5);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)] // 0.52360 is a reference cell, not pi/6
    fn prism_volume_examples() {
        let p46 = TilingParams::new(4, 6).unwrap();
        assert_abs_diff_eq!(prism_volume(&p46, 1.0).unwrap(), 0.52360, epsilon = 5e-5);
        let p37 = TilingParams::new(3, 7).unwrap();
        let psi = p37.psi();
        assert_abs_diff_eq!(
            prism_volume(&p37, psi).unwrap(),
            psi * base_area(&p37).unwrap(),
            epsilon = 1e-14
        );
        assert!(prism_volume(&p37, 0.0).is_err());
    }

    #[test]
    fn base_figure_arc_touches_inscribed_circle() {
        // The arc's nearest point to the origin is the inscribed-circle
        // radius, at the bisector angle.
        let params = TilingParams::new(3, 7).unwrap();
        let fig = BaseFigure::new(params);
        let r_in = fig.boundary_radius(PI / 3.0);
        assert_abs_diff_eq!(r_in, 0.14156, epsilon = 5e-5);
    }

    #[test]
    fn generators_satisfy_relations() {
        let gens = group_generators(&TilingParams::new(3, 7).unwrap()).unwrap();
        let res = gens.relation_residuals();
        assert!(res.max() < 1e-9, "residuals {res:?}");
        // tau is a fibre translation by the prism height.
        assert_abs_diff_eq!(gens.fibre_parameter, gens.params.psi(), epsilon = 1e-12);
        // tau is central for a, and s = bab.
        assert!(gens.a.then(&gens.tau).proportional_to(&gens.tau.then(&gens.a), MATRIX_TOL));
        let bab = gens.b.then(&gens.a).then(&gens.b);
        assert!(gens.s.proportional_to(&bab, 1e-12));
        // (ab)^2 = tau: the half-screw squares to the fibre translation.
        let ab = gens.a.then(&gens.b);
        assert!(ab.then(&ab).proportional_to(&gens.tau, 1e-9));
        // baba = abab = tau.
        let baba = gens.b.then(&gens.a).then(&gens.b).then(&gens.a);
        assert!(baba.proportional_to(&gens.tau, 1e-9));
    }

    #[test]
    fn vertex_radius_is_symmetric_across_valid_swaps() {
        for p in 3..=12u32 {
            for q in 3..=12u32 {
                let (Ok(a), Ok(b)) = (TilingParams::new(p, q), TilingParams::new(q, p)) else {
                    continue;
                };
                assert!((vertex_radius(&a) - vertex_radius(&b)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn generators_fix_their_centres() {
        let gens = group_generators(&TilingParams::new(4, 6).unwrap()).unwrap();
        assert!(gens.b.apply(&gens.vertex).approx_eq(&gens.vertex, 1e-12));
        let origin = ProjPoint::origin();
        assert!(gens.a.apply(&origin).approx_eq(&origin, 1e-12));
    }
}
