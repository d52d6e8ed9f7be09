//! Projective hyperboloid model of SL(2,R)~ space.
//!
//! Points are homogeneous rows (x0; x1; x2; x3) taken up to a *positive*
//! scalar (projective-sphere convention); the model interior is the
//! one-sheeted hyperboloid solid -x0^2 - x1^2 + x2^2 + x3^2 < 0.
//! Isometries are 4x4 matrices acting on row coordinate vectors on the
//! right, so `p.apply(&m)` composes left-to-right as `p * M`.

use nalgebra::{Matrix4, RowVector4};

use crate::error::{Error, Result};

/// Absolute tolerance for projective equality of points.
pub const POINT_TOL: f64 = 1e-12;
/// Frobenius tolerance for projective proportionality of isometries.
pub const MATRIX_TOL: f64 = 1e-10;

/// Homogeneous model point, equal up to positive scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    coords: [f64; 4],
}

impl ProjPoint {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let coords = [x0, x1, x2, x3];
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite homogeneous coordinates {coords:?}"
            )));
        }
        if coords.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidArgument(
                "all four homogeneous coordinates are zero".into(),
            ));
        }
        Ok(Self { coords })
    }

    /// The origin E0 = (1; 0; 0; 0).
    pub fn origin() -> Self {
        Self { coords: [1.0, 0.0, 0.0, 0.0] }
    }

    pub fn coords(&self) -> [f64; 4] {
        self.coords
    }

    /// Sign-carrying value of the invariant quadratic form
    /// -x0^2 - x1^2 + x2^2 + x3^2 on the stored representative.
    /// Scale-covariant (factor lambda^2 > 0), so only the sign is projective.
    pub fn quadratic_form(&self) -> f64 {
        let [x0, x1, x2, x3] = self.coords;
        -x0 * x0 - x1 * x1 + x2 * x2 + x3 * x3
    }

    pub fn is_interior(&self) -> bool {
        self.quadratic_form() < 0.0
    }

    pub(crate) fn interior_or_err(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::OutsideModel { form: self.quadratic_form() })
        }
    }

    /// Canonical representative: coordinates divided by the largest
    /// magnitude entry (a positive scale, so the projective-sphere class
    /// is preserved; antipodal points stay distinct).
    pub fn normalized(&self) -> [f64; 4] {
        let m = self.coords.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
        self.coords.map(|c| c / m)
    }

    /// Unit-sphere representative (Euclidean norm 1); smooth in the
    /// coordinates, used for residuals in numeric solvers.
    pub fn unit(&self) -> [f64; 4] {
        let n = self.coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.coords.map(|c| c / n)
    }

    /// Projective equality up to positive scale, componentwise on the
    /// max-normalized representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Inhomogeneous model coordinates (x, y, z) = (x1/x0, x2/x0, x3/x0);
    /// undefined on the ideal plane x0 = 0.
    pub fn inhom(&self) -> Option<InhomPoint> {
        let [x0, x1, x2, x3] = self.coords;
        if x0 == 0.0 {
            return None;
        }
        Some(InhomPoint { x: x1 / x0, y: x2 / x0, z: x3 / x0 })
    }

    /// Foot point of the fibre through this point on the base plane:
    /// Z = (x0^2 + x1^2; 0; x0 x2 - x1 x3; x0 x3 + x1 x2).
    /// Idempotent, and invariant under fibre translations of the input.
    pub fn foot_point(&self) -> Result<Self> {
        self.interior_or_err()?;
        let [x0, x1, x2, x3] = self.coords;
        ProjPoint::new(
            x0 * x0 + x1 * x1,
            0.0,
            x0 * x2 - x1 * x3,
            x0 * x3 + x1 * x2,
        )
    }

    /// Hyperboloid parametrization (r, theta, phi) of an interior point:
    /// x0 = cosh r cos phi, x1 = cosh r sin phi,
    /// x2 = sinh r cos(theta - phi), x3 = sinh r sin(theta - phi).
    ///
    /// phi is the principal value in (-pi, pi]; winding on the universal
    /// cover is the caller's responsibility.
    pub fn fiber_polar(&self) -> Result<FiberPolar> {
        let q = self.quadratic_form();
        if q >= 0.0 {
            return Err(Error::OutsideModel { form: q });
        }
        // Scale so that the form equals -1; then x0^2 + x1^2 = cosh^2 r
        // and x2^2 + x3^2 = sinh^2 r.
        let scale = (-q).sqrt();
        let [x0, x1, x2, x3] = self.coords.map(|c| c / scale);
        let r = x2.hypot(x3).asinh();
        let phi = principal_angle(x1.atan2(x0));
        let theta = if r == 0.0 {
            0.0
        } else {
            principal_angle(phi + x3.atan2(x2))
        };
        Ok(FiberPolar { r, theta, phi })
    }
}

/// Inhomogeneous Euclidean model coordinates of a point with x0 != 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl InhomPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_proj(&self) -> ProjPoint {
        ProjPoint { coords: [1.0, self.x, self.y, self.z] }
    }
}

/// Hyperboloid coordinates: base-plane polar radius r >= 0 and angle
/// theta, plus the fibre coordinate phi (any real; the induced model
/// point only sees phi mod 2 pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberPolar {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl FiberPolar {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite fiber-polar coordinates ({r}, {theta}, {phi})"
            )));
        }
        if r < 0.0 {
            return Err(Error::InvalidArgument(format!("negative polar radius {r}")));
        }
        Ok(Self { r, theta, phi })
    }

    /// Explicit universal-cover lift: the same point with 2 pi k added
    /// to the fibre coordinate. The principal-value chart and this
    /// winding parameter are all the cover bookkeeping the crate does.
    pub fn with_winding(self, k: i32) -> Self {
        Self { phi: self.phi + 2.0 * std::f64::consts::PI * f64::from(k), ..self }
    }

    /// Model point of these coordinates; always interior
    /// (-cosh^2 r + sinh^2 r = -1).
    pub fn to_proj(&self) -> ProjPoint {
        let (sh, ch) = (self.r.sinh(), self.r.cosh());
        let d = self.theta - self.phi;
        ProjPoint {
            coords: [
                ch * self.phi.cos(),
                ch * self.phi.sin(),
                sh * d.cos(),
                sh * d.sin(),
            ],
        }
    }
}

/// Reduce an angle to (-pi, pi].
pub fn principal_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * std::f64::consts::PI);
    if a <= -std::f64::consts::PI {
        a += 2.0 * std::f64::consts::PI;
    } else if a > std::f64::consts::PI {
        a -= 2.0 * std::f64::consts::PI;
    }
    a
}

/// An isometry of the model: a 4x4 matrix acting on point rows on the
/// right, up to a positive scalar factor. Determinants are not
/// renormalized; all equality checks are projective.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    m: Matrix4<f64>,
}

impl Isometry {
    pub fn identity() -> Self {
        Self { m: Matrix4::identity() }
    }

    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// Fibre translation S(phi): the one-parameter group with
    /// S(a) S(b) = S(a + b); its orbits are the fibre lines.
    pub fn fibre_translation(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite fibre parameter {phi}")));
        }
        let (s, c) = phi.sin_cos();
        Ok(Self {
            m: Matrix4::new(
                c, s, 0.0, 0.0, //
                -s, c, 0.0, 0.0, //
                0.0, 0.0, c, -s, //
                0.0, 0.0, s, c,
            ),
        })
    }

    /// Translation mapping the origin E0 onto `target`:
    /// the first matrix row is the target itself.
    pub fn translation_to(target: &ProjPoint) -> Result<Self> {
        target.interior_or_err()?;
        let [x0, x1, x2, x3] = target.coords();
        Ok(Self {
            m: Matrix4::new(
                x0, x1, x2, x3, //
                -x1, x0, x3, -x2, //
                x2, x3, x0, x1, //
                x3, -x2, -x1, x0,
            ),
        })
    }

    /// Rotation about the fibre line through the origin by `omega`,
    /// fixing E0 and every point of its fibre.
    pub fn rotation_about_origin(omega: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite rotation angle {omega}")));
        }
        let (s, c) = omega.sin_cos();
        Ok(Self {
            m: Matrix4::new(
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, c, s, //
                0.0, 0.0, -s, c,
            ),
        })
    }

    /// Rotation about the fibre line through `center`, conjugated from
    /// the origin rotation: T^-1 R_E0(omega) T with T = translation_to(center).
    pub fn rotation_about_fibre(center: &ProjPoint, omega: f64) -> Result<Self> {
        let t = Self::translation_to(center)?;
        let r = Self::rotation_about_origin(omega)?;
        let t_inv = t.inverse()?;
        Ok(Self { m: t_inv.m * r.m * t.m })
    }

    /// Image of a point under this isometry (row vector times matrix).
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [x0, x1, x2, x3] = p.coords();
        let row = RowVector4::new(x0, x1, x2, x3) * self.m;
        ProjPoint { coords: [row[0], row[1], row[2], row[3]] }
    }

    /// Composition applying `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.m
            .try_inverse()
            .map(|m| Self { m })
            .ok_or_else(|| Error::InvalidArgument("singular isometry matrix".into()))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, n: i32) -> Result<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = Self { m: acc.m * base.m };
            }
            base = Self { m: base.m * base.m };
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    /// Frobenius distance between the unit-Frobenius representatives.
    /// Small iff the matrices are proportional by a *positive* scalar.
    pub fn proportionality_residual(&self, other: &Self) -> f64 {
        let a = self.m / self.m.norm();
        let b = other.m / other.m.norm();
        (a - b).norm()
    }

    pub fn proportional_to(&self, other: &Self, tol: f64) -> bool {
        self.proportionality_residual(other) <= tol
    }

    /// If this isometry is (projectively) a fibre translation S(phi0),
    /// return (phi0, residual); `None` when the residual exceeds `tol`.
    pub fn fibre_translation_parameter(&self, tol: f64) -> Option<(f64, f64)> {
        // S(phi) has Frobenius norm 2; rescale and read the angle off
        // the upper rotation block.
        let n = self.m / (self.m.norm() / 2.0);
        let phi = n[(0, 1)].atan2(n[(0, 0)]);
        let s = Self::fibre_translation(phi).expect("finite angle");
        let residual = self.proportionality_residual(&s);
        (residual <= tol).then_some((phi, residual))
    }
}

impl std::ops::Mul for &Isometry {
    type Output = Isometry;

    /// `a * b` applies `a` first, then `b` (row-vector convention).
    fn mul(self, rhs: &Isometry) -> Isometry {
        self.then(rhs)
    }
}
