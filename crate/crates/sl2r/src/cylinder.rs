//! Fibre-like cylinders: the Euclidean quadric form of the infinite
//! cylinder, base circles of translated cylinders, the touching
//! condition and its extremal radius, perimeter/area/surface/volume
//! formulas, and the optimal inscribed and circumscribed radii of the
//! prism base figures.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::InhomPoint;
use crate::numeric;
use crate::tiling::{self, TilingParams};

/// A fibre-like circular cylinder of hyperbolic base radius r, either
/// infinite or bounded by a fibre height psi.
#[derive(Debug, Clone, Copy)]
pub struct Cylinder {
    r: f64,
    psi: Option<f64>,
}

impl Cylinder {
    pub fn infinite(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidArgument(format!("cylinder radius {r} must be positive")));
        }
        Ok(Self { r, psi: None })
    }

    pub fn bounded(r: f64, psi: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidArgument(format!("cylinder radius {r} must be positive")));
        }
        if !(psi.is_finite() && psi > 0.0) {
            return Err(Error::InvalidArgument(format!("cylinder height {psi} must be positive")));
        }
        Ok(Self { r, psi: Some(psi) })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn height(&self) -> Option<f64> {
        self.psi
    }
}

/// Signed residual of the infinite cylinder's model surface at the
/// inhomogeneous point: y^2/tanh^2 r + z^2/tanh^2 r - x^2 - 1, zero on
/// the one-sheeted Euclidean hyperboloid the side surface traces out.
pub fn quadric_residual(cyl: &Cylinder, p: &InhomPoint) -> f64 {
    let t2 = cyl.r.tanh() * cyl.r.tanh();
    (p.y * p.y + p.z * p.z) / t2 - p.x * p.x - 1.0
}

/// Base-plane section of a translated infinite cylinder: a Euclidean
/// circle, together with the foot point of the translated axis (the
/// hyperbolic centre of the section, distinct from the Euclidean one).
#[derive(Debug, Clone, Copy)]
pub struct TranslatedBaseCircle {
    /// Euclidean centre of the section circle.
    pub center: [f64; 2],
    /// Euclidean radius of the section circle.
    pub radius: f64,
    /// Foot point of the translated axis fibre on the base plane.
    pub axis_foot: [f64; 2],
}

/// Section of the cylinder translated by T(1; x1; x2; x3) with the base
/// plane. Derived by pushing the quadric of the side surface through the
/// translation; for x1 = 0 the radius reduces to
/// tanh r (1 - m) / (1 - tanh^2 r m) with m = x2^2 + x3^2.
///
/// The axis foot point is ((x2 - x1 x3), (x3 + x1 x2)) / (1 + x1^2); the
/// Euclidean centre differs from it by the factor
/// (1 + x1^2)(1 - tanh^2 r) / D with D the section denominator.
pub fn translated_base_circle(cyl: &Cylinder, t: [f64; 3]) -> Result<TranslatedBaseCircle> {
    let [x1, x2, x3] = t;
    if t.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite translation {t:?}")));
    }
    let h = 1.0 + x1 * x1;
    let n = x2 * x2 + x3 * x3;
    if h - n <= 0.0 {
        // (1; x1; x2; x3) is not an interior point, so T is not a model
        // translation.
        return Err(Error::OutsideModel { form: n - h });
    }
    let k = cyl.r.tanh() * cyl.r.tanh();
    let denom = h - k * n;
    if denom <= 0.0 {
        return Err(Error::DegenerateSection { denominator: denom });
    }
    let foot = [(x2 - x1 * x3) / h, (x3 + x1 * x2) / h];
    let scale = h * (1.0 - k) / denom;
    Ok(TranslatedBaseCircle {
        center: [foot[0] * scale, foot[1] * scale],
        radius: cyl.r.tanh() * (h - n) / denom,
        axis_foot: foot,
    })
}

/// Euclidean radius of the base circle of a cylinder translated to
/// touching distance (hyperbolic distance 2r between the axis feet):
/// tanh r (1 - tanh^2 2r) / (1 - tanh^2 2r tanh^2 r).
///
/// This is `translated_base_circle` evaluated at |t| = tanh 2r; its
/// graph peaks at r ~ 0.41572. See [`touching_radius_variant`] for the
/// form with numerator (1 - tanh^2 r), which is monotone and so has no
/// interior maximum.
pub fn touching_radius(r: f64) -> f64 {
    assert!(r.is_finite() && r >= 0.0, "radius must be non-negative");
    let u = r.tanh();
    let w = (2.0 * r).tanh();
    u * (1.0 - w * w) / (1.0 - w * w * u * u)
}

/// Touching-circle radius variant with numerator (1 - tanh^2 r). Kept
/// only for comparison: it equals tanh r (1 + tanh^2 r)^2 /
/// (1 + 3 tanh^2 r), strictly increasing toward 1, and inconsistent
/// with the Euclidean tangency of the section circles that defines
/// touching.
pub fn touching_radius_variant(r: f64) -> f64 {
    assert!(r.is_finite() && r >= 0.0, "radius must be non-negative");
    let u = r.tanh();
    let w = (2.0 * r).tanh();
    u * (1.0 - u * u) / (1.0 - w * w * u * u)
}

/// Maximizer of the touching radius curve, located by bracketing the
/// root of its numeric derivative. Returns (r_star, R(r_star)).
pub fn max_touching_radius() -> Result<(f64, f64)> {
    let h = 1e-6;
    let deriv = |r: f64| (touching_radius(r + h) - touching_radius(r - h)) / (2.0 * h);
    // Scan for the sign change of the derivative.
    let mut bracket = None;
    let mut prev = (0.05, deriv(0.05));
    for i in 1..=60 {
        let r = 0.05 + 0.05 * f64::from(i);
        let d = deriv(r);
        if prev.1 > 0.0 && d <= 0.0 {
            bracket = Some((prev.0, r));
            break;
        }
        prev = (r, d);
    }
    let (lo, hi) = bracket.ok_or(Error::NoConvergence { residual: prev.1 })?;
    let r_star = numeric::brent_root(deriv, lo, hi, 1e-12)?;
    Ok((r_star, touching_radius(r_star)))
}

/// Perimeter of the base-plane circle of hyperbolic radius r:
/// 2 pi sinh r sqrt(cosh 2r).
pub fn circle_perimeter(r: f64) -> f64 {
    assert!(r.is_finite() && r >= 0.0, "radius must be non-negative");
    2.0 * PI * r.sinh() * (2.0 * r).cosh().sqrt()
}

/// Area of the base-plane circle of hyperbolic radius r: pi sinh^2 r.
pub fn circle_area(r: f64) -> f64 {
    assert!(r.is_finite() && r >= 0.0, "radius must be non-negative");
    PI * r.sinh() * r.sinh()
}

/// Total surface area of a bounded cylinder: the lateral strip plus the
/// two cover faces, 2 pi sinh r (sqrt(cosh 2r) psi + sinh r).
pub fn cylinder_surface_area(cyl: &Cylinder) -> Result<f64> {
    let psi = cyl.psi.ok_or(Error::UnboundedCylinder)?;
    let r = cyl.r;
    Ok(2.0 * PI * r.sinh() * ((2.0 * r).cosh().sqrt() * psi + r.sinh()))
}

/// Volume of a bounded cylinder: psi pi sinh^2 r.
pub fn cylinder_volume(cyl: &Cylinder) -> Result<f64> {
    let psi = cyl.psi.ok_or(Error::UnboundedCylinder)?;
    Ok(psi * circle_area(cyl.r))
}

/// Radius of the inscribed circle of the base figure P(p, q):
/// artanh sqrt((cos(pi/q) - sin(pi/p)) / (cos(pi/q) + sin(pi/p))).
pub fn inscribed_radius(params: &TilingParams) -> f64 {
    let c = (PI / f64::from(params.q())).cos();
    let s = (PI / f64::from(params.p())).sin();
    // Logarithmic form of artanh sqrt((c-s)/(c+s)), stable for large p.
    ((c - s).sqrt() + (c + s).sqrt()).ln() - 0.5 * (2.0 * s).ln()
}

/// Radius of the circumscribed circle of P(p, q); the vertex distance of
/// the tiling.
pub fn circumscribed_radius(params: &TilingParams) -> f64 {
    tiling::vertex_radius(params)
}
