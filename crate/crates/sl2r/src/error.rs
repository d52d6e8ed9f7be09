use thiserror::Error;

/// Errors produced by the geometry kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The point does not satisfy the interior predicate
    /// -x0^2 - x1^2 + x2^2 + x3^2 < 0.
    #[error("point lies on or outside the model quadric (form value {form})")]
    OutsideModel { form: f64 },

    #[error("invalid tiling parameters (p, q) = ({p}, {q}): {constraint}")]
    InvalidTiling { p: u32, q: u32, constraint: &'static str },

    #[error("pair #{index} (p, q) = ({p}, {q}) is invalid: {constraint}")]
    InvalidPairAt {
        index: usize,
        p: u32,
        q: u32,
        constraint: &'static str,
    },

    #[error("quadrature did not converge: residual {residual:e} above tolerance {tolerance:e}")]
    QuadratureFailed { residual: f64, tolerance: f64 },

    #[error("ODE integration failed near s = {s}: {reason}")]
    IntegrationFailed { s: f64, reason: &'static str },

    #[error("search did not converge; best residual {residual:e}")]
    NoConvergence { residual: f64 },

    /// Two independent evaluation routes disagreed beyond tolerance.
    #[error("{label}: routes disagree ({lhs} vs {rhs}, relative gap {gap:e})")]
    Inconsistent {
        label: &'static str,
        lhs: f64,
        rhs: f64,
        gap: f64,
    },

    #[error("operation requires a bounded cylinder (height present)")]
    UnboundedCylinder,

    /// The translated cylinder does not cut the base plane in a bounded circle.
    #[error("degenerate base-plane section (denominator {denominator})")]
    DegenerateSection { denominator: f64 },

    #[error("group construction failed for (p, q) = ({p}, {q}): {reason} (residual {residual:e})")]
    GroupConstruction { p: u32, q: u32, reason: &'static str, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
