//! Numerical geometry kernel for the projective hyperboloid model of
//! SL(2,R)~ space.
//!
//! The model lives inside a one-sheeted hyperboloid solid of the real
//! projective sphere: points are homogeneous rows up to positive scale,
//! isometries act as 4x4 matrices on the right. On top of the model the
//! crate provides:
//!
//! - [`model`]: points, coordinate charts (inhomogeneous, fibre-polar),
//!   fibre translations, translations, rotations, foot points;
//! - [`geodesic`]: the metric tensor, closed-form geodesics in three
//!   direction classes, a direct ODE integrator used as an independent
//!   check, and a distance-from-origin solver;
//! - [`tiling`]: regular prism tilings T_p(q), their base figures with
//!   circular side arcs, sector/base areas, prism volumes, and the
//!   pq2_1 generator matrices with relation checks;
//! - [`cylinder`]: fibre-like cylinders, base circles of translated
//!   cylinders, the touching condition, and perimeter/area/volume
//!   formulas;
//! - [`density`]: optimal packing/covering densities, the hyperbolic
//!   mosaic counterparts, doubling identities, and asymptotics;
//! - [`verify`]: frozen reference tables and the check suites gating a
//!   build.
//!
//! ```
//! use sl2r::{density, TilingParams};
//!
//! let params = TilingParams::new(3, 7)?;
//! let row = density::packing_density(&params)?;
//! assert!((row.density - 0.56489).abs() < 5e-5);
//!
//! let identities = density::doubling_identities(&params);
//! assert!(identities.max_residual() < 1e-12);
//! # Ok::<(), sl2r::Error>(())
//! ```

pub mod cylinder;
pub mod density;
pub mod error;
pub mod geodesic;
pub mod model;
pub mod numeric;
pub mod tiling;
pub mod verify;

pub use error::{Error, Result};
pub use model::{FiberPolar, InhomPoint, Isometry, ProjPoint};
pub use tiling::TilingParams;
