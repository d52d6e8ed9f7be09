//! Optimal cylinder packing and covering densities of the prism
//! tilings, their hyperbolic-mosaic counterparts, the doubling
//! identities tying the two together, and the large-p asymptotics.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cylinder::{circle_area, circumscribed_radius, inscribed_radius};
use crate::error::{Error, Result};
use crate::tiling::{base_area, TilingParams};

/// Table mode: inscribed-cylinder packing or circumscribed-cylinder
/// covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    Packing,
    Covering,
}

/// One row of a density table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityRow {
    pub p: u32,
    pub q: u32,
    /// Inscribed radius r_opt (packing) or circumscribed R_opt (covering).
    pub radius: f64,
    /// Base-circle area of the cylinder at that radius.
    pub circle_area: f64,
    /// Area of the base figure P(p, q).
    pub base_area: f64,
    /// circle_area / base_area.
    pub density: f64,
}

fn density_row(params: &TilingParams, mode: TableMode) -> Result<DensityRow> {
    let radius = match mode {
        TableMode::Packing => inscribed_radius(params),
        TableMode::Covering => circumscribed_radius(params),
    };
    let circle = circle_area(radius);
    let base = base_area(params)?;
    Ok(DensityRow {
        p: params.p(),
        q: params.q(),
        radius,
        circle_area: circle,
        base_area: base,
        density: circle / base,
    })
}

/// Density of the optimal cylinder packing of T_p(q): the inscribed
/// cylinder's base-circle area over the base-figure area.
pub fn packing_density(params: &TilingParams) -> Result<DensityRow> {
    density_row(params, TableMode::Packing)
}

/// Density of the optimal cylinder covering of T_p(q): the circumscribed
/// cylinder's base-circle area over the base-figure area.
pub fn covering_density(params: &TilingParams) -> Result<DensityRow> {
    density_row(params, TableMode::Covering)
}

/// In-/circumradius and cell area of the regular hyperbolic mosaic
/// {p, q}.
#[derive(Debug, Clone, Copy)]
pub struct MosaicData {
    pub p: u32,
    pub q: u32,
    /// Inradius arccosh(cos(pi/q) / sin(pi/p)).
    pub in_radius: f64,
    /// Circumradius arccosh(cot(pi/p) cot(pi/q)).
    pub circum_radius: f64,
    /// Cell area 2 p (pi/2 - pi/p - pi/q).
    pub cell_area: f64,
}

/// Hyperbolic circle area 4 pi sinh^2(r / 2) = 2 pi (cosh r - 1).
pub fn hyperbolic_circle_area(r: f64) -> f64 {
    4.0 * PI * (r / 2.0).sinh() * (r / 2.0).sinh()
}

pub fn mosaic_data(p: u32, q: u32) -> Result<MosaicData> {
    const HYPERBOLIC: &str = "{p, q} must be hyperbolic: (p-2)(q-2) > 4";
    if p < 3 || q < 3 {
        return Err(Error::InvalidTiling { p, q, constraint: "p and q must be at least 3" });
    }
    if u64::from(p - 2) * u64::from(q - 2) <= 4 {
        return Err(Error::InvalidTiling { p, q, constraint: HYPERBOLIC });
    }
    let pa = PI / f64::from(p);
    let qa = PI / f64::from(q);
    Ok(MosaicData {
        p,
        q,
        in_radius: (qa.cos() / pa.sin()).acosh(),
        circum_radius: (1.0 / (pa.tan() * qa.tan())).acosh(),
        cell_area: 2.0 * f64::from(p) * (PI / 2.0 - pa - qa),
    })
}

/// Residuals of the five doubling identities between the tiling
/// quantities and the {p, q} mosaic: r_h = 2 r_opt, R_h = 2 R_opt, the
/// two circle-area quadruplings, and cell area = 4 base area. Both
/// sides are evaluated through independent closed forms.
///
/// Each residual is |lhs - rhs| / max(1, |lhs|, |rhs|): absolute for
/// order-one quantities, relative beyond (the circle areas grow past
/// 10^3 on the checked grid, where one ulp of the radius already moves
/// the area by more than 1e-12).
#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    pub p: u32,
    pub q: u32,
    pub in_radius: f64,
    pub circum_radius: f64,
    pub in_circle_area: f64,
    pub circum_circle_area: f64,
    pub cell_area: f64,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.in_radius
            .max(self.circum_radius)
            .max(self.in_circle_area)
            .max(self.circum_circle_area)
            .max(self.cell_area)
    }
}

fn scaled_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

pub fn doubling_identities(params: &TilingParams) -> IdentityReport {
    let (p, q) = (params.p(), params.q());
    let mosaic = mosaic_data(p, q).expect("tiling validity implies mosaic hyperbolicity");
    let r_opt = inscribed_radius(params);
    let r_cap = circumscribed_radius(params);
    let base = f64::from(p) * (PI / 2.0 - PI / f64::from(p) - PI / f64::from(q)) / 2.0;
    IdentityReport {
        p,
        q,
        in_radius: scaled_gap(mosaic.in_radius, 2.0 * r_opt),
        circum_radius: scaled_gap(mosaic.circum_radius, 2.0 * r_cap),
        in_circle_area: scaled_gap(hyperbolic_circle_area(mosaic.in_radius), 4.0 * circle_area(r_opt)),
        circum_circle_area: scaled_gap(
            hyperbolic_circle_area(mosaic.circum_radius),
            4.0 * circle_area(r_cap),
        ),
        cell_area: scaled_gap(mosaic.cell_area, 4.0 * base),
    }
}

/// Densities along a p-sweep at fixed q, with their distances to the
/// limiting constants 3/pi (packing) and sqrt(12)/pi (covering).
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub q: u32,
    pub entries: Vec<LimitEntry>,
}

#[derive(Debug, Clone, Copy)]
pub struct LimitEntry {
    pub p: u32,
    pub packing: f64,
    pub covering: f64,
}

pub const PACKING_LIMIT: f64 = 3.0 / PI;

pub fn covering_limit() -> f64 {
    12.0f64.sqrt() / PI
}

impl LimitReport {
    pub fn packing_monotone_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].packing > w[0].packing)
    }

    pub fn covering_monotone_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].covering < w[0].covering)
    }

    pub fn final_packing_gap(&self) -> f64 {
        self.entries.last().map_or(f64::INFINITY, |e| (e.packing - PACKING_LIMIT).abs())
    }

    pub fn final_covering_gap(&self) -> f64 {
        self.entries.last().map_or(f64::INFINITY, |e| (e.covering - covering_limit()).abs())
    }
}

/// Evaluate packing and covering densities along increasing p at fixed
/// q. All (p, q) pairs must be valid tilings.
pub fn asymptotic_limits(q: u32, p_sequence: &[u32]) -> Result<LimitReport> {
    let mut entries = Vec::with_capacity(p_sequence.len());
    for &p in p_sequence {
        let params = TilingParams::new(p, q)?;
        entries.push(LimitEntry {
            p,
            packing: packing_density(&params)?.density,
            covering: covering_density(&params)?.density,
        });
    }
    Ok(LimitReport { q, entries })
}

/// Density rows for a list of (p, q) pairs, in input order. The first
/// invalid pair aborts with its index.
pub fn generate_table(mode: TableMode, pairs: &[(u32, u32)]) -> Result<Vec<DensityRow>> {
    let mut validated = Vec::with_capacity(pairs.len());
    for (index, &(p, q)) in pairs.iter().enumerate() {
        match TilingParams::new(p, q) {
            Ok(params) => validated.push(params),
            Err(Error::InvalidTiling { constraint, .. }) => {
                return Err(Error::InvalidPairAt { index, p, q, constraint })
            }
            Err(e) => return Err(e),
        }
    }
    validated.iter().map(|params| density_row(params, mode)).collect()
}
