//! Table and geodesic serialization: CSV and Markdown with fixed
//! decimal precision, JSON with shortest round-trip floats.

use std::fmt::Write as _;

use anyhow::Result;
use sl2r::density::DensityRow;
use sl2r::geodesic::GeodesicSample;

/// Componentwise gap between two samples of the same curve, measured on
/// the canonical chart (r >= 0; a signed radius stands for the
/// antipodal base angle) with the base angle compared modulo 2 pi and
/// the fibre coordinate compared on the cover.
fn sample_gap(a: &GeodesicSample, b: &GeodesicSample) -> f64 {
    let canon = |s: &GeodesicSample| {
        if s.r < 0.0 {
            (-s.r, s.theta + std::f64::consts::PI)
        } else {
            (s.r, s.theta)
        }
    };
    let (ra, ta) = canon(a);
    let (rb, tb) = canon(b);
    let two_pi = 2.0 * std::f64::consts::PI;
    let dt = (ta - tb).rem_euclid(two_pi);
    let dt = dt.min(two_pi - dt);
    (ra - rb).abs().max(dt).max((a.phi - b.phi).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

pub const TABLE_COLUMNS: [&str; 6] = ["p", "q", "radius", "circle_area", "base_area", "density"];

pub fn render_table(
    rows: &[DensityRow],
    format: Format,
    precision: usize,
    meta: Option<&str>,
) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            if let Some(m) = meta {
                writeln!(out, "# {m}")?;
            }
            writeln!(out, "{}", TABLE_COLUMNS.join(","))?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{:.p$},{:.p$},{:.p$},{:.p$}",
                    r.p,
                    r.q,
                    r.radius,
                    r.circle_area,
                    r.base_area,
                    r.density,
                    p = precision
                )?;
            }
        }
        Format::Md => {
            if let Some(m) = meta {
                writeln!(out, "<!-- {m} -->")?;
            }
            writeln!(out, "| {} |", TABLE_COLUMNS.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(TABLE_COLUMNS.len()))?;
            for r in rows {
                writeln!(
                    out,
                    "| {} | {} | {:.p$} | {:.p$} | {:.p$} | {:.p$} |",
                    r.p,
                    r.q,
                    r.radius,
                    r.circle_area,
                    r.base_area,
                    r.density,
                    p = precision
                )?;
            }
        }
        Format::Json => {
            let body = serde_json::to_string_pretty(rows)?;
            match meta {
                Some(m) => {
                    let wrapped = serde_json::json!({
                        "meta": m,
                        "rows": serde_json::from_str::<serde_json::Value>(&body)?,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&wrapped)?)?;
                }
                None => writeln!(out, "{body}")?,
            }
        }
    }
    Ok(out)
}

/// Geodesic sample CSV: closed-form columns, optional integrator
/// columns, optional deviation footer.
pub fn render_geodesic(
    closed: &[GeodesicSample],
    ode: Option<&[GeodesicSample]>,
    precision: usize,
) -> Result<String> {
    let mut out = String::new();
    let header = match ode {
        Some(_) => "s,r,theta,phi,x,y,z,r_ode,theta_ode,phi_ode",
        None => "s,r,theta,phi,x,y,z",
    };
    writeln!(out, "{header}")?;
    let mut max_dev = 0.0f64;
    for (i, c) in closed.iter().enumerate() {
        write!(
            out,
            "{:.p$},{:.p$},{:.p$},{:.p$},{:.p$},{:.p$},{:.p$}",
            c.s,
            c.r,
            c.theta,
            c.phi,
            c.x,
            c.y,
            c.z,
            p = precision
        )?;
        if let Some(ode) = ode {
            let o = &ode[i];
            max_dev = max_dev.max(sample_gap(o, c));
            write!(out, ",{:.p$},{:.p$},{:.p$}", o.r, o.theta, o.phi, p = precision)?;
        }
        writeln!(out)?;
    }
    if ode.is_some() {
        writeln!(out, "# max_ode_deviation = {max_dev:.3e}")?;
    }
    Ok(out)
}
