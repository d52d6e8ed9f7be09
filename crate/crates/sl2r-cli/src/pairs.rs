//! Parsing of `--pairs` specifications: comma-separated `p:q` entries
//! where each coordinate is an integer or an inclusive `a..b` range;
//! ranged entries expand to their cross product in row-major order.

use anyhow::{bail, Context, Result};

fn parse_coordinate(s: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().with_context(|| format!("bad range start {lo:?}"))?;
        let hi: u32 = hi.trim().parse().with_context(|| format!("bad range end {hi:?}"))?;
        if lo > hi {
            bail!("empty range {lo}..{hi}");
        }
        Ok((lo..=hi).collect())
    } else {
        let v: u32 = s.trim().parse().with_context(|| format!("bad integer {s:?}"))?;
        Ok(vec![v])
    }
}

pub fn parse_pairs(spec: &str) -> Result<Vec<(u32, u32)>> {
    let mut pairs = Vec::new();
    for entry in spec.split(',') {
        let entry = entry.trim();
        if entry.is_empty() {
            bail!("empty pair entry in {spec:?}");
        }
        let (p_part, q_part) = entry
            .split_once(':')
            .with_context(|| format!("pair entry {entry:?} is not of the form p:q"))?;
        let ps = parse_coordinate(p_part)?;
        let qs = parse_coordinate(q_part)?;
        for &p in &ps {
            for &q in &qs {
                pairs.push((p, q));
            }
        }
    }
    Ok(pairs)
}
