//! Shape-spec strings shared by `generate` and `body`:
//! `regular:M[:R]`, `random:N:SEED`, `file:PATH`, `disk[:R]`,
//! `ellipse[:A:B]`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use apexgon_core::body::ConvexBody;
use apexgon_core::generate::{random_convex, regular_polygon, SplitMix64};
use apexgon_core::geometry::ConvexPolygon;

use crate::polyfile;

pub fn parse_polygon_shape(spec: &str, default_seed: u64) -> Result<ConvexPolygon> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["regular", m, rest @ ..] => {
            let sides: usize = m.parse().context("regular: vertex count")?;
            let radius = match rest {
                [] => 1.0,
                [r] => r.parse().context("regular: circumradius")?,
                _ => bail!("regular takes at most two parameters"),
            };
            regular_polygon(sides, radius).map_err(|e| anyhow::anyhow!("{e}"))
        }
        ["random", n, rest @ ..] => {
            let n: usize = n.parse().context("random: vertex count")?;
            let seed = match rest {
                [] => default_seed,
                [s] => s.parse().context("random: seed")?,
                _ => bail!("random takes at most two parameters"),
            };
            if n < 3 {
                bail!("random polygon needs at least 3 vertices");
            }
            Ok(random_convex(n, &mut SplitMix64::new(seed)).map_err(|e| anyhow::anyhow!("{e}"))?)
        }
        ["file", path] => polyfile::load_polygon(Path::new(path)),
        _ => {
            bail!("unknown polygon shape '{spec}' (use regular:M[:R], random:N[:SEED], file:PATH)")
        }
    }
}

pub fn parse_body_shape(spec: &str, default_seed: u64) -> Result<ConvexBody> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["disk"] => Ok(ConvexBody::Disk { radius: 1.0 }),
        ["disk", r] => Ok(ConvexBody::Disk {
            radius: r.parse().context("disk: radius")?,
        }),
        ["ellipse"] => Ok(ConvexBody::Ellipse { a: 2.0, b: 1.0 }),
        ["ellipse", a, b] => Ok(ConvexBody::Ellipse {
            a: a.parse().context("ellipse: semi-axis a")?,
            b: b.parse().context("ellipse: semi-axis b")?,
        }),
        ["regular", ..] | ["random", ..] | ["file", ..] => {
            Ok(ConvexBody::Polygon(parse_polygon_shape(spec, default_seed)?))
        }
        _ => bail!(
            "unknown body shape '{spec}' (use disk[:R], ellipse[:A:B], regular:M[:R], random:N[:SEED], file:PATH)"
        ),
    }
}

/// Inclusive `A..B` range.
pub fn parse_range(spec: &str) -> Result<(usize, usize)> {
    let Some((lo, hi)) = spec.split_once("..") else {
        let single: usize = spec.parse().context("range")?;
        return Ok((single, single));
    };
    let lo: usize = lo.parse().context("range start")?;
    let hi: usize = hi.parse().context("range end")?;
    if lo > hi {
        bail!("empty range {spec}");
    }
    Ok((lo, hi))
}

pub fn parse_schedule(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        out.push(part.trim().parse::<usize>().context("schedule entry")?);
    }
    if out.is_empty() {
        bail!("empty schedule");
    }
    Ok(out)
}
