//! Polygon JSON files: `{"vertices": [[x, y], ...]}` with IEEE doubles in
//! shortest round-trip decimal. Reading always validates and canonicalizes,
//! so a canonical file serializes back to identical bytes.

use std::path::Path;

use anyhow::{Context, Result};
use apexgon_core::geometry::{ConvexPolygon, Point};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

pub fn polygon_from_json(text: &str) -> Result<ConvexPolygon> {
    let file: PolygonFile = serde_json::from_str(text).context("polygon JSON parse")?;
    let points = file
        .vertices
        .iter()
        .map(|[x, y]| Point::new(*x, *y))
        .collect();
    ConvexPolygon::new(points).map_err(|e| anyhow::anyhow!("invalid polygon: {e}"))
}

pub fn load_polygon(path: &Path) -> Result<ConvexPolygon> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    polygon_from_json(&text)
}

pub fn polygon_to_json(poly: &ConvexPolygon) -> String {
    let file = PolygonFile {
        vertices: poly.vertices().iter().map(|p| [p.x, p.y]).collect(),
    };
    let mut text = serde_json::to_string(&file).expect("polygon serialization cannot fail");
    text.push('\n');
    text
}
