//! Geographical masking: restrict a grid to a bounding box or to an ARTCC
//! boundary polygon before aggregation.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ForecastGrid, Result, WeatherError};

const EDGE_EPS: f64 = 1e-9;

/// Closed polygon in geographic coordinates; vertices are (longitude, latitude).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<(f64, f64)>,
}

impl Polygon {
    pub fn new(vertices: Vec<(f64, f64)>) -> std::result::Result<Self, String> {
        if vertices.len() < 3 {
            return Err("polygon needs at least three vertices".to_string());
        }
        Ok(Polygon { vertices })
    }

    /// (lon_min, lon_max, lat_min, lat_max)
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let mut lon_min = f64::INFINITY;
        let mut lon_max = f64::NEG_INFINITY;
        let mut lat_min = f64::INFINITY;
        let mut lat_max = f64::NEG_INFINITY;
        for &(lon, lat) in &self.vertices {
            lon_min = lon_min.min(lon);
            lon_max = lon_max.max(lon);
            lat_min = lat_min.min(lat);
            lat_max = lat_max.max(lat);
        }
        (lon_min, lon_max, lat_min, lat_max)
    }
}

/// Mask used by `slice_region`: a plain bounding box, or a boundary polygon
/// whose exterior points become missing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionSpec {
    Box { lat_min: f64, lat_max: f64, lon_min: f64, lon_max: f64 },
    Polygon { polygon: Polygon },
}

impl RegionSpec {
    /// Bounding box as (lat_min, lat_max, lon_min, lon_max).
    fn bbox(&self) -> (f64, f64, f64, f64) {
        match self {
            RegionSpec::Box { lat_min, lat_max, lon_min, lon_max } => {
                (*lat_min, *lat_max, *lon_min, *lon_max)
            }
            RegionSpec::Polygon { polygon } => {
                let (lon_min, lon_max, lat_min, lat_max) = polygon.bounding_box();
                (lat_min, lat_max, lon_min, lon_max)
            }
        }
    }
}

/// Even-odd ray casting; points exactly on an edge count as inside.
pub fn point_in_polygon(lon: f64, lat: f64, polygon: &Polygon) -> bool {
    let pts = &polygon.vertices;
    let n = pts.len();
    for i in 0..n {
        let (x1, y1) = pts[i];
        let (x2, y2) = pts[(i + 1) % n];
        if on_segment(lon, lat, x1, y1, x2, y2) {
            return true;
        }
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = pts[i];
        let (xj, yj) = pts[j];
        if (yi > lat) != (yj > lat) {
            let x_cross = xi + (lat - yi) / (yj - yi) * (xj - xi);
            if lon < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn on_segment(px: f64, py: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> bool {
    let cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1);
    if cross.abs() > EDGE_EPS {
        return false;
    }
    px >= x1.min(x2) - EDGE_EPS
        && px <= x1.max(x2) + EDGE_EPS
        && py >= y1.min(y2) - EDGE_EPS
        && py <= y1.max(y2) + EDGE_EPS
}

/// Restrict `grid` to the bounding box of `mask`. With a polygon mask, grid
/// points outside the polygon are set to NaN so later statistics skip them.
pub fn slice_region(grid: &ForecastGrid, mask: &RegionSpec) -> Result<ForecastGrid> {
    let m = &grid.manifest;
    let (lat_lo, lat_hi, lon_lo, lon_hi) = mask.bbox();
    let lat_values = m.lat_values();
    let lon_values = m.lon_values();
    let lat_idx: Vec<usize> = lat_values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= lat_lo - EDGE_EPS && v <= lat_hi + EDGE_EPS)
        .map(|(i, _)| i)
        .collect();
    let lon_idx: Vec<usize> = lon_values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= lon_lo - EDGE_EPS && v <= lon_hi + EDGE_EPS)
        .map(|(i, _)| i)
        .collect();
    if lat_idx.is_empty() || lon_idx.is_empty() {
        return Err(WeatherError::EmptyIntersection);
    }

    // Polygon membership per (lat, lon) point of the sub-box.
    let keep: Option<Vec<bool>> = match mask {
        RegionSpec::Box { .. } => None,
        RegionSpec::Polygon { polygon } => {
            let mut keep = Vec::with_capacity(lat_idx.len() * lon_idx.len());
            for &la in &lat_idx {
                for &lo in &lon_idx {
                    keep.push(point_in_polygon(lon_values[lo], lat_values[la], polygon));
                }
            }
            if keep.iter().all(|k| !k) {
                return Err(WeatherError::EmptyIntersection);
            }
            Some(keep)
        }
    };

    let mut manifest = m.clone();
    manifest.lat_min = lat_values[lat_idx[0]];
    manifest.lat_max = lat_values[*lat_idx.last().unwrap()];
    manifest.lon_min = lon_values[lon_idx[0]];
    manifest.lon_max = lon_values[*lon_idx.last().unwrap()];

    let mut values =
        Vec::with_capacity(m.n_params() * m.n_hours() * m.n_levels() * lat_idx.len() * lon_idx.len());
    for pi in 0..m.n_params() {
        for hi in 0..m.n_hours() {
            for li in 0..m.n_levels() {
                for (ka, &la) in lat_idx.iter().enumerate() {
                    for (ko, &lo) in lon_idx.iter().enumerate() {
                        let v = grid.value(pi, hi, li, la, lo);
                        let masked = match &keep {
                            Some(keep) if !keep[ka * lon_idx.len() + ko] => f32::NAN,
                            _ => v,
                        };
                        values.push(masked);
                    }
                }
            }
        }
    }
    ForecastGrid::new(manifest, values)
}

/// Read a region polygon file: a JSON object mapping ARTCC codes to
/// (longitude, latitude) vertex lists.
pub fn load_polygon_file(path: &Path) -> Result<BTreeMap<String, Polygon>> {
    let text = fs::read_to_string(path)?;
    let raw: BTreeMap<String, Vec<(f64, f64)>> = serde_json::from_str(&text)
        .map_err(|e| WeatherError::CorruptManifest(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (key, vertices) in raw {
        let polygon = Polygon::new(vertices)
            .map_err(|e| WeatherError::CorruptManifest(format!("region {key}: {e}")))?;
        out.insert(key, polygon);
    }
    Ok(out)
}
