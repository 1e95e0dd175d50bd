//! 4-D forecast field store: the four selected weather parameters on a
//! (forecast hour × pressure level × latitude × longitude) lattice, with a
//! portable on-disk raster format, region slicing, and time interpolation.

mod interp;
mod region;
mod store;

pub use interp::{interpolate_slice, interpolate_time, lattice_timestamps, TimeSeriesField};
pub use region::{load_polygon_file, point_in_polygon, slice_region, Polygon, RegionSpec};
pub use store::{load_grid, store_grid, raster_file_name};

use std::path::PathBuf;

use chrono::{DateTime, Duration, Utc};
use serde::{Deserialize, Serialize};

use crate::types::Parameter;

#[derive(Debug, thiserror::Error)]
pub enum WeatherError {
    #[error("corrupt manifest: {0}")]
    CorruptManifest(String),
    #[error("missing raster file {0}")]
    MissingRaster(PathBuf),
    #[error("raster {file} holds {actual} bytes, manifest expects {expected}")]
    ManifestMismatch { file: PathBuf, expected: usize, actual: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("region mask intersects no grid point")]
    EmptyIntersection,
    #[error("time interpolation needs at least two forecast hours")]
    SingleSnapshot,
    #[error("invalid interpolation step: {0}")]
    InvalidStep(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, WeatherError>;

/// Axes and metadata of one forecast grid. Latitudes run south to north and
/// longitudes west to east; both ends are inclusive grid points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridManifest {
    pub reference_time: DateTime<Utc>,
    /// Hours from `reference_time`, strictly increasing.
    pub forecast_hours: Vec<u32>,
    /// Pressure levels in hPa, descending (surface first).
    pub levels_hpa: Vec<u32>,
    pub lat_min: f64,
    pub lat_max: f64,
    pub lon_min: f64,
    pub lon_max: f64,
    pub lat_step: f64,
    pub lon_step: f64,
    pub parameters: Vec<Parameter>,
    /// Unit label per parameter, aligned with `parameters`.
    pub units: Vec<String>,
}

impl GridManifest {
    pub fn validate(&self) -> Result<()> {
        if self.lat_step <= 0.0 || self.lon_step <= 0.0 {
            return Err(WeatherError::InvalidGrid("grid steps must be positive".into()));
        }
        if self.lat_min >= self.lat_max || self.lon_min >= self.lon_max {
            return Err(WeatherError::InvalidGrid("grid box must have positive extent".into()));
        }
        if self.forecast_hours.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WeatherError::InvalidGrid("forecast hours must be strictly increasing".into()));
        }
        if self.forecast_hours.is_empty() || self.levels_hpa.is_empty() || self.parameters.is_empty() {
            return Err(WeatherError::InvalidGrid("empty axis".into()));
        }
        if self.levels_hpa.windows(2).any(|w| w[0] <= w[1]) {
            return Err(WeatherError::InvalidGrid("pressure levels must be strictly descending".into()));
        }
        if self.units.len() != self.parameters.len() {
            return Err(WeatherError::InvalidGrid("units must align with parameters".into()));
        }
        let mut seen = self.parameters.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.parameters.len() {
            return Err(WeatherError::InvalidGrid("duplicate parameter".into()));
        }
        Ok(())
    }

    pub fn n_lat(&self) -> usize {
        ((self.lat_max - self.lat_min) / self.lat_step).round() as usize + 1
    }

    pub fn n_lon(&self) -> usize {
        ((self.lon_max - self.lon_min) / self.lon_step).round() as usize + 1
    }

    pub fn n_levels(&self) -> usize {
        self.levels_hpa.len()
    }

    pub fn n_hours(&self) -> usize {
        self.forecast_hours.len()
    }

    pub fn n_params(&self) -> usize {
        self.parameters.len()
    }

    /// Grid points per raster file (one parameter at one forecast hour).
    pub fn points_per_raster(&self) -> usize {
        self.n_levels() * self.n_lat() * self.n_lon()
    }

    pub fn lat_values(&self) -> Vec<f64> {
        (0..self.n_lat()).map(|i| self.lat_min + i as f64 * self.lat_step).collect()
    }

    pub fn lon_values(&self) -> Vec<f64> {
        (0..self.n_lon()).map(|i| self.lon_min + i as f64 * self.lon_step).collect()
    }

    pub fn hour_time(&self, hour: u32) -> DateTime<Utc> {
        self.reference_time + Duration::hours(i64::from(hour))
    }

    /// Timestamp of the first forecast hour.
    pub fn start_time(&self) -> DateTime<Utc> {
        self.hour_time(self.forecast_hours[0])
    }

    /// Timestamp of the last forecast hour.
    pub fn end_time(&self) -> DateTime<Utc> {
        self.hour_time(*self.forecast_hours.last().expect("validated non-empty"))
    }

    pub fn param_index(&self, p: Parameter) -> Option<usize> {
        self.parameters.iter().position(|&q| q == p)
    }

    pub fn default_units(parameters: &[Parameter]) -> Vec<String> {
        parameters.iter().map(|p| p.unit().to_string()).collect()
    }
}

/// In-memory forecast grid. Values are stored flat in
/// (parameter, forecast hour, level, lat, lon) order; missing points are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastGrid {
    pub manifest: GridManifest,
    values: Vec<f32>,
}

impl ForecastGrid {
    pub fn new(manifest: GridManifest, values: Vec<f32>) -> Result<Self> {
        manifest.validate()?;
        let expected =
            manifest.n_params() * manifest.n_hours() * manifest.points_per_raster();
        if values.len() != expected {
            return Err(WeatherError::InvalidGrid(format!(
                "value count {} does not match axes ({} expected)",
                values.len(),
                expected
            )));
        }
        let grid = ForecastGrid { manifest, values };
        for (pi, &p) in grid.manifest.parameters.iter().enumerate() {
            if p.non_negative() {
                let per_param = grid.manifest.n_hours() * grid.manifest.points_per_raster();
                let base = pi * per_param;
                if grid.values[base..base + per_param].iter().any(|v| v.is_finite() && *v < 0.0) {
                    return Err(WeatherError::InvalidGrid(format!("{p} holds negative values")));
                }
            }
        }
        Ok(grid)
    }

    /// Flat index of (parameter, hour, level, lat, lon).
    #[inline]
    pub fn index(&self, pi: usize, hi: usize, li: usize, lat: usize, lon: usize) -> usize {
        let m = &self.manifest;
        (((pi * m.n_hours() + hi) * m.n_levels() + li) * m.n_lat() + lat) * m.n_lon() + lon
    }

    #[inline]
    pub fn value(&self, pi: usize, hi: usize, li: usize, lat: usize, lon: usize) -> f32 {
        self.values[self.index(pi, hi, li, lat, lon)]
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Contiguous raster for one (parameter, forecast hour) pair.
    pub fn raster(&self, pi: usize, hi: usize) -> &[f32] {
        let start = self.index(pi, hi, 0, 0, 0);
        &self.values[start..start + self.manifest.points_per_raster()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    pub(crate) fn small_manifest() -> GridManifest {
        GridManifest {
            reference_time: Utc.with_ymd_and_hms(2018, 6, 1, 0, 0, 0).unwrap(),
            forecast_hours: vec![0, 3],
            levels_hpa: vec![1000, 500],
            lat_min: 30.0,
            lat_max: 33.0,
            lon_min: -100.0,
            lon_max: -97.0,
            lat_step: 1.0,
            lon_step: 1.0,
            parameters: vec![Parameter::PW, Parameter::CAPE],
            units: GridManifest::default_units(&[Parameter::PW, Parameter::CAPE]),
        }
    }

    #[test]
    fn axis_counts_are_inclusive() {
        let m = small_manifest();
        assert_eq!(m.n_lat(), 4);
        assert_eq!(m.n_lon(), 4);
        assert_eq!(m.points_per_raster(), 2 * 4 * 4);
    }

    #[test]
    fn grid_rejects_wrong_value_count() {
        let m = small_manifest();
        assert!(matches!(
            ForecastGrid::new(m, vec![0.0; 3]),
            Err(WeatherError::InvalidGrid(_))
        ));
    }

    #[test]
    fn grid_rejects_negative_pw() {
        let m = small_manifest();
        let n = m.n_params() * m.n_hours() * m.points_per_raster();
        let mut values = vec![1.0f32; n];
        values[0] = -2.0;
        assert!(matches!(
            ForecastGrid::new(m, values),
            Err(WeatherError::InvalidGrid(_))
        ));
    }

    #[test]
    fn manifest_rejects_ascending_levels() {
        let mut m = small_manifest();
        m.levels_hpa = vec![500, 1000];
        assert!(m.validate().is_err());
    }
}
