//! On-disk grid format: a `manifest` JSON file plus one raster file per
//! (parameter, forecast hour). Rasters are raw 32-bit little-endian floats
//! in level-major order, then latitude south→north, then longitude
//! west→east. The round trip store→load is bit-exact.

use std::fs;
use std::path::Path;

use crate::types::Parameter;

use super::{ForecastGrid, GridManifest, Result, WeatherError};

pub const MANIFEST_FILE: &str = "manifest";

/// `PW_f3.raster` for parameter PW at forecast hour 3.
pub fn raster_file_name(param: Parameter, hour: u32) -> String {
    format!("{}_f{}.raster", param.as_str(), hour)
}

pub fn store_grid(grid: &ForecastGrid, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let manifest_json = serde_json::to_string_pretty(&grid.manifest)
        .map_err(|e| WeatherError::CorruptManifest(e.to_string()))?;
    fs::write(dir.join(MANIFEST_FILE), manifest_json)?;
    for (pi, &param) in grid.manifest.parameters.iter().enumerate() {
        for (hi, &hour) in grid.manifest.forecast_hours.iter().enumerate() {
            let raster = grid.raster(pi, hi);
            let mut bytes = Vec::with_capacity(raster.len() * 4);
            for v in raster {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
            fs::write(dir.join(raster_file_name(param, hour)), bytes)?;
        }
    }
    Ok(())
}

pub fn load_grid(dir: &Path) -> Result<ForecastGrid> {
    let manifest_path = dir.join(MANIFEST_FILE);
    let manifest_text = fs::read_to_string(&manifest_path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            WeatherError::CorruptManifest(format!("missing {}", manifest_path.display()))
        } else {
            WeatherError::Io(e)
        }
    })?;
    let manifest: GridManifest = serde_json::from_str(&manifest_text)
        .map_err(|e| WeatherError::CorruptManifest(e.to_string()))?;
    manifest.validate()?;

    let per_raster = manifest.points_per_raster();
    let mut values = Vec::with_capacity(manifest.n_params() * manifest.n_hours() * per_raster);
    for &param in &manifest.parameters {
        for &hour in &manifest.forecast_hours {
            let path = dir.join(raster_file_name(param, hour));
            let bytes = fs::read(&path).map_err(|e| {
                if e.kind() == std::io::ErrorKind::NotFound {
                    WeatherError::MissingRaster(path.clone())
                } else {
                    WeatherError::Io(e)
                }
            })?;
            if bytes.len() != per_raster * 4 {
                return Err(WeatherError::ManifestMismatch {
                    file: path,
                    expected: per_raster * 4,
                    actual: bytes.len(),
                });
            }
            for chunk in bytes.chunks_exact(4) {
                values.push(f32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]));
            }
        }
    }
    ForecastGrid::new(manifest, values)
}
