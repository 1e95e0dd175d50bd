//! Temporal densification of forecast grids: piecewise-linear interpolation
//! between consecutive forecast hours, per grid point and parameter.

use chrono::{DateTime, Duration, Utc};

use crate::par;
use crate::types::Parameter;

use super::{ForecastGrid, Result, WeatherError};

/// Interpolated grid series with uniform time spacing. Values are stored in
/// (parameter, timestamp, level, lat, lon) order; missing points are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesField {
    pub parameters: Vec<Parameter>,
    pub levels_hpa: Vec<u32>,
    pub lats: Vec<f64>,
    pub lons: Vec<f64>,
    pub timestamps: Vec<DateTime<Utc>>,
    values: Vec<f64>,
}

impl TimeSeriesField {
    #[inline]
    pub fn index(&self, pi: usize, ti: usize, li: usize, lat: usize, lon: usize) -> usize {
        (((pi * self.timestamps.len() + ti) * self.levels_hpa.len() + li) * self.lats.len() + lat)
            * self.lons.len()
            + lon
    }

    #[inline]
    pub fn value(&self, pi: usize, ti: usize, li: usize, lat: usize, lon: usize) -> f64 {
        self.values[self.index(pi, ti, li, lat, lon)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// All values of one timestamp in (parameter, level, lat, lon) order.
    pub fn time_slice(&self, ti: usize) -> Vec<f64> {
        let per_time = self.levels_hpa.len() * self.lats.len() * self.lons.len();
        let mut out = Vec::with_capacity(self.parameters.len() * per_time);
        for pi in 0..self.parameters.len() {
            let start = self.index(pi, ti, 0, 0, 0);
            out.extend_from_slice(&self.values[start..start + per_time]);
        }
        out
    }
}

/// Minutes covered by the grid's forecast hours.
fn span_minutes(grid: &ForecastGrid) -> i64 {
    let hours = &grid.manifest.forecast_hours;
    i64::from(hours[hours.len() - 1] - hours[0]) * 60
}

/// Interpolation lattice timestamps that fall inside `[range_start, range_end)`.
pub fn lattice_timestamps(
    grid: &ForecastGrid,
    step_minutes: u32,
    range_start: DateTime<Utc>,
    range_end: DateTime<Utc>,
) -> Vec<DateTime<Utc>> {
    let start = grid.manifest.start_time();
    let end = grid.manifest.end_time();
    let step = i64::from(step_minutes);
    let mut out = Vec::new();
    let mut k = if range_start <= start {
        0
    } else {
        let offset = (range_start - start).num_minutes();
        (offset + step - 1) / step
    };
    loop {
        let t = start + Duration::minutes(k * step);
        if t > end || t >= range_end {
            break;
        }
        out.push(t);
        k += 1;
    }
    out
}

/// One interpolated time slice at `t`, in (parameter, level, lat, lon) order.
/// Timestamps equal to a forecast knot reproduce the knot exactly; inside a
/// segment a missing knot makes the whole segment missing.
pub fn interpolate_slice(grid: &ForecastGrid, t: DateTime<Utc>) -> Result<Vec<f64>> {
    let m = &grid.manifest;
    if m.n_hours() < 2 {
        return Err(WeatherError::SingleSnapshot);
    }
    let start = m.start_time();
    let end = m.end_time();
    if t < start || t > end {
        return Err(WeatherError::InvalidStep(format!(
            "timestamp {t} outside forecast span [{start}, {end}]"
        )));
    }
    let minutes = (t - start).num_minutes();
    let knot_minutes: Vec<i64> =
        m.forecast_hours.iter().map(|&h| i64::from(h - m.forecast_hours[0]) * 60).collect();

    let per_slice = m.points_per_raster();
    let mut out = Vec::with_capacity(m.n_params() * per_slice);
    if let Some(hi) = knot_minutes.iter().position(|&km| km == minutes) {
        for pi in 0..m.n_params() {
            out.extend(grid.raster(pi, hi).iter().map(|&v| f64::from(v)));
        }
        return Ok(out);
    }
    let seg = knot_minutes.windows(2).position(|w| w[0] < minutes && minutes < w[1]).expect(
        "timestamp within span and not on a knot must fall inside a segment",
    );
    let w = (minutes - knot_minutes[seg]) as f64 / (knot_minutes[seg + 1] - knot_minutes[seg]) as f64;
    for pi in 0..m.n_params() {
        let lo = grid.raster(pi, seg);
        let hi = grid.raster(pi, seg + 1);
        for i in 0..per_slice {
            let (a, b) = (f64::from(lo[i]), f64::from(hi[i]));
            out.push(if a.is_nan() || b.is_nan() { f64::NAN } else { a + w * (b - a) });
        }
    }
    Ok(out)
}

/// Interpolate the whole grid onto a uniform lattice of `step_minutes`.
/// Output runs from the first to the last forecast hour inclusive, so the
/// step must divide the total span; the count is span/step + 1.
pub fn interpolate_time(grid: &ForecastGrid, step_minutes: u32) -> Result<TimeSeriesField> {
    let m = &grid.manifest;
    if m.n_hours() < 2 {
        return Err(WeatherError::SingleSnapshot);
    }
    if step_minutes == 0 {
        return Err(WeatherError::InvalidStep("step must be positive".into()));
    }
    let span = span_minutes(grid);
    if span % i64::from(step_minutes) != 0 {
        return Err(WeatherError::InvalidStep(format!(
            "step {step_minutes} min does not divide the {span} min span"
        )));
    }
    let n_times = (span / i64::from(step_minutes)) as usize + 1;
    let start = m.start_time();
    let timestamps: Vec<DateTime<Utc>> = (0..n_times)
        .map(|k| start + Duration::minutes(k as i64 * i64::from(step_minutes)))
        .collect();

    let slices = par::map_slice(&timestamps, |&t| {
        interpolate_slice(grid, t).expect("lattice timestamps lie within the span")
    });

    let per_slice = m.points_per_raster();
    let n_params = m.n_params();
    let mut values = vec![0.0f64; n_params * n_times * per_slice];
    for (ti, slice) in slices.iter().enumerate() {
        for pi in 0..n_params {
            let src = &slice[pi * per_slice..(pi + 1) * per_slice];
            let dst = (pi * n_times + ti) * per_slice;
            values[dst..dst + per_slice].copy_from_slice(src);
        }
    }
    Ok(TimeSeriesField {
        parameters: m.parameters.clone(),
        levels_hpa: m.levels_hpa.clone(),
        lats: m.lat_values(),
        lons: m.lon_values(),
        timestamps,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weather::GridManifest;
    use chrono::TimeZone;
    use rand::{Rng, SeedableRng};

    fn two_knot_grid(v0: f32, v1: f32) -> ForecastGrid {
        let manifest = GridManifest {
            reference_time: Utc.with_ymd_and_hms(2018, 6, 1, 0, 0, 0).unwrap(),
            forecast_hours: vec![0, 3],
            levels_hpa: vec![1000],
            lat_min: 30.0,
            lat_max: 31.0,
            lon_min: -100.0,
            lon_max: -99.0,
            lat_step: 1.0,
            lon_step: 1.0,
            parameters: vec![Parameter::APT],
            units: GridManifest::default_units(&[Parameter::APT]),
        };
        let per = manifest.points_per_raster();
        let mut values = vec![v0; per];
        values.extend(vec![v1; per]);
        ForecastGrid::new(manifest, values).unwrap()
    }

    #[test]
    fn midpoint_of_linear_segment() {
        let grid = two_knot_grid(0.2, 0.8);
        let series = interpolate_time(&grid, 90).unwrap();
        assert_eq!(series.timestamps.len(), 3);
        assert!((series.value(0, 1, 0, 0, 0) - 0.5).abs() < 1e-6);
        // Exact f64 midpoint of the stored knot values.
        let (a, b) = (f64::from(0.2f32), f64::from(0.8f32));
        assert!((series.value(0, 1, 0, 0, 0) - (a + 0.5 * (b - a))).abs() <= 1e-12);
    }

    #[test]
    fn knots_are_reproduced_exactly() {
        let grid = two_knot_grid(0.37, 12.5);
        let series = interpolate_time(&grid, 15).unwrap();
        assert_eq!(series.value(0, 0, 0, 0, 0), f64::from(0.37f32));
        assert_eq!(series.value(0, 12, 0, 0, 0), 12.5);
    }

    #[test]
    fn count_formula_holds() {
        // 3-hour spacing, five knots, 15-minute steps: 4 * 12 + 1 timestamps.
        let manifest = GridManifest {
            forecast_hours: vec![0, 3, 6, 9, 12],
            ..two_knot_grid(0.0, 0.0).manifest
        };
        let n = manifest.n_params() * manifest.n_hours() * manifest.points_per_raster();
        let grid = ForecastGrid::new(manifest, vec![1.0; n]).unwrap();
        let series = interpolate_time(&grid, 15).unwrap();
        assert_eq!(series.timestamps.len(), 4 * 12 + 1);
        assert_eq!(series.timestamps.len(), 49);
    }

    #[test]
    fn single_snapshot_is_rejected() {
        let mut grid = two_knot_grid(1.0, 2.0);
        grid.manifest.forecast_hours = vec![0];
        let per = grid.manifest.points_per_raster();
        let grid = ForecastGrid::new(grid.manifest, vec![1.0; per]).unwrap();
        assert!(matches!(interpolate_time(&grid, 15), Err(WeatherError::SingleSnapshot)));
    }

    #[test]
    fn non_dividing_step_is_rejected() {
        let grid = two_knot_grid(1.0, 2.0);
        assert!(matches!(interpolate_time(&grid, 7), Err(WeatherError::InvalidStep(_))));
        assert!(matches!(interpolate_time(&grid, 0), Err(WeatherError::InvalidStep(_))));
    }

    #[test]
    fn missing_knot_propagates_inside_segment_only() {
        let grid = two_knot_grid(f32::NAN, 4.0);
        let series = interpolate_time(&grid, 60).unwrap();
        assert!(series.value(0, 0, 0, 0, 0).is_nan());
        assert!(series.value(0, 1, 0, 0, 0).is_nan());
        assert!(series.value(0, 2, 0, 0, 0).is_nan());
        assert_eq!(series.value(0, 3, 0, 0, 0), 4.0);
    }

    #[test]
    fn segment_values_stay_within_knot_bounds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let v0: f32 = rng.gen_range(-50.0..50.0);
            let v1: f32 = rng.gen_range(-50.0..50.0);
            let grid = two_knot_grid(v0, v1);
            let series = interpolate_time(&grid, 15).unwrap();
            let lo = f64::from(v0.min(v1));
            let hi = f64::from(v0.max(v1));
            for ti in 0..series.timestamps.len() {
                let v = series.value(0, ti, 0, 0, 0);
                assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn lattice_respects_half_open_range() {
        let grid = two_knot_grid(0.0, 1.0);
        let start = grid.manifest.start_time();
        let ts = lattice_timestamps(&grid, 15, start, start + Duration::hours(1));
        assert_eq!(ts.len(), 4);
        assert_eq!(ts[0], start);
        assert_eq!(*ts.last().unwrap(), start + Duration::minutes(45));
        // Range starting off-lattice snaps forward to the next lattice point.
        let ts = lattice_timestamps(&grid, 15, start + Duration::minutes(7), start + Duration::hours(1));
        assert_eq!(ts[0], start + Duration::minutes(15));
    }
}
