//! Plot-ready samples of the devil-fish function.
//!
//! The grid spans `[1/2, 1] x [0, 1]`, the bounding box of the region, with
//! `nx` abscissae and `ny` ordinates including both ends. Rows are emitted
//! with `y` in the outer loop and `x` in the inner loop.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::devilfish::{devil_fish, in_domain};
use crate::error::{Error, Result};
use crate::numfmt::shortest;

pub const DEFAULT_RESOLUTION: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
    /// `None` for grid points outside the region in full-grid mode.
    #[serde(rename = "F")]
    pub f: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub nx: usize,
    pub ny: usize,
    pub full_grid: bool,
    pub points: Vec<SurfacePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFormat {
    Csv,
    Json,
}

impl std::str::FromStr for SurfaceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(SurfaceFormat::Csv),
            "json" => Ok(SurfaceFormat::Json),
            _ => Err(Error::Precondition(format!("unknown surface format {s:?}"))),
        }
    }
}

/// `k`-th of `n` equally spaced points on `[lo, hi]`, hitting `hi` exactly.
fn node(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    if k + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (k as f64 / (n - 1) as f64)
    }
}

impl SurfaceGrid {
    /// Samples the grid. Without `full_grid` only points of the region are
    /// kept; with it every grid point is kept and outside points carry no value.
    pub fn sample(nx: usize, ny: usize, full_grid: bool) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::Precondition(format!(
                "surface needs nx, ny >= 2, got {nx} x {ny}"
            )));
        }
        let mut points = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            let y = node(0.0, 1.0, j, ny);
            for i in 0..nx {
                let x = node(0.5, 1.0, i, nx);
                if in_domain(x, y) {
                    points.push(SurfacePoint {
                        x,
                        y,
                        f: Some(devil_fish(x, y)?),
                    });
                } else if full_grid {
                    points.push(SurfacePoint { x, y, f: None });
                }
            }
        }
        Ok(Self {
            nx,
            ny,
            full_grid,
            points,
        })
    }

    pub fn defined(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.points.iter().filter_map(|p| p.f.map(|f| (p.x, p.y, f)))
    }

    /// Smallest and largest sampled values with their locations.
    pub fn extrema(&self) -> Option<((f64, f64, f64), (f64, f64, f64))> {
        let mut it = self.defined();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (if p.2 < lo.2 { p } else { lo }, if p.2 > hi.2 { p } else { hi })
        }))
    }

    /// Header `x,y,F`, LF line endings, shortest round-trip decimals; a
    /// missing value is an empty field.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * (self.points.len() + 1));
        out.push_str("x,y,F\n");
        for p in &self.points {
            let f = p.f.map(shortest).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", shortest(p.x), shortest(p.y), f);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("grid values are finite");
        s.push('\n');
        s
    }

    pub fn render(&self, format: SurfaceFormat) -> String {
        match format {
            SurfaceFormat::Csv => self.to_csv(),
            SurfaceFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, format: SurfaceFormat, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.render(format).as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_layout() {
        let g = SurfaceGrid::sample(3, 3, true).unwrap();
        let xy: Vec<(f64, f64)> = g.points.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(
            xy,
            vec![
                (0.5, 0.0),
                (0.75, 0.0),
                (1.0, 0.0),
                (0.5, 0.5),
                (0.75, 0.5),
                (1.0, 0.5),
                (0.5, 1.0),
                (0.75, 1.0),
                (1.0, 1.0)
            ]
        );
        let defined: Vec<bool> = g.points.iter().map(|p| p.f.is_some()).collect();
        assert_eq!(defined, vec![false, false, true, true, true, true, false, false, true]);
        let csv = g.to_csv();
        assert!(csv.starts_with("x,y,F\n0.5,0,\n0.75,0,\n1,0,0\n"));
        assert!(csv.ends_with("1,1,0\n"));
        assert!(!csv.contains('\r'));

        let d = SurfaceGrid::sample(3, 3, false).unwrap();
        assert_eq!(d.points.len(), 5);
        assert!(d.points.iter().all(|p| p.f.is_some()));
    }

    #[test]
    fn csv_values_round_trip() {
        let g = SurfaceGrid::sample(17, 23, false).unwrap();
        for (line, p) in g.to_csv().lines().skip(1).zip(&g.points) {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            assert_eq!(v, vec![p.x, p.y, p.f.unwrap()]);
        }
    }

    #[test]
    fn json_round_trips() {
        let g = SurfaceGrid::sample(5, 4, true).unwrap();
        let back: SurfaceGrid = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_degenerate_resolution() {
        assert!(SurfaceGrid::sample(1, 10, false).is_err());
        assert!("png".parse::<SurfaceFormat>().is_err());
    }
}
