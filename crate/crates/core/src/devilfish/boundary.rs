//! Restrictions of the devil-fish function to the edges of the region.

use serde::{Deserialize, Serialize};

use super::function::{devil_fish, gradient};
use crate::error::{Error, Result};

/// An edge of the region, or the listed `{x = 0}` line that misses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Edge {
    /// `x = 1`, parameter `y` in `[0, 1]`.
    XOne,
    /// `x = y`, parameter `x` in `[1/2, 1]`.
    Diagonal,
    /// `x + y = 1`, parameter `x` in `[1/2, 1]`.
    AntiDiagonal,
    /// `x = 0`. The region forces `x >= 1/2`, so this edge is empty.
    XZero,
}

impl Edge {
    pub const GENUINE: [Edge; 3] = [Edge::XOne, Edge::Diagonal, Edge::AntiDiagonal];

    pub fn name(&self) -> &'static str {
        match self {
            Edge::XOne => "x=1",
            Edge::Diagonal => "x=y",
            Edge::AntiDiagonal => "x+y=1",
            Edge::XZero => "x=0",
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One-dimensional profile `t -> F(point(t))` along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeProfile {
    pub edge: Edge,
}

impl EdgeProfile {
    pub fn is_vacuous(&self) -> bool {
        self.edge == Edge::XZero
    }

    /// Parameter interval covered by the region; `None` for the vacuous edge.
    pub fn range(&self) -> Option<(f64, f64)> {
        match self.edge {
            Edge::XOne => Some((0.0, 1.0)),
            Edge::Diagonal | Edge::AntiDiagonal => Some((0.5, 1.0)),
            Edge::XZero => None,
        }
    }

    /// Parameter at which the edge reaches `(1, 1)`, if it does.
    pub fn corner_param(&self) -> Option<f64> {
        match self.edge {
            Edge::XOne | Edge::Diagonal => Some(1.0),
            Edge::AntiDiagonal | Edge::XZero => None,
        }
    }

    pub fn point(&self, t: f64) -> (f64, f64) {
        match self.edge {
            Edge::XOne => (1.0, t),
            Edge::Diagonal => (t, t),
            Edge::AntiDiagonal => (t, 1.0 - t),
            Edge::XZero => (0.0, t),
        }
    }

    /// Direction `d point / dt`.
    pub fn direction(&self) -> (f64, f64) {
        match self.edge {
            Edge::XOne | Edge::XZero => (0.0, 1.0),
            Edge::Diagonal => (1.0, 1.0),
            Edge::AntiDiagonal => (1.0, -1.0),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let (x, y) = self.point(t);
        devil_fish(x, y)
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        let (x, y) = self.point(t);
        let (dx, dy) = self.direction();
        let g = gradient(x, y)?;
        Ok(g[0] * dx + g[1] * dy)
    }

    /// Maximum over the edge by dense sampling followed by golden-section
    /// refinement of the best bracket. Returns `(t, value)`.
    pub fn maximize(&self, samples: usize) -> Result<(f64, f64)> {
        let (lo, hi) = self
            .range()
            .ok_or_else(|| Error::Domain(format!("edge {} does not meet the region", self.edge)))?;
        let n = samples.max(2);
        let step = (hi - lo) / (n - 1) as f64;
        let mut best = (lo, self.eval(lo)?);
        for i in 1..n {
            let t = if i == n - 1 { hi } else { lo + i as f64 * step };
            let v = self.eval(t)?;
            if v > best.1 {
                best = (t, v);
            }
        }
        let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if self.eval(c)? >= self.eval(d)? {
                b = d;
            } else {
                a = c;
            }
        }
        let t = 0.5 * (a + b);
        let v = self.eval(t)?;
        Ok(if v > best.1 { (t, v) } else { best })
    }
}

/// Handles for the three genuine edges followed by the vacuous `{x = 0}`.
pub fn boundary_profiles() -> [EdgeProfile; 4] {
    [
        EdgeProfile { edge: Edge::XOne },
        EdgeProfile { edge: Edge::Diagonal },
        EdgeProfile {
            edge: Edge::AntiDiagonal,
        },
        EdgeProfile { edge: Edge::XZero },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_at_corner_are_zero() {
        let [x1, diag, anti, x0] = boundary_profiles();
        assert_eq!(diag.eval(1.0).unwrap(), 0.0);
        assert_eq!(x1.eval(1.0).unwrap(), 0.0);
        assert_eq!(x1.eval(0.0).unwrap(), 0.0);
        assert_eq!(anti.eval(1.0).unwrap(), 0.0);
        assert!(x0.is_vacuous() && x0.range().is_none());
        assert!(x0.maximize(10).is_err());
    }

    #[test]
    fn x_one_profile_closed_form() {
        // With x = 1: g(y) = 2(1 - sqrt(y)) sqrt(1 + 2y^2) + (y - 1) sqrt(4 - y^2).
        let p = EdgeProfile { edge: Edge::XOne };
        for y in [0.1f64, 0.37, 0.8] {
            let g: f64 = 2.0 * (1.0 - y.sqrt()) * (1.0 + 2.0 * y * y).sqrt() + (y - 1.0) * (4.0 - y * y).sqrt();
            assert!((p.eval(y).unwrap() - g).abs() < 1e-15);
        }
    }

    #[test]
    fn edge_maxima_are_zero() {
        for p in &boundary_profiles()[..3] {
            let (t, v) = p.maximize(10_001).unwrap();
            assert!(v.abs() < 1e-12, "{} max {v} at {t}", p.edge);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        for p in &boundary_profiles()[..3] {
            let t = 0.8;
            let h = 1e-6;
            let fd = (p.eval(t + h).unwrap() - p.eval(t - h).unwrap()) / (2.0 * h);
            assert!((p.derivative(t).unwrap() - fd).abs() < 1e-6);
        }
    }
}
