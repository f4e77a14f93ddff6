//! One-dimensional branch-and-bound along the edges of the region.

use serde::{Deserialize, Serialize};

use super::bnb::Conclusion;
use super::enclosure::{gradient_enclosure, natural_enclosure, point_enclosure, EXACT_ZEROS};
use crate::devilfish::{Edge, EdgeProfile};
use crate::error::{Error, Result};
use crate::interval::{Box2, Interval};

/// A parameter interval of an edge that could not be pruned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualInterval {
    pub t: Interval,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCertificate {
    pub edge: Edge,
    pub tau: f64,
    pub conclusion: Conclusion,
    pub intervals_processed: u64,
    pub residual_intervals: Vec<ResidualInterval>,
    pub max_residual_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeOptions {
    pub tau: f64,
    pub min_width: f64,
    pub max_intervals: u64,
}

impl Default for EdgeOptions {
    fn default() -> Self {
        Self {
            tau: 1e-6,
            min_width: 1e-6,
            max_intervals: 1_000_000,
        }
    }
}

/// Box covering the edge points for parameters in `t`.
pub fn edge_box(edge: Edge, t: Interval) -> Box2 {
    match edge {
        Edge::XOne => Box2::new(Interval::point(1.0), t),
        Edge::Diagonal => Box2::new(t, t),
        Edge::AntiDiagonal => Box2::new(t, 1.0 - t),
        Edge::XZero => Box2::new(Interval::point(0.0), t),
    }
}

fn point_box(edge: Edge, t: f64) -> Box2 {
    edge_box(edge, Interval::point(t))
}

/// Enclosure of the profile derivative `d/dt F(point(t))` over `t`.
pub fn edge_derivative_enclosure(edge: Edge, t: Interval) -> Result<Interval> {
    let g = gradient_enclosure(&edge_box(edge, t))?;
    let (dx, dy) = EdgeProfile { edge }.direction();
    Ok(dx * g[0] + dy * g[1])
}

/// Enclosure of the profile over `t`: natural extension intersected with the
/// one-dimensional mean-value form when the derivative is bounded.
pub fn edge_enclosure(edge: Edge, t: Interval) -> Result<Interval> {
    let natural = natural_enclosure(&edge_box(edge, t))?;
    let Ok(d) = edge_derivative_enclosure(edge, t) else {
        return Ok(natural);
    };
    if !d.is_finite() {
        return Ok(natural);
    }
    let c = t.mid();
    let fc = natural_enclosure(&point_box(edge, c))?;
    let mv = fc + d * (t - Interval::point(c));
    Ok(natural.intersect(&mv).unwrap_or(natural))
}

fn is_exact_zero(edge: Edge, t: f64) -> bool {
    let (x, y) = EdgeProfile { edge }.point(t);
    EXACT_ZEROS.contains(&(x, y))
}

/// Bound at an endpoint of a monotone piece: exact for the corners where the
/// function vanishes identically, enclosed otherwise.
fn endpoint_upper(edge: Edge, t: f64) -> Result<f64> {
    if is_exact_zero(edge, t) {
        return Ok(0.0);
    }
    let b = point_box(edge, t);
    Ok(point_enclosure(b.x, b.y)?.hi())
}

/// Profile increasing (or decreasing) on `t` puts the maximum at the right
/// (left) end.
fn monotone_upper(edge: Edge, t: Interval) -> Option<f64> {
    let d = edge_derivative_enclosure(edge, t).ok()?;
    if d.lo() > 0.0 {
        endpoint_upper(edge, t.hi()).ok()
    } else if d.hi() < 0.0 {
        endpoint_upper(edge, t.lo()).ok()
    } else {
        None
    }
}

/// Certifies `profile <= tau` on one genuine edge, leaving residual
/// parameter intervals only where the profile reaches 0 without a
/// monotonicity argument, i.e. next to `(1, 1)`.
pub fn certify_edge(edge: Edge, opts: &EdgeOptions) -> Result<EdgeCertificate> {
    if !(opts.tau > 0.0) || !(opts.min_width > 0.0) {
        return Err(Error::Precondition("tau and min_width must be positive".into()));
    }
    let (lo, hi) = EdgeProfile { edge }
        .range()
        .ok_or_else(|| Error::Domain(format!("edge {edge} does not meet the region")))?;
    let mut queue = std::collections::VecDeque::from([Interval::new(lo, hi)]);
    let mut processed = 0u64;
    let mut residuals = Vec::new();
    let mut exhausted = false;
    while let Some(t) = queue.pop_front() {
        if processed >= opts.max_intervals {
            exhausted = true;
            break;
        }
        processed += 1;
        let e = edge_enclosure(edge, t)?;
        if e.hi() <= 0.0 {
            continue;
        }
        if monotone_upper(edge, t).is_some_and(|u| u <= 0.0) {
            continue;
        }
        if t.width() <= opts.min_width {
            residuals.push(ResidualInterval { t, upper: e.hi() });
            continue;
        }
        let (l, r) = t.bisect();
        queue.push_back(l);
        queue.push_back(r);
    }
    residuals.sort_by(|a, b| a.t.lo().total_cmp(&b.t.lo()));
    let all_below = residuals.iter().all(|r| r.upper <= opts.tau);
    Ok(EdgeCertificate {
        edge,
        tau: opts.tau,
        conclusion: if all_below && !exhausted {
            Conclusion::Certified
        } else {
            Conclusion::Inconclusive
        },
        intervals_processed: processed,
        max_residual_width: residuals.iter().map(|r| r.t.width()).fold(0.0, f64::max),
        residual_intervals: residuals,
    })
}

/// Certificates for the three genuine edges.
pub fn certify_edges(opts: &EdgeOptions) -> Result<Vec<EdgeCertificate>> {
    Edge::GENUINE.iter().map(|&e| certify_edge(e, opts)).collect()
}
