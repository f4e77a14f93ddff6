//! Branch-and-bound over the ratio region.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enclosure::{enclose, mean_value_enclosure, monotone_corner_closure, natural_enclosure};
use crate::error::{Error, Result};
use crate::interval::{Box2, Interval};

/// The region `0 <= y <= x <= x_max, x + y >= 1`; `x_max = 1` is the full
/// admissible set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x_max: f64,
}

impl Default for Region {
    fn default() -> Self {
        Self { x_max: 1.0 }
    }
}

impl Region {
    pub fn new(x_max: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&x_max) {
            return Err(Error::Precondition(format!("x_max must lie in [1/2, 1], got {x_max}")));
        }
        Ok(Self { x_max })
    }

    pub fn describe(&self) -> String {
        if self.x_max == 1.0 {
            "0 <= y <= x <= 1, x + y >= 1".to_string()
        } else {
            format!("0 <= y <= x <= {}, x + y >= 1", self.x_max)
        }
    }

    pub fn bounding_box(&self) -> Box2 {
        Box2::new(Interval::new(0.5, self.x_max), Interval::new(0.0, self.x_max))
    }

    /// Shrinks `b` to a box still containing `b ∩ region`, or `None` when the
    /// intersection is provably empty. Bounds derived from `x + y >= 1` are
    /// rounded outward.
    pub fn tighten(&self, b: &Box2) -> Option<Box2> {
        let (mut xl, mut xh) = (b.x.lo(), b.x.hi());
        let (mut yl, mut yh) = (b.y.lo(), b.y.hi());
        for _ in 0..2 {
            xh = xh.min(self.x_max);
            yl = yl.max(0.0);
            // y <= x
            xl = xl.max(yl);
            yh = yh.min(xh);
            // x + y >= 1
            xl = xl.max((1.0 - Interval::point(yh)).lo());
            yl = yl.max((1.0 - Interval::point(xh)).lo());
            if xl > xh || yl > yh {
                return None;
            }
        }
        Some(Box2::new(Interval::new(xl, xh), Interval::new(yl, yh)))
    }
}

/// Tuning of [`certify_nonpositive`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub tau: f64,
    pub max_boxes: u64,
    pub min_width: f64,
    pub region: Region,
    /// Intersect the natural extension with the mean-value form.
    pub mean_value: bool,
    /// Close boxes on `y = 0` by the monotonicity argument.
    pub corner_closure: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            tau: 1e-6,
            max_boxes: 10_000_000,
            min_width: 1e-4,
            region: Region::default(),
            mean_value: true,
            corner_closure: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Certified,
    Inconclusive,
}

impl std::fmt::Display for Conclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Conclusion::Certified => "certified",
            Conclusion::Inconclusive => "inconclusive",
        })
    }
}

/// A box that was not pruned, with its proven upper bound on `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualBox {
    pub bounds: Box2,
    pub upper: f64,
}

/// How the processed boxes were disposed of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PruneStats {
    pub outside: u64,
    pub natural: u64,
    pub mean_value: u64,
    pub monotone: u64,
    pub bisected: u64,
    pub residual: u64,
}

/// Outcome of the two-dimensional branch-and-bound.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCertificate {
    pub region: Region,
    pub tau: f64,
    pub min_width: f64,
    pub conclusion: Conclusion,
    pub boxes_processed: u64,
    /// Sorted by `(x.lo, y.lo, x.hi, y.hi)`.
    pub residual_boxes: Vec<ResidualBox>,
    pub max_residual_width: f64,
    pub stats: PruneStats,
}

enum Disposal {
    Outside,
    Natural,
    MeanValue,
    Monotone,
    Residual(ResidualBox),
    Split(Box2, Box2),
}

fn dispose(b: &Box2, opts: &CertifyOptions) -> Result<Disposal> {
    let Some(b) = opts.region.tighten(b) else {
        return Ok(Disposal::Outside);
    };
    let natural = natural_enclosure(&b)?;
    if natural.hi() <= 0.0 {
        return Ok(Disposal::Natural);
    }
    if opts.mean_value && mean_value_enclosure(&b).is_some_and(|mv| mv.hi() <= 0.0) {
        return Ok(Disposal::MeanValue);
    }
    if opts.corner_closure && monotone_corner_closure(&b) {
        return Ok(Disposal::Monotone);
    }
    if b.width() <= opts.min_width {
        let upper = residual_upper(&b, opts.mean_value)?;
        return Ok(Disposal::Residual(ResidualBox { bounds: b, upper }));
    }
    let (l, r) = b.bisect();
    Ok(Disposal::Split(l, r))
}

/// Upper bound used when re-checking a residual box. Matches the bound
/// recorded during the search.
pub fn residual_upper(b: &Box2, mean_value: bool) -> Result<f64> {
    if mean_value {
        Ok(enclose(b)?.hi())
    } else {
        Ok(natural_enclosure(b)?.hi())
    }
}

/// Proves `F <= tau` on the region and `F <= 0` outside the residual boxes.
///
/// Boxes are processed breadth first, one depth level at a time; within a
/// level the work is parallel but the results are merged in queue order, so
/// the output does not depend on the thread count.
pub fn certify_nonpositive(opts: &CertifyOptions) -> Result<RegionCertificate> {
    if !(opts.tau > 0.0) {
        return Err(Error::Precondition(format!("tau must be positive, got {}", opts.tau)));
    }
    if !(opts.min_width > 0.0) {
        return Err(Error::Precondition(format!(
            "min_width must be positive, got {}",
            opts.min_width
        )));
    }
    let mut level = vec![opts.region.bounding_box()];
    let mut processed: u64 = 0;
    let mut stats = PruneStats::default();
    let mut residuals = Vec::new();
    let mut exhausted = false;

    while !level.is_empty() {
        if processed + level.len() as u64 > opts.max_boxes {
            exhausted = true;
            break;
        }
        processed += level.len() as u64;
        let outcomes: Vec<Result<Disposal>> = level.par_iter().map(|b| dispose(b, opts)).collect();
        let mut next = Vec::with_capacity(level.len() * 2);
        for outcome in outcomes {
            match outcome? {
                Disposal::Outside => stats.outside += 1,
                Disposal::Natural => stats.natural += 1,
                Disposal::MeanValue => stats.mean_value += 1,
                Disposal::Monotone => stats.monotone += 1,
                Disposal::Residual(r) => {
                    stats.residual += 1;
                    residuals.push(r);
                }
                Disposal::Split(l, r) => {
                    stats.bisected += 1;
                    next.push(l);
                    next.push(r);
                }
            }
        }
        level = next;
    }

    sort_residuals(&mut residuals);
    let all_below = residuals.iter().all(|r| r.upper <= opts.tau);
    let conclusion = if !exhausted && all_below {
        Conclusion::Certified
    } else {
        Conclusion::Inconclusive
    };
    let max_residual_width = residuals.iter().map(|r| r.bounds.width()).fold(0.0, f64::max);
    Ok(RegionCertificate {
        region: opts.region,
        tau: opts.tau,
        min_width: opts.min_width,
        conclusion,
        boxes_processed: processed,
        residual_boxes: residuals,
        max_residual_width,
        stats,
    })
}

pub(crate) fn sort_residuals(residuals: &mut [ResidualBox]) {
    residuals.sort_by(|a, b| {
        let (p, q) = (a.bounds, b.bounds);
        p.x.lo()
            .total_cmp(&q.x.lo())
            .then(p.y.lo().total_cmp(&q.y.lo()))
            .then(p.x.hi().total_cmp(&q.x.hi()))
            .then(p.y.hi().total_cmp(&q.y.hi()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tighten_discards_and_shrinks() {
        let r = Region::default();
        // Entirely below x + y = 1.
        assert!(r
            .tighten(&Box2::new(Interval::new(0.5, 0.6), Interval::new(0.0, 0.3)))
            .is_none());
        // Entirely above y = x.
        assert!(r
            .tighten(&Box2::new(Interval::new(0.5, 0.6), Interval::new(0.7, 0.9)))
            .is_none());
        let t = r
            .tighten(&Box2::new(Interval::new(0.9, 1.2), Interval::new(-0.5, 1.5)))
            .unwrap();
        assert_eq!(t.x.hi(), 1.0);
        assert_eq!(t.y.lo(), 0.0);
        assert_eq!(t.y.hi(), 1.0);
        // Tightening never drops region points.
        let b = Box2::new(Interval::new(0.6, 0.7), Interval::new(0.25, 0.35));
        let t = r.tighten(&b).unwrap();
        assert!(t.contains(0.7, 0.3) && t.contains(0.65, 0.35));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(certify_nonpositive(&CertifyOptions {
            tau: 0.0,
            ..Default::default()
        })
        .is_err());
        assert!(certify_nonpositive(&CertifyOptions {
            min_width: -1.0,
            ..Default::default()
        })
        .is_err());
        assert!(Region::new(0.2).is_err());
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let c = certify_nonpositive(&CertifyOptions {
            max_boxes: 10,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(c.conclusion, Conclusion::Inconclusive);
        assert!(c.boxes_processed <= 10);
    }

    #[test]
    fn shrunken_region_has_no_residuals() {
        let opts = CertifyOptions {
            region: Region::new(0.95).unwrap(),
            ..Default::default()
        };
        let c = certify_nonpositive(&opts).unwrap();
        assert_eq!(c.conclusion, Conclusion::Certified);
        assert!(c.residual_boxes.is_empty());
        assert_eq!(c.max_residual_width, 0.0);
    }
}
