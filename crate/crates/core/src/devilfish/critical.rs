//! Damped Newton search for stationary points of the devil-fish function.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::function::{
    devil_fish, domain_slack, domain_violation, gradient, hessian, Classification, Hessian, HESSIAN_STEP,
};
use crate::error::{Error, Result};

/// Parameters of [`find_critical_points`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalSearch {
    /// Seeds per axis over the bounding box `[1/2, 1] x [0, 1]`.
    pub grid: usize,
    /// Gradient max-norm at which a seed counts as converged.
    pub tol: f64,
    pub max_iter: usize,
    /// Seeds closer than this to an edge of the region are dropped.
    pub edge_clip: f64,
    /// Max-norm radius used to merge converged points.
    pub dedup_radius: f64,
    /// Points within this distance of an edge are boundary points.
    pub boundary_tol: f64,
}

impl Default for CriticalSearch {
    fn default() -> Self {
        Self {
            grid: 32,
            tol: 1e-10,
            max_iter: 200,
            edge_clip: 1e-3,
            dedup_radius: 1e-6,
            boundary_tol: 1e-6,
        }
    }
}

/// A deduplicated stationary point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointReport {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub gradient_norm: f64,
    pub hessian: Hessian,
    pub determinant: f64,
    pub classification: Classification,
    /// Number of seeds that converged to this point.
    pub seeds: usize,
    /// Fewest Newton iterations over those seeds.
    pub iterations: usize,
}

/// Why a seed did not yield a point inside the region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SeedFailure {
    MaxIterations { seed: (f64, f64) },
    Stalled { seed: (f64, f64), at: (f64, f64) },
    Singular { seed: (f64, f64), at: (f64, f64) },
    Exterior { seed: (f64, f64), root: (f64, f64) },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSearchResult {
    pub points: Vec<CriticalPointReport>,
    pub failures: Vec<SeedFailure>,
    pub seeds: usize,
}

/// A converged Newton run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonRoot {
    pub x: f64,
    pub y: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
}

fn max_norm(g: [f64; 2]) -> f64 {
    g[0].abs().max(g[1].abs())
}

fn euclid(g: [f64; 2]) -> f64 {
    g[0].hypot(g[1])
}

/// Newton iteration on the gradient from `seed`.
///
/// Each step is halved (up to 30 times) until the gradient norm decreases;
/// trial points outside the gradient's domain count as no decrease, which
/// keeps the iterate at its last valid position.
pub fn newton(seed: (f64, f64), tol: f64, max_iter: usize) -> std::result::Result<NewtonRoot, SeedFailure> {
    let (mut x, mut y) = seed;
    let mut g = gradient(x, y).map_err(|_| SeedFailure::Stalled { seed, at: seed })?;
    for iter in 0..=max_iter {
        if max_norm(g) < tol {
            return Ok(NewtonRoot {
                x,
                y,
                gradient_norm: max_norm(g),
                iterations: iter,
            });
        }
        if iter == max_iter {
            break;
        }
        let h = hessian(x, y, HESSIAN_STEP).map_err(|_| SeedFailure::Stalled { seed, at: (x, y) })?;
        let det = h.det();
        if det == 0.0 || !det.is_finite() {
            return Err(SeedFailure::Singular { seed, at: (x, y) });
        }
        let dx = -(h.yy * g[0] - h.xy * g[1]) / det;
        let dy = -(h.xx * g[1] - h.xy * g[0]) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=30 {
            let (tx, ty) = (x + lambda * dx, y + lambda * dy);
            if let Ok(gt) = gradient(tx, ty) {
                if euclid(gt) < euclid(g) {
                    (x, y, g) = (tx, ty, gt);
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(SeedFailure::Stalled { seed, at: (x, y) });
        }
    }
    Err(SeedFailure::MaxIterations { seed })
}

/// Uniform seed grid over the bounding box of the region, keeping seeds at
/// least `edge_clip` inside it.
pub fn seed_grid(grid: usize, edge_clip: f64) -> Vec<(f64, f64)> {
    let mut seeds = Vec::new();
    if grid < 2 {
        return seeds;
    }
    let step = 1.0 / (grid - 1) as f64;
    for j in 0..grid {
        let y = j as f64 * step;
        for i in 0..grid {
            let x = 0.5 + 0.5 * i as f64 * step;
            if domain_slack(x, y) >= edge_clip {
                seeds.push((x, y));
            }
        }
    }
    seeds
}

/// Nearest point of the region (the constraints are handled in sequence,
/// which is exact near the corners the solver reaches).
fn project(x: f64, y: f64) -> (f64, f64) {
    let x = x.min(1.0);
    let y = y.clamp(0.0, x);
    if x + y < 1.0 {
        let d = 0.5 * (1.0 - x - y);
        (x + d, y + d)
    } else {
        (x, y)
    }
}

/// Runs Newton from every seed, merges converged points and classifies them.
///
/// Roots on the edge of the region (within `boundary_tol`, e.g. the corner
/// `(1, 1)` approached from outside) are projected and reported as
/// boundary extrema; roots farther outside are listed as failures.
pub fn find_critical_points(opts: &CriticalSearch) -> Result<CriticalSearchResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::Precondition(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let seeds = seed_grid(opts.grid, opts.edge_clip);
    let outcomes: Vec<_> = seeds
        .par_iter()
        .map(|&s| (s, newton(s, opts.tol, opts.max_iter)))
        .collect();

    let mut failures = Vec::new();
    let mut roots: Vec<(NewtonRoot, bool)> = Vec::new();
    for (seed, outcome) in outcomes {
        match outcome {
            Ok(root) => {
                if domain_violation(root.x, root.y) > opts.boundary_tol {
                    failures.push(SeedFailure::Exterior {
                        seed,
                        root: (root.x, root.y),
                    });
                    continue;
                }
                let boundary = domain_slack(root.x, root.y) < opts.boundary_tol;
                let (x, y) = if boundary {
                    project(root.x, root.y)
                } else {
                    (root.x, root.y)
                };
                roots.push((NewtonRoot { x, y, ..root }, boundary));
            }
            Err(f) => failures.push(f),
        }
    }

    roots.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
    let mut clusters: Vec<Vec<(NewtonRoot, bool)>> = Vec::new();
    for r in roots {
        let hit = clusters.iter_mut().find(|c| {
            let rep = c[0].0;
            (rep.x - r.0.x).abs().max((rep.y - r.0.y).abs()) <= opts.dedup_radius
        });
        match hit {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }

    let mut points = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let (best, boundary) = cluster
            .iter()
            .copied()
            .min_by(|a, b| {
                a.0.gradient_norm
                    .total_cmp(&b.0.gradient_norm)
                    .then(a.0.x.total_cmp(&b.0.x))
            })
            .expect("clusters are nonempty");
        let boundary = boundary || cluster.iter().any(|r| r.1);
        let h = hessian(best.x, best.y, HESSIAN_STEP)?;
        let classification = if boundary {
            Classification::BoundaryExtremum
        } else {
            h.classify()
        };
        let g = gradient(best.x, best.y)?;
        points.push(CriticalPointReport {
            x: best.x,
            y: best.y,
            value: devil_fish(best.x, best.y)?,
            gradient_norm: max_norm(g),
            hessian: h,
            determinant: h.det(),
            classification,
            seeds: cluster.len(),
            iterations: cluster.iter().map(|r| r.0.iterations).min().unwrap_or(0),
        });
    }
    Ok(CriticalSearchResult {
        points,
        failures,
        seeds: seeds.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_at_m1_converges_fast() {
        let root = newton((0.923_812_749_1, 0.166_017_910_2), 1e-10, 200).unwrap();
        assert!(root.iterations <= 3, "{root:?}");
        assert!((root.x - 0.923_812_749_1).abs() < 1e-8);
        assert!((root.y - 0.166_017_910_2).abs() < 1e-8);
    }

    #[test]
    fn seeds_respect_clip() {
        let seeds = seed_grid(32, 1e-3);
        assert!(!seeds.is_empty());
        assert!(seeds.iter().all(|&(x, y)| domain_slack(x, y) >= 1e-3));
        assert!(seed_grid(1, 1e-3).is_empty());
    }

    #[test]
    fn projection_lands_in_region() {
        for (x, y) in [(1.00001, 1.00002), (0.3, 0.3), (0.9, -0.1), (0.7, 0.8)] {
            let (px, py) = project(x, y);
            assert!(domain_violation(px, py) <= 1e-15, "({x},{y}) -> ({px},{py})");
        }
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let opts = CriticalSearch {
            tol: 0.0,
            ..Default::default()
        };
        assert!(find_critical_points(&opts).is_err());
    }
}
