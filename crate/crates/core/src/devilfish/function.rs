use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::Triangle;

/// Radicands in `[-RADICAND_CLAMP, 0)` are treated as 0.
pub const RADICAND_CLAMP: f64 = 1e-12;

/// Denominator radicands at or below this make the gradient undefined.
pub const GRADIENT_FLOOR: f64 = 1e-12;

/// Default finite-difference step for [`hessian`].
pub const HESSIAN_STEP: f64 = 1e-5;

/// Normalized side ratios `(x, y) = (b/a, c/a)` for `a >= b >= c`.
///
/// Membership in the admissible region `0 <= y <= x <= 1, x + y >= 1` is
/// checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    x: f64,
    y: f64,
}

impl DomainPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if in_domain(x, y) {
            Ok(Self { x, y })
        } else {
            Err(Error::Domain(format!(
                "({x}, {y}) is outside 0 <= y <= x <= 1, x + y >= 1"
            )))
        }
    }

    /// Ratios of a triangle after sorting its sides in descending order.
    pub fn from_triangle(t: &Triangle) -> Self {
        let [a, b, c] = t.sorted_desc().sides();
        // Sorted valid sides always land in the region (up to rounding on x + y).
        Self { x: b / a, y: c / a }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn value(&self) -> f64 {
        // The three radicands are nonnegative on the region.
        devil_fish(self.x, self.y).expect("radicands are nonnegative on the region")
    }
}

/// Membership test for the closed region `0 <= y <= x <= 1, x + y >= 1`.
pub fn in_domain(x: f64, y: f64) -> bool {
    0.0 <= y && y <= x && x <= 1.0 && x + y >= 1.0
}

/// How far `(x, y)` lies outside the region (0 inside), in the max of the
/// constraint violations.
pub fn domain_violation(x: f64, y: f64) -> f64 {
    [-y, y - x, x - 1.0, 1.0 - x - y].into_iter().fold(0.0, f64::max)
}

/// Smallest constraint slack; positive in the interior.
pub fn domain_slack(x: f64, y: f64) -> f64 {
    [y, x - y, 1.0 - x, x + y - 1.0]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

fn clamped_sqrt(v: f64, what: &str) -> Result<f64> {
    if v >= 0.0 {
        Ok(v.sqrt())
    } else if v >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!("{what} radicand {v} is negative")))
    }
}

/// The three radicands `2x^2 + 2y^2 - 1`, `2 + 2y^2 - x^2`, `2 + 2x^2 - y^2`.
#[inline]
pub fn radicands(x: f64, y: f64) -> [f64; 3] {
    [
        2.0 * x * x + 2.0 * y * y - 1.0,
        2.0 + 2.0 * y * y - x * x,
        2.0 + 2.0 * x * x - y * y,
    ]
}

/// The devil-fish function
///
/// `F(x, y) = (1 - sqrt(xy)) sqrt(2x^2 + 2y^2 - 1)
///          + (x - sqrt(y)) sqrt(2 + 2y^2 - x^2)
///          + (y - sqrt(x)) sqrt(2 + 2x^2 - y^2)`,
///
/// evaluated on its natural domain. For sorted sides `a >= b >= c` the median
/// residual equals `a^2 / 2 * F(b/a, c/a)`.
pub fn devil_fish(x: f64, y: f64) -> Result<f64> {
    let sx = clamped_sqrt(x, "x")?;
    let sy = clamped_sqrt(y, "y")?;
    let [ra, rb, rc] = radicands(x, y);
    let a = clamped_sqrt(ra, "2x^2+2y^2-1")?;
    let b = clamped_sqrt(rb, "2+2y^2-x^2")?;
    let c = clamped_sqrt(rc, "2+2x^2-y^2")?;
    Ok((1.0 - sx * sy) * a + (x - sy) * b + (y - sx) * c)
}

/// Analytic partial derivatives of [`devil_fish`].
///
/// With `A, B, C` the three square roots:
///
/// ```text
/// F_x = -sqrt(y)/(2 sqrt(x)) A + 2x(1 - sqrt(xy))/A + B - x(x - sqrt(y))/B
///       - C/(2 sqrt(x)) + 2x(y - sqrt(x))/C
/// F_y = -sqrt(x)/(2 sqrt(y)) A + 2y(1 - sqrt(xy))/A + 2y(x - sqrt(y))/B
///       - B/(2 sqrt(y)) + C - y(y - sqrt(x))/C
/// ```
pub fn gradient(x: f64, y: f64) -> Result<[f64; 2]> {
    let [ra, rb, rc] = radicands(x, y);
    for (v, what) in [
        (x, "x"),
        (y, "y"),
        (ra, "2x^2+2y^2-1"),
        (rb, "2+2y^2-x^2"),
        (rc, "2+2x^2-y^2"),
    ] {
        if !(v > GRADIENT_FLOOR) {
            return Err(Error::Domain(format!("gradient undefined: {what} = {v} at ({x}, {y})")));
        }
    }
    let (sx, sy) = (x.sqrt(), y.sqrt());
    let (a, b, c) = (ra.sqrt(), rb.sqrt(), rc.sqrt());
    let p = 1.0 - sx * sy;
    let q = x - sy;
    let r = y - sx;
    let fx = -sy / (2.0 * sx) * a + 2.0 * x * p / a + b - x * q / b - c / (2.0 * sx) + 2.0 * x * r / c;
    let fy = -sx / (2.0 * sy) * a + 2.0 * y * p / a + 2.0 * y * q / b - b / (2.0 * sy) + c - y * r / c;
    Ok([fx, fy])
}

/// Second partials of the devil-fish function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hessian {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

/// Classification of a stationary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    LocalMax,
    LocalMin,
    Saddle,
    BoundaryExtremum,
    Unclassified,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::LocalMax => "local-max",
            Classification::LocalMin => "local-min",
            Classification::Saddle => "saddle",
            Classification::BoundaryExtremum => "boundary-extremum",
            Classification::Unclassified => "unclassified",
        })
    }
}

impl Hessian {
    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    /// Second-derivative test; ambiguous below `1e-9` in `|det|` or `|F_xx|`.
    pub fn classify(&self) -> Classification {
        let det = self.det();
        if det.abs() <= 1e-9 || self.xx.abs() <= 1e-9 {
            Classification::Unclassified
        } else if det < 0.0 {
            Classification::Saddle
        } else if self.xx < 0.0 {
            Classification::LocalMax
        } else {
            Classification::LocalMin
        }
    }
}

/// Hessian by central differences of [`gradient`] with step `h`.
///
/// The mixed partial is the mean of the two one-sided estimates so the result
/// is symmetric. Fails if any stencil point leaves the gradient's domain.
pub fn hessian(x: f64, y: f64, h: f64) -> Result<Hessian> {
    if !(h > 0.0) {
        return Err(Error::Precondition(format!("hessian step must be positive, got {h}")));
    }
    let gxp = gradient(x + h, y)?;
    let gxm = gradient(x - h, y)?;
    let gyp = gradient(x, y + h)?;
    let gym = gradient(x, y - h)?;
    let inv = 1.0 / (2.0 * h);
    Ok(Hessian {
        xx: (gxp[0] - gxm[0]) * inv,
        xy: 0.5 * ((gyp[0] - gym[0]) + (gxp[1] - gxm[1])) * inv,
        yy: (gyp[1] - gym[1]) * inv,
    })
}

/// `|median_residual(t) - a^2/2 F(b/a, c/a)|` for `t` with sides sorted
/// descending.
pub fn scaling_identity_gap(t: &Triangle) -> f64 {
    let t = t.sorted_desc();
    let [a, b, c] = t.sides();
    // b/a and c/a stay inside the natural domain for any valid triangle.
    let f = devil_fish(b / a, c / a).expect("sorted ratios lie in the natural domain");
    (t.median_residual() - 0.5 * a * a * f).abs()
}

/// Tolerance for [`scaling_identity_gap`]: `1e-10 a^2 max(1, |F|)`.
pub fn scaling_identity_tolerance(t: &Triangle) -> f64 {
    let t = t.sorted_desc();
    let [a, b, c] = t.sides();
    let f = devil_fish(b / a, c / a).unwrap_or(0.0);
    1e-10 * a * a * f.abs().max(1.0)
}
