//! Interval enclosures of the devil-fish function and its gradient.

use crate::devilfish::RADICAND_CLAMP;
use crate::error::Result;
use crate::interval::{Box2, Interval};

/// Corners of the region where every term of the function is an exact small
/// integer, so `F = 0` holds with no rounding:
/// `F(1, 1) = 0*1 + 0*sqrt(3) + 0*sqrt(3)` and `F(1, 0) = 1*1 + 1*1 - 1*2`.
pub const EXACT_ZEROS: [(f64, f64); 2] = [(1.0, 1.0), (1.0, 0.0)];

struct Parts {
    sx: Interval,
    sy: Interval,
    a: Interval,
    b: Interval,
    c: Interval,
}

fn parts(x: Interval, y: Interval) -> Result<Parts> {
    let (x2, y2) = (x.sqr(), y.sqr());
    let ra = 2.0 * x2 + 2.0 * y2 + (-1.0);
    let rb = 2.0 * y2 + 2.0 - x2;
    let rc = 2.0 * x2 + 2.0 - y2;
    Ok(Parts {
        sx: x.sqrt(RADICAND_CLAMP)?,
        sy: y.sqrt(RADICAND_CLAMP)?,
        a: ra.sqrt(RADICAND_CLAMP)?,
        b: rb.sqrt(RADICAND_CLAMP)?,
        c: rc.sqrt(RADICAND_CLAMP)?,
    })
}

/// Natural interval extension, term by term.
///
/// Encloses `F` over the part of the box where `F` is defined; negative
/// radicand lower endpoints are clamped to zero.
pub fn natural_enclosure(b: &Box2) -> Result<Interval> {
    let (x, y) = (b.x, b.y);
    let p = parts(x, y)?;
    Ok((1.0 - p.sx * p.sy) * p.a + (x - p.sy) * p.b + (y - p.sx) * p.c)
}

/// Enclosure of `(F_x, F_y)` over the box. Endpoints may be infinite when
/// the box touches `y = 0`, `x = 0` or a zero of a radicand.
pub fn gradient_enclosure(b: &Box2) -> Result<[Interval; 2]> {
    let (x, y) = (b.x, b.y);
    let p = parts(x, y)?;
    let inv_sx = p.sx.recip_nonneg()?;
    let inv_sy = p.sy.recip_nonneg()?;
    let inv_a = p.a.recip_nonneg()?;
    let inv_b = p.b.recip_nonneg()?;
    let inv_c = p.c.recip_nonneg()?;
    let s = 1.0 - p.sx * p.sy;
    let q = x - p.sy;
    let r = y - p.sx;
    let fx = -(0.5 * (p.sy * inv_sx) * p.a) + 2.0 * x * s * inv_a + p.b - x * q * inv_b - 0.5 * p.c * inv_sx
        + 2.0 * x * r * inv_c;
    let fy = -(0.5 * (p.sx * inv_sy) * p.a) + 2.0 * y * s * inv_a + 2.0 * y * q * inv_b - 0.5 * p.b * inv_sy + p.c
        - y * r * inv_c;
    Ok([fx, fy])
}

/// Enclosure of `F` at a single point.
pub fn point_enclosure(x: Interval, y: Interval) -> Result<Interval> {
    natural_enclosure(&Box2::new(x, y))
}

/// Mean-value form `F(c) + F_x(B)(x - c_x) + F_y(B)(y - c_y)` around the box
/// center. `None` when the gradient enclosure is unbounded on the box.
pub fn mean_value_enclosure(b: &Box2) -> Option<Interval> {
    let g = gradient_enclosure(b).ok()?;
    if !g[0].is_finite() || !g[1].is_finite() {
        return None;
    }
    let (cx, cy) = b.center();
    let fc = point_enclosure(Interval::point(cx), Interval::point(cy)).ok()?;
    let dx = b.x - Interval::point(cx);
    let dy = b.y - Interval::point(cy);
    Some(fc + g[0] * dx + g[1] * dy)
}

/// Tightest available enclosure: natural extension intersected with the
/// mean-value form where the latter exists.
pub fn enclose(b: &Box2) -> Result<Interval> {
    let natural = natural_enclosure(b)?;
    Ok(match mean_value_enclosure(b) {
        Some(mv) => natural.intersect(&mv).unwrap_or(natural),
        None => natural,
    })
}

/// Proves `F <= 0` on the box intersected with the region by monotonicity,
/// for boxes resting on `y = 0`.
///
/// If `F_y < 0` on the box, the maximum over each vertical slice of the
/// region sits on the lower edge `y = 1 - x`. If moreover `F_x - F_y > 0`,
/// that edge profile increases toward `x = 1`, so the maximum is attained at
/// the right end of the edge: the exact zero `(1, 0)` or a point whose
/// enclosure is checked directly.
pub fn monotone_corner_closure(b: &Box2) -> bool {
    if b.y.lo() != 0.0 {
        return false;
    }
    let Ok(g) = gradient_enclosure(b) else {
        return false;
    };
    if !(g[1].hi() < 0.0) || !((g[0] - g[1]).lo() > 0.0) {
        return false;
    }
    let x_end = b.x.hi().min(1.0);
    if x_end == 1.0 {
        return true;
    }
    let xe = Interval::point(x_end);
    point_enclosure(xe, 1.0 - xe).map(|v| v.hi() <= 0.0).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devilfish::{devil_fish, gradient, in_domain};

    fn bx(x0: f64, x1: f64, y0: f64, y1: f64) -> Box2 {
        Box2::new(Interval::new(x0, x1), Interval::new(y0, y1))
    }

    #[test]
    fn exact_zeros_are_exact() {
        for (x, y) in EXACT_ZEROS {
            assert_eq!(devil_fish(x, y).unwrap(), 0.0);
        }
    }

    #[test]
    fn point_box_at_corner_is_tight() {
        let e = natural_enclosure(&bx(1.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(e.contains(0.0) && e.width() <= 1e-14, "{e}");
        let e = enclose(&bx(1.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(e.contains(0.0) && e.width() <= 1e-14, "{e}");
    }

    #[test]
    fn box_away_from_maximum_has_negative_bound() {
        let b = bx(0.5, 0.6, 0.4, 0.5);
        let e = enclose(&b).unwrap();
        let mut sampled_max = f64::NEG_INFINITY;
        for i in 0..100 {
            for j in 0..100 {
                let x = 0.5 + 0.1 * i as f64 / 99.0;
                let y = 0.4 + 0.1 * j as f64 / 99.0;
                if in_domain(x, y) {
                    sampled_max = sampled_max.max(devil_fish(x, y).unwrap());
                }
            }
        }
        assert!(e.hi() >= sampled_max && e.hi() < 0.0, "{e} vs {sampled_max}");
    }

    #[test]
    fn gradient_enclosure_contains_point_gradients() {
        let b = bx(0.8, 0.85, 0.3, 0.32);
        let g = gradient_enclosure(&b).unwrap();
        for (x, y) in [(0.8, 0.3), (0.825, 0.31), (0.85, 0.32)] {
            let p = gradient(x, y).unwrap();
            assert!(g[0].contains(p[0]) && g[1].contains(p[1]));
        }
    }

    #[test]
    fn mean_value_form_beats_natural_near_corner() {
        let b = bx(1.0 - 1e-4, 1.0, 1.0 - 1e-4, 1.0);
        let nat = natural_enclosure(&b).unwrap();
        let mv = mean_value_enclosure(&b).unwrap();
        assert!(mv.hi() < nat.hi());
        assert!(mv.hi() < 1e-6, "{mv}");
    }

    #[test]
    fn corner_closure_at_degenerate_corner() {
        assert!(monotone_corner_closure(&bx(1.0 - 1e-3, 1.0, 0.0, 1e-3)));
        // Not resting on y = 0.
        assert!(!monotone_corner_closure(&bx(1.0 - 1e-3, 1.0, 1e-4, 1e-3)));
        // Far from the corner F_y changes sign.
        assert!(!monotone_corner_closure(&bx(0.5, 1.0, 0.0, 1.0)));
    }

    #[test]
    fn gradient_unbounded_at_y_zero() {
        let g = gradient_enclosure(&bx(0.999, 1.0, 0.0, 1e-3)).unwrap();
        assert_eq!(g[1].lo(), f64::NEG_INFINITY);
        assert!(g[1].hi() < 0.0);
        assert!(g[0].is_finite());
        assert!(mean_value_enclosure(&bx(0.999, 1.0, 0.0, 1e-3)).is_none());
    }
}
