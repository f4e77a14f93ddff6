//! Triangle primitives and the direct forms of the altitude and median
//! inequalities.
//!
//! Sign conventions: the two main residuals are "satisfied" when `<= 0`;
//! [`Triangle::corollary_a_residual`] is satisfied when `>= 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance under which a negative Heron radicand is clamped to 0.
pub const HERON_CLAMP: f64 = 1e-12;

/// Tolerance applied to the median ratio chain.
pub const COROLLARY_B_TOL: f64 = 1e-12;

/// A nondegenerate triangle given by its side lengths.
///
/// Construction validates the sides and precomputes every derived measure,
/// so accessors are infallible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    a: f64,
    b: f64,
    c: f64,
    derived: TriangleDerived,
}

/// Area, altitudes, medians and semiperimeter of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleDerived {
    pub area: f64,
    pub altitudes: [f64; 3],
    pub medians: [f64; 3],
    pub semiperimeter: f64,
}

/// Result of checking the median ratio chain `m_a / m_c <= bound <= 1` for sorted sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryB {
    pub ratio: f64,
    pub bound: f64,
    pub holds: bool,
}

impl CorollaryB {
    /// Largest violation of the chain, `max(ratio - bound, bound - 1)`.
    /// Nonpositive whenever the chain holds exactly.
    pub fn excess(&self) -> f64 {
        (self.ratio - self.bound).max(self.bound - 1.0)
    }
}

/// Heron's formula, `sqrt(p(p-a)(p-b)(p-c))`.
///
/// A radicand in `[-1e-12 p^4, 0)` is rounding noise on a thin triangle and is
/// clamped to zero; anything more negative is reported.
pub fn heron_area(a: f64, b: f64, c: f64) -> Result<f64> {
    let p = 0.5 * (a + b + c);
    let radicand = p * (p - a) * (p - b) * (p - c);
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -HERON_CLAMP * p.powi(4) {
        Ok(0.0)
    } else {
        Err(Error::HeronRadicand(radicand))
    }
}

/// Median to side `x` of a triangle with the other sides `y`, `z`:
/// `1/2 sqrt(2y^2 + 2z^2 - x^2)`.
pub fn median_length(x: f64, y: f64, z: f64) -> Result<f64> {
    let radicand = 2.0 * y * y + 2.0 * z * z - x * x;
    if radicand > 0.0 {
        Ok(0.5 * radicand.sqrt())
    } else {
        Err(Error::MedianRadicand(radicand))
    }
}

impl Triangle {
    /// Validates with strictness margin 0.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::with_margin(a, b, c, 0.0)
    }

    /// Validates `a + b > c + margin` (and cyclic) before computing measures.
    pub fn with_margin(a: f64, b: f64, c: f64, margin: f64) -> Result<Self> {
        let finite = [a, b, c].iter().all(|s| s.is_finite() && *s > 0.0);
        if !finite {
            return Err(Error::NonPositiveSide(a, b, c));
        }
        if !(margin >= 0.0) {
            return Err(Error::Precondition(format!("margin must be >= 0, got {margin}")));
        }
        if !(a + b > c + margin && b + c > a + margin && a + c > b + margin) {
            return Err(Error::TriangleInequality { a, b, c, margin });
        }
        let area = heron_area(a, b, c)?;
        if area <= 0.0 {
            return Err(Error::HeronRadicand(0.0));
        }
        if !area.is_finite() {
            return Err(Error::Domain(format!("area of ({a}, {b}, {c}) overflows")));
        }
        let medians = [
            median_length(a, b, c)?,
            median_length(b, a, c)?,
            median_length(c, a, b)?,
        ];
        let derived = TriangleDerived {
            area,
            altitudes: [2.0 * area / a, 2.0 * area / b, 2.0 * area / c],
            medians,
            semiperimeter: 0.5 * (a + b + c),
        };
        Ok(Self { a, b, c, derived })
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn largest_side(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    /// The same triangle with sides relabelled so that `a >= b >= c`.
    pub fn sorted_desc(&self) -> Self {
        let mut s = self.sides();
        s.sort_by(|p, q| q.total_cmp(p));
        // Relabelling preserves validity; recompute measures for the new order.
        Self::new(s[0], s[1], s[2]).expect("permutation of a valid triangle")
    }

    /// Triangle with every side multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.a * factor, self.b * factor, self.c * factor)
    }

    pub fn derived(&self) -> &TriangleDerived {
        &self.derived
    }

    pub fn area(&self) -> f64 {
        self.derived.area
    }

    pub fn semiperimeter(&self) -> f64 {
        self.derived.semiperimeter
    }

    /// `(h_a, h_b, h_c)` with `h_x = 2S / x`.
    pub fn altitudes(&self) -> [f64; 3] {
        self.derived.altitudes
    }

    /// `(m_a, m_b, m_c)`.
    pub fn medians(&self) -> [f64; 3] {
        self.derived.medians
    }

    /// `(a h_a + b h_b + c h_c) - (sqrt(bc) h_a + sqrt(ac) h_b + sqrt(ab) h_c)`,
    /// satisfied when `<= 0`.
    pub fn altitude_residual(&self) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        let [ha, hb, hc] = self.derived.altitudes;
        let lhs = a * ha + b * hb + c * hc;
        let rhs = (b * c).sqrt() * ha + (a * c).sqrt() * hb + (a * b).sqrt() * hc;
        lhs - rhs
    }

    /// `(a - sqrt(bc)) m_a + (b - sqrt(ac)) m_b + (c - sqrt(ab)) m_c`,
    /// satisfied when `<= 0`.
    pub fn median_residual(&self) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        let [ma, mb, mc] = self.derived.medians;
        (a - (b * c).sqrt()) * ma + (b - (a * c).sqrt()) * mb + (c - (a * b).sqrt()) * mc
    }

    /// `(a m_a + b m_b + c m_c) - (sqrt(bc) m_a + sqrt(ac) m_b + sqrt(ab) m_c)`,
    /// the unrearranged median inequality; satisfied when `<= 0`.
    pub fn median_sum_residual(&self) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        let [ma, mb, mc] = self.derived.medians;
        let lhs = a * ma + b * mb + c * mc;
        let rhs = (b * c).sqrt() * ma + (a * c).sqrt() * mb + (a * b).sqrt() * mc;
        lhs - rhs
    }

    /// `(2p - 3a) m_a + (2p - 3b) m_b + (2p - 3c) m_c`, satisfied when `>= 0`.
    pub fn corollary_a_residual(&self) -> f64 {
        let two_p = self.a + self.b + self.c;
        let [ma, mb, mc] = self.derived.medians;
        (two_p - 3.0 * self.a) * ma + (two_p - 3.0 * self.b) * mb + (two_p - 3.0 * self.c) * mc
    }

    /// The median ratio chain on the sides sorted so that `a >= b >= c`.
    pub fn corollary_b_check(&self) -> CorollaryB {
        let t = self.sorted_desc();
        let (a, b, c) = (t.a, t.b, t.c);
        let [ma, _, mc] = t.derived.medians;
        let ratio = ma / mc;
        let bound = ((a * b).sqrt() + (a * c).sqrt() + (b * c).sqrt()) / (a + b + c);
        let holds = ratio <= bound + COROLLARY_B_TOL && bound <= 1.0 + COROLLARY_B_TOL;
        CorollaryB { ratio, bound, holds }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn area_examples() {
        assert!(close(Triangle::new(3.0, 4.0, 5.0).unwrap().area(), 6.0, 1e-14));
        assert!(close(
            Triangle::new(1.0, 1.0, 1.0).unwrap().area(),
            3f64.sqrt() / 4.0,
            1e-15
        ));
        let s = Triangle::new(2.0, 2.0, 3.0).unwrap().area();
        assert!(close(s, 0.75 * 7f64.sqrt(), 1e-14));
        assert!(close(s, 1.9843135, 1e-7));
    }

    #[test]
    fn heron_clamps_rounding_noise_and_rejects_non_triangles() {
        assert_eq!(heron_area(1.0, 1.0, 2.0).unwrap(), 0.0);
        assert!(matches!(heron_area(1.0, 1.0, 3.0), Err(Error::HeronRadicand(_))));
    }

    #[test]
    fn overflowing_area_is_rejected() {
        assert!(Triangle::new(1e300, 1e300, 1e300).is_err());
        assert!(Triangle::new(1e150, 1e150, 1e150).is_err());
        assert!(Triangle::new(1e75, 1e75, 1e75).is_ok());
    }

    #[test]
    fn altitudes_examples() {
        let h = Triangle::new(3.0, 4.0, 5.0).unwrap().altitudes();
        assert!(close(h[0], 4.0, 1e-14) && close(h[1], 3.0, 1e-14) && close(h[2], 2.4, 1e-14));
        let h = Triangle::new(1.0, 1.0, 1.0).unwrap().altitudes();
        assert!(h.iter().all(|v| close(*v, 3f64.sqrt() / 2.0, 1e-15)));
        let h = Triangle::new(2.0, 2.0, 3.0).unwrap().altitudes();
        assert!(close(h[0], 1.9843135, 1e-7) && close(h[1], 1.9843135, 1e-7));
        assert!(close(h[2], 1.3228757, 1e-7));
    }

    #[test]
    fn medians_examples() {
        let m = Triangle::new(3.0, 4.0, 5.0).unwrap().medians();
        assert!(close(m[0], 0.5 * 73f64.sqrt(), 1e-14));
        assert!(close(m[1], 0.5 * 52f64.sqrt(), 1e-14));
        assert!(close(m[2], 2.5, 1e-14));
        let m = Triangle::new(1.0, 1.0, 1.0).unwrap().medians();
        assert!(m.iter().all(|v| close(*v, 3f64.sqrt() / 2.0, 1e-15)));
        let m = Triangle::new(1.0, 1.0, 0.5).unwrap().medians();
        assert!(close(m[0], 0.5 * 1.5f64.sqrt(), 1e-15) && close(m[1], m[0], 0.0));
        assert!(close(m[2], 0.5 * 3.75f64.sqrt(), 1e-15));
        assert!(median_length(3.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn altitude_residual_examples() {
        assert!(Triangle::new(1.0, 1.0, 1.0).unwrap().altitude_residual().abs() < 1e-15);
        let r = Triangle::new(3.0, 4.0, 5.0).unwrap().altitude_residual();
        let oracle = 36.0 - (20f64.sqrt() * 4.0 + 15f64.sqrt() * 3.0 + 12f64.sqrt() * 2.4);
        assert!(close(r, oracle, 1e-12));
        assert!(close(r, -1.8213, 1e-3));
        for k in [1e-3, 0.7, 3.0, 1e4] {
            let r = Triangle::new(k, k, k).unwrap().altitude_residual();
            assert!(r.abs() <= 1e-12 * k * k);
        }
    }

    #[test]
    fn median_residual_examples() {
        assert_eq!(Triangle::new(1.0, 1.0, 1.0).unwrap().median_residual(), 0.0);
        // Oracle values recomputed at 30 digits with mpmath.
        let r = Triangle::new(3.0, 4.0, 5.0).unwrap().median_residual();
        assert!(close(r, -1.991_256_536_323_873_9, 1e-12), "{r}");
        let r = Triangle::new(1.0, 1.0, 0.5).unwrap().median_residual();
        assert!(close(r, -0.125_403_450_668_776_7, 1e-13), "{r}");
    }

    #[test]
    fn corollary_a_examples() {
        assert!(Triangle::new(1.0, 1.0, 1.0).unwrap().corollary_a_residual().abs() < 1e-15);
        let r = Triangle::new(3.0, 4.0, 5.0).unwrap().corollary_a_residual();
        assert!(close(r, 3.0 * 0.5 * 73f64.sqrt() - 7.5, 1e-13));
        assert!(close(r, 5.316, 1e-3));
        let r = Triangle::new(1.0, 1.0, 0.5).unwrap().corollary_a_residual();
        assert!(close(r, -1.5f64.sqrt() * 0.5 + 0.5 * 3.75f64.sqrt(), 1e-14));
        assert!(close(r, 0.3559, 1e-4));
    }

    #[test]
    fn corollary_b_examples() {
        let k = Triangle::new(1.0, 1.0, 1.0).unwrap().corollary_b_check();
        assert!(close(k.ratio, 1.0, 1e-15) && close(k.bound, 1.0, 1e-15) && k.holds);
        let k = Triangle::new(1.0, 1.5, 2.0).unwrap().corollary_b_check();
        assert!(close(k.ratio, 0.4663, 1e-4) && close(k.bound, 0.9713, 1e-4) && k.holds);
        let k = Triangle::new(2.0, 1.1, 1.0).unwrap().corollary_b_check();
        assert!(close(k.ratio, 0.2112, 1e-4) && close(k.bound, 0.9625, 1e-4) && k.holds);
    }

    #[test]
    fn validation() {
        assert!(matches!(Triangle::new(0.0, 1.0, 1.0), Err(Error::NonPositiveSide(..))));
        assert!(matches!(
            Triangle::new(f64::NAN, 1.0, 1.0),
            Err(Error::NonPositiveSide(..))
        ));
        assert!(matches!(
            Triangle::new(1.0, 1.0, 2.0),
            Err(Error::TriangleInequality { .. })
        ));
        assert!(Triangle::with_margin(1.0, 1.0, 2.0 - 1e-10, 0.0).is_ok());
        assert!(Triangle::with_margin(1.0, 1.0, 2.0 - 1e-10, 1e-9).is_err());
        assert!(Triangle::with_margin(1.0, 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn sorted_desc_orders_sides() {
        let t = Triangle::new(3.0, 5.0, 4.0).unwrap().sorted_desc();
        assert_eq!(t.sides(), [5.0, 4.0, 3.0]);
        let [ma, mb, mc] = t.medians();
        assert!(ma <= mb && mb <= mc);
    }
}
