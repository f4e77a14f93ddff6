//! Algebraic reductions: AM-GM, the cubic `a^3 + b^3 + c^3 >= 3abc`, the
//! substitution that turns the altitude inequality into that cubic, and the
//! isosceles case of the median inequality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::Triangle;

/// Coefficients of `t^5 + 14t^4 + 73t^3 - 40t^2 + 16t - 64`, highest degree first.
pub const QUINTIC: [i64; 6] = [1, 14, 73, -40, 16, -64];

/// The linear factor `t - 1`.
pub const LINEAR_FACTOR: [i64; 2] = [1, -1];

/// The quartic cofactor `t^4 + 15t^3 + 88t^2 + 48t + 64`.
pub const QUARTIC_FACTOR: [i64; 5] = [1, 15, 88, 48, 64];

/// Arithmetic mean minus geometric mean of nonnegative values.
///
/// The geometric mean is taken in the log domain when every value is
/// positive; a zero entry makes it exactly 0.
pub fn amgm_gap(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Precondition("amgm_gap needs at least one value".into()));
    }
    if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::Domain(format!(
            "amgm_gap input {v} is not a finite nonnegative real"
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let geo = if values.iter().all(|v| *v > 0.0) {
        (values.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
    } else {
        0.0
    };
    Ok(mean - geo)
}

/// `a^3 + b^3 + c^3 - 3abc`, which is nonnegative whenever `a + b + c > 0`.
pub fn lemma2_gap(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a + b + c > 0.0) {
        return Err(Error::Precondition(format!(
            "a + b + c must be positive, got {}",
            a + b + c
        )));
    }
    Ok(a * a * a + b * b * b + c * c * c - 3.0 * a * b * c)
}

/// Images `x = sqrt(bc)`, `y = sqrt(ac)`, `z = sqrt(ab)` of a triangle's sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubstitutionTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SubstitutionTriple {
    pub fn lemma2_gap(&self) -> f64 {
        // x, y, z are positive for a valid triangle.
        lemma2_gap(self.x, self.y, self.z).expect("substitution images are positive")
    }
}

pub fn reduce_inequality1(t: &Triangle) -> SubstitutionTriple {
    let [a, b, c] = t.sides();
    SubstitutionTriple {
        x: (b * c).sqrt(),
        y: (a * c).sqrt(),
        z: (a * b).sqrt(),
    }
}

/// The altitude residual recomputed through the cubic:
/// `-2S * lemma2_gap(x, y, z) / (abc)`.
pub fn altitude_residual_via_lemma2(t: &Triangle) -> f64 {
    let [a, b, c] = t.sides();
    -2.0 * t.area() * reduce_inequality1(t).lemma2_gap() / (a * b * c)
}

/// Both sides of the isosceles form for `a = b > c`:
/// `(a - sqrt(ac)) sqrt(a^2 + 2c^2)` and `(a - c)/2 sqrt(4a^2 - c^2)`.
pub fn isosceles_margin(a: f64, c: f64) -> Result<(f64, f64)> {
    if !(a > c && c > 0.0) || !a.is_finite() {
        return Err(Error::Precondition(format!(
            "isosceles margin needs a > c > 0, got a={a}, c={c}"
        )));
    }
    let lhs = (a - (a * c).sqrt()) * (a * a + 2.0 * c * c).sqrt();
    let rhs = 0.5 * (a - c) * (4.0 * a * a - c * c).sqrt();
    Ok((lhs, rhs))
}

/// `(c^3 + 9ac^2 - 4a^2 c) / (4a^2 - c^2)`, the quantity the isosceles chain
/// squares. Squaring is only an equivalence where this is nonnegative, which
/// happens for `c/a >= (sqrt(97) - 9)/2`.
pub fn isosceles_presquare(a: f64, c: f64) -> f64 {
    (c * c * c + 9.0 * a * c * c - 4.0 * a * a * c) / (4.0 * a * a - c * c)
}

/// Ratio `c/a` below which [`isosceles_presquare`] is negative.
pub fn presquare_sign_change() -> f64 {
    (97f64.sqrt() - 9.0) / 2.0
}

/// Horner evaluation of the isosceles quintic.
pub fn quintic_eval(t: f64) -> f64 {
    horner(&QUINTIC, t)
}

pub fn quartic_eval(t: f64) -> f64 {
    horner(&QUARTIC_FACTOR, t)
}

fn horner(coeffs: &[i64], t: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &k| acc * t + k as f64)
}

/// Exact product of two integer polynomials (highest degree first).
pub fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Outcome of [`quintic_factor_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorCheck {
    pub product: Vec<i64>,
    pub coefficients_match: bool,
    pub quartic_positive_on_samples: bool,
    pub samples: usize,
}

impl FactorCheck {
    pub fn holds(&self) -> bool {
        self.coefficients_match && self.quartic_positive_on_samples
    }
}

/// Expands `(t - 1)(t^4 + 15t^3 + 88t^2 + 48t + 64)` in integers, compares
/// with the quintic, and samples the quartic on `t > 0`.
pub fn quintic_factor_check() -> FactorCheck {
    let product = poly_mul(&LINEAR_FACTOR, &QUARTIC_FACTOR);
    let coefficients_match = product == QUINTIC;
    // Log-spaced samples over (1e-6, 1e6) plus the unit interval densely.
    let samples: Vec<f64> = (1..=1000)
        .map(|i| i as f64 / 1000.0)
        .chain((0..=120).map(|k| 10f64.powf(-6.0 + k as f64 * 0.1)))
        .collect();
    let quartic_positive_on_samples = samples.iter().all(|&t| quartic_eval(t) > 0.0);
    FactorCheck {
        product,
        coefficients_match,
        quartic_positive_on_samples,
        samples: samples.len(),
    }
}
