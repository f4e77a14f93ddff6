//! Seeded randomized checking of every inequality.
//!
//! Streams are produced by SplitMix64 (Steele, Lea and Flood), seeded with
//! the 64-bit `seed` as its initial state:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! A draw `u` in `[0, 1)` is `(next >> 11) * 2^-53`. Each generator consumes
//! draws in the order documented on [`GeneratorKind`], so a stream is fully
//! determined by `(generator, seed)`.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::devilfish::{scaling_identity_gap, scaling_identity_tolerance};
use crate::error::{Error, Result};
use crate::reduction::{altitude_residual_via_lemma2, isosceles_presquare};
use crate::triangle::Triangle;

/// Validation margin, relative to the largest side, for generated triangles.
pub const FUZZ_MARGIN: f64 = 1e-9;

/// Smallest angle produced by the angle-based generator, in radians.
pub const MIN_ANGLE: f64 = 1e-3;

/// Relative tolerance, in units of the squared largest side, for the
/// altitude/cubic identity.
pub const LEMMA2_PATH_TOL: f64 = 1e-10;

/// Maximum number of violations kept in a report.
pub const VIOLATION_CAP: usize = 100;

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Three draws `1 - u` in `(0, 1]`; non-triangles are rejected and redrawn.
    UniformSides,
    /// `alpha = m + (pi - 3m) u1`, `beta = m + (pi - 2m - alpha) u2`, remaining
    /// angle `gamma`, sides `(sin alpha, sin beta, sin gamma)` with `m` the
    /// minimum angle.
    AngleBased,
    /// Longest side 1, gap `g = 10^(-9 + 6 u1)`, `a = g + (1 - g) u2`,
    /// `b = 1 - a + g`, then the sides are rotated by `floor(3 u3)`.
    NearDegenerate,
    /// `1 + 1e-6 (2u - 1)` for each side.
    NearEquilateral,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::UniformSides,
        GeneratorKind::AngleBased,
        GeneratorKind::NearDegenerate,
        GeneratorKind::NearEquilateral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::UniformSides => "uniform-sides",
            GeneratorKind::AngleBased => "angle-based",
            GeneratorKind::NearDegenerate => "near-degenerate",
            GeneratorKind::NearEquilateral => "near-equilateral",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown generator {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub count: u64,
    pub seed: u64,
    pub generator: GeneratorKind,
    pub slack: f64,
}

impl FuzzConfig {
    pub fn new(count: u64, seed: u64, generator: GeneratorKind) -> Self {
        Self {
            count,
            seed,
            generator,
            slack: 1e-12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Precondition("fuzz count must be at least 1".into()));
        }
        if !(self.slack >= 0.0) || !self.slack.is_finite() {
            return Err(Error::Precondition(format!(
                "slack must be finite and >= 0, got {}",
                self.slack
            )));
        }
        Ok(())
    }
}

/// The SplitMix64 stream for `seed`.
pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::from_seed(seed.to_le_bytes())
}

/// `(next >> 11) * 2^-53`, in `[0, 1)`.
pub fn unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic stream of validated triangles.
#[derive(Debug, Clone)]
pub struct TriangleStream {
    rng: SplitMix64,
    kind: GeneratorKind,
    attempts: u64,
    accepted: u64,
}

impl TriangleStream {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        Self {
            rng: rng(seed),
            kind,
            attempts: 0,
            accepted: 0,
        }
    }

    /// Candidates drawn so far, including rejected ones.
    pub fn attempts(&self) -> u64 {
        self.attempts
    }

    pub fn rejected(&self) -> u64 {
        self.attempts - self.accepted
    }

    /// One candidate side triple, before validation.
    pub fn candidate(&mut self) -> [f64; 3] {
        let r = &mut self.rng;
        match self.kind {
            GeneratorKind::UniformSides => [1.0 - unit(r), 1.0 - unit(r), 1.0 - unit(r)],
            GeneratorKind::AngleBased => {
                let pi = std::f64::consts::PI;
                let alpha = MIN_ANGLE + (pi - 3.0 * MIN_ANGLE) * unit(r);
                let beta = MIN_ANGLE + (pi - 2.0 * MIN_ANGLE - alpha) * unit(r);
                let gamma = pi - alpha - beta;
                [alpha.sin(), beta.sin(), gamma.sin()]
            }
            GeneratorKind::NearDegenerate => {
                let g = 10f64.powf(-9.0 + 6.0 * unit(r));
                let a = g + (1.0 - g) * unit(r);
                let b = 1.0 - a + g;
                let s = [a, b, 1.0];
                let k = ((3.0 * unit(r)) as usize).min(2);
                [s[k], s[(k + 1) % 3], s[(k + 2) % 3]]
            }
            GeneratorKind::NearEquilateral => {
                let mut s = [0.0; 3];
                for v in &mut s {
                    *v = 1.0 + 1e-6 * (2.0 * unit(r) - 1.0);
                }
                s
            }
        }
    }
}

/// Validates with margin [`FUZZ_MARGIN`] times the largest side.
pub fn accept(sides: [f64; 3]) -> Option<Triangle> {
    let scale = sides[0].max(sides[1]).max(sides[2]);
    Triangle::with_margin(sides[0], sides[1], sides[2], FUZZ_MARGIN * scale).ok()
}

impl Iterator for TriangleStream {
    type Item = Triangle;

    fn next(&mut self) -> Option<Triangle> {
        loop {
            let sides = self.candidate();
            self.attempts += 1;
            if let Some(t) = accept(sides) {
                self.accepted += 1;
                return Some(t);
            }
        }
    }
}

/// The first `config.count` triangles of the configured stream.
pub fn generate(config: &FuzzConfig) -> impl Iterator<Item = Triangle> {
    TriangleStream::new(config.generator, config.seed).take(config.count as usize)
}

/// Every check applied to a triangle, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// `altitude_residual <= slack s^2`.
    Altitude,
    /// `median_sum_residual <= slack s^2`.
    MedianSum,
    /// `median_residual <= slack s^2`.
    Median,
    /// `corollary_a_residual >= -slack s^2`.
    CorollaryA,
    /// `max(ratio - bound, bound - 1) <= slack`.
    CorollaryB,
    /// Altitude residual against its value through the cubic, within
    /// `1e-10 s^2`.
    Lemma2Path,
    /// Median residual against `a^2/2 F(b/a, c/a)`.
    ScalingIdentity,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Altitude,
        CheckKind::MedianSum,
        CheckKind::Median,
        CheckKind::CorollaryA,
        CheckKind::CorollaryB,
        CheckKind::Lemma2Path,
        CheckKind::ScalingIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Altitude => "altitude",
            CheckKind::MedianSum => "median-sum",
            CheckKind::Median => "median",
            CheckKind::CorollaryA => "corollary-a",
            CheckKind::CorollaryB => "corollary-b",
            CheckKind::Lemma2Path => "lemma2-path",
            CheckKind::ScalingIdentity => "scaling-identity",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one check on one triangle.
///
/// `residual` is the quantity as computed by the library, in its own sign
/// convention. `excess` is oriented so that larger means closer to failure
/// and the check fails when `excess > threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub kind: CheckKind,
    pub residual: f64,
    pub excess: f64,
    pub threshold: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.excess <= self.threshold
    }

    /// `threshold - excess`; negative on failure.
    pub fn margin(&self) -> f64 {
        self.threshold - self.excess
    }
}

/// Runs every check on `t` with slack scaled by the squared largest side.
pub fn check_triangle(t: &Triangle, slack: f64) -> [CheckOutcome; 7] {
    let s = t.largest_side();
    let s2 = s * s;
    let alt = t.altitude_residual();
    let via = altitude_residual_via_lemma2(t);
    let cb = t.corollary_b_check();
    let ca = t.corollary_a_residual();
    let gap = scaling_identity_gap(t);
    let o = |kind, residual, excess, threshold| CheckOutcome {
        kind,
        residual,
        excess,
        threshold,
    };
    [
        o(CheckKind::Altitude, alt, alt, slack * s2),
        o(
            CheckKind::MedianSum,
            t.median_sum_residual(),
            t.median_sum_residual(),
            slack * s2,
        ),
        o(CheckKind::Median, t.median_residual(), t.median_residual(), slack * s2),
        o(CheckKind::CorollaryA, ca, -ca, slack * s2),
        o(CheckKind::CorollaryB, cb.excess(), cb.excess(), slack),
        o(
            CheckKind::Lemma2Path,
            alt - via,
            (alt - via).abs(),
            LEMMA2_PATH_TOL * s2,
        ),
        o(CheckKind::ScalingIdentity, gap, gap, scaling_identity_tolerance(t)),
    ]
}

/// Recomputes the residual recorded for `kind` from the sides alone.
pub fn replay(kind: CheckKind, sides: [f64; 3], slack: f64) -> Result<CheckOutcome> {
    let t = Triangle::new(sides[0], sides[1], sides[2])?;
    Ok(check_triangle(&t, slack)[kind as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sides: [f64; 3],
    pub residual: f64,
    /// `excess / s^2` (`excess` for the scale-free median ratio chain.
    pub score: f64,
}

impl Witness {
    fn beats(&self, other: &Witness) -> bool {
        match self.score.total_cmp(&other.score) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => lex_less(&self.sides, &other.sides),
        }
    }
}

fn lex_less(p: &[f64; 3], q: &[f64; 3]) -> bool {
    p.iter().zip(q).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()) == Some(std::cmp::Ordering::Less)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: CheckKind,
    pub passed: u64,
    pub failed: u64,
    /// Triangle with the largest normalized excess.
    pub worst: Option<Witness>,
    /// Smallest `(threshold - excess) / s^2` seen.
    pub min_margin: f64,
}

impl CheckSummary {
    fn empty(check: CheckKind) -> Self {
        Self {
            check,
            passed: 0,
            failed: 0,
            worst: None,
            min_margin: f64::INFINITY,
        }
    }

    fn merge(&mut self, other: &CheckSummary) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.min_margin = self.min_margin.min(other.min_margin);
        if let Some(w) = other.worst {
            if self.worst.is_none_or(|cur| w.beats(&cur)) {
                self.worst = Some(w);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Position of the triangle in the stream.
    pub index: u64,
    pub check: CheckKind,
    pub sides: [f64; 3],
    pub residual: f64,
    pub excess: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    /// Candidates drawn, including rejected ones.
    pub attempts: u64,
    pub rejected: u64,
    pub checks: Vec<CheckSummary>,
    pub total_violations: u64,
    /// The first [`VIOLATION_CAP`] violations in stream order.
    pub violations: Vec<Violation>,
    /// Triangles whose sorted sides give a negative isosceles pre-squaring
    /// quantity at `(a, c)`, where squaring that step is one-directional.
    pub presquare_negative: u64,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.total_violations == 0
    }

    pub fn summary(&self, kind: CheckKind) -> &CheckSummary {
        &self.checks[kind as usize]
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report fields are finite");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("invalid fuzz report: {e}")))
    }
}

#[derive(Debug, Clone)]
struct Tally {
    checks: Vec<CheckSummary>,
    total_violations: u64,
    violations: Vec<Violation>,
    presquare_negative: u64,
}

impl Tally {
    fn empty() -> Self {
        Self {
            checks: CheckKind::ALL.iter().map(|k| CheckSummary::empty(*k)).collect(),
            total_violations: 0,
            violations: Vec::new(),
            presquare_negative: 0,
        }
    }

    fn record(&mut self, index: u64, t: &Triangle, slack: f64) {
        let s2 = t.largest_side().powi(2);
        for out in check_triangle(t, slack) {
            let norm = if out.kind == CheckKind::CorollaryB { 1.0 } else { s2 };
            let sum = &mut self.checks[out.kind as usize];
            if out.passed() {
                sum.passed += 1;
            } else {
                sum.failed += 1;
                self.total_violations += 1;
                if self.violations.len() < VIOLATION_CAP {
                    self.violations.push(Violation {
                        index,
                        check: out.kind,
                        sides: t.sides(),
                        residual: out.residual,
                        excess: out.excess,
                        threshold: out.threshold,
                    });
                }
            }
            sum.min_margin = sum.min_margin.min(out.margin() / norm);
            let w = Witness {
                sides: t.sides(),
                residual: out.residual,
                score: out.excess / norm,
            };
            if sum.worst.is_none_or(|cur| w.beats(&cur)) {
                sum.worst = Some(w);
            }
        }
        let sorted = t.sorted_desc();
        if isosceles_presquare(sorted.a(), sorted.c()) < 0.0 {
            self.presquare_negative += 1;
        }
    }

    /// Associative; `self` must precede `other` in stream order.
    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.checks.iter_mut().zip(&other.checks) {
            a.merge(b);
        }
        self.total_violations += other.total_violations;
        self.presquare_negative += other.presquare_negative;
        let room = VIOLATION_CAP - self.violations.len();
        self.violations.extend(other.violations.into_iter().take(room));
        self
    }
}

/// Checks `config.count` triangles and tallies the outcome.
///
/// Generation is sequential; checking runs on the rayon pool in fixed-size
/// chunks whose tallies are merged in stream order, so the report is
/// independent of thread count.
pub fn run(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let mut stream = TriangleStream::new(config.generator, config.seed);
    let mut tally = Tally::empty();
    let mut done = 0u64;
    while done < config.count {
        let n = (config.count - done).min(CHUNK as u64) as usize;
        let batch: Vec<Triangle> = stream.by_ref().take(n).collect();
        let base = done;
        let part = batch
            .par_chunks(1024)
            .enumerate()
            .map(|(k, ts)| {
                let mut t = Tally::empty();
                for (i, tri) in ts.iter().enumerate() {
                    t.record(base + (k * 1024 + i) as u64, tri, config.slack);
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::empty(), Tally::merge);
        tally = tally.merge(part);
        done += n as u64;
    }
    Ok(FuzzReport {
        config: *config,
        attempts: stream.attempts(),
        rejected: stream.rejected(),
        checks: tally.checks,
        total_violations: tally.total_violations,
        violations: tally.violations,
        presquare_negative: tally.presquare_negative,
    })
}

/// Checks a caller-supplied list of triangles with the same bookkeeping as
/// [`run`]; `config.count` and `config.generator` are carried through as-is.
pub fn run_on(config: &FuzzConfig, triangles: &[Triangle]) -> Result<FuzzReport> {
    config.validate()?;
    let mut tally = Tally::empty();
    for (i, t) in triangles.iter().enumerate() {
        tally.record(i as u64, t, config.slack);
    }
    Ok(FuzzReport {
        config: *config,
        attempts: triangles.len() as u64,
        rejected: 0,
        checks: tally.checks,
        total_violations: tally.total_violations,
        violations: tally.violations,
        presquare_negative: tally.presquare_negative,
    })
}
