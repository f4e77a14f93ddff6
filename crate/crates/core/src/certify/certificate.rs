//! Certificate document: JSON export, parsing and the independent re-check.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::bnb::{
    certify_nonpositive, residual_upper, CertifyOptions, Conclusion, PruneStats, Region, RegionCertificate, ResidualBox,
};
use super::edges::{certify_edges, edge_enclosure, EdgeCertificate, EdgeOptions, ResidualInterval};
use crate::devilfish::{Edge, EdgeProfile};
use crate::error::{Error, Result};
use crate::interval::{Box2, Interval};
use crate::numfmt;

pub const CERTIFICATE_VERSION: u32 = 1;

/// A completed run: the region certificate plus one per genuine edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub region: RegionCertificate,
    /// Whether residual bounds use the mean-value form.
    pub mean_value: bool,
    pub edges: Vec<EdgeCertificate>,
}

impl Certificate {
    /// Region and every edge certified.
    pub fn fully_certified(&self) -> bool {
        self.region.conclusion == Conclusion::Certified
            && self.edges.iter().all(|e| e.conclusion == Conclusion::Certified)
    }
}

/// Runs the region branch-and-bound and the three edge searches.
pub fn certify(opts: &CertifyOptions, edge_opts: &EdgeOptions) -> Result<Certificate> {
    Ok(Certificate {
        region: certify_nonpositive(opts)?,
        mean_value: opts.mean_value,
        edges: certify_edges(edge_opts)?,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    version: u32,
    domain: DomainDoc,
    #[serde(with = "numfmt::as_string")]
    tau: f64,
    #[serde(with = "numfmt::as_string")]
    min_width: f64,
    enclosure: String,
    conclusion: Conclusion,
    boxes_processed: u64,
    residual_boxes: Vec<BoxDoc>,
    #[serde(with = "numfmt::as_string")]
    max_residual_width: f64,
    pruning: PruneStats,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainDoc {
    description: String,
    #[serde(with = "numfmt::as_string")]
    x_max: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxDoc {
    x: [String; 2],
    y: [String; 2],
    #[serde(with = "numfmt::as_string")]
    upper: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    edge: String,
    #[serde(with = "numfmt::as_string")]
    tau: f64,
    conclusion: Conclusion,
    intervals_processed: u64,
    residual_intervals: Vec<IntervalDoc>,
    #[serde(with = "numfmt::as_string")]
    max_residual_width: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    t: [String; 2],
    #[serde(with = "numfmt::as_string")]
    upper: f64,
}

const ENCLOSURE_MV: &str = "natural+mean-value";
const ENCLOSURE_NATURAL: &str = "natural";

fn pair(i: &Interval) -> [String; 2] {
    [numfmt::shortest(i.lo()), numfmt::shortest(i.hi())]
}

fn unpair(p: &[String; 2], what: &str) -> Result<Interval> {
    let lo = numfmt::parse(&p[0]).ok_or_else(|| Error::Certificate(format!("{what}: bad number {:?}", p[0])))?;
    let hi = numfmt::parse(&p[1]).ok_or_else(|| Error::Certificate(format!("{what}: bad number {:?}", p[1])))?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Certificate(format!("{what}: non-finite bound")));
    }
    Interval::try_new(lo, hi).map_err(|e| Error::Certificate(format!("{what}: {e}")))
}

fn parse_edge(name: &str) -> Result<Edge> {
    Edge::GENUINE
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::Certificate(format!("unknown edge {name:?}")))
}

impl From<&Certificate> for Doc {
    fn from(c: &Certificate) -> Self {
        let r = &c.region;
        Doc {
            version: CERTIFICATE_VERSION,
            domain: DomainDoc {
                description: r.region.describe(),
                x_max: r.region.x_max,
            },
            tau: r.tau,
            min_width: r.min_width,
            enclosure: if c.mean_value { ENCLOSURE_MV } else { ENCLOSURE_NATURAL }.to_string(),
            conclusion: r.conclusion,
            boxes_processed: r.boxes_processed,
            residual_boxes: r
                .residual_boxes
                .iter()
                .map(|b| BoxDoc {
                    x: pair(&b.bounds.x),
                    y: pair(&b.bounds.y),
                    upper: b.upper,
                })
                .collect(),
            max_residual_width: r.max_residual_width,
            pruning: r.stats,
            edges: c
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    edge: e.edge.name().to_string(),
                    tau: e.tau,
                    conclusion: e.conclusion,
                    intervals_processed: e.intervals_processed,
                    residual_intervals: e
                        .residual_intervals
                        .iter()
                        .map(|i| IntervalDoc {
                            t: pair(&i.t),
                            upper: i.upper,
                        })
                        .collect(),
                    max_residual_width: e.max_residual_width,
                })
                .collect(),
        }
    }
}

impl TryFrom<Doc> for Certificate {
    type Error = Error;

    fn try_from(d: Doc) -> Result<Self> {
        if d.version != CERTIFICATE_VERSION {
            return Err(Error::Certificate(format!("unsupported version {}", d.version)));
        }
        let region = Region::new(d.domain.x_max).map_err(|e| Error::Certificate(e.to_string()))?;
        let mean_value = match d.enclosure.as_str() {
            ENCLOSURE_MV => true,
            ENCLOSURE_NATURAL => false,
            other => return Err(Error::Certificate(format!("unknown enclosure {other:?}"))),
        };
        let residual_boxes = d
            .residual_boxes
            .iter()
            .map(|b| {
                Ok(ResidualBox {
                    bounds: Box2::new(unpair(&b.x, "box x")?, unpair(&b.y, "box y")?),
                    upper: b.upper,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = d
            .edges
            .into_iter()
            .map(|e| {
                Ok(EdgeCertificate {
                    edge: parse_edge(&e.edge)?,
                    tau: e.tau,
                    conclusion: e.conclusion,
                    intervals_processed: e.intervals_processed,
                    residual_intervals: e
                        .residual_intervals
                        .iter()
                        .map(|i| {
                            Ok(ResidualInterval {
                                t: unpair(&i.t, "edge t")?,
                                upper: i.upper,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                    max_residual_width: e.max_residual_width,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            region: RegionCertificate {
                region,
                tau: d.tau,
                min_width: d.min_width,
                conclusion: d.conclusion,
                boxes_processed: d.boxes_processed,
                residual_boxes,
                max_residual_width: d.max_residual_width,
                stats: d.pruning,
            },
            mean_value,
            edges,
        })
    }
}

/// Canonical JSON text: pretty-printed, LF line endings, trailing newline.
pub fn to_json(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&Doc::from(c)).expect("certificate document serializes");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
    Certificate::try_from(doc)
}

pub fn export_certificate(c: &Certificate, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(c))?;
    Ok(())
}

pub fn load_certificate(path: impl AsRef<Path>) -> Result<Certificate> {
    parse_certificate(&std::fs::read_to_string(path)?)
}

/// Result of re-checking a certificate from its contents alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub sound: bool,
    pub problems: Vec<String>,
    pub boxes_checked: usize,
    pub intervals_checked: usize,
    /// Largest recomputed upper bound over all residuals.
    #[serde(with = "numfmt::as_string")]
    pub max_upper: f64,
}

/// Recomputes the enclosure of every residual box and interval.
///
/// Each recorded bound must be at least the recomputed one, each residual
/// must meet the region, and a "certified" conclusion requires every
/// recomputed bound to be at most `tau`.
pub fn verify_certificate(c: &Certificate) -> Verification {
    let mut problems = Vec::new();
    let mut max_upper = f64::NEG_INFINITY;
    let r = &c.region;
    let certified = r.conclusion == Conclusion::Certified;
    if !(r.tau > 0.0) {
        problems.push(format!("tau {} is not positive", r.tau));
    }
    for (i, b) in r.residual_boxes.iter().enumerate() {
        if r.region.tighten(&b.bounds).is_none() {
            problems.push(format!("box {i} does not meet the region"));
            continue;
        }
        if b.bounds.width() > r.max_residual_width {
            problems.push(format!("box {i} is wider than max_residual_width"));
        }
        match residual_upper(&b.bounds, c.mean_value) {
            Ok(u) => {
                max_upper = max_upper.max(u);
                if !(u <= b.upper) {
                    problems.push(format!("box {i}: recorded bound {} below recomputed {u}", b.upper));
                }
                if certified && !(u <= r.tau) {
                    problems.push(format!("box {i}: bound {u} exceeds tau {}", r.tau));
                }
            }
            Err(e) => problems.push(format!("box {i}: {e}")),
        }
    }

    let mut intervals_checked = 0;
    for e in &c.edges {
        let (lo, hi) = EdgeProfile { edge: e.edge }
            .range()
            .expect("genuine edges have a range");
        let edge_certified = e.conclusion == Conclusion::Certified;
        for (i, iv) in e.residual_intervals.iter().enumerate() {
            intervals_checked += 1;
            if iv.t.lo() < lo || iv.t.hi() > hi {
                problems.push(format!("edge {} interval {i} leaves [{lo}, {hi}]", e.edge));
                continue;
            }
            match edge_enclosure(e.edge, iv.t) {
                Ok(enc) => {
                    let u = enc.hi();
                    max_upper = max_upper.max(u);
                    if !(u <= iv.upper) {
                        problems.push(format!(
                            "edge {} interval {i}: recorded bound below recomputed {u}",
                            e.edge
                        ));
                    }
                    if edge_certified && !(u <= e.tau) {
                        problems.push(format!("edge {} interval {i}: bound {u} exceeds tau", e.edge));
                    }
                }
                Err(err) => problems.push(format!("edge {} interval {i}: {err}", e.edge)),
            }
        }
    }

    Verification {
        sound: problems.is_empty(),
        problems,
        boxes_checked: r.residual_boxes.len(),
        intervals_checked,
        max_upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Certificate {
        certify(
            &CertifyOptions {
                min_width: 1e-2,
                tau: 1e-1,
                ..Default::default()
            },
            &EdgeOptions {
                min_width: 1e-3,
                tau: 1e-1,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let c = small();
        let back = parse_certificate(&to_json(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_json(&back), to_json(&c));
    }

    #[test]
    fn empty_residuals_serialize_as_empty_array() {
        let opts = CertifyOptions {
            region: Region::new(0.9).unwrap(),
            ..Default::default()
        };
        let c = Certificate {
            region: certify_nonpositive(&opts).unwrap(),
            mean_value: true,
            edges: vec![],
        };
        assert!(to_json(&c).contains("\"residual_boxes\": []"));
        assert!(verify_certificate(&c).sound);
    }

    #[test]
    fn tampered_bound_is_caught() {
        let mut c = small();
        assert!(verify_certificate(&c).sound);
        let b = c
            .region
            .residual_boxes
            .first_mut()
            .expect("coarse run leaves residuals");
        b.upper = -1.0;
        assert!(!verify_certificate(&c).sound);
    }

    #[test]
    fn malformed_documents_are_errors() {
        assert!(parse_certificate("").is_err());
        assert!(parse_certificate("{}").is_err());
        let text = to_json(&small()).replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(parse_certificate(&text).is_err());
    }
}
