//! Rigorous interval branch-and-bound showing the devil-fish function is
//! nonpositive on the ratio region.
//!
//! The supremum is exactly 0, attained at the corner `(1, 1)` (an equilateral
//! triangle) and at the degenerate corner `(1, 0)`. Enclosures cannot prove
//! `F <= 0` on a box containing a zero of `F`, so the contract is:
//!
//! * every residual box has a proven bound `F <= tau`, and
//! * every other box of the region has a proven bound `F <= 0`.
//!
//! Boxes resting on `y = 0` are closed by a monotonicity argument that ends
//! at `(1, 0)`, where `F` vanishes identically; residuals therefore collect
//! only around `(1, 1)`, where `F(1, 1) = 0` also holds identically.

mod bnb;
mod certificate;
mod edges;
mod enclosure;

pub use bnb::{
    certify_nonpositive, residual_upper, CertifyOptions, Conclusion, PruneStats, Region, RegionCertificate, ResidualBox,
};
pub use certificate::{
    certify, export_certificate, load_certificate, parse_certificate, to_json, verify_certificate, Certificate,
    Verification, CERTIFICATE_VERSION,
};
pub use edges::{
    certify_edge, certify_edges, edge_box, edge_derivative_enclosure, edge_enclosure, EdgeCertificate, EdgeOptions,
    ResidualInterval,
};
pub use enclosure::{
    enclose, gradient_enclosure, mean_value_enclosure, monotone_corner_closure, natural_enclosure, point_enclosure,
    EXACT_ZEROS,
};

/// Interval extension of the devil-fish function used by the search: the
/// natural extension intersected with the mean-value form.
pub fn interval_f(b: &crate::interval::Box2) -> crate::Result<crate::interval::Interval> {
    enclose(b)
}
