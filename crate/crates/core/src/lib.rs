//! Mechanized checks of two triangle inequalities relating sides to altitudes
//! and medians:
//!
//! ```text
//! a h_a + b h_b + c h_c <= sqrt(bc) h_a + sqrt(ac) h_b + sqrt(ab) h_c
//! a m_a + b m_b + c m_c <= sqrt(bc) m_a + sqrt(ac) m_b + sqrt(ab) m_c
//! ```
//!
//! The altitude form reduces to `x^3 + y^3 + z^3 >= 3xyz` ([`reduction`]).
//! The median form reduces, after normalizing by the longest side, to
//! nonpositivity of the two-variable devil-fish function on the region
//! `0 <= y <= x <= 1, x + y >= 1` ([`devilfish`]), which [`certify`] proves
//! with interval branch-and-bound. [`fuzz`] runs seeded randomized checks of
//! every inequality and [`surface`] emits plot-ready grids.

pub mod certify;
pub mod devilfish;
pub mod error;
pub mod fuzz;
pub mod interval;
pub mod numfmt;
pub mod reduction;
pub mod surface;
pub mod triangle;

pub use error::{Error, Result};
pub use triangle::Triangle;
