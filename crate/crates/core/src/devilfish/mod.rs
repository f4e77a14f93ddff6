//! The devil-fish function on the normalized ratio region, its derivatives,
//! stationary points and edge profiles.

mod boundary;
mod critical;
mod function;

pub use boundary::{boundary_profiles, Edge, EdgeProfile};
pub use critical::{
    find_critical_points, newton, seed_grid, CriticalPointReport, CriticalSearch, CriticalSearchResult, NewtonRoot,
    SeedFailure,
};
pub use function::{
    devil_fish, domain_slack, domain_violation, gradient, hessian, in_domain, radicands, scaling_identity_gap,
    scaling_identity_tolerance, Classification, DomainPoint, Hessian, GRADIENT_FLOOR, HESSIAN_STEP, RADICAND_CLAMP,
};
