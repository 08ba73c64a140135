//! Special functions underpinning the cavity formulas: Bessel functions of
//! the first kind with their positive zeros, and the error function of
//! complex argument (via the Faddeeva function).

mod bessel;
mod faddeeva;

pub use bessel::{bessel_j, bessel_j_prime, bessel_zero, BesselZeroTable};
pub use faddeeva::{erf_complex, faddeeva_w, ERF_DOMAIN_LIMIT};
