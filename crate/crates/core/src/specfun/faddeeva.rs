//! Error function of complex argument, built on the Faddeeva function
//! `w(z) = exp(-z^2) erfc(-iz)`.
//!
//! Region split for `w` on the closed upper half-plane:
//! * `|z| < 8`: Weideman's rational approximation (N = 64, coefficients
//!   precomputed to double precision),
//! * `|z| >= 8`: Laplace continued fraction with depth chosen from `|z|`.
//!
//! `erf` itself uses the Maclaurin series for `|z| <= 1` and otherwise the
//! reduction `erf(z) = 1 - exp(-z^2) w(iz)` after mapping `z` into the first
//! quadrant by oddness and conjugation symmetry. The construction keeps every
//! intermediate bounded on the diagonal rays `arg z = ±π/4, ±3π/4`, where the
//! closed-form crossing amplitudes evaluate it with imaginary parts that grow
//! with the mode numbers.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Documented domain half-width for [`erf_complex`]. Accuracy is validated
/// on `|Re z|, |Im z| <= 1e3` and holds wherever the result is representable;
/// the enforcement box is wider because the closed-form crossing amplitudes
/// evaluate erf on diagonal rays (where it stays bounded) with components
/// growing like `(ω+Ω)sqrt(L/(an))`.
pub const ERF_DOMAIN_LIMIT: f64 = 5e4;

const ONE_OVER_SQRT_PI: f64 = 0.5641895835477563;

/// Weideman rational approximation, `p(Z) = sum_k A[k] Z^k` with
/// `Z = (L + iz)/(L - iz)`; valid on the upper half-plane.
const WEIDEMAN_L: f64 = 6.727171322029716;
const WEIDEMAN_A: [f64; 42] = [
    3.7141697931977022,
    3.480496103985042,
    3.1224481894020366,
    2.680732639559084,
    2.20125657128641,
    1.727506085787117,
    1.294437751717516,
    0.9249760252638086,
    0.6293868343374367,
    0.4070443030398735,
    0.24963969994535562,
    0.14477859973586413,
    0.0791165506760257,
    0.04055284652958008,
    0.019380399024538263,
    0.008565381413175907,
    0.0034602079481075333,
    0.0012549788049981303,
    0.0003962745103980934,
    0.00010227006798914739,
    1.7901801586069494e-5,
    -7.564244114006555e-8,
    -1.554772278284668e-6,
    -6.650424120290089e-7,
    -1.361026123703508e-7,
    7.435710901039703e-9,
    1.5926813974737932e-8,
    5.186955758228821e-9,
    2.4434796065217287e-10,
    -4.5339138480823207e-10,
    -1.7560602473733885e-10,
    -6.470633436423956e-12,
    1.7501411697665753e-11,
    5.8326306509782436e-12,
    -3.9390109339467e-13,
    -7.920773182343549e-13,
    -1.5497006588478766e-13,
    5.911638969536339e-14,
    3.288807271621852e-14,
    -2.6578462531507983e-16,
    -4.417626009263682e-15,
    -8.855116948707824e-16,
];

/// Faddeeva function `w(z)`.
///
/// Relative accuracy ~1e-13 on the upper half-plane. For `Im z < 0` the
/// reflection `w(z) = 2 exp(-z^2) - w(-z)` is applied; there `w` grows like
/// `exp(|Im z|^2)` and may overflow to infinity.
pub fn faddeeva_w(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        w_upper(z)
    } else {
        let mz2 = -(z * z);
        2.0 * mz2.exp() - w_upper(-z)
    }
}

fn w_upper(z: Complex64) -> Complex64 {
    debug_assert!(z.im >= 0.0);
    let r2 = z.norm_sqr();
    if r2 >= 64.0 {
        w_continued_fraction(z, r2.sqrt())
    } else {
        w_weideman(z)
    }
}

fn w_weideman(z: Complex64) -> Complex64 {
    let l = Complex64::new(WEIDEMAN_L, 0.0);
    let iz = Complex64::new(-z.im, z.re);
    let denom = l - iz;
    let big_z = (l + iz) / denom;
    let mut p = Complex64::new(*WEIDEMAN_A.last().unwrap(), 0.0);
    for &c in WEIDEMAN_A.iter().rev().skip(1) {
        p = p * big_z + c;
    }
    2.0 * p / (denom * denom) + ONE_OVER_SQRT_PI / denom
}

fn w_continued_fraction(z: Complex64, r: f64) -> Complex64 {
    let depth = (6.0 + 110.0 / (r - 4.0)).ceil().max(6.0) as usize;
    let mut frac = Complex64::new(0.0, 0.0);
    for k in (1..=depth).rev() {
        frac = (0.5 * k as f64) / (z - frac);
    }
    Complex64::new(0.0, ONE_OVER_SQRT_PI) / (z - frac)
}

/// Error function of complex argument.
///
/// Accurate to ~1e-12 relative wherever the result is representable; on the
/// region `Im(z)^2 - Re(z)^2 > ~709` the true value exceeds the f64 range and
/// the result saturates to infinities with the correct phase quadrant.
/// Arguments outside `|Re z|, |Im z| <= 1e3` are rejected.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite()
        || !z.im.is_finite()
        || z.re.abs() > ERF_DOMAIN_LIMIT
        || z.im.abs() > ERF_DOMAIN_LIMIT
    {
        return Err(Error::ErfDomain {
            re: z.re,
            im: z.im,
            limit: ERF_DOMAIN_LIMIT,
        });
    }
    // map into the first quadrant: erf(-z) = -erf(z), erf(z*) = erf(z)*
    let negate = z.re < 0.0 || (z.re == 0.0 && z.im < 0.0);
    let zq = if negate { -z } else { z };
    let conjugate = zq.im < 0.0;
    let zq = if conjugate { zq.conj() } else { zq };

    let val = if zq.norm_sqr() <= 1.0 {
        erf_maclaurin(zq)
    } else {
        erf_via_w(zq)
    };
    let val = if conjugate { val.conj() } else { val };
    Ok(if negate { -val } else { val })
}

fn erf_maclaurin(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..60u32 {
        sum += term / (2.0 * k as f64 + 1.0);
        term *= -z2 / (k as f64 + 1.0);
        if term.norm_sqr() < 1e-34 * sum.norm_sqr().max(1e-60) {
            break;
        }
    }
    2.0 * ONE_OVER_SQRT_PI * sum
}

/// First-quadrant evaluation through the Faddeeva function.
fn erf_via_w(z: Complex64) -> Complex64 {
    debug_assert!(z.re >= 0.0 && z.im >= 0.0);
    let iz = Complex64::new(-z.im, z.re); // upper half-plane
    let w = w_upper(iz);
    let re_exp = z.im * z.im - z.re * z.re;
    if re_exp > 700.0 {
        // |erf| beyond ~1e304: assemble in polar form so the overflow keeps
        // its phase instead of producing inf - 1 artifacts
        let mag = re_exp.exp() * w.norm(); // may be inf
        let angle = -2.0 * z.re * z.im + w.arg() + PI;
        return Complex64::from_polar(mag, angle) + 1.0;
    }
    let phase = -2.0 * z.re * z.im;
    let expz2 = re_exp.exp() * Complex64::new(phase.cos(), phase.sin());
    1.0 - expz2 * w
}
