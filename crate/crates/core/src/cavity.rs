//! Cylindrical cavity with Dirichlet walls: mode frequencies, normalization
//! constants and mode functions of the massless scalar field.
//!
//! A mode is labeled `(m, l, n)`: azimuthal, radial and longitudinal quantum
//! numbers. Its frequency is `ω = sqrt((x_{ml}/ρ)² + (nπ/L)²)` with `x_{ml}`
//! the `l`-th zero of `J_m`, and the delta-normalized mode function is
//!
//! ```text
//! u_{mln}(r,φ,z,t) = A e^{imφ} e^{-iωt} sin(nπz/L) J_m(x_{ml} r / ρ),
//! A = 1 / (ρ sqrt(Lπω) J_{m+1}(x_{ml})).
//! ```
//!
//! Everything in this module is pure and safe for concurrent use.

use crate::numeric::gauss_legendre;
use crate::specfun::{bessel_j, bessel_zero};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Cavity dimensions. All library output is nondimensionalized by the
/// length, so `unit(rho_over_l)` is the usual entry point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    length: f64,
    radius: f64,
}

impl CavityGeometry {
    pub fn new(length: f64, radius: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGeometry {
                reason: format!("cavity length must be positive and finite, got {length}"),
            });
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidGeometry {
                reason: format!("cavity radius must be positive and finite, got {radius}"),
            });
        }
        Ok(CavityGeometry { length, radius })
    }

    /// Cavity with `L = 1` and the given aspect ratio `ρ/L`.
    pub fn unit(rho_over_l: f64) -> Result<Self> {
        CavityGeometry::new(1.0, rho_over_l)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn radius_ratio(&self) -> f64 {
        self.radius / self.length
    }
}

/// Quantum numbers `(m, l, n)` of one cavity mode; `l, n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub m: u32,
    pub l: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn new(m: u32, l: u32, n: u32) -> Result<Self> {
        if l == 0 || n == 0 {
            return Err(Error::InvalidModeIndex {
                reason: format!("mode index requires l >= 1 and n >= 1, got (m={m}, l={l}, n={n})"),
            });
        }
        Ok(ModeIndex { m, l, n })
    }

    /// Longitudinal modes on the axis all have `m = 0`.
    pub fn axial(l: u32, n: u32) -> Result<Self> {
        ModeIndex::new(0, l, n)
    }
}

/// Frequency and normalization of one mode, precomputed.
#[derive(Debug, Clone, Copy)]
pub struct ModeData {
    pub index: ModeIndex,
    /// ω in units of 1/L.
    pub omega: f64,
    /// Magnitude of the delta-normalization constant (units L^{-3/2}).
    pub norm_a: f64,
}

impl ModeData {
    pub fn compute(geom: &CavityGeometry, index: ModeIndex) -> Result<Self> {
        let omega = mode_frequency(geom, index)?;
        let norm_a = normalization(geom, index)?;
        Ok(ModeData {
            index,
            omega,
            norm_a,
        })
    }

    /// Energy of `number` quanta in this mode.
    pub fn energy(&self, number: f64) -> f64 {
        self.omega * number
    }
}

/// `ω = sqrt((x_{ml}/ρ)² + (nπ/L)²)`.
pub fn mode_frequency(geom: &CavityGeometry, idx: ModeIndex) -> Result<f64> {
    let x = bessel_zero(idx.m, idx.l)?;
    let radial = x / geom.radius;
    let axial = idx.n as f64 * PI / geom.length;
    Ok(radial.hypot(axial))
}

/// Magnitude of the normalization constant
/// `A = 1/(ρ sqrt(Lπω) |J_{m+1}(x_{ml})|)`.
///
/// The sign of `1/J_{m+1}(x_{ml})` is a mode-function gauge; it is carried by
/// [`mode_function`], not by this constant.
pub fn normalization(geom: &CavityGeometry, idx: ModeIndex) -> Result<f64> {
    let x = bessel_zero(idx.m, idx.l)?;
    let omega = mode_frequency(geom, idx)?;
    let j = bessel_j(idx.m + 1, x);
    Ok(1.0 / (geom.radius * (geom.length * PI * omega).sqrt() * j.abs()))
}

/// Signed normalization entering the mode function itself.
fn signed_normalization(geom: &CavityGeometry, idx: ModeIndex) -> Result<f64> {
    let x = bessel_zero(idx.m, idx.l)?;
    let omega = mode_frequency(geom, idx)?;
    let j = bessel_j(idx.m + 1, x);
    Ok(1.0 / (geom.radius * (geom.length * PI * omega).sqrt() * j))
}

/// Mode function `u_{mln}(r, φ, z, t)` inside the cavity.
pub fn mode_function(
    geom: &CavityGeometry,
    idx: ModeIndex,
    r: f64,
    phi: f64,
    z: f64,
    t: f64,
) -> Result<Complex64> {
    if !(0.0..=geom.radius).contains(&r) || !(0.0..=geom.length).contains(&z) {
        return Err(Error::OutsideCavity {
            r,
            z,
            radius: geom.radius,
            length: geom.length,
        });
    }
    let x = bessel_zero(idx.m, idx.l)?;
    let omega = mode_frequency(geom, idx)?;
    let a = signed_normalization(geom, idx)?;
    let angular = Complex64::from_polar(1.0, idx.m as f64 * phi - omega * t);
    let axial = (idx.n as f64 * PI / geom.length * z).sin();
    let radial = bessel_j(idx.m, x / geom.radius * r);
    Ok(a * angular * axial * radial)
}

/// Klein–Gordon inner product `(u_a, u_b)` evaluated numerically on the
/// `t = 0` slice:
///
/// ```text
/// (u_a, u_b) = i ∫ dV ( u_a* ∂_t u_b − u_b ∂_t u_a* )
/// ```
///
/// with Gauss–Legendre quadrature in `r` and `z` and a trapezoidal rule in
/// `φ`; delta-normalization makes the result `δ_{ab}`. The computation is
/// repeated at doubled resolution and an inconsistency beyond `tol` is an
/// error rather than a silently wrong number.
pub fn kg_inner_product(
    geom: &CavityGeometry,
    idx_a: ModeIndex,
    idx_b: ModeIndex,
    resolution: usize,
    tol: f64,
) -> Result<Complex64> {
    let coarse = kg_inner_product_raw(geom, idx_a, idx_b, resolution)?;
    let fine = kg_inner_product_raw(geom, idx_a, idx_b, 2 * resolution)?;
    let delta = (fine - coarse).norm();
    if delta > tol {
        return Err(Error::ResolutionTooLow {
            resolution,
            delta,
            tol,
        });
    }
    Ok(fine)
}

fn kg_inner_product_raw(
    geom: &CavityGeometry,
    idx_a: ModeIndex,
    idx_b: ModeIndex,
    resolution: usize,
) -> Result<Complex64> {
    let n_r = resolution.max(8);
    let n_z = resolution.max(8);
    let n_phi = (4 * (idx_a.m + idx_b.m) as usize + 8).max(16);

    let xa = bessel_zero(idx_a.m, idx_a.l)?;
    let xb = bessel_zero(idx_b.m, idx_b.l)?;
    let wa = mode_frequency(geom, idx_a)?;
    let wb = mode_frequency(geom, idx_b)?;
    let aa = signed_normalization(geom, idx_a)?;
    let ab = signed_normalization(geom, idx_b)?;

    // φ integral: trapezoid on the periodic factor e^{i(m_b - m_a)φ}
    let dm = idx_b.m as i64 - idx_a.m as i64;
    let mut phi_int = Complex64::new(0.0, 0.0);
    for k in 0..n_phi {
        let phi = 2.0 * PI * k as f64 / n_phi as f64;
        phi_int += Complex64::from_polar(1.0, dm as f64 * phi);
    }
    phi_int *= 2.0 * PI / n_phi as f64;

    // z integral of sin(n_a π z / L) sin(n_b π z / L)
    let rule = gauss_legendre_sized(n_z);
    let mut z_int = 0.0;
    for (&x, &w) in rule.0.iter().zip(rule.1.iter()) {
        let z = 0.5 * geom.length * (x + 1.0);
        z_int += w
            * (idx_a.n as f64 * PI / geom.length * z).sin()
            * (idx_b.n as f64 * PI / geom.length * z).sin();
    }
    z_int *= 0.5 * geom.length;

    // r integral of J_{m_a}(x_a r/ρ) J_{m_b}(x_b r/ρ) r dr
    let rule = gauss_legendre_sized(n_r);
    let mut r_int = 0.0;
    for (&x, &w) in rule.0.iter().zip(rule.1.iter()) {
        let r = 0.5 * geom.radius * (x + 1.0);
        r_int += w
            * bessel_j(idx_a.m, xa / geom.radius * r)
            * bessel_j(idx_b.m, xb / geom.radius * r)
            * r;
    }
    r_int *= 0.5 * geom.radius;

    // i (u_a* ∂_t u_b − u_b ∂_t u_a*) = (ω_a + ω_b) u_a* u_b at t = 0
    Ok((wa + wb) * aa * ab * phi_int * z_int * r_int)
}

/// Gauss–Legendre of arbitrary size (the cached table only covers the small
/// fixed orders the oscillatory engine uses).
fn gauss_legendre_sized(n: usize) -> (Vec<f64>, Vec<f64>) {
    if [8usize, 16, 24, 32, 48, 64].contains(&n) {
        let g = gauss_legendre(n);
        (g.nodes.clone(), g.weights.clone())
    } else {
        let g = crate::numeric::GaussLegendre::new(n);
        (g.nodes, g.weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom_half() -> CavityGeometry {
        CavityGeometry::unit(0.5).unwrap()
    }

    #[test]
    fn frequency_of_fundamental_matches_gap_anchor() {
        // ωL for (0,1,1) at ρ/L = 1/2 sits next to the 5.75 detector gap
        let w = mode_frequency(&geom_half(), ModeIndex::axial(1, 1).unwrap()).unwrap();
        assert!((w - 5.745).abs() < 0.01, "omega = {w}");
    }

    #[test]
    fn frequency_of_033_is_near_20() {
        let w = mode_frequency(&geom_half(), ModeIndex::axial(3, 3).unwrap()).unwrap();
        assert!((w - 19.7).abs() < 0.05, "omega = {w}");
    }

    #[test]
    fn frequency_tends_to_axial_value_for_wide_cavity() {
        let geom = CavityGeometry::new(1.0, 1e9).unwrap();
        for n in 1..=3u32 {
            let w = mode_frequency(&geom, ModeIndex::axial(1, n).unwrap()).unwrap();
            assert!((w - n as f64 * PI).abs() < 1e-6);
        }
    }

    #[test]
    fn frequency_increases_in_l_and_n() {
        let geom = geom_half();
        for l in 1..6 {
            for n in 1..6 {
                let w = mode_frequency(&geom, ModeIndex::axial(l, n).unwrap()).unwrap();
                let wl = mode_frequency(&geom, ModeIndex::axial(l + 1, n).unwrap()).unwrap();
                let wn = mode_frequency(&geom, ModeIndex::axial(l, n + 1).unwrap()).unwrap();
                assert!(wl > w && wn > w);
            }
        }
    }

    #[test]
    fn fibre_limit_of_frequency() {
        // ρ/L → 0 at fixed (l, n): ω ρ → x_{0l}
        for l in 1..4u32 {
            let x = bessel_zero(0, l).unwrap();
            for &rho in &[1e-3, 1e-5] {
                let geom = CavityGeometry::unit(rho).unwrap();
                let w = mode_frequency(&geom, ModeIndex::axial(l, 1).unwrap()).unwrap();
                assert!((w * rho - x).abs() / x < 1e-5);
            }
        }
    }

    #[test]
    fn normalization_identity() {
        // A² π L ρ² ω J_{m+1}(x_{ml})² = 1
        let geom = CavityGeometry::new(2.3, 0.7).unwrap();
        for (m, l, n) in [(0u32, 1u32, 1u32), (0, 2, 3), (1, 1, 2), (2, 4, 5)] {
            let idx = ModeIndex::new(m, l, n).unwrap();
            let a = normalization(&geom, idx).unwrap();
            let x = bessel_zero(m, l).unwrap();
            let w = mode_frequency(&geom, idx).unwrap();
            let j = bessel_j(m + 1, x);
            let ident = a * a * PI * geom.length() * geom.radius().powi(2) * w * j * j;
            assert!((ident - 1.0).abs() < 1e-12, "identity = {ident}");
        }
    }

    #[test]
    fn normalization_direct_value() {
        // A(0,1,1) at L=1, ρ=1/2 evaluated straight from its definition
        let idx = ModeIndex::axial(1, 1).unwrap();
        let a = normalization(&geom_half(), idx).unwrap();
        let x01 = bessel_zero(0, 1).unwrap();
        let w = mode_frequency(&geom_half(), idx).unwrap();
        let expect = 1.0 / (0.5 * (PI * w).sqrt() * bessel_j(1, x01));
        assert!((a - expect.abs()).abs() < 1e-13);
    }

    #[test]
    fn normalization_scaling_dimension() {
        // the defining identity A² π L ρ² ω J² = 1 with ω → ω/κ under
        // (L, ρ) → (κL, κρ) forces A → A/κ
        let idx = ModeIndex::new(1, 2, 3).unwrap();
        let base = normalization(&CavityGeometry::new(1.0, 0.5).unwrap(), idx).unwrap();
        let kappa = 3.7;
        let scaled = normalization(&CavityGeometry::new(kappa, kappa * 0.5).unwrap(), idx).unwrap();
        assert!((scaled - base / kappa).abs() < 1e-12 * base);
    }

    #[test]
    fn mode_data_invariants() {
        let geom = CavityGeometry::new(1.3, 0.4).unwrap();
        for (m, l, n) in [(0u32, 1u32, 1u32), (1, 2, 3), (2, 3, 2)] {
            let idx = ModeIndex::new(m, l, n).unwrap();
            let data = ModeData::compute(&geom, idx).unwrap();
            let x = bessel_zero(m, l).unwrap();
            assert!(data.omega >= n as f64 * PI / geom.length());
            assert!(data.omega >= x / geom.radius());
            assert!(data.norm_a > 0.0);
            assert_eq!(data.energy(2.0), 2.0 * data.omega);
        }
        assert!(ModeIndex::new(0, 0, 1).is_err());
        assert!(ModeIndex::new(0, 1, 0).is_err());
    }

    #[test]
    fn mode_function_dirichlet_boundaries() {
        let geom = geom_half();
        let idx = ModeIndex::new(0, 2, 3).unwrap();
        for &(r, z) in &[(0.1, 0.0), (0.1, 1.0), (0.5, 0.3)] {
            let u = mode_function(&geom, idx, r, 0.4, z, 0.2).unwrap();
            assert!(u.norm() < 1e-12, "u({r},{z}) = {u}");
        }
    }

    #[test]
    fn mode_function_m_nonzero_vanishes_on_axis() {
        let u = mode_function(
            &geom_half(),
            ModeIndex::new(1, 1, 1).unwrap(),
            0.0,
            0.0,
            0.5,
            0.1,
        )
        .unwrap();
        assert_eq!(u.norm(), 0.0);
    }

    #[test]
    fn mode_function_magnitude_time_independent() {
        let geom = geom_half();
        let idx = ModeIndex::new(1, 2, 2).unwrap();
        let m0 = mode_function(&geom, idx, 0.2, 1.0, 0.4, 0.0)
            .unwrap()
            .norm();
        for &t in &[0.3, 1.7, 12.0] {
            let m = mode_function(&geom, idx, 0.2, 1.0, 0.4, t).unwrap().norm();
            assert!((m - m0).abs() < 1e-13 * m0);
        }
    }

    #[test]
    fn mode_function_rejects_outside_positions() {
        let geom = geom_half();
        let idx = ModeIndex::axial(1, 1).unwrap();
        assert!(mode_function(&geom, idx, 0.6, 0.0, 0.5, 0.0).is_err());
        assert!(mode_function(&geom, idx, 0.2, 0.0, 1.5, 0.0).is_err());
    }

    #[test]
    fn kg_inner_product_normalization_and_orthogonality() {
        let geom = geom_half();
        let a = ModeIndex::axial(1, 1).unwrap();
        let same = kg_inner_product(&geom, a, a, 64, 1e-8).unwrap();
        assert!(
            (same - Complex64::new(1.0, 0.0)).norm() < 1e-6,
            "norm = {same}"
        );

        let b = ModeIndex::axial(2, 1).unwrap();
        let ortho_l = kg_inner_product(&geom, a, b, 64, 1e-8).unwrap();
        assert!(ortho_l.norm() < 1e-6, "l-orthogonality = {ortho_l}");

        let c = ModeIndex::new(1, 1, 1).unwrap();
        let ortho_m = kg_inner_product(&geom, a, c, 64, 1e-8).unwrap();
        assert!(ortho_m.norm() < 1e-6, "m-orthogonality = {ortho_m}");
    }

    #[test]
    fn kg_inner_product_reports_low_resolution() {
        let geom = geom_half();
        // n = 9 longitudinal oscillations cannot be captured by 8 z-nodes
        let hf = ModeIndex::axial(1, 9).unwrap();
        assert!(matches!(
            kg_inner_product(&geom, hf, hf, 8, 1e-10),
            Err(Error::ResolutionTooLow { .. })
        ));
    }
}
