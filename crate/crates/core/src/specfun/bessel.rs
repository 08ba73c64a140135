//! Bessel functions of the first kind `J_m` and their positive zeros `x_{m,l}`.
//!
//! Evaluation strategy:
//! * `x >= 30` and `m <= x/2`: Hankel asymptotic expansion for `J_0`, `J_1`,
//!   then stable upward recurrence in the order.
//! * otherwise: Miller's downward recurrence normalized by
//!   `J_0 + 2 J_2 + 2 J_4 + ... = 1`.
//!
//! Zeros come from the McMahon expansion polished by Newton iteration; orders
//! `m >= 2` are bracketed through the interlacing property
//! `x_{m,l} < x_{m+1,l} < x_{m,l+1}` so the Newton step can never escape to a
//! neighboring zero. Computed zeros are cached process-wide.

use crate::{Error, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

/// `J_m(x)` for nonnegative integer order.
///
/// Relative accuracy is ~1e-13 away from zeros of `J_m` (absolute near them)
/// for `|x| <= 1e4`. Non-finite input yields NaN.
pub fn bessel_j(m: u32, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let ax = x.abs();
    // J_m(-x) = (-1)^m J_m(x)
    let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    let val = if ax >= 30.0 && (m as f64) <= 0.5 * ax {
        let j0 = hankel_j(0, ax);
        if m == 0 {
            j0
        } else {
            let j1 = hankel_j(1, ax);
            if m == 1 {
                j1
            } else {
                // upward recurrence, stable for m << x
                let mut prev = j0;
                let mut cur = j1;
                for k in 1..m {
                    let next = (2.0 * k as f64 / ax) * cur - prev;
                    prev = cur;
                    cur = next;
                }
                cur
            }
        }
    } else {
        miller_j(m, ax)
    };
    sign * val
}

/// Derivative `J_m'(x)`.
pub fn bessel_j_prime(m: u32, x: f64) -> f64 {
    if m == 0 {
        -bessel_j(1, x)
    } else {
        0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x))
    }
}

/// Hankel asymptotic expansion, orders 0 and 1 only, `x >= 30`.
fn hankel_j(m: u32, x: f64) -> f64 {
    debug_assert!(m <= 1 && x >= 30.0);
    let mu = 4.0 * (m as f64) * (m as f64);
    let chi = x - (2.0 * m as f64 + 1.0) * PI / 4.0;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0; // c_k = prod (mu - (2i-1)^2) / (k 8 x)
    let mut k = 0usize;
    loop {
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        k += 1;
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() < 1e-18 || k > 24 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Miller's algorithm: downward recurrence with sum normalization.
fn miller_j(m: u32, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let big = x.max(m as f64);
    let mut start = (big + 28.0 + 3.0 * big.sqrt()).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let mut jp = 0.0_f64; // J_{k+1}
    let mut jc = 1e-300_f64; // J_k (arbitrary scale)
    let mut norm = 0.0_f64;
    let mut out = if m >= start { jc } else { 0.0 };
    let mut k = start;
    while k > 0 {
        let jm = (2.0 * k as f64 / x) * jc - jp; // J_{k-1}
        jp = jc;
        jc = jm;
        k -= 1;
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * jc;
        }
        if k == m {
            out = jc;
        }
        if jc.abs() > 1e250 {
            let s = 1e-250;
            jc *= s;
            jp *= s;
            norm *= s;
            out *= s;
        }
    }
    norm += jc; // J_0 term
    out / norm
}

/// Cache of positive zeros `x_{m,l}` of `J_m`, filled on demand.
///
/// Invariants (exercised in tests): strict growth in `l`, interlacing in `m`,
/// and `|J_m(x_{m,l})| < 1e-12`.
#[derive(Debug, Default)]
pub struct BesselZeroTable {
    entries: RwLock<HashMap<(u32, u32), f64>>,
}

impl BesselZeroTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `l`-th positive zero of `J_m` (`l >= 1`).
    pub fn get(&self, m: u32, l: u32) -> Result<f64> {
        if l == 0 {
            return Err(Error::InvalidModeIndex {
                reason: format!("bessel zero index l must be >= 1, got 0 (order m={m})"),
            });
        }
        if let Some(&z) = self.entries.read().unwrap().get(&(m, l)) {
            return Ok(z);
        }
        let z = self.compute(m, l)?;
        self.entries.write().unwrap().insert((m, l), z);
        Ok(z)
    }

    fn compute(&self, m: u32, l: u32) -> Result<f64> {
        if m <= 1 {
            Ok(newton_zero(m, mcmahon_guess(m, l), None))
        } else {
            // interlacing bracket: x_{m-1,l} < x_{m,l} < x_{m-1,l+1}
            let lo = self.get(m - 1, l)?;
            let hi = self.get(m - 1, l + 1)?;
            Ok(newton_zero(m, bisect_guess(m, lo, hi), Some((lo, hi))))
        }
    }
}

fn global_table() -> &'static BesselZeroTable {
    static TABLE: std::sync::OnceLock<BesselZeroTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(BesselZeroTable::new)
}

/// `l`-th positive zero of `J_m`, served from a process-wide cache.
pub fn bessel_zero(m: u32, l: u32) -> Result<f64> {
    global_table().get(m, l)
}

/// McMahon's asymptotic expansion for `x_{m,l}`.
fn mcmahon_guess(m: u32, l: u32) -> f64 {
    let mu = 4.0 * (m as f64) * (m as f64);
    let beta = (l as f64 + 0.5 * m as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    let mut x = beta - (mu - 1.0) / b8;
    x -= 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3));
    x -= 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5));
    x -=
        64.0 * (mu - 1.0) * (6949.0 * mu.powi(3) - 153855.0 * mu * mu + 1585743.0 * mu - 6277237.0)
            / (105.0 * b8.powi(7));
    x
}

/// A few bisection steps to seed Newton safely inside an interlacing bracket.
fn bisect_guess(m: u32, mut lo: f64, mut hi: f64) -> f64 {
    let flo = bessel_j(m, lo);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        if bessel_j(m, mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn newton_zero(m: u32, guess: f64, bracket: Option<(f64, f64)>) -> f64 {
    let mut x = guess;
    for _ in 0..50 {
        let f = bessel_j(m, x);
        let df = bessel_j_prime(m, x);
        let mut step = f / df;
        if let Some((lo, hi)) = bracket {
            // clamp Newton inside the interlacing bracket
            if x - step <= lo || x - step >= hi {
                step = x - 0.5 * (lo + hi);
            }
        }
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: alternating power series
    /// `J_m(x) = sum_k (-1)^k (x/2)^(m+2k) / (k! (m+k)!)`, trustworthy for
    /// `x <= 12` where cancellation stays below ~5 digits.
    fn series_j(m: u32, x: f64) -> f64 {
        let half = 0.5 * x;
        let mut term = 1.0;
        for k in 1..=m as u64 {
            term *= half / k as f64;
        }
        let mut sum = term;
        let x2 = half * half;
        for k in 1..200u64 {
            term *= -x2 / (k as f64 * (k + m as u64) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        sum
    }

    /// Bisection on the series oracle, used to derive expected zeros.
    fn oracle_zero(m: u32, mut lo: f64, mut hi: f64) -> f64 {
        assert!(series_j(m, lo) * series_j(m, hi) < 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if series_j(m, lo) * series_j(m, mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn j_at_zero_argument() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn j0_vanishes_at_first_root() {
        assert!(bessel_j(0, 2.404826).abs() < 1e-6);
    }

    #[test]
    fn matches_series_oracle_small_x() {
        // the alternating series is itself good to ~1e-13 only for x <= 8
        for m in 0..6u32 {
            for &x in &[0.05, 0.3, 1.0, 2.5, 4.0, 6.3, 7.7] {
                let got = bessel_j(m, x);
                let want = series_j(m, x);
                let tol = 1e-12 * want.abs().max(1e-10);
                assert!(
                    (got - want).abs() < tol,
                    "J_{m}({x}): got {got:e}, series {want:e}"
                );
            }
        }
    }

    // 30-digit reference values
    const J_REFERENCE: [(u32, f64, f64); 16] = [
        (0, 30.0, -0.086367983581040211),
        (1, 30.0, -0.11875106261662294),
        (2, 30.0, 0.078451246073265349),
        (0, 30.5, -0.019389754517762152),
        (0, 45.0, 0.11581867067325632),
        (0, 100.0, 0.019985850304223122),
        (0, 784.6, -0.00036814527520987968),
        (0, 9999.5, -0.004478727403128425),
        (1, 9999.5, 0.0066032722001328391),
        (0, 11.5, -0.067653948111665228),
        (1, 11.5, -0.22837862066532347),
        (5, 11.5, -0.17111265188686219),
        (0, 2.5, -0.048383776468197996),
        (2, 7.7, -0.18746492781384411),
        (5, 30.5, -0.13994926793930187),
        (2, 100.0, -0.021528757344505366),
    ];

    #[test]
    fn matches_reference_values() {
        for &(m, x, want) in &J_REFERENCE {
            let got = bessel_j(m, x);
            // near a zero of J the achievable accuracy is absolute, set by
            // the oscillation envelope sqrt(2/πx)
            let envelope = (2.0 / (std::f64::consts::PI * x)).sqrt();
            let tol = 5e-13 * want.abs().max(envelope);
            assert!(
                (got - want).abs() < tol,
                "J_{m}({x}): got {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn hankel_and_miller_agree_at_switchover() {
        // the switchover point is validated by comparing both branches
        for m in 0..3u32 {
            for &x in &[30.0, 30.5, 45.0, 100.0, 784.6, 9999.5] {
                let h = {
                    let j0 = hankel_j(0, x);
                    let j1 = hankel_j(1, x);
                    match m {
                        0 => j0,
                        1 => j1,
                        _ => (2.0 / x) * j1 - j0,
                    }
                };
                let mi = miller_j(m, x);
                let scale = h.abs().max(0.01);
                assert!(
                    ((h - mi) / scale).abs() < 5e-12,
                    "switchover mismatch J_{m}({x}): hankel {h:e} vs miller {mi:e}"
                );
            }
        }
    }

    #[test]
    fn negative_argument_parity() {
        assert!((bessel_j(2, -3.7) - bessel_j(2, 3.7)).abs() < 1e-15);
        assert!((bessel_j(3, -3.7) + bessel_j(3, 3.7)).abs() < 1e-15);
    }

    #[test]
    fn zeros_match_bisection_oracle() {
        // expected values derived from the series-oracle bisection
        let x01 = oracle_zero(0, 2.0, 3.0);
        let x03 = oracle_zero(0, 8.0, 9.0);
        let x11 = oracle_zero(1, 3.0, 4.5);
        assert!((x01 - 2.404826).abs() < 1e-6);
        assert!((x03 - 8.653728).abs() < 1e-6);
        assert!((x11 - 3.831706).abs() < 1e-6);
        assert!((bessel_zero(0, 1).unwrap() - x01).abs() < 1e-10);
        assert!((bessel_zero(0, 3).unwrap() - x03).abs() < 1e-10);
        assert!((bessel_zero(1, 1).unwrap() - x11).abs() < 1e-10);
    }

    #[test]
    fn first_zero_bracket() {
        let z = bessel_zero(0, 1).unwrap();
        assert!(z > 2.40 && z < 2.41);
    }

    #[test]
    fn zero_residuals_below_1e12() {
        for m in 0..4u32 {
            for l in [1u32, 2, 5, 20, 100] {
                let z = bessel_zero(m, l).unwrap();
                assert!(
                    bessel_j(m, z).abs() < 1e-12,
                    "J_{m}(x_{{{m},{l}}}) = {:e}",
                    bessel_j(m, z)
                );
            }
        }
    }

    #[test]
    fn zeros_increase_and_interlace() {
        for m in 0..4u32 {
            for l in 1..40u32 {
                let a = bessel_zero(m, l).unwrap();
                let b = bessel_zero(m, l + 1).unwrap();
                let c = bessel_zero(m + 1, l).unwrap();
                assert!(a < c && c < b, "interlacing failed at m={m} l={l}");
            }
        }
    }

    #[test]
    fn large_l_zero_close_to_mcmahon() {
        // l = 4000 is the largest index the parameter-space sweeps use
        let z = bessel_zero(0, 4000).unwrap();
        assert!(bessel_j(0, z).abs() < 1e-12);
        assert!((z - mcmahon_guess(0, 4000)).abs() < 1e-9);
    }

    #[test]
    fn rejects_l_zero() {
        assert!(bessel_zero(0, 0).is_err());
    }

    #[test]
    fn recurrence_identity_sampled() {
        // J_{m-1}(x) + J_{m+1}(x) = (2m/x) J_m(x)
        for m in 1..6u32 {
            for &x in &[0.1, 0.9, 4.2, 17.0, 33.0, 100.0] {
                let lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x);
                let rhs = 2.0 * m as f64 / x * bessel_j(m, x);
                let scale = lhs.abs().max(rhs.abs()).max(1e-8);
                assert!(
                    (lhs - rhs).abs() / scale < 1e-9,
                    "recurrence at m={m}, x={x}: {lhs:e} vs {rhs:e}"
                );
            }
        }
    }
}
