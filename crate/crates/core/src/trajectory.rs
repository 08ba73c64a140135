//! Detector worldlines along the cavity axis and their crossing kinematics.
//!
//! Proper time `τ` is the canonical parameter everywhere; the detector enters
//! the cavity at `(t, z) = (0, 0)` and exits through `z = L`.

use crate::{Error, Result};

/// Kinematics of one crossing. `a` and `v̄` are in units of `1/L` and `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectorySpec {
    /// Hyperbolic motion at constant proper acceleration.
    UniformAcceleration { a: f64 },
    /// Inertial crossing at constant velocity.
    ConstantVelocity { vbar: f64 },
    /// Galilean approximation `z = aτ²/2, t = τ` of the accelerated case.
    GalileanApproximation { a: f64 },
}

/// Proper-time duration of the crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingTime(pub f64);

impl TrajectorySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TrajectorySpec::UniformAcceleration { a }
            | TrajectorySpec::GalileanApproximation { a } => {
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::InvalidTrajectory {
                        reason: format!("proper acceleration must be positive and finite, got {a}"),
                    });
                }
            }
            TrajectorySpec::ConstantVelocity { vbar } => {
                if !(vbar > 0.0 && vbar < 1.0) {
                    return Err(Error::InvalidTrajectory {
                        reason: format!("constant velocity must lie in (0, 1), got {vbar}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Cavity-frame coordinates `(t, z)` at proper time `τ`; the detector
    /// stays on the axis (`r = φ = 0`).
    pub fn worldline(&self, tau: f64, length: f64) -> Result<(f64, f64)> {
        let t_exit = self.crossing_time(length)?.0;
        if !(0.0..=t_exit * (1.0 + 1e-12)).contains(&tau) {
            return Err(Error::TauOutOfRange { tau, t_exit });
        }
        Ok(match *self {
            TrajectorySpec::UniformAcceleration { a } => {
                (((a * tau).sinh()) / a, crate::numeric::cosh_m1(a * tau) / a)
            }
            TrajectorySpec::ConstantVelocity { vbar } => {
                let gamma = 1.0 / (1.0 - vbar * vbar).sqrt();
                (gamma * tau, gamma * vbar * tau)
            }
            TrajectorySpec::GalileanApproximation { a } => (tau, 0.5 * a * tau * tau),
        })
    }

    /// Proper time at which `z = L`.
    ///
    /// For the Galilean kind this is `sqrt(2L/a)`, the exit time of the
    /// approximated worldline itself (not of the exact hyperbola), matching
    /// the closed-form crossing amplitudes which integrate the approximated
    /// worldline over `[0, T]`.
    pub fn crossing_time(&self, length: f64) -> Result<CrossingTime> {
        self.validate()?;
        Ok(CrossingTime(match *self {
            TrajectorySpec::UniformAcceleration { a } => (a * length + 1.0).acosh() / a,
            TrajectorySpec::ConstantVelocity { vbar } => {
                let gamma = 1.0 / (1.0 - vbar * vbar).sqrt();
                length / (gamma * vbar)
            }
            TrajectorySpec::GalileanApproximation { a } => (2.0 * length / a).sqrt(),
        }))
    }
}

/// Constant velocity giving the same cavity-frame crossing time as uniform
/// proper acceleration `aL`: `v̄ = (1 + 2/(aL))^{-1/2}`.
pub fn matched_velocity(a_l: f64) -> f64 {
    1.0 / (1.0 + 2.0 / a_l).sqrt()
}

/// Coordinate velocity `dz/dt` at cavity exit for uniform acceleration.
pub fn final_velocity(a: f64, length: f64) -> f64 {
    ((a * length + 1.0).acosh()).tanh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_kinds_start_at_origin() {
        for spec in [
            TrajectorySpec::UniformAcceleration { a: 0.7 },
            TrajectorySpec::ConstantVelocity { vbar: 0.4 },
            TrajectorySpec::GalileanApproximation { a: 0.7 },
        ] {
            assert_eq!(spec.worldline(0.0, 1.0).unwrap(), (0.0, 0.0));
        }
    }

    #[test]
    fn accelerated_exit_is_at_length() {
        for &al in &[5e-5, 0.05, 0.5, 200.0] {
            let spec = TrajectorySpec::UniformAcceleration { a: al };
            let t_exit = spec.crossing_time(1.0).unwrap().0;
            let (_, z) = spec.worldline(t_exit, 1.0).unwrap();
            assert!((z - 1.0).abs() < 1e-10, "aL={al}: z(T)={z}");
        }
    }

    #[test]
    fn crossing_time_accelerated_matches_arccosh() {
        // aT = arccosh(1.5), cross-checked by root-finding z(T) = L
        let spec = TrajectorySpec::UniformAcceleration { a: 0.5 };
        let at = 0.5 * spec.crossing_time(1.0).unwrap().0;
        assert!((at - 1.5f64.acosh()).abs() < 1e-14);
        assert!((at - 0.9624236501192069).abs() < 1e-10);

        // root-finding oracle on z(τ) - L
        let mut lo = 0.0f64;
        let mut hi = 4.0f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let z = ((0.5 * mid).cosh() - 1.0) / 0.5;
            if z < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((spec.crossing_time(1.0).unwrap().0 - 0.5 * (lo + hi)).abs() < 1e-10);
    }

    #[test]
    fn crossing_time_constant_velocity() {
        let spec = TrajectorySpec::ConstantVelocity { vbar: 0.5 };
        let t = spec.crossing_time(1.0).unwrap().0;
        assert!((t - 3.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn crossing_time_galilean() {
        let spec = TrajectorySpec::GalileanApproximation { a: 0.08 };
        assert!((spec.crossing_time(1.0).unwrap().0 - (2.0 / 0.08f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn galilean_matches_accelerated_to_quadratic_order() {
        let a = 1e-3;
        let exact = TrajectorySpec::UniformAcceleration { a };
        let approx = TrajectorySpec::GalileanApproximation { a };
        let tau = 10.0; // aτ = 0.01
        let (te, ze) = exact.worldline(tau, 1.0).unwrap();
        let (tg, zg) = approx.worldline(tau, 1.0).unwrap();
        let at2 = (a * tau) * (a * tau);
        assert!(((ze - zg) / ze).abs() < at2);
        assert!(((te - tg) / te).abs() < at2);
    }

    #[test]
    fn hyperbola_identity() {
        let a = 0.8;
        let spec = TrajectorySpec::UniformAcceleration { a };
        let t_exit = spec.crossing_time(1.0).unwrap().0;
        for k in 0..=20 {
            let tau = t_exit * k as f64 / 20.0;
            let (t, z) = spec.worldline(tau, 1.0).unwrap();
            let lhs = t * t - (z + 1.0 / a) * (z + 1.0 / a);
            let rhs = -1.0 / (a * a);
            assert!(((lhs - rhs) / rhs).abs() < 1e-10, "tau={tau}");
        }
    }

    #[test]
    fn matched_velocity_anchor_values() {
        assert!((matched_velocity(200.0) - 0.995).abs() < 0.001);
        assert!((matched_velocity(0.05) - 0.16).abs() < 0.005);
        // monotone toward zero
        let mut prev = matched_velocity(1.0);
        for &al in &[0.3, 0.1, 0.03, 0.01, 1e-4] {
            let v = matched_velocity(al);
            assert!(v < prev && v > 0.0);
            prev = v;
        }
    }

    #[test]
    fn matched_velocity_equalizes_cavity_frame_times() {
        for &al in &[5e-5, 5e-2, 0.5, 200.0] {
            let acc = TrajectorySpec::UniformAcceleration { a: al };
            let t_exit = acc.crossing_time(1.0).unwrap().0;
            let (t_acc, _) = acc.worldline(t_exit, 1.0).unwrap();
            let v = matched_velocity(al);
            let t_cv = 1.0 / v; // cavity-frame time of the inertial crossing
            assert!(
                ((t_acc - t_cv) / t_cv).abs() < 1e-10,
                "aL={al}: {t_acc} vs {t_cv}"
            );
        }
    }

    #[test]
    fn final_velocity_anchor_values() {
        assert!((final_velocity(0.5, 1.0) - 0.745).abs() < 0.01);
        assert!((final_velocity(200.0, 1.0) - 0.99999).abs() < 1e-5);
        assert!(final_velocity(1e-9, 1.0) < 1e-4);
    }

    #[test]
    fn z_strictly_increasing_in_tau() {
        for spec in [
            TrajectorySpec::UniformAcceleration { a: 2.0 },
            TrajectorySpec::ConstantVelocity { vbar: 0.9 },
            TrajectorySpec::GalileanApproximation { a: 2.0 },
        ] {
            let t_exit = spec.crossing_time(1.0).unwrap().0;
            let mut prev = -1.0;
            for k in 0..=50 {
                let (_, z) = spec.worldline(t_exit * k as f64 / 50.0, 1.0).unwrap();
                assert!(z > prev);
                prev = z;
            }
        }
    }

    #[test]
    fn worldline_rejects_tau_outside_crossing() {
        let spec = TrajectorySpec::UniformAcceleration { a: 0.5 };
        assert!(spec.worldline(-0.1, 1.0).is_err());
        assert!(spec.worldline(10.0, 1.0).is_err());
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(TrajectorySpec::UniformAcceleration { a: 0.0 }
            .validate()
            .is_err());
        assert!(TrajectorySpec::ConstantVelocity { vbar: 1.0 }
            .validate()
            .is_err());
        assert!(TrajectorySpec::ConstantVelocity { vbar: -0.2 }
            .validate()
            .is_err());
    }
}
