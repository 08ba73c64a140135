//! Quadrature for the highly oscillatory crossing integrals
//! `∫ exp(i φ(τ)) dτ`.
//!
//! The phase of an accelerated crossing grows like `ω cosh(aτ)`, so uniform
//! grids are hopeless at large `aL`. The engine works on a decomposition of
//! the integration interval driven by the phase function itself:
//!
//! * stationary points of `φ` (resonances, supplied analytically by the
//!   caller) are wrapped in windows integrated by adaptive Gauss–Legendre
//!   panels whose per-panel phase change is capped,
//! * away from stationary points, segments with small total phase use the
//!   same capped panels,
//! * long segments with large total phase use Levin collocation: solve
//!   `u' + i φ' u = 1` on a Chebyshev basis, so only the endpoints of the
//!   panel contribute and the cost is independent of the oscillation count.
//!
//! Each Levin panel carries an error estimate from its Chebyshev tail and is
//! bisected until the estimate meets the tolerance; exhausting the panel
//! budget is an explicit error carrying the achieved estimate, never a
//! silent truncation.

use crate::numeric::{chebyshev_points, gauss_legendre, solve_complex};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Tuning knobs for [`integrate_exp_phase`].
#[derive(Debug, Clone)]
pub struct OscOpts {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute floor below which contributions are considered zero.
    pub abs_floor: f64,
    /// Gauss–Legendre order per panel.
    pub gl_order: usize,
    /// Maximum phase change per Gauss–Legendre panel (radians).
    pub phase_cap: f64,
    /// Chebyshev collocation order of a Levin panel.
    pub levin_order: usize,
    /// Segments with total phase below this stay on Gauss–Legendre panels.
    pub levin_min_phase: f64,
    /// Disable the Levin path entirely (pure capped-panel integration).
    pub force_gl: bool,
    /// Budget of panels (GL panels + Levin solves) per integral.
    pub max_panels: usize,
}

impl Default for OscOpts {
    fn default() -> Self {
        OscOpts {
            rel_tol: 1e-8,
            abs_floor: 1e-30,
            gl_order: 24,
            phase_cap: 0.5 * PI,
            levin_order: 16,
            levin_min_phase: 10.0,
            force_gl: false,
            max_panels: 400_000,
        }
    }
}

impl OscOpts {
    /// Same decomposition, tighter tolerance, four times the panel density.
    /// Used as the independent cross-check rule in tests.
    pub fn oracle_density(&self) -> Self {
        OscOpts {
            phase_cap: self.phase_cap / 4.0,
            force_gl: true,
            ..self.clone()
        }
    }
}

/// Phase description of one exponential integrand.
pub struct PhaseFn<'a> {
    /// φ(τ)
    pub phase: &'a dyn Fn(f64) -> f64,
    /// φ'(τ)
    pub dphase: &'a dyn Fn(f64) -> f64,
    /// Zeros of φ' inside the interval (resonances), any order.
    pub stationary: &'a [f64],
    /// Additional split points (e.g. interior minima of |φ'|).
    pub splits: &'a [f64],
}

/// Phase change accumulated across a stationary-point window before the
/// integrand is considered oscillatory again.
const WINDOW_PHASE: f64 = 48.0;
/// Largest |φ'| ratio per Levin panel. The slowly varying factor
/// `u ~ 1/(iφ')` of the crossing phases is near-exponential in τ, which a
/// Chebyshev basis resolves even across large drift; the cap only guards
/// pathological segments. Splits are batched in equal-τ subpanels (equal
/// drift for exponential φ').
const LEVIN_DRIFT_RATIO: f64 = 50.0;
const MAX_DEPTH: u32 = 48;

/// Cheap global instrumentation for tuning (reads are racy, fine for stats).
pub mod stats {
    use std::sync::atomic::AtomicUsize;
    pub static LEVIN_SOLVES: AtomicUsize = AtomicUsize::new(0);
    pub static GL_PANELS: AtomicUsize = AtomicUsize::new(0);
    pub static WINDOW_EDGES: AtomicUsize = AtomicUsize::new(0);
}

struct Accum {
    value: Complex64,
    err: f64,
    panels: usize,
    exhausted: bool,
}

/// Computes `∫_a^b exp(i φ(τ)) dτ` and an absolute error estimate.
pub fn integrate_exp_phase(
    f: &PhaseFn,
    a: f64,
    b: f64,
    opts: &OscOpts,
) -> Result<(Complex64, f64)> {
    if !(b > a) {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let mut acc = Accum {
        value: Complex64::new(0.0, 0.0),
        err: 0.0,
        panels: 0,
        exhausted: false,
    };

    // breakpoints: stationary points get protective windows, splits are bare
    let mut marks: Vec<(f64, bool)> = f
        .stationary
        .iter()
        .filter(|&&s| s > a && s < b)
        .map(|&s| (s, true))
        .chain(
            f.splits
                .iter()
                .filter(|&&s| s > a && s < b)
                .map(|&s| (s, false)),
        )
        .collect();
    marks.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut cursor = a;
    for (s, is_stationary) in marks {
        if s <= cursor {
            continue;
        }
        if is_stationary {
            let lo = window_edge(f, s, cursor, WINDOW_PHASE).min(s);
            let hi = window_edge(f, s, b, WINDOW_PHASE).max(s);
            if lo > cursor {
                smooth_segment(f, cursor, lo, 0, opts, &mut acc);
            }
            gl_capped(f, lo.max(cursor), hi.min(b), opts, &mut acc);
            cursor = hi.min(b);
        } else {
            smooth_segment(f, cursor, s, 0, opts, &mut acc);
            cursor = s;
        }
    }
    if cursor < b {
        smooth_segment(f, cursor, b, 0, opts, &mut acc);
    }

    let scale = acc.value.norm().max(opts.abs_floor);
    if acc.exhausted && acc.err / scale > opts.rel_tol {
        return Err(Error::QuadratureNoConvergence {
            achieved: acc.err / scale,
            requested: opts.rel_tol,
            context: String::new(),
        });
    }
    Ok((acc.value, acc.err))
}

/// Finds the abscissa (on the `towards` side of `s`) where the phase has
/// moved by `target` from its stationary value.
fn window_edge(f: &PhaseFn, s: f64, towards: f64, target: f64) -> f64 {
    stats::WINDOW_EDGES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    let phi_s = (f.phase)(s);
    if ((f.phase)(towards) - phi_s).abs() <= target {
        return towards;
    }
    let mut lo = s;
    let mut hi = towards;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ((f.phase)(mid) - phi_s).abs() < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= 1e-14 * (s.abs() + towards.abs() + 1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Stationary-point-free segment: Gauss–Legendre when the phase budget is
/// small, Levin panels otherwise.
fn smooth_segment(f: &PhaseFn, u: f64, v: f64, depth: u32, opts: &OscOpts, acc: &mut Accum) {
    if v <= u || acc.exhausted {
        if acc.exhausted {
            acc.err += (v - u).abs(); // unprocessed length counts as error
        }
        return;
    }
    let total_phase = ((f.phase)(v) - (f.phase)(u)).abs();
    if opts.force_gl || total_phase <= opts.levin_min_phase {
        gl_capped(f, u, v, opts, acc);
        return;
    }
    if depth >= MAX_DEPTH {
        acc.exhausted = true;
        acc.err += v - u;
        return;
    }
    // keep |φ'| drift per Levin panel bounded
    let du = (f.dphase)(u).abs();
    let dm = (f.dphase)(0.5 * (u + v)).abs();
    let dv = (f.dphase)(v).abs();
    let dmin = du.min(dm).min(dv).max(1e-300);
    let dmax = du.max(dm).max(dv);
    let k_split = ((dmax / dmin).ln() / LEVIN_DRIFT_RATIO.ln()).ceil() as usize;
    if k_split > 1 {
        let step = (v - u) / k_split as f64;
        for i in 0..k_split {
            let lo = u + i as f64 * step;
            let hi = if i + 1 == k_split {
                v
            } else {
                u + (i + 1) as f64 * step
            };
            smooth_segment(f, lo, hi, depth + 1, opts, acc);
        }
        return;
    }
    if acc.panels >= opts.max_panels {
        acc.exhausted = true;
        acc.err += v - u;
        return;
    }
    acc.panels += 1;
    stats::LEVIN_SOLVES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    match levin_panel(f, u, v, opts.levin_order) {
        Some((val, err, scale)) => {
            // tolerance scales with the antiderivative magnitude, not with
            // the panel value, which can cancel to near zero when the panel
            // phase change is close to a multiple of 2π
            let target = opts
                .abs_floor
                .max(0.25 * opts.rel_tol * scale.max(val.norm()));
            if err <= target || depth >= MAX_DEPTH {
                acc.value += val;
                acc.err += err;
                return;
            }
            // escalate the collocation order once; poles of 1/φ' near a
            // drift minimum slow the degree-16 tail, degree 20 usually
            // clears it without subdividing
            if acc.panels < opts.max_panels {
                acc.panels += 1;
                stats::LEVIN_SOLVES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if let Some((val2, err2, scale2)) = levin_panel(f, u, v, opts.levin_order + 4) {
                    let target2 = opts
                        .abs_floor
                        .max(0.25 * opts.rel_tol * scale2.max(val2.norm()));
                    if err2 <= target2 {
                        acc.value += val2;
                        acc.err += err2;
                        return;
                    }
                }
            }
            let mid = 0.5 * (u + v);
            smooth_segment(f, u, mid, depth + 1, opts, acc);
            smooth_segment(f, mid, v, depth + 1, opts, acc);
        }
        None => {
            // singular collocation system: the phase is not oscillatory
            // enough to dominate, capped panels handle it
            gl_capped(f, u, v, opts, acc);
        }
    }
}

/// Adaptive phase-capped Gauss–Legendre panels.
fn gl_capped(f: &PhaseFn, u: f64, v: f64, opts: &OscOpts, acc: &mut Accum) {
    if v <= u || acc.exhausted {
        return;
    }
    let mut stack = vec![(u, v, 0u32)];
    let rule = gauss_legendre(opts.gl_order);
    while let Some((lo, hi, depth)) = stack.pop() {
        let dphi = ((f.phase)(hi) - (f.phase)(lo)).abs();
        // the endpoint difference underestimates the variation when the
        // phase turns around inside the panel; a midpoint probe catches that
        let mid_probe = ((f.phase)(0.5 * (lo + hi)) - (f.phase)(lo)).abs();
        let variation = dphi.max(2.0 * mid_probe);
        if variation > opts.phase_cap && depth < MAX_DEPTH {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
            continue;
        }
        if acc.panels >= opts.max_panels {
            acc.exhausted = true;
            acc.err += hi - lo;
            continue;
        }
        acc.panels += 1;
        stats::GL_PANELS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let half = 0.5 * (hi - lo);
        let center = 0.5 * (lo + hi);
        let mut sum = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = center + half * x;
            let p = (f.phase)(t);
            sum += w * Complex64::new(p.cos(), p.sin());
        }
        let val = half * sum;
        acc.value += val;
        acc.err += 1e-15 * val.norm() + 1e-18 * (hi - lo);
    }
}

struct LevinBasis {
    order: usize,
    /// T_k(x_j), row-major over collocation points j
    t: Vec<f64>,
    /// T'_k(x_j)
    dt: Vec<f64>,
    /// (-1)^k pattern for the left endpoint
    sign: Vec<f64>,
}

fn levin_basis(order: usize) -> &'static LevinBasis {
    static BASES: OnceLock<Vec<LevinBasis>> = OnceLock::new();
    let all = BASES.get_or_init(|| {
        [12usize, 16, 20]
            .iter()
            .map(|&n| {
                let xs = chebyshev_points(n);
                let mut t = vec![0.0; n * n];
                let mut dt = vec![0.0; n * n];
                for (j, &x) in xs.iter().enumerate() {
                    let theta = x.clamp(-1.0, 1.0).acos();
                    let s = theta.sin();
                    for k in 0..n {
                        t[j * n + k] = (k as f64 * theta).cos();
                        dt[j * n + k] = k as f64 * (k as f64 * theta).sin() / s;
                    }
                }
                LevinBasis {
                    order: n,
                    t,
                    dt,
                    sign: (0..n)
                        .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
                        .collect(),
                }
            })
            .collect()
    });
    all.iter()
        .find(|b| b.order == order)
        .unwrap_or_else(|| panic!("no Levin basis of order {order}"))
}

/// One Levin collocation panel. Returns the contribution, an absolute error
/// estimate from the Chebyshev tail of the slowly varying factor, and the
/// endpoint antiderivative magnitude as the panel's natural scale.
fn levin_panel(f: &PhaseFn, u: f64, v: f64, order: usize) -> Option<(Complex64, f64, f64)> {
    let basis = levin_basis(order);
    let n = basis.order;
    let h = v - u;
    let xs = chebyshev_points(n);
    let scale = 2.0 / h;
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    let mut rhs = vec![Complex64::new(1.0, 0.0); n];
    for j in 0..n {
        let t = u + 0.5 * (xs[j] + 1.0) * h;
        let dphi = (f.dphase)(t);
        for k in 0..n {
            a[j * n + k] = Complex64::new(scale * basis.dt[j * n + k], dphi * basis.t[j * n + k]);
        }
    }
    solve_complex(&mut a, &mut rhs, n)?;
    let mut at_right = Complex64::new(0.0, 0.0);
    let mut at_left = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for k in 0..n {
        at_right += rhs[k];
        at_left += basis.sign[k] * rhs[k];
        if k >= n - 3 {
            tail += rhs[k].norm();
        }
    }
    let pv = (f.phase)(v);
    let pu = (f.phase)(u);
    let val = at_right * Complex64::new(pv.cos(), pv.sin())
        - at_left * Complex64::new(pu.cos(), pu.sin());
    Some((val, 2.0 * tail, at_right.norm().max(at_left.norm())))
}

/// Plain fixed-density Gauss–Legendre reference rule: `panels` equal panels
/// of the given order applied to an arbitrary complex integrand. This is the
/// brute-force oracle the oscillatory engine is validated against; it shares
/// no code path with the engine above.
pub fn fixed_panel_quadrature(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Complex64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let center = lo + 0.5 * h;
        let mut sum = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            sum += w * f(center + 0.5 * h * x);
        }
        total += 0.5 * h * sum;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(
        phase: impl Fn(f64) -> f64,
        dphase: impl Fn(f64) -> f64,
        st: &[f64],
        sp: &[f64],
        a: f64,
        b: f64,
        opts: &OscOpts,
    ) -> Complex64 {
        let f = PhaseFn {
            phase: &phase,
            dphase: &dphase,
            stationary: st,
            splits: sp,
        };
        integrate_exp_phase(&f, a, b, opts).unwrap().0
    }

    #[test]
    fn linear_phase_matches_analytic() {
        let k = 137.3;
        let opts = OscOpts::default();
        let got = run(|t| k * t, |_| k, &[], &[], 0.0, 2.0, &opts);
        let exact = (Complex64::new(0.0, k * 2.0).exp() - 1.0) / Complex64::new(0.0, k);
        assert!((got - exact).norm() < 1e-12 * exact.norm());
    }

    #[test]
    fn huge_linear_phase_uses_levin_and_matches() {
        let k = 2.0e5;
        let opts = OscOpts::default();
        let got = run(|t| k * t, |_| k, &[], &[], 0.0, 1.0, &opts);
        let exact = (Complex64::new(0.0, k).exp() - 1.0) / Complex64::new(0.0, k);
        assert!(
            (got - exact).norm() < 1e-10 * exact.norm(),
            "got {got}, exact {exact}"
        );
    }

    #[test]
    fn quadratic_phase_with_stationary_point() {
        // φ = c (t - t*)^2, stationary at t* inside the interval
        let c = 400.0;
        let ts = 0.63;
        let phase = move |t: f64| c * (t - ts) * (t - ts);
        let dphase = move |t: f64| 2.0 * c * (t - ts);
        let opts = OscOpts::default();
        let got = run(phase, dphase, &[ts], &[], 0.0, 2.0, &opts);
        let brute =
            fixed_panel_quadrature(|t| Complex64::new(0.0, phase(t)).exp(), 0.0, 2.0, 4000, 16);
        assert!(
            (got - brute).norm() < 1e-9 * brute.norm(),
            "got {got}, brute {brute}"
        );
    }

    #[test]
    fn levin_path_agrees_with_forced_gl_on_cosh_phase() {
        // phase of an accelerated crossing branch
        let (om, kz, omega_gap, a) = (88.3, 62.8, 20.0, 0.5f64);
        let phase =
            move |t: f64| omega_gap * t + om / a * (a * t).sinh() - kz / a * ((a * t).cosh() - 1.0);
        let dphase = move |t: f64| omega_gap + om * (a * t).cosh() - kz * (a * t).sinh();
        let fast = OscOpts::default();
        let slow = OscOpts {
            force_gl: true,
            ..OscOpts::default()
        };
        let got = run(phase, dphase, &[], &[], 0.0, 1.9, &fast);
        let reference = run(phase, dphase, &[], &[], 0.0, 1.9, &slow);
        assert!(
            (got - reference).norm() < 1e-9 * reference.norm(),
            "levin {got} vs gl {reference}"
        );
    }

    #[test]
    fn oracle_density_agrees_on_gaussian_chirp() {
        // quadratic chirp with stationary point, compared at 4x panel density
        let (c0, c1) = (35.0, 240.0);
        let phase = move |t: f64| c0 * t - 0.5 * c1 * t * t;
        let dphase = move |t: f64| c0 - c1 * t;
        let ts = c0 / c1;
        let opts = OscOpts::default();
        let got = run(phase, dphase, &[ts], &[], 0.0, 1.0, &opts);
        let oracle = run(phase, dphase, &[ts], &[], 0.0, 1.0, &opts.oracle_density());
        assert!((got - oracle).norm() < 1e-9 * oracle.norm());
    }

    #[test]
    fn empty_interval_is_zero() {
        let opts = OscOpts::default();
        assert_eq!(
            run(|t| t, |_| 1.0, &[], &[], 1.0, 1.0, &opts),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn reports_failure_when_budget_exhausted() {
        let phase = |t: f64| 1e7 * t * t;
        let dphase = |t: f64| 2e7 * t;
        let f = PhaseFn {
            phase: &phase,
            dphase: &dphase,
            stationary: &[],
            splits: &[],
        };
        let opts = OscOpts {
            max_panels: 3,
            force_gl: true,
            ..OscOpts::default()
        };
        match integrate_exp_phase(&f, 0.0, 1.0, &opts) {
            Err(Error::QuadratureNoConvergence { achieved, .. }) => {
                assert!(achieved > 0.0)
            }
            other => panic!("expected budget failure, got {other:?}"),
        }
    }
}
