//! Per-mode detector response: number expectation values, deposited energy,
//! transition probabilities, resonant-mode selection and validity ratios,
//! the non-relativistic closed form and its error map.
//!
//! On the cavity axis only `m = 0` modes couple, so a mode cell is `(l, n)`.
//! Everything is reported per coupling squared: `N_{l,n}/λ²`, `P/λ²`. For the
//! accelerated worldline the crossing amplitude is
//!
//! ```text
//! I(l,n) = ∫_0^T dτ e^{iσΩτ} e^{i(ω/a) sinh(aτ)} sin(nπ (cosh(aτ)-1)/(aL)),
//! ```
//!
//! with `σ = +1` for a detector starting in the ground state and `σ = -1`
//! for an excited one, and `N_{l,n}/λ² = |A_{0ln}|² |I|²`.

use crate::cavity::{mode_frequency, normalization, CavityGeometry, ModeIndex};
use crate::numeric::{cosh_m1, pairwise_sum};
use crate::quad::{integrate_exp_phase, OscOpts, PhaseFn};
use crate::specfun::{bessel_j, bessel_zero, erf_complex};
use crate::trajectory::TrajectorySpec;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Detector state at cavity entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    Ground,
    Excited,
}

impl InitialState {
    /// Sign of the detector phase `e^{iσΩτ}` inoscillating amplitudes.
    pub fn sign(self) -> f64 {
        match self {
            InitialState::Ground => 1.0,
            InitialState::Excited => -1.0,
        }
    }
}

/// Two-level detector: gap `Ω` (units 1/L), coupling `λ` and initial state.
///
/// The coupling only sets the overall `λ²` of every probability; results are
/// reported divided by it, so it is carried for configuration echo only.
#[derive(Debug, Clone, Copy)]
pub struct DetectorConfig {
    pub gap: f64,
    pub coupling: f64,
    pub initial_state: InitialState,
}

impl DetectorConfig {
    pub fn new(gap: f64, coupling: f64, initial_state: InitialState) -> Result<Self> {
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(Error::InvalidDetector {
                reason: format!("gap must be positive and finite, got {gap}"),
            });
        }
        if !(coupling > 0.0) || !coupling.is_finite() {
            return Err(Error::InvalidDetector {
                reason: format!("coupling must be positive and finite, got {coupling}"),
            });
        }
        Ok(DetectorConfig {
            gap,
            coupling,
            initial_state,
        })
    }

    fn signed_gap(&self) -> f64 {
        self.initial_state.sign() * self.gap
    }
}

/// How "resonant" modes are selected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResonantSelection {
    /// All modes with `|ω - Ω|/Ω <= threshold`; if none qualify, the single
    /// mode closest in energy.
    Window { threshold: f64 },
    /// Only the single mode closest in energy to the gap.
    SingleClosest,
}

/// One cell of a mode grid.
#[derive(Debug, Clone, Copy)]
pub struct ModeCell {
    /// `N_{l,n}/λ²`
    pub number: f64,
    /// `E_{l,n}/λ² = ω N_{l,n}/λ²`
    pub energy: f64,
    pub resonant: bool,
}

/// Rectangular `(l, n)` array of per-mode results, `1..=cutoff` in each index.
#[derive(Debug, Clone)]
pub struct ModeGrid {
    cutoff_l: u32,
    cutoff_n: u32,
    cells: Vec<ModeCell>,
}

impl ModeGrid {
    pub fn cutoff_l(&self) -> u32 {
        self.cutoff_l
    }

    pub fn cutoff_n(&self) -> u32 {
        self.cutoff_n
    }

    pub fn get(&self, l: u32, n: u32) -> &ModeCell {
        assert!((1..=self.cutoff_l).contains(&l) && (1..=self.cutoff_n).contains(&n));
        &self.cells[((l - 1) as usize) * self.cutoff_n as usize + (n - 1) as usize]
    }

    /// Cells in deterministic `(l, n)` row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &ModeCell)> {
        self.cells.iter().enumerate().map(move |(i, c)| {
            let l = i as u32 / self.cutoff_n + 1;
            let n = i as u32 % self.cutoff_n + 1;
            (l, n, c)
        })
    }

    /// `Σ N_{l,n}` over the whole grid, fixed pairwise order.
    pub fn total_number(&self) -> f64 {
        let vals: Vec<f64> = self.cells.iter().map(|c| c.number).collect();
        pairwise_sum(&vals)
    }

    /// Sum over the resonant-flagged cells, same summation scheme.
    pub fn resonant_number(&self) -> f64 {
        let vals: Vec<f64> = self
            .cells
            .iter()
            .filter(|c| c.resonant)
            .map(|c| c.number)
            .collect();
        pairwise_sum(&vals)
    }

    /// `(l, n)` of the largest `N`.
    pub fn argmax(&self) -> (u32, u32) {
        let mut best = (1, 1);
        let mut val = f64::MIN;
        for (l, n, c) in self.iter() {
            if c.number > val {
                val = c.number;
                best = (l, n);
            }
        }
        best
    }

    /// Tail-row estimate of the truncated `n > cutoff_n` remainder, from the
    /// observed ~1/n³ decay of off-resonant cells: `Σ_l N_{l,Nn} · Nn / 2`.
    pub fn tail_n_estimate(&self) -> f64 {
        let last: Vec<f64> = (1..=self.cutoff_l)
            .map(|l| self.get(l, self.cutoff_n).number)
            .collect();
        pairwise_sum(&last) * self.cutoff_n as f64 / 2.0
    }

    /// Tail-column estimate of the `l > cutoff_l` remainder (~1/l² decay):
    /// `Σ_n N_{Nl,n} · Nl`.
    pub fn tail_l_estimate(&self) -> f64 {
        let last: Vec<f64> = (1..=self.cutoff_n)
            .map(|n| self.get(self.cutoff_l, n).number)
            .collect();
        pairwise_sum(&last) * self.cutoff_l as f64
    }
}

/// Total transition probability from a truncated mode sum, with tail
/// estimates of the truncation (never silently dropped).
#[derive(Debug, Clone, Copy)]
pub struct TransitionProbability {
    /// `P/λ² = Σ_{l,n} N_{l,n}/λ²` over the cutoff grid.
    pub p_total: f64,
    pub tail_n: f64,
    pub tail_l: f64,
    pub cutoff_l: u32,
    pub cutoff_n: u32,
}

/// Resonant-to-total probability ratio. Because the denominator is cutoff-
/// truncated, `ratio` is an upper bound to the untruncated ratio.
#[derive(Debug, Clone, Copy)]
pub struct ValidityReport {
    pub p_total: f64,
    pub p_resonant: f64,
    pub ratio: f64,
    pub selection: ResonantSelection,
    pub cutoff_l: u32,
    pub cutoff_n: u32,
    pub tail_n: f64,
    pub tail_l: f64,
}

// ---------------------------------------------------------------------------
// crossing amplitudes
// ---------------------------------------------------------------------------

/// Amplitude `∫_0^T e^{iσΩτ} e^{i(ω/a)sinh(aτ)} sin(kz (cosh(aτ)-1)/a) dτ`
/// for hyperbolic motion, written as half the difference of two pure
/// exponential branches `s = ±1`:
///
/// `φ_s(τ) = σΩτ + (ω/a) sinh(aτ) + s (kz/a)(cosh(aτ) - 1)`.
///
/// `kappa = sqrt(ω² - kz²)` is supplied by the caller (it is `x_{0l}/ρ` for
/// cavity modes and the effective mass for 1+1D modes) and determines the
/// resonance structure: for `σ = -1` branch phases are stationary where
/// `κ cosh(aτ + θ_s) = Ω`.
pub(crate) fn accelerated_amplitude(
    omega: f64,
    kz: f64,
    kappa: f64,
    sigma_gap: f64,
    a: f64,
    t_exit: f64,
    opts: &OscOpts,
) -> Result<Complex64> {
    let mut branches = [Complex64::new(0.0, 0.0); 2];
    for (bi, s) in [1.0f64, -1.0].into_iter().enumerate() {
        let phase = move |tau: f64| {
            sigma_gap * tau + omega / a * (a * tau).sinh() + s * kz / a * cosh_m1(a * tau)
        };
        let dphase =
            move |tau: f64| sigma_gap + omega * (a * tau).cosh() + s * kz * (a * tau).sinh();
        let (stationary, splits) =
            accelerated_breakpoints(omega, kz, kappa, sigma_gap, s, a, t_exit);
        let f = PhaseFn {
            phase: &phase,
            dphase: &dphase,
            stationary: &stationary,
            splits: &splits,
        };
        branches[bi] = integrate_exp_phase(&f, 0.0, t_exit, opts)?.0;
    }
    Ok((branches[0] - branches[1]) / Complex64::new(0.0, 2.0))
}

/// Stationary points and |φ'| minima of one branch, found analytically from
/// `φ'_s = σΩ + κ cosh(aτ + θ_s)`, `θ_s = artanh(s kz/ω)`.
fn accelerated_breakpoints(
    omega: f64,
    kz: f64,
    kappa: f64,
    sigma_gap: f64,
    s: f64,
    a: f64,
    t_exit: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut stationary = Vec::new();
    let mut splits = Vec::new();
    if kappa > 0.0 {
        let theta = (s * kz / omega).atanh();
        // minimum of κcosh(aτ + θ): the slowly varying 1/φ' is hardest to
        // represent around it, so it always becomes a panel boundary
        let dip = -theta / a;
        if dip > 0.0 && dip < t_exit {
            splits.push(dip);
        }
        if sigma_gap < 0.0 && -sigma_gap >= kappa {
            // resonances φ' = 0 exist only for the excited-state sign
            let delta = (-sigma_gap / kappa).acosh();
            for root in [(delta - theta) / a, (-delta - theta) / a] {
                if root > 0.0 && root < t_exit {
                    stationary.push(root);
                }
            }
        }
    } else if sigma_gap < 0.0 {
        // massless 1+1D branch: φ' = σΩ + kz e^{s aτ}
        let ratio = -sigma_gap / kz;
        if ratio > 0.0 {
            let root = s * ratio.ln() / a;
            if root > 0.0 && root < t_exit {
                stationary.push(root);
            }
        }
    }
    stationary.sort_by(|x, y| x.partial_cmp(y).unwrap());
    (stationary, splits)
}

/// Amplitude for the inertial crossing (linear phases).
fn constant_velocity_amplitude(
    omega: f64,
    kz: f64,
    sigma_gap: f64,
    vbar: f64,
    length: f64,
    opts: &OscOpts,
) -> Result<Complex64> {
    let gamma = 1.0 / (1.0 - vbar * vbar).sqrt();
    let t_exit = length / (gamma * vbar);
    let beta = omega * gamma + sigma_gap;
    let k = kz * gamma * vbar;
    let mut branches = [Complex64::new(0.0, 0.0); 2];
    for (bi, s) in [1.0f64, -1.0].into_iter().enumerate() {
        let slope = beta + s * k;
        let phase = move |tau: f64| slope * tau;
        let dphase = move |_: f64| slope;
        let f = PhaseFn {
            phase: &phase,
            dphase: &dphase,
            stationary: &[],
            splits: &[],
        };
        branches[bi] = integrate_exp_phase(&f, 0.0, t_exit, opts)?.0;
    }
    Ok((branches[0] - branches[1]) / Complex64::new(0.0, 2.0))
}

/// Closed-form amplitude-squared prefactor for the Galilean worldline:
/// `D_±(l,n) = ∫_0^T e^{iτ(ω+σΩ)} sin(aπnτ²/(2L)) dτ` expressed through the
/// error function of complex argument. All four erf arguments lie on the
/// diagonal rays `arg = ±π/4, ±3π/4`, where every factor stays bounded.
pub(crate) fn galilean_d(
    omega: f64,
    n: u32,
    sigma_gap: f64,
    a: f64,
    length: f64,
) -> Result<Complex64> {
    let t_exit = (2.0 * length / a).sqrt();
    let c = omega + sigma_gap;
    let pan = PI * a * n as f64;
    let sqrt_l = length.sqrt();
    let root = Complex64::from_polar(1.0, PI / 4.0);
    let pref = root * sqrt_l / (2.0 * (2.0 * a * n as f64).sqrt());
    let quad_phase = length * c * c / (2.0 * pan);
    let e_plus = Complex64::from_polar(1.0, quad_phase);
    let e_minus = Complex64::from_polar(1.0, -quad_phase);
    let s1 = (pan * length).sqrt();
    let s2 = pan.sqrt();
    let half_1pi = Complex64::new(0.5, 0.5);
    let half_im1 = Complex64::new(-0.5, 0.5);
    let z1 = half_1pi * ((pan * t_exit - length * c) / s1);
    let z2 = half_1pi * (sqrt_l * c / s2);
    let z3 = half_im1 * ((length * c + pan * t_exit) / s1);
    let z4 = half_im1 * (sqrt_l * c / s2);
    let d = pref
        * (e_plus * (erf_complex(z1)? + erf_complex(z2)?)
            + Complex64::new(0.0, 1.0) * e_minus * (erf_complex(z3)? - erf_complex(z4)?));
    Ok(d)
}

// ---------------------------------------------------------------------------
// number expectation values
// ---------------------------------------------------------------------------

fn axial_mode(geom: &CavityGeometry, l: u32, n: u32) -> Result<(f64, f64, f64, f64)> {
    let idx = ModeIndex::axial(l, n)?;
    let omega = mode_frequency(geom, idx)?;
    let kz = n as f64 * PI / geom.length();
    let kappa = bessel_zero(0, l)? / geom.radius();
    let norm = normalization(geom, idx)?;
    Ok((omega, kz, kappa, norm))
}

/// `N_{l,n}/λ²` for the uniformly accelerated crossing.
pub fn number_expectation_accelerated(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    a: f64,
    l: u32,
    n: u32,
    opts: &OscOpts,
) -> Result<f64> {
    let (omega, kz, kappa, norm) = axial_mode(geom, l, n)?;
    let spec = TrajectorySpec::UniformAcceleration { a };
    let t_exit = spec.crossing_time(geom.length())?.0;
    let amp = accelerated_amplitude(omega, kz, kappa, det.signed_gap(), a, t_exit, opts)
        .map_err(|e| e.with_cell(l, n))?;
    Ok(norm * norm * amp.norm_sqr())
}

/// Relative half-width of the strip around the removable singularity
/// `(ω ± Ω/γ)² = (nπv̄/L)²` inside which the closed form gives way to direct
/// quadrature.
const CONSTV_SINGULAR_WINDOW: f64 = 1e-6;

/// `N_{l,n}/λ²` for the inertial crossing: closed form
///
/// ```text
/// N = 2π(nv̄)²/(ωL³(ργJ₁(x_{0l}))²) ·
///     [1 + (-1)^{n+1} cos((ω+σΩ/γ) L/v̄)] / [(ω+σΩ/γ)² - (nπv̄/L)²]²
/// ```
///
/// with the singular manifold evaluated by quadrature instead.
pub fn number_expectation_constant_velocity(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    vbar: f64,
    l: u32,
    n: u32,
) -> Result<f64> {
    TrajectorySpec::ConstantVelocity { vbar }.validate()?;
    let (omega, kz, _, norm) = axial_mode(geom, l, n)?;
    let gamma = 1.0 / (1.0 - vbar * vbar).sqrt();
    let length = geom.length();
    let c = omega + det.signed_gap() / gamma;
    let k = kz * vbar;
    let denom = (c * c - k * k).powi(2);
    if (c * c - k * k).abs() < CONSTV_SINGULAR_WINDOW * (c * c + k * k) {
        let amp = constant_velocity_amplitude(
            omega,
            kz,
            det.signed_gap(),
            vbar,
            length,
            &OscOpts::default(),
        )?;
        return Ok(norm * norm * amp.norm_sqr());
    }
    let x0l = bessel_zero(0, l)?;
    let j1 = bessel_j(1, x0l);
    let osc = 1.0 + if n % 2 == 0 { -1.0 } else { 1.0 } * (c * length / vbar).cos();
    let num = 2.0 * PI * (n as f64 * vbar).powi(2)
        / (omega * length.powi(3) * (geom.radius() * gamma * j1).powi(2));
    Ok(num * osc / denom)
}

/// `N_{l,n}/λ²` in the Galilean (non-relativistic) approximation,
/// `N ≈ |A_{0ln}|² |D_±(l,n)|²`.
pub fn number_expectation_galilean(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    a: f64,
    l: u32,
    n: u32,
) -> Result<f64> {
    TrajectorySpec::GalileanApproximation { a }.validate()?;
    let (omega, _, _, norm) = axial_mode(geom, l, n)?;
    let d = galilean_d(omega, n, det.signed_gap(), a, geom.length())?;
    Ok(norm * norm * d.norm_sqr())
}

/// Dispatch on the trajectory kind.
pub fn number_expectation(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    spec: &TrajectorySpec,
    l: u32,
    n: u32,
    opts: &OscOpts,
) -> Result<f64> {
    match *spec {
        TrajectorySpec::UniformAcceleration { a } => {
            number_expectation_accelerated(geom, det, a, l, n, opts)
        }
        TrajectorySpec::ConstantVelocity { vbar } => {
            number_expectation_constant_velocity(geom, det, vbar, l, n)
        }
        TrajectorySpec::GalileanApproximation { a } => {
            number_expectation_galilean(geom, det, a, l, n)
        }
    }
}

// ---------------------------------------------------------------------------
// grids, probabilities, ratios
// ---------------------------------------------------------------------------

/// Fills the `(l, n)` grid of number expectations and energies. Cells are
/// computed in parallel; the stored order (and therefore every downstream
/// sum) is row-major and deterministic.
pub fn mode_grid(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    spec: &TrajectorySpec,
    cutoff_l: u32,
    cutoff_n: u32,
    resonance_threshold: f64,
    opts: &OscOpts,
) -> Result<ModeGrid> {
    assert!(cutoff_l >= 1 && cutoff_n >= 1, "cutoffs must be >= 1");
    spec.validate()?;
    let total = cutoff_l as usize * cutoff_n as usize;
    let cells: Result<Vec<ModeCell>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let l = (i / cutoff_n as usize) as u32 + 1;
            let n = (i % cutoff_n as usize) as u32 + 1;
            let number = number_expectation(geom, det, spec, l, n, opts)?;
            let omega = mode_frequency(geom, ModeIndex::axial(l, n)?)?;
            Ok(ModeCell {
                number,
                energy: omega * number,
                resonant: (omega - det.gap).abs() / det.gap <= resonance_threshold,
            })
        })
        .collect();
    Ok(ModeGrid {
        cutoff_l,
        cutoff_n,
        cells: cells?,
    })
}

/// `P/λ² = Σ_{l<=Nl, n<=Nn} N_{l,n}/λ²` with truncation-tail estimates.
pub fn transition_probability(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    spec: &TrajectorySpec,
    cutoff_l: u32,
    cutoff_n: u32,
    opts: &OscOpts,
) -> Result<TransitionProbability> {
    let grid = mode_grid(geom, det, spec, cutoff_l, cutoff_n, 0.02, opts)?;
    Ok(probability_from_grid(&grid))
}

/// Same sum, reusing an existing grid (bit-identical to the grid total).
pub fn probability_from_grid(grid: &ModeGrid) -> TransitionProbability {
    TransitionProbability {
        p_total: grid.total_number(),
        tail_n: grid.tail_n_estimate(),
        tail_l: grid.tail_l_estimate(),
        cutoff_l: grid.cutoff_l,
        cutoff_n: grid.cutoff_n,
    }
}

/// Modes within the fractional window of the gap; falls back to the single
/// closest-in-energy mode when the window is empty.
pub fn select_resonant(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    cutoff_l: u32,
    cutoff_n: u32,
    selection: ResonantSelection,
) -> Result<Vec<ModeIndex>> {
    let mut in_window = Vec::new();
    let mut closest = None::<(f64, ModeIndex)>;
    for l in 1..=cutoff_l {
        for n in 1..=cutoff_n {
            let idx = ModeIndex::axial(l, n)?;
            let omega = mode_frequency(geom, idx)?;
            let detuning = (omega - det.gap).abs() / det.gap;
            if closest.is_none() || detuning < closest.unwrap().0 {
                closest = Some((detuning, idx));
            }
            if let ResonantSelection::Window { threshold } = selection {
                if detuning <= threshold {
                    in_window.push(idx);
                }
            }
        }
    }
    match selection {
        ResonantSelection::Window { .. } if !in_window.is_empty() => Ok(in_window),
        _ => Ok(vec![closest.expect("cutoffs >= 1").1]),
    }
}

/// Ratio of resonant to total transition probability over the cutoff grid.
/// The truncated denominator makes the ratio an upper bound.
pub fn validity_ratio(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    spec: &TrajectorySpec,
    cutoff_l: u32,
    cutoff_n: u32,
    selection: ResonantSelection,
    opts: &OscOpts,
) -> Result<ValidityReport> {
    let threshold = match selection {
        ResonantSelection::Window { threshold } => threshold,
        ResonantSelection::SingleClosest => 0.0,
    };
    let grid = mode_grid(geom, det, spec, cutoff_l, cutoff_n, threshold, opts)?;
    validity_ratio_from_grid(geom, det, &grid, selection)
}

/// Ratio evaluated from an already-computed grid.
pub fn validity_ratio_from_grid(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    grid: &ModeGrid,
    selection: ResonantSelection,
) -> Result<ValidityReport> {
    let p = probability_from_grid(grid);
    if !(p.p_total > 0.0) {
        return Err(Error::EmptyModeSum {
            context: format!(
                "gap ΩL={}, grid {}x{}",
                det.gap, grid.cutoff_l, grid.cutoff_n
            ),
        });
    }
    let selected = select_resonant(geom, det, grid.cutoff_l, grid.cutoff_n, selection)?;
    let vals: Vec<f64> = selected
        .iter()
        .map(|idx| grid.get(idx.l, idx.n).number)
        .collect();
    let p_res = pairwise_sum(&vals);
    Ok(ValidityReport {
        p_total: p.p_total,
        p_resonant: p_res,
        ratio: p_res / p.p_total,
        selection,
        cutoff_l: grid.cutoff_l,
        cutoff_n: grid.cutoff_n,
        tail_n: p.tail_n,
        tail_l: p.tail_l,
    })
}

/// One cell of the non-relativistic error map `Δ = 1 - N^{NR}/N`; `None`
/// marks cells whose exact `N` is below the division floor (1e-300).
#[derive(Debug, Clone)]
pub struct ErrorMap {
    pub cutoff_l: u32,
    pub cutoff_n: u32,
    values: Vec<Option<f64>>,
}

impl ErrorMap {
    pub fn get(&self, l: u32, n: u32) -> Option<f64> {
        self.values[((l - 1) as usize) * self.cutoff_n as usize + (n - 1) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, Option<f64>)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| {
            let l = i as u32 / self.cutoff_n + 1;
            let n = i as u32 % self.cutoff_n + 1;
            (l, n, *v)
        })
    }
}

const DIVISION_FLOOR: f64 = 1e-300;

/// Per-mode relative error of the Galilean approximation against the exact
/// accelerated result.
pub fn relative_error_map(
    geom: &CavityGeometry,
    det: &DetectorConfig,
    a: f64,
    cutoff_l: u32,
    cutoff_n: u32,
    opts: &OscOpts,
) -> Result<ErrorMap> {
    let total = cutoff_l as usize * cutoff_n as usize;
    let values: Result<Vec<Option<f64>>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let l = (i / cutoff_n as usize) as u32 + 1;
            let n = (i % cutoff_n as usize) as u32 + 1;
            let exact = number_expectation_accelerated(geom, det, a, l, n, opts)?;
            if exact < DIVISION_FLOOR {
                return Ok(None);
            }
            let nr = number_expectation_galilean(geom, det, a, l, n)?;
            Ok(Some(1.0 - nr / exact))
        })
        .collect();
    Ok(ErrorMap {
        cutoff_l,
        cutoff_n,
        values: values?,
    })
}
