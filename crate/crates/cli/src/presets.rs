//! Built-in parameter blocks for one-command reproduction of the reference
//! tables and figure data sets.

use crate::config::{
    OutputFormat, RunConfig, Scenario, SelectionKind, StateChoice, TrajectoryKind,
};

pub const PRESET_NAMES: [&str; 10] = [
    "table1", "table3", "table4", "table5", "table6", "fig2", "fig3", "fig4", "fig5", "fig6",
];

const A_L_COLUMNS: [f64; 6] = [5e-5, 5e-4, 5e-3, 5e-2, 5e-1, 200.0];

// several reference gaps are literally 3.14, not an approximated π
#[allow(clippy::approx_constant)]
pub fn preset(name: &str) -> Option<RunConfig> {
    let base = RunConfig {
        rho_over_l: 0.5,
        state: StateChoice::Both,
        trajectory_kind: TrajectoryKind::UniformAcceleration,
        format: OutputFormat::Csv,
        ..RunConfig::default()
    };
    Some(match name {
        // resonant-contribution ratios for the three gap blocks over the
        // acceleration sweep, at the full cutoffs (N_l=200, N_n=10^4)
        "table1" => RunConfig {
            scenario: Scenario::RatioTable,
            omega_l: 5.75,
            sweep_omega_l: vec![5.75, 20.0, 50.0],
            sweep_a_l: A_L_COLUMNS.to_vec(),
            cutoff_l: 200,
            cutoff_n: 10_000,
            ..base
        },
        // fibre estimator ladder at v̄ = 0.005, ΩL = 20, ρ/L = 1/2
        "table3" => RunConfig {
            scenario: Scenario::Fibre,
            omega_l: 20.0,
            state: StateChoice::Ground,
            trajectory_kind: TrajectoryKind::ConstantVelocity,
            v_bar: Some(0.005),
            cutoff_l: 250,
            cutoff_n: 1_000_000,
            tail_extrapolation: true,
            ..base
        },
        // 1+1D ratios over the acceleration sweep for the four mass blocks
        "table4" => RunConfig {
            scenario: Scenario::Table1d,
            omega_l: 3.14,
            sweep_mass_gap: vec![(0.0, 3.14), (2.41, 3.95), (4.81, 5.74), (48.1, 48.19)],
            sweep_a_l: A_L_COLUMNS.to_vec(),
            selection: SelectionKind::SingleClosest,
            cutoff_n: 8000,
            ..base
        },
        // 1+1D ratios at aL = 5e-5 over the gap grid, single closest mode
        "table5" => RunConfig {
            scenario: Scenario::Table1d,
            omega_l: 3.14,
            sweep_mass_gap: vec![
                (0.0, 3.14),
                (0.0, 10.0),
                (0.0, 50.0),
                (0.0, 100.0),
                (2.41, 3.95),
                (2.41, 10.0),
                (2.41, 50.0),
                (2.41, 100.0),
                (4.81, 5.74),
                (4.81, 10.0),
                (4.81, 50.0),
                (4.81, 100.0),
                (48.09, 48.19),
                (48.09, 49.0),
                (48.09, 70.0),
                (48.09, 111.0),
            ],
            sweep_a_l: vec![5e-5],
            selection: SelectionKind::SingleClosest,
            cutoff_n: 4000,
            ..base
        },
        // like table5 but the 20% few-mode window, ground state only
        "table6" => RunConfig {
            scenario: Scenario::Table1d,
            omega_l: 3.14,
            state: StateChoice::Ground,
            sweep_mass_gap: vec![
                (0.0, 3.14),
                (0.0, 10.0),
                (0.0, 50.0),
                (0.0, 100.0),
                (2.41, 3.95),
                (2.41, 10.0),
                (2.41, 50.0),
                (2.41, 100.0),
                (4.81, 5.74),
                (4.81, 10.0),
                (4.81, 50.0),
                (4.81, 100.0),
                (48.1, 48.19),
                (48.1, 49.0),
                (48.1, 70.0),
                (48.1, 111.0),
            ],
            sweep_a_l: vec![5e-5],
            selection: SelectionKind::Window,
            resonance_threshold: 0.20,
            cutoff_n: 4000,
            ..base
        },
        // number-expectation grids for the acceleration sweep, ΩL = 20
        // (resonant with (l, n) = (3, 3))
        "fig2" => RunConfig {
            scenario: Scenario::Spectrum,
            omega_l: 20.0,
            sweep_a_l: A_L_COLUMNS.to_vec(),
            cutoff_l: 12,
            cutoff_n: 18,
            ..base
        },
        // same grids for inertial crossings at the matched velocities
        "fig3" => RunConfig {
            scenario: Scenario::Spectrum,
            omega_l: 20.0,
            trajectory_kind: TrajectoryKind::ConstantVelocity,
            sweep_v_bar: vec![0.005, 0.16, 0.45, 0.995],
            cutoff_l: 12,
            cutoff_n: 18,
            ..base
        },
        // relative error of the Galilean approximation, ΩL = 50
        "fig4" => RunConfig {
            scenario: Scenario::NrError,
            omega_l: 50.0,
            sweep_a_l: vec![5e-5, 5e-3, 5e-2],
            cutoff_l: 20,
            cutoff_n: 20,
            ..base
        },
        // thin-cavity energy spectra over n at fixed l (ρ/L = 1/50, the gap
        // resonant with (1,1))
        "fig5" => RunConfig {
            scenario: Scenario::Spectrum,
            rho_over_l: 1.0 / 50.0,
            omega_l: 120.2,
            sweep_a_l: vec![5e-5, 0.5],
            cutoff_l: 6,
            cutoff_n: 60,
            ..base
        },
        // thin-cavity energy spectra over l at fixed n
        "fig6" => RunConfig {
            scenario: Scenario::Spectrum,
            rho_over_l: 1.0 / 50.0,
            omega_l: 120.2,
            sweep_a_l: vec![5e-5, 0.5],
            cutoff_l: 40,
            cutoff_n: 5,
            ..base
        },
        _ => return None,
    })
}
