//! Manual timing probe for grid fills (run with --ignored --nocapture).

use std::time::Instant;
use udw_cavity::cavity::CavityGeometry;
use udw_cavity::quad::OscOpts;
use udw_cavity::response::{mode_grid, DetectorConfig, InitialState};
use udw_cavity::trajectory::TrajectorySpec;

#[test]
#[ignore]
fn grid_fill_throughput() {
    let geom = CavityGeometry::unit(0.5).unwrap();
    let opts = OscOpts::default();
    for &(al, cl, cn) in &[
        (5e-5, 50u32, 500u32),
        (5e-5, 100, 2000),
        (5e-1, 100, 2000),
        (200.0, 100, 2000),
    ] {
        for state in [InitialState::Excited, InitialState::Ground] {
            let d = DetectorConfig::new(5.75, 1.0, state).unwrap();
            let spec = TrajectorySpec::UniformAcceleration { a: al };
            let t0 = Instant::now();
            let grid = mode_grid(&geom, &d, &spec, cl, cn, 0.02, &opts).unwrap();
            let dt = t0.elapsed().as_secs_f64();
            let cells = (cl * cn) as f64;
            use std::sync::atomic::Ordering;
            use udw_cavity::quad::stats;
            println!(
                "aL={al:<7} {state:?}: {cl}x{cn} in {dt:.2}s ({:.1} µs/cell), P={:.6e} levin/cell={:.1} gl/cell={:.1} win/cell={:.2}",
                dt / cells * 1e6,
                grid.total_number(),
                stats::LEVIN_SOLVES.swap(0, Ordering::Relaxed) as f64 / cells,
                stats::GL_PANELS.swap(0, Ordering::Relaxed) as f64 / cells,
                stats::WINDOW_EDGES.swap(0, Ordering::Relaxed) as f64 / cells,
            );
        }
    }
}
