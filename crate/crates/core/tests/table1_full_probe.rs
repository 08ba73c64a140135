//! Full Table I block-1 sweep (manual probe).
use std::time::Instant;
use udw_cavity::cavity::CavityGeometry;
use udw_cavity::quad::OscOpts;
use udw_cavity::response::{validity_ratio, DetectorConfig, InitialState, ResonantSelection};
use udw_cavity::trajectory::TrajectorySpec;

#[test]
#[ignore]
fn table1_block1_all_columns() {
    let geom = CavityGeometry::unit(0.5).unwrap();
    let opts = OscOpts::default();
    let sel = ResonantSelection::Window { threshold: 0.02 };
    for al in [5e-5, 5e-4, 5e-3, 5e-2, 5e-1, 200.0] {
        for state in [InitialState::Excited, InitialState::Ground] {
            let d = DetectorConfig::new(5.75, 1.0, state).unwrap();
            let spec = TrajectorySpec::UniformAcceleration { a: al };
            let t0 = Instant::now();
            let r = validity_ratio(&geom, &d, &spec, 200, 10_000, sel, &opts).unwrap();
            println!(
                "aL={al:<8} {state:?}: ratio={:.6e}  P={:.6e} [{:.0}s]",
                r.ratio,
                r.p_total,
                t0.elapsed().as_secs_f64()
            );
        }
    }
}
