//! Delta-normalization of the cavity modes under the Klein–Gordon inner
//! product, verified numerically over a 3×3×3 block of quantum numbers.

use udw_cavity::cavity::{kg_inner_product, CavityGeometry, ModeIndex};

#[test]
fn kg_delta_matrix_3x3x3() {
    let geom = CavityGeometry::unit(0.5).unwrap();
    let mut block = Vec::new();
    for m in 0..3u32 {
        for l in 1..=3u32 {
            for n in 1..=3u32 {
                block.push(ModeIndex::new(m, l, n).unwrap());
            }
        }
    }
    let mut worst: f64 = 0.0;
    for &a in &block {
        for &b in &block {
            let ip = kg_inner_product(&geom, a, b, 48, 1e-8).unwrap();
            let expect = if a == b { 1.0 } else { 0.0 };
            let dev = (ip - expect).norm();
            worst = worst.max(dev);
            assert!(dev < 1e-6, "({:?}|{:?}) = {ip}, expected {expect}", a, b);
        }
    }
    println!("kg 3x3x3 worst deviation from delta: {worst:.3e}");
}

#[test]
fn kg_tighter_on_fundamental_pairs() {
    // normalization itself is much better than the 1e-6 block tolerance
    let geom = CavityGeometry::unit(0.5).unwrap();
    for l in 1..=2u32 {
        let idx = ModeIndex::axial(l, 1).unwrap();
        let ip = kg_inner_product(&geom, idx, idx, 64, 1e-10).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-9 && ip.im.abs() < 1e-12);
    }
}
