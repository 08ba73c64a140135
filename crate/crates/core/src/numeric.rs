//! Small numerical utilities shared across the crate: deterministic pairwise
//! summation, Gauss–Legendre rules, Chebyshev collocation helpers and a tiny
//! complex linear solver.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Pairwise (cascade) summation with a fixed reduction tree.
///
/// Error grows like O(log n · eps) instead of O(n · eps), and the result
/// depends only on element order, never on thread scheduling.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BASE: usize = 32;
    if values.len() <= BASE {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Gauss–Legendre rule on [-1, 1]: `(nodes, weights)`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on Legendre polynomials.
    pub fn new(order: usize) -> Self {
        assert!(order >= 2);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..(order + 1) / 2 {
            // Chebyshev-like initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_n(x) and P'_n(x).
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=order {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / pp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * pp * pp);
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }
}

/// Cached rules for the orders the quadrature engine uses.
pub fn gauss_legendre(order: usize) -> &'static GaussLegendre {
    static TABLES: OnceLock<Vec<(usize, GaussLegendre)>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        [8usize, 16, 24, 32, 48, 64]
            .iter()
            .map(|&o| (o, GaussLegendre::new(o)))
            .collect()
    });
    tables
        .iter()
        .find(|(o, _)| *o == order)
        .map(|(_, g)| g)
        .unwrap_or_else(|| panic!("no cached Gauss-Legendre rule of order {order}"))
}

/// Chebyshev–Gauss points on [-1, 1] (interior, no endpoints).
pub fn chebyshev_points(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * n as f64)).cos())
        .collect()
}

/// Solves the dense complex system `A x = b` in place by LU with partial
/// pivoting. Returns `None` if a pivot collapses (singular to working
/// precision). Sized for the small collocation systems used by Levin panels.
pub fn solve_complex(a: &mut [Complex64], b: &mut [Complex64], n: usize) -> Option<()> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        // pivot
        let mut piv = col;
        let mut best = a[col * n + col].norm_sqr();
        for row in (col + 1)..n {
            let mag = a[row * n + col].norm_sqr();
            if mag > best {
                best = mag;
                piv = row;
            }
        }
        if best < 1e-300 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let inv = Complex64::new(1.0, 0.0) / a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] * inv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for k in (col + 1)..n {
                let t = a[col * n + k];
                a[row * n + k] -= factor * t;
            }
            let t = b[col];
            b[row] -= factor * t;
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Some(())
}

/// `cosh(x) - 1` without cancellation for small `x`.
#[inline]
pub fn cosh_m1(x: f64) -> f64 {
    let s = (0.5 * x).sinh();
    2.0 * s * s
}
