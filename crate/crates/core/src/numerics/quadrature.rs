use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 32;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            deriv = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        if dp != 0.0 {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Product grid on the unit sphere: Gauss–Legendre in cos θ and equally
/// weighted uniform points in φ ∈ [0, 2π).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    cos_nodes: Vec<f64>,
    cos_weights: Vec<f64>,
    n_phi: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereNode {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub phi: f64,
    pub weight: f64,
}

impl QuadratureGrid {
    pub fn new(n_cos_theta: usize, n_phi: usize) -> Result<Self> {
        if n_cos_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidArgument(format!(
                "quadrature orders must be positive, got ({n_cos_theta}, {n_phi})"
            )));
        }
        let (cos_nodes, cos_weights) = gauss_legendre(n_cos_theta);
        Ok(QuadratureGrid { cos_nodes, cos_weights, n_phi })
    }

    pub fn n_cos_theta(&self) -> usize {
        self.cos_nodes.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.cos_nodes.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same grid with both orders doubled.
    pub fn refined(&self) -> Self {
        Self::new(2 * self.n_cos_theta(), 2 * self.n_phi).expect("orders stay positive")
    }

    pub fn nodes(&self) -> impl Iterator<Item = SphereNode> + '_ {
        let dphi = 2.0 * PI / self.n_phi as f64;
        self.cos_nodes
            .iter()
            .zip(&self.cos_weights)
            .flat_map(move |(&cos_theta, &w)| {
                let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
                (0..self.n_phi).map(move |k| SphereNode {
                    cos_theta,
                    sin_theta,
                    phi: dphi * k as f64,
                    weight: w * dphi,
                })
            })
    }

    pub fn total_weight(&self) -> f64 {
        self.nodes().map(|n| n.weight).sum()
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(DEFAULT_ORDER, DEFAULT_ORDER).expect("default orders are positive")
    }
}

/// `∫ dΩ f(cos θ, φ)` on the grid.
pub fn integrate_sphere<F>(f: F, grid: &QuadratureGrid) -> C64
where
    F: Fn(f64, f64) -> C64,
{
    grid.nodes().map(|n| f(n.cos_theta, n.phi) * n.weight).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn weights_cover_the_sphere() {
        for (nc, np) in [(1, 1), (5, 3), (32, 32), (64, 17), (128, 128)] {
            let g = QuadratureGrid::new(nc, np).unwrap();
            assert!((g.total_weight() - 4.0 * PI).abs() < 1e-12, "{nc}x{np}");
        }
    }

    #[test]
    fn legendre_nodes_small_orders() {
        let (x, w) = gauss_legendre(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn analytic_integrals() {
        let g = QuadratureGrid::default();
        assert!((integrate_sphere(|_, _| c(1.0), &g) - 4.0 * PI).norm() < 1e-12);
        let cos2 = integrate_sphere(|ct, _| c(ct * ct), &g);
        assert!((cos2 - 4.0 * PI / 3.0).norm() < 1e-12);
        let wind = integrate_sphere(
            |ct, phi| C64::from_polar((1.0 - ct * ct).sqrt(), phi),
            &g,
        );
        assert!(wind.norm() < 1e-12);
    }

    #[test]
    fn exact_for_low_degree_trig_polynomials() {
        // cos^k θ · e^{imφ} integrates to 2π δ_{m0} · (1 + (-1)^k) / (k + 1).
        let g = QuadratureGrid::new(8, 8).unwrap();
        for k in 0..8 {
            for m in -7i32..=7 {
                let got = integrate_sphere(
                    |ct, phi| C64::from_polar(ct.powi(k), m as f64 * phi),
                    &g,
                );
                let want = if m == 0 && k % 2 == 0 { 4.0 * PI / (k as f64 + 1.0) } else { 0.0 };
                assert!((got - want).norm() <= 1e-12 * 4.0 * PI, "k={k} m={m}: {got}");
            }
        }
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(QuadratureGrid::new(0, 4).is_err());
        assert!(QuadratureGrid::new(4, 0).is_err());
    }
}
