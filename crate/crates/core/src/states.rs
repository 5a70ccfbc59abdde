//! Three-party spin in-states on A ⊗ B ⊗ C.
//!
//! Coefficient `c[k]` multiplies the basis ket with index
//! `k = 4·s_A + 2·s_B + s_C` (↑ = 0, ↓ = 1):
//! `↑↑↑, ↑↑↓, ↑↓↑, ↑↓↓, ↓↑↑, ↓↑↓, ↓↓↑, ↓↓↓`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64 as C64;

use crate::amplitude::SpinLabel;
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, DensityMatrix, Party};

const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripartiteSpinState {
    coeffs: [C64; 8],
}

/// Sign of a Bell pair: `+` ↔ η = π/4, `−` ↔ η = 3π/4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellSign {
    Plus,
    Minus,
}

impl BellSign {
    pub fn eta(self) -> f64 {
        match self {
            BellSign::Plus => FRAC_PI_4,
            BellSign::Minus => 3.0 * FRAC_PI_4,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            BellSign::Plus => 1.0,
            BellSign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BellSign::Plus => '+',
            BellSign::Minus => '-',
        }
    }
}

fn renormalise<const N: usize>(v: [C64; N]) -> Result<[C64; N]> {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "state vector must be finite and nonzero (norm {norm})"
        )));
    }
    Ok(v.map(|c| c / norm))
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl TripartiteSpinState {
    /// Any nonzero coefficient vector, rescaled to unit norm.
    pub fn general(coeffs: [C64; 8]) -> Result<Self> {
        Ok(TripartiteSpinState { coeffs: renormalise(coeffs)? })
    }

    /// `(|↑↑↑⟩ + |↓↓↓⟩)/√2`.
    pub fn ghz() -> Self {
        let mut c = [real(0.0); 8];
        c[0] = real(FRAC_1_SQRT_2);
        c[7] = real(FRAC_1_SQRT_2);
        TripartiteSpinState { coeffs: c }
    }

    /// `(|↓↓↑⟩ + |↓↑↓⟩ + |↑↓↓⟩)/√3`.
    pub fn w() -> Self {
        let a = real(1.0 / 3f64.sqrt());
        let mut c = [real(0.0); 8];
        c[3] = a;
        c[5] = a;
        c[6] = a;
        TripartiteSpinState { coeffs: c }
    }

    /// `(cos α|↑⟩ + sin α|↓⟩) ⊗ (cos η|↑↓⟩ + sin η|↓↑⟩)`.
    pub fn a_psi(alpha: f64, eta: f64) -> Self {
        let (sa, ca) = alpha.sin_cos();
        let (se, ce) = eta.sin_cos();
        let mut c = [real(0.0); 8];
        c[1] = real(ca * ce);
        c[2] = real(ca * se);
        c[5] = real(sa * ce);
        c[6] = real(sa * se);
        TripartiteSpinState { coeffs: c }
    }

    /// `(cos α|↑⟩ + sin α|↓⟩) ⊗ (cos η|↑↑⟩ + sin η|↓↓⟩)`.
    pub fn a_phi(alpha: f64, eta: f64) -> Self {
        let (sa, ca) = alpha.sin_cos();
        let (se, ce) = eta.sin_cos();
        let mut c = [real(0.0); 8];
        c[0] = real(ca * ce);
        c[3] = real(ca * se);
        c[4] = real(sa * ce);
        c[7] = real(sa * se);
        TripartiteSpinState { coeffs: c }
    }

    /// `|a⟩ ⊗ |d⟩_BC`.
    pub fn product_a_bc(a: SpinLabel, bc: &BcState) -> Self {
        let mut c = [real(0.0); 8];
        for (k, &d) in bc.coefficients().iter().enumerate() {
            c[4 * a.index() + k] = d;
        }
        TripartiteSpinState { coeffs: c }
    }

    pub fn coefficients(&self) -> &[C64; 8] {
        &self.coeffs
    }

    pub fn coefficient(&self, a: SpinLabel, b: SpinLabel, c: SpinLabel) -> C64 {
        self.coeffs[basis_index(a, b, c)]
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.coeffs)
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.projector())
    }

    pub fn reduced(&self, keep: &[Party]) -> Result<DensityMatrix> {
        self.density()?.reduce(keep)
    }
}

pub fn basis_index(a: SpinLabel, b: SpinLabel, c: SpinLabel) -> usize {
    4 * a.index() + 2 * b.index() + c.index()
}

/// Two-party state `d₁|↑↑⟩ + d₂|↑↓⟩ + d₃|↓↑⟩ + d₄|↓↓⟩` of B and C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BcState {
    d: [C64; 4],
}

impl BcState {
    pub fn new(d: [C64; 4]) -> Result<Self> {
        Ok(BcState { d: renormalise(d)? })
    }

    /// `cos η|↑↑⟩ + e^{iβ} sin η|↓↓⟩`.
    pub fn correlated(eta: f64, beta: f64) -> Self {
        let (s, c) = eta.sin_cos();
        BcState { d: [real(c), real(0.0), real(0.0), C64::from_polar(s, beta)] }
    }

    pub fn coefficients(&self) -> &[C64; 4] {
        &self.d
    }
}

/// A spin in-state: a single pure state or a statistical mixture of them.
pub trait InState {
    /// Mixture weights (summing to one) and pure components.
    fn components(&self) -> Vec<(f64, &TripartiteSpinState)>;

    /// `Σ p_k |S_k⟩⟨S_k|`.
    fn in_matrix(&self) -> CMatrix {
        self.components()
            .into_iter()
            .fold(CMatrix::zeros(8), |acc, (p, s)| &acc + &s.projector().scale_real(p))
    }
}

impl InState for TripartiteSpinState {
    fn components(&self) -> Vec<(f64, &TripartiteSpinState)> {
        vec![(1.0, self)]
    }
}

/// Weighted ensemble of pure three-party states.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinEnsemble {
    members: Vec<(f64, TripartiteSpinState)>,
}

impl SpinEnsemble {
    pub fn new(members: Vec<(f64, TripartiteSpinState)>) -> Result<Self> {
        if members.is_empty() || members.iter().any(|(p, _)| !(*p >= 0.0)) {
            return Err(Error::InvalidArgument("ensemble weights must be nonnegative".into()));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("ensemble weights sum to {total}, not 1")));
        }
        Ok(SpinEnsemble { members })
    }

    /// A in the unpolarised mixture `½(|↑⟩⟨↑| + |↓⟩⟨↓|)`, BC in the pure state `d`.
    pub fn mixture_bc(d: &BcState) -> Self {
        SpinEnsemble {
            members: vec![
                (0.5, TripartiteSpinState::product_a_bc(SpinLabel::Up, d)),
                (0.5, TripartiteSpinState::product_a_bc(SpinLabel::Down, d)),
            ],
        }
    }

    pub fn members(&self) -> &[(f64, TripartiteSpinState)] {
        &self.members
    }
}

impl InState for SpinEnsemble {
    fn components(&self) -> Vec<(f64, &TripartiteSpinState)> {
        self.members.iter().map(|(p, s)| (*p, s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Party::{A, B, C};
    use std::f64::consts::PI;

    fn half() -> CMatrix {
        CMatrix::diag(&[0.5, 0.5])
    }

    #[test]
    fn ghz_marginals_are_maximally_mixed() {
        let ghz = TripartiteSpinState::ghz();
        let norm: f64 = ghz.coefficients().iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        for p in [A, B, C] {
            assert!(ghz.reduced(&[p]).unwrap().matrix().max_abs_diff(&half()) < 1e-15);
        }
    }

    #[test]
    fn w_marginals() {
        let w = TripartiteSpinState::w();
        let want = CMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0]);
        for p in [A, B, C] {
            assert!(w.reduced(&[p]).unwrap().matrix().max_abs_diff(&want) < 1e-15);
        }
    }

    #[test]
    fn a_psi_coefficient_placement() {
        let (alpha, eta) = (0.3, 1.1);
        let s = TripartiteSpinState::a_psi(alpha, eta);
        let c = s.coefficients();
        assert_eq!(c[1].re, alpha.cos() * eta.cos());
        assert_eq!(c[2].re, alpha.cos() * eta.sin());
        assert_eq!(c[5].re, alpha.sin() * eta.cos());
        assert_eq!(c[6].re, alpha.sin() * eta.sin());
        for k in [0, 3, 4, 7] {
            assert_eq!(c[k], real(0.0));
        }
    }

    #[test]
    fn bell_pairs_reduce_to_bell_projectors() {
        let r = FRAC_1_SQRT_2;
        let z = real(0.0);
        let bell = |v: [f64; 4]| CMatrix::outer(&v.map(real));
        let psi_p = bell([0.0, r, r, 0.0]);
        let psi_m = bell([0.0, -r, r, 0.0]);
        let phi_p = bell([r, 0.0, 0.0, r]);
        let phi_m = bell([-r, 0.0, 0.0, r]);
        let alpha = 0.7;
        let cases = [
            (TripartiteSpinState::a_psi(alpha, PI / 4.0), psi_p),
            (TripartiteSpinState::a_psi(alpha, 3.0 * PI / 4.0), psi_m),
            (TripartiteSpinState::a_phi(alpha, PI / 4.0), phi_p),
            (TripartiteSpinState::a_phi(alpha, 3.0 * PI / 4.0), phi_m),
        ];
        for (s, want) in cases {
            let bc = s.reduced(&[B, C]).unwrap();
            assert!(bc.matrix().max_abs_diff(&want) < 1e-15);
        }
        let _ = z;
    }

    #[test]
    fn alice_marginal_of_bell_products() {
        for alpha in [0.0f64, 0.4, 1.3, 2.9] {
            let want = CMatrix::from_real_rows(&[
                [alpha.cos().powi(2), 0.5 * (2.0 * alpha).sin()],
                [0.5 * (2.0 * alpha).sin(), alpha.sin().powi(2)],
            ]);
            for s in [
                TripartiteSpinState::a_psi(alpha, PI / 4.0),
                TripartiteSpinState::a_phi(alpha, 3.0 * PI / 4.0),
            ] {
                assert!(s.reduced(&[A]).unwrap().matrix().max_abs_diff(&want) < 1e-15);
            }
        }
        let up = TripartiteSpinState::a_psi(0.0, 0.3).reduced(&[A]).unwrap();
        assert!(up.matrix().max_abs_diff(&CMatrix::diag(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn general_renormalises() {
        let ghz = TripartiteSpinState::ghz();
        let same = TripartiteSpinState::general(*ghz.coefficients()).unwrap();
        assert_eq!(same, ghz);
        let doubled = ghz.coefficients().map(|c| c * 2.0);
        let back = TripartiteSpinState::general(doubled).unwrap();
        for (a, b) in back.coefficients().iter().zip(ghz.coefficients()) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(TripartiteSpinState::general([real(0.0); 8]).is_err());
        assert!(BcState::new([real(0.0); 4]).is_err());
    }

    #[test]
    fn bc_mixture_in_matrix() {
        let (eta, beta) = (0.6, 1.9);
        let mix = SpinEnsemble::mixture_bc(&BcState::correlated(eta, beta));
        let rho = mix.in_matrix();
        let bc = CMatrix::from_rows(&[
            [real(eta.cos().powi(2)), real(0.0), real(0.0), C64::from_polar(eta.sin() * eta.cos(), -beta)],
            [real(0.0); 4],
            [real(0.0); 4],
            [C64::from_polar(eta.sin() * eta.cos(), beta), real(0.0), real(0.0), real(eta.sin().powi(2))],
        ]);
        let want = half().kron(&bc);
        assert!(rho.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn ensemble_weights_validated() {
        let g = TripartiteSpinState::ghz();
        assert!(SpinEnsemble::new(vec![(0.5, g), (0.4, g)]).is_err());
        assert!(SpinEnsemble::new(vec![(1.5, g), (-0.5, g)]).is_err());
        assert!(SpinEnsemble::new(vec![(1.0, g)]).is_ok());
    }
}
