//! Entropies, spectator spin shifts, cross sections and closed-form spectator
//! matrix elements.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::amplitude::AngularOverlapTable;
use crate::density::{ensemble_transition, rho_c_in, rho_c_out, Regulators};
use crate::error::{Error, Result};
use crate::kinematics::KinematicSetup;
use crate::numerics::{CMatrix, DensityMatrix, QuadratureGrid};
use crate::states::{BellSign, InState};

/// `−Tr ρ ln ρ` in nats.
pub fn entropy_vn(rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.spectrum()?.into_iter().filter(|&l| l > 0.0).map(|l| -l * l.ln()).sum())
}

/// Length of the Bloch vector of a qubit density matrix.
pub fn bloch_radius(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let z = (m[(0, 0)] - m[(1, 1)]).re;
    (z * z + 4.0 * m[(0, 1)].norm_sqr()).sqrt().min(1.0)
}

/// `ln 2 − S` for a qubit with Bloch radius `r`, accurate for small `r`.
fn qubit_entropy_deficit(r: f64) -> f64 {
    0.5 * ((1.0 + r) * r.ln_1p() + if r < 1.0 { (1.0 - r) * (-r).ln_1p() } else { 0.0 })
}

/// `S(after) − S(before)`. For qubits this goes through the Bloch radii, so a
/// tiny change from a maximally mixed state is not lost to cancellation.
pub fn entropy_change(before: &DensityMatrix, after: &DensityMatrix) -> Result<f64> {
    if before.dim() == 2 && after.dim() == 2 {
        after.spectrum()?;
        return Ok(qubit_entropy_deficit(bloch_radius(before)) - qubit_entropy_deficit(bloch_radius(after)));
    }
    Ok(entropy_vn(after)? - entropy_vn(before)?)
}

/// Spectator entropy after minus before the collision.
pub fn delta_entropy_c<S: InState + ?Sized>(
    state: &S,
    table: &AngularOverlapTable,
    reg: &Regulators,
) -> Result<f64> {
    entropy_change(&rho_c_in(state)?, &rho_c_out(state, table, reg)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn pauli(self) -> CMatrix {
        let (o, i) = (C64::new(0.0, 0.0), C64::new(0.0, 1.0));
        match self {
            Axis::X => CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]),
            Axis::Y => CMatrix::from_rows(&[[o, -i], [i, o]]),
            Axis::Z => CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]),
        }
    }
}

/// `⟨S_axis⟩ = ½ Tr(σ_axis ρ)`.
pub fn spin_expectation(rho: &DensityMatrix, axis: Axis) -> f64 {
    0.5 * rho.expectation(&axis.pauli()).re
}

/// Shift of the spectator spin expectation caused by the collision.
pub fn delta_spin<S: InState + ?Sized>(
    state: &S,
    table: &AngularOverlapTable,
    reg: &Regulators,
    axis: Axis,
) -> Result<f64> {
    let out = rho_c_out(state, table, reg)?;
    let before = rho_c_in(state)?;
    Ok(spin_expectation(&out, axis) - spin_expectation(&before, axis))
}

/// Parameters of the closed-form spectator matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormInputs {
    pub energy: f64,
    pub electron_mass: f64,
    pub muon_mass: f64,
    pub coupling_sq: f64,
    pub volume: f64,
    pub time: f64,
}

impl ClosedFormInputs {
    pub fn new(setup: &KinematicSetup, reg: &Regulators) -> Self {
        ClosedFormInputs {
            energy: setup.energy(),
            electron_mass: setup.electron_mass(),
            muon_mass: setup.muon_mass(),
            coupling_sq: setup.coupling_sq(),
            volume: reg.volume(),
            time: reg.time(),
        }
    }

    /// `ℰ² = e⁴ T √(E² − m_μ²) (m_μ² + 2E²)`.
    pub fn script_e_sq(&self) -> f64 {
        let (e, m) = (self.energy, self.muon_mass);
        let p = ((e - m) * (e + m)).max(0.0).sqrt();
        self.coupling_sq.powi(2) * self.time * p * (m * m + 2.0 * e * e)
    }

    fn vol_term(&self) -> f64 {
        PI * self.volume * self.energy.powi(7)
    }

    fn bell_denominator(&self) -> f64 {
        let (e2, me2) = (self.energy.powi(2), self.electron_mass.powi(2));
        96.0 * self.vol_term() + (me2 + 2.0 * e2) * self.script_e_sq()
    }
}

/// Diagonal `(f₃, f₄)` of the W state's spectator matrix.
pub fn closed_f3f4(inputs: &ClosedFormInputs) -> (f64, f64) {
    let (e2, me2) = (inputs.energy.powi(2), inputs.electron_mass.powi(2));
    let (v, s) = (inputs.vol_term(), inputs.script_e_sq());
    let den = 72.0 * v + (2.0 * me2 + e2) * s;
    ((24.0 * v + e2 * s) / den, (48.0 * v + 2.0 * me2 * s) / den)
}

/// `(g₁, g₂, g₃^±)` for `A^α ⊗ Ψ^±`. The spectator matrix is
/// `[[g₁, ½ sin 2α g₃], [½ sin 2α g₃, g₂]]`; for `Φ^±` the diagonal swaps.
pub fn closed_g(inputs: &ClosedFormInputs, alpha: f64, sign: BellSign) -> (f64, f64, f64) {
    let (e2, me2) = (inputs.energy.powi(2), inputs.electron_mass.powi(2));
    let (v, s) = (inputs.vol_term(), inputs.script_e_sq());
    let den = inputs.bell_denominator();
    let (sa, ca) = alpha.sin_cos();
    let g1 = (48.0 * v + s * (me2 * ca * ca + 2.0 * e2 * sa * sa)) / den;
    let g2 = (48.0 * v + s * (me2 * sa * sa + 2.0 * e2 * ca * ca)) / den;
    (g1, g2, sign.sign() * me2 * s / den)
}

/// `h₃ = (m_e² − 2E²) ℰ² / den`, so that `g₁ − g₂ = cos 2α h₃`.
pub fn closed_h3(inputs: &ClosedFormInputs) -> f64 {
    let (e2, me2) = (inputs.energy.powi(2), inputs.electron_mass.powi(2));
    (me2 - 2.0 * e2) * inputs.script_e_sq() / inputs.bell_denominator()
}

/// Predicted spectator matrix for the Bell-product families.
pub fn closed_bell_rho_c(inputs: &ClosedFormInputs, alpha: f64, sign: BellSign, phi_family: bool) -> CMatrix {
    let (g1, g2, g3) = closed_g(inputs, alpha, sign);
    let off = 0.5 * (2.0 * alpha).sin() * g3;
    let (d0, d1) = if phi_family { (g2, g1) } else { (g1, g2) };
    CMatrix::from_real_rows(&[[d0, off], [off, d1]])
}

/// `σ = (P/p) / (64 π² s) · Σ_k p_k Σ_{r,s} ∫dΩ |Σ c M|²` from an existing table.
pub fn cross_section_from_table<S: InState + ?Sized>(state: &S, table: &AngularOverlapTable) -> f64 {
    let setup = table.setup();
    let p_out = setup.muon_momentum();
    if p_out == 0.0 {
        return 0.0;
    }
    let rate = ensemble_transition(state, table).trace().re;
    p_out / setup.electron_momentum() * rate / (64.0 * PI * PI * setup.mandelstam_s())
}

pub fn cross_section<S: InState + ?Sized>(state: &S, setup: &KinematicSetup, grid: &QuadratureGrid) -> f64 {
    cross_section_from_table(state, &AngularOverlapTable::build(setup, grid))
}

/// `e⁴ (m_e² + E²)(m_μ² + 2E²) / (48 π E⁶) · √((E² − m_μ²)/(E² − m_e²))`.
pub fn cross_section_w_closed(setup: &KinematicSetup) -> f64 {
    let (e2, me2, mm2) = (
        setup.energy().powi(2),
        setup.electron_mass().powi(2),
        setup.muon_mass().powi(2),
    );
    let e4 = setup.coupling_sq().powi(2);
    e4 * (me2 + e2) * (mm2 + 2.0 * e2) / (48.0 * PI * e2.powi(3)) * ((e2 - mm2).max(0.0) / (e2 - me2)).sqrt()
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableRecord {
    pub energy_over_mmu: f64,
    pub sigma: f64,
    pub ds_c: f64,
    pub dsx: f64,
    pub dsy: f64,
    pub dsz: f64,
    pub alpha: f64,
    pub eta: f64,
    pub state: String,
}

impl ObservableRecord {
    pub fn evaluate<S: InState + ?Sized>(
        tag: &str,
        state: &S,
        table: &AngularOverlapTable,
        reg: &Regulators,
        alpha: f64,
        eta: f64,
    ) -> Result<Self> {
        let out = rho_c_out(state, table, reg)?;
        let before = rho_c_in(state)?;
        let shift = |a| spin_expectation(&out, a) - spin_expectation(&before, a);
        let record = ObservableRecord {
            energy_over_mmu: table.setup().energy() / table.setup().muon_mass(),
            sigma: cross_section_from_table(state, table),
            ds_c: entropy_change(&before, &out)?,
            dsx: shift(Axis::X),
            dsy: shift(Axis::Y),
            dsz: shift(Axis::Z),
            alpha,
            eta,
            state: tag.to_string(),
        };
        if ![record.ds_c, record.dsx, record.dsy, record.dsz].iter().all(|v| v.is_finite() && v.abs() <= 1.0) {
            return Err(Error::InvalidArgument(format!("non-finite observables at E = {}", record.energy_over_mmu)));
        }
        Ok(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::MUON_MASS_MEV;
    use crate::states::TripartiteSpinState;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

    fn setup(x: f64) -> KinematicSetup {
        KinematicSetup::at_energy(x * MUON_MASS_MEV).unwrap()
    }

    fn table(x: f64) -> AngularOverlapTable {
        AngularOverlapTable::build(&setup(x), &QuadratureGrid::default())
    }

    #[test]
    fn entropy_of_simple_matrices() {
        let half = DensityMatrix::new(CMatrix::diag(&[0.5, 0.5])).unwrap();
        assert!((entropy_vn(&half).unwrap() - LN_2).abs() < 1e-15);
        let w = DensityMatrix::new(CMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0])).unwrap();
        let exact = 3f64.ln() - 2.0 / 3.0 * LN_2;
        assert!((entropy_vn(&w).unwrap() - exact).abs() < 1e-14);
        let pure = TripartiteSpinState::ghz().density().unwrap();
        assert!(entropy_vn(&pure).unwrap().abs() < 1e-12);
    }

    #[test]
    fn entropy_change_matches_direct_difference() {
        let a = DensityMatrix::new(CMatrix::diag(&[0.3, 0.7])).unwrap();
        let b = DensityMatrix::new(CMatrix::from_real_rows(&[[0.45, 0.1], [0.1, 0.55]])).unwrap();
        let direct = entropy_vn(&b).unwrap() - entropy_vn(&a).unwrap();
        assert!((entropy_change(&a, &b).unwrap() - direct).abs() < 1e-15);
        let half = DensityMatrix::new(CMatrix::diag(&[0.5, 0.5])).unwrap();
        let near = DensityMatrix::new(CMatrix::from_real_rows(&[[0.5, 1e-9], [1e-9, 0.5]])).unwrap();
        let d = entropy_change(&half, &near).unwrap();
        assert!(d < 0.0 && (d / -2e-18 - 1.0).abs() < 1e-6, "{d:e}");
    }

    #[test]
    fn threshold_values() {
        let s = setup(1.0);
        let inputs = ClosedFormInputs::new(&s, &Regulators::new(1.0, 1e9).unwrap());
        assert_eq!(inputs.script_e_sq(), 0.0);
        let (f3, f4) = closed_f3f4(&inputs);
        assert!((f3 - 1.0 / 3.0).abs() < 1e-15 && (f4 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(closed_g(&inputs, 0.3, BellSign::Plus).2, 0.0);
        assert_eq!(cross_section_w_closed(&s), 0.0);
        assert_eq!(cross_section(&TripartiteSpinState::w(), &s, &QuadratureGrid::default()), 0.0);
    }

    #[test]
    fn closed_forms_sum_to_one_and_have_the_right_limit() {
        let s = setup(1.7);
        for time in [1.0, 1e5, 1e30] {
            let inputs = ClosedFormInputs::new(&s, &Regulators::new(1.0, time).unwrap());
            let (f3, f4) = closed_f3f4(&inputs);
            assert!((f3 + f4 - 1.0).abs() < 1e-14);
            let (g1, g2, _) = closed_g(&inputs, 0.7, BellSign::Minus);
            assert!((g1 + g2 - 1.0).abs() < 1e-14);
        }
        let inputs = ClosedFormInputs::new(&s, &Regulators::new(1.0, 1e40).unwrap());
        let e2 = s.energy().powi(2);
        let limit = e2 / (2.0 * s.electron_mass().powi(2) + e2);
        assert!((closed_f3f4(&inputs).0 / limit - 1.0).abs() < 1e-12);
    }

    #[test]
    fn h3_dominates_g3() {
        let s = setup(1.2);
        let inputs = ClosedFormInputs::new(&s, &Regulators::default_for(&s));
        let ratio = (closed_h3(&inputs) / closed_g(&inputs, 0.0, BellSign::Plus).2).abs();
        let expected = (2.0 * s.energy().powi(2) - s.electron_mass().powi(2)) / s.electron_mass().powi(2);
        assert!((ratio / expected - 1.0).abs() < 1e-12);
        assert!(ratio > 1e5 && ratio < 1.3e5);
    }

    #[test]
    fn w_cross_section_reference_value() {
        let sigma = cross_section_w_closed(&setup(2.0));
        assert!((sigma / 2.4315e-9 - 1.0).abs() < 1e-3, "{sigma}");
    }

    #[test]
    fn ghz_and_w_spin_shifts() {
        let t = table(1.3);
        let reg = Regulators::default_for(t.setup());
        for axis in Axis::ALL {
            assert!(delta_spin(&TripartiteSpinState::ghz(), &t, &reg, axis).unwrap().abs() < 1e-12);
        }
        assert!(delta_entropy_c(&TripartiteSpinState::ghz(), &t, &reg).unwrap().abs() < 1e-12);
        let w = TripartiteSpinState::w();
        assert!(delta_spin(&w, &t, &reg, Axis::X).unwrap().abs() < 1e-12);
        assert!(delta_spin(&w, &t, &reg, Axis::Y).unwrap().abs() < 1e-12);
        assert!(delta_entropy_c(&w, &t, &reg).unwrap() > 0.0);
    }

    #[test]
    fn bell_spectator_matches_closed_form() {
        for x in [1.05, 1.4, 2.5] {
            let t = table(x);
            let reg = Regulators::default_for(t.setup());
            let inputs = ClosedFormInputs::new(t.setup(), &reg);
            for sign in [BellSign::Plus, BellSign::Minus] {
                for alpha in [0.0, 0.3, FRAC_PI_4, 1.2] {
                    let psi = rho_c_out(&TripartiteSpinState::a_psi(alpha, sign.eta()), &t, &reg).unwrap();
                    let phi = rho_c_out(&TripartiteSpinState::a_phi(alpha, sign.eta()), &t, &reg).unwrap();
                    let d_psi = psi.matrix().max_abs_diff(&closed_bell_rho_c(&inputs, alpha, sign, false));
                    let d_phi = phi.matrix().max_abs_diff(&closed_bell_rho_c(&inputs, alpha, sign, true));
                    assert!(d_psi < 1e-8 && d_phi < 1e-8, "{x} {sign:?} {alpha}: {d_psi:e} {d_phi:e}");
                }
            }
        }
    }

    #[test]
    fn spin_shift_zeros_on_the_alpha_grid() {
        let t = table(1.5);
        let reg = Regulators::default_for(t.setup());
        for n in 0..4 {
            let a = n as f64 * FRAC_PI_2;
            let s = TripartiteSpinState::a_psi(a, BellSign::Plus.eta());
            assert!(delta_spin(&s, &t, &reg, Axis::X).unwrap().abs() <= 1e-12);
            let s = TripartiteSpinState::a_phi(a + FRAC_PI_4, BellSign::Minus.eta());
            assert!(delta_spin(&s, &t, &reg, Axis::Z).unwrap().abs() <= 1e-12);
            assert!(delta_spin(&s, &t, &reg, Axis::Y).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn bell_products_lose_mixedness() {
        let t = table(1.2);
        let reg = Regulators::new(1.0, 1e7).unwrap();
        for alpha in [0.0, 0.4, 1.0] {
            let s = TripartiteSpinState::a_psi(alpha, BellSign::Minus.eta());
            let out = rho_c_out(&s, &t, &reg).unwrap();
            assert!(entropy_vn(&out).unwrap() <= LN_2);
        }
    }
}
