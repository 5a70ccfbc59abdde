//! Out-state spin density matrices.
//!
//! With the momentum delta functions resolved, the out-state spin operator is
//!
//! ```text
//! ρ_ABC = [P_in + w·R] / (1 + w·Tr R),     w = T·P / (128 π² E³ V)
//! R[(r s c), (r' s' c')] = Σ c_{s1 s2 c} c̄_{s1' s2' c'} ∫dΩ M(s1 s2 → r s) M̄(s1' s2' → r' s')
//! ```
//!
//! where `P_in = |S⟩⟨S|`, the in/out cross term vanishes, and every factor of
//! the spectator energy and of `V³` cancels between numerator and trace. In the
//! transition sector the A and B slots hold the muon and antimuon spins.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::amplitude::{AngularOverlapTable, SpinConfig, SpinLabel};
use crate::error::{Error, Result};
use crate::kinematics::KinematicSetup;
use crate::numerics::{CMatrix, DensityMatrix, Party};
use crate::states::{basis_index, InState, TripartiteSpinState};

/// Target for `max_E w·Tr R` of the W state used by [`Regulators::default_for`].
pub const PERTURBATIVE_TARGET: f64 = 1e-3;

/// Finite volume `V` (MeV⁻³) and duration `T` (MeV⁻¹) standing in for the
/// squared delta functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regulators {
    volume: f64,
    time: f64,
}

impl Regulators {
    pub fn new(volume: f64, time: f64) -> Result<Self> {
        if !(volume.is_finite() && volume > 0.0 && time.is_finite() && time > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "regulators must be positive, got V = {volume}, T = {time}"
            )));
        }
        Ok(Regulators { volume, time })
    }

    /// `V = 1 MeV⁻³` and `T` such that the W state's `w·Tr R` peaks at
    /// [`PERTURBATIVE_TARGET`] over `E ∈ [1, 3]·m_μ`.
    pub fn default_for(setup: &KinematicSetup) -> Self {
        Self::perturbative(setup, 1.0, PERTURBATIVE_TARGET)
    }

    pub fn perturbative(setup: &KinematicSetup, volume: f64, target: f64) -> Self {
        let (me2, mm) = (setup.electron_mass().powi(2), setup.muon_mass());
        let e4 = setup.coupling_sq().powi(2);
        let steps = 20_000;
        let peak = (0..=steps)
            .map(|k| {
                let e = mm * (1.0 + 2.0 * k as f64 / steps as f64);
                let p = ((e - mm) * (e + mm)).max(0.0).sqrt();
                e4 * p * (mm * mm + 2.0 * e * e) * (e * e + 2.0 * me2) / (72.0 * PI * e.powi(7))
            })
            .fold(0.0, f64::max);
        Regulators { volume, time: target * volume / peak }
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// `w = T·P / (128 π² E³ V)`.
    pub fn mixing_weight(&self, setup: &KinematicSetup) -> f64 {
        let e = setup.energy();
        (self.time / self.volume) * setup.muon_momentum() / (128.0 * PI * PI * e * e * e)
    }
}

#[derive(Clone, Debug)]
pub struct OutStateSpinDensity {
    pub rho_abc: DensityMatrix,
    /// In-state norm in units of `8 E_q E² V³`.
    pub n_in: f64,
    /// Transition norm in the same units.
    pub n_trans: f64,
    pub mixing_weight: f64,
}

/// The transition operator `R` of one pure state, indexed `4r + 2s + c`.
pub fn transition_block(state: &TripartiteSpinState, table: &AngularOverlapTable) -> CMatrix {
    let c = state.coefficients();
    let mut out = CMatrix::zeros(8);
    for row in 0..8 {
        let (r, s, sc) = split(row);
        for col in 0..8 {
            let (r2, s2, sc2) = split(col);
            let mut acc = C64::new(0.0, 0.0);
            for a1 in SpinLabel::BOTH {
                for a2 in SpinLabel::BOTH {
                    let ca = c[basis_index(a1, a2, sc)];
                    if ca == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for b1 in SpinLabel::BOTH {
                        for b2 in SpinLabel::BOTH {
                            let cb = c[basis_index(b1, b2, sc2)];
                            acc += ca
                                * cb.conj()
                                * table.get(
                                    SpinConfig::new(a1, a2, r, s),
                                    SpinConfig::new(b1, b2, r2, s2),
                                );
                        }
                    }
                }
            }
            out[(row, col)] = acc;
        }
    }
    out
}

fn split(i: usize) -> (SpinLabel, SpinLabel, SpinLabel) {
    (
        SpinLabel::from_index((i >> 2) & 1),
        SpinLabel::from_index((i >> 1) & 1),
        SpinLabel::from_index(i & 1),
    )
}

/// Ensemble-weighted `Σ p_k R_k`.
pub fn ensemble_transition<S: InState + ?Sized>(state: &S, table: &AngularOverlapTable) -> CMatrix {
    state
        .components()
        .into_iter()
        .fold(CMatrix::zeros(8), |acc, (p, s)| &acc + &transition_block(s, table).scale_real(p))
}

/// Normalised three-party spin density matrix after the collision.
///
/// A mixed in-state is propagated linearly and normalised once.
pub fn assemble_out_abc<S: InState + ?Sized>(
    state: &S,
    table: &AngularOverlapTable,
    reg: &Regulators,
) -> Result<OutStateSpinDensity> {
    let w = reg.mixing_weight(table.setup());
    let p_in = state.in_matrix();
    let r = ensemble_transition(state, table);
    let n_in = p_in.trace().re;
    let n_trans = w * r.trace().re;
    let total = &p_in + &r.scale_real(w);
    let rho_abc = DensityMatrix::new(total.scale_real(1.0 / (n_in + n_trans)))?;
    Ok(OutStateSpinDensity { rho_abc, n_in, n_trans, mixing_weight: w })
}

/// Spectator matrix after the collision.
pub fn rho_c_out<S: InState + ?Sized>(
    state: &S,
    table: &AngularOverlapTable,
    reg: &Regulators,
) -> Result<DensityMatrix> {
    assemble_out_abc(state, table, reg)?.rho_abc.reduce(&[Party::C])
}

/// Spectator matrix before the collision.
pub fn rho_c_in<S: InState + ?Sized>(state: &S) -> Result<DensityMatrix> {
    DensityMatrix::new(state.in_matrix())?.reduce(&[Party::C])
}

/// `Σ_{r,s} ∫dΩ Λ(r,s)` in its three-term form: the `↓↓` pair shares the
/// `↑↑` rate and `↓↑` shares the `↑↓` rate.
pub fn lambda_trace(state: &TripartiteSpinState, table: &AngularOverlapTable) -> Result<f64> {
    let c = real_coefficients(state)?;
    use SpinLabel::{Down as D, Up as U};
    let same = table.summed_final(U, U, U, U).re;
    let opposite = table.summed_final(U, D, U, D).re;
    let cross = table.summed_final(U, D, D, U).re;
    Ok((c[0] * c[0] + c[1] * c[1] + c[6] * c[6] + c[7] * c[7]) * same
        + (c[2] * c[2] + c[3] * c[3] + c[4] * c[4] + c[5] * c[5]) * opposite
        + 2.0 * (c[2] * c[4] + c[3] * c[5]) * cross)
}

fn real_coefficients(state: &TripartiteSpinState) -> Result<[f64; 8]> {
    if !state.is_real() {
        return Err(Error::Unsupported(
            "the element-list form of ρ_AC takes real coefficients; use assemble_out_abc".into(),
        ));
    }
    Ok(state.coefficients().map(|z| z.re))
}

/// ρ_AC from the explicit in-block and transition element list, ordered
/// `(s_A s_C) = ↑↑, ↑↓, ↓↑, ↓↓`. Real coefficients only.
pub fn rho_ac_paper(
    state: &TripartiteSpinState,
    table: &AngularOverlapTable,
    reg: &Regulators,
) -> Result<DensityMatrix> {
    use SpinLabel::{Down as D, Up as U};
    let c = real_coefficients(state)?;
    let [c1, c2, c3, c4, c5, c6, c7, c8] = c;

    // Σ_s ∫dΩ M(x → r s) M̄(y → r' s)
    let ov = |x: (SpinLabel, SpinLabel), y: (SpinLabel, SpinLabel), r: SpinLabel, r2: SpinLabel| {
        SpinLabel::BOTH
            .iter()
            .map(|&s| table.get(SpinConfig::new(x.0, x.1, r, s), SpinConfig::new(y.0, y.1, r2, s)))
            .sum::<C64>()
    };
    let (uu, ud, du, dd) = ((U, U), (U, D), (D, U), (D, D));

    let diag_like = |r: SpinLabel, k: [f64; 4], cross: f64| {
        ov(uu, uu, r, r) * k[0]
            + ov(ud, ud, r, r) * k[1]
            + ov(du, du, r, r) * k[2]
            + ov(dd, dd, r, r) * k[3]
            + ov(ud, du, r, r) * cross
    };
    let l11 = diag_like(U, [c1 * c1, c3 * c3, c5 * c5, c7 * c7], 2.0 * c3 * c5);
    let l22 = diag_like(U, [c2 * c2, c4 * c4, c6 * c6, c8 * c8], 2.0 * c4 * c6);
    let l33 = diag_like(D, [c1 * c1, c3 * c3, c5 * c5, c7 * c7], 2.0 * c3 * c5);
    let l44 = diag_like(D, [c2 * c2, c4 * c4, c6 * c6, c8 * c8], 2.0 * c4 * c6);
    let l12 = diag_like(U, [c1 * c2, c3 * c4, c5 * c6, c7 * c8], c3 * c6 + c4 * c5);
    let l34 = diag_like(D, [c1 * c2, c3 * c4, c5 * c6, c7 * c8], c3 * c6 + c4 * c5);

    let flip_pair = |k_ud: f64, k_du: f64| ov(uu, ud, U, D) * k_ud + ov(uu, du, U, D) * k_du;
    let l13 = flip_pair(c1 * c3 + c5 * c7, c1 * c5 + c3 * c7);
    let l14 = flip_pair(c1 * c4 + c5 * c8, c1 * c6 + c3 * c8);
    let l23 = flip_pair(c2 * c3 + c6 * c7, c2 * c5 + c4 * c7);
    let l24 = flip_pair(c2 * c4 + c6 * c8, c2 * c6 + c4 * c8);

    let upper = [[l11, l12, l13, l14], [C64::default(), l22, l23, l24], [C64::default(), C64::default(), l33, l34], [C64::default(); 4]];
    let mut trans = CMatrix::from_fn(4, |i, j| if i <= j { if i == j && i == 3 { l44 } else { upper[i][j] } } else { C64::default() });
    for i in 0..4 {
        for j in 0..i {
            trans[(i, j)] = trans[(j, i)].conj();
        }
    }

    let in_block = CMatrix::from_real_rows(&[
        [c1 * c1 + c3 * c3, c1 * c2 + c3 * c4, c1 * c5 + c3 * c7, c1 * c6 + c3 * c8],
        [c1 * c2 + c3 * c4, c2 * c2 + c4 * c4, c2 * c5 + c4 * c7, c2 * c6 + c4 * c8],
        [c1 * c5 + c3 * c7, c2 * c5 + c4 * c7, c5 * c5 + c7 * c7, c5 * c6 + c7 * c8],
        [c1 * c6 + c3 * c8, c2 * c6 + c4 * c8, c5 * c6 + c7 * c8, c6 * c6 + c8 * c8],
    ]);

    let w = reg.mixing_weight(table.setup());
    let norm = 1.0 + w * lambda_trace(state, table)?;
    let total = &in_block + &trans.scale_real(w);
    DensityMatrix::new(total.scale_real(1.0 / norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::MUON_MASS_MEV;
    use crate::numerics::QuadratureGrid;
    use crate::states::{BcState, SpinEnsemble};
    use std::f64::consts::PI;

    fn table(x: f64) -> AngularOverlapTable {
        let s = KinematicSetup::at_energy(x * MUON_MASS_MEV).unwrap();
        AngularOverlapTable::build(&s, &QuadratureGrid::default())
    }

    #[test]
    fn vanishing_weight_leaves_the_in_state() {
        let t = table(1.4);
        let reg = Regulators::new(1.0, 1e-30).unwrap();
        let w = TripartiteSpinState::w();
        let out = assemble_out_abc(&w, &t, &reg).unwrap();
        assert!(out.rho_abc.matrix().max_abs_diff(&w.projector()) < 1e-15);
    }

    #[test]
    fn ghz_spectator_is_untouched() {
        let ghz = TripartiteSpinState::ghz();
        for x in [1.0, 1.01, 1.5, 4.0] {
            let t = table(x);
            for time in [1.0, 3e5, 1e12] {
                let reg = Regulators::new(1.0, time).unwrap();
                let c = rho_c_out(&ghz, &t, &reg).unwrap();
                assert!(c.matrix().max_abs_diff(&CMatrix::diag(&[0.5, 0.5])) <= 1e-12);
            }
        }
    }

    #[test]
    fn w_normalisation_matches_lambda_form() {
        let t = table(1.7);
        let reg = Regulators::default_for(t.setup());
        let w = TripartiteSpinState::w();
        let out = assemble_out_abc(&w, &t, &reg).unwrap();
        let lambda = lambda_trace(&w, &t).unwrap() * reg.mixing_weight(t.setup());
        assert!((out.n_trans / lambda - 1.0).abs() <= 1e-10);
        assert!((out.n_in - 1.0).abs() < 1e-15);
    }

    #[test]
    fn element_list_agrees_with_first_principles() {
        let t = table(1.3);
        let reg = Regulators::new(1.0, 1e9).unwrap();
        let states = [
            TripartiteSpinState::w(),
            TripartiteSpinState::ghz(),
            TripartiteSpinState::a_psi(PI / 4.0, PI / 4.0),
            TripartiteSpinState::a_phi(0.3, 3.0 * PI / 4.0),
            TripartiteSpinState::general([0.1, -0.4, 0.3, 0.2, 0.5, -0.1, 0.6, 0.25].map(|x| C64::new(x, 0.0)))
                .unwrap(),
        ];
        for s in states {
            let paper = rho_ac_paper(&s, &t, &reg).unwrap();
            let general = assemble_out_abc(&s, &t, &reg).unwrap().rho_abc.reduce(&[Party::A, Party::C]).unwrap();
            assert!(paper.matrix().max_abs_diff(general.matrix()) <= 1e-10, "{s:?}");
        }
    }

    #[test]
    fn ghz_in_block() {
        let t = table(1.0);
        let reg = Regulators::default_for(t.setup());
        let p = rho_ac_paper(&TripartiteSpinState::ghz(), &t, &reg).unwrap();
        assert!(p.matrix().max_abs_diff(&CMatrix::diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
    }

    #[test]
    fn element_list_rejects_complex_coefficients() {
        let t = table(1.3);
        let reg = Regulators::default_for(t.setup());
        let mut c = [C64::new(0.5, 0.0); 8];
        c[3] = C64::new(0.0, 0.5);
        let s = TripartiteSpinState::general(c).unwrap();
        assert!(matches!(rho_ac_paper(&s, &t, &reg), Err(Error::Unsupported(_))));
        assert!(assemble_out_abc(&s, &t, &reg).is_ok());
    }

    #[test]
    fn spectator_energy_cancels_exactly() {
        let s = KinematicSetup::at_energy(1.2 * MUON_MASS_MEV).unwrap();
        let grid = QuadratureGrid::default();
        let state = TripartiteSpinState::a_psi(0.4, PI / 4.0);
        let reg = Regulators::default_for(&s);
        let a = rho_c_out(&state, &AngularOverlapTable::build(&s, &grid), &reg).unwrap();
        let s10 = s.with_spectator_energy(10.0 * s.spectator_energy()).unwrap();
        let b = rho_c_out(&state, &AngularOverlapTable::build(&s10, &grid), &reg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn regulators_enter_only_through_their_ratio() {
        let t = table(1.6);
        let state = TripartiteSpinState::w();
        let reg = Regulators::default_for(t.setup());
        let scaled = Regulators::new(7.0 * reg.volume(), 7.0 * reg.time()).unwrap();
        let a = assemble_out_abc(&state, &t, &reg).unwrap().rho_abc;
        let b = assemble_out_abc(&state, &t, &scaled).unwrap().rho_abc;
        assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
    }

    #[test]
    fn default_regulators_are_perturbative() {
        let t = table(1.18);
        let reg = Regulators::default_for(t.setup());
        let out = assemble_out_abc(&TripartiteSpinState::w(), &t, &reg).unwrap();
        assert!((out.n_trans / PERTURBATIVE_TARGET - 1.0).abs() < 1e-3, "{}", out.n_trans);
        assert!(Regulators::new(0.0, 1.0).is_err());
    }

    #[test]
    fn bc_mixture_leaves_spectator_unchanged() {
        let t = table(1.25);
        let reg = Regulators::new(1.0, 1e8).unwrap();
        let mix = SpinEnsemble::mixture_bc(&BcState::correlated(0.5, 1.2));
        let before = rho_c_in(&mix).unwrap();
        let after = rho_c_out(&mix, &t, &reg).unwrap();
        assert!(before.matrix().max_abs_diff(after.matrix()) <= 1e-12);
    }
}
