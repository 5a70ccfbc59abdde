//! Spin density matrices of a spectator particle entangled with the incoming
//! pair of the tree-level QED process e⁺e⁻ → μ⁺μ⁻.
//!
//! Three spin-½ particles share an entangled spin state: the electron (A),
//! the positron (B) and a spectator (C) that takes no part in the collision.
//! The crate builds the out-state spin density matrix from the explicit Dirac
//! spinors and the s-channel amplitude, reduces it to the spectator, and
//! derives entropy variations, spin-expectation shifts and cross sections.
//!
//! Spin labels are projections on the z axis (the beam axis), not helicities.
//! Three-party kets are ordered `|s_A s_B s_C⟩` with ↑ = 0 and ↓ = 1, so the
//! basis index of a ket is `4·s_A + 2·s_B + s_C`:
//!
//! ```text
//! 0 ↑↑↑   1 ↑↑↓   2 ↑↓↑   3 ↑↓↓   4 ↓↑↑   5 ↓↑↓   6 ↓↓↑   7 ↓↓↓
//! ```
//!
//! After the collision A and B label the muon and the antimuon.
//!
//! ```
//! use qed_spectator::prelude::*;
//!
//! let setup = KinematicSetup::at_energy(1.2 * MUON_MASS_MEV).unwrap();
//! let table = AngularOverlapTable::build(&setup, &QuadratureGrid::default());
//! let reg = Regulators::default_for(&setup);
//! let w = TripartiteSpinState::w();
//! let rho_c = rho_c_out(&w, &table, &reg).unwrap();
//! let (f3, f4) = closed_f3f4(&ClosedFormInputs::new(&setup, &reg));
//! assert!((rho_c.matrix()[(0, 0)].re - f3).abs() < 1e-12);
//! assert!((rho_c.matrix()[(1, 1)].re - f4).abs() < 1e-12);
//! ```

pub mod amplitude;
pub mod density;
pub mod error;
pub mod kinematics;
pub mod numerics;
pub mod observables;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub mod prelude {
    pub use crate::amplitude::{amplitude, AngularOverlapTable, SpinConfig, SpinLabel};
    pub use crate::density::{
        assemble_out_abc, rho_ac_paper, rho_c_in, rho_c_out, OutStateSpinDensity, Regulators,
    };
    pub use crate::error::{Error, Result};
    pub use crate::kinematics::{
        build_spinor, four_momenta, FourVector, GammaSet, KinematicSetup, Species,
        ALPHA_EM, ELECTRON_MASS_MEV, MUON_MASS_MEV,
    };
    pub use crate::numerics::{
        eig_hermitian, integrate_sphere, partial_trace, CMatrix, DensityMatrix, Party,
        QuadratureGrid,
    };
    pub use crate::observables::{
        closed_f3f4, closed_g, closed_h3, cross_section, cross_section_w_closed,
        delta_entropy_c, delta_spin, entropy_vn, Axis, ClosedFormInputs, ObservableRecord,
    };
    pub use crate::states::{BcState, BellSign, InState, SpinEnsemble, TripartiteSpinState};
    pub use crate::C64;
}
