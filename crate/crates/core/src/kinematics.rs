//! Centre-of-mass kinematics, the Dirac–Pauli gamma matrices and the explicit
//! spinors of e⁻(p₁) e⁺(p₂) → μ⁻(p₃) μ⁺(p₄).
//!
//! The electron moves along +z and the positron along −z with momentum `p`;
//! the muon leaves at polar angle θ and azimuth φ with momentum `P`, the
//! antimuon back to back. Spins are z projections.

use std::f64::consts::PI;
use std::ops::{Add, Sub};

use num_complex::Complex64 as C64;

use crate::amplitude::SpinLabel;
use crate::error::{Error, Result};
use crate::numerics::CMatrix;

pub const ELECTRON_MASS_MEV: f64 = 0.511;
pub const MUON_MASS_MEV: f64 = 105.7;
pub const ALPHA_EM: f64 = 1.0 / 137.036;

/// Beam energy, masses, spectator energy and coupling of one collision.
///
/// `energy` is the energy of each beam particle in the centre-of-mass frame,
/// so `s = 4E²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicSetup {
    energy: f64,
    electron_mass: f64,
    muon_mass: f64,
    spectator_energy: f64,
    alpha_em: f64,
}

impl KinematicSetup {
    pub fn new(
        energy: f64,
        electron_mass: f64,
        muon_mass: f64,
        spectator_energy: f64,
        alpha_em: f64,
    ) -> Result<Self> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {x}")))
            }
        };
        positive("electron mass", electron_mass)?;
        positive("muon mass", muon_mass)?;
        positive("spectator energy", spectator_energy)?;
        positive("alpha_em", alpha_em)?;
        if !energy.is_finite() || energy < muon_mass {
            return Err(Error::BelowThreshold { energy, threshold: muon_mass });
        }
        if energy <= electron_mass {
            return Err(Error::InvalidArgument(format!(
                "beam energy {energy} MeV must exceed the electron mass {electron_mass} MeV"
            )));
        }
        Ok(KinematicSetup { energy, electron_mass, muon_mass, spectator_energy, alpha_em })
    }

    /// Physical masses and coupling, spectator energy `E_q = m_e`.
    pub fn at_energy(energy: f64) -> Result<Self> {
        Self::new(energy, ELECTRON_MASS_MEV, MUON_MASS_MEV, ELECTRON_MASS_MEV, ALPHA_EM)
    }

    pub fn with_energy(&self, energy: f64) -> Result<Self> {
        Self::new(energy, self.electron_mass, self.muon_mass, self.spectator_energy, self.alpha_em)
    }

    pub fn with_spectator_energy(&self, spectator_energy: f64) -> Result<Self> {
        Self::new(self.energy, self.electron_mass, self.muon_mass, spectator_energy, self.alpha_em)
    }

    pub fn with_electron_mass(&self, electron_mass: f64) -> Result<Self> {
        Self::new(self.energy, electron_mass, self.muon_mass, self.spectator_energy, self.alpha_em)
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn electron_mass(&self) -> f64 {
        self.electron_mass
    }

    pub fn muon_mass(&self) -> f64 {
        self.muon_mass
    }

    pub fn spectator_energy(&self) -> f64 {
        self.spectator_energy
    }

    pub fn alpha_em(&self) -> f64 {
        self.alpha_em
    }

    /// `p = √(E² − m_e²)`.
    pub fn electron_momentum(&self) -> f64 {
        ((self.energy - self.electron_mass) * (self.energy + self.electron_mass)).sqrt()
    }

    /// `P = √(E² − m_μ²)`.
    pub fn muon_momentum(&self) -> f64 {
        ((self.energy - self.muon_mass) * (self.energy + self.muon_mass)).max(0.0).sqrt()
    }

    /// `e² = 4π α`.
    pub fn coupling_sq(&self) -> f64 {
        4.0 * PI * self.alpha_em
    }

    /// `s = 4E²`.
    pub fn mandelstam_s(&self) -> f64 {
        4.0 * self.energy * self.energy
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    /// Minkowski product with signature (+, −, −, −).
    pub fn dot(&self, other: &FourVector) -> f64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn mass_sq(&self) -> f64 {
        self.dot(self)
    }
}

impl Add for FourVector {
    type Output = FourVector;

    fn add(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;

    fn sub(self, o: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

/// `(p₁, p₂, p₃, p₄)` for a muon emitted at `(θ, φ)`.
pub fn four_momenta(setup: &KinematicSetup, theta: f64, phi: f64) -> [FourVector; 4] {
    let e = setup.energy();
    let p = setup.electron_momentum();
    let big_p = setup.muon_momentum();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (x, y, z) = (big_p * st * cp, big_p * st * sp, big_p * ct);
    [
        FourVector([e, 0.0, 0.0, p]),
        FourVector([e, 0.0, 0.0, -p]),
        FourVector([e, x, y, z]),
        FourVector([e, -x, -y, -z]),
    ]
}

/// The four Dirac matrices in the Dirac–Pauli representation.
#[derive(Clone, Debug)]
pub struct GammaSet {
    matrices: [CMatrix; 4],
}

/// Diagonal of the metric `g = diag(+1, −1, −1, −1)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

impl GammaSet {
    pub fn dirac_pauli() -> Self {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let pauli = [[[o, one], [one, o]], [[o, -i], [i, o]], [[one, o], [o, -one]]];
        let g0 = CMatrix::diag(&[1.0, 1.0, -1.0, -1.0]);
        let spatial = |s: [[C64; 2]; 2]| {
            CMatrix::from_fn(4, |r, c| match (r < 2, c < 2) {
                (true, false) => s[r][c - 2],
                (false, true) => -s[r - 2][c],
                _ => o,
            })
        };
        GammaSet { matrices: [g0, spatial(pauli[0]), spatial(pauli[1]), spatial(pauli[2])] }
    }

    pub fn gamma(&self, mu: usize) -> &CMatrix {
        &self.matrices[mu]
    }

    pub fn metric(&self, mu: usize) -> f64 {
        METRIC[mu]
    }

    /// `γ·p = γ⁰p⁰ − γ·p⃗`.
    pub fn slash(&self, p: &FourVector) -> CMatrix {
        let mut out = CMatrix::zeros(4);
        for mu in 0..4 {
            out = &out + &self.matrices[mu].scale_real(METRIC[mu] * p.0[mu]);
        }
        out
    }

    /// Largest entry of `{γ^μ, γ^ν} − 2g^{μν}` over all index pairs.
    pub fn clifford_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let (a, b) = (&self.matrices[mu], &self.matrices[nu]);
                let anti = &(a * b) + &(b * a);
                let target = if mu == nu {
                    CMatrix::identity(4).scale_real(2.0 * METRIC[mu])
                } else {
                    CMatrix::zeros(4)
                };
                worst = worst.max(anti.max_abs_diff(&target));
            }
        }
        worst
    }
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::dirac_pauli()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    /// Incoming e⁻, column spinor u₁.
    Electron,
    /// Incoming e⁺, row spinor v̄₂.
    Positron,
    /// Outgoing μ⁻, row spinor ū₃.
    Muon,
    /// Outgoing μ⁺, column spinor v₄.
    Antimuon,
}

impl Species {
    /// True for the species stored as barred row spinors.
    pub fn is_barred(self) -> bool {
        matches!(self, Species::Positron | Species::Muon)
    }
}

/// cos θ, sin θ and e^{iφ} of the outgoing muon direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub phase: C64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        let (sin_theta, cos_theta) = theta.sin_cos();
        Direction { cos_theta, sin_theta, phase: C64::from_polar(1.0, phi) }
    }

    pub fn from_cos(cos_theta: f64, sin_theta: f64, phi: f64) -> Self {
        Direction { cos_theta, sin_theta, phase: C64::from_polar(1.0, phi) }
    }
}

/// A spinor in the form the amplitude consumes: a column for u₁ and v₄, a
/// row (already multiplied by γ⁰) for v̄₂ and ū₃.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracSpinor {
    pub components: [C64; 4],
    pub species: Species,
    pub spin: SpinLabel,
}

impl DiracSpinor {
    /// The column spinor: `components` itself, or `(row·γ⁰)†` for barred rows.
    pub fn unbarred(&self) -> [C64; 4] {
        if self.species.is_barred() {
            let g0 = [1.0, 1.0, -1.0, -1.0];
            std::array::from_fn(|i| (self.components[i] * g0[i]).conj())
        } else {
            self.components
        }
    }

    /// The barred row `ψ̄ = ψ†γ⁰`.
    pub fn barred(&self) -> [C64; 4] {
        if self.species.is_barred() {
            self.components
        } else {
            let g0 = [1.0, 1.0, -1.0, -1.0];
            std::array::from_fn(|i| self.components[i].conj() * g0[i])
        }
    }

    /// `ψ†ψ`.
    pub fn density(&self) -> f64 {
        self.unbarred().iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Spinor of `species` with spin `spin`; the electron and positron ignore the angles.
pub fn build_spinor(
    setup: &KinematicSetup,
    species: Species,
    spin: SpinLabel,
    theta: f64,
    phi: f64,
) -> DiracSpinor {
    spinor_at(setup, species, spin, &Direction::new(theta, phi))
}

pub(crate) fn spinor_at(
    setup: &KinematicSetup,
    species: Species,
    spin: SpinLabel,
    dir: &Direction,
) -> DiracSpinor {
    let e = setup.energy();
    let z = C64::new(0.0, 0.0);
    let re = |x: f64| C64::new(x, 0.0);
    let row_times_g0 = |v: [C64; 4]| [v[0], v[1], -v[2], -v[3]];
    let components = match species {
        Species::Electron | Species::Positron => {
            let n1 = (e + setup.electron_mass()).sqrt();
            let a = setup.electron_momentum() / (e + setup.electron_mass());
            match (species, spin) {
                (Species::Electron, SpinLabel::Up) => [re(n1), z, re(n1 * a), z],
                (Species::Electron, SpinLabel::Down) => [z, re(n1), z, re(-n1 * a)],
                (_, SpinLabel::Up) => row_times_g0([z, re(n1 * a), z, re(n1)]),
                (_, SpinLabel::Down) => row_times_g0([re(n1 * a), z, re(-n1), z]),
            }
        }
        Species::Muon | Species::Antimuon => {
            let n2 = (e + setup.muon_mass()).sqrt();
            let b = n2 * setup.muon_momentum() / (e + setup.muon_mass());
            let (c, s) = (dir.cos_theta, dir.sin_theta);
            let (ep, em) = (dir.phase, dir.phase.conj());
            match (species, spin) {
                (Species::Muon, SpinLabel::Up) => {
                    row_times_g0([re(n2), z, re(b * c), em * (b * s)])
                }
                (Species::Muon, SpinLabel::Down) => {
                    row_times_g0([z, re(n2), ep * (b * s), re(-b * c)])
                }
                (_, SpinLabel::Up) => [-em * (b * s), re(b * c), z, re(n2)],
                (_, SpinLabel::Down) => [re(b * c), ep * (b * s), re(-n2), z],
            }
        }
    };
    DiracSpinor { components, species, spin }
}
