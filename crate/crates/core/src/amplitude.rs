//! Tree-level s-channel amplitude and its angular overlap integrals.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::kinematics::{spinor_at, Direction, GammaSet, KinematicSetup, Species};
use crate::numerics::QuadratureGrid;

/// z projection of a spin ½, basis index ↑ = 0, ↓ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    pub const BOTH: [SpinLabel; 2] = [SpinLabel::Up, SpinLabel::Down];

    pub fn index(self) -> usize {
        match self {
            SpinLabel::Up => 0,
            SpinLabel::Down => 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            SpinLabel::Up
        } else {
            SpinLabel::Down
        }
    }

    pub fn flip(self) -> Self {
        match self {
            SpinLabel::Up => SpinLabel::Down,
            SpinLabel::Down => SpinLabel::Up,
        }
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinLabel::Up => "↑",
            SpinLabel::Down => "↓",
        })
    }
}

/// Spins of a transition `s1 s2 → r s` (electron, positron → muon, antimuon).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    pub s1: SpinLabel,
    pub s2: SpinLabel,
    pub r: SpinLabel,
    pub s: SpinLabel,
}

impl SpinConfig {
    pub const COUNT: usize = 16;

    pub fn new(s1: SpinLabel, s2: SpinLabel, r: SpinLabel, s: SpinLabel) -> Self {
        SpinConfig { s1, s2, r, s }
    }

    /// `8·s1 + 4·s2 + 2·r + s`.
    pub fn index(&self) -> usize {
        8 * self.s1.index() + 4 * self.s2.index() + 2 * self.r.index() + self.s.index()
    }

    pub fn from_index(i: usize) -> Self {
        SpinConfig {
            s1: SpinLabel::from_index((i >> 3) & 1),
            s2: SpinLabel::from_index((i >> 2) & 1),
            r: SpinLabel::from_index((i >> 1) & 1),
            s: SpinLabel::from_index(i & 1),
        }
    }

    pub fn all() -> impl Iterator<Item = SpinConfig> {
        (0..Self::COUNT).map(Self::from_index)
    }

    /// Every spin reversed.
    pub fn flipped(&self) -> Self {
        SpinConfig::new(self.s1.flip(), self.s2.flip(), self.r.flip(), self.s.flip())
    }
}

/// The electron-side currents `v̄₂ γ^μ u₁` for the four incoming spin pairs,
/// indexed `2·s1 + s2`.
fn electron_currents(setup: &KinematicSetup, gammas: &GammaSet) -> [[C64; 4]; 4] {
    let dir = Direction::new(0.0, 0.0);
    std::array::from_fn(|k| {
        let (s1, s2) = (SpinLabel::from_index(k >> 1), SpinLabel::from_index(k & 1));
        let u1 = spinor_at(setup, Species::Electron, s1, &dir).components;
        let v2bar = spinor_at(setup, Species::Positron, s2, &dir).components;
        std::array::from_fn(|mu| bilinear(&v2bar, gammas, mu, &u1))
    })
}

/// The muon-side currents `ū₃ γ^μ v₄`, indexed `2·r + s`.
fn muon_currents(setup: &KinematicSetup, gammas: &GammaSet, dir: &Direction) -> [[C64; 4]; 4] {
    std::array::from_fn(|k| {
        let (r, s) = (SpinLabel::from_index(k >> 1), SpinLabel::from_index(k & 1));
        let u3bar = spinor_at(setup, Species::Muon, r, dir).components;
        let v4 = spinor_at(setup, Species::Antimuon, s, dir).components;
        std::array::from_fn(|mu| bilinear(&u3bar, gammas, mu, &v4))
    })
}

fn bilinear(row: &[C64; 4], gammas: &GammaSet, mu: usize, col: &[C64; 4]) -> C64 {
    let g = gammas.gamma(mu);
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += row[i] * g[(i, j)] * col[j];
        }
    }
    acc
}

fn contract(
    setup: &KinematicSetup,
    gammas: &GammaSet,
    electron: &[[C64; 4]; 4],
    muon: &[[C64; 4]; 4],
) -> [C64; 16] {
    // (p₁ + p₂)² is taken as 4E² exactly.
    let prefactor = setup.coupling_sq() / setup.mandelstam_s();
    std::array::from_fn(|i| {
        let (ie, im) = (i >> 2, i & 3);
        let sum: C64 = (0..4).map(|mu| electron[ie][mu] * muon[im][mu] * gammas.metric(mu)).sum();
        sum * prefactor
    })
}

/// All sixteen amplitudes at one muon direction, indexed by [`SpinConfig::index`].
pub fn amplitude_set(setup: &KinematicSetup, gammas: &GammaSet, dir: &Direction) -> [C64; 16] {
    let electron = electron_currents(setup, gammas);
    let muon = muon_currents(setup, gammas, dir);
    contract(setup, gammas, &electron, &muon)
}

/// `M(s1 s2 → r s)` at muon angles `(θ, φ)`:
/// `e²/s · [ū₃ γ^μ v₄][v̄₂ γ_μ u₁]`.
pub fn amplitude(
    setup: &KinematicSetup,
    s1: SpinLabel,
    s2: SpinLabel,
    r: SpinLabel,
    s: SpinLabel,
    theta: f64,
    phi: f64,
) -> C64 {
    let gammas = GammaSet::dirac_pauli();
    amplitude_set(setup, &gammas, &Direction::new(theta, phi))[SpinConfig::new(s1, s2, r, s).index()]
}

/// `O[a, b] = ∫dΩ M_a · conj(M_b)` for every pair of spin configurations.
#[derive(Clone, Debug)]
pub struct AngularOverlapTable {
    setup: KinematicSetup,
    grid: QuadratureGrid,
    entries: Vec<C64>,
}

impl AngularOverlapTable {
    pub fn build(setup: &KinematicSetup, grid: &QuadratureGrid) -> Self {
        let gammas = GammaSet::dirac_pauli();
        let electron = electron_currents(setup, &gammas);
        let n = SpinConfig::COUNT;
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for node in grid.nodes() {
            let dir = Direction::from_cos(node.cos_theta, node.sin_theta, node.phi);
            let muon = muon_currents(setup, &gammas, &dir);
            let amps = contract(setup, &gammas, &electron, &muon);
            for a in 0..n {
                entries[a * n + a] += amps[a].norm_sqr() * node.weight;
                let wa = amps[a] * node.weight;
                for b in a + 1..n {
                    entries[a * n + b] += wa * amps[b].conj();
                }
            }
        }
        for a in 0..n {
            for b in 0..a {
                entries[a * n + b] = entries[b * n + a].conj();
            }
        }
        AngularOverlapTable { setup: *setup, grid: grid.clone(), entries }
    }

    pub fn setup(&self) -> &KinematicSetup {
        &self.setup
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn get(&self, a: SpinConfig, b: SpinConfig) -> C64 {
        self.entry(a.index(), b.index())
    }

    pub fn entry(&self, a: usize, b: usize) -> C64 {
        self.entries[a * SpinConfig::COUNT + b]
    }

    /// `Σ_{r,s} O[(s1 s2 r s), (s1' s2' r s)]`.
    pub fn summed_final(&self, s1: SpinLabel, s2: SpinLabel, t1: SpinLabel, t2: SpinLabel) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for r in SpinLabel::BOTH {
            for s in SpinLabel::BOTH {
                acc += self.get(SpinConfig::new(s1, s2, r, s), SpinConfig::new(t1, t2, r, s));
            }
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// `max |O[a,b] − conj(O[b,a])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = SpinConfig::COUNT;
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                worst = worst.max((self.entry(a, b) - self.entry(b, a).conj()).norm());
            }
        }
        worst
    }

    /// Largest entry difference relative to the largest entry of `self`.
    pub fn relative_difference(&self, other: &AngularOverlapTable) -> f64 {
        let diff = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        diff / self.max_abs()
    }
}
