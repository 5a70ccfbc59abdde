//! Brute-force reference implementations for cross-validation.
//!
//! Nothing here touches the 4×4 gamma matrices, the spinor builder or the
//! overlap table of the main path. Spinors are assembled from two-component
//! Pauli blocks and currents are contracted block by block.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::density::Regulators;
use crate::error::Result;
use crate::kinematics::KinematicSetup;
use crate::numerics::{CMatrix, DensityMatrix, QuadratureGrid};
use crate::states::{InState, TripartiteSpinState};

type Two = [C64; 2];

fn z(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `σ·n` applied to a two-spinor.
fn sigma_dot(n: [f64; 3], v: Two) -> Two {
    let minus = C64::new(n[0], -n[1]);
    let plus = C64::new(n[0], n[1]);
    [z(n[2]) * v[0] + minus * v[1], plus * v[0] - z(n[2]) * v[1]]
}

fn pauli(k: usize, v: Two) -> Two {
    let mut n = [0.0; 3];
    n[k] = 1.0;
    sigma_dot(n, v)
}

fn dot2(a: Two, b: Two) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn chi(spin: usize) -> Two {
    if spin == 0 { [z(1.0), z(0.0)] } else { [z(0.0), z(1.0)] }
}

/// `−iσ_y χ`.
fn eta(spin: usize) -> Two {
    let c = chi(spin);
    [-c[1], c[0]]
}

/// Upper and lower blocks of a particle spinor with momentum `k·n`.
fn particle(energy: f64, mass: f64, k: f64, n: [f64; 3], spin: usize) -> (Two, Two) {
    let norm = (energy + mass).sqrt();
    let c = chi(spin);
    let lower = sigma_dot(n, c).map(|x| x * (k / (energy + mass)));
    (c.map(|x| x * norm), lower.map(|x| x * norm))
}

fn antiparticle(energy: f64, mass: f64, k: f64, n: [f64; 3], spin: usize) -> (Two, Two) {
    let norm = (energy + mass).sqrt();
    let e = eta(spin);
    let upper = sigma_dot(n, e).map(|x| x * (k / (energy + mass)));
    (upper.map(|x| x * norm), e.map(|x| x * norm))
}

/// `ψ̄_a γ^μ ψ_b` for μ = 0..3.
fn current(a: (Two, Two), b: (Two, Two)) -> [C64; 4] {
    let mut j = [C64::new(0.0, 0.0); 4];
    j[0] = dot2(a.0, b.0) + dot2(a.1, b.1);
    for k in 0..3 {
        j[k + 1] = dot2(a.0, pauli(k, b.1)) + dot2(a.1, pauli(k, b.0));
    }
    j
}

/// All sixteen amplitudes at one direction, indexed `[4 s1 + 2 s2][2 r + s]`.
pub fn amplitudes(setup: &KinematicSetup, cos_theta: f64, sin_theta: f64, phi: f64) -> [[C64; 4]; 4] {
    let e = setup.energy();
    let (me, mm) = (setup.electron_mass(), setup.muon_mass());
    let p = (e * e - me * me).max(0.0).sqrt();
    let big_p = (e * e - mm * mm).max(0.0).sqrt();
    let n = [sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta];
    let coupling = 4.0 * PI * setup.alpha_em();
    let pref = coupling / (4.0 * e * e);
    let mut out = [[C64::new(0.0, 0.0); 4]; 4];
    for s1 in 0..2 {
        let electron = particle(e, me, p, [0.0, 0.0, 1.0], s1);
        for s2 in 0..2 {
            let positron = antiparticle(e, me, p, [0.0, 0.0, -1.0], s2);
            let incoming = current(positron, electron);
            for r in 0..2 {
                let muon = particle(e, mm, big_p, n, r);
                for s in 0..2 {
                    let antimuon = antiparticle(e, mm, big_p, n.map(|x| -x), s);
                    let outgoing = current(muon, antimuon);
                    let mut m = outgoing[0] * incoming[0];
                    for mu in 1..4 {
                        m -= outgoing[mu] * incoming[mu];
                    }
                    out[2 * s1 + s2][2 * r + s] = m * pref;
                }
            }
        }
    }
    out
}

/// `Σ_spins |M|²` from the trace theorem, with the electron along +z and the
/// muon at polar angle θ.
pub fn trace_theorem_spin_sum(setup: &KinematicSetup, theta: f64) -> f64 {
    let e = setup.energy();
    let (me, mm) = (setup.electron_mass(), setup.muon_mass());
    let p = (e * e - me * me).max(0.0).sqrt();
    let big_p = (e * e - mm * mm).max(0.0).sqrt();
    let (st, ct) = theta.sin_cos();
    let mink = |a: [f64; 4], b: [f64; 4]| a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
    let p1 = [e, 0.0, 0.0, p];
    let p2 = [e, 0.0, 0.0, -p];
    let p3 = [e, big_p * st, 0.0, big_p * ct];
    let p4 = [e, -big_p * st, 0.0, -big_p * ct];
    let e4 = (4.0 * PI * setup.alpha_em()).powi(2);
    let s = 4.0 * e * e;
    32.0 * e4 / (s * s)
        * (mink(p1, p3) * mink(p2, p4)
            + mink(p1, p4) * mink(p2, p3)
            + mm * mm * mink(p1, p2)
            + me * me * mink(p3, p4)
            + 2.0 * me * me * mm * mm)
}

/// Overlap integrals built by direct summation over a square grid.
pub struct NaiveScatterer {
    setup: KinematicSetup,
    /// `[in a][out a'][in b][out b']`, pair indices `2x + y`.
    overlaps: Vec<C64>,
}

impl NaiveScatterer {
    pub fn new(setup: &KinematicSetup, order: usize) -> Result<Self> {
        let grid = QuadratureGrid::new(order, order)?;
        let mut overlaps = vec![C64::new(0.0, 0.0); 256];
        for node in grid.nodes() {
            let m = amplitudes(setup, node.cos_theta, node.sin_theta, node.phi);
            for ia in 0..4 {
                for oa in 0..4 {
                    for ib in 0..4 {
                        for ob in 0..4 {
                            overlaps[((ia * 4 + oa) * 4 + ib) * 4 + ob] += m[ia][oa] * m[ib][ob].conj() * node.weight;
                        }
                    }
                }
            }
        }
        Ok(NaiveScatterer { setup: *setup, overlaps })
    }

    fn overlap(&self, ia: usize, oa: usize, ib: usize, ob: usize) -> C64 {
        self.overlaps[((ia * 4 + oa) * 4 + ib) * 4 + ob]
    }

    /// Unnormalised transition operator of one pure state.
    pub fn transition(&self, state: &TripartiteSpinState) -> CMatrix {
        let c = state.coefficients();
        let mut r = CMatrix::zeros(8);
        for row in 0..8 {
            for col in 0..8 {
                let (out_a, c_a) = (row >> 1, row & 1);
                let (out_b, c_b) = (col >> 1, col & 1);
                let mut acc = C64::new(0.0, 0.0);
                for in_a in 0..4 {
                    for in_b in 0..4 {
                        acc += c[2 * in_a + c_a] * c[2 * in_b + c_b].conj() * self.overlap(in_a, out_a, in_b, out_b);
                    }
                }
                r[(row, col)] = acc;
            }
        }
        r
    }

    pub fn out_density<S: InState + ?Sized>(&self, state: &S, reg: &Regulators) -> Result<DensityMatrix> {
        let e = self.setup.energy();
        let mm = self.setup.muon_mass();
        let big_p = (e * e - mm * mm).max(0.0).sqrt();
        let w = reg.time() * big_p / (128.0 * PI * PI * e.powi(3) * reg.volume());
        let mut num = CMatrix::zeros(8);
        let mut norm = 0.0;
        for (p, s) in state.components() {
            let r = self.transition(s);
            let psi = s.coefficients();
            for i in 0..8 {
                for j in 0..8 {
                    num[(i, j)] += (psi[i] * psi[j].conj() + r[(i, j)] * w) * p;
                }
                norm += p * (psi[i].norm_sqr() + w * r[(i, i)].re);
            }
        }
        DensityMatrix::new(num.scale_real(1.0 / norm))
    }
}

/// Out-state density matrix from a fresh naive table of order `n × n`.
pub fn naive_out_density<S: InState + ?Sized>(
    state: &S,
    setup: &KinematicSetup,
    reg: &Regulators,
    n: usize,
) -> Result<DensityMatrix> {
    NaiveScatterer::new(setup, n)?.out_density(state, reg)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualPathReport {
    pub comparisons: usize,
    pub max_density_diff: f64,
    pub max_spin_sum_rel_err: f64,
}

/// Compares the main assembly against the naive one for every state and
/// energy, and the amplitude spin sums against the trace theorem at the given
/// `(E, θ, φ)` points. `order` is the main-path grid; the naive path uses twice it.
pub fn dual_path_check(
    states: &[TripartiteSpinState],
    energies: &[f64],
    kinematic_points: &[(f64, f64, f64)],
    order: usize,
) -> Result<DualPathReport> {
    use crate::amplitude::AngularOverlapTable;
    use crate::density::assemble_out_abc;

    let mut report = DualPathReport::default();
    let grid = QuadratureGrid::new(order, order)?;
    for &energy in energies {
        let setup = KinematicSetup::at_energy(energy)?;
        let table = AngularOverlapTable::build(&setup, &grid);
        let naive = NaiveScatterer::new(&setup, 2 * order)?;
        let reg = Regulators::default_for(&setup);
        for s in states {
            let main = assemble_out_abc(s, &table, &reg)?.rho_abc;
            let other = naive.out_density(s, &reg)?;
            report.max_density_diff = report.max_density_diff.max(main.matrix().max_abs_diff(other.matrix()));
            report.comparisons += 1;
        }
    }
    for &(energy, theta, phi) in kinematic_points {
        let setup = KinematicSetup::at_energy(energy)?;
        let exact = trace_theorem_spin_sum(&setup, theta);
        let summed: f64 = (0..16)
            .map(|k| {
                let c = crate::amplitude::SpinConfig::from_index(k);
                crate::amplitude::amplitude(&setup, c.s1, c.s2, c.r, c.s, theta, phi).norm_sqr()
            })
            .sum();
        report.max_spin_sum_rel_err = report.max_spin_sum_rel_err.max((summed / exact - 1.0).abs());
    }
    Ok(report)
}
