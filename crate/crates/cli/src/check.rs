use qed_spectator::oracle::{dual_path_check, DualPathReport};
use qed_spectator::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

pub const TOLERANCE: f64 = 1e-10;

/// Random states and kinematic points against the brute-force oracle.
pub fn run_check(n_states: usize, seed: u64, order: usize) -> std::result::Result<DualPathReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = (0..n_states)
        .map(|_| {
            let c = core::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            TripartiteSpinState::general(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let energies = [1.01, 1.18, 1.6, 2.3, 3.0].map(|x| x * MUON_MASS_MEV);
    let points: Vec<_> = (0..20)
        .map(|_| (rng.gen_range(1.0..5.0) * MUON_MASS_MEV, rng.gen_range(0.0..std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let report = dual_path_check(&states, &energies, &points, order)?;
    if report.max_density_diff > TOLERANCE || report.max_spin_sum_rel_err > TOLERANCE {
        return Err(CliError::Contract(format!(
            "dual-path disagreement: density {:e}, spin sum {:e}",
            report.max_density_diff, report.max_spin_sum_rel_err
        )));
    }
    Ok(report)
}
