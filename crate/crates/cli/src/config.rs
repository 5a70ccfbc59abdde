use std::path::{Path, PathBuf};

use qed_spectator::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Everything a sweep needs. Missing keys take the defaults below; `time: null`
/// picks the perturbative default for the configured masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub electron_mass: f64,
    pub muon_mass: f64,
    pub alpha_em: f64,
    pub volume: f64,
    pub time: Option<f64>,
    pub quad_order: usize,
    /// Energies in units of the muon mass.
    pub e_min: f64,
    pub e_max: f64,
    pub e_steps: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    /// `+` for η = π/4, `-` for η = 3π/4.
    pub eta: String,
    pub state: String,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            electron_mass: ELECTRON_MASS_MEV,
            muon_mass: MUON_MASS_MEV,
            alpha_em: ALPHA_EM,
            volume: 1.0,
            time: None,
            quad_order: 32,
            e_min: 1.0,
            e_max: 3.0,
            e_steps: 201,
            alpha_min: 0.0,
            alpha_max: std::f64::consts::PI,
            alpha_steps: 9,
            eta: "+".into(),
            state: "w".into(),
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> std::result::Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> std::result::Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Usage(msg));
        for (name, v) in [
            ("electron_mass", self.electron_mass),
            ("muon_mass", self.muon_mass),
            ("alpha_em", self.alpha_em),
            ("volume", self.volume),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if let Some(t) = self.time {
            if !(t.is_finite() && t > 0.0) {
                return bad(format!("time must be positive, got {t}"));
            }
        }
        if !(self.e_min >= 1.0 && self.e_max >= self.e_min && self.e_max.is_finite()) {
            return bad(format!("energy range [{}, {}] must lie in [1, inf) muon masses", self.e_min, self.e_max));
        }
        if self.e_steps == 0 || self.alpha_steps == 0 || self.quad_order == 0 {
            return bad("steps and quadrature order must be positive".into());
        }
        if !(self.alpha_min.is_finite() && self.alpha_max.is_finite()) {
            return bad("alpha range must be finite".into());
        }
        self.bell_sign()?;
        Ok(())
    }

    pub fn bell_sign(&self) -> std::result::Result<BellSign, CliError> {
        match self.eta.as_str() {
            "+" => Ok(BellSign::Plus),
            "-" => Ok(BellSign::Minus),
            other => Err(CliError::Usage(format!("eta must be '+' or '-', got '{other}'"))),
        }
    }

    pub fn setup(&self, x: f64) -> std::result::Result<KinematicSetup, CliError> {
        let e = x * self.muon_mass;
        Ok(KinematicSetup::new(e, self.electron_mass, self.muon_mass, self.electron_mass, self.alpha_em)?)
    }

    pub fn regulators(&self) -> std::result::Result<Regulators, CliError> {
        match self.time {
            Some(t) => Ok(Regulators::new(self.volume, t)?),
            None => {
                let s = self.setup(1.0)?;
                Ok(Regulators::perturbative(&s, self.volume, qed_spectator::density::PERTURBATIVE_TARGET))
            }
        }
    }

    pub fn grid(&self) -> std::result::Result<QuadratureGrid, CliError> {
        Ok(QuadratureGrid::new(self.quad_order, self.quad_order)?)
    }

    pub fn energies(&self) -> Vec<f64> {
        grid_points(self.e_min, self.e_max, self.e_steps)
    }

    pub fn alphas(&self) -> Vec<f64> {
        grid_points(self.alpha_min, self.alpha_max, self.alpha_steps)
    }
}

/// `n` evenly spaced points including both ends; a single point is `lo`.
pub fn grid_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_partial_files() {
        let c = RunConfig { state: "a-phi:-".into(), time: Some(3.0), ..RunConfig::default() };
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        let partial: RunConfig = serde_json::from_str(r#"{"e_steps": 5}"#).unwrap();
        assert_eq!(partial.e_steps, 5);
        assert_eq!(partial.state, "w");
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig { e_min: 0.9, ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { e_steps: 0, ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { eta: "x".into(), ..RunConfig::default() }.validate().is_err());
    }

    #[test]
    fn grid_points_hit_both_ends() {
        assert_eq!(grid_points(1.0, 3.0, 3), vec![1.0, 2.0, 3.0]);
        assert_eq!(grid_points(0.0, std::f64::consts::PI, 9)[8], std::f64::consts::PI);
        assert_eq!(grid_points(2.0, 5.0, 1), vec![2.0]);
    }
}
