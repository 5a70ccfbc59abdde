//! Parsing of `--state` tags:
//!
//! ```text
//! ghz | w | a-psi[:+|:-] | a-phi[:+|:-] | general:<8 complex> | bc-mixture:<4 complex>
//! ```
//!
//! Complex numbers are comma separated, e.g. `0.5`, `-1+2i`, `0.3i`.

use std::str::FromStr;

use num_complex::Complex64 as C64;
use qed_spectator::prelude::*;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Ghz,
    W,
    /// Bell product with the B–C pair in `cos η|↑↓⟩ + sin η|↓↑⟩`.
    APsi(Option<BellSign>),
    /// Bell product with the B–C pair in `cos η|↑↑⟩ + sin η|↓↓⟩`.
    APhi(Option<BellSign>),
    General(TripartiteSpinState),
    BcMixture(BcState),
}

/// A built in-state, either pure or an ensemble.
#[derive(Clone, Debug)]
pub enum BuiltState {
    Pure(TripartiteSpinState),
    Mixed(SpinEnsemble),
}

impl BuiltState {
    pub fn as_in_state(&self) -> &dyn InState {
        match self {
            BuiltState::Pure(s) => s,
            BuiltState::Mixed(m) => m,
        }
    }
}

fn parse_complex_list<const N: usize>(body: &str) -> std::result::Result<[C64; N], CliError> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::Usage(format!("expected {N} comma-separated coefficients, got {}", parts.len())));
    }
    let mut out = [C64::new(0.0, 0.0); N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = C64::from_str(p).map_err(|_| CliError::Usage(format!("bad complex number '{p}'")))?;
    }
    Ok(out)
}

fn parse_sign(suffix: Option<&str>) -> std::result::Result<Option<BellSign>, CliError> {
    match suffix {
        None => Ok(None),
        Some("+") => Ok(Some(BellSign::Plus)),
        Some("-") => Ok(Some(BellSign::Minus)),
        Some(s) => Err(CliError::Usage(format!("Bell sign must be '+' or '-', got '{s}'"))),
    }
}

impl FromStr for StateSpec {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head.trim().to_ascii_lowercase().as_str(), tail) {
            ("ghz", None) => Ok(StateSpec::Ghz),
            ("w", None) => Ok(StateSpec::W),
            ("a-psi", t) => Ok(StateSpec::APsi(parse_sign(t)?)),
            ("a-phi", t) => Ok(StateSpec::APhi(parse_sign(t)?)),
            ("general", Some(body)) => Ok(StateSpec::General(TripartiteSpinState::general(parse_complex_list::<8>(body)?)?)),
            ("bc-mixture", Some(body)) => Ok(StateSpec::BcMixture(BcState::new(parse_complex_list::<4>(body)?)?)),
            _ => Err(CliError::Usage(format!(
                "unknown state '{s}' (expected ghz, w, a-psi[:±], a-phi[:±], general:<8 complex>, bc-mixture:<4 complex>)"
            ))),
        }
    }
}

impl StateSpec {
    pub fn is_bell(&self) -> bool {
        matches!(self, StateSpec::APsi(_) | StateSpec::APhi(_))
    }

    pub fn is_w(&self) -> bool {
        matches!(self, StateSpec::W)
    }

    /// Sign fixed by the tag, else the fallback from `--eta`.
    pub fn bell_sign(&self, fallback: BellSign) -> BellSign {
        match self {
            StateSpec::APsi(Some(s)) | StateSpec::APhi(Some(s)) => *s,
            _ => fallback,
        }
    }

    pub fn build(&self, alpha: f64, sign: BellSign) -> BuiltState {
        match self {
            StateSpec::Ghz => BuiltState::Pure(TripartiteSpinState::ghz()),
            StateSpec::W => BuiltState::Pure(TripartiteSpinState::w()),
            StateSpec::APsi(_) => BuiltState::Pure(TripartiteSpinState::a_psi(alpha, self.bell_sign(sign).eta())),
            StateSpec::APhi(_) => BuiltState::Pure(TripartiteSpinState::a_phi(alpha, self.bell_sign(sign).eta())),
            StateSpec::General(s) => BuiltState::Pure(*s),
            StateSpec::BcMixture(d) => BuiltState::Mixed(SpinEnsemble::mixture_bc(d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!("ghz".parse::<StateSpec>().unwrap(), StateSpec::Ghz);
        assert_eq!("W".parse::<StateSpec>().unwrap(), StateSpec::W);
        assert_eq!("a-psi:-".parse::<StateSpec>().unwrap(), StateSpec::APsi(Some(BellSign::Minus)));
        assert_eq!("a-phi".parse::<StateSpec>().unwrap(), StateSpec::APhi(None));
        let g = "general:1,0,0,0,0,0,0,1i".parse::<StateSpec>().unwrap();
        match g {
            StateSpec::General(s) => assert!((s.coefficients()[7].im - 0.5f64.sqrt()).abs() < 1e-15),
            _ => panic!(),
        }
        assert!(matches!("bc-mixture:1,0,0,1".parse::<StateSpec>().unwrap(), StateSpec::BcMixture(_)));
    }

    #[test]
    fn rejects_bad_tags() {
        for bad in ["ghz:+", "a-psi:x", "general:1,2", "general:0,0,0,0,0,0,0,0", "bc-mixture:a,b,c,d", "dicke"] {
            assert!(bad.parse::<StateSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn tag_sign_beats_fallback() {
        let s = StateSpec::APsi(Some(BellSign::Minus));
        assert_eq!(s.bell_sign(BellSign::Plus), BellSign::Minus);
        assert_eq!(StateSpec::APhi(None).bell_sign(BellSign::Plus), BellSign::Plus);
    }
}
