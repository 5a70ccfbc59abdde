use std::fmt::Write as _;
use std::path::Path;

use qed_spectator::observables::cross_section_from_table;
use qed_spectator::prelude::*;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::state_spec::StateSpec;

/// Rows of numbers under named columns, plus comment lines for the CSV header.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Keeps only the named columns, in the given order.
    pub fn select(&self, names: &[&str]) -> Dataset {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.columns.iter().position(|c| c == n).expect("column exists"))
            .collect();
        Dataset {
            comments: self.comments.clone(),
            columns: names.iter().map(|s| s.to_string()).collect(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&k| r[k]).collect()).collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            for line in c.lines() {
                writeln!(out, "# {line}").unwrap();
            }
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::result::Result<(), CliError> {
        std::fs::write(path, self.to_csv()).map_err(|e| CliError::io(path, e))
    }
}

/// Evaluates the configured state on the energy grid (and the α grid for Bell
/// products). Energies run in parallel; rows come back in grid order.
pub fn run_sweep(cfg: &RunConfig) -> std::result::Result<Dataset, CliError> {
    cfg.validate()?;
    let spec: StateSpec = cfg.state.parse()?;
    let sign = spec.bell_sign(cfg.bell_sign()?);
    let reg = cfg.regulators()?;
    let grid = cfg.grid()?;
    let alphas = if spec.is_bell() { cfg.alphas() } else { vec![0.0] };

    let mut columns = vec!["E_over_mmu"];
    if spec.is_bell() {
        columns.extend(["alpha", "eta"]);
    }
    columns.extend(["sigma_mev2", "dS_C", "dSx", "dSy", "dSz"]);
    if spec.is_bell() {
        columns.extend(["g1", "g2", "g3", "h3"]);
    }
    if spec.is_w() {
        columns.extend(["f3", "f4", "sigma_closed_mev2"]);
    }

    let blocks: Vec<std::result::Result<Vec<Vec<f64>>, CliError>> = cfg
        .energies()
        .par_iter()
        .map(|&x| {
            let setup = cfg.setup(x)?;
            let table = AngularOverlapTable::build(&setup, &grid);
            let inputs = ClosedFormInputs::new(&setup, &reg);
            let mut rows = Vec::with_capacity(alphas.len());
            for &alpha in &alphas {
                let built = spec.build(alpha, sign);
                let state = built.as_in_state();
                let out = rho_c_out(state, &table, &reg)?;
                let before = rho_c_in(state)?;
                let shift = |a| {
                    qed_spectator::observables::spin_expectation(&out, a)
                        - qed_spectator::observables::spin_expectation(&before, a)
                };
                let mut row = vec![x];
                if spec.is_bell() {
                    row.extend([alpha, sign.eta()]);
                }
                row.extend([
                    cross_section_from_table(state, &table),
                    qed_spectator::observables::entropy_change(&before, &out)?,
                    shift(Axis::X),
                    shift(Axis::Y),
                    shift(Axis::Z),
                ]);
                if spec.is_bell() {
                    let (g1, g2, g3) = closed_g(&inputs, alpha, sign);
                    row.extend([g1, g2, g3, closed_h3(&inputs)]);
                }
                if spec.is_w() {
                    let (f3, f4) = closed_f3f4(&inputs);
                    row.extend([f3, f4, cross_section_w_closed(&setup)]);
                }
                rows.push(row);
            }
            Ok(rows)
        })
        .collect();

    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    let echoed = RunConfig { out: None, ..cfg.clone() };
    let config_json = serde_json::to_string_pretty(&echoed).expect("config serialises");
    Ok(Dataset {
        comments: vec![
            format!("qed-spectator sweep, state {}", cfg.state),
            format!("regulators: volume = {:?} MeV^-3, time = {:?} MeV^-1", reg.volume(), reg.time()),
            "energies in muon masses, sigma in MeV^-2, entropies in nats, spins in units of hbar".into(),
            format!("config:\n{config_json}"),
        ],
        columns: columns.into_iter().map(String::from).collect(),
        rows,
    })
}

fn variant(base: &RunConfig, state: &str, e: (f64, f64, usize), alpha: (f64, f64, usize)) -> RunConfig {
    RunConfig {
        state: state.into(),
        e_min: e.0,
        e_max: e.1,
        e_steps: e.2,
        alpha_min: alpha.0,
        alpha_max: alpha.1,
        alpha_steps: alpha.2,
        out: None,
        ..base.clone()
    }
}

fn tagged(mut d: Dataset, title: &str) -> Dataset {
    d.comments.insert(0, title.to_string());
    d
}

/// Writes `fig2.csv` … `fig9.csv` into `outdir`.
pub fn run_figures(base: &RunConfig, outdir: &Path) -> std::result::Result<Vec<std::path::PathBuf>, CliError> {
    use std::f64::consts::PI;
    std::fs::create_dir_all(outdir).map_err(|e| CliError::io(outdir, e))?;
    let alpha = (0.0, PI, 17);
    let single = (0.0, 0.0, 1);
    let surface_e = (1.0, 3.0, 41);
    let line_e = (1.05, 3.0, 40);

    let w_scan = run_sweep(&variant(base, "w", (1.0, 3.0, 201), single))?;
    let w_line = run_sweep(&variant(base, "w", line_e, single))?;
    let psi_plus = run_sweep(&variant(base, "a-psi:+", surface_e, alpha))?;
    let psi_minus = run_sweep(&variant(base, "a-psi:-", surface_e, alpha))?;
    let phi_plus = run_sweep(&variant(base, "a-phi:+", surface_e, alpha))?;
    let psi_line = run_sweep(&variant(base, "a-psi:+", line_e, single))?;
    let phi_line = run_sweep(&variant(base, "a-phi:+", line_e, single))?;

    let mut fig9 = psi_line.select(&["E_over_mmu", "sigma_mev2", "dSz"]);
    fig9.columns = vec!["E_over_mmu".into(), "sigma_psi_mev2".into(), "dSz_psi".into()];
    let phi_cols = phi_line.select(&["sigma_mev2", "dSz"]);
    for (row, extra) in fig9.rows.iter_mut().zip(&phi_cols.rows) {
        row.extend(extra);
    }
    fig9.columns.extend(["sigma_phi_mev2".into(), "dSz_phi".into()]);

    let figures = [
        ("fig2.csv", tagged(w_scan.select(&["E_over_mmu", "sigma_mev2", "dS_C", "dSz", "f3", "f4", "sigma_closed_mev2"]), "W state: entropy and spin-z shifts with the cross section against energy")),
        ("fig3.csv", tagged(w_line.select(&["E_over_mmu", "sigma_mev2", "dS_C", "dSz"]), "W state: entropy and spin-z shifts paired with the cross section")),
        ("fig4.csv", tagged(psi_plus.select(&["E_over_mmu", "alpha", "dS_C"]), "A(alpha) x Bell pair: spectator entropy shift surface (same for Psi+-, Phi+-)")),
        ("fig5.csv", tagged(psi_plus.select(&["E_over_mmu", "alpha", "dSx"]), "A(alpha) x Psi+ (and Phi+): spin-x shift surface")),
        ("fig6.csv", tagged(psi_minus.select(&["E_over_mmu", "alpha", "dSx"]), "A(alpha) x Psi- (and Phi-): spin-x shift surface")),
        ("fig7.csv", tagged(psi_plus.select(&["E_over_mmu", "alpha", "dSz"]), "A(alpha) x Psi+-: spin-z shift surface")),
        ("fig8.csv", tagged(phi_plus.select(&["E_over_mmu", "alpha", "dSz"]), "A(alpha) x Phi+-: spin-z shift surface")),
        ("fig9.csv", tagged(fig9, "alpha = 0: spin-z shift paired with the cross section for Psi+ and Phi+")),
    ];
    let mut written = Vec::new();
    for (name, data) in figures {
        let path = outdir.join(name);
        data.write(&path)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let d = Dataset {
            comments: vec!["a\nb".into()],
            columns: vec!["x".into(), "y".into()],
            rows: vec![vec![1.0, 2.5e-9]],
        };
        assert_eq!(d.to_csv(), "# a\n# b\nx,y\n1.0,2.5e-9\n");
        assert_eq!(d.select(&["y"]).rows, vec![vec![2.5e-9]]);
    }

    #[test]
    fn w_sweep_columns_and_peak() {
        let cfg = RunConfig { e_steps: 81, quad_order: 16, ..RunConfig::default() };
        let d = run_sweep(&cfg).unwrap();
        for c in ["E_over_mmu", "sigma_mev2", "dS_C", "dSz", "f3", "f4"] {
            assert!(d.columns.iter().any(|x| x == c), "{c}");
        }
        let e = d.column("E_over_mmu").unwrap();
        let argmax = |v: Vec<f64>| (0..v.len()).max_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap();
        let (i, j) = (argmax(d.column("sigma_mev2").unwrap()), argmax(d.column("dS_C").unwrap()));
        assert_eq!(i, j);
        assert!((e[i] - 1.18).abs() <= 0.03, "{}", e[i]);
    }
}
