use std::fmt::Write;
use std::path::{Path, PathBuf};

use sodirac_core::algebra::{first_excited, ground_state, FamilyClass, PctMap};
use sodirac_core::dirac::build_eigen_spinor;
use sodirac_core::model::ModelSpec;
use sodirac_core::potentials::{is_half, veff};
use sodirac_core::spectral::{verify_algebraic_spectrum, SpectralVerdict};
use sodirac_core::{Interval, ModelBundle, ScalarProfile};

use crate::config::ModelConfig;
use crate::csv;
use crate::error::CliError;

/// Rows shown in the build summary table.
const SUMMARY_ROWS: usize = 9;

pub const FIGURE1_B: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const FIGURE2_B: [f64; 4] = [-0.5, -1.0, -2.0, -5.0];
/// Outer reach `|x| <= 3` of the figure-2 curves.
pub const FIGURE2_REACH: f64 = 3.0;

fn fmt_interval(d: &Interval) -> String {
    format!("{}{}, {}{}", if d.open_lo { '(' } else { '[' }, d.lo, d.hi, if d.open_hi { ')' } else { ']' })
}

/// `V_bare = V_s - V_eff(M, 0)`: the potential that the chosen ordering turns
/// into `V_s`.
fn bare_potential(model: &ModelBundle, cfg: &ModelConfig) -> Result<ScalarProfile, CliError> {
    let zero = ScalarProfile::constant(model.domain(), 0.0);
    let kinetic = veff(model.m(), &zero, &cfg.ordering.params())?;
    Ok(model.v_s() - &kinetic)
}

/// The model summary printed by `sodirac build`, and the CSV text when asked.
pub fn build(cfg: &ModelConfig, want_csv: bool) -> Result<(String, Option<String>), CliError> {
    let model = ModelBundle::build(&cfg.model_spec()?)?;
    let grid = model.grid(cfg.grid_n, cfg.margin)?;
    let half = is_half(cfg.k);
    let mut out = String::new();
    let p = cfg.ordering.params();
    let _ = writeln!(out, "model: {}, u = {}, b = {}, c = {}", cfg.class, cfg.u.name(), cfg.b, cfg.c);
    let _ = writeln!(out, "domain: {}, grid n = {}, margin = {}", fmt_interval(&model.domain()), grid.len(), grid.margin());
    let _ = writeln!(out, "labels: k = {}, s = {}", cfg.k, cfg.s);
    let _ = writeln!(out, "ordering: {} (eta = {}, beta = {}, gamma = {})", cfg.ordering.name(), p.eta(), p.beta(), p.gamma());
    let _ = writeln!(out, "A = {}", cfg.a);
    let entry = model.spectrum(&[cfg.k])?[0];
    let _ = writeln!(out, "E^2 = {}", entry.e_squared);
    match entry.e {
        Some(e) => {
            let _ = writeln!(out, "E = +{e}, -{e}");
        }
        None => {
            let _ = writeln!(out, "E complex: A^2 < (k - 1/2)^2");
        }
    }
    let chi0 = ground_state(&model.family, cfg.k, &grid)?;
    if half && is_half(cfg.s) {
        let es = build_eigen_spinor(&chi0, &model.family, cfg.a, 1, &grid)?;
        let _ = writeln!(out, "spinor norm^2 on the grid (E > 0) = {:.12e}", es.spinor.l2_norm_squared(&grid)?);
    } else {
        let _ = writeln!(out, "W, spinor: only defined for k = s = 1/2");
    }

    let bare = bare_potential(&model, cfg)?;
    let w = half.then(|| model.pseudoscalar());
    let _ = writeln!(out);
    let cols = ["x", "M", "v_f", "F", "G", "V_s", "W", "V_bare"];
    let _ = writeln!(out, "{}", cols.map(|c| format!("{c:>24}")).join(""));
    let nodes = grid.nodes();
    for i in 0..SUMMARY_ROWS {
        let x = nodes[i * (nodes.len() - 1) / (SUMMARY_ROWS - 1)];
        let vals = [
            Some(x),
            Some(model.m().eval(x)?),
            Some(model.v_f().eval(x)?),
            Some(model.family.f.eval(x)?),
            Some(model.family.g.eval(x)?),
            Some(model.v_s().eval(x)?),
            w.as_ref().map(|w| w.eval(x)).transpose()?,
            Some(bare.eval(x)?),
        ];
        let row: String = vals.iter().map(|v| format!("{:>24}", v.map(|v| format!("{v:.15e}")).unwrap_or_else(|| "-".into()))).collect();
        let _ = writeln!(out, "{row}");
    }

    let csv_text = if want_csv {
        let chi1 = first_excited(&model.family, cfg.k, &grid)?;
        let quarter = model.m().powf(0.25);
        let mut rows = Vec::with_capacity(grid.len());
        for &x in grid.nodes() {
            let c0 = chi0.chi().eval(x)?;
            rows.push(vec![
                Some(x),
                Some(model.m().eval(x)?),
                Some(model.v_f().eval(x)?),
                Some(model.family.f.eval(x)?),
                Some(model.family.g.eval(x)?),
                Some(model.v_s().eval(x)?),
                w.as_ref().map(|w| w.eval(x)).transpose()?,
                Some(c0),
                Some(chi1.chi().eval(x)?),
                Some((quarter.eval(x)? * c0).abs()),
            ]);
        }
        let mut meta = vec![
            ("model".to_string(), format!("{}, u = {}, b = {}, c = {}", cfg.class, cfg.u.name(), cfg.b, cfg.c)),
            ("labels".to_string(), format!("k = {}, s = {}", cfg.k, cfg.s)),
            ("A".to_string(), cfg.a.to_string()),
            ("grid".to_string(), format!("{} nodes on {}, margin {}", grid.len(), fmt_interval(&model.domain()), grid.margin())),
            ("chi0".to_string(), "ground state, integral anchored at the grid midpoint".to_string()),
        ];
        if !half {
            meta.push(("W".to_string(), "empty: defined for k = 1/2 only".to_string()));
        }
        let columns = ["x", "M", "v_f", "F", "G", "V_s", "W", "chi0", "chi1", "psi_plus_abs"];
        Some(csv::table(&meta, &columns, &rows))
    } else {
        None
    };
    Ok((out, csv_text))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    One,
    Two,
    Both,
}

impl Which {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" => Some(Which::One),
            "2" => Some(Which::Two),
            "both" => Some(Which::Both),
            _ => None,
        }
    }
}

fn curve_rows(model: &ModelBundle, xs: &[f64], rows: &mut Vec<Vec<Option<f64>>>) -> Result<(), CliError> {
    for &x in xs {
        rows.push(vec![Some(x), Some(model.v_s().eval(x)?)]);
    }
    Ok(())
}

/// Lattice divisions per unit length for the figure curves: `x = i / N` with
/// `N = (grid.n - 1) / 2`, so values such as `x = 0.6` are nodes.
pub fn lattice_divisions(cfg: &ModelConfig) -> usize {
    ((cfg.grid_n.saturating_sub(1)) / 2).max(8)
}

/// `i / N` for the integers `i` with `lo <= i / N <= hi`.
fn lattice(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let n = n as f64;
    let first = (lo * n - 1e-9).ceil() as i64;
    let last = (hi * n + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 / n).collect()
}

fn figure_file(name: &str, b: f64) -> String {
    format!("{name}_b_{b}.csv")
}

/// Figure 1: `V_s` for the artanh model (`k = 1/2`) on `|x| <= 1 - margin`.
pub fn figure1(cfg: &ModelConfig, b: f64) -> Result<String, CliError> {
    let model = ModelBundle::build(&ModelSpec::artanh_example(b, 0.5, 1.0))?;
    let n = lattice_divisions(cfg);
    let reach = 1.0 - cfg.margin;
    let mut rows = Vec::new();
    curve_rows(&model, &lattice(n, -reach, reach), &mut rows)?;
    let meta = vec![
        ("figure".to_string(), "1".to_string()),
        ("model".to_string(), format!("{}, u = {}, c = 0, k = 0.5, s = 0.5", FamilyClass::OmegaNegative, PctMap::Artanh.name())),
        ("b".to_string(), b.to_string()),
        ("range".to_string(), format!("|x| <= 1 - {}", cfg.margin)),
        ("nodes".to_string(), format!("x = i/{n}")),
    ];
    Ok(csv::table(&meta, &["x", "V_s"], &rows))
}

/// Figure 2: `V_s` for the arccoth model (`k = 1/2`, `W = b sqrt(x^2 - 1)`) on
/// `1 + margin <= |x| <= 3`, both branches.
pub fn figure2(cfg: &ModelConfig, b: f64) -> Result<String, CliError> {
    let n = lattice_divisions(cfg);
    let inner = 1.0 + cfg.margin;
    let mut rows = Vec::new();
    for (lo, hi, open_lo, open_hi) in [(-FIGURE2_REACH, -1.0, false, true), (1.0, FIGURE2_REACH, true, false)] {
        let mut spec = ModelSpec::arccoth_example(b, 0.5, 1.0);
        spec.domain = Some(Interval::new(lo, hi, open_lo, open_hi)?);
        let model = ModelBundle::build(&spec)?;
        let xs = if lo < 0.0 { lattice(n, -FIGURE2_REACH, -inner) } else { lattice(n, inner, FIGURE2_REACH) };
        curve_rows(&model, &xs, &mut rows)?;
    }
    let meta = vec![
        ("figure".to_string(), "2".to_string()),
        ("model".to_string(), format!("{}, u = {}, c = 0, k = 0.5, s = 0.5", FamilyClass::OmegaPositive, PctMap::Arccoth.name())),
        ("b".to_string(), format!("{b} (W = b sqrt(x^2 - 1))")),
        ("range".to_string(), format!("1 + {} <= |x| <= {FIGURE2_REACH}", cfg.margin)),
        ("nodes".to_string(), format!("x = i/{n}")),
    ];
    Ok(csv::table(&meta, &["x", "V_s"], &rows))
}

/// Writes the figure CSVs into `dir` and returns their paths.
pub fn figures(cfg: &ModelConfig, dir: &Path, which: Which, b1: &[f64], b2: &[f64]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    if which != Which::Two {
        for &b in b1 {
            let path = dir.join(figure_file("figure1", b));
            std::fs::write(&path, figure1(cfg, b)?)?;
            written.push(path);
        }
    }
    if which != Which::One {
        for &b in b2 {
            let path = dir.join(figure_file("figure2", b));
            std::fs::write(&path, figure2(cfg, b)?)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// `k, E^2, E, real` per requested `k`, with the spectral oracle's verdict
/// when `oracle` is set.
pub fn spectrum(cfg: &ModelConfig, ks: &[f64], oracle: bool) -> Result<String, CliError> {
    let model = ModelBundle::build(&cfg.model_spec()?)?;
    let mut out = String::new();
    let mut header = format!("{:>8} {:>24} {:>24} {:>8}", "k", "E^2", "E", "real");
    if oracle {
        header.push_str("  oracle");
    }
    let _ = writeln!(out, "{header}");
    for entry in model.spectrum(ks)? {
        let e = entry.e.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
        let flag = if entry.real { "real" } else { "complex" };
        let mut line = format!("{:>8} {:>24} {:>24} {:>8}", entry.k, entry.e_squared, e, flag);
        if oracle {
            line.push_str("  ");
            line.push_str(&oracle_cell(cfg, entry.k));
        }
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}

fn oracle_cell(cfg: &ModelConfig, k: f64) -> String {
    let run = || -> Result<String, CliError> {
        let mut spec = cfg.model_spec()?;
        spec.k = k;
        spec.s = k;
        let model = ModelBundle::build(&spec)?;
        let grid = model.grid(cfg.grid_n, cfg.margin)?;
        let u = &model.family.u;
        let (a, b) = (u.eval(grid.first())?, u.eval(grid.last())?);
        let r = verify_algebraic_spectrum(&model.family, k, (a.min(b), a.max(b)), crate::verify::SPECTRAL_NODES, crate::verify::SPECTRAL_TOL)?;
        Ok(match (r.verdict, r.lowest) {
            (SpectralVerdict::BoundState, Some(l)) => format!("lowest eigenvalue {l:.6} vs {:.6} ({})", r.expected, r.status.name()),
            (verdict, _) => verdict.to_string(),
        })
    };
    run().unwrap_or_else(|e| format!("unavailable: {e}"))
}
