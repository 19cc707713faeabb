//! The full verification suite run by `sodirac verify`.

use sodirac_core::algebra::{
    casimir_apply, constraint_residuals, ground_state, ladder_apply, omega_invariant, CasimirVariant,
    Direction, FamilyClass, LadderState, PctMap,
};
use sodirac_core::dirac::{build_eigen_spinor, coupled_residuals, decoupled_residual, lower_from_upper, reduced_residual, Spinor};
use sodirac_core::potentials::{
    chi_equation_residual, curvature_identity_residual, is_half, psi_equation_residual, riccati_residual, vs_family,
};
use sodirac_core::spectral::{verify_algebraic_spectrum, SpectralStatus};
use sodirac_core::{Error, Grid, ModelBundle, SampledField};

use crate::config::ModelConfig;
use crate::error::CliError;
use crate::report::{CheckRecord, GridInfo, Provenance, Status, Tool, VerificationReport, SCHEMA_VERSION};

pub const CONSTRAINT_TOL: f64 = 1e-8;
pub const OMEGA_TOL: f64 = 1e-8;
pub const ANNIHILATION_TOL: f64 = 1e-8;
pub const CASIMIR_TOL: f64 = 1e-6;
pub const CASIMIR_AGREEMENT_TOL: f64 = 1e-8;
pub const EQUATION_TOL: f64 = 1e-6;
pub const CURVATURE_TOL: f64 = 1e-9;
pub const RICCATI_TOL: f64 = 1e-10;
pub const DIRAC_TOL: f64 = 1e-6;
pub const SPECTRAL_TOL: f64 = 1e-3;
pub const SPECTRAL_NODES: usize = 2000;
/// Energy offset used to confirm the coupled residual detects a wrong `E`.
pub const ENERGY_PERTURBATION: f64 = 0.1;
pub const SENSITIVITY_FACTOR: f64 = 10.0;

/// Outcome of one check before it is turned into a record.
struct Outcome {
    residual: Option<f64>,
    tolerance: Option<f64>,
    status: Status,
    notes: String,
}

impl Outcome {
    fn upper(residual: f64, tolerance: f64, notes: impl Into<String>) -> Self {
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        Outcome { residual: Some(residual), tolerance: Some(tolerance), status, notes: notes.into() }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Outcome { residual: None, tolerance: None, status: Status::Skipped, notes: reason.into() }
    }
}

fn ratio(a: &SampledField, b: &SampledField) -> f64 {
    a.sup_norm() / b.sup_norm().max(f64::MIN_POSITIVE)
}

fn diff(a: &SampledField, b: &SampledField, scale: f64) -> SampledField {
    let v = a.values().iter().zip(b.values()).map(|(x, y)| x - scale * y).collect();
    SampledField::new(a.grid().clone(), v).expect("same grid")
}

struct Suite<'a> {
    model: &'a ModelBundle,
    grid: &'a Grid,
    scale: f64,
    k: f64,
}

impl Suite<'_> {
    fn constraints(&self) -> Result<Outcome, Error> {
        let (rf, rg) = constraint_residuals(&self.model.family, self.grid)?;
        Ok(Outcome::upper(rf.sup_norm().max(rg.sup_norm()), CONSTRAINT_TOL * self.scale, "max |r_F|, |r_G|"))
    }

    fn omega(&self) -> Result<Outcome, Error> {
        let est = omega_invariant(&self.model.family, self.grid)?;
        let want = self.model.family.omega();
        let r = (est.omega - want).abs().max(est.max_deviation);
        Ok(Outcome::upper(r, OMEGA_TOL * self.scale, format!("omega = {:.12e} (class value {want:e})", est.omega)))
    }

    fn ground(&self) -> Result<LadderState, Error> {
        ground_state(&self.model.family, self.k, self.grid)
    }

    fn annihilation(&self) -> Result<Outcome, Error> {
        let chi0 = self.ground()?;
        let lowered = ladder_apply(Direction::Lower, &chi0, &self.model.family)?;
        let r = ratio(&lowered.sample(self.grid)?, &chi0.sample(self.grid)?);
        Ok(Outcome::upper(r, ANNIHILATION_TOL * self.scale, "||J- chi0|| / ||chi0||"))
    }

    fn states(&self) -> Result<Vec<LadderState>, Error> {
        let chi0 = self.ground()?;
        let chi1 = ladder_apply(Direction::Raise, &chi0, &self.model.family)?;
        Ok(vec![chi0, chi1])
    }

    fn casimir(&self) -> Result<(Outcome, Outcome), Error> {
        let kk = self.k * (self.k - 1.0);
        let (mut worst, mut agree) = (0.0f64, 0.0f64);
        for st in self.states()? {
            let chi = st.sample(self.grid)?;
            let up = casimir_apply(&st, &self.model.family, CasimirVariant::Upper, self.grid)?;
            let lo = casimir_apply(&st, &self.model.family, CasimirVariant::Lower, self.grid)?;
            worst = worst.max(ratio(&diff(&up, &chi, kk), &chi)).max(ratio(&diff(&lo, &chi, kk), &chi));
            agree = agree.max(ratio(&diff(&up, &lo, 1.0), &chi));
        }
        Ok((
            Outcome::upper(worst, CASIMIR_TOL * self.scale, "||J^2 chi - k(k-1) chi|| / ||chi||, chi0 and chi1"),
            Outcome::upper(agree, CASIMIR_AGREEMENT_TOL * self.scale, "upper vs lower Casimir ordering"),
        ))
    }

    fn schrodinger(&self, psi_form: bool) -> Result<Outcome, Error> {
        let m = self.model.m();
        let quarter = m.powf(0.25);
        let mut worst = 0.0f64;
        for st in self.states()? {
            let vs = vs_family(&self.model.family, st.s())?;
            let r = if psi_form {
                psi_equation_residual(m, &vs, &(&quarter * st.chi()), self.k, self.grid)?
            } else {
                chi_equation_residual(m, &vs, &st, self.k, self.grid)?
            };
            worst = worst.max(r.relative());
        }
        Ok(Outcome::upper(worst, EQUATION_TOL * self.scale, "relative sup-norm, chi0 and chi1"))
    }

    fn curvature(&self) -> Result<Outcome, Error> {
        let r = curvature_identity_residual(self.model.m(), self.model.v_f(), self.grid)?;
        Ok(Outcome::upper(r.sup_norm(), CURVATURE_TOL * self.scale, "sup norm"))
    }

    fn riccati(&self) -> Result<Outcome, Error> {
        let vs = vs_family(&self.model.family, self.k)?;
        let r = riccati_residual(&self.model.pseudoscalar(), self.model.v_f(), &vs, self.grid)?;
        let note = if is_half(self.k) { "W^2 + v_f W' - V_k".to_string() } else { format!("W^2 + v_f W' - V_k; the link requires k = 1/2, k = {}", self.k) };
        Ok(Outcome::upper(r.mixed(), RICCATI_TOL * self.scale, note))
    }

    /// `chi0` must decrease outwards at every window end that cuts off an
    /// infinite stretch of the map's natural domain.
    fn decay(&self) -> Result<Outcome, Error> {
        let spec = &self.model.spec;
        let d = self.model.domain();
        let infinite_beyond = |hi_side: bool| match spec.map {
            PctMap::Identity => hi_side || spec.class != FamilyClass::OmegaPositive || d.lo < spec.c,
            PctMap::Artanh => false,
            PctMap::Arccoth => (hi_side && d.lo >= 1.0) || (!hi_side && d.hi <= -1.0),
        };
        let chi0 = self.ground()?;
        let mut worst: Option<f64> = None;
        let mut ends = Vec::new();
        for (hi_side, x, open) in [(false, d.lo, d.open_lo), (true, d.hi, d.open_hi)] {
            if open || !infinite_beyond(hi_side) {
                continue;
            }
            let x = if hi_side { self.grid.last().min(x) } else { self.grid.first().max(x) };
            let j = chi0.chi().jet(x)?;
            let outward = if hi_side { 1.0 } else { -1.0 } * j.derivative(1) / j.value();
            worst = Some(worst.map_or(outward, |w: f64| w.max(outward)));
            ends.push(format!("x = {x}: {outward:.3e}"));
        }
        Ok(match worst {
            None => Outcome::skipped("no window end truncates an infinite direction"),
            Some(w) => {
                let status = if w < 0.0 { Status::Pass } else { Status::Fail };
                Outcome {
                    residual: Some(w),
                    tolerance: Some(0.0),
                    status,
                    notes: format!("outward log-derivative of chi0 must be negative ({})", ends.join(", ")),
                }
            }
        })
    }

    fn dirac_skip(&self) -> Option<String> {
        let spec = &self.model.spec;
        (!is_half(spec.k) || !is_half(spec.s))
            .then(|| format!("the Dirac eigen-spinor exists only for k = s = 1/2 (k = {}, s = {})", spec.k, spec.s))
    }

    fn dirac(&self) -> Result<[Outcome; 4], Error> {
        if let Some(reason) = self.dirac_skip() {
            return Ok([0, 1, 2, 3].map(|_| Outcome::skipped(reason.clone())));
        }
        let a = self.model.spec.a;
        let chi0 = self.ground()?;
        let es = build_eigen_spinor(&chi0, &self.model.family, a, 1, self.grid)?;
        let e = es.spinor.e;
        let (r1, r2) = &es.residual;
        let coupled = r1.local_relative().max(r2.local_relative());
        let plus = &es.spinor.psi_plus;
        let shifted = e + ENERGY_PERTURBATION;
        let wrong = Spinor::new(plus.clone(), lower_from_upper(plus, &es.model.w, &es.model.v_f, shifted, a)?, shifted);
        let p1 = coupled_residuals(&wrong, &es.model, self.grid)?.0.local_relative();
        let bound = (SENSITIVITY_FACTOR * r1.local_relative()).max(1e-3);
        let sensitivity = Outcome {
            residual: Some(p1),
            tolerance: Some(bound),
            status: if p1 >= bound { Status::Pass } else { Status::Fail },
            notes: format!("r1 at E + {ENERGY_PERTURBATION} must exceed the tolerance (lower bound)"),
        };
        let dec = decoupled_residual(plus, &es.model, e, self.grid)?.local_relative();
        let red = reduced_residual(plus, &es.model.w, &es.model.v_f, a, e, self.grid)?.local_relative();
        let tol = DIRAC_TOL * self.scale;
        Ok([
            Outcome::upper(coupled, tol, format!("E = {e}, max(r1, r2) relative to local term size")),
            sensitivity,
            Outcome::upper(dec, tol, "upper-component second-order equation"),
            Outcome::upper(red, tol, "reduced equation under m v_f^2 = A"),
        ])
    }

    fn spectral(&self) -> Result<Outcome, Error> {
        let u = &self.model.family.u;
        let (a, b) = (u.eval(self.grid.first())?, u.eval(self.grid.last())?);
        let range = (a.min(b), a.max(b));
        let r = verify_algebraic_spectrum(&self.model.family, self.k, range, SPECTRAL_NODES, SPECTRAL_TOL * self.scale)?;
        let status = match r.status {
            SpectralStatus::Pass => Status::Pass,
            SpectralStatus::Fail => Status::Fail,
            SpectralStatus::NotAsserted => Status::Skipped,
        };
        let mut notes = format!("{}; u in [{:.6}, {:.6}]", r.verdict, range.0, range.1);
        if let Some(l) = r.lowest {
            notes.push_str(&format!("; lowest eigenvalue {l:.9} vs {:.9}", r.expected));
        }
        if let Some((d, l1, l2)) = r.cutoff_sensitivity {
            notes.push_str(&format!("; cutoff {d:e}: {l1:.9}, {:e}: {l2:.9}", 2.0 * d));
        }
        let (residual, tolerance) = match (r.abs_error, r.formal_residual) {
            (Some(e), _) => (Some(e), Some(SPECTRAL_TOL * self.scale)),
            (None, Some(f)) => (Some(f), Some(sodirac_core::spectral::FORMAL_RESIDUAL_TOL)),
            _ => (None, None),
        };
        Ok(Outcome { residual, tolerance, status, notes })
    }
}

fn record(id: &str, layer: &str, out: Result<Outcome, Error>) -> CheckRecord {
    let (status, residual, tolerance, notes) = match out {
        Ok(o) => (o.status, o.residual, o.tolerance, o.notes),
        Err(e) if e.is_numerical() => (Status::Error, None, None, e.to_string()),
        Err(e) => (Status::Fail, None, None, e.to_string()),
    };
    CheckRecord { check_id: id.into(), layer: layer.into(), status, max_residual: residual, tolerance, notes }
}

/// Runs every check in order; a failing check does not stop later ones.
pub fn run(cfg: &ModelConfig, tolerance_scale: f64) -> Result<VerificationReport, CliError> {
    let spec = cfg.model_spec()?;
    let model = ModelBundle::build(&spec)?;
    let grid = model.grid(cfg.grid_n, cfg.margin)?;
    let suite = Suite { model: &model, grid: &grid, scale: tolerance_scale, k: cfg.k };
    let mut checks = vec![
        record("algebra.constraints", "algebra", suite.constraints()),
        record("algebra.omega_invariant", "algebra", suite.omega()),
        record("algebra.annihilation", "algebra", suite.annihilation()),
    ];
    match suite.casimir() {
        Ok((a, b)) => {
            checks.push(record("algebra.casimir", "algebra", Ok(a)));
            checks.push(record("algebra.casimir_orderings", "algebra", Ok(b)));
        }
        Err(e) => {
            checks.push(record("algebra.casimir", "algebra", Err(e.clone())));
            checks.push(record("algebra.casimir_orderings", "algebra", Err(e)));
        }
    }
    checks.push(record("algebra.ground_state_decay", "algebra", suite.decay()));
    checks.push(record("potentials.chi_equation", "potentials", suite.schrodinger(false)));
    checks.push(record("potentials.psi_equation", "potentials", suite.schrodinger(true)));
    checks.push(record("potentials.curvature_identity", "potentials", suite.curvature()));
    checks.push(record("potentials.riccati", "potentials", suite.riccati()));
    let ids = ["dirac.coupled", "dirac.energy_sensitivity", "dirac.decoupled", "dirac.reduced"];
    match suite.dirac() {
        Ok(outs) => checks.extend(ids.iter().zip(outs).map(|(id, o)| record(id, "dirac", Ok(o)))),
        Err(e) => checks.extend(ids.iter().map(|id| record(id, "dirac", Err(e.clone())))),
    }
    checks.push(record("spectral.oracle", "spectral", suite.spectral()));

    let verdict = if checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped)) { Status::Pass } else { Status::Fail };
    let d = grid.interval();
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        verdict,
        checks,
        provenance: Provenance {
            tool: Tool { name: "sodirac".into(), version: env!("CARGO_PKG_VERSION").into() },
            config: cfg.echo(),
            grid: GridInfo { min: d.lo, max: d.hi, n: grid.len(), margin: grid.margin(), tolerance_scale },
        },
    })
}
