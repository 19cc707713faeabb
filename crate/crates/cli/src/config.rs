//! Model configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment; blank lines are
//! ignored. Keys are dotted and each may appear once. Unknown keys are errors.
//!
//! | key            | type    | required | default                          |
//! |----------------|---------|----------|----------------------------------|
//! | `family.class` | name    | yes      |                                  |
//! | `family.b`     | real    | yes      |                                  |
//! | `family.c`     | real    | no       | `0`                              |
//! | `family.u`     | name    | yes      |                                  |
//! | `labels.k`     | real    | yes      |                                  |
//! | `labels.s`     | real    | no       | `labels.k`                       |
//! | `dirac.A`      | real    | yes      |                                  |
//! | `grid.min`     | real    | no       | natural window of the map        |
//! | `grid.max`     | real    | no       | natural window of the map        |
//! | `grid.n`       | integer | no       | `2001`                           |
//! | `grid.margin`  | real    | no       | `1e-3`                           |
//! | `ordering`     | name    | no       | `bendaniel_duke`                 |
//!
//! Classes: `omega_negative`, `omega_zero_plus`, `omega_zero_minus`,
//! `omega_positive`. Maps: `identity`, `artanh`, `arccoth`. Orderings:
//! `bendaniel_duke`, `zhu_kroemer`, `mustafa_mazharimousavi` or
//! `custom(eta, beta, gamma)` with `eta + beta + gamma = -1`.
//!
//! A window end is open when the map or the family is singular there
//! (`x = ±1` for artanh and arccoth, `x = c` for the identity map in the
//! `omega > 0` class).

use std::collections::BTreeMap;
use std::path::Path;

use sodirac_core::algebra::{FamilyClass, PctMap, ZeroSign};
use sodirac_core::model::{default_domain, ModelSpec};
use sodirac_core::potentials::{OrderingParams, OrderingPreset};
use sodirac_core::Interval;

use crate::error::{CliError, ConfigError};

pub const DEFAULT_GRID_N: usize = 2001;
pub const DEFAULT_MARGIN: f64 = 1e-3;

const KEYS: [&str; 12] = [
    "family.class",
    "family.b",
    "family.c",
    "family.u",
    "labels.k",
    "labels.s",
    "dirac.A",
    "grid.min",
    "grid.max",
    "grid.n",
    "grid.margin",
    "ordering",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ordering {
    Preset(OrderingPreset),
    Custom(OrderingParams),
}

impl Ordering {
    pub fn params(&self) -> OrderingParams {
        match self {
            Ordering::Preset(p) => p.params(),
            Ordering::Custom(p) => *p,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Ordering::Preset(p) => p.name().to_string(),
            Ordering::Custom(p) => format!("custom({}, {}, {})", p.eta(), p.beta(), p.gamma()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub class: FamilyClass,
    pub b: f64,
    pub c: f64,
    pub u: PctMap,
    pub k: f64,
    pub s: f64,
    pub a: f64,
    pub grid_min: Option<f64>,
    pub grid_max: Option<f64>,
    pub grid_n: usize,
    pub margin: f64,
    pub ordering: Ordering,
}

pub fn class_from_name(name: &str) -> Option<FamilyClass> {
    Some(match name {
        "omega_negative" => FamilyClass::OmegaNegative,
        "omega_zero_plus" => FamilyClass::OmegaZero(ZeroSign::Plus),
        "omega_zero_minus" => FamilyClass::OmegaZero(ZeroSign::Minus),
        "omega_positive" => FamilyClass::OmegaPositive,
        _ => return None,
    })
}

pub fn map_from_name(name: &str) -> Option<PctMap> {
    Some(match name {
        "identity" => PctMap::Identity,
        "artanh" => PctMap::Artanh,
        "arccoth" => PctMap::Arccoth,
        _ => return None,
    })
}

fn parse_real(line: usize, key: &str, v: &str) -> Result<f64, ConfigError> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(ConfigError::at(line, key.to_string(), format!("expected a finite real, found `{v}`"))),
    }
}

fn parse_ordering(line: usize, v: &str) -> Result<Ordering, ConfigError> {
    let key = || Some("ordering".to_string());
    if let Some(p) = OrderingPreset::from_name(v) {
        return Ok(Ordering::Preset(p));
    }
    let inner = v
        .strip_prefix("custom(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ConfigError::at(line, key(), format!("unknown ordering `{v}`")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(ConfigError::at(line, key(), "custom ordering takes three values (eta, beta, gamma)"));
    }
    let vals = parts.iter().map(|p| parse_real(line, "ordering", p)).collect::<Result<Vec<_>, _>>()?;
    OrderingParams::new(vals[0], vals[1], vals[2]).map(Ordering::Custom).map_err(|_| {
        ConfigError::at(
            line,
            key(),
            format!(
                "von Roos ambiguity parameters must satisfy eta + beta + gamma = -1 (got {} + {} + {} = {})",
                vals[0],
                vals[1],
                vals[2],
                vals[0] + vals[1] + vals[2]
            ),
        )
    })
}

impl ModelConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError { line: None, field: None, message: format!("cannot read {}: {e}", path.display()) })?;
        Ok(Self::parse(&text)?)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) =
                body.split_once('=').ok_or_else(|| ConfigError::at(n, None, format!("expected `key = value`, found `{body}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::at(n, key.to_string(), "unknown key"));
            }
            if value.is_empty() {
                return Err(ConfigError::at(n, key.to_string(), "missing value"));
            }
            if let Some((first, _)) = raw.insert(key, (n, value)) {
                return Err(ConfigError::at(n, key.to_string(), format!("duplicate key (first set on line {first})")));
            }
        }
        let need = |k: &str| raw.get(k).copied().ok_or_else(|| ConfigError::field(k, "required key is missing"));
        let real = |k: &str| -> Result<Option<f64>, ConfigError> {
            raw.get(k).map(|&(n, v)| parse_real(n, k, v)).transpose()
        };

        let (n, v) = need("family.class")?;
        let class = class_from_name(v).ok_or_else(|| ConfigError::at(n, "family.class".to_string(), format!("unknown class `{v}`")))?;
        let (n, v) = need("family.u")?;
        let u = map_from_name(v).ok_or_else(|| ConfigError::at(n, "family.u".to_string(), format!("unknown map `{v}`")))?;
        let (n, v) = need("family.b")?;
        let b = parse_real(n, "family.b", v)?;
        let c = real("family.c")?.unwrap_or(0.0);
        let (n, v) = need("labels.k")?;
        let k = parse_real(n, "labels.k", v)?;
        let s = real("labels.s")?.unwrap_or(k);
        let (n, v) = need("dirac.A")?;
        let a = parse_real(n, "dirac.A", v)?;
        let grid_n = match raw.get("grid.n") {
            Some(&(n, v)) => v
                .parse::<usize>()
                .map_err(|_| ConfigError::at(n, "grid.n".to_string(), format!("expected a positive integer, found `{v}`")))?,
            None => DEFAULT_GRID_N,
        };
        let margin = real("grid.margin")?.unwrap_or(DEFAULT_MARGIN);
        let ordering = match raw.get("ordering") {
            Some(&(n, v)) => parse_ordering(n, v)?,
            None => Ordering::Preset(OrderingPreset::BenDanielDuke),
        };
        let cfg = ModelConfig {
            class,
            b,
            c,
            u,
            k,
            s,
            a,
            grid_min: real("grid.min")?,
            grid_max: real("grid.max")?,
            grid_n,
            margin,
            ordering,
        };
        cfg.check_fields()?;
        Ok(cfg)
    }

    fn check_fields(&self) -> Result<(), ConfigError> {
        if !(self.a > 0.0) {
            return Err(ConfigError::field("dirac.A", format!("A = m v_f^2 must be positive, got {}", self.a)));
        }
        if !(self.k >= 0.0) {
            return Err(ConfigError::field("labels.k", format!("k must be >= 0, got {}", self.k)));
        }
        let steps = self.s - self.k;
        if !(steps >= -1e-12) || (steps - steps.round()).abs() > 1e-12 {
            return Err(ConfigError::field("labels.s", format!("s - k must be a non-negative integer, got s = {}", self.s)));
        }
        if self.class != FamilyClass::OmegaZero(ZeroSign::Plus) && self.class != FamilyClass::OmegaZero(ZeroSign::Minus) && self.b == 0.0 {
            return Err(ConfigError::field("family.b", "b must be non-zero for this class"));
        }
        if self.grid_n < sodirac_core::profiles::MIN_GRID_NODES {
            return Err(ConfigError::field(
                "grid.n",
                format!("at least {} nodes are required, got {}", sodirac_core::profiles::MIN_GRID_NODES, self.grid_n),
            ));
        }
        if !(self.margin > 0.0) {
            return Err(ConfigError::field("grid.margin", format!("margin must be positive, got {}", self.margin)));
        }
        Ok(())
    }

    fn is_singular_end(&self, x: f64) -> bool {
        match self.u {
            PctMap::Artanh | PctMap::Arccoth => x.abs() == 1.0,
            PctMap::Identity => self.class == FamilyClass::OmegaPositive && x == self.c,
        }
    }

    /// The `x` window: `grid.min`/`grid.max` when given, else the natural one.
    pub fn domain(&self) -> Result<Interval, CliError> {
        let natural = default_domain(self.class, self.u, self.c);
        let lo = self.grid_min.unwrap_or(natural.lo);
        let hi = self.grid_max.unwrap_or(natural.hi);
        if !(lo < hi) {
            return Err(CliError::Domain(format!("grid.min = {lo} must be below grid.max = {hi}")));
        }
        let d = Interval::new(lo, hi, self.is_singular_end(lo), self.is_singular_end(hi))
            .map_err(|e| CliError::Domain(e.to_string()))?;
        self.u.check_domain(&d).map_err(|_| {
            CliError::Domain(match self.u {
                PctMap::Artanh => format!("u = artanh needs a window inside (-1, 1), got [{lo}, {hi}]"),
                PctMap::Arccoth => format!("u = arccoth needs |x| > 1 on the whole window, got [{lo}, {hi}]"),
                PctMap::Identity => format!("window [{lo}, {hi}] is not admissible"),
            })
        })?;
        if self.u == PctMap::Identity && self.class == FamilyClass::OmegaPositive && lo < self.c && hi > self.c {
            return Err(CliError::Domain(format!("window [{lo}, {hi}] contains the singular point x = c = {}", self.c)));
        }
        Ok(d)
    }

    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        Ok(ModelSpec {
            class: self.class,
            b: self.b,
            c: self.c,
            map: self.u,
            domain: Some(self.domain()?),
            k: self.k,
            s: self.s,
            a: self.a,
        })
    }

    /// Effective values of every key, for report provenance.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let d = self.domain().ok();
        m.insert("family.class".into(), self.class.name().into());
        m.insert("family.b".into(), self.b.to_string());
        m.insert("family.c".into(), self.c.to_string());
        m.insert("family.u".into(), self.u.name().into());
        m.insert("labels.k".into(), self.k.to_string());
        m.insert("labels.s".into(), self.s.to_string());
        m.insert("dirac.A".into(), self.a.to_string());
        m.insert("grid.min".into(), d.map(|d| d.lo.to_string()).unwrap_or_default());
        m.insert("grid.max".into(), d.map(|d| d.hi.to_string()).unwrap_or_default());
        m.insert("grid.n".into(), self.grid_n.to_string());
        m.insert("grid.margin".into(), self.margin.to_string());
        m.insert("ordering".into(), self.ordering.name());
        m
    }
}
