//! Flat key/value scenario configs: `key = value` lines, bracketed arrays,
//! `#` comments. Parsing is line-anchored so diagnostics point at the
//! offending line.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lifted::ZeroPhaseFilter;
use crate::laws::IlcLaw;
use crate::plant::RationalPlant;
use crate::report::sig12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LawKind {
    Arimoto,
    Pd,
    Prototype,
    #[default]
    Modified,
}

impl FromStr for LawKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "arimoto" => Ok(LawKind::Arimoto),
            "pd" => Ok(LawKind::Pd),
            "prototype" => Ok(LawKind::Prototype),
            "modified" => Ok(LawKind::Modified),
            other => Err(format!(
                "unknown law '{other}' (expected arimoto|pd|prototype|modified)"
            )),
        }
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LawKind::Arimoto => "arimoto",
            LawKind::Pd => "pd",
            LawKind::Prototype => "prototype",
            LawKind::Modified => "modified",
        };
        f.write_str(s)
    }
}

/// Parsed scenario configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    pub d: Option<usize>,
    pub truth_num: Option<Vec<f64>>,
    pub truth_den: Option<Vec<f64>>,
    pub law: LawKind,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub q_u: Option<Vec<f64>>,
    pub q_e: Option<Vec<f64>>,
    pub n: usize,
    pub iterations: usize,
    pub grid_size: usize,
    pub sweep: Option<Vec<usize>>,
    pub normalize_by_b: bool,
    pub reference: Option<Vec<f64>>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            num: Vec::new(),
            den: Vec::new(),
            d: None,
            truth_num: None,
            truth_den: None,
            law: LawKind::Modified,
            alpha: 0.5,
            beta: None,
            q_u: None,
            q_e: None,
            n: 100,
            iterations: 50,
            grid_size: crate::analysis::DEFAULT_SYMBOL_GRID,
            sweep: None,
            normalize_by_b: false,
            reference: None,
            seed: 0,
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

fn parse_array(line: usize, raw: &str) -> Result<Vec<f64>> {
    let inner = raw
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected a bracketed array, got '{raw}'")))?;
    let trimmed = inner.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| err(line, format!("invalid number '{}'", tok.trim())))
        })
        .collect()
}

fn parse_scalar<T: FromStr>(line: usize, raw: &str, what: &str) -> Result<T> {
    raw.parse::<T>()
        .map_err(|_| err(line, format!("invalid {what} '{raw}'")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut saw_num = false;
        let mut saw_den = false;
        for (idx, raw_line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(lineno, "expected 'key = value'"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "num" => {
                    cfg.num = parse_array(lineno, value)?;
                    saw_num = true;
                }
                "den" => {
                    cfg.den = parse_array(lineno, value)?;
                    saw_den = true;
                }
                "d" => cfg.d = Some(parse_scalar(lineno, value, "integer")?),
                "truth_num" => cfg.truth_num = Some(parse_array(lineno, value)?),
                "truth_den" => cfg.truth_den = Some(parse_array(lineno, value)?),
                "law" => {
                    cfg.law = value.parse().map_err(|e: String| err(lineno, e))?;
                }
                "alpha" => cfg.alpha = parse_scalar(lineno, value, "number")?,
                "beta" => cfg.beta = Some(parse_scalar(lineno, value, "number")?),
                "q_u" => cfg.q_u = Some(parse_array(lineno, value)?),
                "q_e" => cfg.q_e = Some(parse_array(lineno, value)?),
                "n" => cfg.n = parse_scalar(lineno, value, "integer")?,
                "iterations" => cfg.iterations = parse_scalar(lineno, value, "integer")?,
                "grid_size" => cfg.grid_size = parse_scalar(lineno, value, "integer")?,
                "sweep" => {
                    let vals = parse_array(lineno, value)?;
                    let mut sweep = Vec::with_capacity(vals.len());
                    for v in vals {
                        if v < 1.0 || v.fract() != 0.0 {
                            return Err(err(lineno, format!("invalid sweep length {v}")));
                        }
                        sweep.push(v as usize);
                    }
                    cfg.sweep = Some(sweep);
                }
                "normalize_by_b" => {
                    cfg.normalize_by_b = parse_scalar(lineno, value, "boolean")?;
                }
                "reference" => cfg.reference = Some(parse_array(lineno, value)?),
                "seed" => cfg.seed = parse_scalar(lineno, value, "integer")?,
                other => return Err(err(lineno, format!("unknown key '{other}'"))),
            }
        }
        if !saw_num || !saw_den {
            return Err(err(0, "config must define 'num' and 'den'"));
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        fn arr(v: &[f64]) -> String {
            let items: Vec<String> = v.iter().map(|x| sig12(*x)).collect();
            format!("[{}]", items.join(", "))
        }
        let mut out = String::new();
        out.push_str(&format!("num = {}\n", arr(&self.num)));
        out.push_str(&format!("den = {}\n", arr(&self.den)));
        if let Some(d) = self.d {
            out.push_str(&format!("d = {d}\n"));
        }
        if let Some(v) = &self.truth_num {
            out.push_str(&format!("truth_num = {}\n", arr(v)));
        }
        if let Some(v) = &self.truth_den {
            out.push_str(&format!("truth_den = {}\n", arr(v)));
        }
        out.push_str(&format!("law = {}\n", self.law));
        out.push_str(&format!("alpha = {}\n", sig12(self.alpha)));
        if let Some(b) = self.beta {
            out.push_str(&format!("beta = {}\n", sig12(b)));
        }
        if let Some(v) = &self.q_u {
            out.push_str(&format!("q_u = {}\n", arr(v)));
        }
        if let Some(v) = &self.q_e {
            out.push_str(&format!("q_e = {}\n", arr(v)));
        }
        out.push_str(&format!("n = {}\n", self.n));
        out.push_str(&format!("iterations = {}\n", self.iterations));
        out.push_str(&format!("grid_size = {}\n", self.grid_size));
        if let Some(v) = &self.sweep {
            let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("sweep = [{}]\n", items.join(", ")));
        }
        if self.normalize_by_b {
            out.push_str("normalize_by_b = true\n");
        }
        if let Some(v) = &self.reference {
            out.push_str(&format!("reference = {}\n", arr(v)));
        }
        if self.seed != 0 {
            out.push_str(&format!("seed = {}\n", self.seed));
        }
        out
    }

    pub fn design_plant(&self) -> Result<RationalPlant> {
        let p = RationalPlant::new(self.num.clone(), self.den.clone())?;
        Ok(match self.d {
            Some(d) => p.with_relative_degree(d),
            None => p,
        })
    }

    pub fn truth_plant(&self) -> Result<Option<RationalPlant>> {
        match (&self.truth_num, &self.truth_den) {
            (None, None) => Ok(None),
            (num, den) => {
                let num = num.clone().unwrap_or_else(|| self.num.clone());
                let den = den.clone().unwrap_or_else(|| self.den.clone());
                Ok(Some(RationalPlant::new(num, den)?))
            }
        }
    }

    pub fn q_u_filter(&self) -> Result<ZeroPhaseFilter> {
        match &self.q_u {
            Some(q) => ZeroPhaseFilter::new(q.clone()),
            None => Ok(ZeroPhaseFilter::unit()),
        }
    }

    pub fn q_e_filter(&self) -> Result<ZeroPhaseFilter> {
        match &self.q_e {
            Some(q) => ZeroPhaseFilter::new(q.clone()),
            None => Ok(ZeroPhaseFilter::unit()),
        }
    }

    /// The learning law, with `alpha` already divided by `b` when
    /// `normalize_by_b` is set (the caller supplies `b`).
    pub fn law(&self, b: f64) -> Result<IlcLaw> {
        let alpha = if self.normalize_by_b {
            self.alpha / b
        } else {
            self.alpha
        };
        Ok(match self.law {
            LawKind::Arimoto => IlcLaw::Arimoto { alpha },
            LawKind::Pd => IlcLaw::Pd {
                alpha,
                beta: self.beta.unwrap_or(0.0),
            },
            LawKind::Prototype => IlcLaw::Prototype { alpha },
            LawKind::Modified => IlcLaw::ModifiedRepetitive {
                alpha,
                q_u: self.q_u_filter()?,
                q_e: self.q_e_filter()?,
            },
        })
    }

    /// Explicit reference, or unit-variance pseudo-noise from the seed.
    pub fn reference_vector(&self) -> Vec<f64> {
        match &self.reference {
            Some(r) => r.clone(),
            None => seeded_noise(self.seed, self.n),
        }
    }
}

/// Deterministic standard-normal samples (splitmix64 + Box-Muller).
pub fn seeded_noise(seed: u64, n: usize) -> Vec<f64> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next_u64 = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut uniform = move || (next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u1: f64 = uniform().max(f64::MIN_POSITIVE);
        let u2: f64 = uniform();
        let mag = (-2.0 * u1.ln()).sqrt();
        out.push(mag * (2.0 * std::f64::consts::PI * u2).cos());
        if out.len() < n {
            out.push(mag * (2.0 * std::f64::consts::PI * u2).sin());
        }
    }
    out
}
