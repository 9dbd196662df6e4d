//! Run configuration: defaults, then a `key=value` file, then `--set` overrides, then
//! dedicated flags. Every output carries the final configuration in its header.

use std::collections::BTreeMap;
use std::path::Path;

use polyzeta::analytic::{CountOptions, LocalizeOptions, WindingOptions};
use polyzeta::rouche::{ScanOptions, DEFAULT_CIRCLE_SAMPLES, DEFAULT_TAU_STEP};
use polyzeta::zeta::ZetaParams;
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Subcommand and its parameters, recorded for the header only.
    pub command: String,
    pub params: BTreeMap<String, String>,
    /// Worker threads; zero means one per core.
    pub workers: usize,
    pub seed: u64,
    pub zeta: ZetaParams,
    pub winding: WindingOptions<f64>,
    pub perturbations: Vec<f64>,
    pub localize_tol: f64,
    pub localize_min_side: f64,
    pub localize_strict: bool,
    pub rouche_samples: usize,
    pub rouche_batch: usize,
    pub tau_step: f64,
    pub quad_tol: f64,
    /// Half-width of the accepted band for the weighted zero sum, in units of `log T`.
    pub lm_band_factor: f64,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let count = CountOptions::<f64>::default();
        let loc = LocalizeOptions::<f64>::default();
        Self {
            command: String::new(),
            params: BTreeMap::new(),
            workers: 0,
            seed: 0,
            zeta: ZetaParams::default(),
            winding: count.winding,
            perturbations: count.perturbations,
            localize_tol: loc.tol,
            localize_min_side: loc.min_side,
            localize_strict: loc.strict,
            rouche_samples: DEFAULT_CIRCLE_SAMPLES,
            rouche_batch: ScanOptions::default().batch,
            tau_step: DEFAULT_TAU_STEP,
            quad_tol: polyzeta::quad::DEFAULT_TOL,
            lm_band_factor: 5.0,
            output: None,
        }
    }
}

fn bad(key: &str, value: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key}={value}: {why}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse().map_err(|e| bad(key, value, e))
}

fn positive(key: &str, value: &str) -> Result<f64, CliError> {
    let v: f64 = num(key, value)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(bad(key, value, "must be positive"));
    }
    Ok(v)
}

impl RunConfig {
    /// Keys accepted by [`RunConfig::set`].
    pub const KEYS: &'static [&'static str] = &[
        "workers",
        "seed",
        "output",
        "zeta.truncation_N",
        "zeta.bernoulli_terms",
        "count.base_samples",
        "count.min_density",
        "count.max_samples",
        "count.zero_threshold",
        "count.perturbations",
        "localize.tol",
        "localize.min_side",
        "localize.strict",
        "rouche.samples",
        "rouche.batch",
        "tau.step",
        "quad.tol",
        "lm.band_factor",
    ];

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = value.trim();
        match key {
            "workers" => self.workers = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "output" => self.output = (!v.is_empty()).then(|| v.to_string()),
            "zeta.truncation_N" => {
                self.zeta.truncation_n = if v == "auto" { None } else { Some(num(key, v)?) };
            }
            "zeta.bernoulli_terms" => self.zeta.bernoulli_terms = num(key, v)?,
            "count.base_samples" => self.winding.base_samples = num(key, v)?,
            "count.min_density" => self.winding.min_density = positive(key, v)?,
            "count.max_samples" => self.winding.max_samples = num(key, v)?,
            "count.zero_threshold" => self.winding.zero_threshold = num(key, v)?,
            "count.perturbations" => {
                self.perturbations = v.split(',').map(|x| positive(key, x)).collect::<Result<_, _>>()?;
            }
            "localize.tol" => self.localize_tol = positive(key, v)?,
            "localize.min_side" => self.localize_min_side = positive(key, v)?,
            "localize.strict" => self.localize_strict = num(key, v)?,
            "rouche.samples" => self.rouche_samples = num(key, v)?,
            "rouche.batch" => self.rouche_batch = num(key, v)?,
            "tau.step" => self.tau_step = positive(key, v)?,
            "quad.tol" => self.quad_tol = positive(key, v)?,
            "lm.band_factor" => self.lm_band_factor = positive(key, v)?,
            _ => return Err(CliError::Config(format!("unknown config key `{key}`"))),
        }
        if key.starts_with("zeta.") {
            self.zeta.validate()?;
        }
        if (key == "rouche.samples" && self.rouche_samples < 8) || (key == "rouche.batch" && self.rouche_batch == 0) {
            return Err(bad(key, v, "too small"));
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", n + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    pub fn apply_override(&mut self, kv: &str) -> Result<(), CliError> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("`{kv}`: expected key=value")))?;
        self.set(k.trim(), v)
    }

    pub fn count_options(&self) -> CountOptions<f64> {
        CountOptions { winding: self.winding, perturbations: self.perturbations.clone() }
    }

    pub fn localize_options(&self) -> LocalizeOptions<f64> {
        LocalizeOptions {
            tol: self.localize_tol,
            count: self.count_options(),
            min_side: self.localize_min_side,
            strict: self.localize_strict,
            ..LocalizeOptions::default()
        }
    }

    pub fn scan_options(&self) -> ScanOptions {
        ScanOptions { samples: self.rouche_samples, batch: self.rouche_batch }
    }

    /// Every setting, as a flat JSON object with sorted keys.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("params".into(), json!(self.params));
        m.insert("workers".into(), json!(self.workers));
        m.insert("seed".into(), json!(self.seed));
        m.insert("output".into(), json!(self.output));
        m.insert(
            "zeta.truncation_N".into(),
            self.zeta.truncation_n.map_or(json!("auto"), |n| json!(n)),
        );
        m.insert("zeta.bernoulli_terms".into(), json!(self.zeta.bernoulli_terms));
        m.insert("count.base_samples".into(), json!(self.winding.base_samples));
        m.insert("count.min_density".into(), json!(self.winding.min_density));
        m.insert("count.max_samples".into(), json!(self.winding.max_samples));
        m.insert("count.zero_threshold".into(), json!(self.winding.zero_threshold));
        m.insert("count.perturbations".into(), json!(self.perturbations));
        m.insert("localize.tol".into(), json!(self.localize_tol));
        m.insert("localize.min_side".into(), json!(self.localize_min_side));
        m.insert("localize.strict".into(), json!(self.localize_strict));
        m.insert("rouche.samples".into(), json!(self.rouche_samples));
        m.insert("rouche.batch".into(), json!(self.rouche_batch));
        m.insert("tau.step".into(), json!(self.tau_step));
        m.insert("quad.tol".into(), json!(self.quad_tol));
        m.insert("lm.band_factor".into(), json!(self.lm_band_factor));
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\nquad.tol = 1e-8\nzeta.truncation_N=40\n\ncount.perturbations=1e-3,2e-3").unwrap();
        assert_eq!(c.quad_tol, 1e-8);
        assert_eq!(c.zeta.truncation_n, Some(40));
        assert_eq!(c.perturbations, vec![1e-3, 2e-3]);
        c.apply_override("zeta.truncation_N=auto").unwrap();
        assert_eq!(c.zeta.truncation_n, None);
        assert!(c.apply_override("nope=1").is_err());
        assert!(c.apply_override("quad.tol=-1").is_err());
        assert!(c.apply_override("zeta.bernoulli_terms=99").is_err());
    }

    #[test]
    fn every_key_is_serialized() {
        let j = RunConfig::default().to_json();
        for k in RunConfig::KEYS {
            assert!(j.get(*k).is_some(), "{k}");
        }
    }
}
