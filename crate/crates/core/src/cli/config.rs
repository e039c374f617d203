//! Session configuration: a JSON document with every key checked.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::modules::{FMatrix, GradedGlnModule};
use crate::scalars::Scalar;
use crate::torus::TorusPresentation;

/// A config failure, with the dotted path of the offending key.
#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn at(path: &str, message: impl ToString) -> Self {
        ConfigError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub d: usize,
    pub z: usize,
    #[serde(default)]
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    /// Exhaustive Jacobi triples up to this many; seeded sampling above.
    #[serde(default = "default_threshold")]
    pub threshold: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_threshold() -> usize {
    100_000
}

fn default_samples() -> usize {
    20_000
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            threshold: default_threshold(),
            samples: default_samples(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    /// Exponent bound for the solenoidal algebra.
    #[serde(rename = "B", default = "two")]
    pub bound: i64,
    /// Degree bound for the derivation algebra.
    #[serde(default = "three")]
    pub dmax: usize,
    #[serde(default = "default_vir_p")]
    pub vir_p: Vec<i64>,
    #[serde(default = "six")]
    pub vir_bound: i64,
}

fn two() -> i64 {
    2
}

fn three() -> usize {
    3
}

fn six() -> i64 {
    6
}

fn default_vir_p() -> Vec<i64> {
    vec![2]
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            bound: 2,
            dmax: 3,
            vir_p: default_vir_p(),
            vir_bound: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum WSpec {
    Regular,
    Trivial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    /// One entry per coordinate: a scalar or `"sym"`.
    pub alpha: Vec<String>,
    pub beta: String,
    #[serde(rename = "W")]
    pub w: WSpec,
    #[serde(rename = "B")]
    pub bound: i64,
    #[serde(default = "one")]
    pub margin: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirPConfig {
    pub p: Vec<i64>,
    #[serde(default = "sym")]
    pub a: String,
    #[serde(default = "sym")]
    pub b: String,
    #[serde(rename = "B", default = "three_i")]
    pub bound: i64,
    /// Explicit `(p-1) x p` matrices; absent means every valid 0/1 pattern.
    #[serde(rename = "F", default)]
    pub f: Option<Vec<Vec<String>>>,
}

fn sym() -> String {
    "sym".into()
}

fn three_i() -> i64 {
    3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondConfig {
    #[serde(rename = "B", default = "three_i")]
    pub bound: i64,
    #[serde(default = "cap")]
    pub degree_cap: usize,
}

fn cap() -> usize {
    crate::correspondence::DEFAULT_DEGREE_CAP
}

impl Default for CorrespondConfig {
    fn default() -> Self {
        CorrespondConfig {
            bound: 3,
            degree_cap: cap(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverConfig {
    pub sizes: Vec<i64>,
    #[serde(default = "one")]
    pub inner: i64,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            sizes: vec![2, 3, 4],
            inner: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "B", default = "three_i")]
    pub bound: i64,
    #[serde(default = "one")]
    pub margin: i64,
}

/// Suite names accepted by `--suite` and `suites`.
pub const SUITES: [&str; 6] = ["algebra", "module", "irreducible", "grid", "correspond", "cover"];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub presentation: Presentation,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub algebra: AlgebraConfig,
    pub module: Option<ModuleConfig>,
    pub virp: Option<VirPConfig>,
    #[serde(default)]
    pub correspond: CorrespondConfig,
    #[serde(default)]
    pub cover: CoverConfig,
    pub grid: Option<GridConfig>,
    /// Suites run by `suite`; all of them when absent.
    pub suites: Option<Vec<String>>,
    pub out: Option<PathBuf>,
}

/// `"sym"` or a scalar in the textual grammar.
pub fn parse_scalar(s: &str, symbol: Scalar, path: &str) -> Result<Scalar, ConfigError> {
    if s.trim() == "sym" {
        Ok(symbol)
    } else {
        s.parse().map_err(|e| ConfigError::at(path, e))
    }
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: SessionConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::at(&path, e.into_inner())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::at("<file>", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        self.torus()?;
        if let Some(m) = &self.module {
            self.alpha(m)?;
            self.beta(m)?;
            if m.bound < 1 {
                return Err(ConfigError::at("module.B", "must be at least 1"));
            }
        }
        if let Some(v) = &self.virp {
            if v.p.iter().any(|&p| p < 1) {
                return Err(ConfigError::at("virp.p", "every p must be positive"));
            }
            if v.f.is_some() && v.p.len() != 1 {
                return Err(ConfigError::at("virp.F", "an explicit F needs exactly one p"));
            }
            self.virp_params(v)?;
            self.f_matrices(v)?;
        }
        if self.cover.sizes.is_empty() || self.cover.sizes.iter().any(|&b| b < 1) {
            return Err(ConfigError::at("cover.sizes", "sizes must be a nonempty list of positive integers"));
        }
        if self.correspond.bound < 2 {
            return Err(ConfigError::at("correspond.B", "must be at least 2"));
        }
        if let Some(s) = &self.suites {
            for (i, name) in s.iter().enumerate() {
                if !SUITES.contains(&name.as_str()) {
                    return Err(ConfigError::at(&format!("suites[{i}]"), format!("unknown suite {name:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn torus(&self) -> Result<TorusPresentation, ConfigError> {
        let p = &self.presentation;
        if p.z != p.orders.len() {
            return Err(ConfigError::at(
                "presentation.z",
                format!("z = {} but {} orders were given", p.z, p.orders.len()),
            ));
        }
        TorusPresentation::new(p.d, p.orders.clone()).map_err(|e| ConfigError::at("presentation.orders", e))
    }

    pub fn alpha(&self, m: &ModuleConfig) -> Result<Vec<Scalar>, ConfigError> {
        let d = self.presentation.d;
        if m.alpha.len() != d {
            return Err(ConfigError::at("module.alpha", format!("expected {d} entries, got {}", m.alpha.len())));
        }
        m.alpha
            .iter()
            .enumerate()
            .map(|(i, s)| parse_scalar(s, Scalar::alpha(i), &format!("module.alpha[{i}]")))
            .collect()
    }

    pub fn beta(&self, m: &ModuleConfig) -> Result<Scalar, ConfigError> {
        parse_scalar(&m.beta, Scalar::beta(), "module.beta")
    }

    pub fn w(&self, m: &ModuleConfig) -> Result<GradedGlnModule, ConfigError> {
        let t = self.torus()?;
        let w = match m.w {
            WSpec::Regular => GradedGlnModule::regular(&t),
            WSpec::Trivial => GradedGlnModule::trivial(&t),
        };
        w.validate().map_err(|e| ConfigError::at("module.W", e))?;
        Ok(w)
    }

    pub fn virp_params(&self, v: &VirPConfig) -> Result<(Scalar, Scalar), ConfigError> {
        Ok((
            parse_scalar(&v.a, Scalar::alpha(0), "virp.a")?,
            parse_scalar(&v.b, Scalar::beta(), "virp.b")?,
        ))
    }

    /// The `F` patterns to build, per `p`.
    pub fn f_matrices(&self, v: &VirPConfig) -> Result<Vec<FMatrix>, ConfigError> {
        match &v.f {
            Some(rows) => {
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, s)| s.parse().map_err(|e| ConfigError::at(&format!("virp.F[{i}][{j}]"), e)))
                            .collect::<Result<Vec<Scalar>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let f = FMatrix::new(v.p[0], parsed).map_err(|e| ConfigError::at("virp.F", e))?;
                let diag = f.validate();
                if !diag.valid {
                    return Err(ConfigError::at("virp.F", diag.detail.unwrap_or_default()));
                }
                Ok(vec![f])
            }
            None => Ok(v.p.iter().flat_map(|&p| zero_one_patterns(p)).filter(|f| f.validate().valid).collect()),
        }
    }

    /// Suites selected by `--suite`, then the config, then all.
    pub fn selected_suites(&self, cli: Option<&[String]>) -> Result<Vec<String>, ConfigError> {
        let chosen: Vec<String> = match (cli, &self.suites) {
            (Some(c), _) => c.to_vec(),
            (None, Some(s)) => s.clone(),
            (None, None) => SUITES.iter().map(|s| s.to_string()).collect(),
        };
        for name in &chosen {
            if !SUITES.contains(&name.as_str()) {
                return Err(ConfigError::at("--suite", format!("unknown suite {name:?}")));
            }
        }
        // Canonical order, so the report does not depend on how the list was spelled.
        Ok(SUITES.iter().filter(|s| chosen.iter().any(|c| c == *s)).map(|s| s.to_string()).collect())
    }
}

/// Every `(p-1) x p` matrix with entries in {0, 1}.
pub fn zero_one_patterns(p: i64) -> Vec<FMatrix> {
    let cells = ((p - 1) * p) as u32;
    (0..1u64 << cells)
        .map(|mask| {
            let rows = (0..p - 1)
                .map(|i| {
                    (0..p)
                        .map(|j| Scalar::from_int(((mask >> (i * p + j)) & 1) as i64))
                        .collect()
                })
                .collect();
            FMatrix::new(p, rows).expect("shape is (p-1) x p")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected_with_a_path() {
        let e = SessionConfig::from_json(r#"{"presentation": {"d": 2, "z": 1, "orders": [2], "extra": 1}}"#).unwrap_err();
        assert_eq!(e.path, "presentation.extra");
        assert!(e.message.contains("extra"));
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        let e = SessionConfig::from_json(r#"{"presentation": {"d": 4, "z": 2, "orders": [2, 3]}}"#).unwrap_err();
        assert_eq!(e.path, "presentation.orders");
    }

    #[test]
    fn sym_entries_become_symbols() {
        let cfg = SessionConfig::from_json(
            r#"{"presentation": {"d": 2, "z": 1, "orders": [2]},
                "module": {"alpha": ["sym", "1/2"], "beta": "sym", "W": {"type": "regular"}, "B": 3}}"#,
        )
        .unwrap();
        let m = cfg.module.as_ref().unwrap();
        assert_eq!(cfg.alpha(m).unwrap(), vec![Scalar::alpha(0), Scalar::from_ratio(1, 2)]);
        assert_eq!(cfg.beta(m).unwrap(), Scalar::beta());
    }

    #[test]
    fn bad_scalar_points_at_its_entry() {
        let e = SessionConfig::from_json(
            r#"{"presentation": {"d": 2, "z": 0},
                "module": {"alpha": ["0", "1 +"], "beta": "0", "W": {"type": "trivial"}, "B": 3}}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "module.alpha[1]");
    }
}
