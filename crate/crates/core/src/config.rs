//! Scenario files: one `key = value` per line, `#` starts a comment.
//!
//! Pathlosses are in dB, powers in dBm, thresholds in dB. Omitted keys take
//! the example-scenario defaults. Unit conversion happens once, in
//! [`ScenarioConfig::links`].

use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::channel::{LinkSet, Ue, UeLinks};
use crate::error::{Error, Result};
use crate::mcsim::{DensityQuantity, McSettings};
use crate::outage::{threshold_grid, Mode, Strategy};
use crate::units::{db_to_linear, dbm_to_watts};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_elements: usize,
    pub m_bs: f64,
    pub m_h: [f64; 2],
    pub m_g: [f64; 2],
    pub ell_bs_db: f64,
    pub ell_h_db: [f64; 2],
    pub ell_g_db: [f64; 2],
    pub p_dbm: [f64; 2],
    pub p_noise_dbm: f64,
    pub threshold_start_db: f64,
    pub threshold_stop_db: f64,
    pub threshold_step_db: f64,
    pub strategies: Vec<Strategy>,
    pub modes: Vec<Mode>,
    pub samples: u64,
    pub seed: u64,
    pub bins: usize,
    pub workers: usize,
    pub density: Vec<DensityQuantity>,
    /// UE whose IRS links feed the density comparison.
    pub density_ue: Ue,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_elements: 32,
            m_bs: 6.0,
            m_h: [4.0, 1.1],
            m_g: [2.25, 2.25],
            ell_bs_db: -60.0,
            ell_h_db: [-110.0, -120.0],
            ell_g_db: [-60.0, -60.0],
            p_dbm: [20.0, 20.0],
            p_noise_dbm: -100.0,
            threshold_start_db: -15.0,
            threshold_stop_db: 25.0,
            threshold_step_db: 1.0,
            strategies: Strategy::ALL.to_vec(),
            modes: vec![Mode::Ic],
            samples: 10_000_000,
            seed: 1,
            bins: 200,
            workers: 0,
            density: vec![DensityQuantity::S1, DensityQuantity::S2Magnitude],
            density_ue: Ue::One,
        }
    }
}

/// Lowercase with separators dropped, so `NoIRS`, `no-irs` and `no_irs` agree.
fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

fn parse_strategies(v: &str) -> Option<Vec<Strategy>> {
    match normalize(v).as_str() {
        "all" => Some(Strategy::ALL.to_vec()),
        "boostue1" | "ue1" => Some(vec![Strategy::BoostUe1]),
        "boostue2" | "ue2" => Some(vec![Strategy::BoostUe2]),
        "noirs" | "none" => Some(vec![Strategy::NoIrs]),
        _ => None,
    }
}

fn parse_modes(v: &str) -> Option<Vec<Mode>> {
    match normalize(v).as_str() {
        "all" => Some(Mode::ALL.to_vec()),
        "noic" => Some(vec![Mode::NoIc]),
        "ic" => Some(vec![Mode::Ic]),
        "snr" | "snronly" => Some(vec![Mode::SnrOnly]),
        _ => None,
    }
}

fn parse_density(v: &str) -> Option<Vec<DensityQuantity>> {
    match normalize(v).as_str() {
        "all" | "both" => Some(vec![DensityQuantity::S1, DensityQuantity::S2Magnitude]),
        "s1" => Some(vec![DensityQuantity::S1]),
        "s2" => Some(vec![DensityQuantity::S2Magnitude]),
        _ => None,
    }
}

fn bad(key: &str, value: impl Display, constraint: &str) -> Error {
    Error::Config(format!("{key} = {value}: {constraint}"))
}

fn number<N: FromStr>(key: &str, v: &str) -> Result<N> {
    v.parse().map_err(|_| bad(key, v, "not a number"))
}

fn one_of<X>(key: &str, v: &str, parsed: Option<X>, allowed: &str) -> Result<X> {
    parsed.ok_or_else(|| bad(key, v, &format!("expected one of {allowed}")))
}

impl ScenarioConfig {
    /// Sets one key from its textual value. Used for file lines and CLI overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "n_elements" => self.n_elements = number(key, v)?,
            "m_bs" => self.m_bs = number(key, v)?,
            "m_h1" => self.m_h[0] = number(key, v)?,
            "m_h2" => self.m_h[1] = number(key, v)?,
            "m_g1" => self.m_g[0] = number(key, v)?,
            "m_g2" => self.m_g[1] = number(key, v)?,
            "ell_bs_db" => self.ell_bs_db = number(key, v)?,
            "ell_h1_db" => self.ell_h_db[0] = number(key, v)?,
            "ell_h2_db" => self.ell_h_db[1] = number(key, v)?,
            "ell_g1_db" => self.ell_g_db[0] = number(key, v)?,
            "ell_g2_db" => self.ell_g_db[1] = number(key, v)?,
            "p_dbm" => self.p_dbm = [number(key, v)?; 2],
            "p1_dbm" => self.p_dbm[0] = number(key, v)?,
            "p2_dbm" => self.p_dbm[1] = number(key, v)?,
            "p_noise_dbm" => self.p_noise_dbm = number(key, v)?,
            "threshold_start_db" => self.threshold_start_db = number(key, v)?,
            "threshold_stop_db" => self.threshold_stop_db = number(key, v)?,
            "threshold_step_db" => self.threshold_step_db = number(key, v)?,
            "strategy" => self.strategies = one_of(key, v, parse_strategies(v), "all, boost-ue1, boost-ue2, no-irs")?,
            "mode" => self.modes = one_of(key, v, parse_modes(v), "all, noic, ic, snr")?,
            "samples" => {
                // accept 1e7 as well as 10000000
                let x: f64 = number(key, v)?;
                if !(x >= 1.0 && x.fract() == 0.0 && x <= 2f64.powi(53)) {
                    return Err(bad(key, v, "must be a positive integer"));
                }
                self.samples = x as u64;
            }
            "seed" => self.seed = number(key, v)?,
            "bins" => self.bins = number(key, v)?,
            "workers" => self.workers = number(key, v)?,
            "density" => self.density = one_of(key, v, parse_density(v), "both, s1, s2")?,
            "density_ue" => {
                self.density_ue = match v {
                    "1" => Ue::One,
                    "2" => Ue::Two,
                    _ => return Err(bad(key, v, "must be 1 or 2")),
                }
            }
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses file contents on top of the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at_line = |e: Error| match e {
                Error::Config(msg) => Error::Config(format!("line {}: {msg}", i + 1)),
                other => other,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            cfg.set(key.trim(), value).map_err(at_line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let shape = |key: &str, m: f64| {
            if m >= 0.5 && m.is_finite() {
                Ok(())
            } else {
                Err(bad(key, m, "Nakagami shape must be >= 0.5"))
            }
        };
        shape("m_bs", self.m_bs)?;
        shape("m_h1", self.m_h[0])?;
        shape("m_h2", self.m_h[1])?;
        shape("m_g1", self.m_g[0])?;
        shape("m_g2", self.m_g[1])?;
        let pathloss = |key: &str, db: f64| {
            if db.is_nan() || db == f64::INFINITY {
                Err(bad(key, db, "must be finite or -inf"))
            } else {
                Ok(())
            }
        };
        pathloss("ell_bs_db", self.ell_bs_db)?;
        pathloss("ell_h1_db", self.ell_h_db[0])?;
        pathloss("ell_h2_db", self.ell_h_db[1])?;
        pathloss("ell_g1_db", self.ell_g_db[0])?;
        pathloss("ell_g2_db", self.ell_g_db[1])?;
        let power = |key: &str, dbm: f64| {
            if dbm.is_finite() {
                Ok(())
            } else {
                Err(bad(key, dbm, "must be finite"))
            }
        };
        power("p1_dbm", self.p_dbm[0])?;
        power("p2_dbm", self.p_dbm[1])?;
        power("p_noise_dbm", self.p_noise_dbm)?;
        if self.n_elements == 0 && self.ell_bs_db > f64::NEG_INFINITY {
            return Err(bad(
                "n_elements",
                0,
                "an IRS needs at least one element (or ell_bs_db = -inf)",
            ));
        }
        if !(self.threshold_step_db > 0.0) || !self.threshold_step_db.is_finite() {
            return Err(bad("threshold_step_db", self.threshold_step_db, "must be positive"));
        }
        if !(self.threshold_stop_db >= self.threshold_start_db)
            || !self.threshold_start_db.is_finite()
            || !self.threshold_stop_db.is_finite()
        {
            return Err(bad(
                "threshold_stop_db",
                self.threshold_stop_db,
                "must be finite and not below threshold_start_db",
            ));
        }
        if self.bins == 0 {
            return Err(bad("bins", 0, "must be positive"));
        }
        self.links()?;
        Ok(())
    }

    /// Links in linear units. A lone `no-irs` strategy also drops the IRS
    /// from the scenario itself.
    pub fn links(&self) -> Result<LinkSet<f64>> {
        let ell_bs = if self.strategies == [Strategy::NoIrs] {
            0.0
        } else {
            db_to_linear(self.ell_bs_db)
        };
        let ue = |i: usize| UeLinks {
            m_h: self.m_h[i],
            ell_h: db_to_linear(self.ell_h_db[i]),
            m_g: self.m_g[i],
            ell_g: db_to_linear(self.ell_g_db[i]),
            p_tx: dbm_to_watts(self.p_dbm[i]),
        };
        LinkSet::new(
            self.n_elements,
            self.m_bs,
            ell_bs,
            [ue(0), ue(1)],
            dbm_to_watts(self.p_noise_dbm),
        )
        .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn thresholds_db(&self) -> Result<Vec<f64>> {
        threshold_grid(self.threshold_start_db, self.threshold_stop_db, self.threshold_step_db)
    }

    pub fn mc_settings(&self) -> McSettings {
        McSettings::new(self.samples, self.seed).with_workers(self.workers)
    }
}

/// Reads and validates a scenario file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ScenarioConfig::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_example_scenario() {
        let cfg = ScenarioConfig::parse("# nothing\n\n").unwrap();
        assert_eq!(cfg, ScenarioConfig::default());
        assert_eq!(cfg.links().unwrap(), LinkSet::example_scenario(20.0));
        assert_eq!(cfg.thresholds_db().unwrap().len(), 41);
    }

    #[test]
    fn shape_below_half_names_the_key() {
        let err = ScenarioConfig::parse("m_h2 = 0.3").unwrap_err().to_string();
        assert!(err.contains("m_h2") && err.contains(">= 0.5"), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ScenarioConfig::parse("seed = 3\nm_bs 4\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let err = ScenarioConfig::parse("\n\nfoo = 1").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("foo"), "{err}");
        let err = ScenarioConfig::parse("m_bs = six").unwrap_err().to_string();
        assert!(err.contains("line 1") && err.contains("m_bs"), "{err}");
    }

    #[test]
    fn baseline_encodings_remove_the_irs() {
        let cfg = ScenarioConfig::parse("ell_bs_db = -inf").unwrap();
        assert_eq!(cfg.links().unwrap().ell_bs(), 0.0);
        let cfg = ScenarioConfig::parse("strategy = NoIRS  # baseline").unwrap();
        assert_eq!(cfg.strategies, vec![Strategy::NoIrs]);
        assert_eq!(cfg.links().unwrap().ell_bs(), 0.0);
    }

    #[test]
    fn overrides_and_spellings() {
        let cfg =
            ScenarioConfig::parse("p_dbm = 35\np2_dbm = 30\nmode = SNR_only\nsamples = 1e5\nstrategy = Boost_UE2")
                .unwrap();
        assert_eq!(cfg.p_dbm, [35.0, 30.0]);
        assert_eq!(cfg.modes, vec![Mode::SnrOnly]);
        assert_eq!(cfg.samples, 100_000);
        assert_eq!(cfg.strategies, vec![Strategy::BoostUe2]);
        assert!(ScenarioConfig::parse("samples = 1.5").is_err());
    }
}
