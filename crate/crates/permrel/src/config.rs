//! Run bounds shared by every command, with environment overrides for the
//! default caps.

use std::path::PathBuf;

use permrel_core::rewrite::{DEFAULT_CACHE_WORDS, DEFAULT_CLASS_CAP};
use permrel_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub const ENV_CLASS_CAP: &str = "PERMREL_CLASS_CAP";
pub const ENV_CACHE_WORDS: &str = "PERMREL_CACHE_WORDS";
pub const ENV_SAMPLE_BUDGET: &str = "PERMREL_SAMPLE_BUDGET";

pub const DEFAULT_SAMPLE_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Word-length bound for searches and sweeps; `None` lets each check
    /// pick its own default from `n`.
    pub max_len: Option<usize>,
    pub class_cap: usize,
    pub cache_words: usize,
    pub sample_budget: usize,
    pub seed: u64,
    /// Suite checks to run; empty means all.
    pub checks: Vec<String>,
    pub out: Option<PathBuf>,
    /// Worker threads for catalog runs; `None` uses every core.
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_len: None,
            class_cap: DEFAULT_CLASS_CAP,
            cache_words: DEFAULT_CACHE_WORDS,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
            seed: 0,
            checks: Vec::new(),
            out: None,
            workers: None,
        }
    }
}

impl RunConfig {
    /// Defaults with any `PERMREL_*` overrides applied.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|key| std::env::var(key).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut config = RunConfig::default();
        let read = |key: &str, slot: &mut usize| -> Result<()> {
            if let Some(text) = lookup(key) {
                *slot = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::Hypotheses(format!("{key}={text:?} is not a count")))?;
            }
            Ok(())
        };
        read(ENV_CLASS_CAP, &mut config.class_cap)?;
        read(ENV_CACHE_WORDS, &mut config.cache_words)?;
        read(ENV_SAMPLE_BUDGET, &mut config.sample_budget)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("max_len", self.max_len.unwrap_or(1)),
            ("class_cap", self.class_cap),
            ("cache_words", self.cache_words),
            ("sample_budget", self.sample_budget),
            ("workers", self.workers.unwrap_or(1)),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::Hypotheses(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }
}
