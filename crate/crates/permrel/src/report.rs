//! JSON forms of presentations and command reports.

use std::fs;
use std::path::Path;

use permrel_core::{Error, PermutationGroup, Presentation, Result, Word};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA: u32 = 1;

/// `{n, generators, patterns}`; generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub generators: Vec<String>,
    pub patterns: Vec<Word>,
}

impl PresentationJson {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationJson {
            n: p.degree(),
            generators: p.generators().iter().map(|g| g.to_string()).collect(),
            patterns: p.patterns().to_vec(),
        }
    }

    /// Rebuilds the presentation from the generators and checks that the
    /// stored patterns agree with it.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let group = PermutationGroup::from_cycles(self.generators.iter().map(String::as_str), self.n)?;
        let p = Presentation::build(&group);
        if p.patterns() != self.patterns.as_slice() {
            return Err(Error::Hypotheses(
                "stored patterns do not match the generated group".to_string(),
            ));
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Undecided => 2,
        }
    }

    /// The worse of two outcomes; failure dominates undecided.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Undecided, _) | (_, Outcome::Undecided) => Outcome::Undecided,
            _ => Outcome::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub presentation: Option<PresentationJson>,
    pub outcome: Outcome,
    pub result: serde_json::Value,
}

impl Report {
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        text.push('\n');
        fs::write(path, text)
    }

    pub fn read(path: &Path) -> std::io::Result<Report> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_round_trip() {
        let p = Presentation::build(&PermutationGroup::klein4());
        let json = serde_json::to_string(&PresentationJson::from_presentation(&p)).unwrap();
        let back: PresentationJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_presentation().unwrap(), p);
        let mut tampered = back.clone();
        tampered.patterns.pop();
        assert!(tampered.to_presentation().is_err());
    }

    #[test]
    fn outcome_combination() {
        assert_eq!(Outcome::Pass.and(Outcome::Undecided), Outcome::Undecided);
        assert_eq!(Outcome::Undecided.and(Outcome::Fail), Outcome::Fail);
        assert_eq!(Outcome::Pass.and(Outcome::Pass).exit_code(), 0);
    }
}
