//! Executable checks of structural facts about `S_n(H)`: when it is
//! cancellative, which boundary letters can precede `z`, when overlapping
//! occurrences of `z` can be merged, and where `Sz ∪ zS` displaces words.
//!
//! Every sweep is exhaustive up to its bound except the overlap sampler,
//! which draws instances from a seeded ChaCha stream.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideals::letters_avoiding_boundary;
use crate::permgroup::PermutationGroup;
use crate::presentation::Presentation;
use crate::rewrite::Monoid;
use crate::word::{words_of_length, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Left,
    Right,
}

/// `u ≠ v` in `S` with `u a_i = v a_i` (right) or `a_i u = a_i v` (left).
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CancelWitness {
    pub side: Side,
    pub u: Word,
    pub v: Word,
    pub letter: Letter,
}

impl CancelWitness {
    pub fn extend(&self, w: &Word) -> Word {
        match self.side {
            Side::Right => w.concat(&[self.letter]),
            Side::Left => w.wrap(&[self.letter], &[]),
        }
    }

    /// Re-checks the witness with fresh class computations.
    pub fn confirm(&self, m: &Monoid) -> Result<bool> {
        Ok(m.equal(&self.extend(&self.u), &self.extend(&self.v))? && !m.equal(&self.u, &self.v)?)
    }
}

/// `H_1 = H_n = {id}`, which every cancellative `S_n(H)` satisfies.
pub fn cancellativity_necessary(group: &PermutationGroup) -> Result<bool> {
    let n = group.degree();
    Ok(group.stabilizer_is_trivial(1)? && group.stabilizer_is_trivial(n)?)
}

/// For abelian `H`, `S_n(H)` is cancellative exactly when `H_1 = H_n = {id}`.
pub fn predict_cancellative(group: &PermutationGroup) -> Result<bool> {
    if !group.is_abelian() {
        return Err(Error::Hypotheses(
            "cancellativity is only predicted for abelian groups".to_string(),
        ));
    }
    cancellativity_necessary(group)
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CancellativityReport {
    /// `None` for non-abelian groups, where no prediction is made.
    pub predicted: Option<bool>,
    pub necessary_condition: bool,
    pub right_witness: Option<CancelWitness>,
    pub left_witness: Option<CancelWitness>,
    pub searched_len: usize,
}

impl CancellativityReport {
    /// Whether the search agrees with the stabilizer criterion: a
    /// nontrivial `H_n` (resp. `H_1`) must yield a right (resp. left)
    /// witness of length `n - 1`, and a positive prediction none at all.
    pub fn agrees(&self, group: &PermutationGroup) -> Result<bool> {
        let n = group.degree();
        let shortest = |w: &Option<CancelWitness>| w.as_ref().is_some_and(|w| w.u.len() + 1 == n);
        if !group.stabilizer_is_trivial(n)? && !shortest(&self.right_witness) {
            return Ok(false);
        }
        if !group.stabilizer_is_trivial(1)? && !shortest(&self.left_witness) {
            return Ok(false);
        }
        if self.predicted == Some(true) {
            return Ok(self.right_witness.is_none() && self.left_witness.is_none());
        }
        Ok(true)
    }
}

impl Monoid {
    /// Least `(u, v, i)` by `(|u|, u, v, i)` with `|u| ≤ max_len` witnessing
    /// failure of cancellation on `side`; `u < v` are canonical forms.
    ///
    /// A witness needs `u a_i` to contain a pattern, so only classes of
    /// pattern-containing words of length `|u| + 1` are explored: any two
    /// members ending (starting) with the same letter whose remaining parts
    /// have different canonical forms give a witness.
    pub fn search_cancel_counterexample(&self, max_len: usize, side: Side) -> Result<Option<CancelWitness>> {
        let n = self.degree();
        if n == 0 {
            return Ok(None);
        }
        let patterns = self.presentation().patterns();
        for len in n - 1..=max_len {
            let total = len + 1;
            let mut seen: HashSet<Word> = HashSet::new();
            let mut best: Option<(Word, Word, Letter)> = None;
            for position in 0..=total - n {
                for pattern in patterns {
                    for filler in words_of_length(n, total - n) {
                        let w = filler[position..].to_vec();
                        let w = Word::new(filler[..position].to_vec()).concat(pattern).concat(&w);
                        if seen.contains(&w) {
                            continue;
                        }
                        let class = self.class_of(&w)?;
                        seen.extend(class.members().iter().cloned());
                        let mut by_letter: BTreeMap<Letter, BTreeSet<Word>> = BTreeMap::new();
                        for m in class.members() {
                            let (letter, rest) = match side {
                                Side::Right => (m[len], &m[..len]),
                                Side::Left => (m[0], &m[1..]),
                            };
                            by_letter.entry(letter).or_default().insert(self.canonical_form(rest)?);
                        }
                        for (letter, forms) in by_letter {
                            let mut forms = forms.into_iter();
                            if let (Some(u), Some(v)) = (forms.next(), forms.next()) {
                                let candidate = (u, v, letter);
                                if best.as_ref().is_none_or(|b| candidate < *b) {
                                    best = Some(candidate);
                                }
                            }
                        }
                    }
                }
            }
            if let Some((u, v, letter)) = best {
                return Ok(Some(CancelWitness { side, u, v, letter }));
            }
        }
        Ok(None)
    }

    pub fn cancellativity_report(&self, max_len: usize) -> Result<CancellativityReport> {
        let group = self.subgroup()?;
        Ok(CancellativityReport {
            predicted: predict_cancellative(group).ok(),
            necessary_condition: cancellativity_necessary(group)?,
            right_witness: self.search_cancel_counterexample(max_len, Side::Right)?,
            left_witness: self.search_cancel_counterexample(max_len, Side::Left)?,
            searched_len: max_len,
        })
    }

    fn subgroup(&self) -> Result<&PermutationGroup> {
        self.presentation()
            .group()
            .ok_or_else(|| Error::Hypotheses("presentation does not come from a subgroup".to_string()))
    }
}

/// A counterexample found by a sweep, re-checkable with [`Violation::confirm`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Violation {
    /// `word ∈ Sz` whose last two letters are not in `A` (right), or
    /// `word ∈ zS` whose first two letters are not in `Ã` (left).
    BoundaryPair { side: Side, word: Word },
    /// No `j, j'` avoid the boundary pairs around `letter`.
    MissingBoundaryLetters { letter: Letter },
    /// An overlap instance whose two words differ letterwise.
    OverlapMismatch { first: Word, second: Word },
    /// `a_left · word · a_right` still lies in `Sz ∪ zS`.
    RadicalSupport { word: Word, left: Letter, right: Letter },
}

impl Violation {
    pub fn confirm(&self, m: &Monoid) -> Result<bool> {
        let bp = m.presentation().boundary_pairs()?;
        Ok(match self {
            Violation::BoundaryPair { side: Side::Right, word } => {
                word.len() >= 2
                    && m.in_right_z(word)?
                    && !bp.a.contains(&(word[word.len() - 2], word[word.len() - 1]))
            }
            Violation::BoundaryPair { side: Side::Left, word } => {
                word.len() >= 2 && m.in_left_z(word)? && !bp.a_tilde.contains(&(word[0], word[1]))
            }
            Violation::MissingBoundaryLetters { letter } => {
                letters_avoiding_boundary(&bp, m.degree(), *letter, *letter).is_none()
            }
            Violation::OverlapMismatch { first, second } => first != second && m.equal(first, second)?,
            Violation::RadicalSupport { word, left, right } => {
                let wrapped = word.wrap(&[*left], &[*right]);
                m.in_left_ideal_of(word, &[*left])?
                    && m.in_right_ideal_of(word, &[*right])?
                    && (m.in_right_z(&wrapped)? || m.in_left_z(&wrapped)?)
            }
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepReport {
    pub check: String,
    pub bounds: BTreeMap<String, u64>,
    pub cases_checked: u64,
    pub violations: Vec<Violation>,
    /// Mismatches on instances that break a stated hypothesis; expected,
    /// and not counted as failures.
    pub hypothesis_violating: Vec<Violation>,
    pub notes: Vec<String>,
}

impl SweepReport {
    fn new(check: &str, bounds: &[(&str, u64)]) -> Self {
        SweepReport {
            check: check.to_string(),
            bounds: bounds.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `H_2 = H_{n-1} = {id}` and `n ≥ 3`: then for every letter `i` there are
/// `j, j' ≠ i` with `x_i x_j ∉ A` and `x_j' x_i ∉ Ã`.
///
/// Groups with a nontrivial `H_2` or `H_{n-1}` are still scanned; their
/// failures are filed as hypothesis-violating.
pub fn verify_boundary_letters(group: &PermutationGroup) -> Result<SweepReport> {
    let n = group.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { n, min: 3 });
    }
    let holds = group.stabilizer_is_trivial(2)? && group.stabilizer_is_trivial(n - 1)?;
    let bp = Presentation::build(group).boundary_pairs()?;
    let mut report = SweepReport::new("boundary_letters", &[("n", n as u64)]);
    if !holds {
        report.notes.push("H_2 or H_{n-1} is nontrivial".to_string());
    }
    for letter in 1..=n as Letter {
        report.cases_checked += 1;
        if letters_avoiding_boundary(&bp, n, letter, letter).is_none() {
            let violation = Violation::MissingBoundaryLetters { letter };
            if holds {
                report.violations.push(violation);
            } else {
                report.hypothesis_violating.push(violation);
            }
        }
    }
    Ok(report)
}

/// Two overlapping occurrences of patterns: `first` ends with the same
/// `overlap` letters that `second` starts with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternOverlap {
    pub first: Word,
    pub second: Word,
    pub overlap: usize,
}

impl PatternOverlap {
    fn is_valid(&self) -> bool {
        let n = self.first.len();
        self.second.len() == n
            && (1..=n).contains(&self.overlap)
            && self.first[n - self.overlap..] == self.second[..self.overlap]
    }

    /// Letters of `second` past the overlap.
    fn overhang(&self) -> &[Letter] {
        &self.second[self.overlap..]
    }
}

/// The configuration `w_1 = p·o_1.first·t`, `w_2 = p·o_2.first·t`, where
/// `o_1.second` and `o_2.second` sit to the right of the first occurrences
/// and end inside `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapInstance {
    pub prefix: Word,
    pub left: PatternOverlap,
    pub right: PatternOverlap,
    pub tail: Word,
}

impl OverlapInstance {
    /// `(w_1, w_2)`, or `None` when the two overhangs disagree.
    pub fn assemble(&self) -> Option<(Word, Word)> {
        if !self.left.is_valid() || !self.right.is_valid() {
            return None;
        }
        let (a, b) = (self.left.overhang(), self.right.overhang());
        let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if !long.starts_with(short) {
            return None;
        }
        let suffix = Word::new(long.to_vec()).concat(&self.tail);
        Some((
            self.prefix.concat(&self.left.first).concat(&suffix),
            self.prefix.concat(&self.right.first).concat(&suffix),
        ))
    }
}

fn pattern_overlaps(p: &Presentation) -> Vec<PatternOverlap> {
    let n = p.degree();
    let mut out = Vec::new();
    for first in p.patterns() {
        for second in p.patterns() {
            for overlap in 1..n {
                let candidate = PatternOverlap {
                    first: first.clone(),
                    second: second.clone(),
                    overlap,
                };
                if candidate.is_valid() {
                    out.push(candidate);
                }
            }
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=n as Letter)).collect())
}

impl Monoid {
    /// `π(w x_i x_j) ∈ Sz ⇒ x_i x_j ∈ A` for `|w| ≤ max_len`, and dually
    /// `π(x_i x_j w) ∈ zS ⇒ x_i x_j ∈ Ã` through the opposite monoid.
    ///
    /// Needs `H` abelian without `(1,…,n)`; the right half needs
    /// `H_n = {id}` and the left half `H_1 = {id}`.
    pub fn verify_boundary_pairs(&self, max_len: usize) -> Result<SweepReport> {
        let group = self.subgroup()?;
        let n = self.degree();
        if n < 2 || !group.is_abelian() || group.contains_full_cycle() {
            return Err(Error::Hypotheses(
                "need n ≥ 2 and H abelian without (1,...,n)".to_string(),
            ));
        }
        let right = group.stabilizer_is_trivial(n)?;
        let left = group.stabilizer_is_trivial(1)?;
        if !right && !left {
            return Err(Error::Hypotheses("need H_n = {id} or H_1 = {id}".to_string()));
        }
        let mut report = SweepReport::new("boundary_pairs", &[("max_len", max_len as u64)]);
        if right {
            self.boundary_pair_half(max_len, Side::Right, &mut report)?;
        } else {
            report.notes.push("right half skipped: H_n ≠ {id}".to_string());
        }
        if left {
            self.opposite().boundary_pair_half(max_len, Side::Left, &mut report)?;
        } else {
            report.notes.push("left half skipped: H_1 ≠ {id}".to_string());
        }
        Ok(report)
    }

    /// Right-hand sweep on `self`; `side` says how to record violations
    /// (left means `self` is the opposite monoid).
    fn boundary_pair_half(&self, max_len: usize, side: Side, report: &mut SweepReport) -> Result<()> {
        let n = self.degree();
        let a = self.presentation().boundary_pairs()?.a;
        let z = self.presentation().z_word().clone();
        for len in 2..=max_len + 2 {
            for w in words_of_length(n, len) {
                report.cases_checked += 1;
                if !self.presentation().has_pattern_factor(&w) || a.contains(&(w[len - 2], w[len - 1])) {
                    continue;
                }
                if self.class_of(&w)?.any(|m| m.ends_with(&z)) {
                    let word = if side == Side::Left { w.reverse() } else { w };
                    report.violations.push(Violation::BoundaryPair { side, word });
                }
            }
        }
        Ok(())
    }

    /// Samples `budget` overlap instances for each orientation and checks
    /// that the two assembled words coincide letterwise.
    ///
    /// An instance has a pattern `o_1.first` followed, with overlap
    /// `1 ≤ i < n`, by a pattern `o_1.second`, and in the rewritten word a
    /// pattern `o_2.first` at the same place followed with overlap `j` by
    /// `o_2.second`; both second occurrences end strictly before the tail.
    /// Prefix and tail lengths are drawn from `0..=n`. The left orientation
    /// is the same construction on the opposite presentation, reversed.
    ///
    /// Needs `H` abelian. Mismatches are violations when the orientation's
    /// stabilizer (`H_n` right, `H_1` left) is trivial, and are otherwise
    /// filed as hypothesis-violating.
    pub fn verify_overlap_merging(&self, budget: usize, seed: u64) -> Result<SweepReport> {
        let group = self.subgroup()?;
        if !group.is_abelian() {
            return Err(Error::Hypotheses("need H abelian".to_string()));
        }
        let n = self.degree();
        let mut report = SweepReport::new(
            "overlap_merging",
            &[("samples_per_side", budget as u64), ("seed", seed)],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for side in [Side::Right, Side::Left] {
            let (presentation, holds) = match side {
                Side::Right => (self.presentation().clone(), group.stabilizer_is_trivial(n)?),
                Side::Left => (self.presentation().opposite(), group.stabilizer_is_trivial(1)?),
            };
            let overlaps = pattern_overlaps(&presentation);
            if overlaps.is_empty() {
                report.notes.push(format!("{side:?}: no overlapping pattern pairs"));
                continue;
            }
            let mut drawn = 0;
            let mut attempts = 0usize;
            while drawn < budget {
                attempts += 1;
                if attempts > budget.saturating_mul(1000).max(1000) {
                    report.notes.push(format!("{side:?}: gave up after {drawn} instances"));
                    break;
                }
                let instance = OverlapInstance {
                    prefix: random_word(&mut rng, n, n),
                    left: overlaps[rng.gen_range(0..overlaps.len())].clone(),
                    right: overlaps[rng.gen_range(0..overlaps.len())].clone(),
                    tail: random_word(&mut rng, n, n),
                };
                let Some((first, second)) = instance.assemble() else {
                    continue;
                };
                drawn += 1;
                report.cases_checked += 1;
                if first != second {
                    let (first, second) = match side {
                        Side::Right => (first, second),
                        Side::Left => (first.reverse(), second.reverse()),
                    };
                    let violation = Violation::OverlapMismatch { first, second };
                    if holds {
                        report.violations.push(violation);
                    } else {
                        report.hypothesis_violating.push(violation);
                    }
                }
            }
        }
        Ok(report)
    }

    /// For `w ∈ Sz ∪ zS` with `|w| ≤ max_len`, `w ∈ a_i S` and `w ∈ S a_j`,
    /// checks `a_i w a_j ∉ Sz ∪ zS`.
    ///
    /// Needs `n ≥ 3` and `H` transitive abelian without `(1,…,n)`.
    pub fn verify_radical_support(&self, max_len: usize) -> Result<SweepReport> {
        let group = self.subgroup()?;
        let n = self.degree();
        if n < 3 || !group.is_abelian() || !group.is_transitive() || group.contains_full_cycle() {
            return Err(Error::Hypotheses(
                "need n ≥ 3 and H transitive abelian without (1,...,n)".to_string(),
            ));
        }
        let mut report = SweepReport::new("radical_support", &[("max_len", max_len as u64)]);
        let z = self.presentation().z_word().clone();
        for len in n..=max_len {
            for w in words_of_length(n, len) {
                if !self.presentation().has_pattern_factor(&w) {
                    continue;
                }
                let class = self.class_of(&w)?;
                if !class.any(|m| m.ends_with(&z) || m.starts_with(&z)) {
                    continue;
                }
                let firsts: BTreeSet<Letter> = class.members().iter().map(|m| m[0]).collect();
                let lasts: BTreeSet<Letter> = class.members().iter().map(|m| m[len - 1]).collect();
                for &left in &firsts {
                    for &right in &lasts {
                        report.cases_checked += 1;
                        let wrapped = w.wrap(&[left], &[right]);
                        if self.class_of(&wrapped)?.any(|m| m.ends_with(&z) || m.starts_with(&z)) {
                            report.violations.push(Violation::RadicalSupport {
                                word: w.clone(),
                                left,
                                right,
                            });
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Bounds for [`Monoid::run_suite`]; `None` lengths default from `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuiteConfig {
    pub cancel_max_len: Option<usize>,
    pub boundary_max_len: Option<usize>,
    pub radical_max_len: Option<usize>,
    pub fractions_max_len: Option<usize>,
    pub overlap_samples: usize,
    pub seed: u64,
    /// Names from [`CHECKS`] to run; empty runs all of them.
    pub only: Vec<String>,
}

/// Names of the checks run by [`Monoid::run_suite`].
pub const CHECKS: [&str; 6] = [
    "cancellativity",
    "boundary_pairs",
    "boundary_letters",
    "overlap_merging",
    "radical_support",
    "fractions_obstruction",
];

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cancel_max_len: None,
            boundary_max_len: None,
            radical_max_len: None,
            fractions_max_len: None,
            overlap_samples: 1000,
            seed: 0,
            only: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuiteEntry {
    pub check: String,
    pub status: Status,
    pub detail: Option<String>,
    pub report: Option<SweepReport>,
}

impl SuiteEntry {
    fn from_result(check: &str, result: Result<SweepReport>) -> Self {
        match result {
            Ok(report) => SuiteEntry {
                check: check.to_string(),
                status: if report.passed() { Status::Pass } else { Status::Fail },
                detail: None,
                report: Some(report),
            },
            Err(e) => Self::from_error(check, e),
        }
    }

    fn from_error(check: &str, e: Error) -> Self {
        let status = match e {
            Error::Hypotheses(_) | Error::DegreeTooSmall { .. } => Status::Skip,
            Error::Undecided { .. } => Status::Undecided,
            _ => Status::Fail,
        };
        SuiteEntry {
            check: check.to_string(),
            status,
            detail: Some(e.to_string()),
            report: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuiteReport {
    pub cancellativity: Option<CancellativityReport>,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn status(&self) -> Status {
        let statuses = self.entries.iter().map(|e| e.status);
        if statuses.clone().any(|s| s == Status::Fail) {
            Status::Fail
        } else if statuses.clone().any(|s| s == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }
}

impl Monoid {
    /// Runs every applicable check, recording skipped ones with the unmet
    /// hypothesis, and cross-checks the cancellativity prediction against
    /// the witness search.
    pub fn run_suite(&self, config: &SuiteConfig) -> Result<SuiteReport> {
        if let Some(bad) = config.only.iter().find(|c| !CHECKS.contains(&c.as_str())) {
            return Err(Error::Hypotheses(format!("unknown check {bad:?}")));
        }
        let group = self.subgroup()?;
        let n = self.degree();
        let wanted = |name: &str| config.only.is_empty() || config.only.iter().any(|c| c == name);
        let mut entries = Vec::new();
        let mut cancellativity = None;
        if wanted("cancellativity") {
            match self.cancellativity_report(config.cancel_max_len.unwrap_or(n + 3)) {
                Ok(report) => {
                    let mut detail = format!(
                        "predicted {}, right witness {}, left witness {}",
                        match report.predicted {
                            Some(p) => p.to_string(),
                            None => "none (non-abelian)".to_string(),
                        },
                        describe(&report.right_witness),
                        describe(&report.left_witness),
                    );
                    let mut ok = report.agrees(group)?;
                    for w in report.right_witness.iter().chain(&report.left_witness) {
                        if !w.confirm(self)? {
                            ok = false;
                            detail.push_str("; witness failed to re-verify");
                        }
                    }
                    entries.push(SuiteEntry {
                        check: "cancellativity".to_string(),
                        status: if ok { Status::Pass } else { Status::Fail },
                        detail: Some(detail),
                        report: None,
                    });
                    cancellativity = Some(report);
                }
                Err(e) => entries.push(SuiteEntry::from_error("cancellativity", e)),
            }
        }
        if wanted("boundary_pairs") {
            entries.push(SuiteEntry::from_result(
                "boundary_pairs",
                self.verify_boundary_pairs(config.boundary_max_len.unwrap_or(n + 3)),
            ));
        }
        if wanted("boundary_letters") {
            entries.push(SuiteEntry::from_result("boundary_letters", verify_boundary_letters(group)));
        }
        if wanted("overlap_merging") {
            entries.push(SuiteEntry::from_result(
                "overlap_merging",
                self.verify_overlap_merging(config.overlap_samples, config.seed),
            ));
        }
        if wanted("radical_support") {
            entries.push(SuiteEntry::from_result(
                "radical_support",
                self.verify_radical_support(config.radical_max_len.unwrap_or(n + 2)),
            ));
        }
        if wanted("fractions_obstruction") {
            let len = config.fractions_max_len.unwrap_or(n + 3);
            entries.push(match self.fractions_obstruction(len) {
                Ok(holds) => SuiteEntry {
                    check: "fractions_obstruction".to_string(),
                    status: if holds { Status::Pass } else { Status::Fail },
                    detail: Some(format!("checked to length {len}")),
                    report: None,
                },
                Err(e) => SuiteEntry::from_error("fractions_obstruction", e),
            });
        }
        Ok(SuiteReport { cancellativity, entries })
    }
}

fn describe(w: &Option<CancelWitness>) -> String {
    match w {
        Some(w) => format!("u=({}) v=({}) i={}", w.u, w.v, w.letter),
        None => "none".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str], n: usize) -> PermutationGroup {
        PermutationGroup::from_cycles(gens.iter().copied(), n).unwrap()
    }

    fn monoid(gens: &[&str], n: usize) -> Monoid {
        Monoid::new(Presentation::build(&group(gens, n)))
    }

    fn klein() -> Monoid {
        Monoid::new(Presentation::build(&PermutationGroup::klein4()))
    }

    #[test]
    fn predictions() {
        for n in 3..=5 {
            assert!(predict_cancellative(&PermutationGroup::cyclic(n)).unwrap());
        }
        assert!(!predict_cancellative(&group(&["(1,2)"], 3)).unwrap());
        assert!(predict_cancellative(&PermutationGroup::trivial(3)).unwrap());
        assert!(matches!(
            predict_cancellative(&PermutationGroup::symmetric(3)),
            Err(Error::Hypotheses(_))
        ));
        assert!(!cancellativity_necessary(&PermutationGroup::symmetric(3)).unwrap());
    }

    #[test]
    fn cancel_search_examples() {
        let m = monoid(&["(1,2)"], 3);
        let w = m.search_cancel_counterexample(4, Side::Right).unwrap().unwrap();
        assert_eq!((w.u.clone(), w.v.clone(), w.letter), (Word::from([1, 2]), Word::from([2, 1]), 3));
        assert!(w.confirm(&m).unwrap());
        assert_eq!(m.search_cancel_counterexample(4, Side::Left).unwrap(), None);
        let t13 = monoid(&["(1,3)"], 3);
        for side in [Side::Left, Side::Right] {
            assert_eq!(t13.search_cancel_counterexample(5, side).unwrap(), None);
            assert_eq!(monoid(&[], 3).search_cancel_counterexample(5, side).unwrap(), None);
        }
        let w = monoid(&["(2,3)"], 3).search_cancel_counterexample(4, Side::Left).unwrap().unwrap();
        assert_eq!((w.u, w.v, w.letter), (Word::from([2, 3]), Word::from([3, 2]), 1));
    }

    #[test]
    fn boundary_pair_examples() {
        let r = monoid(&["(1,3)"], 3).verify_boundary_pairs(6).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases_checked, 2 * (9 + 27 + 81 + 243 + 729 + 2187 + 6561));
        let r = monoid(&["(1,2)(3,4)"], 4).verify_boundary_pairs(4).unwrap();
        assert!(r.passed() && r.notes.is_empty());
        // max_len + 2 < n leaves nothing that can end in z
        assert!(monoid(&["(1,3)"], 5).verify_boundary_pairs(1).unwrap().passed());
        assert!(matches!(
            monoid(&["(1,2,3)"], 3).verify_boundary_pairs(3),
            Err(Error::Hypotheses(_))
        ));
    }

    #[test]
    fn boundary_letter_examples() {
        let g = group(&["(1,3)"], 3);
        let bp = Presentation::build(&g).boundary_pairs().unwrap();
        // j = 3 works for i = 1, and the smallest choice is j = 2
        assert!(!bp.a.contains(&(1, 3)));
        assert_eq!(letters_avoiding_boundary(&bp, 3, 1, 1).unwrap().0, 2);
        for g in [g, PermutationGroup::klein4(), PermutationGroup::trivial(3)] {
            let r = verify_boundary_letters(&g).unwrap();
            assert!(r.passed());
            assert_eq!(r.cases_checked, g.degree() as u64);
        }
        // S_3 has H_2 ≠ {id}, and after the letter 2 every pair is in A
        let r = verify_boundary_letters(&PermutationGroup::symmetric(3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.hypothesis_violating.len(), 3);
        assert!(verify_boundary_letters(&PermutationGroup::trivial(2)).is_err());
    }

    #[test]
    fn overlap_instances() {
        let z = Word::from([1, 2, 3]);
        let same = PatternOverlap {
            first: z.clone(),
            second: z.clone(),
            overlap: 3,
        };
        let instance = OverlapInstance {
            prefix: Word::from([2]),
            left: same.clone(),
            right: same,
            tail: Word::from([1, 1]),
        };
        let (w1, w2) = instance.assemble().unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1, Word::from([2, 1, 2, 3, 1, 1]));

        // 1,2,3 then 3,2,1 with one shared letter, against 3,2,1 then 1,2,3
        let instance = OverlapInstance {
            prefix: Word::empty(),
            left: PatternOverlap { first: z.clone(), second: Word::from([3, 2, 1]), overlap: 1 },
            right: PatternOverlap { first: Word::from([3, 2, 1]), second: z, overlap: 1 },
            tail: Word::empty(),
        };
        assert_eq!(instance.assemble(), None);
    }

    #[test]
    fn overlap_sampling() {
        for m in [monoid(&["(1,3)"], 3), klein()] {
            let r = m.verify_overlap_merging(500, 7).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.cases_checked, 1000);
        }
        // with H_3 = ⟨(1,2)⟩ the right orientation may produce mismatches
        let r = monoid(&["(1,2)"], 3).verify_overlap_merging(500, 7).unwrap();
        assert!(r.passed());
        let m = monoid(&["(1,2)"], 3);
        for v in &r.hypothesis_violating {
            assert!(v.confirm(&m).unwrap());
        }
    }

    #[test]
    fn radical_support_examples() {
        let k = klein();
        let r = k.verify_radical_support(6).unwrap();
        assert!(r.passed());
        assert!(r.cases_checked > 0);
        assert_eq!(k.verify_radical_support(3).unwrap().cases_checked, 0);
        let wrapped = [1, 1, 2, 3, 4, 4];
        assert!(!k.in_right_z(&wrapped).unwrap() && !k.in_left_z(&wrapped).unwrap());
        assert!(monoid(&["(1,3)"], 3).verify_radical_support(5).is_err());
    }

    #[test]
    fn suite_examples() {
        let config = SuiteConfig {
            overlap_samples: 100,
            ..Default::default()
        };
        let trivial = monoid(&[], 3).run_suite(&config).unwrap();
        assert_eq!(trivial.status(), Status::Pass);
        let swap = monoid(&["(1,2)"], 3).run_suite(&config).unwrap();
        assert_eq!(swap.status(), Status::Pass);
        let c = swap.cancellativity.unwrap();
        assert_eq!(c.predicted, Some(false));
        assert!(c.right_witness.is_some());
        let cyc = monoid(&["(1,2,3)"], 3).run_suite(&config).unwrap();
        assert_eq!(cyc.status(), Status::Pass);
        let c = cyc.cancellativity.unwrap();
        assert_eq!(c.predicted, Some(true));
        assert!(c.right_witness.is_none() && c.left_witness.is_none());
        let only = SuiteConfig {
            only: alloc::vec!["boundary_letters".to_string()],
            ..config
        };
        let r = monoid(&["(1,3)"], 3).run_suite(&only).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(r.cancellativity.is_none());
    }
}
