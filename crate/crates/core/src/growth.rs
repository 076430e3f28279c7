//! Degree-by-degree dimension counts for `K[S_n(H)]` and its monomial
//! quotients.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::ideals::{IdealAtom, IdealSpec};
use crate::rewrite::{congruence_class, Monoid};
use crate::word::{words_of_length, Letter, Word};

/// Counts indexed by word length `0..=L`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GrowthSeries {
    pub counts: Vec<u64>,
}

/// Largest supported length for class counting at degree `n`.
pub fn class_count_envelope(n: usize) -> usize {
    match n {
        0 | 1 => 16,
        2..=4 => 12,
        5 => 9,
        _ => {
            let mut len = 0;
            let mut total = 1usize;
            while let Some(next) = total.checked_mul(n).filter(|&t| t <= 2_000_000) {
                total = next;
                len += 1;
            }
            len
        }
    }
}

fn pack(w: &[Letter]) -> u64 {
    w.iter().fold(0u64, |acc, &l| (acc << 4) | l as u64)
}

/// Deterministic automaton recognising words that contain a forbidden factor.
struct FactorAutomaton {
    alphabet: usize,
    next: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl FactorAutomaton {
    fn new(alphabet: usize, forbidden: &[Vec<Letter>]) -> Self {
        let mut next: Vec<Vec<Option<usize>>> = alloc::vec![alloc::vec![None; alphabet]];
        let mut accepting = alloc::vec![false];
        for word in forbidden {
            let mut state = 0;
            for &letter in word {
                let slot = letter as usize - 1;
                state = match next[state][slot] {
                    Some(s) => s,
                    None => {
                        next.push(alloc::vec![None; alphabet]);
                        accepting.push(false);
                        let s = next.len() - 1;
                        next[state][slot] = Some(s);
                        s
                    }
                };
            }
            accepting[state] = true;
        }
        // breadth-first failure links, folded into a total transition table
        let mut delta: Vec<Vec<usize>> = alloc::vec![alloc::vec![0; alphabet]; next.len()];
        let mut fail = alloc::vec![0usize; next.len()];
        let mut queue = VecDeque::new();
        for slot in 0..alphabet {
            if let Some(s) = next[0][slot] {
                delta[0][slot] = s;
                queue.push_back(s);
            }
        }
        while let Some(state) = queue.pop_front() {
            accepting[state] |= accepting[fail[state]];
            for slot in 0..alphabet {
                match next[state][slot] {
                    Some(child) => {
                        fail[child] = delta[fail[state]][slot];
                        delta[state][slot] = child;
                        queue.push_back(child);
                    }
                    None => delta[state][slot] = delta[fail[state]][slot],
                }
            }
        }
        FactorAutomaton {
            alphabet,
            next: delta,
            accepting,
        }
    }

    /// Number of words of length `len` avoiding every forbidden factor.
    fn count_avoiding(&self, len: usize) -> Result<u64> {
        let mut counts = alloc::vec![0u64; self.next.len()];
        counts[0] = 1;
        for _ in 0..len {
            let mut step = alloc::vec![0u64; self.next.len()];
            for (state, &count) in counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for slot in 0..self.alphabet {
                    let target = self.next[state][slot];
                    if !self.accepting[target] {
                        step[target] = step[target]
                            .checked_add(count)
                            .ok_or_else(|| Error::Resource("count overflows u64".to_string()))?;
                    }
                }
            }
            counts = step;
        }
        Ok(counts.iter().sum())
    }
}

impl Monoid {
    /// Number of congruence classes of length-`len` words.
    pub fn class_count(&self, len: usize) -> Result<u64> {
        let n = self.degree();
        let envelope = class_count_envelope(n);
        if len > envelope {
            return Err(Error::Resource(format!(
                "class counting supports length ≤ {envelope} at n = {n}, got {len}"
            )));
        }
        let patterns: Vec<Vec<Letter>> =
            self.presentation().patterns().iter().map(|p| p.to_vec()).collect();
        let singletons = FactorAutomaton::new(n, &patterns).count_avoiding(len)?;
        if len < n {
            return Ok(singletons);
        }
        let mut seen: HashSet<u64> = HashSet::new();
        let mut merged = 0u64;
        for position in 0..=len - n {
            for pattern in &patterns {
                for filler in words_of_length(n, len - n) {
                    let mut w = Vec::with_capacity(len);
                    w.extend_from_slice(&filler[..position]);
                    w.extend_from_slice(pattern);
                    w.extend_from_slice(&filler[position..]);
                    if seen.contains(&pack(&w)) {
                        continue;
                    }
                    let class = congruence_class(self.presentation(), &w, self.cap());
                    if class.is_truncated() {
                        return Err(Error::Undecided { cap: self.cap() });
                    }
                    seen.extend(class.members().iter().map(|m| pack(m)));
                    merged += 1;
                }
            }
        }
        Ok(singletons + merged)
    }

    pub fn class_series(&self, max_len: usize) -> Result<GrowthSeries> {
        Ok(GrowthSeries {
            counts: (0..=max_len).map(|l| self.class_count(l)).collect::<Result<_>>()?,
        })
    }

    fn forbidden_factors(&self, spec: &IdealSpec) -> Result<Vec<Vec<Letter>>> {
        let mut forbidden: Vec<Vec<Letter>> =
            self.presentation().patterns().iter().map(|p| p.to_vec()).collect();
        let z = self.presentation().z_word();
        forbidden.push(z.to_vec());
        for atom in spec.atoms() {
            forbidden.push(match *atom {
                IdealAtom::TwoSidedZPower { m } => z.repeat(m),
                IdealAtom::TwoSidedGeneratorPower { letter, m } => Word::power(letter as Letter, m).into_letters(),
                IdealAtom::RightZ | IdealAtom::LeftZ => {
                    return Err(Error::Hypotheses(
                        "one-sided ideals do not give monomial quotients".to_string(),
                    ))
                }
            });
        }
        Ok(forbidden)
    }

    /// Length-`len` words with no pattern factor, no `z` factor and no literal
    /// atom power: the monomial basis of `K[S]/K[SzS ∪ Q]` in that degree.
    pub fn normal_word_count(&self, spec: &IdealSpec, len: usize) -> Result<u64> {
        let forbidden = self.forbidden_factors(spec)?;
        FactorAutomaton::new(self.degree(), &forbidden).count_avoiding(len)
    }

    pub fn normal_series(&self, spec: &IdealSpec, max_len: usize) -> Result<GrowthSeries> {
        let automaton = FactorAutomaton::new(self.degree(), &self.forbidden_factors(spec)?);
        Ok(GrowthSeries {
            counts: (0..=max_len).map(|l| automaton.count_avoiding(l)).collect::<Result<_>>()?,
        })
    }

    /// Products of the blocks `x_1x_2` and `x_1x_3` of total length at most
    /// `max_len` are pairwise distinct in `S` and all lie outside `Q`.
    pub fn free_pair_disjoint(&self, spec: &IdealSpec, max_len: usize) -> Result<bool> {
        if self.degree() < 3 {
            return Err(Error::DegreeTooSmall {
                n: self.degree(),
                min: 3,
            });
        }
        for blocks in 0..=max_len / 2 {
            let mut canonical = HashSet::new();
            for choice in 0u64..(1u64 << blocks) {
                let w: Vec<Letter> = (0..blocks)
                    .rev()
                    .flat_map(|bit| if choice >> bit & 1 == 0 { [1, 2] } else { [1, 3] })
                    .collect();
                if self.in_spec(&w, spec)? || !canonical.insert(self.canonical_form(&w)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
