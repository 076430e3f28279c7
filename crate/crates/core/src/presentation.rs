//! Presentation data for `S_n(H) = ⟨a_1..a_n | a_1⋯a_n = a_σ(1)⋯a_σ(n), σ ∈ H⟩`.
//!
//! Every relation equates two *patterns*: permutation words of length `n`.
//! The rewrite engine only ever looks at the pattern set, so a presentation
//! can also be built from reversed patterns (the opposite monoid) where no
//! group under the original labelling exists.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::permgroup::{Permutation, PermutationGroup};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    generators: Vec<Permutation>,
    group: Option<PermutationGroup>,
    patterns: Vec<Word>,
    z_word: Word,
}

fn pattern_of(sigma: &Permutation) -> Word {
    Word::new(sigma.images().to_vec())
}

impl Presentation {
    /// Patterns `x_σ(1)⋯x_σ(n)` for every `σ ∈ G`.
    pub fn build(group: &PermutationGroup) -> Self {
        let n = group.degree();
        let mut patterns: Vec<Word> = group.elements().map(pattern_of).collect();
        patterns.sort();
        Presentation {
            n,
            generators: group.generators().to_vec(),
            group: Some(group.clone()),
            patterns,
            z_word: Word::new((1..=n as Letter).collect()),
        }
    }

    /// A presentation for an arbitrary set of permutations; the identity is
    /// always adjoined. The group is kept only when the set is closed.
    pub fn from_permutations(n: usize, permutations: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = permutations.iter().find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: bad.degree(),
            });
        }
        let mut set: BTreeSet<Permutation> = permutations.iter().cloned().collect();
        set.insert(Permutation::identity(n));
        let closure = PermutationGroup::generate(permutations.clone(), n)?;
        let group = (closure.element_set() == &set).then_some(closure);
        Ok(Presentation {
            n,
            generators: permutations,
            group,
            patterns: set.iter().map(pattern_of).collect(),
            z_word: Word::new((1..=n as Letter).collect()),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The permutations the presentation was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The subgroup `H`, when the pattern set comes from one under this labelling.
    pub fn group(&self) -> Option<&PermutationGroup> {
        self.group.as_ref()
    }

    /// Sorted, duplicate free.
    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    /// The distinguished word whose image is `z`; `(1,...,n)` unless this is an opposite.
    pub fn z_word(&self) -> &Word {
        &self.z_word
    }

    pub fn is_pattern(&self, factor: &[Letter]) -> bool {
        self.patterns
            .binary_search_by(|p| p.letters().cmp(factor))
            .is_ok()
    }

    /// Whether `w` contains any pattern as a factor.
    pub fn has_pattern_factor(&self, w: &[Letter]) -> bool {
        w.len() >= self.n && w.windows(self.n).any(|f| self.is_pattern(f))
    }

    /// Letter reversal of every pattern, with `z` replaced by its reversal.
    pub fn opposite(&self) -> Presentation {
        let mut patterns: Vec<Word> = self.patterns.iter().map(Word::reverse).collect();
        patterns.sort();
        Presentation {
            n: self.n,
            generators: Vec::new(),
            group: None,
            patterns,
            z_word: self.z_word.reverse(),
        }
    }

    /// The sets `A` (last two letters of each pattern) and `Ã` (first two).
    pub fn boundary_pairs(&self) -> Result<BoundaryPairs> {
        if self.n < 2 {
            return Err(Error::DegreeTooSmall { n: self.n, min: 2 });
        }
        let n = self.n;
        Ok(BoundaryPairs {
            a: self.patterns.iter().map(|p| (p[n - 2], p[n - 1])).collect(),
            a_tilde: self.patterns.iter().map(|p| (p[0], p[1])).collect(),
        })
    }
}

/// `A = {x_σ(n−1) x_σ(n)}` and `Ã = {x_σ(1) x_σ(2)}` over `σ ∈ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundaryPairs {
    pub a: BTreeSet<(Letter, Letter)>,
    pub a_tilde: BTreeSet<(Letter, Letter)>,
}
