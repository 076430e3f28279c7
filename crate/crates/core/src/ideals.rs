//! Ideals of `S_n(H)` built from `z = a_1⋯a_n` and generator powers, their
//! membership tests, and bounded primality checks.
//!
//! Membership of `π(w)` in `S u S` is decided on the congruence class of
//! `w`: it holds exactly when some member contains a word for `u` as a
//! literal factor, and for `u = z^m` or `a_i^m` that word can be taken to be
//! the literal power, since the class of `z` is the pattern set.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::permgroup::PermutationGroup;
use crate::rewrite::{CongruenceClass, Monoid};
use crate::word::{words_of_length, words_up_to, Letter, Word};

/// One generating piece of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum IdealAtom {
    /// `S z^m S`
    TwoSidedZPower { m: usize },
    /// `S a_i^m S`
    TwoSidedGeneratorPower { letter: usize, m: usize },
    /// `Sz`
    RightZ,
    /// `zS`
    LeftZ,
}

impl IdealAtom {
    fn validate(&self, n: usize) -> Result<()> {
        match *self {
            IdealAtom::TwoSidedZPower { m: 0 } => {
                Err(Error::IdealSyntax("z power must be at least 1".to_string()))
            }
            IdealAtom::TwoSidedGeneratorPower { letter, m } => {
                if letter == 0 || letter > n {
                    Err(Error::LetterOutOfRange { letter, n })
                } else if m == 0 {
                    Err(Error::IdealSyntax(format!("a_{letter} power must be at least 1")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Whether the literal word `w` witnesses membership.
    pub fn witnessed_by(&self, w: &[Letter], z: &[Letter]) -> bool {
        match *self {
            IdealAtom::TwoSidedZPower { m } => {
                let len = m * z.len();
                w.len() >= len
                    && w.windows(len).any(|f| f.chunks(z.len()).all(|c| c == z))
            }
            IdealAtom::TwoSidedGeneratorPower { letter, m } => {
                let mut run = 0;
                w.iter().any(|&l| {
                    run = if l as usize == letter { run + 1 } else { 0 };
                    run >= m
                })
            }
            IdealAtom::RightZ => w.ends_with(z),
            IdealAtom::LeftZ => w.starts_with(z),
        }
    }
}

impl fmt::Display for IdealAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealAtom::TwoSidedZPower { m } => write!(f, "z^{m}"),
            IdealAtom::TwoSidedGeneratorPower { letter, m } => write!(f, "a_{letter}^{m}"),
            IdealAtom::RightZ => f.write_str("Sz"),
            IdealAtom::LeftZ => f.write_str("zS"),
        }
    }
}

/// A finite union of ideal atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdealSpec {
    atoms: Vec<IdealAtom>,
}

impl IdealSpec {
    pub fn new(atoms: impl IntoIterator<Item = IdealAtom>, n: usize) -> Result<Self> {
        let mut atoms: Vec<IdealAtom> = atoms.into_iter().collect();
        for atom in &atoms {
            atom.validate(n)?;
        }
        atoms.sort();
        atoms.dedup();
        Ok(IdealSpec { atoms })
    }

    /// `SzS`.
    pub fn szs() -> Self {
        IdealSpec {
            atoms: alloc::vec![IdealAtom::TwoSidedZPower { m: 1 }],
        }
    }

    /// `⋃_i S a_i^m S` over all letters.
    pub fn all_generator_powers(n: usize, m: usize) -> Self {
        IdealSpec {
            atoms: (1..=n)
                .map(|letter| IdealAtom::TwoSidedGeneratorPower { letter, m })
                .collect(),
        }
    }

    /// Parses `"z^1 + a_1^3 + a_2^3"`; also accepts `z`, `a1^3`, `SzS`, `Sz`, `zS`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut atoms = Vec::new();
        for raw in text.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(Error::IdealSyntax(format!("empty term in {text:?}")));
            }
            let bad = || Error::IdealSyntax(format!("cannot read term {term:?}"));
            let (base, exponent) = match term.split_once('^') {
                Some((b, e)) => (b, Some(e.parse::<usize>().map_err(|_| bad())?)),
                None => (term.as_str(), None),
            };
            let atom = match base {
                "Sz" if exponent.is_none() => IdealAtom::RightZ,
                "zS" if exponent.is_none() => IdealAtom::LeftZ,
                "z" => IdealAtom::TwoSidedZPower {
                    m: exponent.unwrap_or(1),
                },
                "SzS" if exponent.is_none() => IdealAtom::TwoSidedZPower { m: 1 },
                _ => {
                    let digits = base
                        .strip_prefix('a')
                        .map(|d| d.strip_prefix('_').unwrap_or(d))
                        .ok_or_else(bad)?;
                    IdealAtom::TwoSidedGeneratorPower {
                        letter: digits.parse().map_err(|_| bad())?,
                        m: exponent.unwrap_or(1),
                    }
                }
            };
            atoms.push(atom);
        }
        Self::new(atoms, n)
    }

    pub fn atoms(&self) -> &[IdealAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn with(&self, atom: IdealAtom) -> IdealSpec {
        let mut atoms = self.atoms.clone();
        atoms.push(atom);
        atoms.sort();
        atoms.dedup();
        IdealSpec { atoms }
    }

    fn class_hits(&self, class: &CongruenceClass, z: &[Letter]) -> bool {
        class.any(|m| self.atoms.iter().any(|a| a.witnessed_by(m, z)))
    }

    fn has_one_sided_atom(&self) -> bool {
        self.atoms
            .iter()
            .any(|a| matches!(a, IdealAtom::RightZ | IdealAtom::LeftZ))
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("∅");
        }
        for (k, atom) in self.atoms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Why a `zSz ⊆ Q` certificate could not be completed.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "clause", rename_all = "snake_case"))]
pub enum CertificateGap {
    ZInIdeal,
    ZTimesLetterOutside { letter: usize },
    ZSquaredOutside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "outcome", rename_all = "snake_case"))]
pub enum PrimeVerdict {
    /// Every tested pair `u, v` outside the ideal was separated by some `s`.
    NoCounterexampleUpTo {
        max_uv_len: usize,
        max_mid_len: usize,
        pairs_checked: usize,
    },
    /// `z ∉ Q` while `z·a_i ∈ Q` for all `i` and `z·z ∈ Q`, so `zSz ⊆ Q`.
    NotPrimeCertified {
        z: Word,
        z_times_letters: Vec<Word>,
        z_squared: Word,
    },
    /// `u s v ∈ Q` for every `s` up to the searched length.
    Counterexample {
        u: Word,
        v: Word,
        max_mid_len: usize,
    },
    /// The `zSz` certificate failed at the given clause.
    Uncertified { gap: CertificateGap },
}

impl Monoid {
    fn z(&self) -> &[Letter] {
        self.presentation().z_word()
    }

    fn class_has(&self, w: &[Letter], atom: IdealAtom) -> Result<bool> {
        let z = self.z();
        if atom.witnessed_by(w, z) {
            return Ok(true);
        }
        Ok(self.class_of(w)?.any(|m| atom.witnessed_by(m, z)))
    }

    /// `π(w) ∈ S z^m S`.
    pub fn in_two_sided_z_power(&self, w: &[Letter], m: usize) -> Result<bool> {
        self.class_has(w, IdealAtom::TwoSidedZPower { m })
    }

    /// `π(w) ∈ S a_i^m S`.
    pub fn in_two_sided_generator_power(&self, w: &[Letter], letter: usize, m: usize) -> Result<bool> {
        self.class_has(w, IdealAtom::TwoSidedGeneratorPower { letter, m })
    }

    /// `π(w) ∈ Sz`.
    pub fn in_right_z(&self, w: &[Letter]) -> Result<bool> {
        self.class_has(w, IdealAtom::RightZ)
    }

    /// `π(w) ∈ zS`.
    pub fn in_left_z(&self, w: &[Letter]) -> Result<bool> {
        self.class_has(w, IdealAtom::LeftZ)
    }

    /// `π(w)` has a member ending with `suffix`.
    pub fn in_right_ideal_of(&self, w: &[Letter], suffix: &[Letter]) -> Result<bool> {
        if w.ends_with(suffix) {
            return Ok(true);
        }
        Ok(self.class_of(w)?.any(|m| m.ends_with(suffix)))
    }

    /// `π(w)` has a member starting with `prefix`.
    pub fn in_left_ideal_of(&self, w: &[Letter], prefix: &[Letter]) -> Result<bool> {
        if w.starts_with(prefix) {
            return Ok(true);
        }
        Ok(self.class_of(w)?.any(|m| m.starts_with(prefix)))
    }

    pub fn in_spec(&self, w: &[Letter], spec: &IdealSpec) -> Result<bool> {
        let z = self.z();
        if spec.atoms.iter().any(|a| a.witnessed_by(w, z)) {
            return Ok(true);
        }
        if !self.presentation().has_pattern_factor(w) {
            return Ok(false);
        }
        Ok(spec.class_hits(&*self.class_of(w)?, z))
    }

    /// Closure-free test: `w` contains some pattern literally.
    pub fn monomial_preimage_in_szs(&self, w: &[Letter]) -> bool {
        self.presentation().has_pattern_factor(w)
    }

    /// Searches pairs `u, v ∉ Q` (class representatives, shortest first, then
    /// lexicographic, `u` outermost) for one with `u s v ∈ Q` for every
    /// `|s| ≤ max_mid_len`.
    pub fn check_prime_bounded(
        &self,
        spec: &IdealSpec,
        max_uv_len: usize,
        max_mid_len: usize,
    ) -> Result<PrimeVerdict> {
        if spec.is_empty() {
            return Err(Error::Hypotheses("ideal spec is empty".to_string()));
        }
        let mut outside = Vec::new();
        for w in words_up_to(self.degree(), max_uv_len) {
            if self.canonical_form(&w)? == w && !self.in_spec(&w, spec)? {
                outside.push(w);
            }
        }
        let middles: Vec<Word> = words_up_to(self.degree(), max_mid_len).collect();
        let mut pairs_checked = 0;
        for u in &outside {
            for v in &outside {
                pairs_checked += 1;
                if self.separator_among(spec, u, v, &middles)?.is_none() {
                    return Ok(PrimeVerdict::Counterexample {
                        u: u.clone(),
                        v: v.clone(),
                        max_mid_len,
                    });
                }
            }
        }
        Ok(PrimeVerdict::NoCounterexampleUpTo {
            max_uv_len,
            max_mid_len,
            pairs_checked,
        })
    }

    /// Shortest, then lexicographically least, `s` with `|s| ≤ max_mid_len`
    /// and `u s v ∉ Q`.
    pub fn find_separator(
        &self,
        spec: &IdealSpec,
        u: &[Letter],
        v: &[Letter],
        max_mid_len: usize,
    ) -> Result<Option<Word>> {
        let middles: Vec<Word> = words_up_to(self.degree(), max_mid_len).collect();
        self.separator_among(spec, u, v, &middles)
    }

    fn separator_among(
        &self,
        spec: &IdealSpec,
        u: &[Letter],
        v: &[Letter],
        middles: &[Word],
    ) -> Result<Option<Word>> {
        for s in middles {
            if !self.in_spec(&s.wrap(u, v), spec)? {
                return Ok(Some(s.clone()));
            }
        }
        Ok(None)
    }

    /// Checks `z ∉ Q`, `z·a_i ∈ Q` for every `i`, and `z·z ∈ Q`. Together
    /// these give `zSz ⊆ Q` with `z ∉ Q`.
    pub fn verify_not_prime_zsz(&self, spec: &IdealSpec) -> Result<PrimeVerdict> {
        let z = Word::new(self.z().to_vec());
        if self.in_spec(&z, spec)? {
            return Ok(PrimeVerdict::Uncertified {
                gap: CertificateGap::ZInIdeal,
            });
        }
        let mut z_times_letters = Vec::new();
        for letter in 1..=self.degree() {
            let za = z.concat(&[letter as Letter]);
            if !self.in_spec(&za, spec)? {
                return Ok(PrimeVerdict::Uncertified {
                    gap: CertificateGap::ZTimesLetterOutside { letter },
                });
            }
            z_times_letters.push(za);
        }
        let z_squared = z.concat(&z);
        if !self.in_spec(&z_squared, spec)? {
            return Ok(PrimeVerdict::Uncertified {
                gap: CertificateGap::ZSquaredOutside,
            });
        }
        Ok(PrimeVerdict::NotPrimeCertified {
            z,
            z_times_letters,
            z_squared,
        })
    }

    /// Builds a middle word `s` with `u s v ∉ Q`, following the case split
    /// that proves primality of `Q`, and checks it before returning.
    pub fn prime_witness(&self, spec: &IdealSpec, u: &[Letter], v: &[Letter]) -> Result<PrimeWitness> {
        let group = self.presentation().group().ok_or_else(|| {
            Error::Hypotheses("presentation does not come from a subgroup".to_string())
        })?;
        let family = PrimeFamily::classify(group, spec)?;
        if self.in_spec(u, spec)? || self.in_spec(v, spec)? {
            return Err(Error::Hypotheses("u and v must lie outside the ideal".to_string()));
        }
        let (case, middle) = if u.is_empty() || v.is_empty() {
            (WitnessCase::Identity, Word::empty())
        } else {
            match family {
                PrimeFamily::NonTransitive { z_only } => {
                    (WitnessCase::NonTransitive, self.non_transitive_middle(group, u, v, z_only)?)
                }
                PrimeFamily::Semiregular => (WitnessCase::Semiregular, self.semiregular_middle(u, v)?),
                PrimeFamily::SingleSquare { letter } => (
                    WitnessCase::SingleSquare,
                    self.single_square_middle(letter, u, v)?,
                ),
            }
        };
        let product = middle.wrap(u, v);
        if self.in_spec(&product, spec)? {
            return Err(Error::WitnessRejected(format!(
                "u={} s={} v={} lies in {spec}",
                Word::new(u.to_vec()),
                middle,
                Word::new(v.to_vec())
            )));
        }
        Ok(PrimeWitness { case, middle, product })
    }

    /// Number (0, 1 or 2) of trailing copies of `letter` some member of `w`'s class has.
    fn trailing_power(&self, w: &[Letter], letter: Letter) -> Result<usize> {
        if self.in_right_ideal_of(w, &[letter, letter])? {
            Ok(2)
        } else if self.in_right_ideal_of(w, &[letter])? {
            Ok(1)
        } else {
            Ok(0)
        }
    }

    fn leading_power(&self, w: &[Letter], letter: Letter) -> Result<usize> {
        if self.in_left_ideal_of(w, &[letter, letter])? {
            Ok(2)
        } else if self.in_left_ideal_of(w, &[letter])? {
            Ok(1)
        } else {
            Ok(0)
        }
    }

    fn non_transitive_middle(
        &self,
        group: &PermutationGroup,
        u: &[Letter],
        v: &[Letter],
        z_only: bool,
    ) -> Result<Word> {
        let n = self.degree();
        let orbit_n = group.orbit(n)?;
        let orbit_1 = group.orbit(1)?;
        let l = (1..n).find(|i| !orbit_n.contains(i)).expect("non-transitive") as Letter;
        let l_prime = (2..=n).find(|i| !orbit_1.contains(i)).expect("non-transitive") as Letter;
        let mut middle = Vec::new();
        if z_only {
            middle.extend([l, l, l_prime, l_prime]);
            return Ok(Word::new(middle));
        }
        let tail = 2 - self.trailing_power(u, l)?;
        let head = 2 - self.leading_power(v, l_prime)?;
        middle.extend(core::iter::repeat_n(l, tail));
        if l == l_prime {
            let l_second = (1..=n as Letter).find(|&i| i != l).expect("n ≥ 2");
            middle.push(l_second);
        }
        middle.extend(core::iter::repeat_n(l_prime, head));
        Ok(Word::new(middle))
    }

    fn boundary_choice(&self, u: &[Letter], v: &[Letter]) -> Result<(Letter, Letter, Letter, Letter)> {
        let bp = self.presentation().boundary_pairs()?;
        let k = *self.canonical_form(u)?.last().expect("u nonempty");
        let l = self.canonical_form(v)?[0];
        let (j, j_prime) = letters_avoiding_boundary(&bp, self.degree(), k, l).ok_or_else(|| {
            Error::Hypotheses(format!("no boundary letters avoid A after {k} and Ã before {l}"))
        })?;
        Ok((k, l, j, j_prime))
    }

    fn semiregular_middle(&self, u: &[Letter], v: &[Letter]) -> Result<Word> {
        let (_, _, j, j_prime) = self.boundary_choice(u, v)?;
        Ok(if j == j_prime {
            Word::new(alloc::vec![j, j])
        } else {
            Word::new(alloc::vec![j, j, j_prime, j_prime])
        })
    }

    fn single_square_middle(&self, letter: usize, u: &[Letter], v: &[Letter]) -> Result<Word> {
        let i = letter as Letter;
        let (k, l, j, j_prime) = self.boundary_choice(u, v)?;
        let (first, second) = match (j != i, j_prime != i) {
            (true, true) => (j, j_prime),
            (true, false) => (j, l),
            (false, true) => (k, j_prime),
            (false, false) => (k, l),
        };
        Ok(Word::new(alloc::vec![first, first, second, second]))
    }

    /// Whether no word of length at most `max_len` lies in both `Sz` and
    /// `S a_1²`, nor in both `zS` and `a_1² S`.
    pub fn fractions_obstruction(&self, max_len: usize) -> Result<bool> {
        let group = self.presentation().group().ok_or_else(|| {
            Error::Hypotheses("presentation does not come from a subgroup".to_string())
        })?;
        let n = self.degree();
        if n < 3
            || !group.is_abelian()
            || !group.stabilizer_is_trivial(1)?
            || !group.stabilizer_is_trivial(n)?
            || group.contains_full_cycle()
        {
            return Err(Error::Hypotheses(
                "need H abelian, H_1 = H_n = {id}, n ≥ 3 and (1,...,n) ∉ H".to_string(),
            ));
        }
        let z = self.z();
        for len in n..=max_len {
            for w in words_of_length(n, len) {
                if !self.presentation().has_pattern_factor(&w) {
                    continue;
                }
                let class = self.class_of(&w)?;
                let right = class.any(|m| m.ends_with(z)) && class.any(|m| m.ends_with(&[1, 1]));
                let left = class.any(|m| m.starts_with(z)) && class.any(|m| m.starts_with(&[1, 1]));
                if right || left {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Smallest `j ≠ k` with `x_k x_j ∉ A` and smallest `j' ≠ l` with `x_j' x_l ∉ Ã`.
pub fn letters_avoiding_boundary(
    bp: &crate::presentation::BoundaryPairs,
    n: usize,
    k: Letter,
    l: Letter,
) -> Option<(Letter, Letter)> {
    let j = (1..=n as Letter).find(|&j| j != k && !bp.a.contains(&(k, j)))?;
    let j_prime = (1..=n as Letter).find(|&j| j != l && !bp.a_tilde.contains(&(j, l)))?;
    Some((j, j_prime))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PrimeFamily {
    NonTransitive { z_only: bool },
    Semiregular,
    SingleSquare { letter: usize },
}

impl PrimeFamily {
    fn classify(group: &PermutationGroup, spec: &IdealSpec) -> Result<Self> {
        let unmet = |why: &str| Err(Error::Hypotheses(why.to_string()));
        if group.degree() < 3 {
            return unmet("n ≥ 3 required");
        }
        if spec.is_empty() || spec.has_one_sided_atom() {
            return unmet("ideal must be a nonempty union of S z^m S and S a_i^m S");
        }
        let transitive = group.is_transitive();
        let abelian_no_cycle = group.is_abelian() && !group.contains_full_cycle();
        if let [IdealAtom::TwoSidedGeneratorPower { letter, m: 2 }] = spec.atoms() {
            if transitive && abelian_no_cycle {
                return Ok(PrimeFamily::SingleSquare { letter: *letter });
            }
        }
        let powers_ok = spec.atoms().iter().all(|a| match a {
            IdealAtom::TwoSidedGeneratorPower { m, .. } => *m >= 3,
            _ => true,
        });
        if !powers_ok {
            return unmet("generator powers must have exponent at least 3");
        }
        let z_only = spec
            .atoms()
            .iter()
            .all(|a| matches!(a, IdealAtom::TwoSidedZPower { .. }));
        if !transitive {
            Ok(PrimeFamily::NonTransitive { z_only })
        } else if abelian_no_cycle {
            Ok(PrimeFamily::Semiregular)
        } else {
            unmet("H must be non-transitive, or abelian without (1,...,n)")
        }
    }
}

/// Which construction produced a separating middle word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WitnessCase {
    /// `u` or `v` is the identity; `s = ε`.
    Identity,
    /// Powers of letters outside the orbits of `n` and `1`.
    NonTransitive,
    /// Letters whose boundary pairs avoid `A` and `Ã`.
    Semiregular,
    /// The single-square family `S a_i² S` over a transitive abelian group.
    SingleSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PrimeWitness {
    pub case: WitnessCase,
    pub middle: Word,
    pub product: Word,
}
