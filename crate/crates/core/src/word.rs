//! Words of the free monoid on `x_1..x_n`, and the overlap calculus on
//! subword occurrences.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite word over `1..=n`; the empty word is the monoid identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `x_i^m`.
    pub fn power(letter: Letter, m: usize) -> Self {
        Word(alloc::vec![letter; m])
    }

    /// Parses `"1,2,3"`, `"a1 a2 a3"` or `"x1x2x3"`; `""` and `"ε"` are the empty word.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "e" {
            return Ok(Word::empty());
        }
        let bad = || Error::WordSyntax(format!("cannot read {text:?} as a word"));
        let mut letters = Vec::new();
        if text.starts_with(['a', 'x']) {
            let mut rest = text;
            loop {
                rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
                if rest.is_empty() {
                    break;
                }
                rest = rest.strip_prefix(['a', 'x']).ok_or_else(bad)?;
                rest = rest.strip_prefix('_').unwrap_or(rest);
                let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                if digits == 0 {
                    return Err(bad());
                }
                letters.push(rest[..digits].parse::<usize>().map_err(|_| bad())?);
                rest = &rest[digits..];
            }
        } else {
            for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                letters.push(token.parse::<usize>().map_err(|_| bad())?);
            }
        }
        Self::from_indices(&letters, n)
    }

    pub fn from_indices(letters: &[usize], n: usize) -> Result<Self> {
        letters
            .iter()
            .map(|&letter| {
                if letter == 0 || letter > n {
                    Err(Error::LetterOutOfRange { letter, n })
                } else {
                    Ok(letter as Letter)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(other);
        Word(letters)
    }

    /// `a · self · b`.
    pub fn wrap(&self, left: &[Letter], right: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(left.len() + self.0.len() + right.len());
        letters.extend_from_slice(left);
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(right);
        Word(letters)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains_factor(&self, factor: &[Letter]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }

    /// Whether some letter occurs `m` times in a row.
    pub fn contains_run(&self, letter: Letter, m: usize) -> bool {
        let mut run = 0;
        for &l in &self.0 {
            run = if l == letter { run + 1 } else { 0 };
            if run >= m {
                return true;
            }
        }
        m == 0
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl core::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(letters: [Letter; N]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (k, letter) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// All words of length `len` over `1..=n`, in lexicographic order.
pub fn words_of_length(n: usize, len: usize) -> WordsOfLength {
    WordsOfLength {
        n: n as Letter,
        next: if n == 0 && len > 0 {
            None
        } else {
            Some(alloc::vec![1; len])
        },
    }
}

/// All words of length at most `max_len`, shortest first, then lexicographic.
pub fn words_up_to(n: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(n, len))
}

pub struct WordsOfLength {
    n: Letter,
    next: Option<Vec<Letter>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        while k > 0 {
            k -= 1;
            if succ[k] < self.n {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 1;
        }
        Some(Word(current))
    }
}

/// An occurrence `x_{i_p} ... x_{i_{p+extent}}` inside a word: 1-based start
/// and extent `r ≥ 0`, so the occurrence has `extent + 1` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub extent: usize,
}

impl Span {
    pub fn new(start: usize, extent: usize) -> Self {
        Span { start, extent }
    }

    fn end(&self) -> usize {
        self.start + self.extent
    }

    fn check(&self, word_len: usize) -> Result<()> {
        if self.start == 0 || self.end() > word_len {
            return Err(Error::SpanOutOfBounds {
                start: self.start,
                extent: self.extent,
                len: word_len,
            });
        }
        Ok(())
    }
}

/// Two occurrences overlap when `p ≤ q ≤ p+r` or `q ≤ p ≤ q+s`.
pub fn overlap(w: &[Letter], first: Span, second: Span) -> Result<bool> {
    first.check(w.len())?;
    second.check(w.len())?;
    let (p, q) = (first.start, second.start);
    Ok((p <= q && q <= first.end()) || (q <= p && p <= second.end()))
}

/// Number of positions shared by two overlapping occurrences.
pub fn overlap_length(w: &[Letter], first: Span, second: Span) -> Result<usize> {
    if !overlap(w, first, second)? {
        return Err(Error::NoOverlap);
    }
    let (left, right) = if first.start <= second.start {
        (first, second)
    } else {
        (second, first)
    };
    Ok(if right.end() <= left.end() {
        right.extent + 1
    } else {
        left.end() - right.start + 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_forms() {
        let expected = Word::from([1, 2, 3]);
        assert_eq!(Word::parse("1,2,3", 3).unwrap(), expected);
        assert_eq!(Word::parse("1 2 3", 3).unwrap(), expected);
        assert_eq!(Word::parse("a1 a2 a3", 3).unwrap(), expected);
        assert_eq!(Word::parse("a_1a_2a_3", 3).unwrap(), expected);
        assert_eq!(Word::parse("x1x2x3", 3).unwrap(), expected);
        assert_eq!(Word::parse("", 3).unwrap(), Word::empty());
        assert_eq!(Word::parse("ε", 3).unwrap(), Word::empty());
        assert_eq!(
            Word::parse("1,4", 3),
            Err(Error::LetterOutOfRange { letter: 4, n: 3 })
        );
        assert!(matches!(Word::parse("1,b", 3), Err(Error::WordSyntax(_))));
        assert!(matches!(Word::parse("a1 ab", 3), Err(Error::WordSyntax(_))));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert_eq!(Word::from([1, 2, 3]).reverse(), Word::from([3, 2, 1]));
        let w = Word::from([2, 2, 3, 1]);
        assert_eq!(w.reverse().reverse(), w);
    }

    #[test]
    fn runs_and_factors() {
        let w = Word::from([1, 2, 2, 3, 2, 2, 2]);
        assert!(w.contains_run(2, 3));
        assert!(!w.contains_run(1, 2));
        assert!(w.contains_factor(&[2, 3, 2]));
        assert!(!w.contains_factor(&[3, 3]));
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<Word> = words_of_length(2, 2).collect();
        assert_eq!(all, [Word::from([1, 1]), Word::from([1, 2]), Word::from([2, 1]), Word::from([2, 2])]);
        assert_eq!(words_of_length(3, 0).collect::<Vec<_>>(), [Word::empty()]);
        assert_eq!(words_up_to(3, 3).count(), 1 + 3 + 9 + 27);
        assert_eq!(words_of_length(0, 2).count(), 0);
    }

    #[test]
    fn overlap_examples() {
        let w = vec![2, 2, 3, 1, 4];
        // x2x3x1 at p=2 and x3x1x4 at q=3
        assert!(overlap(&w, Span::new(2, 2), Span::new(3, 2)).unwrap());
        assert_eq!(overlap_length(&w, Span::new(2, 2), Span::new(3, 2)).unwrap(), 2);
        assert_eq!(overlap_length(&w, Span::new(3, 2), Span::new(2, 2)).unwrap(), 2);
        // x2x2 at p=1 and x3x1 at q=3
        assert!(!overlap(&w, Span::new(1, 1), Span::new(3, 1)).unwrap());
        assert_eq!(
            overlap_length(&w, Span::new(1, 1), Span::new(3, 1)),
            Err(Error::NoOverlap)
        );
        // identical spans
        assert!(overlap(&w, Span::new(2, 3), Span::new(2, 3)).unwrap());
        assert_eq!(overlap_length(&w, Span::new(2, 3), Span::new(2, 3)).unwrap(), 4);
        // nested
        assert_eq!(overlap_length(&w, Span::new(1, 4), Span::new(2, 1)).unwrap(), 2);
        assert_eq!(overlap_length(&w, Span::new(2, 1), Span::new(1, 4)).unwrap(), 2);
        // out of bounds
        assert!(overlap(&w, Span::new(4, 2), Span::new(1, 0)).is_err());
        assert!(overlap(&w, Span::new(0, 0), Span::new(1, 0)).is_err());
    }
}
