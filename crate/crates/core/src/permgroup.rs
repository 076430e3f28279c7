//! Permutations of `{1..n}` and the finite groups they generate.
//!
//! Composition is apply-right-first: `p.compose(&q)` maps `i` to `p(q(i))`.
//! Every public interface is 1-based.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from `images[i-1] = σ(i)`.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &image in &images {
            let point = image as usize;
            if point == 0 || point > n {
                return Err(Error::PointOutOfRange { point, n });
            }
            if core::mem::replace(&mut seen[point - 1], true) {
                return Err(Error::RepeatedPoint(point));
            }
        }
        Ok(Permutation { images })
    }

    /// The cycle `(1,2,...,n)`, i.e. `i ↦ i+1 mod n`.
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).map(|i| if i as usize == n { 1 } else { i + 1 }).collect(),
        }
    }

    /// Parses products of disjoint cycles such as `"(1,2)(3,4)"`.
    ///
    /// Whitespace is ignored, `""` and `"()"` give the identity, and points
    /// not mentioned are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        let mut used = alloc::vec![false; n];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(Error::CycleSyntax { pos, reason: "expected '('" });
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos == bytes.len() {
                    return Err(Error::CycleSyntax { pos, reason: "unterminated cycle" });
                }
                if bytes[pos] == b')' && cycle.is_empty() {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::CycleSyntax { pos, reason: "expected a point" });
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| Error::CycleSyntax { pos: start, reason: "point too large" })?;
                if point == 0 || point > n {
                    return Err(Error::PointOutOfRange { point, n });
                }
                if core::mem::replace(&mut used[point - 1], true) {
                    return Err(Error::RepeatedPoint(point));
                }
                cycle.push(point);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(Error::CycleSyntax { pos, reason: "expected ',' or ')'" }),
                }
            }
            for (k, &point) in cycle.iter().enumerate() {
                images[point - 1] = cycle[(k + 1) % cycle.len()] as u8;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `σ(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// `p.compose(q)` maps `i` to `p(q(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&q| self.images[q as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = alloc::vec![0u8; self.degree()];
        for (i, &image) in self.images.iter().enumerate() {
            images[image as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &image)| image as usize == i + 1)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point - 1] {
                seen[point - 1] = true;
                cycle.push(point);
                point = self.apply(point);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, point) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{point}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subgroup of `Sym_n`, stored with its full element set.
#[derive(Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    n: usize,
    elements: BTreeSet<Permutation>,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closure of `generators` under composition, by breadth-first search.
    pub fn generate(generators: Vec<Permutation>, n: usize) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: bad.degree(),
            });
        }
        let identity = Permutation::identity(n);
        let mut elements = BTreeSet::new();
        elements.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(current) = queue.pop_front() {
            for g in &generators {
                let next = current.compose_unchecked(g);
                if !elements.contains(&next) {
                    elements.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(PermutationGroup {
            n,
            elements,
            generators,
        })
    }

    /// Generators given in cycle notation, all of degree `n`.
    pub fn from_cycles<'a>(cycles: impl IntoIterator<Item = &'a str>, n: usize) -> Result<Self> {
        let generators = cycles
            .into_iter()
            .map(|c| Permutation::parse_cycles(c, n))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(generators, n)
    }

    pub fn trivial(n: usize) -> Self {
        let mut elements = BTreeSet::new();
        elements.insert(Permutation::identity(n));
        PermutationGroup {
            n,
            elements,
            generators: Vec::new(),
        }
    }

    /// `⟨(1,2,...,n)⟩`.
    pub fn cyclic(n: usize) -> Self {
        Self::generate(alloc::vec![Permutation::full_cycle(n)], n).expect("degrees agree")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut generators = Vec::new();
        if n >= 2 {
            generators.push(Permutation::full_cycle(n));
            let mut swap: Vec<u8> = (1..=n as u8).collect();
            swap.swap(0, 1);
            generators.push(Permutation { images: swap });
        }
        Self::generate(generators, n).expect("degrees agree")
    }

    /// `⟨(1,2)(3,4), (1,3)(2,4)⟩ ≤ Sym_4`.
    pub fn klein4() -> Self {
        Self::from_cycles(["(1,2)(3,4)", "(1,3)(2,4)"], 4).expect("valid cycles")
    }

    /// The same group with generators chosen greedily from the sorted
    /// elements, so equal groups get equal generator lists.
    pub fn reduced(&self) -> Self {
        Self::from_element_set(self.n, self.elements.clone())
    }

    /// A group given by its element set; generators are chosen greedily.
    fn from_element_set(n: usize, elements: BTreeSet<Permutation>) -> Self {
        let mut generators = Vec::new();
        let mut span = Self::trivial(n);
        for element in &elements {
            if !span.contains(element) {
                generators.push(element.clone());
                span = Self::generate(generators.clone(), n).expect("degrees agree");
            }
        }
        PermutationGroup {
            n,
            elements,
            generators,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn element_set(&self) -> &BTreeSet<Permutation> {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    fn check_point(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::PointOutOfRange { point: i, n: self.n });
        }
        Ok(())
    }

    /// `H_i`, the elements fixing `i`.
    pub fn stabilizer(&self, i: usize) -> Result<PermutationGroup> {
        self.check_point(i)?;
        let fixing = self.elements.iter().filter(|s| s.apply(i) == i).cloned().collect();
        Ok(Self::from_element_set(self.n, fixing))
    }

    pub fn stabilizer_is_trivial(&self, i: usize) -> Result<bool> {
        self.check_point(i)?;
        Ok(self.elements.iter().filter(|s| s.apply(i) == i).count() == 1)
    }

    pub fn orbit(&self, i: usize) -> Result<BTreeSet<usize>> {
        self.check_point(i)?;
        Ok(self.elements.iter().map(|s| s.apply(i)).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.n == 0 || self.orbit(1).map(|o| o.len() == self.n).unwrap_or(false)
    }

    pub fn is_abelian(&self) -> bool {
        let elements: Vec<&Permutation> = self.elements.iter().collect();
        elements.iter().enumerate().all(|(k, p)| {
            elements[k + 1..]
                .iter()
                .all(|q| p.compose_unchecked(q) == q.compose_unchecked(p))
        })
    }

    pub fn is_semiregular(&self) -> bool {
        (1..=self.n).all(|i| self.stabilizer_is_trivial(i).unwrap_or(false))
    }

    /// Whether `(1,2,...,n)` itself is an element.
    pub fn contains_full_cycle(&self) -> bool {
        self.contains(&Permutation::full_cycle(self.n))
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> ≤ Sym_{} (order {})", self.n, self.order())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses an image list such as `"2,3,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::CycleSyntax { pos: 0, reason: "expected image list" })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}
