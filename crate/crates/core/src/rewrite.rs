//! The word problem for `S_n(H)`.
//!
//! Relations are homogeneous, so the congruence class of a word is a finite
//! set of words of the same length and breadth-first closure decides
//! equality. Classes are explored under a member cap; hitting it is reported
//! as [`Error::Undecided`], never as a negative answer.

use alloc::collections::VecDeque;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Default bound on congruence-class size.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;
/// Default number of member words held by the class cache.
pub const DEFAULT_CACHE_WORDS: usize = 1 << 20;

/// Replacement of the pattern `from` at 0-based `position` by `to`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RewriteStep {
    pub position: usize,
    pub from: Word,
    pub to: Word,
}

/// All words one relation application away from `w`, with the step taken.
pub fn one_step_neighbors(p: &Presentation, w: &[Letter]) -> Vec<(Word, RewriteStep)> {
    let n = p.degree();
    let mut out = Vec::new();
    if w.len() < n {
        return out;
    }
    for position in 0..=w.len() - n {
        let factor = &w[position..position + n];
        if !p.is_pattern(factor) {
            continue;
        }
        for to in p.patterns() {
            if to.letters() == factor {
                continue;
            }
            let mut next = w.to_vec();
            next[position..position + n].copy_from_slice(to);
            out.push((
                Word::new(next),
                RewriteStep {
                    position,
                    from: Word::new(factor.to_vec()),
                    to: to.clone(),
                },
            ));
        }
    }
    out.sort();
    out
}

/// The words equal in `S` to a given word, as far as exploration got.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClass {
    members: Vec<Word>,
    truncated: bool,
}

impl CongruenceClass {
    fn singleton(w: Word) -> Self {
        CongruenceClass {
            members: alloc::vec![w],
            truncated: false,
        }
    }

    /// Sorted lexicographically.
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.members
            .binary_search_by(|m| m.letters().cmp(w))
            .is_ok()
    }

    /// Lexicographically least member.
    pub fn canonical(&self) -> &Word {
        &self.members[0]
    }

    pub fn any(&self, pred: impl FnMut(&Word) -> bool) -> bool {
        self.members.iter().any(pred)
    }
}

/// Breadth-first closure of `{w}` under one-step rewrites, stopping once
/// `cap` members are known and more remain.
pub fn congruence_class(p: &Presentation, w: &[Letter], cap: usize) -> CongruenceClass {
    let start = Word::new(w.to_vec());
    if !p.has_pattern_factor(w) {
        return CongruenceClass::singleton(start);
    }
    let n = p.degree();
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut truncated = false;
    'bfs: while let Some(current) = queue.pop_front() {
        for position in 0..=current.len() - n {
            let factor = &current[position..position + n];
            if !p.is_pattern(factor) {
                continue;
            }
            for to in p.patterns() {
                if to.letters() == factor {
                    continue;
                }
                let mut next = current.letters().to_vec();
                next[position..position + n].copy_from_slice(to);
                let next = Word::new(next);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut members: Vec<Word> = seen.into_iter().collect();
    members.sort_unstable();
    CongruenceClass { members, truncated }
}

struct CachedClass {
    class: Rc<CongruenceClass>,
    last_used: Cell<u64>,
}

/// Closed classes indexed by every member, evicted least-recently-used
/// once the member count passes the budget.
struct ClassCache {
    by_member: HashMap<Word, Rc<CachedClass>>,
    budget: usize,
    clock: u64,
    hits: u64,
    misses: u64,
}

impl ClassCache {
    fn new(budget: usize) -> Self {
        ClassCache {
            by_member: HashMap::new(),
            budget,
            clock: 0,
            hits: 0,
            misses: 0,
        }
    }

    fn get(&mut self, w: &[Letter]) -> Option<Rc<CongruenceClass>> {
        self.clock += 1;
        match self.by_member.get(w) {
            Some(entry) => {
                self.hits += 1;
                entry.last_used.set(self.clock);
                Some(entry.class.clone())
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    fn insert(&mut self, class: Rc<CongruenceClass>) {
        if self.budget == 0 || class.len() > self.budget {
            return;
        }
        if self.by_member.len() + class.len() > self.budget {
            self.evict_older_half();
        }
        let entry = Rc::new(CachedClass {
            class: class.clone(),
            last_used: Cell::new(self.clock),
        });
        for member in class.members() {
            self.by_member.insert(member.clone(), entry.clone());
        }
    }

    fn evict_older_half(&mut self) {
        let mut stamps: Vec<u64> = self.by_member.values().map(|e| e.last_used.get()).collect();
        if stamps.is_empty() {
            return;
        }
        let mid = stamps.len() / 2;
        let (_, &mut threshold, _) = stamps.select_nth_unstable(mid);
        self.by_member.retain(|_, e| e.last_used.get() > threshold);
    }
}

/// Cache counters, for reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub cached_words: usize,
}

/// `S_n(H)` given by a presentation, with a memo of explored classes.
///
/// The memo uses interior mutability and is not shared across threads;
/// parallel callers create one `Monoid` per worker.
pub struct Monoid {
    presentation: Presentation,
    cap: usize,
    cache: RefCell<ClassCache>,
}

impl Monoid {
    pub fn new(presentation: Presentation) -> Self {
        Self::with_limits(presentation, DEFAULT_CLASS_CAP, DEFAULT_CACHE_WORDS)
    }

    pub fn with_limits(presentation: Presentation, cap: usize, cache_words: usize) -> Self {
        Monoid {
            presentation,
            cap,
            cache: RefCell::new(ClassCache::new(cache_words)),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.presentation.degree()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn cache_stats(&self) -> CacheStats {
        let cache = self.cache.borrow();
        CacheStats {
            hits: cache.hits,
            misses: cache.misses,
            cached_words: cache.by_member.len(),
        }
    }

    /// The same monoid with reversed multiplication.
    pub fn opposite(&self) -> Monoid {
        let budget = self.cache.borrow().budget;
        Monoid::with_limits(self.presentation.opposite(), self.cap, budget)
    }

    pub fn one_step_neighbors(&self, w: &[Letter]) -> Vec<(Word, RewriteStep)> {
        one_step_neighbors(&self.presentation, w)
    }

    /// Closure of `{w}` under this monoid's cap, possibly truncated.
    pub fn congruence_class(&self, w: &[Letter]) -> CongruenceClass {
        congruence_class(&self.presentation, w, self.cap)
    }

    /// The complete class of `w`, or [`Error::Undecided`] past the cap.
    pub fn class_of(&self, w: &[Letter]) -> Result<Rc<CongruenceClass>> {
        if !self.presentation.has_pattern_factor(w) {
            return Ok(Rc::new(CongruenceClass::singleton(Word::new(w.to_vec()))));
        }
        if let Some(class) = self.cache.borrow_mut().get(w) {
            return Ok(class);
        }
        let class = congruence_class(&self.presentation, w, self.cap);
        if class.truncated {
            return Err(Error::Undecided { cap: self.cap });
        }
        let class = Rc::new(class);
        self.cache.borrow_mut().insert(class.clone());
        Ok(class)
    }

    /// Lexicographically least word equal to `w` in `S`.
    pub fn canonical_form(&self, w: &[Letter]) -> Result<Word> {
        Ok(self.class_of(w)?.canonical().clone())
    }

    /// Decides `π(u) = π(v)`.
    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        if u.len() != v.len() {
            return Ok(false);
        }
        if u == v {
            return Ok(true);
        }
        if !self.presentation.has_pattern_factor(u) || !self.presentation.has_pattern_factor(v) {
            return Ok(false);
        }
        Ok(self.class_of(u)?.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::PermutationGroup;

    fn monoid(gens: &[&str], n: usize) -> Monoid {
        Monoid::new(Presentation::build(
            &PermutationGroup::from_cycles(gens.iter().copied(), n).unwrap(),
        ))
    }

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec())
    }

    fn neighbor_words(m: &Monoid, word: &[u8]) -> Vec<Word> {
        m.one_step_neighbors(word).into_iter().map(|(w, _)| w).collect()
    }

    #[test]
    fn neighbors_examples() {
        assert!(neighbor_words(&monoid(&[], 3), &[1, 2, 3, 1, 2, 3]).is_empty());
        let c3 = monoid(&["(1,2,3)"], 3);
        assert_eq!(neighbor_words(&c3, &[1, 2, 3]), [w(&[2, 3, 1]), w(&[3, 1, 2])]);
        assert_eq!(
            neighbor_words(&c3, &[1, 1, 2, 3]),
            [w(&[1, 2, 3, 1]), w(&[1, 3, 1, 2])]
        );
        let steps = c3.one_step_neighbors(&[1, 1, 2, 3]);
        assert!(steps.iter().all(|(_, s)| s.position == 1 && s.from == w(&[1, 2, 3])));
    }

    #[test]
    fn class_examples() {
        let c3 = monoid(&["(1,2,3)"], 3);
        assert_eq!(c3.congruence_class(&[]).members(), [Word::empty()]);
        assert_eq!(c3.congruence_class(&[1, 2, 3]).len(), 3);
        let s3 = Monoid::new(Presentation::build(&PermutationGroup::symmetric(3)));
        assert_eq!(s3.congruence_class(&[1, 2, 3]).len(), 6);
    }

    #[test]
    fn class_cap_truncates() {
        let s3 = Monoid::with_limits(Presentation::build(&PermutationGroup::symmetric(3)), 4, 0);
        let class = s3.congruence_class(&[1, 2, 3]);
        assert!(class.is_truncated());
        assert_eq!(class.len(), 4);
        assert_eq!(s3.canonical_form(&[1, 2, 3]), Err(Error::Undecided { cap: 4 }));
        assert_eq!(s3.equal(&[1, 2, 3], &[3, 2, 1]), Err(Error::Undecided { cap: 4 }));

        let exact = Monoid::with_limits(Presentation::build(&PermutationGroup::symmetric(3)), 6, 0);
        assert!(!exact.congruence_class(&[1, 2, 3]).is_truncated());
    }

    #[test]
    fn canonical_examples() {
        let c3 = monoid(&["(1,2,3)"], 3);
        assert_eq!(c3.canonical_form(&[2, 3, 1]).unwrap(), w(&[1, 2, 3]));
        let t13 = monoid(&["(1,3)"], 3);
        assert_eq!(t13.canonical_form(&[3, 2, 1]).unwrap(), w(&[1, 2, 3]));
        let c = c3.canonical_form(&[3, 1, 2, 2]).unwrap();
        assert_eq!(c3.canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn equality_examples() {
        let t12 = monoid(&["(1,2)"], 3);
        assert!(t12.equal(&[2, 1, 3, 3], &[2, 1, 3, 3]).unwrap());
        assert!(!t12.equal(&[1, 2], &[2, 1]).unwrap());
        assert!(t12.equal(&[1, 2, 3], &[2, 1, 3]).unwrap());
        assert!(!t12.equal(&[1, 2, 3], &[1, 2]).unwrap());
    }

    #[test]
    fn cache_reuses_and_evicts() {
        let s3 = Monoid::with_limits(
            Presentation::build(&PermutationGroup::symmetric(3)),
            DEFAULT_CLASS_CAP,
            16,
        );
        s3.class_of(&[1, 2, 3]).unwrap();
        s3.class_of(&[3, 2, 1]).unwrap();
        assert_eq!(s3.cache_stats().hits, 1);
        for first in 1..=3u8 {
            s3.class_of(&[first, 1, 2, 3]).unwrap();
            s3.class_of(&[1, 2, 3, first]).unwrap();
        }
        assert!(s3.cache_stats().cached_words <= 16);
        assert_eq!(s3.canonical_form(&[3, 2, 1]).unwrap(), w(&[1, 2, 3]));
    }
}
