//! Every abelian subgroup of `Sym_n` for small `n`, with the flags the
//! checks care about.

use std::collections::{BTreeSet, VecDeque};

use permrel_core::theorems::predict_cancellative;
use permrel_core::{Error, Permutation, PermutationGroup, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub n: usize,
    /// Cycle notation, one generator per entry.
    pub generators: Vec<String>,
    pub order: usize,
    pub abelian: bool,
    pub transitive: bool,
    pub semiregular: bool,
    pub contains_full_cycle: bool,
    pub predicted_cancellative: Option<bool>,
}

impl CatalogEntry {
    pub fn from_group(group: &PermutationGroup) -> Result<Self> {
        Ok(CatalogEntry {
            n: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
            order: group.order(),
            abelian: group.is_abelian(),
            transitive: group.is_transitive(),
            semiregular: group.is_semiregular(),
            contains_full_cycle: group.contains_full_cycle(),
            predicted_cancellative: predict_cancellative(group).ok(),
        })
    }

    /// Rebuilds the group from the stored generators.
    pub fn group(&self) -> Result<PermutationGroup> {
        PermutationGroup::from_cycles(self.generators.iter().map(String::as_str), self.n)
    }
}

/// All abelian subgroups of `Sym_n`, `2 ≤ n ≤ 5`, ordered by order and
/// then by element set.
///
/// Each abelian group `⟨g_1,…,g_k⟩` is reached from the trivial group by
/// adjoining one commuting permutation at a time, so a search that extends
/// every found group by every permutation centralising it finds them all.
pub fn enumerate_abelian_subgroups(n: usize) -> Result<Vec<CatalogEntry>> {
    if !(2..=5).contains(&n) {
        return Err(Error::Hypotheses(format!("catalog supports 2 ≤ n ≤ 5, got {n}")));
    }
    let all: Vec<Permutation> = PermutationGroup::symmetric(n).elements().cloned().collect();
    let trivial = PermutationGroup::trivial(n);
    let mut found: BTreeSet<(usize, BTreeSet<Permutation>)> = BTreeSet::new();
    found.insert((1, trivial.element_set().clone()));
    let mut queue = VecDeque::from([trivial]);
    while let Some(group) = queue.pop_front() {
        for p in &all {
            if group.contains(p) || !group.generators().iter().all(|g| commute(g, p)) {
                continue;
            }
            let mut gens = group.generators().to_vec();
            gens.push(p.clone());
            let bigger = PermutationGroup::generate(gens, n)?;
            if found.insert((bigger.order(), bigger.element_set().clone())) {
                queue.push_back(bigger);
            }
        }
    }
    found
        .into_iter()
        .map(|(_, elements)| {
            let group = PermutationGroup::generate(elements.into_iter().collect(), n)?.reduced();
            CatalogEntry::from_group(&group)
        })
        .collect()
}

fn commute(a: &Permutation, b: &Permutation) -> bool {
    a.compose(b).ok() == b.compose(a).ok()
}
