use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::perm::Permutation;

/// A multiset of `(degree, element)` pairs in canonical sorted form, so that
/// `==` is multiset equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeMultiset {
    entries: Vec<((usize, Permutation), usize)>,
}

impl DegreeMultiset {
    pub fn entries(&self) -> &[((usize, Permutation), usize)] {
        &self.entries
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, degree: usize, element: &Permutation) -> usize {
        self.entries
            .binary_search_by(|((d, e), _)| (*d, *e).cmp(&(degree, *element)))
            .map(|k| self.entries[k].1)
            .unwrap_or(0)
    }

    /// Every pair repeated by its multiplicity, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Permutation)> + '_ {
        self.entries
            .iter()
            .flat_map(|&(pair, m)| std::iter::repeat_n(pair, m))
    }
}

impl FromIterator<(usize, Permutation)> for DegreeMultiset {
    fn from_iter<I: IntoIterator<Item = (usize, Permutation)>>(iter: I) -> Self {
        let mut counts: BTreeMap<(usize, Permutation), usize> = BTreeMap::new();
        for pair in iter {
            *counts.entry(pair).or_default() += 1;
        }
        Self {
            entries: counts.into_iter().collect(),
        }
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (d, e)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({d},{e})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let a: DegreeMultiset = [(3, p("321")), (1, p("321")), (3, p("321"))]
            .into_iter()
            .collect();
        assert_eq!(a.to_string(), "{(1,321), (3,321), (3,321)}");
        assert_eq!(a.total(), 3);
        assert_eq!(a.multiplicity(3, &p("321")), 2);
        assert_eq!(a.multiplicity(2, &p("321")), 0);
        let b: DegreeMultiset = [(1, p("321")), (3, p("321"))].into_iter().collect();
        assert_ne!(a, b);
    }

    proptest! {
        #[test]
        fn equality_ignores_insertion_order(pairs in prop::collection::vec((0usize..5, 0usize..6), 0..12), seed in any::<u64>()) {
            let perms: Vec<Permutation> = Permutation::all(3).collect();
            let items: Vec<(usize, Permutation)> = pairs.iter().map(|&(d, k)| (d, perms[k])).collect();
            let mut shuffled = items.clone();
            // deterministic rotation + reversal as a cheap reordering
            let len = shuffled.len().max(1);
            shuffled.rotate_left((seed as usize) % len);
            shuffled.reverse();
            let a: DegreeMultiset = items.iter().copied().collect();
            let b: DegreeMultiset = shuffled.into_iter().collect();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.total(), items.len());
            prop_assert_eq!(a.iter().count(), items.len());
        }
    }
}
