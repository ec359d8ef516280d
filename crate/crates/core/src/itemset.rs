use std::fmt;

use serde::Serialize;

/// Item identifier: the column index of a gene in the Boolean matrix.
pub type ItemId = usize;

/// A non-empty, strictly ascending set of item identifiers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Sorts and deduplicates. Returns `None` for an empty input.
    pub fn new<I: IntoIterator<Item = ItemId>>(items: I) -> Option<Self> {
        let mut items: Vec<ItemId> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        (!items.is_empty()).then_some(Self(items))
    }

    pub fn single(item: ItemId) -> Self {
        Self(vec![item])
    }

    pub(crate) fn from_sorted_unchecked(items: Vec<ItemId>) -> Self {
        debug_assert!(!items.is_empty());
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Self(items)
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Itemset(out)
    }

    /// The set with `item` removed, or `None` if nothing would remain.
    pub fn without(&self, item: ItemId) -> Option<Itemset> {
        let rest: Vec<ItemId> = self.0.iter().copied().filter(|&i| i != item).collect();
        (!rest.is_empty()).then_some(Itemset(rest))
    }

    /// All subsets with exactly one item dropped.
    pub fn drop_one_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        (0..self.0.len()).filter(|_| self.0.len() > 1).map(move |skip| {
            Itemset(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect())
        })
    }

    /// Item labels joined with `;`.
    pub fn display_with<'a, S: AsRef<str>>(&'a self, labels: &'a [S]) -> impl fmt::Display + 'a {
        LabelledItemset { set: self, labels }
    }
}

struct LabelledItemset<'a, S> {
    set: &'a Itemset,
    labels: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for LabelledItemset<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, &item) in self.set.items().iter().enumerate() {
            if pos > 0 {
                f.write_str(";")?;
            }
            match self.labels.get(item) {
                Some(label) => f.write_str(label.as_ref())?,
                None => write!(f, "#{item}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, item) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}
