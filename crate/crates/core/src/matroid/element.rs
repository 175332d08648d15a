use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense index into a ground set `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for Element {
    fn from(i: usize) -> Self {
        Element(i)
    }
}

/// A set of elements that remembers insertion order.
///
/// Membership is a bitmap lookup; iteration follows the order in which
/// elements were inserted, which algorithms use as "pick order".
#[derive(Clone, Default)]
pub struct ElementSet {
    members: Vec<Element>,
    present: Vec<bool>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_universe(m: usize) -> Self {
        ElementSet {
            members: Vec::new(),
            present: vec![false; m],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        ids.into_iter().map(Element).collect()
    }

    /// Inserts `e`; returns false if it was already present.
    pub fn insert(&mut self, e: Element) -> bool {
        let i = e.index();
        if i >= self.present.len() {
            self.present.resize(i + 1, false);
        }
        if self.present[i] {
            return false;
        }
        self.present[i] = true;
        self.members.push(e);
        true
    }

    pub fn remove(&mut self, e: Element) -> bool {
        if !self.contains(e) {
            return false;
        }
        self.present[e.index()] = false;
        if let Some(pos) = self.members.iter().position(|&x| x == e) {
            self.members.remove(pos);
        }
        true
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        self.present.get(e.index()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.members
    }

    /// Members in ascending id order.
    pub fn sorted(&self) -> Vec<Element> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.extend(other.iter());
        out
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.iter().filter(|&e| !other.contains(e)).collect()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.iter().filter(|&e| other.contains(e)).collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.iter().all(|e| !other.contains(e))
    }

    /// Copy of the members with `e` appended (not deduplicated).
    pub fn with(&self, e: Element) -> Vec<Element> {
        let mut v = Vec::with_capacity(self.members.len() + 1);
        v.extend_from_slice(&self.members);
        v.push(e);
        v
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for ElementSet {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter().map(|e| e.0)).finish()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = ElementSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<Element> for ElementSet {
    fn extend<I: IntoIterator<Item = Element>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Element>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl From<&[Element]> for ElementSet {
    fn from(v: &[Element]) -> Self {
        v.iter().copied().collect()
    }
}

impl From<Vec<Element>> for ElementSet {
    fn from(v: Vec<Element>) -> Self {
        v.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_is_idempotent_and_ordered() {
        let mut s = ElementSet::new();
        assert!(s.insert(Element(5)));
        assert!(s.insert(Element(1)));
        assert!(!s.insert(Element(5)));
        assert_eq!(s.as_slice(), &[Element(5), Element(1)]);
        assert_eq!(s.sorted(), vec![Element(1), Element(5)]);
    }

    #[test]
    fn equality_ignores_order() {
        let a = ElementSet::from_indices([3, 1, 2]);
        let b = ElementSet::from_indices([1, 2, 3]);
        assert_eq!(a, b);
        assert_ne!(a, ElementSet::from_indices([1, 2]));
    }

    #[test]
    fn remove_keeps_order_of_rest() {
        let mut s = ElementSet::from_indices([4, 2, 9]);
        assert!(s.remove(Element(2)));
        assert!(!s.remove(Element(2)));
        assert_eq!(s.as_slice(), &[Element(4), Element(9)]);
        assert!(!s.contains(Element(2)));
    }
}
