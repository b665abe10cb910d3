use super::rat::Rat;
use std::fmt;

/// A finite set of exact rationals, stored strictly increasing.
///
/// Construction deduplicates and sorts, so two `NumberSet`s are equal
/// exactly when they contain the same values. Membership queries are exact
/// binary searches.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberSet {
    elems: Vec<Rat>,
}

impl NumberSet {
    /// Builds a set from any collection of values, deduplicating and
    /// sorting.
    pub fn from_values<I: IntoIterator<Item = Rat>>(values: I) -> Self {
        let mut elems: Vec<Rat> = values.into_iter().collect();
        elems.sort();
        elems.dedup();
        NumberSet { elems }
    }

    pub fn empty() -> Self {
        NumberSet { elems: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, value: &Rat) -> bool {
        self.elems.binary_search(value).is_ok()
    }

    /// Element at sorted position `i`. Panics when out of range; positions
    /// are the vertex indices of any paired graph.
    pub fn get(&self, i: usize) -> &Rat {
        &self.elems[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.elems
    }

    /// `{x + t : x in self}`.
    pub fn translate(&self, t: &Rat) -> Self {
        NumberSet {
            elems: self.elems.iter().map(|x| x + t).collect(),
        }
    }

    /// `{c x : x in self}`. A zero `c` collapses the set to `{0}`.
    pub fn scale(&self, c: &Rat) -> Self {
        NumberSet::from_values(self.elems.iter().map(|x| x * c))
    }
}

impl fmt::Display for NumberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.elems {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", super::rat::format_rat(x))?;
            first = false;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a NumberSet {
    type Item = &'a Rat;
    type IntoIter = std::slice::Iter<'a, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}
