//! Atom interning and atom sets.

use std::collections::HashMap;
use std::fmt;

/// Dense atom identifier, assigned in first-occurrence order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Bijection between atom names and ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    ids: HashMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, interning it if it is new.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&atom) = self.ids.get(name) {
            return atom;
        }
        let atom = Atom(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), atom);
        atom
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        atom.index() < self.names.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len() as u32).map(Atom)
    }

    /// Resolves a whitespace-separated list of atom names.
    pub fn resolve_names(&self, names: &str) -> Result<AtomSet, String> {
        names
            .split_whitespace()
            .map(|n| self.get(n).ok_or_else(|| n.to_owned()))
            .collect::<Result<AtomSet, _>>()
    }
}

/// A finite set of atoms kept as a sorted, duplicate-free id vector.
///
/// The derived ordering is the lexicographic order of the sorted id
/// vectors, which is what every tie-break in the crate relies on.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(Vec<Atom>);

impl AtomSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_sorted_unchecked(atoms: Vec<Atom>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        Self(atoms)
    }

    /// Builds the set of atoms flagged in `mask`.
    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| Atom(i as u32))
                .collect(),
        )
    }

    /// Builds the set from the bits of `bits` indexed into `universe`.
    pub fn from_bits(universe: &[Atom], bits: u64) -> Self {
        universe
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.binary_search(&atom).is_ok()
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        match self.0.binary_search(&atom) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, atom);
                true
            }
        }
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        match self.0.binary_search(&atom) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.iter().all(|&a| other.contains(a))
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        self.iter().filter(|&a| other.contains(a)).collect()
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        self.iter().filter(|&a| !other.contains(a)).collect()
    }

    /// Dense membership vector of length `n`; atoms beyond `n` are ignored.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for a in self.iter() {
            if a.index() < n {
                mask[a.index()] = true;
            }
        }
        mask
    }

    /// Renders the set as `{a, b}` with names sorted alphabetically.
    pub fn render(&self, table: &AtomTable) -> String {
        format!("{{{}}}", self.names(table).join(", "))
    }

    /// Atom names sorted alphabetically.
    pub fn names(&self, table: &AtomTable) -> Vec<String> {
        let mut names: Vec<String> = self.iter().map(|a| table.name(a).to_owned()).collect();
        names.sort();
        names
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut atoms: Vec<Atom> = iter.into_iter().collect();
        atoms.sort_unstable();
        atoms.dedup();
        Self(atoms)
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = Atom;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Atom>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}
