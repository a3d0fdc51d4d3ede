//! The distributive lattice of order ideals and the operations on it.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{bit, iter_bits, Poset};

/// An order ideal stored as a bit mask over the element indexing of its poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ideal(u64);

impl Ideal {
    pub const EMPTY: Ideal = Ideal(0);

    pub fn new(bits: u64) -> Self {
        Ideal(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 & bit(p) != 0
    }

    pub fn is_subset(self, other: Ideal) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn comparable(self, other: Ideal) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    pub fn union(self, other: Ideal) -> Ideal {
        Ideal(self.0 | other.0)
    }

    pub fn intersection(self, other: Ideal) -> Ideal {
        Ideal(self.0 & other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        iter_bits(self.0)
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// `J(P,<)` sorted by `(cardinality, bits)`; positions are the keys of weight vectors.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ideals: Vec<Ideal>,
    index: HashMap<u64, usize>,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ideals == other.ideals
    }
}

impl Eq for IdealLattice {}

impl IdealLattice {
    pub fn enumerate(poset: &Poset) -> Self {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack = vec![0u64];
        seen.insert(0);
        while let Some(j) = stack.pop() {
            for p in iter_bits(poset.full() & !j) {
                if poset.below(p) & !j == 0 {
                    let next = j | bit(p);
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        Self::from_ideals(seen.into_iter().map(Ideal).collect())
    }

    /// Wraps an arbitrary family of ideals, sorting it canonically.
    pub fn from_ideals(mut ideals: Vec<Ideal>) -> Self {
        ideals.sort();
        ideals.dedup();
        let index = ideals.iter().enumerate().map(|(i, j)| (j.0, i)).collect();
        IdealLattice { ideals, index }
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn get(&self, i: usize) -> Ideal {
        self.ideals[i]
    }

    pub fn position(&self, j: Ideal) -> Option<usize> {
        self.index.get(&j.0).copied()
    }

    pub fn contains(&self, j: Ideal) -> bool {
        self.index.contains_key(&j.0)
    }

    /// Unordered pairs of incomparable ideals as position pairs `(i, j)` with `i < j`.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.ideals[i].comparable(self.ideals[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of multichains `J_1 ⊆ ... ⊆ J_m`, by dynamic programming over the lattice.
    pub fn multichain_count(&self, m: usize) -> u128 {
        if m == 0 {
            return 1;
        }
        // ending[i] = multichains of the current length whose top element is ideal i.
        let mut ending = vec![1u128; self.len()];
        for _ in 1..m {
            let mut next = vec![0u128; self.len()];
            for (i, &top) in self.ideals.iter().enumerate() {
                next[i] = self
                    .ideals
                    .iter()
                    .zip(&ending)
                    .filter(|(j, _)| j.is_subset(top))
                    .map(|(_, &c)| c)
                    .sum();
            }
            ending = next;
        }
        ending.iter().sum()
    }
}

/// `max_{order} J`.
pub fn max_antichain(j: Ideal, order: &Poset) -> u64 {
    order.max_of(j.bits())
}

/// `J1 *_{P,<'} J2`: the `<'`-ideal generated by `(J1 ∩ J2) ∩ (max' J1 ∪ max' J2)`.
pub fn star(j1: Ideal, j2: Ideal, weak: &Poset) -> Ideal {
    let generators = j1.0 & j2.0 & (weak.max_of(j1.0) | weak.max_of(j2.0));
    Ideal(weak.down_closure(generators))
}

/// First pair of ideals whose star leaves `J(P,<)`, with the offending result.
pub(crate) fn first_star_escape(
    lattice: &IdealLattice,
    poset: &Poset,
    weak: &Poset,
) -> Option<(Ideal, Ideal, Ideal)> {
    lattice.incomparable_pairs().into_iter().find_map(|(a, b)| {
        let (j1, j2) = (lattice.get(a), lattice.get(b));
        let s = star(j1, j2, weak);
        (!poset.is_ideal(s.bits())).then_some((j1, j2, s))
    })
}

/// Whether `family` is closed under union, intersection and `*_{P,<'}`.
pub fn is_closed_under_star(family: &[Ideal], weak: &Poset) -> bool {
    let set: HashSet<u64> = family.iter().map(|j| j.0).collect();
    family.iter().enumerate().all(|(i, &a)| {
        family[i + 1..].iter().all(|&b| {
            set.contains(&(a.0 | b.0))
                && set.contains(&(a.0 & b.0))
                && set.contains(&star(a, b, weak).0)
        })
    })
}

/// Whether `family` contains a maximal chain `∅ ⊂ J_1 ⊂ ... ⊂ P` of length `|P| + 1`.
pub fn has_full_height(family: &[Ideal], n: usize) -> bool {
    let set: HashSet<u64> = family.iter().map(|j| j.0).collect();
    let full = crate::poset::full_mask(n);
    if !set.contains(&0) {
        return false;
    }
    let mut reached: HashSet<u64> = HashSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(j) = frontier.pop() {
        if j == full {
            return true;
        }
        for p in iter_bits(full & !j) {
            let next = j | bit(p);
            if set.contains(&next) && reached.insert(next) {
                frontier.push(next);
            }
        }
    }
    false
}

/// The unique order `≺` stronger than `<` with `J(P,≺) = K`.
pub fn sublattice_to_order(family: &[Ideal], poset: &Poset) -> Result<Poset> {
    let set: HashSet<u64> = family.iter().map(|j| j.0).collect();
    for &j in family {
        if !poset.is_ideal(j.0) {
            return Err(Error::NotASublattice(format!(
                "{:?} is not an order ideal",
                poset.names(j.0)
            )));
        }
    }
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if !set.contains(&(a.0 | b.0)) || !set.contains(&(a.0 & b.0)) {
                return Err(Error::NotASublattice(format!(
                    "not closed for {:?} and {:?}",
                    poset.names(a.0),
                    poset.names(b.0)
                )));
            }
        }
    }
    if !has_full_height(family, poset.len()) {
        return Err(Error::HeightDeficient {
            expected: poset.len() + 1,
        });
    }
    let n = poset.len();
    let mut pairs = Vec::new();
    for q in 0..n {
        let common = family
            .iter()
            .filter(|j| j.contains(q))
            .fold(poset.full(), |acc, j| acc & j.0);
        for p in iter_bits(common & !bit(q)) {
            pairs.push((p, q));
        }
    }
    poset.with_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain_count(p: &Poset) -> usize {
        (0..1u64 << p.len())
            .filter(|&s| iter_bits(s).all(|a| iter_bits(s).all(|b| !p.less(a, b))))
            .count()
    }

    fn grid(k: usize, n: usize) -> Poset {
        let mut labels = Vec::new();
        let mut coords = Vec::new();
        for i in 1..=k {
            for j in k + 1..=n {
                labels.push(format!("p{i}_{j}"));
                coords.push((i, j));
            }
        }
        let mut pairs = Vec::new();
        for (a, &(i1, j1)) in coords.iter().enumerate() {
            for (b, &(i2, j2)) in coords.iter().enumerate() {
                if a != b && i1 <= i2 && j1 <= j2 {
                    pairs.push((a, b));
                }
            }
        }
        Poset::from_pairs(labels, pairs).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_lattice_sizes() {
        assert_eq!(IdealLattice::enumerate(&Poset::antichain(&["a", "b"]).unwrap()).len(), 4);
        for n in 0..6 {
            let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            assert_eq!(IdealLattice::enumerate(&Poset::chain(&labels).unwrap()).len(), n + 1);
        }
        for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7)] {
            let p = grid(k, n);
            let lattice = IdealLattice::enumerate(&p);
            assert_eq!(lattice.len(), binomial(n, k));
            assert_eq!(lattice.len(), antichain_count(&p));
        }
    }

    #[test]
    fn lattice_is_sorted_and_closed() {
        let p = grid(2, 5);
        let l = IdealLattice::enumerate(&p);
        assert!(l.ideals().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(l.get(0), Ideal::EMPTY);
        assert_eq!(l.get(l.len() - 1).bits(), p.full());
        for &a in l.ideals() {
            for &b in l.ideals() {
                assert!(l.contains(a.union(b)) && l.contains(a.intersection(b)));
            }
        }
    }

    #[test]
    fn max_antichain_cases() {
        let chain = Poset::chain(&["a", "b"]).unwrap();
        assert_eq!(max_antichain(Ideal::EMPTY, &chain), 0);
        assert_eq!(max_antichain(Ideal::new(0b11), &chain), 0b10);
        assert_eq!(max_antichain(Ideal::new(0b11), &chain.trivial_like()), 0b11);
    }

    #[test]
    fn star_extremes() {
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(star(Ideal::new(1), Ideal::new(2), &anti), Ideal::EMPTY);
        let p = grid(2, 5);
        let l = IdealLattice::enumerate(&p);
        let trivial = p.trivial_like();
        for &a in l.ideals() {
            for &b in l.ideals() {
                assert_eq!(star(a, b, &trivial), a.intersection(b));
                if a.is_subset(b) {
                    assert_eq!(star(a, b, &p), a);
                }
            }
        }
    }

    #[test]
    fn sublattice_recovery() {
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let k = [Ideal::new(0), Ideal::new(1), Ideal::new(3)];
        let order = sublattice_to_order(&k, &anti).unwrap();
        assert_eq!(order.relation_pairs(), vec![(0, 1)]);
        let rebuilt = IdealLattice::enumerate(&order);
        assert_eq!(rebuilt.ideals(), &k);

        let p = grid(2, 4);
        let all = IdealLattice::enumerate(&p);
        assert_eq!(sublattice_to_order(all.ideals(), &p).unwrap(), p);
    }

    #[test]
    fn sublattice_errors() {
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let not_closed = [Ideal::new(0), Ideal::new(1), Ideal::new(2), Ideal::new(3)];
        assert!(sublattice_to_order(&not_closed, &anti).is_ok());
        let missing_union = [Ideal::new(0), Ideal::new(1), Ideal::new(2)];
        assert!(matches!(
            sublattice_to_order(&missing_union, &anti),
            Err(Error::NotASublattice(_))
        ));
        let short = [Ideal::new(0), Ideal::new(3)];
        assert!(matches!(
            sublattice_to_order(&short, &anti),
            Err(Error::HeightDeficient { expected: 3 })
        ));
    }

    #[test]
    fn multichain_count_matches_small_cases() {
        let chain = Poset::chain(&["a", "b"]).unwrap();
        let l = IdealLattice::enumerate(&chain);
        assert_eq!(l.multichain_count(1), 3);
        assert_eq!(l.multichain_count(2), 6);
        let anti = IdealLattice::enumerate(&Poset::antichain(&["a", "b"]).unwrap());
        assert_eq!(anti.multichain_count(2), 9);
    }
}
