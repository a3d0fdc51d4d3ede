//! Finite posets stored as bit-matrices, linear extensions, stronger orders and
//! validation of relative structures `(P, <, <')` with optional markings.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result, Violation};
use crate::lattice::{self, Ideal, IdealLattice};
use crate::marked::Marking;

/// Elements are indexed `0..n` and subsets are `u64` masks over that indexing.
pub const MAX_ELEMENTS: usize = 64;

/// Default bound for [`Poset::stronger_orders`].
pub const DEFAULT_SIZE_BOUND: usize = 7;

#[inline]
pub(crate) fn bit(p: usize) -> u64 {
    1u64 << p
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let p = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(p)
        }
    })
}

/// A finite poset with a transitively closed, irreflexive strict order.
///
/// Row `above[p]` holds every `q` with `p < q`; `below[q]` is the transpose.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    above: Vec<u64>,
    below: Vec<u64>,
}

impl Poset {
    /// Builds the poset generated by `covers` (any generating set of relations).
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let p = lookup(&index, a.as_ref())?;
            let q = lookup(&index, b.as_ref())?;
            pairs.push((p, q));
        }
        Self::from_pairs(labels, pairs)
    }

    /// Builds the transitive closure of index pairs `(p, q)` meaning `p < q`.
    pub fn from_pairs(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                size: n,
                max: MAX_ELEMENTS,
            });
        }
        label_index(&labels)?;
        let mut direct = vec![0u64; n];
        for (p, q) in pairs {
            assert!(p < n && q < n, "relation index out of range");
            if p == q {
                return Err(Error::CycleDetected(vec![
                    labels[p].clone(),
                    labels[p].clone(),
                ]));
            }
            direct[p] |= bit(q);
        }
        let mut above = direct.clone();
        for k in 0..n {
            for i in 0..n {
                if above[i] & bit(k) != 0 {
                    above[i] |= above[k];
                }
            }
        }
        if let Some(start) = (0..n).find(|&p| above[p] & bit(p) != 0) {
            return Err(Error::CycleDetected(find_cycle(&direct, start, &labels)));
        }
        Ok(Self::from_closed_rows(labels, above))
    }

    fn from_closed_rows(labels: Vec<String>, above: Vec<u64>) -> Self {
        let n = labels.len();
        let mut below = vec![0u64; n];
        for (p, &row) in above.iter().enumerate() {
            for q in iter_bits(row) {
                below[q] |= bit(p);
            }
        }
        Poset {
            labels,
            above,
            below,
        }
    }

    /// The trivial order on `labels`: no two elements comparable.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new::<S>(labels, &[])
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        Self::from_pairs(names, (1..n).map(|i| (i - 1, i)))
    }

    /// Same element set, order relation replaced by the closure of `pairs`.
    pub fn with_pairs(&self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_pairs(self.labels.clone(), pairs)
    }

    /// The total order on the same elements listing `order` bottom to top.
    pub fn total_like(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len(), "not a permutation");
        let mut above = vec![0u64; self.len()];
        let mut rest = self.full();
        for &p in order {
            rest &= !bit(p);
            above[p] = rest;
        }
        Self::from_closed_rows(self.labels.clone(), above)
    }

    /// The trivial order on the same elements.
    pub fn trivial_like(&self) -> Self {
        Self::from_closed_rows(self.labels.clone(), vec![0; self.len()])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of `label`, or [`Error::UnknownLabel`].
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Mask of the whole element set.
    pub fn full(&self) -> u64 {
        full_mask(self.len())
    }

    #[inline]
    pub fn less(&self, p: usize, q: usize) -> bool {
        self.above[p] & bit(q) != 0
    }

    /// `{q : p < q}`.
    #[inline]
    pub fn above(&self, p: usize) -> u64 {
        self.above[p]
    }

    /// `{p : p < q}`.
    #[inline]
    pub fn below(&self, q: usize) -> u64 {
        self.below[q]
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.less(p, q) || self.less(q, p)
    }

    /// All pairs `(p, q)` with `p < q`, in index order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|p| iter_bits(self.above[p]).map(move |q| (p, q)))
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Cover relations of the Hasse diagram, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relation_pairs()
            .into_iter()
            .filter(|&(p, q)| self.above[p] & self.below[q] == 0)
            .collect()
    }

    pub fn minimal_elements(&self) -> u64 {
        (0..self.len())
            .filter(|&p| self.below[p] == 0)
            .fold(0, |m, p| m | bit(p))
    }

    pub fn maximal_elements(&self) -> u64 {
        (0..self.len())
            .filter(|&p| self.above[p] == 0)
            .fold(0, |m, p| m | bit(p))
    }

    /// Every relation of `self` is a relation of `other`.
    pub fn is_weaker_than(&self, other: &Poset) -> bool {
        self.len() == other.len() && (0..self.len()).all(|p| self.above[p] & !other.above[p] == 0)
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|p| (self.above[p] | self.below[p]).count_ones() as usize == n - 1)
    }

    /// Whether `mask` is downward closed.
    pub fn is_ideal(&self, mask: u64) -> bool {
        iter_bits(mask).all(|q| self.below[q] & !mask == 0)
    }

    /// Smallest order ideal containing `mask`.
    pub fn down_closure(&self, mask: u64) -> u64 {
        iter_bits(mask).fold(mask, |acc, q| acc | self.below[q])
    }

    /// Smallest order filter containing `mask`.
    pub fn up_closure(&self, mask: u64) -> u64 {
        iter_bits(mask).fold(mask, |acc, p| acc | self.above[p])
    }

    /// Maximal elements of `mask` with respect to this order.
    pub fn max_of(&self, mask: u64) -> u64 {
        iter_bits(mask)
            .filter(|&p| self.above[p] & mask == 0)
            .fold(0, |m, p| m | bit(p))
    }

    /// Labels of the elements of `mask`, in index order.
    pub fn names(&self, mask: u64) -> Vec<String> {
        iter_bits(mask).map(|p| self.labels[p].clone()).collect()
    }

    /// All linear extensions, each listed bottom to top, in lexicographic order of indices.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.extend_linear(0, &mut prefix, &mut out);
        out
    }

    fn extend_linear(&self, placed: u64, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == self.len() {
            out.push(prefix.clone());
            return;
        }
        for p in 0..self.len() {
            if placed & bit(p) == 0 && self.below[p] & !placed == 0 {
                prefix.push(p);
                self.extend_linear(placed | bit(p), prefix, out);
                prefix.pop();
            }
        }
    }

    /// Number of linear extensions, counted over the ideal lattice without listing them.
    pub fn linear_extension_count(&self) -> u128 {
        let lattice = IdealLattice::enumerate(self);
        let mut ways = vec![0u128; lattice.len()];
        ways[0] = 1;
        for (i, ideal) in lattice.ideals().iter().enumerate() {
            if ways[i] == 0 {
                continue;
            }
            let addable = (0..self.len())
                .filter(|&p| !ideal.contains(p) && self.below[p] & !ideal.bits() == 0);
            for p in addable {
                let next = lattice
                    .position(Ideal::new(ideal.bits() | bit(p)))
                    .expect("adding a minimal element keeps an ideal");
                ways[next] += ways[i];
            }
        }
        ways[lattice.len() - 1]
    }

    /// All partial orders on the same element set containing this one.
    ///
    /// Fails with [`Error::SizeBoundExceeded`] when `|P| > bound`.
    pub fn stronger_orders(&self, bound: usize) -> Result<Vec<Poset>> {
        if self.len() > bound {
            return Err(Error::SizeBoundExceeded {
                size: self.len(),
                bound,
            });
        }
        let n = self.len();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut stack = vec![self.above.clone()];
        seen.insert(self.above.clone());
        let mut out = Vec::new();
        while let Some(rows) = stack.pop() {
            for p in 0..n {
                for q in 0..n {
                    if p == q || rows[p] & bit(q) != 0 || rows[q] & bit(p) != 0 {
                        continue;
                    }
                    let next = add_relation(&rows, p, q);
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
            out.push(rows);
        }
        out.sort();
        Ok(out
            .into_iter()
            .map(|rows| Self::from_closed_rows(self.labels.clone(), rows))
            .collect())
    }

    /// The subposet on `mask`, reindexed in increasing index order; also returns the
    /// original index of each new element.
    pub fn restrict(&self, mask: u64) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = iter_bits(mask).collect();
        let labels = keep.iter().map(|&p| self.labels[p].clone()).collect();
        let rows = keep
            .iter()
            .map(|&p| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &q)| self.less(p, q))
                    .fold(0u64, |m, (j, _)| m | bit(j))
            })
            .collect();
        (Self::from_closed_rows(labels, rows), keep)
    }
}

fn add_relation(rows: &[u64], p: usize, q: usize) -> Vec<u64> {
    // Everything at or below p now lies below everything at or above q.
    let upper = rows[q] | bit(q);
    rows.iter()
        .enumerate()
        .map(|(r, &row)| {
            if r == p || row & bit(p) != 0 {
                row | upper
            } else {
                row
            }
        })
        .collect()
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Shortest cycle through `start` in the directed graph of generating pairs.
fn find_cycle(direct: &[u64], start: usize, labels: &[String]) -> Vec<String> {
    let n = direct.len();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    let mut end = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for v in iter_bits(direct[u]) {
            if v == start {
                end = Some(u);
                break 'bfs;
            }
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![start];
    if let Some(mut u) = end {
        let mut rev = Vec::new();
        while u != start {
            rev.push(u);
            u = parent[u];
        }
        rev.reverse();
        path.extend(rev);
    }
    path.push(start);
    path.into_iter().map(|p| labels[p].clone()).collect()
}

/// A validated triple `(P, <, <')` with an optional marking `(P*, lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeStructure {
    poset: Poset,
    weak: Poset,
    marking: Option<Marking>,
}

impl RelativeStructure {
    /// Validates conditions (i) and (ii), and for marked structures (iii), dominance and
    /// that every extremal element is marked.
    pub fn new(poset: Poset, weak: Poset, marking: Option<Marking>) -> Result<Self> {
        if weak.labels() != poset.labels() {
            return Err(Error::DimensionMismatch {
                expected: poset.len(),
                got: weak.len(),
            });
        }
        if let Some((p, q)) = weak.relation_pairs().into_iter().find(|&(p, q)| !poset.less(p, q)) {
            return Err(Error::ConditionViolated(Violation::NotWeaker {
                p: poset.label(p).to_string(),
                q: poset.label(q).to_string(),
            }));
        }
        let lattice = IdealLattice::enumerate(&poset);
        if let Some((a, b, c)) = lattice::first_star_escape(&lattice, &poset, &weak) {
            return Err(Error::ConditionViolated(Violation::StarClosure {
                left: poset.names(a.bits()),
                right: poset.names(b.bits()),
                result: poset.names(c.bits()),
            }));
        }
        if let Some(marking) = &marking {
            check_marking(&poset, &weak, marking)?;
        }
        Ok(RelativeStructure {
            poset,
            weak,
            marking,
        })
    }

    /// `<' = <`, the chain polytope case.
    pub fn chain_case(poset: Poset) -> Self {
        let weak = poset.clone();
        Self::new(poset, weak, None).expect("<' = < always satisfies (i) and (ii)")
    }

    /// Trivial `<'`, the order polytope case.
    pub fn order_case(poset: Poset) -> Self {
        let weak = poset.trivial_like();
        Self::new(poset, weak, None).expect("trivial <' always satisfies (i) and (ii)")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn weak(&self) -> &Poset {
        &self.weak
    }

    pub fn marking(&self) -> Option<&Marking> {
        self.marking.as_ref()
    }

    /// Marked set `P*` (empty mask when unmarked).
    pub fn marked_set(&self) -> u64 {
        self.marking.as_ref().map_or(0, |m| m.marked_set())
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Same orders, marking replaced (and revalidated).
    pub fn with_marking(&self, marking: Option<Marking>) -> Result<Self> {
        Self::new(self.poset.clone(), self.weak.clone(), marking)
    }

    /// Same weak order and marking over a stronger strong order; the caller guarantees
    /// closure under `*'` (e.g. a part of a subdivision).
    pub(crate) fn with_strong_unchecked(&self, poset: Poset) -> Self {
        debug_assert!(self.poset.is_weaker_than(&poset));
        RelativeStructure {
            poset,
            weak: self.weak.clone(),
            marking: self.marking.clone(),
        }
    }

    /// `J1 *' J2` for ideals of the strong order.
    pub fn star(&self, j1: Ideal, j2: Ideal) -> Ideal {
        lattice::star(j1, j2, &self.weak)
    }

    /// Vertex `1_{max_{<'} J}` as an element mask.
    pub fn vertex_mask(&self, j: Ideal) -> u64 {
        self.weak.max_of(j.bits())
    }
}

fn check_marking(poset: &Poset, weak: &Poset, marking: &Marking) -> Result<()> {
    let marked = marking.marked_set();
    if marked & !poset.full() != 0 {
        return Err(Error::MarkingMismatch);
    }
    let extremal = poset.minimal_elements() | poset.maximal_elements();
    if let Some(p) = iter_bits(extremal & !marked).next() {
        return Err(Error::ConditionViolated(Violation::MinMax {
            p: poset.label(p).to_string(),
        }));
    }
    for p in iter_bits(marked) {
        if let Some(q) = iter_bits(weak.above(p)).next() {
            return Err(Error::ConditionViolated(Violation::MarkedNotMaximal {
                p: poset.label(p).to_string(),
                q: poset.label(q).to_string(),
            }));
        }
    }
    if let Some((p, q)) = marking.dominance_violation(poset) {
        return Err(Error::ConditionViolated(Violation::Dominance {
            p: poset.label(p).to_string(),
            q: poset.label(q).to_string(),
        }));
    }
    Ok(())
}

/// Validates `(P, <, <')` where `<'` is generated by `weak_covers` (label pairs).
pub fn validate_relative_structure<S: AsRef<str>>(
    poset: &Poset,
    weak_covers: &[(S, S)],
    marking: Option<Marking>,
) -> Result<RelativeStructure> {
    let pairs = weak_covers
        .iter()
        .map(|(a, b)| Ok((poset.require(a.as_ref())?, poset.require(b.as_ref())?)))
        .collect::<Result<Vec<_>>>()?;
    let weak = poset.with_pairs(pairs)?;
    RelativeStructure::new(poset.clone(), weak, marking)
}
