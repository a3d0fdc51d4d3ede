//! Markings, marked relative poset polytopes (MRPPs), standardization, subdivisions of
//! MRPPs and marked chain-order polytopes.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::degeneration::{subdivide, Subdivision, WeightVector};
use crate::error::{Error, Result};
use crate::exact::{self, Point};
use crate::lattice::{Ideal, IdealLattice};
use crate::polytope::{decompose_point, indicator, multichain_sums, LatticePolytope};
use crate::poset::{bit, iter_bits, Poset, RelativeStructure};

/// Integer values `λ_p` on a marked subset `P*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Marking {
    values: BTreeMap<usize, i64>,
}

impl Marking {
    pub fn new(poset: &Poset, values: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let values: BTreeMap<usize, i64> = values.into_iter().collect();
        assert!(
            values.keys().all(|&p| p < poset.len()),
            "marked index out of range"
        );
        Marking { values }
    }

    pub fn from_labels<S: AsRef<str>>(poset: &Poset, values: &[(S, i64)]) -> Result<Self> {
        let pairs = values
            .iter()
            .map(|(l, v)| Ok((poset.require(l.as_ref())?, *v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(poset, pairs))
    }

    /// `ω_K` on the marked set `marked`.
    pub fn fundamental(poset: &Poset, marked: u64, k: u64) -> Self {
        Self::new(poset, iter_bits(marked).map(|p| (p, i64::from(k & bit(p) != 0))))
    }

    pub fn marked_set(&self) -> u64 {
        self.values.keys().fold(0, |m, &p| m | bit(p))
    }

    pub fn get(&self, p: usize) -> Option<i64> {
        self.values.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.values.iter().map(|(&p, &v)| (p, v))
    }

    pub fn min(&self) -> i64 {
        self.values.values().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.values.values().copied().max().unwrap_or(0)
    }

    pub fn scaled(&self, m: i64) -> Self {
        Marking {
            values: self.values.iter().map(|(&p, &v)| (p, v * m)).collect(),
        }
    }

    /// First marked pair `p < q` with `λ_p < λ_q`.
    pub fn dominance_violation(&self, poset: &Poset) -> Option<(usize, usize)> {
        self.values.iter().find_map(|(&p, &vp)| {
            iter_bits(poset.above(p) & self.marked_set())
                .find(|&q| vp < self.values[&q])
                .map(|q| (p, q))
        })
    }

    fn require_dominant(&self, poset: &Poset) -> Result<()> {
        match self.dominance_violation(poset) {
            Some((p, q)) => Err(Error::NotDominant {
                p: poset.label(p).to_string(),
                q: poset.label(q).to_string(),
            }),
            None => Ok(()),
        }
    }
}

/// `λ + β ω_{P*} = Σ α_K ω_K` over a strictly increasing chain of nonempty `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalDecomposition {
    /// `(K, α_K)` with `K` a mask inside `P*`.
    pub terms: Vec<(u64, u64)>,
    pub shift: i64,
    /// `D(λ)`: the chain `∅ ⊂ ... ⊂ P*` of `K` with positive coefficient plus both ends.
    pub chain: Vec<u64>,
}

impl FundamentalDecomposition {
    /// `S = Σ α_K`.
    pub fn length(&self) -> u64 {
        self.terms.iter().map(|&(_, a)| a).sum()
    }
}

pub fn fundamental_decomposition(poset: &Poset, lambda: &Marking) -> Result<FundamentalDecomposition> {
    lambda.require_dominant(poset)?;
    let marked = lambda.marked_set();
    let shift = (-lambda.min()).max(0);
    let top = lambda.max() + shift;
    let mut terms: Vec<(u64, u64)> = Vec::new();
    for i in 1..=top {
        let k = lambda
            .iter()
            .filter(|&(_, v)| v + shift > top - i)
            .fold(0u64, |m, (p, _)| m | bit(p));
        match terms.last_mut() {
            Some((last, a)) if *last == k => *a += 1,
            _ => terms.push((k, 1)),
        }
    }
    let mut chain = vec![0u64];
    chain.extend(terms.iter().map(|&(k, _)| k).filter(|&k| k != 0));
    if *chain.last().unwrap() != marked {
        chain.push(marked);
    }
    chain.dedup();
    Ok(FundamentalDecomposition {
        terms,
        shift,
        chain,
    })
}

fn require_marking(s: &RelativeStructure) -> Result<&Marking> {
    s.marking().ok_or(Error::MarkingMissing)
}

fn check_marked_set(s: &RelativeStructure, lambda: &Marking) -> Result<()> {
    if lambda.marked_set() != s.marked_set() {
        return Err(Error::MarkingMismatch);
    }
    Ok(())
}

/// Ideals `J` of `(P,<)` with `J ∩ P* = K`.
pub fn fiber(lattice: &IdealLattice, marked: u64, k: u64) -> Vec<Ideal> {
    lattice
        .ideals()
        .iter()
        .copied()
        .filter(|j| j.bits() & marked == k)
        .collect()
}

/// `R_{ω_K}(P,<,<')`.
pub fn fundamental_mrpp(s: &RelativeStructure, k: u64) -> Result<LatticePolytope> {
    let marked = require_marking(s)?.marked_set();
    let lattice = IdealLattice::enumerate(s.poset());
    let ideals = fiber(&lattice, marked, k);
    let n = s.len();
    let vertices: Vec<Point> = ideals
        .iter()
        .map(|j| indicator(s.weak().max_of(j.bits()), n))
        .collect();
    let mut lattice_points = vertices.clone();
    lattice_points.sort();
    Ok(LatticePolytope {
        coordinates: s.poset().labels().to_vec(),
        vertices,
        vertex_labels: ideals.into_iter().map(|j| vec![j]).collect(),
        lattice_points,
    })
}

/// Integer points of `m · R_λ(P,<,<') = R_{mλ}(P,<,<')`, as multichain sums with
/// prescribed marked intersections.
pub fn mrpp_points(s: &RelativeStructure, lambda: &Marking, m: usize) -> Result<Vec<Point>> {
    check_marked_set(s, lambda)?;
    let scaled = lambda.scaled(m as i64);
    let dec = fundamental_decomposition(s.poset(), &scaled)?;
    let lattice = IdealLattice::enumerate(s.poset());
    let marked = lambda.marked_set();
    let fibers: Vec<Vec<Ideal>> = dec
        .terms
        .iter()
        .map(|&(k, _)| fiber(&lattice, marked, k))
        .collect();
    let mut steps: Vec<&[Ideal]> = Vec::new();
    for (f, &(_, a)) in fibers.iter().zip(&dec.terms) {
        for _ in 0..a {
            steps.push(f);
        }
    }
    let n = s.len();
    let mut points = multichain_sums(&steps, s.weak(), n);
    if dec.shift != 0 {
        let top = indicator(s.weak().max_of(s.poset().full()), n);
        for x in &mut points {
            for (a, t) in x.iter_mut().zip(&top) {
                *a -= dec.shift * t;
            }
        }
        points.sort();
    }
    Ok(points)
}

/// The same point set built literally as a Minkowski sum of fundamental polytopes.
pub fn mrpp_points_minkowski(s: &RelativeStructure, lambda: &Marking) -> Result<Vec<Point>> {
    check_marked_set(s, lambda)?;
    let dec = fundamental_decomposition(s.poset(), lambda)?;
    let n = s.len();
    let mut sums: HashSet<Point> = HashSet::from([vec![0; n]]);
    for &(k, a) in &dec.terms {
        let summand = fundamental_mrpp(s, k)?.vertices;
        for _ in 0..a {
            let mut next = HashSet::new();
            for x in &sums {
                for v in &summand {
                    next.insert(x.iter().zip(v).map(|(a, b)| a + b).collect::<Point>());
                }
            }
            sums = next;
        }
    }
    let top = indicator(s.weak().max_of(s.poset().full()), n);
    let mut out: Vec<Point> = sums
        .into_iter()
        .map(|x| x.iter().zip(&top).map(|(a, t)| a - dec.shift * t).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// The multichain of a lattice point of `R_λ`, with the prescribed fiber counts.
pub fn decompose_mrpp_point(x: &[i64], s: &RelativeStructure, lambda: &Marking) -> Result<Vec<Ideal>> {
    check_marked_set(s, lambda)?;
    let dec = fundamental_decomposition(s.poset(), lambda)?;
    let n = s.len();
    let top = indicator(s.weak().max_of(s.poset().full()), n);
    let shifted: Point = x.iter().zip(&top).map(|(a, t)| a + dec.shift * t).collect();
    let len = dec.length() as usize;
    let chain = decompose_point(&shifted, len, s).map_err(|_| Error::NotALatticePoint { m: 1 })?;
    let marked = lambda.marked_set();
    let mut expected = Vec::new();
    for &(k, a) in &dec.terms {
        expected.extend(std::iter::repeat_n(k, a as usize));
    }
    let got: Vec<u64> = chain.iter().map(|j| j.bits() & marked).collect();
    if got != expected {
        return Err(Error::NotALatticePoint { m: 1 });
    }
    Ok(chain)
}

pub fn build_mrpp(s: &RelativeStructure, lambda: &Marking) -> Result<LatticePolytope> {
    let lattice_points = mrpp_points(s, lambda, 1)?;
    let vertices = exact::extreme_points(&lattice_points);
    let vertex_labels = vertices
        .iter()
        .map(|v| decompose_mrpp_point(v, s, lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePolytope {
        coordinates: s.poset().labels().to_vec(),
        vertices,
        vertex_labels,
        lattice_points,
    })
}

/// A standard MRPP unimodularly equivalent to a given one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardizedStructure {
    /// `(Q, ≪, ≪')` carrying the marking `μ`.
    pub quotient: RelativeStructure,
    pub mu: Marking,
    /// `π^{-1}(q)` for each element of `Q`, as masks over `P`.
    pub classes: Vec<u64>,
    /// The element of `P` whose coordinate `θ` copies into each coordinate of `Q`.
    pub theta: Vec<usize>,
    /// `J_λ`, sorted; positions key the weights of [`mrpp_subdivide`].
    pub sublattice: IdealLattice,
}

impl StandardizedStructure {
    pub fn apply_theta(&self, x: &[i64]) -> Point {
        self.theta.iter().map(|&p| x[p]).collect()
    }

    /// `π(J)` for `J ∈ J_λ`.
    pub fn project_ideal(&self, j: Ideal) -> Ideal {
        Ideal::new(
            self.classes
                .iter()
                .enumerate()
                .filter(|(_, &c)| c & j.bits() == c)
                .fold(0, |m, (q, _)| m | bit(q)),
        )
    }

    /// `π^{-1}(M)` for an ideal of `(Q, ≪)`.
    pub fn lift_ideal(&self, m: Ideal) -> Ideal {
        Ideal::new(m.elements().fold(0, |acc, q| acc | self.classes[q]))
    }

    /// Reindexes weights on `J_λ` by the ideals of `(Q, ≪)`.
    pub fn transport_weights(&self, w: &WeightVector) -> WeightVector {
        let q_lattice = IdealLattice::enumerate(self.quotient.poset());
        WeightVector::new(
            q_lattice
                .ideals()
                .iter()
                .map(|&m| {
                    let pos = self
                        .sublattice
                        .position(self.lift_ideal(m))
                        .expect("π is a lattice isomorphism");
                    w.get(pos).clone()
                })
                .collect(),
        )
    }

    /// Whether `~` is trivial, i.e. the structure was already standard.
    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.theta.len()
            && self.classes.iter().enumerate().all(|(q, &c)| c == bit(q))
    }
}

pub fn standardize(s: &RelativeStructure, lambda: &Marking) -> Result<StandardizedStructure> {
    check_marked_set(s, lambda)?;
    let poset = s.poset();
    let dec = fundamental_decomposition(poset, lambda)?;
    let marked = lambda.marked_set();
    let lattice = IdealLattice::enumerate(poset);
    let chain: HashSet<u64> = dec.chain.iter().copied().collect();
    let sub: Vec<Ideal> = lattice
        .ideals()
        .iter()
        .copied()
        .filter(|j| chain.contains(&(j.bits() & marked)))
        .collect();

    let n = poset.len();
    let signature = |p: usize| -> Vec<bool> { sub.iter().map(|j| j.contains(p)).collect() };
    let mut class_of: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut classes: Vec<u64> = Vec::new();
    for p in 0..n {
        let id = *class_of.entry(signature(p)).or_insert_with(|| {
            classes.push(0);
            classes.len() - 1
        });
        classes[id] |= bit(p);
    }
    let labels: Vec<String> = classes.iter().map(|&c| poset.names(c).join("~")).collect();

    let mut strong_pairs = Vec::new();
    for (q2, &c2) in classes.iter().enumerate() {
        let common = sub
            .iter()
            .filter(|j| j.bits() & c2 == c2)
            .fold(poset.full(), |acc, j| acc & j.bits());
        for (q1, &c1) in classes.iter().enumerate() {
            if q1 != q2 && common & c1 == c1 {
                strong_pairs.push((q1, q2));
            }
        }
    }
    let strong = Poset::from_pairs(labels.clone(), strong_pairs)?;

    let quotient_marked: u64 = classes
        .iter()
        .enumerate()
        .filter(|(_, &c)| c & marked != 0)
        .fold(0, |m, (q, _)| m | bit(q));
    let mut weak_pairs = Vec::new();
    for (q1, &c1) in classes.iter().enumerate() {
        if quotient_marked & bit(q1) != 0 {
            continue;
        }
        for (q2, &c2) in classes.iter().enumerate() {
            if q1 != q2 && iter_bits(c1).any(|p| s.weak().above(p) & c2 != 0) {
                weak_pairs.push((q1, q2));
            }
        }
    }
    let weak = Poset::from_pairs(labels, weak_pairs)?;

    let mut theta = Vec::with_capacity(classes.len());
    let mut mu = Vec::new();
    for (q, &c) in classes.iter().enumerate() {
        let marked_here = c & marked;
        if marked_here != 0 {
            let rep = marked_here.trailing_zeros() as usize;
            theta.push(rep);
            mu.push((q, lambda.get(rep).expect("marked representative")));
        } else {
            if c.count_ones() != 1 {
                return Err(Error::InternalClosureFailure(format!(
                    "unmarked class {:?} has more than one element",
                    poset.names(c)
                )));
            }
            theta.push(c.trailing_zeros() as usize);
        }
    }
    let mu = Marking::new(&strong, mu);
    let quotient = RelativeStructure::new(strong, weak, Some(mu.clone()))?;
    Ok(StandardizedStructure {
        quotient,
        mu,
        classes,
        theta,
        sublattice: IdealLattice::from_ideals(sub),
    })
}

/// One full-dimensional part of a subdivided standard MRPP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrppPart {
    /// Index of the source part in [`MrppSubdivision::unmarked`].
    pub source: usize,
    pub order: Poset,
    pub lattice_points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrppSubdivision {
    pub standardized: StandardizedStructure,
    /// The subdivision of the unmarked `R(Q,≪,≪')`.
    pub unmarked: Subdivision,
    pub parts: Vec<MrppPart>,
    pub dimension: Option<usize>,
}

/// Subdivides `R_λ` at the standardized level. `w` is indexed by positions in `J_λ`
/// (see [`StandardizedStructure::sublattice`]).
pub fn mrpp_subdivide(s: &RelativeStructure, lambda: &Marking, w: &WeightVector) -> Result<MrppSubdivision> {
    let std = standardize(s, lambda)?;
    if w.len() != std.sublattice.len() {
        return Err(Error::WeightLength {
            expected: std.sublattice.len(),
            got: w.len(),
        });
    }
    let q = &std.quotient;
    let transported = std.transport_weights(w);
    let unmarked = subdivide(q, &transported)?;
    let whole = mrpp_points(q, &std.mu, 1)?;
    let dimension = exact::affine_dimension(&whole);
    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    let mut parts = Vec::new();
    for (i, part) in unmarked.parts.iter().enumerate() {
        let local = q.with_strong_unchecked(part.order.clone());
        let points = mrpp_points(&local, &std.mu, 1)?;
        if exact::affine_dimension(&points) == dimension && seen.insert(points.clone()) {
            parts.push(MrppPart {
                source: i,
                order: part.order.clone(),
                lattice_points: points,
            });
        }
    }
    Ok(MrppSubdivision {
        standardized: std,
        unmarked,
        parts,
        dimension,
    })
}

/// `<'` with `p <' q` iff `p < q` and `p ∉ P* ∪ O`.
pub fn mcop_weak_order(poset: &Poset, marked: u64, o: u64) -> Poset {
    let pairs = poset
        .relation_pairs()
        .into_iter()
        .filter(|&(p, _)| (marked | o) & bit(p) == 0);
    poset.with_pairs(pairs).expect("a suborder of a partial order is acyclic")
}

fn check_partition(poset: &Poset, marked: u64, c: u64, o: u64) -> Result<()> {
    let rest = poset.full() & !marked;
    if c & o != 0 || c | o != rest {
        return Err(Error::NotAPartition(format!(
            "C = {:?}, O = {:?}, unmarked = {:?}",
            poset.names(c),
            poset.names(o),
            poset.names(rest)
        )));
    }
    Ok(())
}

/// Integer points of the marked chain-order polytope found from its inequalities.
pub fn mcop_inequality_points(poset: &Poset, lambda: &Marking, c: u64, o: u64) -> Result<Vec<Point>> {
    let marked = lambda.marked_set();
    check_partition(poset, marked, c, o)?;
    lambda.require_dominant(poset)?;
    let n = poset.len();
    let (lo, hi) = (lambda.min(), lambda.max());
    let free: Vec<usize> = iter_bits(c | o).collect();
    let ranges: Vec<(i64, i64)> = free
        .iter()
        .map(|&p| if c & bit(p) != 0 { (0, hi - lo) } else { (lo, hi) })
        .collect();
    let order: Vec<usize> = poset.linear_extensions().into_iter().next().unwrap_or_default();
    let ends = marked | o;
    let mut x = vec![0i64; n];
    for (p, v) in lambda.iter() {
        x[p] = v;
    }
    for (&p, &(a, _)) in free.iter().zip(&ranges) {
        x[p] = a;
    }
    let mut out = Vec::new();
    loop {
        if satisfies_chain_inequalities(poset, &x, c, ends, &order) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                out.sort();
                return Ok(out);
            }
            let p = free[i];
            if x[p] < ranges[i].1 {
                x[p] += 1;
                break;
            }
            x[p] = ranges[i].0;
            i += 1;
        }
    }
}

fn satisfies_chain_inequalities(poset: &Poset, x: &[i64], c: u64, ends: u64, order: &[usize]) -> bool {
    if iter_bits(c).any(|p| x[p] < 0) {
        return false;
    }
    let n = x.len();
    for a in iter_bits(ends) {
        // Heaviest chain a < p_1 < ... < p_r = q through elements of C.
        let mut best: Vec<Option<i64>> = vec![None; n];
        for &q in order {
            if !poset.less(a, q) {
                continue;
            }
            let inner = iter_bits(poset.below(q) & poset.above(a) & c)
                .filter_map(|p| best[p])
                .max()
                .unwrap_or(0);
            if c & bit(q) != 0 {
                best[q] = Some(inner + x[q]);
            } else if ends & bit(q) != 0 && inner > x[a] - x[q] {
                return false;
            }
        }
    }
    true
}

/// Builds `O_{C,O}(P,<,λ)` twice, from its inequalities and as the MRPP with
/// `p <' q ⇔ p < q, p ∉ P* ∪ O`, and fails if the two differ.
pub fn mcop_build(poset: &Poset, lambda: &Marking, c: u64, o: u64) -> Result<LatticePolytope> {
    let from_inequalities = mcop_inequality_points(poset, lambda, c, o)?;
    let weak = mcop_weak_order(poset, lambda.marked_set(), o);
    let s = RelativeStructure::new(poset.clone(), weak, Some(lambda.clone()))?;
    let as_mrpp = mrpp_points(&s, lambda, 1)?;
    if from_inequalities != as_mrpp {
        return Err(Error::TheoremViolation(format!(
            "MCOP has {} lattice points, MRPP has {}",
            from_inequalities.len(),
            as_mrpp.len()
        )));
    }
    build_mrpp(&s, lambda)
}

/// First partition `(C, O)` whose MCOP has the vertex set of `target`.
pub fn mcop_recognize(s: &RelativeStructure, lambda: &Marking, target: &LatticePolytope) -> Result<Option<(u64, u64)>> {
    check_marked_set(s, lambda)?;
    let poset = s.poset();
    let rest = poset.full() & !lambda.marked_set();
    let free: Vec<usize> = iter_bits(rest).collect();
    let mut want = target.vertices.clone();
    want.sort();
    for subset in 0u64..(1 << free.len()) {
        let c = free
            .iter()
            .enumerate()
            .filter(|(i, _)| subset & (1 << i) != 0)
            .fold(0u64, |m, (_, &p)| m | bit(p));
        let o = rest & !c;
        let points = mcop_inequality_points(poset, lambda, c, o)?;
        if !target.lattice_points.is_empty() && points.len() != target.lattice_points.len() {
            continue;
        }
        let mut vertices = exact::extreme_points(&points);
        vertices.sort();
        if vertices == want {
            return Ok(Some((c, o)));
        }
    }
    Ok(None)
}

/// `Q ∪ {p0, p1}` with a new bottom and top, both marked, and `K = {p0}`.
pub fn fundamental_embedding(s: &RelativeStructure) -> Result<(RelativeStructure, u64)> {
    let n = s.len();
    let mut labels = s.poset().labels().to_vec();
    let fresh = |base: &str| {
        let mut name = base.to_string();
        while labels.contains(&name) {
            name.push('\'');
        }
        name
    };
    let (bottom, top) = (fresh("p0"), fresh("p1"));
    labels.push(bottom);
    labels.push(top);
    let (b, t) = (n, n + 1);
    let mut strong: Vec<(usize, usize)> = s.poset().relation_pairs();
    strong.extend((0..n).flat_map(|p| [(b, p), (p, t)]));
    strong.push((b, t));
    let poset = Poset::from_pairs(labels.clone(), strong)?;
    let weak = Poset::from_pairs(labels, s.weak().relation_pairs())?;
    let marking = Marking::new(&poset, [(b, 1), (t, 0)]);
    Ok((RelativeStructure::new(poset, weak, Some(marking))?, bit(b)))
}

/// `P_0`: elements neither below some element of `K` nor above some element of `P* \ K`.
pub fn fundamental_core(s: &RelativeStructure, k: u64) -> u64 {
    let poset = s.poset();
    let marked = s.marked_set();
    (0..poset.len())
        .filter(|&p| {
            let below_k = iter_bits(k).any(|q| q == p || poset.less(p, q));
            let above_rest = iter_bits(marked & !k).any(|q| q == p || poset.less(q, p));
            !below_k && !above_rest
        })
        .fold(0, |m, p| m | bit(p))
}
