//! Order, chain and relative poset polytopes: vertices, the canonical triangulation,
//! lattice points of dilations, point decomposition, normality and the transfer map.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, rat, Point};
use crate::lattice::{Ideal, IdealLattice};
use crate::poset::{bit, iter_bits, Poset, RelativeStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolytopeKind {
    Order,
    Chain,
    Relative,
}

/// A lattice polytope in `R^P` with its vertex list and degree-one lattice points.
///
/// Each vertex carries the multichain of ideals it comes from (a single ideal for
/// unmarked polytopes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub coordinates: Vec<String>,
    pub vertices: Vec<Point>,
    pub vertex_labels: Vec<Vec<Ideal>>,
    pub lattice_points: Vec<Point>,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn dimension(&self) -> Option<usize> {
        exact::affine_dimension(&self.lattice_points)
    }
}

/// `1_mask` as an integer point of length `n`.
pub fn indicator(mask: u64, n: usize) -> Point {
    (0..n).map(|p| i64::from(mask & bit(p) != 0)).collect()
}

/// The weak order realizing `kind` on top of the strong order of `s`.
fn weak_for(s: &RelativeStructure, kind: PolytopeKind) -> Poset {
    match kind {
        PolytopeKind::Order => s.poset().trivial_like(),
        PolytopeKind::Chain => s.poset().clone(),
        PolytopeKind::Relative => s.weak().clone(),
    }
}

pub fn build_polytope(s: &RelativeStructure, kind: PolytopeKind) -> LatticePolytope {
    let weak = weak_for(s, kind);
    let n = s.len();
    let lattice = IdealLattice::enumerate(s.poset());
    let vertices: Vec<Point> = lattice
        .ideals()
        .iter()
        .map(|j| indicator(weak.max_of(j.bits()), n))
        .collect();
    LatticePolytope {
        coordinates: s.poset().labels().to_vec(),
        vertex_labels: lattice.ideals().iter().map(|&j| vec![j]).collect(),
        lattice_points: sorted(vertices.clone()),
        vertices,
    }
}

/// The simplex `Δ_{≺,<'}` of a linearization `≺` (listed bottom to top).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub linearization: Vec<usize>,
    pub chain: Vec<Ideal>,
    pub vertices: Vec<Point>,
}

impl Simplex {
    fn from_linearization(linearization: Vec<usize>, weak: &Poset) -> Self {
        let n = linearization.len();
        let mut chain = Vec::with_capacity(n + 1);
        let mut acc = 0u64;
        chain.push(Ideal::EMPTY);
        for &p in &linearization {
            acc |= bit(p);
            chain.push(Ideal::new(acc));
        }
        let vertices = chain
            .iter()
            .map(|j| indicator(weak.max_of(j.bits()), n))
            .collect();
        Simplex {
            linearization,
            chain,
            vertices,
        }
    }

    /// Determinant of the edge vectors from the first vertex.
    pub fn edge_determinant(&self) -> BigInt {
        let base = &self.vertices[0];
        let edges: Vec<Point> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        exact::determinant(&edges)
    }

    pub fn is_unimodular(&self) -> bool {
        self.edge_determinant().abs().is_one()
    }

    /// Barycentric membership of `x` in `m · Δ` (exact).
    pub fn contains_dilated(&self, x: &[i64], m: i64) -> bool {
        let n = x.len();
        let base = &self.vertices[0];
        // Columns are edge vectors; solve E c = x - m·v0.
        let matrix: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (1..=n).map(|c| rat(self.vertices[c][r] - base[r])).collect())
            .collect();
        let rhs: Vec<BigRational> = (0..n).map(|r| rat(x[r] - m * base[r])).collect();
        let Some(c) = exact::solve(&matrix, &rhs) else {
            return false;
        };
        let total = c.iter().fold(BigRational::zero(), |acc, v| acc + v);
        c.iter().all(|v| !v.is_negative()) && total <= rat(m)
    }
}

/// One unimodular simplex per linearization of `<`.
pub fn canonical_triangulation(s: &RelativeStructure) -> Vec<Simplex> {
    s.poset()
        .linear_extensions()
        .into_iter()
        .map(|ext| Simplex::from_linearization(ext, s.weak()))
        .collect()
}

fn sorted(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    pts
}

/// Distinct sums `Σ v(J_i)` over multichains `J_1 ⊆ ... ⊆ J_m` whose i-th entry is drawn
/// from `steps[i]`.
pub(crate) fn multichain_sums(steps: &[&[Ideal]], weak: &Poset, n: usize) -> Vec<Point> {
    fn go(
        steps: &[&[Ideal]],
        vertex: &dyn Fn(Ideal) -> Point,
        depth: usize,
        prev: Ideal,
        acc: &mut Point,
        out: &mut HashSet<Point>,
    ) {
        if depth == steps.len() {
            out.insert(acc.clone());
            return;
        }
        for &j in steps[depth] {
            if !prev.is_subset(j) {
                continue;
            }
            let v = vertex(j);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += b;
            }
            go(steps, vertex, depth + 1, j, acc, out);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a -= b;
            }
        }
    }
    let vertex = |j: Ideal| indicator(weak.max_of(j.bits()), n);
    let mut out = HashSet::new();
    let mut acc = vec![0; n];
    go(steps, &vertex, 0, Ideal::EMPTY, &mut acc, &mut out);
    sorted(out.into_iter().collect())
}

/// Integer points of `m · R(P,<,<')`, generated as multichain sums.
pub fn lattice_points(s: &RelativeStructure, m: usize) -> Vec<Point> {
    let lattice = IdealLattice::enumerate(s.poset());
    let steps: Vec<&[Ideal]> = vec![lattice.ideals(); m];
    multichain_sums(&steps, s.weak(), s.len())
}

/// `y_p = x_p + max_{q >' p} y_q`, evaluated from the top of `<'` down.
pub(crate) fn inverse_transfer(x: &[i64], weak: &Poset) -> Vec<i64> {
    let n = x.len();
    let mut y: Vec<Option<i64>> = vec![None; n];
    let mut remaining = weak.full();
    while remaining != 0 {
        for p in iter_bits(remaining) {
            let above = weak.above(p);
            if above & remaining == 0 {
                let top = iter_bits(above).map(|q| y[q].unwrap()).max().unwrap_or(0);
                y[p] = Some(x[p] + top);
                remaining &= !bit(p);
            }
        }
    }
    y.into_iter().map(Option::unwrap).collect()
}

/// Whether `y ∈ m · O(P,<)` (with `y_p ≥ y_q` for `p < q`).
pub(crate) fn in_dilated_order_polytope(y: &[i64], poset: &Poset, m: i64) -> bool {
    y.iter().all(|&v| (0..=m).contains(&v))
        && poset.relation_pairs().iter().all(|&(p, q)| y[p] >= y[q])
}

/// The unique multichain `J_1 ⊆ ... ⊆ J_m` whose vertex sum is `x`.
pub fn decompose_point(x: &[i64], m: usize, s: &RelativeStructure) -> Result<Vec<Ideal>> {
    let n = s.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let y = inverse_transfer(x, s.weak());
    if !in_dilated_order_polytope(&y, s.poset(), m as i64) {
        return Err(Error::NotALatticePoint { m });
    }
    let chain: Vec<Ideal> = (1..=m as i64)
        .map(|i| {
            let level = m as i64 - i + 1;
            Ideal::new((0..n).filter(|&p| y[p] >= level).fold(0, |acc, p| acc | bit(p)))
        })
        .collect();
    let mut sum = vec![0; n];
    for j in &chain {
        for p in iter_bits(s.weak().max_of(j.bits())) {
            sum[p] += 1;
        }
    }
    if sum != x {
        return Err(Error::NotALatticePoint { m });
    }
    Ok(chain)
}

/// Lattice-point counts of `m · R` for `m = 0..=m_max`.
pub fn ehrhart_values(s: &RelativeStructure, m_max: usize) -> Vec<usize> {
    (0..=m_max).map(|m| lattice_points(s, m).len()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityReport {
    Certified { k_max: usize },
    Counterexample { k: usize, point: Point },
}

/// Integer points of `k · R` found by scanning the box `[0,k]^P`.
pub fn box_lattice_points(s: &RelativeStructure, k: usize) -> Vec<Point> {
    let n = s.len();
    let k = k as i64;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        let y = inverse_transfer(&x, s.weak());
        if in_dilated_order_polytope(&y, s.poset(), k) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if x[i] < k {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Checks that every integer point of `k · R` is a sum of `k` vertices, for `k ≤ k_max`.
pub fn check_normality(s: &RelativeStructure, k_max: usize) -> NormalityReport {
    let vertices = build_polytope(s, PolytopeKind::Relative).vertices;
    let mut sums: HashSet<Point> = HashSet::from([vec![0; s.len()]]);
    for k in 1..=k_max {
        let mut next = HashSet::with_capacity(sums.len() * 2);
        for a in &sums {
            for v in &vertices {
                next.insert(a.iter().zip(v).map(|(x, y)| x + y).collect::<Point>());
            }
        }
        sums = next;
        if let Some(point) = box_lattice_points(s, k)
            .into_iter()
            .find(|p| !sums.contains(p))
        {
            return NormalityReport::Counterexample { k, point };
        }
    }
    NormalityReport::Certified { k_max }
}

/// `y_p = x_p - max_{q > p} x_q`, defined on the order polytope.
pub fn transfer_map(x: &[BigRational], poset: &Poset) -> Result<Vec<BigRational>> {
    if x.len() != poset.len() {
        return Err(Error::DimensionMismatch {
            expected: poset.len(),
            got: x.len(),
        });
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let inside = x.iter().all(|v| *v >= zero && *v <= one)
        && poset.relation_pairs().iter().all(|&(p, q)| x[p] >= x[q]);
    if !inside {
        return Err(Error::NotInOrderPolytope);
    }
    Ok((0..x.len())
        .map(|p| {
            let top = iter_bits(poset.above(p))
                .map(|q| x[q].clone())
                .max()
                .unwrap_or_else(BigRational::zero);
            &x[p] - top
        })
        .collect())
}

/// Inequality oracle for `m · C(P,<)`: nonnegative with every chain sum at most `m`.
pub fn in_dilated_chain_polytope(x: &[i64], poset: &Poset, m: i64) -> bool {
    if x.iter().any(|&v| v < 0) {
        return false;
    }
    // Heaviest chain ending at each element, processed along a linear extension.
    let order = poset.linear_extensions().into_iter().next().unwrap_or_default();
    let mut best = vec![0i64; x.len()];
    for &p in &order {
        let below = iter_bits(poset.below(p)).map(|q| best[q]).max().unwrap_or(0);
        best[p] = below + x[p];
    }
    best.iter().all(|&v| v <= m)
}
