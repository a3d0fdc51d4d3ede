//! Quadratic ideal presentations, the distinguished cone of weight vectors, regular
//! subdivisions of relative poset polytopes and their components.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, Point};
use crate::lattice::{self, Ideal, IdealLattice};
use crate::polytope::indicator;
use crate::poset::{bit, iter_bits, Poset, RelativeStructure};

/// A rational weight per ideal, indexed by lattice position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    values: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        WeightVector { values }
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(values.into_iter().map(rat).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![BigRational::zero(); len])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    /// `self + t · other`.
    pub fn add_scaled(&self, other: &WeightVector, t: &BigRational) -> WeightVector {
        WeightVector::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + t * b)
                .collect(),
        )
    }

    fn check_len(&self, lattice: &IdealLattice) -> Result<()> {
        if self.len() != lattice.len() {
            return Err(Error::WeightLength {
                expected: lattice.len(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationKind {
    Hibi,
    HibiLi,
    Relative,
    Monomial,
}

impl PresentationKind {
    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Hibi => "hibi",
            PresentationKind::HibiLi => "hibili",
            PresentationKind::Relative => "relative",
            PresentationKind::Monomial => "monomial",
        }
    }
}

/// `X_{J1} X_{J2} - X_{J1 ∪ J2} X_{J1 • J2}`, or the bare monomial when `right` is absent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub left: (Ideal, Ideal),
    pub right: Option<(Ideal, Ideal)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub kind: PresentationKind,
    pub generators: Vec<Generator>,
}

pub fn ideal_presentation(s: &RelativeStructure, kind: PresentationKind) -> Result<IdealPresentation> {
    if kind == PresentationKind::HibiLi && s.weak() != s.poset() {
        return Err(Error::KindMismatch(
            "the Hibi-Li presentation needs <' equal to <".into(),
        ));
    }
    let lattice = IdealLattice::enumerate(s.poset());
    let generators = lattice
        .incomparable_pairs()
        .into_iter()
        .map(|(a, b)| {
            let (j1, j2) = (lattice.get(a), lattice.get(b));
            let right = match kind {
                PresentationKind::Hibi => Some(j1.intersection(j2)),
                PresentationKind::HibiLi => Some(lattice::star(j1, j2, s.poset())),
                PresentationKind::Relative => Some(s.star(j1, j2)),
                PresentationKind::Monomial => None,
            };
            Generator {
                left: (j1, j2),
                right: right.map(|r| (j1.union(j2), r)),
            }
        })
        .collect();
    Ok(IdealPresentation { kind, generators })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeClass {
    Interior,
    Boundary,
    Outside,
}

impl ConeClass {
    pub fn name(self) -> &'static str {
        match self {
            ConeClass::Interior => "interior",
            ConeClass::Boundary => "boundary",
            ConeClass::Outside => "outside",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub class: ConeClass,
    pub tight: Vec<(Ideal, Ideal)>,
    pub violated: Vec<(Ideal, Ideal)>,
}

/// `w_{J1 ∪ J2} + w_{J1 *' J2} - w_{J1} - w_{J2}` for each incomparable pair.
fn slacks(
    s: &RelativeStructure,
    lattice: &IdealLattice,
    w: &WeightVector,
) -> Vec<((Ideal, Ideal), BigRational)> {
    lattice
        .incomparable_pairs()
        .into_iter()
        .map(|(a, b)| {
            let (j1, j2) = (lattice.get(a), lattice.get(b));
            let u = lattice.position(j1.union(j2)).expect("lattice is closed under union");
            let st = lattice
                .position(s.star(j1, j2))
                .expect("validated structures are closed under star");
            let slack = w.get(u) + w.get(st) - w.get(a) - w.get(b);
            ((j1, j2), slack)
        })
        .collect()
}

pub fn cone_position(s: &RelativeStructure, w: &WeightVector) -> Result<ConeReport> {
    let lattice = IdealLattice::enumerate(s.poset());
    w.check_len(&lattice)?;
    let mut tight = Vec::new();
    let mut violated = Vec::new();
    for (pair, slack) in slacks(s, &lattice, w) {
        if slack.is_negative() {
            violated.push(pair);
        } else if slack.is_zero() {
            tight.push(pair);
        }
    }
    let class = if !violated.is_empty() {
        ConeClass::Outside
    } else if !tight.is_empty() {
        ConeClass::Boundary
    } else {
        ConeClass::Interior
    };
    Ok(ConeReport {
        class,
        tight,
        violated,
    })
}

/// `w_J = |P \ J|^2`.
pub fn canonical_interior_weight(s: &RelativeStructure) -> WeightVector {
    let n = s.len() as i64;
    let lattice = IdealLattice::enumerate(s.poset());
    WeightVector::from_integers(lattice.ideals().iter().map(|j| {
        let rest = n - j.len() as i64;
        rest * rest
    }))
}

/// Random integer weights pushed into the closed cone along the canonical direction by
/// the least integer multiple that makes every inequality hold.
pub fn sample_cone_weight<R: Rng + ?Sized>(s: &RelativeStructure, rng: &mut R, spread: i64) -> WeightVector {
    let lattice = IdealLattice::enumerate(s.poset());
    let n = s.len() as i64;
    let raw: Vec<i64> = (0..lattice.len()).map(|_| rng.gen_range(-spread..=spread)).collect();
    let canonical: Vec<i64> = lattice
        .ideals()
        .iter()
        .map(|j| (n - j.len() as i64).pow(2))
        .collect();
    let mut t = 0i64;
    for (a, b) in lattice.incomparable_pairs() {
        let (j1, j2) = (lattice.get(a), lattice.get(b));
        let u = lattice.position(j1.union(j2)).expect("lattice is closed under union");
        let st = lattice
            .position(s.star(j1, j2))
            .expect("validated structures are closed under star");
        let sw = raw[u] + raw[st] - raw[a] - raw[b];
        if sw < 0 {
            let sc = canonical[u] + canonical[st] - canonical[a] - canonical[b];
            t = t.max((-sw + sc - 1) / sc);
        }
    }
    WeightVector::from_integers(raw.iter().zip(&canonical).map(|(r, c)| r + t * c))
}

/// `1 / (1 + max slack)`, a perturbation size for refinement checks.
pub fn refinement_epsilon(s: &RelativeStructure, w: &WeightVector) -> Result<BigRational> {
    let lattice = IdealLattice::enumerate(s.poset());
    w.check_len(&lattice)?;
    let max = slacks(s, &lattice, w)
        .into_iter()
        .map(|(_, v)| v.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    Ok((BigRational::one() + max).recip())
}

/// Affine function `x ↦ a·x + b` on `R^P`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineFunction {
    pub normal: Vec<BigRational>,
    pub constant: BigRational,
}

impl AffineFunction {
    pub fn eval(&self, x: &[i64]) -> BigRational {
        self.normal
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, &v)| acc + a * rat(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub sublattice: Vec<Ideal>,
    pub order: Poset,
    pub affine: AffineFunction,
    /// Indices into the linear extensions of `<` (in [`Poset::linear_extensions`] order).
    pub simplices: Vec<usize>,
}

impl Part {
    /// Covers of the part order that are not relations of `base`.
    pub fn added_covers(&self, base: &Poset) -> Vec<(usize, usize)> {
        self.order
            .covers()
            .into_iter()
            .filter(|&(p, q)| !base.less(p, q))
            .collect()
    }

    pub fn vertices(&self, weak: &Poset) -> Vec<Point> {
        let n = weak.len();
        self.sublattice
            .iter()
            .map(|j| indicator(weak.max_of(j.bits()), n))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub parts: Vec<Part>,
    pub linearization_count: usize,
}

impl Subdivision {
    /// Every part of `self` is a union of parts of `finer`.
    pub fn is_refined_by(&self, finer: &Subdivision) -> bool {
        self.linearization_count == finer.linearization_count
            && finer.parts.iter().all(|fine| {
                self.parts.iter().any(|coarse| {
                    fine.simplices
                        .iter()
                        .all(|i| coarse.simplices.binary_search(i).is_ok())
                })
            })
    }
}

/// Precomputed triangulation data for repeated subdivisions of one structure.
#[derive(Clone, Debug)]
pub struct Subdivider {
    structure: RelativeStructure,
    lattice: IdealLattice,
    linearizations: Vec<Vec<usize>>,
    chains: Vec<Vec<usize>>,
    /// Lattice positions of `(J1, J2, J1 ∪ J2, J1 *' J2)` per incomparable pair.
    quads: Vec<[usize; 4]>,
    /// `max_{<'} J` per lattice position.
    vertex_masks: Vec<u64>,
}

/// Weights scaled by their common denominator, when all of it fits comfortably in `i64`.
fn integer_weights(w: &WeightVector) -> Option<(Vec<i64>, i64)> {
    const LIMIT: i64 = 1 << 40;
    let mut den = 1i64;
    for v in w.values() {
        den = den.lcm(&v.denom().to_i64()?);
        if den > LIMIT {
            return None;
        }
    }
    let values = w
        .values()
        .iter()
        .map(|v| {
            let x = v.numer().to_i64()?.checked_mul(den / v.denom().to_i64()?)?;
            (x.abs() < LIMIT).then_some(x)
        })
        .collect::<Option<Vec<_>>>()?;
    Some((values, den))
}

type Groups = Vec<(AffineFunction, Vec<usize>)>;

impl Subdivider {
    pub fn new(structure: &RelativeStructure) -> Self {
        let lattice = IdealLattice::enumerate(structure.poset());
        let linearizations = structure.poset().linear_extensions();
        let chains = linearizations
            .iter()
            .map(|ext| {
                let mut acc = 0u64;
                let mut chain = vec![0];
                for &p in ext {
                    acc |= bit(p);
                    chain.push(lattice.position(Ideal::new(acc)).expect("prefix ideal"));
                }
                chain
            })
            .collect();
        let quads = lattice
            .incomparable_pairs()
            .into_iter()
            .map(|(a, b)| {
                let (j1, j2) = (lattice.get(a), lattice.get(b));
                let u = lattice.position(j1.union(j2)).expect("lattice is closed under union");
                let st = lattice
                    .position(structure.star(j1, j2))
                    .expect("validated structures are closed under star");
                [a, b, u, st]
            })
            .collect();
        let vertex_masks = lattice
            .ideals()
            .iter()
            .map(|&j| structure.vertex_mask(j))
            .collect();
        Subdivider {
            structure: structure.clone(),
            lattice,
            linearizations,
            chains,
            quads,
            vertex_masks,
        }
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    pub fn linearizations(&self) -> &[Vec<usize>] {
        &self.linearizations
    }

    /// Affine interpolation of `w` on the simplex of linearization `k`.
    fn interpolate(&self, k: usize, w: &WeightVector) -> AffineFunction {
        let weak = self.structure.weak();
        let ext = &self.linearizations[k];
        let chain = &self.chains[k];
        let mut normal = vec![BigRational::zero(); ext.len()];
        for (i, &p) in ext.iter().enumerate() {
            let mut value = w.get(chain[i + 1]) - w.get(chain[i]);
            for q in iter_bits(self.vertex_masks[chain[i]] & weak.below(p)) {
                value += &normal[q];
            }
            normal[p] = value;
        }
        AffineFunction {
            normal,
            constant: w.get(0).clone(),
        }
    }

    /// [`Self::interpolate`] on integer weights; `None` on overflow.
    fn interpolate_integer(&self, k: usize, w: &[i64]) -> Option<Vec<i128>> {
        let weak = self.structure.weak();
        let ext = &self.linearizations[k];
        let chain = &self.chains[k];
        let mut normal = vec![0i128; ext.len()];
        for (i, &p) in ext.iter().enumerate() {
            let mut value = i128::from(w[chain[i + 1]]) - i128::from(w[chain[i]]);
            for q in iter_bits(self.vertex_masks[chain[i]] & weak.below(p)) {
                value = value.checked_add(normal[q])?;
            }
            normal[p] = value;
        }
        Some(normal)
    }

    fn members(&self, simplices: &[usize]) -> BTreeSet<usize> {
        simplices
            .iter()
            .flat_map(|&k| self.chains[k].iter().copied())
            .collect()
    }

    fn lift_mismatch() -> Error {
        Error::InternalClosureFailure("affine lift disagrees with the weight on a part vertex".into())
    }

    fn group_rational(&self, w: &WeightVector) -> Result<Groups> {
        let n = self.structure.len();
        let mut groups: BTreeMap<AffineFunction, Vec<usize>> = BTreeMap::new();
        for k in 0..self.linearizations.len() {
            groups.entry(self.interpolate(k, w)).or_default().push(k);
        }
        for (affine, simplices) in &groups {
            for i in self.members(simplices) {
                if affine.eval(&indicator(self.vertex_masks[i], n)) != *w.get(i) {
                    return Err(Self::lift_mismatch());
                }
            }
        }
        Ok(groups.into_iter().collect())
    }

    /// Exact grouping on scaled integer weights; `Ok(None)` if intermediate values overflow.
    fn group_integer(&self, w: &WeightVector, scaled: &[i64], den: i64) -> Result<Option<Groups>> {
        let mut groups: HashMap<Vec<i128>, Vec<usize>> = HashMap::new();
        for k in 0..self.linearizations.len() {
            let Some(normal) = self.interpolate_integer(k, scaled) else {
                return Ok(None);
            };
            groups.entry(normal).or_default().push(k);
        }
        let base = i128::from(scaled[0]);
        let mut out = Vec::with_capacity(groups.len());
        for (normal, simplices) in groups {
            for i in self.members(&simplices) {
                let mut value = base;
                for p in iter_bits(self.vertex_masks[i]) {
                    let Some(v) = value.checked_add(normal[p]) else {
                        return Ok(None);
                    };
                    value = v;
                }
                if value != i128::from(scaled[i]) {
                    return Err(Self::lift_mismatch());
                }
            }
            let den = BigInt::from(den);
            let affine = AffineFunction {
                normal: normal
                    .into_iter()
                    .map(|a| BigRational::new(BigInt::from(a), den.clone()))
                    .collect(),
                constant: w.get(0).clone(),
            };
            out.push((affine, simplices));
        }
        Ok(Some(out))
    }

    pub fn subdivide(&self, w: &WeightVector) -> Result<Subdivision> {
        let s = &self.structure;
        w.check_len(&self.lattice)?;
        let scaled = integer_weights(w);
        let negative = |q: &[usize; 4]| match &scaled {
            Some((v, _)) => v[q[2]] + v[q[3]] - v[q[0]] - v[q[1]] < 0,
            None => (w.get(q[2]) + w.get(q[3]) - w.get(q[0]) - w.get(q[1])).is_negative(),
        };
        let violated: Vec<(Vec<String>, Vec<String>)> = self
            .quads
            .iter()
            .filter(|q| negative(q))
            .map(|q| {
                let names = |i: usize| s.poset().names(self.lattice.get(i).bits());
                (names(q[0]), names(q[1]))
            })
            .collect();
        if !violated.is_empty() {
            return Err(Error::OutsideCone(violated));
        }
        let integer = match &scaled {
            Some((v, den)) => self.group_integer(w, v, *den)?,
            None => None,
        };
        let groups = match integer {
            Some(groups) => groups,
            None => self.group_rational(w)?,
        };
        let mut parts = Vec::with_capacity(groups.len());
        for (affine, simplices) in groups {
            let sublattice: Vec<Ideal> = self
                .members(&simplices)
                .into_iter()
                .map(|i| self.lattice.get(i))
                .collect();
            if let [k] = simplices[..] {
                // A maximal chain is closed under all three operations.
                parts.push(Part {
                    sublattice,
                    order: s.poset().total_like(&self.linearizations[k]),
                    affine,
                    simplices,
                });
                continue;
            }
            if !lattice::is_closed_under_star(&sublattice, s.weak())
                || !lattice::has_full_height(&sublattice, s.len())
            {
                return Err(Error::InternalClosureFailure(format!(
                    "part with {} ideals is not a closed sublattice",
                    sublattice.len()
                )));
            }
            let order = lattice::sublattice_to_order(&sublattice, s.poset())
                .map_err(|e| Error::InternalClosureFailure(e.to_string()))?;
            parts.push(Part {
                sublattice,
                order,
                affine,
                simplices,
            });
        }
        parts.sort_by_key(|p| p.simplices[0]);
        Ok(Subdivision {
            parts,
            linearization_count: self.linearizations.len(),
        })
    }
}

pub fn subdivide(s: &RelativeStructure, w: &WeightVector) -> Result<Subdivision> {
    Subdivider::new(s).subdivide(w)
}

/// One component of the degeneration: a part sublattice, the relative presentation over
/// its order, and the variables vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub sublattice: Vec<Ideal>,
    pub order: Poset,
    pub presentation: IdealPresentation,
    pub vanishing: Vec<Ideal>,
}

pub fn zhu_components(s: &RelativeStructure, w: &WeightVector) -> Result<Vec<Component>> {
    let subdivision = subdivide(s, w)?;
    let lattice = IdealLattice::enumerate(s.poset());
    subdivision
        .parts
        .into_iter()
        .map(|part| {
            let local = s.with_strong_unchecked(part.order.clone());
            let presentation = ideal_presentation(&local, PresentationKind::Relative)?;
            let inside: BTreeSet<Ideal> = part.sublattice.iter().copied().collect();
            let vanishing = lattice
                .ideals()
                .iter()
                .copied()
                .filter(|j| !inside.contains(j))
                .collect();
            Ok(Component {
                sublattice: part.sublattice,
                order: part.order,
                presentation,
                vanishing,
            })
        })
        .collect()
}

/// Degree-`m` standard monomials of the monomial ideal, i.e. multichains of length `m`.
pub fn standard_monomial_count(s: &RelativeStructure, m: usize) -> u128 {
    IdealLattice::enumerate(s.poset()).multichain_count(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{canonical_triangulation, ehrhart_values};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid(rows: usize, cols: usize) -> Poset {
        let labels: Vec<String> = (0..rows * cols).map(|i| format!("g{i}")).collect();
        let mut pairs = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let p = i * cols + j;
                if i + 1 < rows {
                    pairs.push((p, p + cols));
                }
                if j + 1 < cols {
                    pairs.push((p, p + 1));
                }
            }
        }
        Poset::from_pairs(labels, pairs).unwrap()
    }

    #[test]
    fn presentations_small() {
        let chain = RelativeStructure::chain_case(Poset::chain(&["a", "b"]).unwrap());
        for kind in [
            PresentationKind::Hibi,
            PresentationKind::HibiLi,
            PresentationKind::Relative,
            PresentationKind::Monomial,
        ] {
            assert!(ideal_presentation(&chain, kind).unwrap().generators.is_empty());
        }
        let anti = RelativeStructure::order_case(Poset::antichain(&["a", "b"]).unwrap());
        let hibi = ideal_presentation(&anti, PresentationKind::Hibi).unwrap();
        assert_eq!(
            hibi.generators,
            vec![Generator {
                left: (Ideal::new(1), Ideal::new(2)),
                right: Some((Ideal::new(3), Ideal::EMPTY)),
            }]
        );
        let g = RelativeStructure::order_case(grid(2, 2));
        assert!(matches!(
            ideal_presentation(&g, PresentationKind::HibiLi),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn cone_classes() {
        let anti = RelativeStructure::order_case(Poset::antichain(&["a", "b"]).unwrap());
        assert_eq!(cone_position(&anti, &WeightVector::zeros(4)).unwrap().class, ConeClass::Boundary);
        let canonical = canonical_interior_weight(&anti);
        assert_eq!(canonical, WeightVector::from_integers([4, 1, 1, 0]));
        assert_eq!(cone_position(&anti, &canonical).unwrap().class, ConeClass::Interior);
        let bad = WeightVector::from_integers([0, 1, 1, 0]);
        let report = cone_position(&anti, &bad).unwrap();
        assert_eq!(report.class, ConeClass::Outside);
        assert_eq!(report.violated, vec![(Ideal::new(1), Ideal::new(2))]);
        let chain = RelativeStructure::order_case(Poset::chain(&["a", "b"]).unwrap());
        assert_eq!(canonical_interior_weight(&chain), WeightVector::from_integers([4, 1, 0]));
    }

    #[test]
    fn extreme_subdivisions() {
        for s in [
            RelativeStructure::order_case(grid(2, 3)),
            RelativeStructure::chain_case(grid(2, 3)),
        ] {
            let lattice = IdealLattice::enumerate(s.poset());
            let zero = subdivide(&s, &WeightVector::zeros(lattice.len())).unwrap();
            assert_eq!(zero.parts.len(), 1);
            assert_eq!(zero.parts[0].order, *s.poset());
            let fine = subdivide(&s, &canonical_interior_weight(&s)).unwrap();
            assert_eq!(fine.parts.len(), canonical_triangulation(&s).len());
            assert!(fine.parts.iter().all(|p| p.order.is_total()));
            assert!(zero.is_refined_by(&fine));
        }
    }

    #[test]
    fn outside_cone_is_rejected() {
        let anti = RelativeStructure::order_case(Poset::antichain(&["a", "b"]).unwrap());
        let bad = WeightVector::from_integers([0, 1, 1, 0]);
        assert!(matches!(subdivide(&anti, &bad), Err(Error::OutsideCone(v)) if v.len() == 1));
        assert!(matches!(
            subdivide(&anti, &WeightVector::zeros(3)),
            Err(Error::WeightLength { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn sampled_weights_are_in_cone_and_subdivide_soundly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = RelativeStructure::chain_case(grid(2, 3));
        let sub = Subdivider::new(&s);
        for _ in 0..20 {
            let w = sample_cone_weight(&s, &mut rng, 4);
            assert_ne!(cone_position(&s, &w).unwrap().class, ConeClass::Outside);
            let d = sub.subdivide(&w).unwrap();
            let total: usize = d.parts.iter().map(|p| p.simplices.len()).sum();
            assert_eq!(total, 5);
            for part in &d.parts {
                assert!(s.poset().is_weaker_than(&part.order));
            }
            let u = sample_cone_weight(&s, &mut rng, 4);
            let eps = refinement_epsilon(&s, &w).unwrap();
            let finer = sub.subdivide(&w.add_scaled(&u, &eps)).unwrap();
            assert!(d.is_refined_by(&finer));
        }
    }

    #[test]
    fn components_for_extreme_weights() {
        let s = RelativeStructure::chain_case(grid(2, 2));
        let n_ideals = IdealLattice::enumerate(s.poset()).len();
        let zero = zhu_components(&s, &WeightVector::zeros(n_ideals)).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].presentation, ideal_presentation(&s, PresentationKind::Relative).unwrap());
        assert!(zero[0].vanishing.is_empty());
        let fine = zhu_components(&s, &canonical_interior_weight(&s)).unwrap();
        assert_eq!(fine.len(), 2);
        for c in fine {
            assert!(c.presentation.generators.is_empty());
            assert_eq!(c.sublattice.len() + c.vanishing.len(), n_ideals);
            assert_eq!(c.sublattice.len(), 5);
        }
    }

    #[test]
    fn standard_monomials_match_ehrhart() {
        let s = RelativeStructure::chain_case(grid(2, 3));
        let e = ehrhart_values(&s, 3);
        for m in 0..=3 {
            assert_eq!(standard_monomial_count(&s, m), e[m] as u128);
        }
        let anti = RelativeStructure::order_case(Poset::antichain(&["a", "b"]).unwrap());
        assert_eq!(standard_monomial_count(&anti, 1), 4);
        assert_eq!(standard_monomial_count(&anti, 2), 9);
    }
}
