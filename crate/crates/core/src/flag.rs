//! Flag posets `P_d`, Grassmannian posets `P_k`, Plücker index maps and the
//! Gelfand-Tsetlin / FFLV structures on them.

use std::collections::BTreeSet;

use crate::degeneration::WeightVector;
use crate::error::{Error, Result};
use crate::exact::{self, Point};
use crate::lattice::{Ideal, IdealLattice};
use crate::marked::{build_mrpp, mrpp_subdivide, Marking, MrppSubdivision};
use crate::polytope::LatticePolytope;
use crate::poset::{bit, iter_bits, Poset, RelativeStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlagMode {
    Gt,
    Fflv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlueckerMode {
    O,
    C,
    Gt,
    Fflv,
}

impl PlueckerMode {
    pub fn name(self) -> &'static str {
        match self {
            PlueckerMode::O => "O",
            PlueckerMode::C => "C",
            PlueckerMode::Gt => "GT",
            PlueckerMode::Fflv => "FFLV",
        }
    }
}

impl From<FlagMode> for PlueckerMode {
    fn from(mode: FlagMode) -> Self {
        match mode {
            FlagMode::Gt => PlueckerMode::Gt,
            FlagMode::Fflv => PlueckerMode::Fflv,
        }
    }
}

pub fn element_label(i: usize, j: usize) -> String {
    format!("p{i}_{j}")
}

/// A poset on elements `p_{i,j}` ordered componentwise, indexed by sorted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoset {
    pub poset: Poset,
    pub coords: Vec<(usize, usize)>,
}

impl GridPoset {
    fn new(coords: BTreeSet<(usize, usize)>) -> Self {
        let coords: Vec<(usize, usize)> = coords.into_iter().collect();
        let labels = coords.iter().map(|&(i, j)| element_label(i, j)).collect();
        let mut pairs = Vec::new();
        for (a, &(i1, j1)) in coords.iter().enumerate() {
            for (b, &(i2, j2)) in coords.iter().enumerate() {
                if a != b && i1 <= i2 && j1 <= j2 {
                    pairs.push((a, b));
                }
            }
        }
        let poset = Poset::from_pairs(labels, pairs).expect("componentwise order is acyclic");
        GridPoset { poset, coords }
    }

    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        self.coords.binary_search(&(i, j)).ok()
    }

    fn mask<'a>(&self, coords: impl IntoIterator<Item = &'a (usize, usize)>) -> u64 {
        coords
            .into_iter()
            .filter_map(|&(i, j)| self.index(i, j))
            .fold(0, |m, p| m | bit(p))
    }
}

fn grassmann_coords(k: usize, n: usize) -> BTreeSet<(usize, usize)> {
    (1..=k)
        .flat_map(|i| (k + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// `(P_k, <)` with `p_{i,j}` for `1 ≤ i ≤ k < j ≤ n`.
pub fn grassmann_poset(k: usize, n: usize) -> GridPoset {
    GridPoset::new(grassmann_coords(k, n))
}

/// The flag poset `P_d` together with its marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagData {
    pub n: usize,
    pub dims: Vec<usize>,
    pub grid: GridPoset,
    /// `p̃_i` for `i = 1..l`, as element indices.
    pub marked: Vec<usize>,
    pub lambda: Marking,
}

pub fn build_flag_poset(n: usize, dims: &[usize]) -> Result<FlagData> {
    if n == 0 {
        return Err(Error::InvalidDims("n must be positive".into()));
    }
    if dims.first() != Some(&0) || dims.last() != Some(&n) {
        return Err(Error::InvalidDims(format!("{dims:?} must start at 0 and end at {n}")));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidDims(format!("{dims:?} is not strictly increasing")));
    }
    let l = dims.len() - 1;
    let mut coords: BTreeSet<(usize, usize)> = (1..=l).map(|i| (dims[i - 1] + 1, dims[i])).collect();
    for &k in &dims[1..l] {
        coords.extend(grassmann_coords(k, n));
    }
    if coords.len() > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooManyElements {
            size: coords.len(),
            max: crate::poset::MAX_ELEMENTS,
        });
    }
    let grid = GridPoset::new(coords);
    let marked: Vec<usize> = (1..=l)
        .map(|i| grid.index(dims[i - 1] + 1, dims[i]).unwrap())
        .collect();
    let lambda = Marking::new(
        &grid.poset,
        marked.iter().enumerate().map(|(i, &p)| (p, (l - i) as i64)),
    );
    Ok(FlagData {
        n,
        dims: dims.to_vec(),
        grid,
        marked,
        lambda,
    })
}

impl FlagData {
    pub fn poset(&self) -> &Poset {
        &self.grid.poset
    }

    pub fn marked_set(&self) -> u64 {
        self.marked.iter().fold(0, |m, &p| m | bit(p))
    }

    /// `l`, the number of marked elements.
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    /// `k` for Grassmannian dims `{0, k, n}`.
    pub fn grassmannian_k(&self) -> Option<usize> {
        (self.dims.len() == 3).then(|| self.dims[1])
    }

    /// The weak order of the chosen structure.
    pub fn weak_order(&self, mode: FlagMode) -> Poset {
        let poset = self.poset();
        match mode {
            FlagMode::Gt => poset.trivial_like(),
            FlagMode::Fflv => {
                let marked = self.marked_set();
                let pairs = poset
                    .relation_pairs()
                    .into_iter()
                    .filter(|&(p, _)| marked & bit(p) == 0);
                poset.with_pairs(pairs).expect("suborder")
            }
        }
    }

    pub fn structure(&self, mode: FlagMode) -> Result<RelativeStructure> {
        RelativeStructure::new(
            self.poset().clone(),
            self.weak_order(mode),
            Some(self.lambda.clone()),
        )
    }

    /// The `P_k` poset of a Grassmannian, used by the `O` and `C` maps.
    pub fn grassmann(&self, mode: PlueckerMode) -> Result<GridPoset> {
        let k = self.grassmannian_k().ok_or_else(|| Error::ModeDimsMismatch {
            mode: mode.name().into(),
        })?;
        Ok(grassmann_poset(k, self.n))
    }

    fn check_index(&self, index: &[usize], sizes: &[usize]) -> Result<()> {
        if !sizes.contains(&index.len()) {
            return Err(Error::InvalidIndex(format!(
                "{index:?} has length {}, expected one of {sizes:?}",
                index.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &a in index {
            if a == 0 || a > self.n || !seen.insert(a) {
                return Err(Error::InvalidIndex(format!(
                    "{index:?} must have distinct entries in 1..={}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// `ψ(X_index)` as an ideal of `P_k` (modes `O`, `C`) or of `P_d` (modes `GT`, `FFLV`).
    pub fn pluecker_to_ideal(&self, mode: PlueckerMode, index: &[usize]) -> Result<Ideal> {
        match mode {
            PlueckerMode::O | PlueckerMode::C => {
                let grid = self.grassmann(mode)?;
                let k = self.grassmannian_k().unwrap();
                self.check_index(index, &[k])?;
                let coords = if mode == PlueckerMode::O {
                    if index.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::InvalidIndex(format!("{index:?} is not increasing")));
                    }
                    o_coords(index, k)
                } else {
                    c_coords(index, k)
                };
                Ok(Ideal::new(grid.poset.down_closure(grid.mask(&coords))))
            }
            PlueckerMode::Gt | PlueckerMode::Fflv => {
                self.check_index(index, &self.dims)?;
                let k = index.len();
                let coords = if mode == PlueckerMode::Gt {
                    if index.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::InvalidIndex(format!("{index:?} is not increasing")));
                    }
                    let mut coords = o_coords(index, k);
                    coords.extend(self.grid.coords.iter().filter(|&&(i, j)| i <= k && j <= k));
                    coords
                } else {
                    let mut coords = c_coords(index, k);
                    let j = self.dims.iter().position(|&d| d == k).unwrap();
                    coords.extend(self.marked[..j].iter().map(|&p| self.grid.coords[p]));
                    coords
                };
                Ok(Ideal::new(self.poset().down_closure(self.grid.mask(&coords))))
            }
        }
    }

    /// Inverse of [`FlagData::pluecker_to_ideal`]; the tuple is in the canonical order
    /// of the map (increasing for `O`/`GT`, reordered for `C`/`FFLV`).
    pub fn ideal_to_pluecker(&self, mode: PlueckerMode, ideal: Ideal) -> Result<Vec<usize>> {
        match mode {
            PlueckerMode::O | PlueckerMode::C => {
                let grid = self.grassmann(mode)?;
                let k = self.grassmannian_k().unwrap();
                if !grid.poset.is_ideal(ideal.bits()) || ideal.bits() & !grid.poset.full() != 0 {
                    return Err(Error::InvalidIndex("not an order ideal of P_k".into()));
                }
                Ok(self.grassmann_index(mode, &grid, ideal.bits(), k))
            }
            PlueckerMode::Gt | PlueckerMode::Fflv => {
                let poset = self.poset();
                if !poset.is_ideal(ideal.bits()) || ideal.bits() & !poset.full() != 0 {
                    return Err(Error::InvalidIndex("not an order ideal of P_d".into()));
                }
                let j = self
                    .marked
                    .iter()
                    .take_while(|&&p| ideal.contains(p))
                    .count();
                let k = self.dims[j];
                let grid = grassmann_poset(k, self.n);
                let inner = grid.mask(
                    &iter_bits(ideal.bits())
                        .map(|p| self.grid.coords[p])
                        .collect::<Vec<_>>(),
                );
                let local = if mode == PlueckerMode::Gt {
                    PlueckerMode::O
                } else {
                    PlueckerMode::C
                };
                Ok(self.grassmann_index(local, &grid, inner, k))
            }
        }
    }

    fn grassmann_index(&self, mode: PlueckerMode, grid: &GridPoset, mask: u64, k: usize) -> Vec<usize> {
        if mode == PlueckerMode::O {
            let mut a = vec![0; k];
            for i in 1..=k {
                let c = iter_bits(mask)
                    .map(|p| grid.coords[p])
                    .filter(|&(r, _)| r == i)
                    .map(|(_, j)| j)
                    .max()
                    .unwrap_or(k);
                a[k - i] = c + 1 - i;
            }
            a
        } else {
            let mut alpha: Vec<usize> = (1..=k).collect();
            for p in iter_bits(grid.poset.max_of(mask)) {
                let (i, j) = grid.coords[p];
                alpha[i - 1] = j;
            }
            alpha
        }
    }

    /// All Plücker indices of the mode, in canonical form, sorted.
    pub fn pluecker_indices(&self, mode: PlueckerMode) -> Result<Vec<Vec<usize>>> {
        let sizes: Vec<usize> = match mode {
            PlueckerMode::O | PlueckerMode::C => {
                self.grassmann(mode)?;
                vec![self.dims[1]]
            }
            _ => self.dims.clone(),
        };
        let mut out = Vec::new();
        for k in sizes {
            for subset in k_subsets(self.n, k) {
                let index = match mode {
                    PlueckerMode::C | PlueckerMode::Fflv => canonical_c_order(&subset, k),
                    _ => subset,
                };
                out.push(index);
            }
        }
        Ok(out)
    }

    /// Comma-joined Plücker name of an ideal of `P_d`.
    pub fn variable_name(&self, mode: FlagMode, ideal: Ideal) -> Result<String> {
        let index = self.ideal_to_pluecker(mode.into(), ideal)?;
        Ok(format!(
            "X_{}",
            index.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        ))
    }
}

/// Coordinates `{p_{i,j} : i ≤ k, j ≤ a_{k+1-i} + i - 1}` inside `P_k` (those with `j > k`).
fn o_coords(a: &[usize], k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=k {
        let bound = a[k - i] + i - 1;
        out.extend((k + 1..=bound).map(|j| (i, j)));
    }
    out
}

/// Values `≤ k` sit at their own position, the rest fill the other positions decreasingly.
pub fn canonical_c_order(values: &[usize], k: usize) -> Vec<usize> {
    let mut big: Vec<usize> = values.iter().copied().filter(|&v| v > k).collect();
    big.sort_unstable_by(|a, b| b.cmp(a));
    let small: BTreeSet<usize> = values.iter().copied().filter(|&v| v <= k).collect();
    let mut big = big.into_iter();
    (1..=k)
        .map(|i| if small.contains(&i) { i } else { big.next().unwrap() })
        .collect()
}

/// Generators `p_{i, α_i}` with `α_i > k` of the canonical ordering.
fn c_coords(values: &[usize], k: usize) -> Vec<(usize, usize)> {
    canonical_c_order(values, k)
        .into_iter()
        .enumerate()
        .filter(|&(_, a)| a > k)
        .map(|(i, a)| (i + 1, a))
        .collect()
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..=n {
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// GT (`<'` trivial) or FFLV polytope of the flag data.
pub fn flag_polytope(flag: &FlagData, mode: FlagMode) -> Result<LatticePolytope> {
    build_mrpp(&flag.structure(mode)?, &flag.lambda)
}

/// Per-part summary of a flag degeneration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPartReport {
    pub added_covers: Vec<(String, String)>,
    pub vertex_count: usize,
    pub lattice_point_count: usize,
    pub vanishing_variables: Vec<String>,
    pub vertices: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagDegeneration {
    pub subdivision: MrppSubdivision,
    pub parts: Vec<FlagPartReport>,
}

/// Subdivides the GT or FFLV polytope; `w` is indexed by positions in `J(P_d, <)`.
pub fn flag_degeneration(flag: &FlagData, mode: FlagMode, w: &WeightVector) -> Result<FlagDegeneration> {
    let s = flag.structure(mode)?;
    let subdivision = mrpp_subdivide(&s, &flag.lambda, w)?;
    let std = &subdivision.standardized;
    let lattice = IdealLattice::enumerate(s.poset());
    let mut parts = Vec::new();
    for part in &subdivision.parts {
        let source = &subdivision.unmarked.parts[part.source];
        let inside: BTreeSet<Ideal> = source
            .sublattice
            .iter()
            .map(|&m| std.lift_ideal(m))
            .collect();
        let vanishing_variables = lattice
            .ideals()
            .iter()
            .filter(|j| !inside.contains(j))
            .map(|&j| flag.variable_name(mode, j))
            .collect::<Result<Vec<_>>>()?;
        let quotient = std.quotient.poset();
        let added_covers = part
            .order
            .covers()
            .into_iter()
            .filter(|&(p, q)| !quotient.less(p, q))
            .map(|(p, q)| (quotient.label(p).to_string(), quotient.label(q).to_string()))
            .collect();
        let vertices = exact::extreme_points(&part.lattice_points);
        parts.push(FlagPartReport {
            added_covers,
            vertex_count: vertices.len(),
            lattice_point_count: part.lattice_points.len(),
            vanishing_variables,
            vertices,
        });
    }
    Ok(FlagDegeneration { subdivision, parts })
}
