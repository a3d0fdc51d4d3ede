//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use posetdegen::exact::{self, Point};
use posetdegen::lattice::{has_full_height, is_closed_under_star};
use posetdegen::marked::{
    fundamental_core, fundamental_embedding, fundamental_mrpp, mcop_build, mcop_inequality_points,
    mcop_recognize, mrpp_points,
};
use posetdegen::polytope::LatticePolytope;
use posetdegen::{
    build_flag_poset, canonical_interior_weight, canonical_triangulation, check_normality,
    ehrhart_values, flag_degeneration, flag_polytope, lattice_points, sample_cone_weight,
    standard_monomial_count, standardize, Error, FlagMode, Ideal, IdealLattice, Marking,
    NormalityReport, PlueckerMode, Poset, RelativeStructure, Subdivider, WeightVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Corpus {
    small: Vec<RelativeStructure>,
    random: Vec<RelativeStructure>,
}

fn ehrhart_equivalence(c: &Corpus) -> Outcome {
    let mut oracle: HashMap<Poset, Vec<usize>> = HashMap::new();
    for (set, m_max) in [(&c.small, 4usize), (&c.random, 3)] {
        for s in set {
            let p = s.poset();
            let expected = oracle
                .entry(p.clone())
                .or_insert_with(|| (0..=m_max).map(|m| order_polytope_count(p, m as i64)).collect())
                .clone();
            let r = ehrhart_values(s, m_max);
            let o = ehrhart_values(&RelativeStructure::order_case(p.clone()), m_max);
            let ch = ehrhart_values(&RelativeStructure::chain_case(p.clone()), m_max);
            ensure(r == expected && o == expected && ch == expected, || {
                format!("{:?}: R {r:?} O {o:?} C {ch:?} oracle {expected:?}", p.relation_pairs())
            })?;
        }
    }
    Ok(format!("{} + {} structures", c.small.len(), c.random.len()))
}

fn normality(c: &Corpus) -> Outcome {
    for s in c.small.iter().chain(&c.random) {
        match check_normality(s, 3) {
            NormalityReport::Certified { k_max: 3 } => {}
            other => return Err(format!("{:?}: {other:?}", s.poset().relation_pairs())),
        }
    }
    Ok(format!("k_max = 3 on {} structures", c.small.len() + c.random.len()))
}

fn grid(rows: usize, cols: usize) -> Poset {
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
    Poset::from_pairs(labels(rows * cols), pairs).unwrap()
}

fn triangulation_count(c: &Corpus) -> Outcome {
    let mut brute: HashMap<Poset, usize> = HashMap::new();
    for s in c.small.iter().chain(&c.random) {
        let p = s.poset();
        let want = *brute.entry(p.clone()).or_insert_with(|| brute_linear_extensions(p));
        let tri = canonical_triangulation(s);
        ensure(tri.len() == want && p.linear_extensions().len() == want, || {
            format!("{:?}: {} simplices, {want} extensions", p.relation_pairs(), tri.len())
        })?;
        ensure(tri.iter().all(|t| t.is_unimodular()), || "non-unimodular simplex".into())?;
    }
    for (rows, cols, want) in [(2, 2, 2), (2, 3, 5)] {
        let g = grid(rows, cols);
        let got = canonical_triangulation(&RelativeStructure::chain_case(g.clone())).len();
        ensure(got == want && brute_linear_extensions(&g) == want, || {
            format!("{rows}x{cols} grid: {got} simplices")
        })?;
    }
    Ok("grids 2x2 -> 2, 2x3 -> 5".into())
}

fn hilbert_equality(c: &Corpus) -> Outcome {
    for s in c.small.iter().chain(&c.random) {
        let e = ehrhart_values(s, 3);
        for m in 0..=3 {
            let h = standard_monomial_count(s, m);
            ensure(h == e[m] as u128, || {
                format!("{:?} m={m}: {h} vs {}", s.poset().relation_pairs(), e[m])
            })?;
        }
    }
    Ok("m <= 3".into())
}

/// Longest chain in `family` ordered by inclusion, counted in ideals.
fn longest_chain(family: &[Ideal]) -> usize {
    let mut sorted = family.to_vec();
    sorted.sort_by_key(|j| j.len());
    let mut best = vec![1usize; sorted.len()];
    for i in 0..sorted.len() {
        for k in 0..i {
            if sorted[k].len() < sorted[i].len() && sorted[k].is_subset(sorted[i]) {
                best[i] = best[i].max(best[k] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn check_part_family(s: &RelativeStructure, family: &[Ideal]) -> Result<(), String> {
    let set: BTreeSet<Ideal> = family.iter().copied().collect();
    for &a in family {
        for &b in family {
            let star = Ideal::new(s.weak().down_closure(
                a.bits() & b.bits() & (s.weak().max_of(a.bits()) | s.weak().max_of(b.bits())),
            ));
            ensure(
                set.contains(&a.union(b)) && set.contains(&a.intersection(b)) && set.contains(&star),
                || format!("part not closed at {a} {b}"),
            )?;
        }
    }
    ensure(longest_chain(family) == s.len() + 1, || "part height deficient".into())?;
    ensure(
        is_closed_under_star(family, s.weak()) && has_full_height(family, s.len()),
        || "library closure check disagrees".into(),
    )
}

fn subdivision_soundness(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ab0_d1f5);
    let mut total = 0usize;
    let runs = c.small.iter().map(|s| (s, 100)).chain(c.random.iter().map(|s| (s, 10)));
    for (s, samples) in runs {
        let sub = Subdivider::new(s);
        let count = sub.linearizations().len();
        let zero = sub.subdivide(&WeightVector::zeros(sub.lattice().len())).map_err(|e| e.to_string())?;
        ensure(zero.parts.len() == 1, || "zero weight gives several parts".into())?;
        let canon = sub.subdivide(&canonical_interior_weight(s)).map_err(|e| e.to_string())?;
        ensure(canon.parts.len() == count, || "canonical weight is not the triangulation".into())?;
        for _ in 0..samples {
            let w = sample_cone_weight(s, &mut rng, 3);
            let d = sub.subdivide(&w).map_err(|e| e.to_string())?;
            let mut simplices = 0;
            for part in &d.parts {
                ensure(s.poset().is_weaker_than(&part.order), || "order not stronger".into())?;
                check_part_family(s, &part.sublattice)?;
                let recovered = IdealLattice::enumerate(&part.order);
                ensure(recovered.ideals() == part.sublattice.as_slice(), || {
                    "order does not recover the part".into()
                })?;
                simplices += part.simplices.len();
            }
            ensure(simplices == count, || format!("{simplices} simplices, expected {count}"))?;
            ensure(canon.parts.len() >= d.parts.len(), || "finer than triangulation".into())?;
            total += 1;
        }
    }
    Ok(format!("{total} sampled weights, 100 per structure on n <= 5, 10 on n = 8"))
}

fn notmcop() -> Outcome {
    let start = Instant::now();
    let data = build_flag_poset(5, &[0, 2, 5]).map_err(|e| e.to_string())?;
    let s = data.structure(FlagMode::Fflv).map_err(|e| e.to_string())?;
    let p = s.poset();
    let lattice = IdealLattice::enumerate(p);
    let j1 = ["p1_2", "p1_3", "p1_4", "p1_5"]
        .iter()
        .fold(0u64, |m, l| m | 1 << p.index_of(l).unwrap());
    let std = standardize(&s, &data.lambda).map_err(|e| e.to_string())?;
    ensure(std.is_identity() && std.sublattice == lattice, || "flag structure not standard".into())?;
    let weight = |v: i64| {
        WeightVector::from_integers(lattice.ideals().iter().map(|j| if j.bits() == j1 { v } else { 0 }))
    };
    let deg = flag_degeneration(&data, FlagMode::Fflv, &weight(-1)).map_err(|e| e.to_string())?;
    ensure(deg.parts.len() == 2, || format!("{} parts", deg.parts.len()))?;
    let dim = deg.subdivision.dimension.unwrap();
    let qi = deg.parts.iter().position(|r| r.vertex_count == 9).ok_or("no 9-vertex part")?;
    let q = &deg.parts[qi];
    let other = &deg.parts[1 - qi];
    ensure(other.vertex_count == dim + 1, || "second part is not a simplex".into())?;
    ensure(
        q.added_covers == vec![("p2_3".to_string(), "p1_5".to_string())],
        || format!("added covers {:?}", q.added_covers),
    )?;
    let part = &deg.subdivision.parts[qi];
    let strong = RelativeStructure::new(part.order.clone(), s.weak().clone(), Some(data.lambda.clone()))
        .map_err(|e| e.to_string())?;
    let target = LatticePolytope {
        coordinates: p.labels().to_vec(),
        vertices: q.vertices.clone(),
        vertex_labels: vec![],
        lattice_points: part.lattice_points.clone(),
    };
    let found = mcop_recognize(&strong, &data.lambda, &target).map_err(|e| e.to_string())?;
    ensure(found.is_none(), || format!("recognized as MCOP {found:?}"))?;
    let elapsed = start.elapsed();
    ensure(
        matches!(flag_degeneration(&data, FlagMode::Fflv, &weight(1)), Err(Error::OutsideCone(_))),
        || "w_J1 = +1 not reported outside the cone".into(),
    )?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("2 parts, 9-vertex part adds p2_3 < p1_5, not an MCOP, {elapsed:?}"))
}

/// Dominant markings with values in `0..=hi` on `marked`.
fn dominant_markings(p: &Poset, marked: &[usize], hi: i64) -> Vec<Marking> {
    let mut out = Vec::new();
    let mut vals = vec![0i64; marked.len()];
    loop {
        let m = Marking::new(p, marked.iter().copied().zip(vals.iter().copied()));
        if m.dominance_violation(p).is_none() {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == vals.len() {
                return out;
            }
            if vals[i] < hi {
                vals[i] += 1;
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
}

fn mcop_equals_mrpp() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=5 {
        for p in unlabeled_posets(n) {
            let ext = p.minimal_elements() | p.maximal_elements();
            let free_marks = p.full() & !ext;
            for extra in 0u64..=free_marks {
                if extra & !free_marks != 0 {
                    continue;
                }
                let marked_mask = ext | extra;
                let marked: Vec<usize> = (0..n).filter(|&q| marked_mask & 1 << q != 0).collect();
                let unmarked: Vec<usize> = (0..n).filter(|&q| marked_mask & 1 << q == 0).collect();
                for lambda in dominant_markings(&p, &marked, 2) {
                    for sub in 0u64..(1 << unmarked.len()) {
                        let c = unmarked
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| sub & 1 << i != 0)
                            .fold(0u64, |m, (_, &q)| m | 1 << q);
                        let o = p.full() & !marked_mask & !c;
                        let built = mcop_build(&p, &lambda, c, o)
                            .map_err(|e| format!("{:?} C={c:b}: {e}", p.relation_pairs()))?;
                        let ineq = mcop_inequality_points(&p, &lambda, c, o).map_err(|e| e.to_string())?;
                        let mut a = exact::extreme_points(&ineq);
                        let mut b = built.vertices.clone();
                        a.sort();
                        b.sort();
                        b.dedup();
                        ensure(a == b, || format!("{:?} C={c:b}: vertices differ", p.relation_pairs()))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (poset, marking, partition) triples"))
}

fn weyl_dimension(lambda: &[i64]) -> u128 {
    let n = lambda.len();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            num *= (lambda[i] - lambda[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

fn gt_patterns(row: &[i64]) -> u128 {
    if row.len() <= 1 {
        return 1;
    }
    fn below(row: &[i64], i: usize, acc: &mut Vec<i64>) -> u128 {
        if i + 1 == row.len() {
            return gt_patterns(acc);
        }
        let mut total = 0;
        for v in row[i + 1]..=row[i] {
            acc.push(v);
            total += below(row, i + 1, acc);
            acc.pop();
        }
        total
    }
    below(row, 0, &mut Vec::new())
}

fn all_dims(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut d = vec![0];
            d.extend((1..n).filter(|&k| mask & 1 << (k - 1) != 0));
            d.push(n);
            d
        })
        .collect()
}

fn flag_dimensions() -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        for dims in all_dims(n) {
            let l = dims.len() - 1;
            let lambda: Vec<i64> = (1..=n)
                .map(|j| dims[1..l].iter().filter(|&&d| d >= j).count() as i64)
                .collect();
            let weyl = weyl_dimension(&lambda);
            ensure(weyl == gt_patterns(&lambda), || format!("oracles disagree for {lambda:?}"))?;
            let data = build_flag_poset(n, &dims).map_err(|e| e.to_string())?;
            for mode in [FlagMode::Gt, FlagMode::Fflv] {
                let count = flag_polytope(&data, mode).map_err(|e| e.to_string())?.lattice_points.len();
                ensure(count as u128 == weyl, || {
                    format!("n={n} dims={dims:?} {mode:?}: {count} points, dimension {weyl}")
                })?;
                cases += 1;
            }
        }
    }
    let gr24 = build_flag_poset(4, &[0, 2, 4]).unwrap();
    let full3 = build_flag_poset(3, &[0, 1, 2, 3]).unwrap();
    for mode in [FlagMode::Gt, FlagMode::Fflv] {
        ensure(flag_polytope(&gr24, mode).unwrap().lattice_points.len() == 6, || "Gr(2,4)".into())?;
        ensure(flag_polytope(&full3, mode).unwrap().lattice_points.len() == 8, || "gl_3".into())?;
    }
    Ok(format!("{cases} (dims, mode) cases; Gr(2,4) -> 6, gl_3 -> 8"))
}

/// A random marked structure on `n` elements with a dominant marking.
fn random_marked(n: usize, rng: &mut ChaCha8Rng) -> RelativeStructure {
    loop {
        let p = random_poset(n, 0.35, rng);
        let ext = p.minimal_elements() | p.maximal_elements();
        let marked = (0..n).fold(ext, |m, q| if rng.gen_bool(0.3) { m | 1 << q } else { m });
        let pairs: Vec<(usize, usize)> = p
            .relation_pairs()
            .into_iter()
            .filter(|&(a, _)| marked & 1 << a == 0 && rng.gen_bool(0.6))
            .collect();
        let weak = p.with_pairs(pairs).unwrap();
        let order = p.linear_extensions().into_iter().next().unwrap();
        let mut lambda: HashMap<usize, i64> = HashMap::new();
        for &q in order.iter().rev().filter(|&&q| marked & 1 << q != 0) {
            let floor = lambda
                .iter()
                .filter(|(&r, _)| p.less(q, r))
                .map(|(_, &v)| v)
                .max()
                .unwrap_or(0);
            lambda.insert(q, floor + rng.gen_range(0..=1));
        }
        let marking = Marking::new(&p, lambda);
        if let Ok(s) = RelativeStructure::new(p, weak, Some(marking)) {
            return s;
        }
    }
}

fn standardization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57a4_da2d);
    let mut collapsed = 0;
    let structures: Vec<RelativeStructure> = (0..20).map(|_| random_marked(6, &mut rng)).collect();
    for s in &structures {
        let lambda = s.marking().unwrap();
        let std = standardize(s, lambda).map_err(|e| e.to_string())?;
        if !std.is_identity() {
            collapsed += 1;
        }
        ensure(std.quotient.len() == std.theta.len(), || "theta length".into())?;
        for m in 1..=3 {
            let src = mrpp_points(s, lambda, m).map_err(|e| e.to_string())?;
            let dst = mrpp_points(&std.quotient, &std.mu, m).map_err(|e| e.to_string())?;
            let image: BTreeSet<Point> = src.iter().map(|x| std.apply_theta(x)).collect();
            let target: BTreeSet<Point> = dst.iter().cloned().collect();
            ensure(image.len() == src.len() && image == target, || {
                format!("theta not a bijection at m={m}: {} -> {} of {}", src.len(), image.len(), dst.len())
            })?;
        }
    }
    // Relative poset polytopes embed as fundamental MRPPs ...
    let small = small_corpus();
    for s in small.iter().step_by(7) {
        let (outer, k) = fundamental_embedding(s).map_err(|e| e.to_string())?;
        let omega = Marking::fundamental(outer.poset(), outer.marked_set(), k);
        for m in 1..=3 {
            let pts = mrpp_points(&outer, &omega, m).map_err(|e| e.to_string())?;
            let projected: BTreeSet<Point> = pts.iter().map(|x| x[..s.len()].to_vec()).collect();
            let want: BTreeSet<Point> = lattice_points(s, m).into_iter().collect();
            ensure(projected.len() == pts.len() && projected == want, || {
                format!("embedding of {:?} differs at m={m}", s.poset().relation_pairs())
            })?;
        }
    }
    // ... and fundamental MRPPs project onto relative poset polytopes.
    let mut fundamentals = 0;
    for s in &structures {
        let p = s.poset();
        let marked = s.marked_set();
        for k in 0..=marked {
            if k & !marked != 0 || (0..p.len()).any(|q| k & 1 << q != 0 && p.below(q) & marked & !k != 0) {
                continue;
            }
            let core = fundamental_core(s, k);
            let (strong, keep) = p.restrict(core);
            let (weak, _) = s.weak().restrict(core);
            let inner = RelativeStructure::new(strong, weak, None).map_err(|e| e.to_string())?;
            let fund = fundamental_mrpp(s, k).map_err(|e| e.to_string())?;
            let projected: BTreeSet<Point> = fund
                .lattice_points
                .iter()
                .map(|x| keep.iter().map(|&q| x[q]).collect())
                .collect();
            let want: BTreeSet<Point> = lattice_points(&inner, 1).into_iter().collect();
            ensure(projected.len() == fund.lattice_points.len() && projected == want, || {
                format!("fundamental MRPP K={k:b} does not project onto R(P_0)")
            })?;
            fundamentals += 1;
        }
    }
    Ok(format!(
        "20 structures ({collapsed} non-trivial), m <= 3; {} embeddings, {fundamentals} projections",
        small.len().div_ceil(7)
    ))
}

fn pluecker_round_trips() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for dims in all_dims(n) {
            let data = build_flag_poset(n, &dims).map_err(|e| e.to_string())?;
            let mut modes = vec![PlueckerMode::Gt, PlueckerMode::Fflv];
            if data.grassmannian_k().is_some() {
                modes.extend([PlueckerMode::O, PlueckerMode::C]);
            }
            for mode in modes {
                let indices = data.pluecker_indices(mode).map_err(|e| e.to_string())?;
                let mut images = BTreeSet::new();
                for ix in &indices {
                    let j = data.pluecker_to_ideal(mode, ix).map_err(|e| e.to_string())?;
                    let back = data.ideal_to_pluecker(mode, j).map_err(|e| e.to_string())?;
                    ensure(&back == ix, || format!("n={n} {dims:?} {mode:?}: {ix:?} -> {back:?}"))?;
                    images.insert(j);
                    checked += 1;
                }
                ensure(images.len() == indices.len(), || "map not injective".into())?;
            }
        }
    }
    // Figure examples.
    let gr37 = build_flag_poset(7, &[0, 3, 7]).unwrap();
    let pk = posetdegen::flag::grassmann_poset(3, 7);
    let mask = |g: &posetdegen::flag::GridPoset, cells: &[(usize, usize)]| {
        Ideal::new(cells.iter().fold(0, |m, &(i, j)| m | 1 << g.index(i, j).unwrap()))
    };
    let o = gr37.pluecker_to_ideal(PlueckerMode::O, &[2, 4, 7]).unwrap();
    ensure(o == mask(&pk, &[(1, 4), (1, 5), (1, 6), (1, 7), (2, 4), (2, 5), (3, 4)]), || "psi_O figure".into())?;
    let c = gr37.pluecker_to_ideal(PlueckerMode::C, &[7, 6, 3]).unwrap();
    ensure(c == mask(&pk, &[(1, 4), (1, 5), (1, 6), (1, 7), (2, 4), (2, 5), (2, 6)]), || "psi_C figure".into())?;
    let f = build_flag_poset(5, &[0, 2, 4, 5]).unwrap();
    let gt = f.pluecker_to_ideal(PlueckerMode::Gt, &[3, 5]).unwrap();
    ensure(gt == mask(&f.grid, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]), || "psi_GT figure".into())?;
    let fflv = f.pluecker_to_ideal(PlueckerMode::Fflv, &[1, 5, 3, 4]).unwrap();
    ensure(
        fflv == mask(&f.grid, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)]),
        || "psi_FFLV figure".into(),
    )?;
    Ok(format!("{checked} indices for n <= 6 plus the figure examples"))
}

fn main() {
    let start = Instant::now();
    let corpus = Corpus {
        small: small_corpus(),
        random: random_structures(),
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Ehrhart equivalence of R, O and C", Box::new(|| ehrhart_equivalence(&corpus))),
        ("normality up to k = 3", Box::new(|| normality(&corpus))),
        ("triangulation size equals linear extensions", Box::new(|| triangulation_count(&corpus))),
        ("Hilbert function equals Ehrhart function", Box::new(|| hilbert_equality(&corpus))),
        ("subdivision soundness for cone weights", Box::new(|| subdivision_soundness(&corpus))),
        ("two-part Gr(2,5) FFLV subdivision", Box::new(notmcop)),
        ("marked chain-order polytopes are MRPPs", Box::new(mcop_equals_mrpp)),
        ("GT and FFLV lattice points match Weyl dimensions", Box::new(flag_dimensions)),
        ("standardization and fundamental MRPPs", Box::new(standardization)),
        ("Pluecker maps invert", Box::new(pluecker_round_trips)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2} [PRIMARY] {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} [PRIMARY] {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
