//! Shared test corpus and brute-force oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use posetdegen::{Poset, RelativeStructure};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Relation matrix as `n*n` bits under the permutation `perm`.
fn encode(rows: &[u64], perm: &[usize]) -> u64 {
    let n = rows.len();
    let mut code = 0u64;
    for p in 0..n {
        for q in 0..n {
            if rows[p] & (1 << q) != 0 {
                code |= 1 << (perm[p] * n + perm[q]);
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: u64, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if used & (1 << i) == 0 {
                prefix.push(i);
                go(prefix, used | (1 << i), n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

/// One representative of every isomorphism class of posets on `n` elements.
pub fn unlabeled_posets(n: usize) -> Vec<Poset> {
    // Naturally labeled posets: element k sits above a down-set of 0..k.
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for below in &layer {
            for mask in 0u64..(1 << k) {
                let closed = (0..k).all(|q| mask & (1 << q) == 0 || below[q] & !mask == 0);
                if closed {
                    let mut rows = below.clone();
                    rows.push(mask);
                    next.push(rows);
                }
            }
        }
        layer = next;
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for below in layer {
        let mut above = vec![0u64; n];
        for (q, &row) in below.iter().enumerate() {
            for p in 0..n {
                if row & (1 << p) != 0 {
                    above[p] |= 1 << q;
                }
            }
        }
        let canon = perms.iter().map(|perm| encode(&above, perm)).min().unwrap();
        if seen.insert(canon) {
            let mut pairs = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if above[p] & (1 << q) != 0 {
                        pairs.push((p, q));
                    }
                }
            }
            out.push(Poset::from_pairs(labels(n), pairs).unwrap());
        }
    }
    out
}

/// Every `<'` weaker than `<` that yields a valid relative structure.
pub fn weak_orders(poset: &Poset) -> Vec<RelativeStructure> {
    let pairs = poset.relation_pairs();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for subset in 0u64..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| subset & (1 << i) != 0)
            .map(|(_, &pq)| pq)
            .collect();
        let weak = poset.with_pairs(chosen.iter().copied()).unwrap();
        if weak.relation_count() != chosen.len() || !seen.insert(subset) {
            continue;
        }
        if let Ok(s) = RelativeStructure::new(poset.clone(), weak, None) {
            out.push(s);
        }
    }
    out
}

/// All posets on 1..=5 elements with all valid weak orders.
pub fn small_corpus() -> Vec<RelativeStructure> {
    (1..=5)
        .flat_map(unlabeled_posets)
        .flat_map(|p| weak_orders(&p))
        .collect()
}

pub fn random_poset(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::from_pairs(labels(n), pairs).unwrap()
}

/// Twenty seeded 8-element posets.
pub fn random_posets() -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    (0..20).map(|_| random_poset(8, 0.3, &mut rng)).collect()
}

/// For each poset: the order and chain cases plus up to three random valid weak orders.
pub fn random_structures() -> Vec<RelativeStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1008);
    let mut out = Vec::new();
    for p in random_posets() {
        out.push(RelativeStructure::order_case(p.clone()));
        out.push(RelativeStructure::chain_case(p.clone()));
        let covers = p.covers();
        let mut found = 0;
        for _ in 0..40 {
            if found == 3 {
                break;
            }
            let chosen: Vec<(usize, usize)> =
                covers.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let weak = p.with_pairs(chosen).unwrap();
            if let Ok(s) = RelativeStructure::new(p.clone(), weak, None) {
                if !out.contains(&s) {
                    out.push(s);
                    found += 1;
                }
            }
        }
    }
    out
}

/// Linear extensions by testing every permutation.
pub fn brute_linear_extensions(p: &Poset) -> usize {
    permutations(p.len())
        .into_iter()
        .filter(|perm| {
            let mut pos = vec![0; perm.len()];
            for (i, &e) in perm.iter().enumerate() {
                pos[e] = i;
            }
            p.relation_pairs().iter().all(|&(a, b)| pos[a] < pos[b])
        })
        .count()
}

/// Maps `f: P -> {0..m}` with `f(p) >= f(q)` whenever `p < q`.
pub fn order_polytope_count(p: &Poset, m: i64) -> usize {
    let n = p.len();
    let rel = p.relation_pairs();
    let mut f = vec![0i64; n];
    let mut count = 0;
    loop {
        if rel.iter().all(|&(a, b)| f[a] >= f[b]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if f[i] < m {
                f[i] += 1;
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}
