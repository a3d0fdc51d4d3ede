//! Exact rational linear algebra: ranks, linear solves, integer determinants and a
//! Phase-I simplex for convex-hull membership.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer point in `Z^P`.
pub type Point = Vec<i64>;

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn to_rational(rows: &[Point]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
}

/// Reduces `m` to row echelon form in place and returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Point]) -> usize {
    let mut m = to_rational(rows);
    echelon(&mut m).len()
}

/// Dimension of the affine hull of `points` (`-1` is reported as `None` for no points).
pub fn affine_dimension(points: &[Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Point> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Point]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Whether `x` is a convex combination of `points`, by Phase-I simplex with Bland's rule.
pub fn in_convex_hull(x: &[i64], points: &[Point]) -> bool {
    if points.is_empty() {
        return false;
    }
    if points.iter().any(|p| p.as_slice() == x) {
        return true;
    }
    hull_phase_one_integer(x, points).unwrap_or_else(|| hull_phase_one_rational(x, points))
}

/// Fraction-free Phase-I simplex in `i128`; `None` on overflow.
///
/// Entries are kept as integers over the common denominator `den` (the previous pivot).
fn hull_phase_one_integer(x: &[i64], points: &[Point]) -> Option<bool> {
    let d = x.len();
    let k = points.len();
    let rows = d + 1;
    let width = k + rows + 1;
    let mut t: Vec<Vec<i128>> = Vec::with_capacity(rows + 1);
    for r in 0..rows {
        let mut row = vec![0i128; width];
        let rhs = if r < d { x[r] } else { 1 };
        let flip = if rhs < 0 { -1 } else { 1 };
        for (c, p) in points.iter().enumerate() {
            row[c] = i128::from(flip * if r < d { p[r] } else { 1 });
        }
        row[k + r] = 1;
        row[width - 1] = i128::from(flip * rhs);
        t.push(row);
    }
    let mut obj = vec![0i128; width];
    for row in &t {
        for c in 0..k {
            obj[c] = obj[c].checked_sub(row[c])?;
        }
        obj[width - 1] = obj[width - 1].checked_sub(row[width - 1])?;
    }
    t.push(obj);
    let mut den: i128 = 1;
    let mut basis: Vec<usize> = (k..k + rows).collect();
    while let Some(enter) = (0..k + rows).find(|&c| t[rows][c] < 0) {
        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if t[r][enter] > 0 {
                let better = match leave {
                    None => true,
                    Some(lr) => {
                        let lhs = t[r][width - 1].checked_mul(t[lr][enter])?;
                        let rhs = t[lr][width - 1].checked_mul(t[r][enter])?;
                        lhs < rhs || (lhs == rhs && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            break;
        };
        let pivot = t[lr][enter];
        let pivot_row = t[lr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == lr {
                continue;
            }
            let factor = row[enter];
            for (v, &p) in row.iter_mut().zip(&pivot_row) {
                *v = v.checked_mul(pivot)?.checked_sub(factor.checked_mul(p)?)? / den;
            }
        }
        den = pivot;
        basis[lr] = enter;
    }
    Some(t[rows][width - 1] == 0)
}

fn hull_phase_one_rational(x: &[i64], points: &[Point]) -> bool {
    let d = x.len();
    let k = points.len();
    let rows = d + 1;
    // Columns: k weights, then `rows` artificials, then the right-hand side.
    let width = k + rows + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows + 1);
    for r in 0..rows {
        let mut row = vec![BigRational::zero(); width];
        let rhs = if r < d { x[r] } else { 1 };
        let flip = if rhs < 0 { -1 } else { 1 };
        for (c, p) in points.iter().enumerate() {
            row[c] = rat(flip * if r < d { p[r] } else { 1 });
        }
        row[k + r] = BigRational::one();
        row[width - 1] = rat(flip * rhs);
        t.push(row);
    }
    // Objective row: minimize the sum of artificials, stored as reduced costs.
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for c in 0..k {
            obj[c] -= &row[c];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (k..k + rows).collect();
    loop {
        let obj = &t[rows];
        let Some(enter) = (0..k + rows).find(|&c| obj[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            break;
        };
        let inv = t[lr][enter].recip();
        for v in t[lr].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[lr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != lr && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        basis[lr] = enter;
    }
    t[rows][width - 1].is_zero()
}

/// Vertices of `conv(points)`, in input order (duplicates removed).
pub fn extreme_points(points: &[Point]) -> Vec<Point> {
    let mut unique: Vec<Point> = Vec::new();
    let mut seen: HashSet<&Point> = HashSet::new();
    for p in points {
        if seen.insert(p) {
            unique.push(p.clone());
        }
    }
    let n = unique.len();
    if n <= 2 {
        return unique;
    }
    let set: HashSet<&Point> = unique.iter().collect();
    let d = unique[0].len();
    let lo: Point = (0..d).map(|c| unique.iter().map(|p| p[c]).min().unwrap()).collect();
    let hi: Point = (0..d).map(|c| unique.iter().map(|p| p[c]).max().unwrap()).collect();
    #[derive(Clone, Copy, PartialEq)]
    enum Status {
        Unknown,
        Vertex,
        Interior,
    }
    let mut status = vec![Status::Unknown; n];

    // Unique maximizers of a linear functional are vertices.
    let mut functionals: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        functionals.push(e.clone());
        e[i] = -1;
        functionals.push(e);
    }
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..64 * d + 64 {
        let f = (0..d)
            .map(|_| {
                state = state
                    .wrapping_mul(6_364_136_223_846_793_005)
                    .wrapping_add(1_442_695_040_888_963_407);
                ((state >> 33) % 2001) as i64 - 1000
            })
            .collect();
        functionals.push(f);
    }
    for f in &functionals {
        let values: Vec<i64> = unique
            .iter()
            .map(|p| p.iter().zip(f).map(|(a, b)| a * b).sum())
            .collect();
        let best = *values.iter().max().unwrap();
        let mut hits = values.iter().enumerate().filter(|(_, &v)| v == best);
        let first = hits.next().unwrap().0;
        if hits.next().is_none() {
            status[first] = Status::Vertex;
        }
    }

    // Points strictly inside a segment between two other points are not vertices.
    for i in 0..n {
        if status[i] != Status::Unknown {
            continue;
        }
        let x = &unique[i];
        let is_mid = unique.iter().enumerate().any(|(j, y)| {
            j != i && {
                let step: Point = x.iter().zip(y).map(|(a, b)| a - b).collect();
                let g = step.iter().fold(0i64, |g, v| g.gcd(v));
                let step: Point = step.iter().map(|v| v / g).collect();
                let mut z = x.clone();
                loop {
                    z.iter_mut().zip(&step).for_each(|(a, s)| *a += s);
                    if z.iter().zip(&lo).zip(&hi).any(|((v, l), h)| v < l || v > h) {
                        break false;
                    }
                    if set.contains(&z) {
                        break true;
                    }
                }
            }
        });
        if is_mid {
            status[i] = Status::Interior;
        }
    }

    for i in 0..n {
        if status[i] != Status::Unknown {
            continue;
        }
        let others: Vec<Point> = (0..n)
            .filter(|&j| j != i && status[j] != Status::Interior)
            .map(|j| unique[j].clone())
            .collect();
        status[i] = if in_convex_hull(&unique[i], &others) {
            Status::Interior
        } else {
            Status::Vertex
        };
    }
    unique
        .into_iter()
        .zip(status)
        .filter(|(_, s)| *s == Status::Vertex)
        .map(|(p, _)| p)
        .collect()
}
