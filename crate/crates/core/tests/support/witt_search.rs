//! Witt index of a diagonal integer form by direct search: list the isotropic vectors in a box,
//! then look in that list for the largest set of mutually orthogonal independent vectors.

use std::collections::{HashMap, HashSet};

fn box_vectors(len: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(len as u32)).map(move |mut k| {
        (0..len)
            .map(|_| {
                let x = (k % side) as i64 - bound;
                k /= side;
                x
            })
            .collect()
    })
}

fn rank(rows: &[&[i64]]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (f, g) = (m[i][c], m[r][c]);
            let pivot = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = *x * g - p * f;
            }
        }
        r += 1;
    }
    r
}

/// Primitive isotropic vectors in `[-bound, bound]^n`, one per line, shortest first.
fn isotropic_lines(a: &[i64], bound: i64) -> Vec<Vec<i64>> {
    let split = a.len() / 2;
    let value = |x: &[i64], coeffs: &[i64]| -> i64 { x.iter().zip(coeffs).map(|(&xi, &ai)| ai * xi * xi).sum() };
    let mut table: HashMap<i64, Vec<Vec<i64>>> = HashMap::new();
    for x in box_vectors(split, bound) {
        table.entry(value(&x, &a[..split])).or_default().push(x);
    }
    let mut lines = HashSet::new();
    for y in box_vectors(a.len() - split, bound) {
        for x in table.get(&-value(&y, &a[split..])).into_iter().flatten() {
            let w: Vec<i64> = x.iter().chain(&y).copied().collect();
            let g = w.iter().fold(0, |acc, &c| num_integer::gcd(acc, c));
            if g == 0 {
                continue;
            }
            let sign = w.iter().find(|&&c| c != 0).map_or(1, |c| c.signum());
            lines.insert(w.iter().map(|c| c / g * sign).collect::<Vec<_>>());
        }
    }
    let mut out: Vec<Vec<i64>> = lines.into_iter().collect();
    out.sort_by_key(|w| (w.iter().map(|c| c.abs()).max(), w.clone()));
    out
}

/// Branching at the first step and at later steps.
const FIRST_CHOICES: usize = 64;
const LATER_CHOICES: usize = 4;

fn deepest(a: &[i64], lines: &[Vec<i64>], found: &mut Vec<usize>, cap: usize) -> usize {
    let mut best = found.len();
    if best == cap {
        return best;
    }
    let pair = |v: &[i64], w: &[i64]| -> i64 { (0..a.len()).map(|i| a[i] * v[i] * w[i]).sum() };
    let candidates = (0..lines.len())
        .filter(|&k| found.iter().all(|&f| pair(&lines[f], &lines[k]) == 0))
        .filter(|&k| {
            let mut rows: Vec<&[i64]> = found.iter().map(|&f| lines[f].as_slice()).collect();
            rows.push(&lines[k]);
            rank(&rows) == rows.len()
        })
        .take(if found.is_empty() { FIRST_CHOICES } else { LATER_CHOICES })
        .collect::<Vec<_>>();
    for k in candidates {
        found.push(k);
        best = best.max(deepest(a, lines, found, cap));
        found.pop();
        if best == cap {
            break;
        }
    }
    best
}

pub fn brute_witt_index(a: &[i64]) -> usize {
    let bounds: &[i64] = match a.len() {
        0..=2 => &[32],
        3 | 4 => &[8, 32, 128],
        5 => &[6, 12, 24],
        _ => &[6, 12, 16],
    };
    // A totally isotropic subspace meets the positive and negative parts trivially over R.
    let positive = a.iter().filter(|&&x| x > 0).count();
    let cap = positive.min(a.len() - positive);
    let mut best = 0;
    for &b in bounds {
        if best == cap {
            break;
        }
        best = best.max(deepest(a, &isotropic_lines(a, b), &mut Vec::new(), cap));
        if best == cap {
            break;
        }
    }
    best
}
