//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use qsurface::curves::SymbolCurve;
use qsurface::word::BoundaryWord;

/// `(N, k)` counted straight from the letters.
pub fn pair_counts(w: &BoundaryWord) -> (usize, usize) {
    let mut signs: Vec<Vec<i32>> = vec![Vec::new(); w.alphabet_len()];
    for l in w.letters() {
        signs[l.letter].push(l.sign.value());
    }
    let k = signs.iter().filter(|s| s[0] == s[1]).count();
    (signs.len(), k)
}

/// Endpoint classes by repeated relabeling until nothing changes.
pub fn vertex_count(w: &BoundaryWord) -> usize {
    let letters = w.letters();
    let m = letters.len();
    // arc i runs from endpoint i-1 to endpoint i (cyclic)
    let (tail, head) = (|i: usize| (i + m - 1) % m, |i: usize| i);
    let mut label: Vec<usize> = (0..m).collect();
    let mut glue = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if letters[i].letter != letters[j].letter {
                continue;
            }
            if letters[i].sign == letters[j].sign {
                glue.push((tail(i), tail(j)));
                glue.push((head(i), head(j)));
            } else {
                glue.push((tail(i), head(j)));
                glue.push((head(i), tail(j)));
            }
        }
    }
    loop {
        let mut changed = false;
        for &(a, b) in &glue {
            let lo = label[a].min(label[b]);
            if label[a] != lo || label[b] != lo {
                label[a] = lo;
                label[b] = lo;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut distinct = label.clone();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len()
}

/// Total turns of the curve around `p`, restricted to steps leaving samples
/// accepted by `keep`, as an unrounded real number.
pub fn phase_turns(curve: &SymbolCurve, p: Complex64, keep: impl Fn(usize) -> bool) -> f64 {
    let s = &curve.samples;
    let n = s.len();
    (0..n)
        .filter(|&i| keep(s[i].circle))
        .map(|i| ((s[(i + 1) % n].value - p) / (s[i].value - p)).arg())
        .sum::<f64>()
        / (2.0 * PI)
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all `k x k` minors; 0 when they all vanish.
pub fn determinantal_divisor(a: &DMatrix<i64>, k: usize) -> i128 {
    let mut g = 0;
    for rows in subsets(a.nrows(), k) {
        for cols in subsets(a.ncols(), k) {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| a[(r, c)] as i128).collect())
                .collect();
            g = gcd(g, det(&m));
        }
    }
    g
}

/// Invariant factors `d_k / d_{k-1}` from determinantal divisors.
pub fn invariant_factors(a: &DMatrix<i64>) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=a.nrows().min(a.ncols()) {
        let d = determinantal_divisor(a, k);
        if d == 0 {
            break;
        }
        out.push((d / prev) as i64);
        prev = d;
    }
    out
}

/// Every `x` in `[-bound, bound]^n` with `a x = 0`.
pub fn kernel_points(a: &DMatrix<i64>, bound: i64) -> Vec<DMatrix<i64>> {
    let n = a.ncols();
    let side = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let x = DMatrix::from_fn(n, 1, |_, _| {
            let v = (c % side) as i64 - bound;
            c /= side;
            v
        });
        if (a * &x).iter().all(|&v| v == 0) {
            out.push(x);
        }
    }
    out
}

/// Whether `x` is an integer combination of the columns of `basis`, assuming
/// it is a rational one: adjoining `x` must not shrink the gcd of maximal
/// minors.
pub fn in_integer_span(basis: &DMatrix<i64>, x: &DMatrix<i64>) -> bool {
    let r = basis.ncols();
    if r == 0 {
        return x.iter().all(|&v| v == 0);
    }
    let mut aug = DMatrix::zeros(basis.nrows(), r + 1);
    aug.columns_mut(0, r).copy_from(basis);
    aug.column_mut(r).copy_from(x);
    determinantal_divisor(&aug, r) == determinantal_divisor(basis, r)
}
