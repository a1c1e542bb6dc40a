//! Smith normal form over the integers, with kernels and cokernels.

use nalgebra::DMatrix;

use crate::ktheory::AbelianGroup;

pub type IntMatrix = DMatrix<i64>;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries `d_1 | d_2 | ... | d_rank` positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d[(i, i)]).collect()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        m.swap_rows(a, b);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        m.swap_columns(a, b);
    }
}

/// row[target] -= q * row[source]
fn sub_row(m: &mut IntMatrix, target: usize, source: usize, q: i64) {
    for j in 0..m.ncols() {
        let s = m[(source, j)];
        m[(target, j)] -= q * s;
    }
}

fn sub_col(m: &mut IntMatrix, target: usize, source: usize, q: i64) {
    for i in 0..m.nrows() {
        let s = m[(i, source)];
        m[(i, target)] -= q * s;
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for j in t..d.ncols() {
        for i in t..d.nrows() {
            let x = d[(i, j)].abs();
            if x != 0 && best.is_none_or(|(bi, bj)| x < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m, m);
    let mut v = IntMatrix::identity(n, n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    sub_row(&mut d, i, t, q);
                    sub_row(&mut u, i, t, q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    sub_col(&mut d, j, t, q);
                    sub_col(&mut v, j, t, q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the remaining block
                let offender = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| d[(i, j)] % d[(t, t)] != 0);
                match offender {
                    None => break,
                    Some((i, _)) => {
                        // row t += row i, then keep reducing
                        sub_row(&mut d, t, i, -1);
                        sub_row(&mut u, t, i, -1);
                    }
                }
            }
            // move the smallest remaining entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..m {
                let x = d[(i, t)].abs();
                if x != 0 && x < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                let x = d[(t, j)].abs();
                if x != 0 && x < d[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                swap_rows(&mut d, t, best.0);
                swap_rows(&mut u, t, best.0);
            } else if best.1 != t {
                swap_cols(&mut d, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }

        if d[(t, t)] < 0 {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)];
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)];
            }
        }
        rank += 1;
    }

    SmithForm { u, d, v, rank }
}

/// Basis of `{x in Z^n : a x = 0}` as the columns of the returned matrix.
/// The basis is saturated: it spans every integer solution, not only a
/// finite-index sublattice.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.ncols();
    snf.v.columns(snf.rank, n - snf.rank).into_owned()
}

/// `Z^m / a Z^n` in invariant-factor form.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let torsion = snf
        .invariant_factors()
        .into_iter()
        .filter(|&f| f > 1)
        .collect();
    AbelianGroup::new(a.nrows() - snf.rank, torsion)
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank
}
