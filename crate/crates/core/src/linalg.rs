//! Dense complex helpers on top of nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::curves::C64;

pub type CMat = DMatrix<C64>;

/// Operator 2-norm, the square root of the top eigenvalue of `A^H A`.
pub fn spectral_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let gram = a.adjoint() * a;
    let top = gram
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(0.0f64, f64::max);
    top.max(0.0).sqrt()
}

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Negative eigenvalues can only come from rounding and are clamped to zero.
///
/// The Hermitian eigensolver can leave a reconstruction error near 1e-10 on
/// matrices with clustered spectra, so the root is polished with Newton steps
/// `D += X`, `D X + X D = A - D^2`, solved in the eigenbasis.
pub fn psd_sqrt(a: &CMat) -> CMat {
    let eig = SymmetricEigen::new(a.clone());
    let q = &eig.eigenvectors;
    let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut scaled = q.clone();
    for (mut col, &s) in scaled.column_iter_mut().zip(&roots) {
        col *= C64::new(s, 0.0);
    }
    let mut root = hermitian_part(&(scaled * q.adjoint()));
    for _ in 0..NEWTON_STEPS {
        let mut x = q.adjoint() * (a - &root * &root) * q;
        for j in 0..x.ncols() {
            for i in 0..x.nrows() {
                let den = roots[i] + roots[j];
                x[(i, j)] = if den > 0.0 {
                    x[(i, j)] / den
                } else {
                    C64::new(0.0, 0.0)
                };
            }
        }
        root = hermitian_part(&(root + q * x * q.adjoint()));
    }
    root
}

const NEWTON_STEPS: usize = 2;

fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[&CMat]) -> CMat {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(total, total);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    out
}
