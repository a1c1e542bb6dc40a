//! Finite truncations of the shift-operator generators.
//!
//! Unilateral shifts are truncated by compression to the first `d` basis
//! vectors, bilateral shifts by wrapping around (circulant), which keeps them
//! unitary. Indices are never read off a square truncation, where
//! `dim ker - dim coker` is always zero; they come from symbol windings.

use std::fmt::{self, Write as _};

use nalgebra::Schur;
use serde::Serialize;

use crate::curves::{earring, winding_around, EarringGeometry, SymbolCurve, C64};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, identity, psd_sqrt, spectral_norm, CMat};

pub const MIN_SHIFT_DIM: usize = 2;
pub const MIN_GENERATOR_DIM: usize = 4;
pub const CONTRACTION_SLACK: f64 = 1e-12;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::InvalidArgument(format!(
            "dimension {d} below minimum {min}"
        )));
    }
    Ok(())
}

/// `S e_n = e_{n+1}`, compressed to `span(e_0..e_{d-1})`.
pub fn unilateral_shift(d: usize) -> Result<CMat> {
    check_dim(d, MIN_SHIFT_DIM)?;
    Ok(CMat::from_fn(
        d,
        d,
        |i, j| if i == j + 1 { ONE } else { ZERO },
    ))
}

/// Weight of the Bergman shift: `T_z e_n = sqrt((n+1)/(n+2)) e_{n+1}`.
pub fn bergman_weight(n: usize) -> f64 {
    ((n as f64 + 1.0) / (n as f64 + 2.0)).sqrt()
}

pub fn bergman_tz(d: usize) -> Result<CMat> {
    check_dim(d, MIN_SHIFT_DIM)?;
    Ok(CMat::from_fn(d, d, |i, j| {
        if i == j + 1 {
            C64::new(bergman_weight(j), 0.0)
        } else {
            ZERO
        }
    }))
}

/// Cyclic permutation `e_i -> e_{i+1 mod d}`.
pub fn bilateral_shift_circulant(d: usize) -> Result<CMat> {
    check_dim(d, MIN_SHIFT_DIM)?;
    Ok(CMat::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            ONE
        } else {
            ZERO
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "power", rename_all = "kebab-case")]
pub enum BlockKind {
    /// `S^p` on `l2(N0)`.
    UnilateralShiftPower(u32),
    /// `(S^*)^p` on `l2(N0)`.
    ShiftAdjointPower(u32),
    /// `U` on `l2(Z)`.
    BilateralShift,
    BergmanTz,
    Identity,
}

impl BlockKind {
    /// Winding of the basic symbol `e^{2 pi i w t}` of the block operator.
    fn symbol_power(self) -> i32 {
        match self {
            BlockKind::UnilateralShiftPower(p) => p as i32,
            BlockKind::ShiftAdjointPower(p) => -(p as i32),
            BlockKind::BilateralShift | BlockKind::BergmanTz => 1,
            BlockKind::Identity => 0,
        }
    }

    fn is_bilateral(self) -> bool {
        matches!(self, BlockKind::BilateralShift)
    }

    fn operator_label(self) -> String {
        match self {
            BlockKind::UnilateralShiftPower(1) => "S".into(),
            BlockKind::UnilateralShiftPower(p) => format!("S^{p}"),
            BlockKind::ShiftAdjointPower(1) => "S*".into(),
            BlockKind::ShiftAdjointPower(p) => format!("S*^{p}"),
            BlockKind::BilateralShift => "U".into(),
            BlockKind::BergmanTz => "T_z".into(),
            BlockKind::Identity => "Id".into(),
        }
    }

    fn matrix(self, d: usize) -> Result<CMat> {
        let power = |m: CMat, p: u32| (1..p).fold(m.clone(), |acc, _| &acc * &m);
        match self {
            BlockKind::UnilateralShiftPower(p) => Ok(power(unilateral_shift(d)?, p.max(1))),
            BlockKind::ShiftAdjointPower(p) => Ok(power(unilateral_shift(d)?, p.max(1)).adjoint()),
            BlockKind::BilateralShift => bilateral_shift_circulant(d),
            BlockKind::BergmanTz => bergman_tz(d),
            BlockKind::Identity => Ok(identity(d)),
        }
    }
}

fn fraction(num: usize, den: usize) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("({num}/{den})")
    }
}

/// The operator `scale * B + offset * I` for a basic operator `B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSpec {
    pub kind: BlockKind,
    #[serde(skip)]
    pub scale: C64,
    #[serde(skip)]
    pub offset: C64,
    pub label: String,
}

impl BlockSpec {
    pub fn identity() -> Self {
        Self {
            kind: BlockKind::Identity,
            scale: ONE,
            offset: ZERO,
            label: "Id".into(),
        }
    }

    /// `((j+1)/j) B - 1/j`, whose symbol runs on the `j`-th earring circle.
    pub fn normal(kind: BlockKind, j: usize) -> Self {
        assert!(j >= 1);
        let jf = j as f64;
        let offset = if j == 1 {
            "1".to_string()
        } else {
            format!("1/{j}")
        };
        Self {
            kind,
            scale: C64::new((jf + 1.0) / jf, 0.0),
            offset: C64::new(-1.0 / jf, 0.0),
            label: format!("{}{} - {offset}", fraction(j + 1, j), kind.operator_label()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == BlockKind::Identity && self.scale == ONE && self.offset == ZERO
    }

    pub fn matrix(&self, d: usize) -> Result<CMat> {
        let base = self.kind.matrix(d)?;
        Ok(base * self.scale + identity(d) * self.offset)
    }

    /// Symbol `t -> scale e^{2 pi i w t} + offset`, constant for the identity.
    pub fn symbol(&self, samples: usize) -> SymbolCurve {
        let (w, scale, offset) = (self.kind.symbol_power() as f64, self.scale, self.offset);
        let identity = self.kind == BlockKind::Identity;
        SymbolCurve::from_fn(samples, move |t| {
            if identity {
                scale + offset
            } else {
                scale * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * w * t) + offset
            }
        })
    }

    /// Fredholm index of the block. Bilateral blocks are invertible and get
    /// index 0; the Toeplitz winding rule applies to the others.
    pub fn index(&self, samples: usize) -> Result<i64> {
        match self.kind {
            BlockKind::BilateralShift | BlockKind::Identity => Ok(0),
            _ => fredholm_index(&self.symbol(samples), ZERO),
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub spec: BlockSpec,
    pub matrix: CMat,
}

/// Direct sum of `d x d` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub blocks: Vec<Block>,
    pub dim: usize,
}

impl TruncatedOperator {
    pub fn from_specs(specs: Vec<BlockSpec>, d: usize) -> Result<Self> {
        let blocks = specs
            .into_iter()
            .map(|spec| {
                Ok(Block {
                    matrix: spec.matrix(d)?,
                    spec,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks, dim: d })
    }

    pub fn dense(&self) -> CMat {
        let mats: Vec<&CMat> = self.blocks.iter().map(|b| &b.matrix).collect();
        direct_sum(&mats)
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Sparse `row,col,re,im` triplets of the full matrix.
    pub fn to_csv(&self) -> String {
        matrix_csv(&self.dense())
    }
}

pub fn matrix_csv(m: &CMat) -> String {
    let mut out = String::from("row,col,re,im\n");
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if z != ZERO {
                let _ = writeln!(out, "{i},{j},{:.16e},{:.16e}", z.re, z.im);
            }
        }
    }
    out
}

/// First `k` blocks `((j+1)/j) S^2 - 1/j`, then `N-k` blocks
/// `((j+1)/j) U - 1/j`. `k = 0` is the orientable generator with `N = 2g`.
pub fn build_generator(n: usize, k: i64, d: usize) -> Result<TruncatedOperator> {
    if k < 0 || k as usize > n || n == 0 {
        return Err(Error::InvalidInvariant { n: n as i64, k });
    }
    check_dim(d, MIN_GENERATOR_DIM)?;
    let specs = (1..=n)
        .map(|j| {
            let kind = if j as i64 <= k {
                BlockKind::UnilateralShiftPower(2)
            } else {
                BlockKind::BilateralShift
            };
            BlockSpec::normal(kind, j)
        })
        .collect();
    TruncatedOperator::from_specs(specs, d)
}

/// `ind = -wind` of the symbol around `point`.
pub fn fredholm_index(symbol: &SymbolCurve, point: C64) -> Result<i64> {
    Ok(-winding_around(symbol, point)?)
}

fn check_contraction(t: &CMat) -> Result<()> {
    if !t.is_square() {
        return Err(Error::InvalidArgument(format!(
            "expected a square matrix, got {}x{}",
            t.nrows(),
            t.ncols()
        )));
    }
    let norm = spectral_norm(t);
    if norm > 1.0 + CONTRACTION_SLACK {
        return Err(Error::NotContraction { norm });
    }
    Ok(())
}

/// The column `V = (T; sqrt(I - T^H T))`, an isometry for any contraction.
pub fn bott_isometry(t: &CMat) -> Result<CMat> {
    check_contraction(t)?;
    let d = t.nrows();
    let defect = psd_sqrt(&(identity(d) - t.adjoint() * t));
    let mut v = CMat::zeros(2 * d, d);
    v.view_mut((0, 0), (d, d)).copy_from(t);
    v.view_mut((d, 0), (d, d)).copy_from(&defect);
    Ok(v)
}

/// `P = [[T T^H, T D], [D T^H, I - T^H T]]` with `D = sqrt(I - T^H T)`.
pub fn bott_projection(t: &CMat) -> Result<CMat> {
    check_contraction(t)?;
    let d = t.nrows();
    let gram = t.adjoint() * t;
    let defect = psd_sqrt(&(identity(d) - &gram));
    let upper_right = t * &defect;
    let mut p = CMat::zeros(2 * d, 2 * d);
    p.view_mut((0, 0), (d, d)).copy_from(&(t * t.adjoint()));
    p.view_mut((0, d), (d, d)).copy_from(&upper_right);
    p.view_mut((d, 0), (d, d)).copy_from(&upper_right.adjoint());
    p.view_mut((d, d), (d, d)).copy_from(&(identity(d) - gram));
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPoint {
    pub value: C64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSpectrum {
    /// 1-based block index, which is also the target circle.
    pub block: usize,
    pub label: String,
    pub bilateral: bool,
    /// Eigenvalues of circulant blocks with their distance to the circle.
    pub eigenvalues: Vec<EigenPoint>,
    /// Sampled symbol of the block.
    pub symbol_image: Vec<EigenPoint>,
    /// Eigenvalues of compressed unilateral blocks. These are the diagonal
    /// of a triangular matrix and say nothing about the essential spectrum.
    pub truncation_artifacts: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub blocks: Vec<BlockSpectrum>,
    pub target: EarringGeometry,
    pub max_deviation: f64,
    pub max_symbol_deviation: f64,
}

pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    let dim = m.nrows();
    Schur::try_new(m.clone(), f64::EPSILON, 1000 * dim.max(1))
        .and_then(|s| s.eigenvalues())
        .map(|v| v.iter().copied().collect())
        .ok_or(Error::NoConvergence { dim })
}

fn triangular_diagonal(m: &CMat) -> Option<Vec<C64>> {
    let n = m.nrows();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == ZERO));
    let upper = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == ZERO));
    (lower || upper).then(|| m.diagonal().iter().copied().collect())
}

pub fn spectrum_report(op: &TruncatedOperator, target: &EarringGeometry) -> Result<SpectrumReport> {
    if op.block_count() != target.n {
        return Err(Error::Shape {
            expected: target.n,
            found: op.block_count(),
        });
    }
    let samples = op.dim.max(64);
    let mut blocks = Vec::with_capacity(op.block_count());
    for (idx, block) in op.blocks.iter().enumerate() {
        let circle = target.circle(idx + 1);
        let bilateral = block.spec.kind.is_bilateral();
        let eigen = if bilateral {
            eigenvalues(&block.matrix)?
                .into_iter()
                .map(|value| EigenPoint {
                    value,
                    deviation: circle.distance(value),
                })
                .collect()
        } else {
            Vec::new()
        };
        let symbol_image = block
            .spec
            .symbol(samples)
            .samples
            .into_iter()
            .map(|s| EigenPoint {
                value: s.value,
                deviation: circle.distance(s.value),
            })
            .collect();
        let truncation_artifacts = if bilateral {
            Vec::new()
        } else {
            match triangular_diagonal(&block.matrix) {
                Some(diag) => diag,
                None => eigenvalues(&block.matrix)?,
            }
        };
        blocks.push(BlockSpectrum {
            block: idx + 1,
            label: block.spec.label.clone(),
            bilateral,
            eigenvalues: eigen,
            symbol_image,
            truncation_artifacts,
        });
    }
    let max_of = |pick: &dyn Fn(&BlockSpectrum) -> &Vec<EigenPoint>| {
        blocks
            .iter()
            .flat_map(|b| pick(b).iter().map(|e| e.deviation))
            .fold(0.0, f64::max)
    };
    let max_deviation = max_of(&|b| &b.eigenvalues);
    let max_symbol_deviation = max_of(&|b| &b.symbol_image);
    Ok(SpectrumReport {
        blocks,
        target: target.clone(),
        max_deviation,
        max_symbol_deviation,
    })
}

impl SpectrumReport {
    /// CSV `re,im,block,deviation`. Circulant blocks list their eigenvalues.
    /// Unilateral blocks list their symbol image, followed by the truncated
    /// matrix eigenvalues with `artifact` in the deviation column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,block,deviation\n");
        for b in &self.blocks {
            let points = if b.bilateral {
                &b.eigenvalues
            } else {
                &b.symbol_image
            };
            for e in points {
                let _ = writeln!(
                    out,
                    "{:.16e},{:.16e},{},{:.16e}",
                    e.value.re, e.value.im, b.block, e.deviation
                );
            }
            for z in &b.truncation_artifacts {
                let _ = writeln!(out, "{:.16e},{:.16e},{},artifact", z.re, z.im, b.block);
            }
        }
        out
    }
}

/// Spectrum report of the normal-form generator for `(n, k)`.
pub fn generator_spectrum(n: usize, k: i64, d: usize) -> Result<SpectrumReport> {
    let op = build_generator(n, k, d)?;
    spectrum_report(&op, &earring(n)?)
}

/// Block normal forms of the K1 generators.
///
/// `k = 0`: generator `j` in `1..=N` is `((j+1)/j) U - 1/j` in slot `j`.
/// `k >= 1`: generator `i` in `1..N`; for `i < k` slot 1 holds `2 S*^2 - 1`
/// and slot `i+1` holds `((i+2)/(i+1)) S^2 - 1/(i+1)`; for `i >= k` slot
/// `i+1` holds `((i+2)/(i+1)) U - 1/(i+1)`. All other slots are `Id`.
pub fn k1_generator_blocks(n: usize, k: usize, i: usize) -> Result<Vec<BlockSpec>> {
    if k > n {
        return Err(Error::InvalidInvariant {
            n: n as i64,
            k: k as i64,
        });
    }
    let max = if k == 0 { n } else { n.saturating_sub(1) };
    if i == 0 || i > max {
        return Err(Error::IndexRange { index: i, max });
    }
    let mut blocks = vec![BlockSpec::identity(); n];
    if k == 0 {
        blocks[i - 1] = BlockSpec::normal(BlockKind::BilateralShift, i);
    } else if i < k {
        blocks[0] = BlockSpec::normal(BlockKind::ShiftAdjointPower(2), 1);
        blocks[i] = BlockSpec::normal(BlockKind::UnilateralShiftPower(2), i + 1);
    } else {
        blocks[i] = BlockSpec::normal(BlockKind::BilateralShift, i + 1);
    }
    Ok(blocks)
}
