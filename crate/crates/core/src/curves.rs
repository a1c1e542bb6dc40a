//! Boundary symbols: the finite Hawaiian earring, the classifying curve of a
//! single-vertex word, and winding numbers by the discrete argument principle.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{partition_from_pairs, BoundaryWord, PairStructure, Sign};

pub type C64 = num_complex::Complex64;

/// Largest allowed distance of a winding sum from the nearest integer, in turns.
pub const WINDING_RESIDUAL_TOL: f64 = 0.01;

/// Minimum distance to the point, measured in sampling steps.
pub const GUARD_STEPS: f64 = 10.0;

pub const MIN_SAMPLES_PER_ARC: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub center: f64,
    pub radius: f64,
}

impl Circle {
    pub fn center_c(&self) -> C64 {
        C64::new(self.center, 0.0)
    }

    pub fn point_at(&self, turns: f64) -> C64 {
        self.center_c() + C64::from_polar(self.radius, 2.0 * PI * turns)
    }

    pub fn distance(&self, z: C64) -> f64 {
        ((z - self.center_c()).norm() - self.radius).abs()
    }
}

/// `N` circles with centers `-1/j` and radii `(j+1)/j`, all through `1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EarringGeometry {
    pub n: usize,
    pub circles: Vec<Circle>,
}

impl EarringGeometry {
    /// Circle for the 1-based index `j`.
    pub fn circle(&self, j: usize) -> &Circle {
        &self.circles[j - 1]
    }

    /// Distance from `z` to the union of the circles.
    pub fn distance(&self, z: C64) -> f64 {
        self.circles
            .iter()
            .map(|c| c.distance(z))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn earring(n: usize) -> Result<EarringGeometry> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "earring needs at least one circle".into(),
        ));
    }
    let circles = (1..=n)
        .map(|j| {
            let j = j as f64;
            Circle {
                center: -1.0 / j,
                radius: (j + 1.0) / j,
            }
        })
        .collect();
    Ok(EarringGeometry { n, circles })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub t: f64,
    pub value: C64,
    /// 1-based earring circle this sample travels on; 0 for untagged curves.
    pub circle: usize,
}

/// A closed curve sampled on `[0, 1)`; the last sample connects back to the first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolCurve {
    pub samples: Vec<CurveSample>,
}

impl SymbolCurve {
    pub fn from_fn(samples: usize, f: impl Fn(f64) -> C64) -> Self {
        let samples = (0..samples)
            .map(|m| {
                let t = m as f64 / samples as f64;
                CurveSample {
                    t,
                    value: f(t),
                    circle: 0,
                }
            })
            .collect();
        Self { samples }
    }

    /// `t -> e^{2 pi i power t}`, the symbol of the `power`-th shift.
    pub fn unit_power(power: i32, samples: usize) -> Self {
        Self::from_fn(samples, move |t| {
            C64::from_polar(1.0, 2.0 * PI * power as f64 * t)
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn pointwise_mul(&self, other: &SymbolCurve) -> Result<SymbolCurve> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "sample counts differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| CurveSample {
                t: a.t,
                value: a.value * b.value,
                circle: 0,
            })
            .collect();
        Ok(SymbolCurve { samples })
    }

    /// Largest distance between consecutive samples, closing segment included.
    pub fn max_step(&self) -> f64 {
        let n = self.samples.len();
        (0..n)
            .map(|i| (self.samples[(i + 1) % n].value - self.samples[i].value).norm())
            .fold(0.0, f64::max)
    }

    /// CSV with header `t,re,im,circle`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,re,im,circle\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{}",
                s.t, s.value.re, s.value.im, s.circle
            );
        }
        out
    }
}

fn require_single_vertex(ps: &PairStructure) -> Result<()> {
    let vertices = partition_from_pairs(ps).count();
    if vertices != 1 {
        return Err(Error::UnsupportedWord(format!(
            "{vertices} vertex classes; the boundary quotient is not a wedge of circles"
        )));
    }
    Ok(())
}

/// Traversal direction of every arc after the normalizing flip: pairs with
/// two negative occurrences are traversed positively.
fn normalized_signs(ps: &PairStructure) -> Vec<(usize, i32)> {
    let mut by_position = vec![(0usize, 0i32); ps.len()];
    for (letter, occ) in ps.occurrences.iter().enumerate() {
        let both_negative = occ.iter().all(|o| o.sign == Sign::Neg);
        for o in occ {
            let s = if both_negative { 1 } else { o.sign.value() };
            by_position[o.position] = (letter, s);
        }
    }
    by_position
}

/// Samples the classifying boundary curve of a single-vertex word. Arc `p` of
/// the word occupies `t in [p/2N, (p+1)/2N)` and runs once around the circle
/// of its letter, starting and ending at the base point `1`.
pub fn zeta_curve(ps: &PairStructure, samples_per_arc: usize) -> Result<SymbolCurve> {
    if samples_per_arc < MIN_SAMPLES_PER_ARC {
        return Err(Error::InvalidArgument(format!(
            "samples_per_arc must be at least {MIN_SAMPLES_PER_ARC}"
        )));
    }
    require_single_vertex(ps)?;
    let geometry = earring(ps.n)?;
    let arcs = ps.len() as f64;
    let mut samples = Vec::with_capacity(ps.len() * samples_per_arc);
    for (position, (letter, sign)) in normalized_signs(ps).into_iter().enumerate() {
        let circle = geometry.circle(letter + 1);
        for m in 0..samples_per_arc {
            let tau = m as f64 / samples_per_arc as f64;
            // exact base point at the start of each arc
            let value = if m == 0 {
                C64::new(1.0, 0.0)
            } else {
                circle.point_at(sign as f64 * tau)
            };
            samples.push(CurveSample {
                t: (position as f64 + tau) / arcs,
                value,
                circle: letter + 1,
            });
        }
    }
    Ok(SymbolCurve { samples })
}

/// Sum of principal-argument increments of `value - point` in turns, over
/// the samples selected by `keep` (an increment belongs to its first sample).
fn argument_turns(curve: &SymbolCurve, point: C64, keep: impl Fn(&CurveSample) -> bool) -> f64 {
    let n = curve.samples.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = &curve.samples[i];
        if !keep(a) {
            continue;
        }
        let b = &curve.samples[(i + 1) % n];
        total += ((b.value - point) / (a.value - point)).arg();
    }
    total / (2.0 * PI)
}

fn round_turns(turns: f64) -> Result<i64> {
    let rounded = turns.round();
    let residual = (turns - rounded).abs();
    if residual >= WINDING_RESIDUAL_TOL {
        return Err(Error::NonIntegral { turns, residual });
    }
    Ok(rounded as i64)
}

/// Winding number of a closed sampled curve around `point`.
pub fn winding_around(curve: &SymbolCurve, point: C64) -> Result<i64> {
    if curve.is_empty() {
        return Err(Error::InvalidArgument("empty curve".into()));
    }
    let distance = curve
        .samples
        .iter()
        .map(|s| (s.value - point).norm())
        .fold(f64::INFINITY, f64::min);
    let guard = GUARD_STEPS * curve.max_step();
    // a NaN distance must not slip past the guard
    if distance.is_nan() || distance <= guard {
        return Err(Error::NearZero { distance, guard });
    }
    round_turns(argument_turns(curve, point, |_| true))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindingVector {
    pub per_circle: Vec<i64>,
    pub around_zero: i64,
}

/// Windings read off the signs: `|s1 + s2|` per letter, `2k` around zero.
pub fn circle_windings(ps: &PairStructure) -> Result<WindingVector> {
    require_single_vertex(ps)?;
    let per_circle: Vec<i64> = ps
        .occurrences
        .iter()
        .map(|[a, b]| (a.sign.value() + b.sign.value()).abs() as i64)
        .collect();
    Ok(WindingVector {
        around_zero: 2 * ps.k as i64,
        per_circle,
    })
}

/// Numeric counterpart of [`circle_windings`]: per-circle windings from the
/// samples tagged with each circle, and the total winding around zero.
pub fn numeric_windings(curve: &SymbolCurve, n: usize) -> Result<WindingVector> {
    let geometry = earring(n)?;
    let per_circle = (1..=n)
        .map(|j| {
            let center = geometry.circle(j).center_c();
            round_turns(argument_turns(curve, center, |s| s.circle == j))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WindingVector {
        per_circle,
        around_zero: winding_around(curve, C64::new(0.0, 0.0))?,
    })
}

/// A rational multiple of pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PiFraction {
    pub num: i64,
    pub den: i64,
}

impl PiFraction {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let g = num_integer::gcd(num, den) * den.signum();
        Self {
            num: num / g,
            den: den / g,
        }
    }

    /// Representative in `[0, 2)`.
    pub fn normalized(self) -> Self {
        let period = 2 * self.den;
        Self::new(self.num.rem_euclid(period), self.den)
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for PiFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PiFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceFamily {
    Orientable(usize),
    NonOrientable(usize),
}

/// One arc of an explicit arrangement; angles in units of pi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcAngle {
    pub label: String,
    pub letter: usize,
    pub sign: Sign,
    pub start: PiFraction,
    pub end: PiFraction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcTable {
    #[serde(serialize_with = "serialize_word")]
    pub word: BoundaryWord,
    /// Arcs in counterclockwise order starting at angle 0.
    pub arcs: Vec<ArcAngle>,
}

fn serialize_word<S: serde::Serializer>(
    w: &BoundaryWord,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.render())
}

/// The explicit arc arrangements `a_k(t) = e^{pi i (k-1+t)/(2g)}`,
/// `a_k^{-1}(t) = e^{pi i (2g+k-t)/(2g)}` and, for the non-orientable family,
/// `a_k(t) = e^{pi i (k-1+t)/n}`, `b_k(t) = e^{pi i (-k+t)/n}`. The word is
/// read off by sorting the arcs by angle.
pub fn arc_parametrization(family: SurfaceFamily) -> Result<ArcTable> {
    let mut arcs = Vec::new();
    match family {
        SurfaceFamily::Orientable(g) => {
            if g == 0 {
                return Err(Error::InvalidArgument("genus must be at least 1".into()));
            }
            let den = 2 * g as i64;
            for k in 1..=den {
                arcs.push(ArcAngle {
                    label: format!("a{k}"),
                    letter: (k - 1) as usize,
                    sign: Sign::Pos,
                    start: PiFraction::new(k - 1, den),
                    end: PiFraction::new(k, den),
                });
                arcs.push(ArcAngle {
                    label: format!("a{k}^-1"),
                    letter: (k - 1) as usize,
                    sign: Sign::Neg,
                    start: PiFraction::new(den + k, den),
                    end: PiFraction::new(den + k - 1, den),
                });
            }
        }
        SurfaceFamily::NonOrientable(n) => {
            if n == 0 {
                return Err(Error::InvalidArgument(
                    "Euler genus must be at least 1".into(),
                ));
            }
            let den = n as i64;
            for k in 1..=den {
                arcs.push(ArcAngle {
                    label: format!("a{k}"),
                    letter: (k - 1) as usize,
                    sign: Sign::Pos,
                    start: PiFraction::new(k - 1, den),
                    end: PiFraction::new(k, den),
                });
                arcs.push(ArcAngle {
                    label: format!("b{k}"),
                    letter: (k - 1) as usize,
                    sign: Sign::Pos,
                    // shifted by 2 pi so the arc lies in [0, 2 pi]
                    start: PiFraction::new(2 * den - k, den),
                    end: PiFraction::new(2 * den - k + 1, den),
                });
            }
        }
    }
    arcs.sort_by_key(|a| a.start.min(a.end));
    let labels: Vec<_> = arcs.iter().map(|a| (a.letter, a.sign)).collect();
    let word = BoundaryWord::from_letters(&labels)?;
    Ok(ArcTable { word, arcs })
}
