//! Invariant checks across all modules, run by the `verify` command.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::curves::{
    circle_windings, earring, numeric_windings, winding_around, zeta_curve, SymbolCurve, C64,
};
use crate::error::{Error, Result};
use crate::ktheory::{
    classical_kgroups, groups_from_index, index_map, index_map_numeric, k1_generator_presentation,
    kgroups, IndexMap,
};
use crate::linalg::{identity, spectral_norm, CMat};
use crate::operators::{
    bergman_tz, bilateral_shift_circulant, bott_isometry, bott_projection, build_generator,
    fredholm_index, k1_generator_blocks, spectrum_report, BlockKind, BlockSpec, MIN_GENERATOR_DIM,
};
use crate::smith;
use crate::word::{
    classify, is_isomorphic, normal_form_word, pair_structure, parse_word, quantum_invariant,
    random_single_vertex_word, BoundaryWord, IsoMode, SurfaceKind,
};

pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const WINDING_SAMPLES: usize = 1024;
pub const ISOMETRY_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const SYMBOL_TOL: f64 = 1e-14;
pub const EARRING_TOL: f64 = 1e-12;

/// Deliberate corruption for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Replaces one Bergman-shift weight by `1.5`.
    BergmanWeight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub dim: usize,
    pub tol: f64,
    pub corpus_size: usize,
    pub fault: Fault,
}

impl VerifyConfig {
    pub fn new(dim: usize, tol: f64) -> Result<Self> {
        if dim < MIN_GENERATOR_DIM {
            return Err(Error::InvalidArgument(format!(
                "--dim must be at least {MIN_GENERATOR_DIM}"
            )));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument("--tol must be positive".into()));
        }
        Ok(Self {
            dim,
            tol,
            corpus_size: 40,
            fault: Fault::None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub dim: usize,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}  {:<16} {:<34} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.module,
                c.name,
                c.detail
            );
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

struct Runner {
    checks: Vec<CheckResult>,
}

impl Runner {
    fn check(
        &mut self,
        module: &'static str,
        name: &'static str,
        f: impl FnOnce() -> Result<(bool, String)>,
    ) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckResult {
            module,
            name,
            passed,
            detail,
        });
    }
}

/// Random single-vertex words plus the normal forms for small invariants.
pub fn corpus(size: usize, seed: u64) -> Vec<BoundaryWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut words: Vec<BoundaryWord> = (0..size)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random_single_vertex_word(&mut rng, n)
        })
        .collect();
    for n in 1..=4 {
        for k in 0..=n {
            if let Ok(w) = normal_form_word(n, k) {
                words.push(w);
            }
        }
    }
    words
}

fn bergman(config: &VerifyConfig, d: usize) -> Result<CMat> {
    let mut t = bergman_tz(d)?;
    if config.fault == Fault::BergmanWeight {
        let n = d / 2;
        t[(n + 1, n)] = C64::new(1.5, 0.0);
    }
    Ok(t)
}

fn random_contraction(rng: &mut StdRng, d: usize) -> CMat {
    let a = CMat::from_fn(d, d, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = spectral_norm(&a);
    a / C64::new(norm * (1.0 + 1e-9), 0.0)
}

fn all<T>(
    items: impl IntoIterator<Item = T>,
    mut pred: impl FnMut(&T) -> Result<bool>,
) -> Result<(bool, usize)> {
    let mut count = 0;
    for item in items {
        count += 1;
        if !pred(&item)? {
            return Ok((false, count));
        }
    }
    Ok((true, count))
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let words = corpus(config.corpus_size, CORPUS_SEED);
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xabcd);
    let mut r = Runner { checks: Vec::new() };
    let d = config.dim;
    let tol = config.tol;

    // word model
    r.check("word-model", "render/parse round trip", || {
        let (ok, n) = all(&words, |w| Ok(parse_word(&w.render())? == **w))?;
        Ok((ok, format!("{n} words")))
    });
    r.check("word-model", "invariant under symmetries", || {
        let mut perm_rng = StdRng::seed_from_u64(CORPUS_SEED + 1);
        let (ok, n) = all(&words, |w| {
            let inv = quantum_invariant(w)?;
            let mut perm: Vec<usize> = (0..w.alphabet_len()).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut perm_rng);
            let shift = perm_rng.gen_range(0..w.len());
            Ok([
                w.relabeled(&perm),
                w.rotated(shift),
                w.flipped(),
                w.mirrored(),
            ]
            .iter()
            .all(|v| quantum_invariant(v).ok() == Some(inv)))
        })?;
        Ok((ok, format!("{n} words x 4 transformations")))
    });
    r.check("word-model", "single vertex: chi = 2 - N", || {
        let (ok, n) = all(&words, |w| {
            let c = classify(w)?;
            Ok(c.euler_characteristic == 2 - c.n_pairs as i64)
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("word-model", "k = 0 implies N even", || {
        let (ok, n) = all(&words, |w| {
            let ps = pair_structure(w)?;
            Ok(ps.k != 0 || ps.n % 2 == 0)
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("word-model", "equal-sign pair is never orientable", || {
        let mut rng = StdRng::seed_from_u64(CORPUS_SEED + 2);
        let sample: Vec<_> = (0..200)
            .map(|_| {
                let n = rng.gen_range(1..=6);
                crate::word::random_paired_word(&mut rng, n)
            })
            .collect();
        let (ok, n) = all(&sample, |w| {
            let ps = pair_structure(w)?;
            Ok(ps.k == 0 || !matches!(classify(w)?.kind, SurfaceKind::Orientable { .. }))
        })?;
        Ok((ok, format!("{n} random paired words")))
    });
    r.check("word-model", "quantum iso is an equivalence", || {
        let subset: Vec<_> = words.iter().take(30).collect();
        let iso = |a: &BoundaryWord, b: &BoundaryWord| is_isomorphic(a, b, IsoMode::Quantum);
        for a in &subset {
            if !iso(a, a)? {
                return Ok((false, format!("not reflexive at {a}")));
            }
            for b in &subset {
                let ab = iso(a, b)?;
                if ab != iso(b, a)? {
                    return Ok((false, format!("not symmetric at {a}, {b}")));
                }
                if !ab {
                    continue;
                }
                for c in &subset {
                    if iso(b, c)? && !iso(a, c)? {
                        return Ok((false, format!("not transitive at {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok((true, format!("{} words", subset.len())))
    });

    // symbol curves
    r.check("symbol-curves", "numeric windings = combinatorial", || {
        let (ok, n) = all(&words, |w| {
            let ps = pair_structure(w)?;
            let curve = zeta_curve(&ps, WINDING_SAMPLES)?;
            let combinatorial = circle_windings(&ps)?;
            Ok(numeric_windings(&curve, ps.n)? == combinatorial
                && combinatorial.around_zero == 2 * ps.k as i64)
        })?;
        Ok((ok, format!("{n} words at {WINDING_SAMPLES} samples/arc")))
    });
    r.check("symbol-curves", "zeta lies on the earring", || {
        let mut worst = 0.0f64;
        for w in &words {
            let ps = pair_structure(w)?;
            let x = earring(ps.n)?;
            for s in zeta_curve(&ps, 256)?.samples {
                worst = worst.max(x.distance(s.value));
            }
        }
        Ok((worst <= EARRING_TOL, format!("max distance {worst:.3e}")))
    });
    r.check("symbol-curves", "winding additive under products", || {
        let zero = C64::new(0.0, 0.0);
        for a in -3..=3 {
            for b in -3..=3 {
                let prod = SymbolCurve::unit_power(a, 512)
                    .pointwise_mul(&SymbolCurve::unit_power(b, 512))?;
                if winding_around(&prod, zero)? != (a + b) as i64 {
                    return Ok((false, format!("u^{a} u^{b}")));
                }
            }
        }
        Ok((true, "a, b in -3..=3".into()))
    });
    r.check("symbol-curves", "windings stable under refinement", || {
        let (ok, n) = all(words.iter().take(15), |w| {
            let ps = pair_structure(w)?;
            Ok(numeric_windings(&zeta_curve(&ps, 512)?, ps.n)?
                == numeric_windings(&zeta_curve(&ps, 1024)?, ps.n)?)
        })?;
        Ok((ok, format!("{n} words, 512 vs 1024 samples/arc")))
    });

    // operator models
    r.check("operator-models", "Bott projection on T_z", || {
        let p = bott_projection(&bergman(config, d)?)?;
        let idem = spectral_norm(&(&p * &p - &p));
        let herm = spectral_norm(&(&p - p.adjoint()));
        Ok((
            idem <= 1e-10 && herm <= HERMITIAN_TOL,
            format!("|P^2-P| = {idem:.2e}, |P-P*| = {herm:.2e}"),
        ))
    });
    r.check("operator-models", "Bott projection, random T", || {
        let mut worst = (0.0f64, 0.0f64);
        for size in [4, 16, (d / 4).clamp(4, 64)] {
            let p = bott_projection(&random_contraction(&mut rng, size))?;
            worst.0 = worst.0.max(spectral_norm(&(&p * &p - &p)));
            worst.1 = worst.1.max(spectral_norm(&(&p - p.adjoint())));
        }
        Ok((
            worst.0 <= 1e-10 && worst.1 <= 1e-10,
            format!("max |P^2-P| = {:.2e}, |P-P*| = {:.2e}", worst.0, worst.1),
        ))
    });
    r.check("operator-models", "isometry column", || {
        let v = bott_isometry(&bergman(config, d)?)?;
        let defect = spectral_norm(&(v.adjoint() * &v - identity(d)));
        Ok((defect <= ISOMETRY_TOL, format!("|V*V-I| = {defect:.2e}")))
    });
    r.check("operator-models", "index of u^k is -k", || {
        let zero = C64::new(0.0, 0.0);
        for k in -5..=5 {
            if fredholm_index(&SymbolCurve::unit_power(k, 512), zero)? != -(k as i64) {
                return Ok((false, format!("k = {k}")));
            }
        }
        Ok((true, "k in -5..=5".into()))
    });
    r.check("operator-models", "same-orientation blocks", || {
        for j in 1..=6 {
            let spec = BlockSpec::normal(BlockKind::UnilateralShiftPower(2), j);
            let center = C64::new(-1.0 / j as f64, 0.0);
            if winding_around(&spec.symbol(512), center)? != 2 || spec.index(512)? != -2 {
                return Ok((false, format!("block {j}")));
            }
        }
        Ok((true, "winding 2, index -2 for j = 1..6".into()))
    });
    r.check("operator-models", "circulant blocks", || {
        let u = bilateral_shift_circulant(d)?;
        let unitary = spectral_norm(&(u.adjoint() * &u - identity(d)));
        let report = spectrum_report(&build_generator(2, 0, d)?, &earring(2)?)?;
        Ok((
            unitary <= ISOMETRY_TOL && report.max_deviation <= tol,
            format!(
                "|U*U-I| = {unitary:.2e}, eigenvalue deviation {:.2e}",
                report.max_deviation
            ),
        ))
    });
    r.check("operator-models", "unilateral symbol images", || {
        let report = spectrum_report(&build_generator(3, 2, d)?, &earring(3)?)?;
        Ok((
            report.max_symbol_deviation <= SYMBOL_TOL,
            format!("max deviation {:.2e}", report.max_symbol_deviation),
        ))
    });
    r.check("operator-models", "Bergman weights", || {
        let size = d.max(1000);
        let t = bergman(config, size)?;
        let w: Vec<f64> = (0..size - 1).map(|n| t[(n + 1, n)].re).collect();
        let increasing = w.windows(2).all(|p| p[0] < p[1]);
        let below_one = w.iter().all(|&x| x < 1.0);
        let tail = w[500..]
            .iter()
            .map(|x| 1.0 - x)
            .fold(0.0f64, |a, b| a.max(b.abs()));
        Ok((
            increasing && below_one && tail < 1e-3,
            format!("increasing: {increasing}, < 1: {below_one}, tail gap {tail:.2e}"),
        ))
    });
    r.check("operator-models", "K1 generator blocks", || {
        for n in 1..=5 {
            for k in 0..=n {
                let count = if k == 0 { n } else { n - 1 };
                let lists = (1..=count)
                    .map(|i| k1_generator_blocks(n, k, i))
                    .collect::<Result<Vec<_>>>()?;
                for (a, la) in lists.iter().enumerate() {
                    let non_id = la.iter().filter(|b| !b.is_identity()).count();
                    if !(1..=2).contains(&non_id) || lists[a + 1..].contains(la) {
                        return Ok((false, format!("(N,k) = ({n},{k})")));
                    }
                }
            }
        }
        Ok((true, "N <= 5".into()))
    });

    // k-theory
    r.check("k-theory", "groups match the table", || {
        let (ok, n) = all(&words, |w| {
            let cls = classify(w)?;
            let kg = kgroups(&cls)?;
            Ok((kg.k0, kg.k1) == classical_kgroups(cls.classical_type()?))
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("k-theory", "kernel/cokernel duality", || {
        let (ok, n) = all(&words, |w| {
            let ps = pair_structure(w)?;
            let ind = index_map(&ps)?;
            let (k0, k1) = groups_from_index(&ind);
            let rank = smith::rank(&ind.as_matrix());
            let g = ind.vector.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
            let expected_torsion = if g >= 2 { vec![g] } else { vec![] };
            Ok(k1.free_rank + rank == ps.n && k0.torsion == expected_torsion)
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("k-theory", "symbol classes in Ker(ind)", || {
        let (ok, n) = all(&words, |w| {
            let cls = classify(w)?;
            let q = cls.quantum_invariant()?;
            let ind = IndexMap::normal_form(q.n, q.k.max(0) as usize);
            Ok(k1_generator_presentation(&cls)?
                .iter()
                .all(|g| ind.apply(&g.symbol_class) == 0))
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("k-theory", "index map = pullback windings", || {
        let (ok, n) = all(&words, |w| {
            let ps = pair_structure(w)?;
            Ok(index_map_numeric(&ps, 256)? == index_map(&ps)?)
        })?;
        Ok((ok, format!("{n} words")))
    });
    r.check("k-theory", "iso words share K-groups", || {
        let subset: Vec<_> = words.iter().take(30).collect();
        for a in &subset {
            for b in &subset {
                if is_isomorphic(a, b, IsoMode::Quantum)?
                    && kgroups(&classify(a)?)? != kgroups(&classify(b)?)?
                {
                    return Ok((false, format!("{a} vs {b}")));
                }
            }
        }
        Ok((true, format!("{} words", subset.len())))
    });
    r.check("k-theory", "sphere", || {
        let cls = classify(&parse_word("aA")?)?;
        let kg = kgroups(&cls)?;
        Ok((
            (kg.k0.clone(), kg.k1.clone()) == classical_kgroups(cls.classical_type()?),
            format!("K0 = {}, K1 = {}", kg.k0, kg.k1),
        ))
    });

    VerifyReport {
        dim: d,
        tol,
        checks: r.checks,
    }
}
