//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use qsurface::curves::{
    arc_parametrization, circle_windings, earring, numeric_windings, zeta_curve, SurfaceFamily,
    SymbolCurve,
};
use qsurface::ktheory::{kgroups, AbelianGroup};
use qsurface::linalg::{identity, spectral_norm};
use qsurface::operators::{
    bergman_tz, bott_isometry, bott_projection, fredholm_index, generator_spectrum,
};
use qsurface::smith::{cokernel, integer_kernel, smith_normal_form};
use qsurface::verify::corpus;
use qsurface::word::{
    classify, is_isomorphic, normal_form_word, pair_structure, parse_word, quantum_invariant,
    random_single_vertex_word, BoundaryWord, IsoMode, SurfaceKind,
};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn c1_kgroup_table() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(BoundaryWord, SurfaceKind, AbelianGroup, AbelianGroup)> = Vec::new();
    for g in 1..=3 {
        let (k0, k1) = (
            AbelianGroup::new(2, vec![]),
            AbelianGroup::new(2 * g, vec![]),
        );
        let kind = SurfaceKind::Orientable { g };
        cases.push((
            normal_form_word(2 * g, 0).map_err(e)?,
            kind.clone(),
            k0.clone(),
            k1.clone(),
        ));
        let arcs = arc_parametrization(SurfaceFamily::Orientable(g)).map_err(e)?;
        cases.push((arcs.word, kind, k0, k1));
    }
    for n in 1..=4 {
        let (k0, k1) = (
            AbelianGroup::new(1, vec![2]),
            AbelianGroup::new(n - 1, vec![]),
        );
        for k in 1..=n {
            let kind = SurfaceKind::NonOrientable { n, k };
            cases.push((
                normal_form_word(n, k).map_err(e)?,
                kind,
                k0.clone(),
                k1.clone(),
            ));
        }
        let arcs = arc_parametrization(SurfaceFamily::NonOrientable(n)).map_err(e)?;
        cases.push((arcs.word, SurfaceKind::NonOrientable { n, k: n }, k0, k1));
    }
    cases.push((
        parse_word("aA").map_err(e)?,
        SurfaceKind::Sphere,
        AbelianGroup::new(2, vec![]),
        AbelianGroup::new(0, vec![]),
    ));
    for (w, kind, k0, k1) in &cases {
        let cls = classify(w).map_err(e)?;
        ensure(&cls.kind == kind, || {
            format!("{w}: {:?}, expected {kind:?}", cls.kind)
        })?;
        let kg = kgroups(&cls).map_err(e)?;
        ensure(&kg.k0 == k0 && &kg.k1 == k1, || {
            format!("{w}: K0 = {}, K1 = {}; expected {k0}, {k1}", kg.k0, kg.k1)
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{} words in {elapsed:.2?}", cases.len()))
}

fn c2_isomorphism() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2);
    let words: Vec<BoundaryWord> = (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random_single_vertex_word(&mut rng, n)
        })
        .collect();
    let mut invariants = Vec::with_capacity(words.len());
    for w in &words {
        ensure(common::vertex_count(w) == 1, || {
            format!("{w} is not single-vertex")
        })?;
        let (n, k) = common::pair_counts(w);
        let q = quantum_invariant(w).map_err(e)?;
        ensure((q.n, q.k) == (n, k as i64), || {
            format!("{w}: {q}, expected ({n},{k})")
        })?;
        let mut perm: Vec<usize> = (0..w.alphabet_len()).collect();
        perm.shuffle(&mut rng);
        let shift = rng.gen_range(0..w.len());
        for v in [
            w.relabeled(&perm),
            w.rotated(shift),
            w.flipped(),
            w.mirrored(),
        ] {
            let qv = quantum_invariant(&v).map_err(e)?;
            ensure(qv == q, || format!("{w} -> {v}: {q} vs {qv}"))?;
        }
        invariants.push((n, k));
    }
    for (a, ia) in words.iter().zip(&invariants) {
        for (b, ib) in words.iter().zip(&invariants) {
            let iso = is_isomorphic(a, b, IsoMode::Quantum).map_err(e)?;
            ensure(iso == (ia == ib), || format!("{a} vs {b}: iso = {iso}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    let classes = {
        let mut v = invariants.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    Ok(format!(
        "200 words, {classes} classes, 40000 pairs in {elapsed:.2?}"
    ))
}

fn c3_windings() -> Outcome {
    let mut words = corpus(40, 3);
    for s in [
        "aa", "abAB", "aabb", "abaB", "abcdABCD", "aabcbC", "AbAB", "abacbC", "abccba",
    ] {
        words.push(parse_word(s).map_err(e)?);
    }
    let mut worst = 0.0f64;
    for w in &words {
        let ps = pair_structure(w).map_err(e)?;
        let curve = zeta_curve(&ps, 1024).map_err(e)?;
        let numeric = numeric_windings(&curve, ps.n).map_err(e)?;
        let combinatorial = circle_windings(&ps).map_err(e)?;
        ensure(numeric == combinatorial, || {
            format!("{w}: {numeric:?} vs {combinatorial:?}")
        })?;
        let (_, k) = common::pair_counts(w);
        ensure(numeric.around_zero == 2 * k as i64, || {
            format!("{w}: around 0 = {}", numeric.around_zero)
        })?;

        let x = earring(ps.n).map_err(e)?;
        let around = common::phase_turns(&curve, Complex64::new(0.0, 0.0), |_| true);
        let mut residuals = vec![around - numeric.around_zero as f64];
        for j in 1..=ps.n {
            let t = common::phase_turns(&curve, x.circle(j).center_c(), |c| c == j);
            residuals.push(t - numeric.per_circle[j - 1] as f64);
            if combinatorial.per_circle[j - 1] == 2 {
                ensure((t - 2.0).abs() < 0.01, || {
                    format!("{w}: circle {j} winds {t}")
                })?;
            }
        }
        worst = residuals.iter().fold(worst, |m, r| m.max(r.abs()));
    }
    ensure(worst < 0.01, || format!("residual {worst:.3e} turn"))?;
    Ok(format!(
        "{} words, max residual {worst:.2e} turn",
        words.len()
    ))
}

fn c4_index_law() -> Outcome {
    let zero = Complex64::new(0.0, 0.0);
    for k in -5..=5 {
        let ind = fredholm_index(&SymbolCurve::unit_power(k, 1024), zero).map_err(e)?;
        ensure(ind == -(k as i64), || format!("ind(u^{k}) = {ind}"))?;
    }
    Ok("ind(u^k) = -k for k in -5..=5".into())
}

fn c5_bott() -> Outcome {
    let start = Instant::now();
    let t = bergman_tz(256).map_err(e)?;
    let p = bott_projection(&t).map_err(e)?;
    let v = bott_isometry(&t).map_err(e)?;
    let idem = spectral_norm(&(&p * &p - &p));
    let herm = spectral_norm(&(&p - p.adjoint()));
    let iso = spectral_norm(&(v.adjoint() * &v - identity(256)));
    let elapsed = start.elapsed();
    let detail =
        format!("|P^2-P| = {idem:.2e}, |P-P*| = {herm:.2e}, |V*V-I| = {iso:.2e}, {elapsed:.2?}");
    ensure(idem <= 1e-10 && herm <= 1e-12 && iso <= 1e-12, || {
        detail.clone()
    })?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(detail)
}

fn c6_spectra() -> Outcome {
    let d = 512;
    let mut worst_eig = 0.0f64;
    let mut worst_sym = 0.0f64;
    let mut counted = 0;
    for (n, k) in [(2usize, 0i64), (3, 1), (4, 2)] {
        let report = generator_spectrum(n, k, d).map_err(e)?;
        for b in &report.blocks {
            let j = b.block as f64;
            let off = |z: Complex64| ((z + 1.0 / j).norm() - (j + 1.0) / j).abs();
            if b.bilateral {
                ensure(b.eigenvalues.len() == d, || {
                    format!("block {} has {} eigenvalues", b.block, b.eigenvalues.len())
                })?;
                // each eigenvalue is ((j+1)/j) w^m - 1/j for a distinct m
                let tau = 2.0 * std::f64::consts::PI;
                let mut hit = vec![false; d];
                for p in &b.eigenvalues {
                    let turns = ((p.value + 1.0 / j) * j / (j + 1.0)).arg() / tau * d as f64;
                    let m = turns.round();
                    let gap = (turns - m).abs() * tau / d as f64;
                    ensure(gap < 1e-9, || {
                        format!("({n},{k}) block {}: angle off by {gap:.2e}", b.block)
                    })?;
                    hit[(m as i64).rem_euclid(d as i64) as usize] = true;
                }
                ensure(hit.iter().all(|&h| h), || {
                    format!("({n},{k}) block {}: roots of unity missed", b.block)
                })?;
                for p in &b.eigenvalues {
                    worst_eig = worst_eig.max(off(p.value));
                }
                counted += b.eigenvalues.len();
            } else {
                for p in &b.symbol_image {
                    worst_sym = worst_sym.max(off(p.value));
                }
            }
        }
    }
    ensure(worst_eig <= 1e-9 && worst_sym <= 1e-14, || {
        format!("eigenvalue deviation {worst_eig:.2e}, symbol deviation {worst_sym:.2e}")
    })?;
    Ok(format!(
        "{counted} circulant eigenvalues within {worst_eig:.2e}, symbol images within {worst_sym:.2e}"
    ))
}

fn c7_torsion() -> Outcome {
    let relation = "2([P_Bott]-[1])=0";
    let mut words: Vec<BoundaryWord> = Vec::new();
    for n in 1..=6 {
        for k in 0..=n {
            if let Ok(w) = normal_form_word(n, k) {
                words.push(w);
            }
        }
    }
    words.extend(corpus(40, 7));
    for w in &words {
        let (_, k) = common::pair_counts(w);
        let kg = kgroups(&classify(w).map_err(e)?).map_err(e)?;
        let has_relation = kg.k0_relations.iter().any(|r| r == relation);
        if k >= 1 {
            ensure(kg.k0.torsion == vec![2] && has_relation, || {
                format!("{w}: K0 = {}", kg.k0)
            })?;
        } else {
            ensure(kg.k0.torsion.is_empty() && !has_relation, || {
                format!("{w}: K0 = {}", kg.k0)
            })?;
        }
    }
    Ok(format!("{} words", words.len()))
}

fn c8_smith() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut kernel_points = 0;
    for _ in 0..100 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = DMatrix::from_fn(m, n, |_, _| rng.gen_range(-3i64..=3));
        let factors = common::invariant_factors(&a);
        let rank = factors.len();

        let snf = smith_normal_form(&a);
        ensure(snf.invariant_factors() == factors, || {
            format!(
                "{a}: factors {:?}, oracle {factors:?}",
                snf.invariant_factors()
            )
        })?;

        let coker = cokernel(&a);
        let torsion: Vec<i64> = factors.iter().copied().filter(|&f| f > 1).collect();
        ensure(
            coker == AbelianGroup::new(m - rank, torsion.clone()),
            || {
                format!(
                    "{a}: cokernel {coker}, oracle free {} torsion {torsion:?}",
                    m - rank
                )
            },
        )?;

        let k = integer_kernel(&a);
        ensure(k.ncols() == n - rank, || {
            format!("{a}: kernel rank {}", k.ncols())
        })?;
        ensure((&a * &k).iter().all(|&x| x == 0), || {
            format!("{a}: A K != 0")
        })?;
        if k.ncols() > 0 {
            ensure(common::determinantal_divisor(&k, k.ncols()) == 1, || {
                format!("{a}: kernel basis not saturated")
            })?;
        }
        for x in common::kernel_points(&a, 3) {
            ensure(common::in_integer_span(&k, &x), || {
                format!("{a}: {x} not in kernel span")
            })?;
            kernel_points += 1;
        }
    }
    Ok(format!(
        "100 matrices, {kernel_points} kernel points enumerated"
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("1 K-group table", c1_kgroup_table),
        ("2 isomorphism classification", c2_isomorphism),
        ("3 winding oracle equivalence", c3_windings),
        ("4 index law", c4_index_law),
        ("5 Bott projection", c5_bott),
        ("6 spectral geometry", c6_spectra),
        ("7 torsion relation", c7_torsion),
        ("8 Smith oracle", c8_smith),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name:<30} {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<30} {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
