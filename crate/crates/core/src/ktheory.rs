//! K-groups of closed quantum surfaces from the index map of the extension
//! `0 -> K -> C(M_q) -> C(wedge of N circles) -> 0`.
//!
//! With `K_1(K) = 0`, `K_0(K) = Z` and the wedge contributing `Z[1]` and
//! `Z^N`, the six-term sequence collapses to
//! `K_0 = Z / Im(ind) + Z[1]` and `K_1 = Ker(ind)`.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::curves::{winding_around, zeta_curve, CurveSample, SymbolCurve, C64};
use crate::error::{Error, Result};
use crate::operators::k1_generator_blocks;
use crate::smith::{cokernel, integer_kernel, IntMatrix};
use crate::word::{ClassicalType, PairStructure, SurfaceClass, SurfaceKind};

/// Finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_m`
/// with `t_1 | t_2 | ... | t_m`, all `t_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Self {
        debug_assert!(torsion.iter().all(|&t| t >= 2));
        debug_assert!(torsion.windows(2).all(|w| w[1] % w[0] == 0));
        Self { free_rank, torsion }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum with a free group of the given rank.
    pub fn plus_free(mut self, rank: usize) -> Self {
        self.free_rank += rank;
        self
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z_{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Images `ind[u_j]` of the generators of `K_1` of the wedge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexMap {
    pub vector: Vec<i64>,
}

impl IndexMap {
    /// `2` for each of the first `k` circles, `0` for the rest.
    pub fn normal_form(n: usize, k: usize) -> Self {
        Self {
            vector: (0..n).map(|j| if j < k { 2 } else { 0 }).collect(),
        }
    }

    pub fn apply(&self, class: &[i64]) -> i64 {
        self.vector.iter().zip(class).map(|(w, m)| w * m).sum()
    }

    pub fn as_matrix(&self) -> IntMatrix {
        DMatrix::from_row_slice(1, self.vector.len(), &self.vector)
    }
}

fn require_wedge(ps: &PairStructure) -> Result<()> {
    let cls = crate::word::classify_pairs(ps);
    match cls.kind {
        SurfaceKind::Orientable { .. } | SurfaceKind::NonOrientable { .. } => Ok(()),
        SurfaceKind::Sphere => Err(Error::UnsupportedWord(
            "the sphere has no wedge of circles on the boundary".into(),
        )),
        SurfaceKind::Unsupported { reason, .. } => Err(Error::UnsupportedWord(reason)),
    }
}

/// Index map in letter order: `2` at each same-orientation pair.
pub fn index_map(ps: &PairStructure) -> Result<IndexMap> {
    require_wedge(ps)?;
    Ok(IndexMap {
        vector: ps
            .same_orientation
            .iter()
            .map(|&s| if s { 2 } else { 0 })
            .collect(),
    })
}

/// The same vector computed numerically: winding around 0 of the pullback
/// along the classifying curve of `v_j` (identity on circle `j`, `1`
/// elsewhere).
pub fn index_map_numeric(ps: &PairStructure, samples_per_arc: usize) -> Result<IndexMap> {
    require_wedge(ps)?;
    let zeta = zeta_curve(ps, samples_per_arc)?;
    let vector = (1..=ps.n)
        .map(|j| {
            let pullback = SymbolCurve {
                samples: zeta
                    .samples
                    .iter()
                    .map(|s| CurveSample {
                        t: s.t,
                        value: if s.circle == j {
                            s.value
                        } else {
                            C64::new(1.0, 0.0)
                        },
                        circle: s.circle,
                    })
                    .collect(),
            };
            winding_around(&pullback, C64::new(0.0, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexMap { vector })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K1Generator {
    pub label: String,
    pub blocks: Vec<String>,
    /// Coefficients of the symbol class in the basis `[v_1], ..., [v_N]`.
    pub symbol_class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGroups {
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    #[serde(skip)]
    pub k0_generators: Vec<String>,
    pub k0_relations: Vec<String>,
    pub k1_generators: Vec<K1Generator>,
}

impl KGroups {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("KGroups serializes")
    }
}

/// `(K_0, K_1)` from an index vector, via Smith reduction of the 1 x N matrix.
pub fn groups_from_index(index: &IndexMap) -> (AbelianGroup, AbelianGroup) {
    let m = index.as_matrix();
    let k0 = cokernel(&m).plus_free(1);
    let k1 = AbelianGroup::free(integer_kernel(&m).ncols());
    (k0, k1)
}

fn invariant(cls: &SurfaceClass) -> Result<Option<(usize, usize)>> {
    match &cls.kind {
        SurfaceKind::Orientable { g } => Ok(Some((2 * g, 0))),
        SurfaceKind::NonOrientable { n, k } => Ok(Some((*n, *k))),
        SurfaceKind::Sphere => Ok(None),
        SurfaceKind::Unsupported { reason, .. } => Err(Error::UnsupportedWord(reason.clone())),
    }
}

pub const RELATION_TORSION: &str = "2([P_Bott]-[1])=0";
pub const RELATION_SHIFT: &str = "[1]-[P_Bott]=[1-SS*]";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K0Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    /// Where the concrete projection comes from.
    pub bott_matrix: String,
}

pub fn k0_generator_presentation(cls: &SurfaceClass) -> Result<K0Presentation> {
    let inv = invariant(cls)?;
    let mut relations = Vec::new();
    if matches!(inv, Some((_, k)) if k >= 1) {
        relations.push(RELATION_TORSION.to_string());
    }
    relations.push(RELATION_SHIFT.to_string());
    Ok(K0Presentation {
        generators: vec!["[1]".into(), "[P_Bott]".into()],
        relations,
        bott_matrix: "operators::bott_projection(operators::bergman_tz(d))".into(),
    })
}

fn unit(n: usize, j: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i == j)).collect()
}

pub fn k1_generator_presentation(cls: &SurfaceClass) -> Result<Vec<K1Generator>> {
    let Some((n, k)) = invariant(cls)? else {
        return Ok(Vec::new());
    };
    let labels = |blocks: Vec<crate::operators::BlockSpec>| -> Vec<String> {
        blocks.into_iter().map(|b| b.label).collect()
    };
    if k == 0 {
        return (1..=n)
            .map(|j| {
                Ok(K1Generator {
                    label: format!("U_{j}"),
                    blocks: labels(k1_generator_blocks(n, 0, j)?),
                    symbol_class: unit(n, j - 1),
                })
            })
            .collect();
    }
    (1..n)
        .map(|i| {
            // v_{1,i+1} inverts circle 1 only when circle i+1 is a
            // same-orientation circle; otherwise it is plain v_{i+1}
            let mut class = unit(n, i);
            if i < k {
                class[0] = -1;
            }
            Ok(K1Generator {
                label: format!("V_{i}"),
                blocks: labels(k1_generator_blocks(n, k, i)?),
                symbol_class: class,
            })
        })
        .collect()
}

pub fn kgroups(cls: &SurfaceClass) -> Result<KGroups> {
    let (k0, k1) = match invariant(cls)? {
        Some((n, k)) => groups_from_index(&IndexMap::normal_form(n, k)),
        // the boundary quotient is an interval: only K_0(K) and [1] survive
        None => (AbelianGroup::free(2), AbelianGroup::trivial()),
    };
    let k0p = k0_generator_presentation(cls)?;
    Ok(KGroups {
        k0,
        k1,
        k0_generators: k0p.generators,
        k0_relations: k0p.relations,
        k1_generators: k1_generator_presentation(cls)?,
    })
}

/// Topological K-groups of the classical surfaces.
pub fn classical_kgroups(t: ClassicalType) -> (AbelianGroup, AbelianGroup) {
    match t {
        ClassicalType::Sphere => (AbelianGroup::free(2), AbelianGroup::trivial()),
        ClassicalType::Orientable(g) => (AbelianGroup::free(2), AbelianGroup::free(2 * g)),
        ClassicalType::NonOrientable(n) => {
            (AbelianGroup::new(1, vec![2]), AbelianGroup::free(n - 1))
        }
    }
}
