//! Boundary words: arc identifications on the circle bounding the disk.
//!
//! A word lists the 2N arcs of the boundary in counterclockwise order. Each
//! letter occurs twice; the sign records whether the arc is traversed along
//! (`+1`) or against (`-1`) the counterclockwise direction when it is glued to
//! its partner.
//!
//! Two textual forms are accepted:
//!
//! * compact: `abAB`, one character per arc, uppercase meaning inverse;
//! * long: `a1 b1 a1^-1 b1^-1`, identifiers separated by whitespace or commas.
//!
//! Rendering always emits the long form.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedLetter {
    pub letter: usize,
    pub sign: Sign,
}

impl OrientedLetter {
    pub fn new(letter: usize, sign: Sign) -> Self {
        Self { letter, sign }
    }
}

/// A parsed boundary word. Letter ids are assigned in order of first
/// appearance, so they always form the range `0..alphabet_len()`.
#[derive(Debug, Clone)]
pub struct BoundaryWord {
    letters: Vec<OrientedLetter>,
    names: Vec<String>,
    source_text: String,
}

impl PartialEq for BoundaryWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.names == other.names
    }
}

impl Eq for BoundaryWord {}

fn default_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count)
            .map(|i| char::from(b'a' + i as u8).to_string())
            .collect()
    } else {
        (0..count).map(|i| format!("x{}", i + 1)).collect()
    }
}

impl BoundaryWord {
    /// Builds a word from arbitrary letter labels. Labels are renumbered in
    /// order of first appearance and given default names.
    pub fn from_letters(letters: &[(usize, Sign)]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("empty word".into()));
        }
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let normalized: Vec<OrientedLetter> = letters
            .iter()
            .map(|&(label, sign)| {
                let next = relabel.len();
                let id = *relabel.entry(label).or_insert(next);
                OrientedLetter::new(id, sign)
            })
            .collect();
        let names = default_names(relabel.len());
        let mut word = Self {
            letters: normalized,
            names,
            source_text: String::new(),
        };
        word.source_text = word.render();
        Ok(word)
    }

    pub fn letters(&self) -> &[OrientedLetter] {
        &self.letters
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_len(&self) -> usize {
        self.names.len()
    }

    /// Canonical long form, e.g. `a b a^-1 b^-1`.
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l.sign {
                Sign::Pos => self.names[l.letter].clone(),
                Sign::Neg => format!("{}^-1", self.names[l.letter]),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Compact form, available when every name is a single lowercase letter.
    pub fn compact(&self) -> Option<String> {
        let single = self
            .names
            .iter()
            .all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase());
        if !single {
            return None;
        }
        Some(
            self.letters
                .iter()
                .map(|l| {
                    let c = self.names[l.letter].as_bytes()[0] as char;
                    match l.sign {
                        Sign::Pos => c,
                        Sign::Neg => c.to_ascii_uppercase(),
                    }
                })
                .collect(),
        )
    }

    fn signed_labels(&self) -> Vec<(usize, Sign)> {
        self.letters.iter().map(|l| (l.letter, l.sign)).collect()
    }

    /// Cyclic rotation: the arc at position `shift` becomes the first arc.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut labels = self.signed_labels();
        let len = labels.len();
        labels.rotate_left(shift % len);
        Self::from_letters(&labels).expect("nonempty")
    }

    /// Swaps every sign.
    pub fn flipped(&self) -> Self {
        let labels: Vec<_> = self
            .signed_labels()
            .into_iter()
            .map(|(l, s)| (l, s.flipped()))
            .collect();
        Self::from_letters(&labels).expect("nonempty")
    }

    /// Reads the circle clockwise: reverses the order and inverts every arc.
    pub fn mirrored(&self) -> Self {
        let labels: Vec<_> = self
            .signed_labels()
            .into_iter()
            .rev()
            .map(|(l, s)| (l, s.flipped()))
            .collect();
        Self::from_letters(&labels).expect("nonempty")
    }

    /// Applies a permutation to the letter ids (`perm[old] = new`).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let labels: Vec<_> = self
            .signed_labels()
            .into_iter()
            .map(|(l, s)| (perm[l], s))
            .collect();
        Self::from_letters(&labels).expect("nonempty")
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for BoundaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == ','
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

struct Builder {
    ids: HashMap<String, usize>,
    names: Vec<String>,
    letters: Vec<OrientedLetter>,
}

impl Builder {
    fn new() -> Self {
        Self {
            ids: HashMap::new(),
            names: Vec::new(),
            letters: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, sign: Sign) {
        let id = match self.ids.get(name) {
            Some(&id) => id,
            None => {
                let id = self.names.len();
                self.ids.insert(name.to_string(), id);
                self.names.push(name.to_string());
                id
            }
        };
        self.letters.push(OrientedLetter::new(id, sign));
    }
}

/// Parses either the compact or the long word syntax. Offsets in errors are
/// byte offsets into `text`.
pub fn parse_word(text: &str) -> Result<BoundaryWord> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(parse_err(0, "empty word"));
    }
    let long = body
        .chars()
        .any(|c| is_separator(c) || c == '^' || c.is_ascii_digit());

    let mut builder = Builder::new();
    if long {
        parse_long(body, start, &mut builder)?;
    } else {
        for (i, c) in body.char_indices() {
            if !c.is_ascii_alphabetic() {
                return Err(parse_err(start + i, format!("unexpected character {c:?}")));
            }
            let sign = if c.is_ascii_lowercase() {
                Sign::Pos
            } else {
                Sign::Neg
            };
            builder.push(&c.to_ascii_lowercase().to_string(), sign);
        }
    }

    Ok(BoundaryWord {
        letters: builder.letters,
        names: builder.names,
        source_text: text.to_string(),
    })
}

fn parse_long(body: &str, base: usize, builder: &mut Builder) -> Result<()> {
    let bytes = body.as_bytes();
    let mut pos = 0;
    let mut expect_token = true;
    while pos < bytes.len() {
        // separator run: any whitespace, at most one comma
        let sep_start = pos;
        let mut commas = 0;
        while pos < bytes.len() {
            let c = body[pos..].chars().next().unwrap();
            if !is_separator(c) {
                break;
            }
            if c == ',' {
                commas += 1;
                if commas > 1 || sep_start == 0 {
                    return Err(parse_err(base + pos, "empty token"));
                }
            }
            pos += c.len_utf8();
        }
        if pos == bytes.len() {
            if commas > 0 {
                return Err(parse_err(base + pos - 1, "trailing separator"));
            }
            break;
        }
        if !expect_token && pos == sep_start {
            return Err(parse_err(base + pos, "missing separator"));
        }

        let tok_start = pos;
        let first = body[pos..].chars().next().unwrap();
        if !first.is_ascii_alphabetic() {
            return Err(parse_err(
                base + pos,
                format!("unexpected character {first:?}"),
            ));
        }
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
            pos += 1;
        }
        let ident = &body[tok_start..pos];
        let mut sign = Sign::Pos;
        if pos < bytes.len() && bytes[pos] == b'^' {
            if body[pos..].starts_with("^-1") {
                sign = Sign::Neg;
                pos += 3;
            } else {
                return Err(parse_err(base + pos, "expected `^-1`"));
            }
        }
        if pos < bytes.len() {
            let c = body[pos..].chars().next().unwrap();
            if !is_separator(c) {
                return Err(parse_err(base + pos, format!("unexpected character {c:?}")));
            }
        }
        let has_digit = ident.bytes().any(|b| b.is_ascii_digit());
        let has_upper = ident.bytes().any(|b| b.is_ascii_uppercase());
        if has_upper && !has_digit {
            return Err(Error::MixedSyntax {
                offset: base + tok_start,
            });
        }
        builder.push(ident, sign);
        expect_token = false;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub position: usize,
    pub sign: Sign,
}

/// How the letters of a word pair up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStructure {
    pub n: usize,
    pub occurrences: Vec<[Occurrence; 2]>,
    pub same_orientation: Vec<bool>,
    pub k: usize,
}

impl PairStructure {
    pub fn len(&self) -> usize {
        2 * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

pub fn pair_structure(word: &BoundaryWord) -> Result<PairStructure> {
    let mut table: Vec<Vec<Occurrence>> = vec![Vec::new(); word.alphabet_len()];
    for (position, l) in word.letters().iter().enumerate() {
        table[l.letter].push(Occurrence {
            position,
            sign: l.sign,
        });
    }
    let mut occurrences = Vec::with_capacity(table.len());
    for (id, occ) in table.into_iter().enumerate() {
        if occ.len() != 2 {
            return Err(Error::NotPaired {
                letter: word.names()[id].clone(),
                count: occ.len(),
            });
        }
        occurrences.push([occ[0], occ[1]]);
    }
    let same_orientation: Vec<bool> = occurrences.iter().map(|[a, b]| a.sign == b.sign).collect();
    let k = same_orientation.iter().filter(|&&s| s).count();
    Ok(PairStructure {
        n: occurrences.len(),
        occurrences,
        same_orientation,
        k,
    })
}

/// Partition of the arc endpoints `P_0..P_{2N-1}`; `P_i` sits between arc `i`
/// and arc `i+1`, so arc `i` runs from `P_{i-1}` to `P_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub classes: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

pub(crate) fn partition_from_pairs(ps: &PairStructure) -> VertexPartition {
    let len = ps.len();
    let prev = |i: usize| (i + len - 1) % len;
    let mut uf = UnionFind::<usize>::new(len);
    for [a, b] in &ps.occurrences {
        let (i, j) = (a.position, b.position);
        if a.sign == b.sign {
            uf.union(prev(i), prev(j));
            uf.union(i, j);
        } else {
            uf.union(prev(i), j);
            uf.union(i, prev(j));
        }
    }
    let labels = uf.into_labeling();
    let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
    for (endpoint, root) in labels.into_iter().enumerate() {
        match by_root.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(endpoint),
            None => by_root.push((root, vec![endpoint])),
        }
    }
    VertexPartition {
        classes: by_root.into_iter().map(|(_, m)| m).collect(),
    }
}

pub fn vertex_classes(word: &BoundaryWord) -> Result<VertexPartition> {
    Ok(partition_from_pairs(&pair_structure(word)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurfaceKind {
    Orientable {
        g: usize,
    },
    NonOrientable {
        n: usize,
        k: usize,
    },
    Sphere,
    Unsupported {
        reason: String,
        vertices: usize,
        edges: usize,
        cycle_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceClass {
    pub kind: SurfaceKind,
    pub n_pairs: usize,
    pub euler_characteristic: i64,
    pub vertex_classes: usize,
}

impl SurfaceClass {
    pub fn is_supported(&self) -> bool {
        !matches!(self.kind, SurfaceKind::Unsupported { .. })
    }

    pub fn orientable(g: usize) -> Self {
        Self {
            kind: SurfaceKind::Orientable { g },
            n_pairs: 2 * g,
            euler_characteristic: 2 - 2 * g as i64,
            vertex_classes: 1,
        }
    }

    pub fn non_orientable(n: usize, k: usize) -> Self {
        Self {
            kind: SurfaceKind::NonOrientable { n, k },
            n_pairs: n,
            euler_characteristic: 2 - n as i64,
            vertex_classes: 1,
        }
    }

    pub fn sphere() -> Self {
        Self {
            kind: SurfaceKind::Sphere,
            n_pairs: 1,
            euler_characteristic: 2,
            vertex_classes: 2,
        }
    }

    pub fn quantum_invariant(&self) -> Result<QuantumInvariant> {
        match &self.kind {
            SurfaceKind::Orientable { g } => Ok(QuantumInvariant { n: 2 * g, k: 0 }),
            SurfaceKind::NonOrientable { n, k } => Ok(QuantumInvariant {
                n: *n,
                k: *k as i64,
            }),
            SurfaceKind::Sphere => Ok(QuantumInvariant::SPHERE),
            SurfaceKind::Unsupported { reason, .. } => Err(Error::UnsupportedWord(reason.clone())),
        }
    }

    pub fn classical_type(&self) -> Result<ClassicalType> {
        match &self.kind {
            SurfaceKind::Orientable { g } => Ok(ClassicalType::Orientable(*g)),
            SurfaceKind::NonOrientable { n, .. } => Ok(ClassicalType::NonOrientable(*n)),
            SurfaceKind::Sphere => Ok(ClassicalType::Sphere),
            SurfaceKind::Unsupported { reason, .. } => Err(Error::UnsupportedWord(reason.clone())),
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SurfaceKind::Orientable { g } => write!(f, "orientable genus {g}"),
            SurfaceKind::NonOrientable { n, k } => {
                write!(
                    f,
                    "non-orientable Euler genus {n} with {k} same-orientation pairs"
                )
            }
            SurfaceKind::Sphere => write!(f, "sphere"),
            SurfaceKind::Unsupported { reason, .. } => write!(f, "unsupported ({reason})"),
        }
    }
}

/// Classifies the classical surface and records the data needed for the
/// quantum invariant.
pub fn classify(word: &BoundaryWord) -> Result<SurfaceClass> {
    let ps = pair_structure(word)?;
    Ok(classify_pairs(&ps))
}

pub(crate) fn classify_pairs(ps: &PairStructure) -> SurfaceClass {
    let vertices = partition_from_pairs(ps).count();
    let n = ps.n;
    let euler_characteristic = vertices as i64 - n as i64 + 1;

    if n == 1 && ps.k == 0 && vertices == 2 {
        return SurfaceClass::sphere();
    }
    if vertices == 1 {
        if ps.k == 0 {
            assert!(
                n.is_multiple_of(2),
                "single-vertex orientable word with odd pair count"
            );
            return SurfaceClass::orientable(n / 2);
        }
        return SurfaceClass::non_orientable(n, ps.k);
    }
    let cycle_rank = n + 1 - vertices;
    SurfaceClass {
        kind: SurfaceKind::Unsupported {
            reason: format!(
                "{vertices} vertex classes; boundary quotient is a graph with V={vertices}, E={n}, cycle rank {cycle_rank}, not a wedge of {n} circles"
            ),
            vertices,
            edges: n,
            cycle_rank,
        },
        n_pairs: n,
        euler_characteristic,
        vertex_classes: vertices,
    }
}

/// The pair `(N, k)`. The quantum sphere uses the sentinel `(1, -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumInvariant {
    pub n: usize,
    pub k: i64,
}

impl QuantumInvariant {
    pub const SPHERE: QuantumInvariant = QuantumInvariant { n: 1, k: -1 };

    pub fn is_sphere(&self) -> bool {
        *self == Self::SPHERE
    }
}

impl fmt::Display for QuantumInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

pub fn quantum_invariant(word: &BoundaryWord) -> Result<QuantumInvariant> {
    classify(word)?.quantum_invariant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalType {
    Sphere,
    Orientable(usize),
    NonOrientable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    Classical,
    Quantum,
}

pub fn is_isomorphic(a: &BoundaryWord, b: &BoundaryWord, mode: IsoMode) -> Result<bool> {
    let (ca, cb) = (classify(a)?, classify(b)?);
    match mode {
        IsoMode::Quantum => Ok(ca.quantum_invariant()? == cb.quantum_invariant()?),
        IsoMode::Classical => Ok(ca.classical_type()? == cb.classical_type()?),
    }
}

/// A single-vertex word realizing the invariant `(n, k)`.
///
/// `k = 0` gives `g = n/2` commutators; otherwise `k - 1` cross-caps `xx`,
/// then one Klein block `x y x y^-1` when `n - k` is odd (it contributes one
/// same and one opposite pair), then commutators for the rest. When `n - k`
/// is even the Klein block is replaced by a plain cross-cap.
pub fn normal_form_word(n: usize, k: usize) -> Result<BoundaryWord> {
    if n == 0 || k > n || (k == 0 && n % 2 == 1) {
        return Err(Error::InvalidInvariant {
            n: n as i64,
            k: k as i64,
        });
    }
    let mut labels = Vec::with_capacity(2 * n);
    let mut next = 0;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut remaining_opposite = n - k;
    if k > 0 {
        for _ in 0..k - 1 {
            let x = fresh();
            labels.extend([(x, Sign::Pos), (x, Sign::Pos)]);
        }
        if remaining_opposite % 2 == 1 {
            let (x, y) = (fresh(), fresh());
            labels.extend([
                (x, Sign::Pos),
                (y, Sign::Pos),
                (x, Sign::Pos),
                (y, Sign::Neg),
            ]);
            remaining_opposite -= 1;
        } else {
            let x = fresh();
            labels.extend([(x, Sign::Pos), (x, Sign::Pos)]);
        }
    }
    for _ in 0..remaining_opposite / 2 {
        let (x, y) = (fresh(), fresh());
        labels.extend([
            (x, Sign::Pos),
            (y, Sign::Pos),
            (x, Sign::Neg),
            (y, Sign::Neg),
        ]);
    }
    BoundaryWord::from_letters(&labels)
}

/// Uniformly shuffled paired word on `n` letters with independent random signs.
pub fn random_paired_word<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BoundaryWord {
    let mut labels: Vec<(usize, Sign)> = (0..n)
        .flat_map(|l| [l, l])
        .map(|l| (l, if rng.gen() { Sign::Pos } else { Sign::Neg }))
        .collect();
    labels.shuffle(rng);
    BoundaryWord::from_letters(&labels).expect("n >= 1")
}

/// Rejection-samples [`random_paired_word`] until the word has a single
/// vertex class.
pub fn random_single_vertex_word<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BoundaryWord {
    loop {
        let w = random_paired_word(rng, n);
        if vertex_classes(&w).map(|p| p.count() == 1).unwrap_or(false) {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BoundaryWord {
        parse_word(s).unwrap()
    }

    fn signs(word: &BoundaryWord) -> Vec<(usize, i32)> {
        word.letters()
            .iter()
            .map(|l| (l.letter, l.sign.value()))
            .collect()
    }

    #[test]
    fn compact_and_long_forms() {
        assert_eq!(signs(&w("abAB")), vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert_eq!(signs(&w("a1 b1 a1^-1 b1^-1")), signs(&w("abAB")));
        assert_eq!(signs(&w("x, y,x^-1 ,y^-1")), signs(&w("abAB")));
        assert_eq!(w("  aa ").source_text(), "  aa ");
    }

    #[test]
    fn parse_errors_report_offsets() {
        assert_eq!(
            parse_word("a#b").unwrap_err(),
            Error::Parse {
                offset: 1,
                message: "unexpected character '#'".into()
            }
        );
        assert!(matches!(
            parse_word("   "),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_word("a b^2"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_word("a,,b"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse_word("a b,"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_word("1a a"),
            Err(Error::Parse { offset: 0, .. })
        ));
    }

    #[test]
    fn mixed_syntax_rejected() {
        assert_eq!(
            parse_word("abAB c1").unwrap_err(),
            Error::MixedSyntax { offset: 0 }
        );
        assert_eq!(
            parse_word("a b A B").unwrap_err(),
            Error::MixedSyntax { offset: 4 }
        );
    }

    #[test]
    fn render_is_long_form() {
        assert_eq!(w("abAB").render(), "a b a^-1 b^-1");
        assert_eq!(w("a1 a1").compact(), None);
        assert_eq!(w("abAB").compact().unwrap(), "abAB");
    }

    #[test]
    fn pair_structure_counts() {
        let ps = pair_structure(&w("abAB")).unwrap();
        assert_eq!((ps.n, ps.k), (2, 0));
        let ps = pair_structure(&w("aa")).unwrap();
        assert_eq!((ps.n, ps.k), (1, 1));
        assert_eq!(
            pair_structure(&w("aba")).unwrap_err(),
            Error::NotPaired {
                letter: "b".into(),
                count: 1
            }
        );
    }

    #[test]
    fn vertex_partitions() {
        assert_eq!(
            vertex_classes(&w("abAB")).unwrap().classes,
            vec![vec![0, 1, 2, 3]]
        );
        assert_eq!(
            vertex_classes(&w("aA")).unwrap().classes,
            vec![vec![0], vec![1]]
        );
        assert_eq!(
            vertex_classes(&w("abab")).unwrap().classes,
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn classification_examples() {
        let c = classify(&w("abAB")).unwrap();
        assert_eq!(c.kind, SurfaceKind::Orientable { g: 1 });
        assert_eq!(c.euler_characteristic, 0);

        let c = classify(&w("aabb")).unwrap();
        assert_eq!(c.kind, SurfaceKind::NonOrientable { n: 2, k: 2 });
        assert_eq!(c.euler_characteristic, 0);

        assert_eq!(classify(&w("aA")).unwrap().kind, SurfaceKind::Sphere);

        match classify(&w("abab")).unwrap().kind {
            SurfaceKind::Unsupported {
                vertices,
                cycle_rank,
                ..
            } => assert_eq!((vertices, cycle_rank), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adjacent_cancelling_pair_is_multi_vertex() {
        // `bB` folds onto itself and leaves a cone point, so these are not
        // wedges of circles.
        for s in ["aabB", "aaBb", "aabbcC"] {
            let c = classify(&w(s)).unwrap();
            assert!(!c.is_supported(), "{s}");
            assert!(matches!(
                quantum_invariant(&w(s)),
                Err(Error::UnsupportedWord(_))
            ));
        }
    }

    #[test]
    fn quantum_invariants() {
        assert_eq!(
            quantum_invariant(&w("abAB")).unwrap(),
            QuantumInvariant { n: 2, k: 0 }
        );
        assert_eq!(
            quantum_invariant(&w("aabb")).unwrap(),
            QuantumInvariant { n: 2, k: 2 }
        );
        assert_eq!(
            quantum_invariant(&w("abaB")).unwrap(),
            QuantumInvariant { n: 2, k: 1 }
        );
        assert_eq!(
            quantum_invariant(&w("aA")).unwrap(),
            QuantumInvariant::SPHERE
        );
    }

    #[test]
    fn isomorphism_modes() {
        let (a, b) = (w("abaB"), w("abAb"));
        assert!(is_isomorphic(&a, &b, IsoMode::Quantum).unwrap());
        let (p, q) = (w("aabb"), w("abaB"));
        assert!(is_isomorphic(&p, &q, IsoMode::Classical).unwrap());
        assert!(!is_isomorphic(&p, &q, IsoMode::Quantum).unwrap());
        assert!(is_isomorphic(&w("abAB"), &w("abAB"), IsoMode::Quantum).unwrap());
        assert!(!is_isomorphic(&w("aA"), &w("aa"), IsoMode::Quantum).unwrap());
        assert!(is_isomorphic(&w("aA"), &w("abab"), IsoMode::Quantum).is_err());
    }

    #[test]
    fn normal_forms_realize_every_invariant() {
        for n in 1..=6 {
            for k in 0..=n {
                if k == 0 && n % 2 == 1 {
                    assert!(normal_form_word(n, k).is_err());
                    continue;
                }
                let word = normal_form_word(n, k).unwrap();
                let inv = quantum_invariant(&word).unwrap();
                assert_eq!(inv, QuantumInvariant { n, k: k as i64 }, "{word}");
            }
        }
        assert_eq!(normal_form_word(2, 0).unwrap().compact().unwrap(), "abAB");
        assert_eq!(normal_form_word(2, 1).unwrap().compact().unwrap(), "abaB");
    }

    #[test]
    fn transformations_keep_ids_contiguous() {
        let word = w("abAB").rotated(1);
        assert_eq!(word.compact().unwrap(), "aBAb");
        assert_eq!(w("abaB").mirrored().compact().unwrap(), "aBAB");
        let m = w("aabcbC").mirrored();
        assert_eq!(m.alphabet_len(), 3);
        assert_eq!(m.letters()[0].letter, 0);
    }
}
