//! Finite abstract simplicial complexes on vertices `1..=m`, stored as bitmasks.
//!
//! Every enumeration in this module (faces, maximal faces, minimal non-faces)
//! is ordered by cardinality first and then lexicographically on the increasing
//! vertex sequence, so all outputs are deterministic.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count for which faces are enumerated explicitly.
/// A full simplex on this many vertices holds 2^24 faces (64 MiB of masks plus the index).
pub const MAX_VERTICES: usize = 24;

/// Default bound for the exhaustive labeling search in [`is_shifted`].
pub const SHIFTED_SEARCH_BOUND: usize = 8;

/// A subset of `[m]`, bit `i` standing for vertex `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSubset(u32);

impl IndexSubset {
    pub const EMPTY: IndexSubset = IndexSubset(0);

    pub fn from_mask(mask: u32) -> Self {
        IndexSubset(mask)
    }

    /// Builds a subset from 1-based vertices.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        IndexSubset(vertices.into_iter().fold(0, |acc, v| {
            debug_assert!((1..=32).contains(&v));
            acc | 1 << (v - 1)
        }))
    }

    /// `[m]`.
    pub fn full(m: usize) -> Self {
        IndexSubset(full_mask(m))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=32).contains(&vertex) && self.0 >> (vertex - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: IndexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 & other.0)
    }

    pub fn without(self, vertex: usize) -> Self {
        IndexSubset(self.0 & !(1 << (vertex - 1)))
    }

    pub fn with(self, vertex: usize) -> Self {
        IndexSubset(self.0 | 1 << (vertex - 1))
    }

    /// Increasing 1-based vertex sequence.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

/// Cardinality first, then lexicographic on increasing vertex sequences.
impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for IndexSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(v) = vs.iter().find(|&&v| v == 0 || v > 32) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(IndexSubset::from_vertices(vs))
    }
}

pub(crate) fn full_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// Packs the bits of `mask` selected by `select` into the low bits, preserving order.
pub(crate) fn compress_bits(mask: u32, select: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    let mut sel = select;
    while sel != 0 {
        let bit = sel.trailing_zeros();
        if mask >> bit & 1 == 1 {
            out |= 1 << k;
        }
        k += 1;
        sel &= sel - 1;
    }
    out
}

/// Problems reported by [`SimplicialComplex::validate`] and [`validate_faces`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Diagnostic {
    MissingEmptyFace,
    NotDownwardClosed { face: IndexSubset, missing: IndexSubset },
    VertexOutOfRange { face: IndexSubset },
    GhostVertex { vertex: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::MissingEmptyFace => write!(f, "MissingEmptyFace"),
            Diagnostic::NotDownwardClosed { face, missing } => {
                write!(f, "NotDownwardClosed: {face} is listed but {missing} is not")
            }
            Diagnostic::VertexOutOfRange { face } => write!(f, "VertexOutOfRange: {face}"),
            Diagnostic::GhostVertex { vertex } => {
                write!(f, "GhostVertex({vertex}): vertex lies in no face")
            }
        }
    }
}

/// Checks a raw face family against the simplicial complex invariants.
pub fn validate_faces(m: usize, faces: &[IndexSubset], strict: bool) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let lookup: HashSet<u32> = faces.iter().map(|f| f.mask()).collect();
    if !lookup.contains(&0) {
        out.push(Diagnostic::MissingEmptyFace);
    }
    let mut sorted: Vec<IndexSubset> = lookup.iter().map(|&f| IndexSubset(f)).collect();
    sorted.sort();
    let range = full_mask(m);
    for &face in &sorted {
        if face.mask() & !range != 0 {
            out.push(Diagnostic::VertexOutOfRange { face });
            continue;
        }
        for v in face.vertices() {
            let sub = face.without(v);
            if !sub.is_empty() && !lookup.contains(&sub.mask()) {
                out.push(Diagnostic::NotDownwardClosed { face, missing: sub });
            }
        }
    }
    if strict {
        let used = sorted.iter().fold(0, |acc, f| acc | f.mask());
        for v in 1..=m {
            if used >> (v - 1) & 1 == 0 {
                out.push(Diagnostic::GhostVertex { vertex: v });
            }
        }
    }
    out
}

/// A downward-closed family of subsets of `[m]` containing the empty face.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    m: usize,
    faces: Vec<IndexSubset>,
    lookup: HashSet<u32>,
    maximal: Vec<IndexSubset>,
    labels: Vec<usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of the given faces (1-based vertex lists).
    pub fn from_maximal_faces<F: AsRef<[usize]>>(m: usize, faces: &[F]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroVertices);
        }
        check_vertex_count(m)?;
        let mut gens = Vec::with_capacity(faces.len());
        for face in faces {
            for &v in face.as_ref() {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            gens.push(IndexSubset::from_vertices(face.as_ref().iter().copied()).mask());
        }
        Ok(Self::from_generators(m, gens))
    }

    /// Builds a complex from an explicit face list, which must already be downward closed.
    pub fn from_faces(m: usize, faces: &[IndexSubset]) -> Result<Self> {
        check_vertex_count(m)?;
        if let Some(d) = validate_faces(m, faces, false).into_iter().next() {
            return Err(Error::Parse {
                location: None,
                message: d.to_string(),
            });
        }
        Ok(Self::from_generators(m, faces.iter().map(|f| f.mask()).collect()))
    }

    /// The complex `{∅}` on zero vertices; realizes the empty space.
    pub fn empty() -> Self {
        Self::from_generators(0, vec![])
    }

    /// The full simplex `Δ[m-1]`.
    pub fn simplex(m: usize) -> Result<Self> {
        Self::skeleton(m, m as isize - 1)
    }

    /// `∂Δ[m-1]`.
    pub fn boundary_of_simplex(m: usize) -> Result<Self> {
        Self::skeleton(m, m as isize - 2)
    }

    /// `Δ[m-1]_q`: all subsets of `[m]` with at most `q + 1` elements.
    pub fn skeleton(m: usize, q: isize) -> Result<Self> {
        check_vertex_count(m)?;
        if q < -1 || q > m as isize - 1 {
            return Err(Error::SkeletonOutOfRange { m, q });
        }
        let gens = (0..=full_mask(m))
            .filter(|s| s.count_ones() as isize <= q + 1)
            .collect();
        Ok(Self::from_generators(m, gens))
    }

    /// Closure of arbitrary generating masks; callers guarantee `m <= MAX_VERTICES`.
    pub(crate) fn from_generators(m: usize, gens: Vec<u32>) -> Self {
        let mut lookup: HashSet<u32> = HashSet::with_capacity(gens.len() * 2 + 1);
        let mut stack = vec![0u32];
        stack.extend(gens);
        while let Some(f) = stack.pop() {
            if lookup.insert(f) {
                let mut rest = f;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    let sub = f & !bit;
                    if !lookup.contains(&sub) {
                        stack.push(sub);
                    }
                    rest &= rest - 1;
                }
            }
        }
        let mut faces: Vec<IndexSubset> = lookup.iter().map(|&f| IndexSubset(f)).collect();
        faces.sort_unstable();
        let vertex_bits = full_mask(m);
        let maximal = faces
            .iter()
            .copied()
            .filter(|f| {
                let free = vertex_bits & !f.mask();
                (0..m).all(|i| free >> i & 1 == 0 || !lookup.contains(&(f.mask() | 1 << i)))
            })
            .collect();
        SimplicialComplex {
            m,
            faces,
            lookup,
            maximal,
            labels: (1..=m).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.len() as isize - 1)
    }

    /// All faces, the empty face first.
    pub fn faces(&self) -> &[IndexSubset] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn maximal_faces(&self) -> &[IndexSubset] {
        &self.maximal
    }

    pub fn contains(&self, face: IndexSubset) -> bool {
        self.lookup.contains(&face.mask())
    }

    /// Faces of a given cardinality, in canonical order.
    pub fn faces_of_size(&self, size: usize) -> impl Iterator<Item = IndexSubset> + '_ {
        let start = self.faces.partition_point(|f| f.len() < size);
        self.faces[start..].iter().copied().take_while(move |f| f.len() == size)
    }

    /// Original vertex labels (1-based) carried through [`full_subcomplex`].
    pub fn vertex_labels(&self) -> &[usize] {
        &self.labels
    }

    /// True when every subset of `[m]` is a face.
    pub fn is_simplex(&self) -> bool {
        self.contains(IndexSubset::full(self.m))
    }

    /// True when all maximal faces have the same cardinality.
    pub fn is_pure(&self) -> bool {
        self.maximal.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Vertices lying in at least one face.
    pub fn used_vertices(&self) -> IndexSubset {
        IndexSubset(self.faces.iter().fold(0, |acc, f| acc | f.mask()))
    }

    /// Face masks in canonical order, prefixed by `m`; equal keys mean equal complexes.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.faces.len() + 1);
        key.push(self.m as u32);
        key.extend(self.faces.iter().map(|f| f.mask()));
        key
    }

    pub fn validate(&self, strict: bool) -> Vec<Diagnostic> {
        validate_faces(self.m, &self.faces, strict)
    }

    /// Relabels vertex `v` as `perm[v - 1]` (1-based permutation).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(self.m, perm)?;
        let gens = self
            .maximal
            .iter()
            .map(|f| f.vertices().fold(0u32, |acc, v| acc | 1 << (perm[v - 1] - 1)))
            .collect();
        let mut out = Self::from_generators(self.m, gens);
        let mut labels = vec![0; self.m];
        for v in 1..=self.m {
            labels[perm[v - 1] - 1] = self.labels[v - 1];
        }
        out.labels = labels;
        Ok(out)
    }

    /// f-vector `(f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; (self.dim() + 1) as usize];
        for face in &self.faces[1..] {
            f[face.len() - 1] += 1;
        }
        f
    }

    /// h-vector `(h_0, ..., h_n)` with `n = dim + 1`, from
    /// `Σ h_i t^(n-i) = Σ f_(i-1) (t-1)^(n-i)`.
    pub fn h_vector(&self) -> Vec<i64> {
        let n = (self.dim() + 1) as usize;
        let mut f = vec![1i64];
        f.extend(self.f_vector().iter().map(|&x| x as i64));
        (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(n - i, k - i) as i64 * f[i]
                    })
                    .sum()
            })
            .collect()
    }

    /// Inclusion-minimal subsets of `[m]` that are not faces.
    pub fn minimal_non_faces(&self) -> Vec<IndexSubset> {
        let mut found = HashSet::new();
        for &face in &self.faces {
            for v in 1..=self.m {
                if face.contains(v) {
                    continue;
                }
                let cand = face.with(v);
                if self.contains(cand) || found.contains(&cand.mask()) {
                    continue;
                }
                if cand.vertices().all(|u| self.contains(cand.without(u))) {
                    found.insert(cand.mask());
                }
            }
        }
        let mut out: Vec<IndexSubset> = found.into_iter().map(IndexSubset).collect();
        out.sort_unstable();
        out
    }
}

fn check_vertex_count(m: usize) -> Result<()> {
    if m > MAX_VERTICES {
        Err(Error::TooManyVertices { m, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

fn check_permutation(m: usize, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; m];
    if perm.len() != m {
        return Err(Error::InvalidLabeling { m });
    }
    for &p in perm {
        if p == 0 || p > m || std::mem::replace(&mut seen[p - 1], true) {
            return Err(Error::InvalidLabeling { m });
        }
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `K_I = {σ ∩ I : σ ∈ K}`, relabeled `1..|I|` in increasing order.
pub fn full_subcomplex(k: &SimplicialComplex, subset: IndexSubset) -> SimplicialComplex {
    let select = subset.mask() & full_mask(k.m);
    let gens = k
        .faces
        .iter()
        .filter(|f| f.mask() & !select == 0)
        .map(|f| compress_bits(f.mask(), select))
        .collect();
    let mut out = SimplicialComplex::from_generators(select.count_ones() as usize, gens);
    out.labels = IndexSubset(select).vertices().map(|v| k.labels[v - 1]).collect();
    out
}

/// Order complex of the faces strictly containing `sigma`, ordered by inclusion.
/// Its vertices are those faces in canonical order.
pub fn order_complex_below(k: &SimplicialComplex, sigma: IndexSubset) -> Result<SimplicialComplex> {
    if !k.contains(sigma) {
        return Err(Error::FaceNotInComplex { face: sigma });
    }
    let elems: Vec<IndexSubset> = k
        .faces
        .iter()
        .copied()
        .filter(|t| *t != sigma && sigma.is_subset_of(*t))
        .collect();
    let n = elems.len();
    check_vertex_count(n)?;
    // above[i] = elements strictly containing elems[i]
    let above: Vec<u32> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .enumerate()
                .filter(|(_, b)| *b != a && a.is_subset_of(**b))
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut chains = Vec::new();
    let mut stack: Vec<(u32, u32)> = (0..n).map(|i| (1u32 << i, above[i])).collect();
    while let Some((chain, ext)) = stack.pop() {
        chains.push(chain);
        let mut rest = ext;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            stack.push((chain | 1 << j, ext & above[j]));
            rest &= rest - 1;
        }
    }
    Ok(SimplicialComplex::from_generators(n, chains))
}

/// Outcome of [`is_shifted`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ShiftedVerdict {
    /// `labeling[v - 1]` is the new label of vertex `v`.
    Shifted { labeling: Vec<usize> },
    /// A face whose vertex `removed` cannot be replaced by the smaller `added`
    /// (in the tested labeling; the identity when searching exhaustively).
    NotShifted {
        face: IndexSubset,
        removed: usize,
        added: usize,
    },
}

impl ShiftedVerdict {
    pub fn is_shifted(&self) -> bool {
        matches!(self, ShiftedVerdict::Shifted { .. })
    }
}

fn shift_violation(k: &SimplicialComplex) -> Option<(IndexSubset, usize, usize)> {
    for &face in &k.faces {
        for v in face.vertices() {
            for u in 1..v {
                if !face.contains(u) && !k.contains(face.without(v).with(u)) {
                    return Some((face, v, u));
                }
            }
        }
    }
    None
}

/// Decides shiftedness, under `labeling` when given and otherwise by exhaustive
/// search over all `m!` labelings (up to [`SHIFTED_SEARCH_BOUND`] vertices).
pub fn is_shifted(k: &SimplicialComplex, labeling: Option<&[usize]>) -> Result<ShiftedVerdict> {
    is_shifted_bounded(k, labeling, SHIFTED_SEARCH_BOUND)
}

pub fn is_shifted_bounded(k: &SimplicialComplex, labeling: Option<&[usize]>, bound: usize) -> Result<ShiftedVerdict> {
    if let Some(perm) = labeling {
        let relabeled = k.relabel(perm)?;
        return Ok(match shift_violation(&relabeled) {
            None => ShiftedVerdict::Shifted {
                labeling: perm.to_vec(),
            },
            Some((face, removed, added)) => ShiftedVerdict::NotShifted { face, removed, added },
        });
    }
    if k.m > bound {
        return Err(Error::SearchBoundExceeded { m: k.m, bound });
    }
    let identity_violation = match shift_violation(k) {
        None => {
            return Ok(ShiftedVerdict::Shifted {
                labeling: (1..=k.m).collect(),
            })
        }
        Some(v) => v,
    };
    let mut perm: Vec<usize> = (1..=k.m).collect();
    while next_permutation(&mut perm) {
        if shift_violation(&k.relabel(&perm)?).is_none() {
            return Ok(ShiftedVerdict::Shifted { labeling: perm });
        }
    }
    let (face, removed, added) = identity_violation;
    Ok(ShiftedVerdict::NotShifted { face, removed, added })
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Simplicial join on `m_K + m_L` vertices, the vertices of `L` placed after those of `K`.
pub fn join_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let m = k.m + l.m;
    check_vertex_count(m)?;
    let gens = k
        .maximal
        .iter()
        .flat_map(|a| l.maximal.iter().map(move |b| a.mask() | b.mask() << k.m))
        .collect();
    let mut out = SimplicialComplex::from_generators(m, gens);
    out.labels = k
        .labels
        .iter()
        .copied()
        .chain(l.labels.iter().map(|&x| x + k.m))
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> IndexSubset {
        IndexSubset::from_vertices(vs.iter().copied())
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_maximal_faces(4, &[[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap()
    }

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let mut v = vec![set(&[2, 3]), set(&[1, 4]), set(&[3]), set(&[]), set(&[1, 2, 3])];
        v.sort();
        assert_eq!(
            v,
            vec![set(&[]), set(&[3]), set(&[1, 4]), set(&[2, 3]), set(&[1, 2, 3])]
        );
    }

    #[test]
    fn closure_of_maximal_faces() {
        let k = square();
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(k.maximal_faces().len(), 4);

        let p = SimplicialComplex::from_maximal_faces(1, &[[1]]).unwrap();
        assert_eq!(p.faces(), &[set(&[]), set(&[1])]);

        let k = SimplicialComplex::from_maximal_faces(3, &[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(k.faces(), &[set(&[]), set(&[1]), set(&[2]), set(&[3]), set(&[1, 2])]);
        assert_eq!(k.maximal_faces(), &[set(&[3]), set(&[1, 2])]);
    }

    #[test]
    fn dominated_faces_are_dropped() {
        let k = SimplicialComplex::from_maximal_faces(3, &[vec![1], vec![1, 2]]).unwrap();
        assert_eq!(k.maximal_faces(), &[set(&[1, 2])]);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            SimplicialComplex::from_maximal_faces(0, &[[1]]),
            Err(Error::ZeroVertices)
        );
        assert_eq!(
            SimplicialComplex::from_maximal_faces(2, &[[1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, m: 2 })
        );
        assert!(matches!(
            SimplicialComplex::skeleton(25, 0),
            Err(Error::TooManyVertices { .. })
        ));
        assert!(SimplicialComplex::skeleton(3, 3).is_err());
        assert!(SimplicialComplex::skeleton(3, -2).is_err());
    }

    #[test]
    fn validate_reports() {
        assert!(square().validate(true).is_empty());
        let k = SimplicialComplex::from_maximal_faces(3, &[[1, 2]]).unwrap();
        assert_eq!(k.validate(true), vec![Diagnostic::GhostVertex { vertex: 3 }]);
        assert!(k.validate(false).is_empty());
        let raw = [set(&[]), set(&[1]), set(&[1, 2])];
        assert_eq!(
            validate_faces(2, &raw, false),
            vec![Diagnostic::NotDownwardClosed {
                face: set(&[1, 2]),
                missing: set(&[2])
            }]
        );
        assert!(SimplicialComplex::from_faces(2, &raw).is_err());
        assert_eq!(
            validate_faces(2, &[set(&[1])], false),
            vec![Diagnostic::MissingEmptyFace]
        );
    }

    #[test]
    fn full_subcomplexes() {
        let k = square();
        let two = full_subcomplex(&k, set(&[1, 3]));
        assert_eq!(two, SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap());
        assert_eq!(two.vertex_labels(), &[1, 3]);
        let path = full_subcomplex(&k, set(&[1, 2, 3]));
        assert_eq!(
            path,
            SimplicialComplex::from_maximal_faces(3, &[[1, 2], [2, 3]]).unwrap()
        );
        assert_eq!(full_subcomplex(&k, IndexSubset::full(4)), k);
        assert_eq!(full_subcomplex(&k, IndexSubset::EMPTY), SimplicialComplex::empty());
    }

    #[test]
    fn skeleta() {
        let c3 = SimplicialComplex::skeleton(3, 1).unwrap();
        assert_eq!(c3, SimplicialComplex::boundary_of_simplex(3).unwrap());
        assert_eq!(c3.f_vector(), vec![3, 3]);
        assert_eq!(SimplicialComplex::skeleton(4, 0).unwrap().f_vector(), vec![4]);
        assert_eq!(SimplicialComplex::simplex(5).unwrap().num_faces(), 32);
        assert_eq!(SimplicialComplex::skeleton(3, -1).unwrap().num_faces(), 1);
    }

    #[test]
    fn f_and_h_vectors() {
        let c3 = SimplicialComplex::boundary_of_simplex(3).unwrap();
        assert_eq!(c3.h_vector(), vec![1, 1, 1]);
        assert_eq!(square().h_vector(), vec![1, 2, 1]);
        assert_eq!(SimplicialComplex::simplex(3).unwrap().f_vector(), vec![3, 3, 1]);
        // simplex: h = (1, 0, ..., 0)
        assert_eq!(SimplicialComplex::simplex(3).unwrap().h_vector(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn minimal_non_faces_examples() {
        assert_eq!(square().minimal_non_faces(), vec![set(&[1, 3]), set(&[2, 4])]);
        assert_eq!(
            SimplicialComplex::boundary_of_simplex(3).unwrap().minimal_non_faces(),
            vec![set(&[1, 2, 3])]
        );
        assert!(SimplicialComplex::simplex(4).unwrap().minimal_non_faces().is_empty());
        let ghost = SimplicialComplex::from_maximal_faces(2, &[[1]]).unwrap();
        assert_eq!(ghost.minimal_non_faces(), vec![set(&[2])]);
    }

    #[test]
    fn order_complexes() {
        let c3 = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let hex = order_complex_below(&c3, IndexSubset::EMPTY).unwrap();
        assert_eq!(hex.f_vector(), vec![6, 6]);
        let two = SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap();
        assert_eq!(
            order_complex_below(&two, set(&[1])).unwrap(),
            SimplicialComplex::empty()
        );
        let edge = SimplicialComplex::simplex(2).unwrap();
        let pt = order_complex_below(&edge, set(&[1])).unwrap();
        assert_eq!(pt.m(), 1);
        assert_eq!(pt.f_vector(), vec![1]);
        assert_eq!(
            order_complex_below(&two, set(&[1, 2])),
            Err(Error::FaceNotInComplex { face: set(&[1, 2]) })
        );
    }

    #[test]
    fn shifted_examples() {
        for (m, q) in [(4, 0), (4, 1), (5, 2), (3, 2)] {
            let k = SimplicialComplex::skeleton(m, q).unwrap();
            let id: Vec<usize> = (1..=m).collect();
            assert!(is_shifted(&k, Some(&id)).unwrap().is_shifted());
        }
        let star = SimplicialComplex::from_maximal_faces(3, &[[1, 2], [1, 3]]).unwrap();
        assert!(is_shifted(&star, Some(&[1, 2, 3])).unwrap().is_shifted());
        // center relabeled away from 1 breaks the identity check but the search recovers it
        let star2 = SimplicialComplex::from_maximal_faces(3, &[[2, 1], [2, 3]]).unwrap();
        assert!(!is_shifted(&star2, Some(&[1, 2, 3])).unwrap().is_shifted());
        match is_shifted(&star2, None).unwrap() {
            ShiftedVerdict::Shifted { labeling } => assert_eq!(labeling[1], 1),
            v => panic!("{v:?}"),
        }
        assert!(!is_shifted(&square(), None).unwrap().is_shifted());
        let big = SimplicialComplex::skeleton(9, 0).unwrap();
        assert!(matches!(is_shifted(&big, None), Err(Error::SearchBoundExceeded { .. })));
    }

    #[test]
    fn joins() {
        let two = SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap();
        let j = join_complex(&two, &two).unwrap();
        assert_eq!(j.f_vector(), vec![4, 4]);
        assert_eq!(j.minimal_non_faces(), vec![set(&[1, 2]), set(&[3, 4])]);
        let pt = SimplicialComplex::simplex(1).unwrap();
        let cone = join_complex(&square(), &pt).unwrap();
        assert_eq!(cone.f_vector(), vec![5, 8, 4]);
        assert_eq!(join_complex(&SimplicialComplex::empty(), &square()).unwrap(), square());
    }

    #[test]
    fn relabel_roundtrip() {
        let k = SimplicialComplex::from_maximal_faces(3, &[vec![1, 2], vec![3]]).unwrap();
        let r = k.relabel(&[3, 1, 2]).unwrap();
        assert_eq!(
            r,
            SimplicialComplex::from_maximal_faces(3, &[vec![3, 1], vec![2]]).unwrap()
        );
        assert!(k.relabel(&[1, 1, 2]).is_err());
    }
}
