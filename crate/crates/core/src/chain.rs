//! Chain complexes of free abelian groups and their integral homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{IndexSubset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::{factor_to_u64, invariant_factors, IntegerMatrix};

/// A bounded chain complex `C_lo <- ... <- C_hi` with boundary of degree -1.
///
/// `boundaries[k]` is `∂_(lo+k): C_(lo+k) -> C_(lo+k-1)`, an `n_(lo+k-1) × n_(lo+k)`
/// matrix (zero rows for the bottom degree).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    lo: isize,
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl ChainComplex {
    /// Validates shapes and `∂∂ = 0`.
    pub fn new(lo: isize, ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(lo, ranks, boundaries)?;
        c.check_square_zero()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(lo: isize, ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::ShapeMismatch("one boundary matrix per degree".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if b.cols() != ranks[k] || b.rows() != below {
                return Err(Error::ShapeMismatch(format!(
                    "boundary in degree {} is {}x{}, expected {}x{}",
                    lo + k as isize,
                    b.rows(),
                    b.cols(),
                    below,
                    ranks[k]
                )));
            }
        }
        Ok(ChainComplex {
            lo,
            ranks,
            boundaries,
            labels: None,
        })
    }

    /// The zero complex.
    pub fn zero() -> Self {
        ChainComplex {
            lo: 0,
            ranks: vec![],
            boundaries: vec![],
            labels: None,
        }
    }

    /// `Z` concentrated in degree `d`.
    pub fn point_in_degree(d: isize) -> Self {
        ChainComplex {
            lo: d,
            ranks: vec![1],
            boundaries: vec![IntegerMatrix::zeros(0, 1)],
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, &n)| l.len() != n) {
            return Err(Error::ShapeMismatch("labels must match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self, d: isize) -> Option<&[String]> {
        let k = self.index(d)?;
        self.labels.as_ref().map(|l| l[k].as_slice())
    }

    pub fn lo(&self) -> isize {
        self.lo
    }

    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> isize {
        self.lo + self.ranks.len() as isize - 1
    }

    fn index(&self, d: isize) -> Option<usize> {
        let k = d - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    pub fn rank(&self, d: isize) -> usize {
        self.index(d).map_or(0, |k| self.ranks[k])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `∂_d`, or `None` if the degree is outside the stored range.
    pub fn boundary(&self, d: isize) -> Option<&IntegerMatrix> {
        self.index(d).map(|k| &self.boundaries[k])
    }

    fn boundary_or_zero(&self, d: isize) -> IntegerMatrix {
        self.boundary(d)
            .cloned()
            .unwrap_or_else(|| IntegerMatrix::zeros(self.rank(d - 1), self.rank(d)))
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for d in self.lo + 1..=self.hi() {
            let prod = self.boundary_or_zero(d - 1).mul(&self.boundary_or_zero(d))?;
            if !prod.is_zero() {
                return Err(Error::BoundaryNotSquareZero { degree: d });
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(d) as i64)
            .sum()
    }

    /// Same groups and boundaries, every degree raised by `k`.
    pub fn shifted(mut self, k: isize) -> Self {
        self.lo += k;
        self
    }

    /// Appends a degree `-1` copy of `Z` with the all-ones augmentation
    /// `C_0 -> Z`. Only meaningful for cellular complexes starting in degree 0.
    pub fn augmented(&self) -> Result<Self> {
        if self.lo < 0 {
            return Ok(self.clone());
        }
        let top = self.hi().max(0);
        let mut ranks = vec![1];
        let mut boundaries = vec![IntegerMatrix::zeros(0, 1)];
        for d in 0..=top {
            ranks.push(self.rank(d));
            boundaries.push(if d == 0 {
                IntegerMatrix::from_columns(1, (0..self.rank(0)).map(|_| vec![(0, 1)]).collect())?
            } else {
                self.boundary_or_zero(d)
            });
        }
        ChainComplex::new_unchecked(-1, ranks, boundaries)
    }

    /// Basis cells as a flat factor for [`tensor_cells`].
    pub(crate) fn as_factor(&self) -> CellFactor {
        let mut dims = Vec::with_capacity(self.total_rank());
        let mut offset = BTreeMap::new();
        let mut start = 0;
        for d in self.lo..=self.hi() {
            offset.insert(d, start);
            for _ in 0..self.rank(d) {
                dims.push(d);
            }
            start += self.rank(d);
        }
        let mut boundary = Vec::with_capacity(dims.len());
        for d in self.lo..=self.hi() {
            let b = self.boundary_or_zero(d);
            let below = offset.get(&(d - 1)).copied().unwrap_or(0);
            for j in 0..self.rank(d) {
                boundary.push(b.column(j).iter().map(|&(i, v)| (below + i, v)).collect());
            }
        }
        let names = self.labels.as_ref().map(|l| l.iter().flatten().cloned().collect());
        CellFactor { dims, boundary, names }
    }
}

/// Homology in one degree: `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Graded homology; degrees not stored are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologySummary {
    groups: BTreeMap<isize, DegreeHomology>,
}

#[derive(Serialize, Deserialize)]
struct HomologyEntry {
    degree: isize,
    betti: usize,
    torsion: Vec<u64>,
}

impl Serialize for HomologySummary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.groups.iter().map(|(&degree, g)| HomologyEntry {
            degree,
            betti: g.betti,
            torsion: g.torsion.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for HomologySummary {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<HomologyEntry>::deserialize(d)?;
        let mut h = HomologySummary::default();
        for e in entries {
            h.add(
                e.degree,
                &DegreeHomology {
                    betti: e.betti,
                    torsion: e.torsion,
                },
            );
        }
        Ok(h)
    }
}

impl HomologySummary {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Z` in degree `d` (the reduced homology of `S^d`).
    pub fn sphere(d: isize) -> Self {
        Self::from_betti(&[(d, 1)])
    }

    pub fn from_betti(entries: &[(isize, usize)]) -> Self {
        let mut h = Self::default();
        for &(d, b) in entries {
            h.add(
                d,
                &DegreeHomology {
                    betti: b,
                    torsion: vec![],
                },
            );
        }
        h
    }

    pub fn get(&self, d: isize) -> DegreeHomology {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    pub fn betti(&self, d: isize) -> usize {
        self.groups.get(&d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: isize) -> &[u64] {
        self.groups.get(&d).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }

    /// Nonzero degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &DegreeHomology)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    /// Betti numbers in degrees `0..=top`.
    pub fn betti_vector(&self) -> Vec<usize> {
        let top = self.groups.keys().next_back().copied().unwrap_or(-1).max(0);
        (0..=top).map(|d| self.betti(d)).collect()
    }

    /// Adds a group in degree `d` as a direct summand.
    pub fn add(&mut self, d: isize, g: &DegreeHomology) {
        if g.is_zero() {
            return;
        }
        let e = self.groups.entry(d).or_default();
        e.betti += g.betti;
        let mut t = std::mem::take(&mut e.torsion);
        t.extend(g.torsion.iter().copied());
        e.torsion = normalize_torsion(&t);
    }

    pub fn direct_sum(&self, other: &HomologySummary) -> HomologySummary {
        let mut out = self.clone();
        for (&d, g) in &other.groups {
            out.add(d, g);
        }
        out
    }

    pub fn shifted(&self, k: isize) -> HomologySummary {
        HomologySummary {
            groups: self.groups.iter().map(|(&d, g)| (d + k, g.clone())).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(&d, g)| if d.rem_euclid(2) == 0 { 1 } else { -1 } * g.betti as i64)
            .sum()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, g)) in self.groups.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "H{d}=")?;
            let mut parts = Vec::new();
            match g.betti {
                0 => {}
                1 => parts.push("Z".to_string()),
                b => parts.push(format!("Z^{b}")),
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            write!(f, "{}", parts.join("+"))?;
        }
        Ok(())
    }
}

/// Re-expresses a list of cyclic orders (each > 1) as invariant factors
/// `d_1 | d_2 | ...`, via prime-power decomposition.
pub fn normalize_torsion(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders {
        let mut n = o;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
        if n > 1 {
            by_prime.entry(n).or_default().push(n);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        let off = len - powers.len();
        for (k, q) in powers.iter().enumerate() {
            out[off + k] *= q;
        }
    }
    out
}

/// `H_d = ker ∂_d / im ∂_(d+1)`. With `reduced`, complexes starting in degree 0
/// are augmented first (see [`ChainComplex::augmented`]).
pub fn homology(c: &ChainComplex, reduced: bool) -> Result<HomologySummary> {
    c.check_square_zero()?;
    let aug;
    let c = if reduced && c.lo >= 0 {
        aug = c.augmented()?;
        &aug
    } else {
        c
    };
    let mut ranks_of_boundary: HashMap<isize, (usize, Vec<u64>)> = HashMap::new();
    for d in c.lo..=c.hi() + 1 {
        let factors = match c.boundary(d) {
            Some(b) if !b.is_zero() => invariant_factors(b),
            _ => vec![],
        };
        let torsion = factors
            .iter()
            .filter(|f| **f > 1.into())
            .map(factor_to_u64)
            .collect::<Result<Vec<_>>>()?;
        ranks_of_boundary.insert(d, (factors.len(), torsion));
    }
    let mut out = HomologySummary::default();
    for d in c.lo..=c.hi() {
        let rank_d = ranks_of_boundary.get(&d).map_or(0, |r| r.0);
        let (rank_up, torsion) = ranks_of_boundary.get(&(d + 1)).cloned().unwrap_or_default();
        let betti = c.rank(d) - rank_d - rank_up;
        out.add(d, &DegreeHomology { betti, torsion });
    }
    Ok(out)
}

/// Simplicial chains: degree `d` has the `d`-faces in canonical order, and
/// `∂[v_0..v_d] = Σ (-1)^i [.., v_i omitted, ..]`. With `reduced`, the empty
/// face sits in degree -1.
pub fn simplicial_chain_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplex {
    let lo: isize = if reduced { -1 } else { 0 };
    let top = k.dim();
    let mut ranks = Vec::new();
    let mut boundaries = Vec::new();
    let mut labels = Vec::new();
    let mut prev_index: HashMap<u32, usize> = HashMap::new();
    for d in lo..=top.max(lo) {
        let faces: Vec<IndexSubset> = k.faces_of_size((d + 1) as usize).collect();
        let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, f)| (f.mask(), i)).collect();
        let rows = if d == lo { 0 } else { prev_index.len() };
        let cols: Vec<Vec<(usize, i64)>> = faces
            .iter()
            .map(|f| {
                if d == lo || (d == 0 && !reduced) {
                    return vec![];
                }
                f.vertices()
                    .enumerate()
                    .map(|(i, v)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (prev_index[&f.without(v).mask()], sign)
                    })
                    .collect()
            })
            .collect();
        ranks.push(faces.len());
        boundaries.push(IntegerMatrix::from_columns(rows, cols).expect("valid face indices"));
        labels.push(faces.iter().map(|f| f.to_string()).collect());
        prev_index = index;
    }
    ChainComplex::new_unchecked(lo, ranks, boundaries)
        .and_then(|c| c.with_labels(labels))
        .expect("simplicial boundary shapes are consistent")
}

/// Flat cell list: cell dimensions and boundaries in terms of cell indices.
#[derive(Clone, Debug)]
pub(crate) struct CellFactor {
    pub dims: Vec<isize>,
    pub boundary: Vec<Vec<(usize, i64)>>,
    pub names: Option<Vec<String>>,
}

/// Builds the sub- or quotient complex of `⊗ factors` spanned by `tuples`.
///
/// `∂(c_1⊗…⊗c_m) = Σ_i (-1)^(|c_1|+…+|c_(i-1)|) c_1⊗…⊗∂c_i⊗…⊗c_m`. Boundary terms
/// for which `dropped` holds are projected away (quotient); every other term
/// must be one of `tuples`.
pub(crate) fn tensor_cells(
    factors: &[CellFactor],
    mut tuples: Vec<Vec<u32>>,
    dropped: impl Fn(&[u32]) -> bool,
) -> Result<ChainComplex> {
    let degree = |t: &[u32]| -> isize { t.iter().zip(factors).map(|(&c, f)| f.dims[c as usize]).sum() };
    tuples.sort_unstable_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));
    if tuples.is_empty() {
        return Ok(ChainComplex::zero());
    }
    let lo = degree(&tuples[0]);
    let hi = degree(tuples.last().unwrap());
    let width = (hi - lo + 1) as usize;
    let mut ranks = vec![0usize; width];
    let mut index: HashMap<&[u32], usize> = HashMap::with_capacity(tuples.len());
    for t in &tuples {
        let k = (degree(t) - lo) as usize;
        index.insert(t.as_slice(), ranks[k]);
        ranks[k] += 1;
    }
    let mut columns: Vec<Vec<Vec<(usize, i64)>>> = ranks.iter().map(|&n| Vec::with_capacity(n)).collect();
    let mut scratch = Vec::new();
    for t in &tuples {
        let k = (degree(t) - lo) as usize;
        let mut col = Vec::new();
        let mut prefix = 0isize;
        for (i, &c) in t.iter().enumerate() {
            let sign = if prefix.rem_euclid(2) == 0 { 1 } else { -1 };
            for &(target, coeff) in &factors[i].boundary[c as usize] {
                scratch.clear();
                scratch.extend_from_slice(t);
                scratch[i] = target as u32;
                if dropped(&scratch) {
                    continue;
                }
                match index.get(scratch.as_slice()) {
                    Some(&row) => col.push((row, sign * coeff)),
                    None => return Err(Error::SupportClosure(format!("boundary of {t:?} reaches {scratch:?}"))),
                }
            }
            prefix += factors[i].dims[c as usize];
        }
        columns[k].push(col);
    }
    let mut boundaries = Vec::with_capacity(width);
    for (k, cols) in columns.into_iter().enumerate() {
        let rows = if k == 0 { 0 } else { ranks[k - 1] };
        if k == 0 && cols.iter().any(|c| !c.is_empty()) {
            return Err(Error::SupportClosure("boundary below the lowest degree".into()));
        }
        boundaries.push(IntegerMatrix::from_columns(rows, cols)?);
    }
    let labels = if factors.iter().all(|f| f.names.is_some()) {
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); width];
        for t in &tuples {
            let name = t
                .iter()
                .zip(factors)
                .map(|(&c, f)| f.names.as_ref().unwrap()[c as usize].as_str())
                .collect::<Vec<_>>()
                .join("⊗");
            labels[(degree(t) - lo) as usize].push(name);
        }
        Some(labels)
    } else {
        None
    };
    let mut c = ChainComplex::new_unchecked(lo, ranks, boundaries)?;
    if let Some(l) = labels {
        c = c.with_labels(l)?;
    }
    debug_assert!(c.check_square_zero().is_ok());
    Ok(c)
}

/// Cartesian product of per-coordinate choice lists, in lexicographic order.
pub(crate) fn product_tuples(choices: &[Vec<u32>], out: &mut Vec<Vec<u32>>) {
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        out.push(idx.iter().zip(choices).map(|(&i, c)| c[i]).collect());
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `C ⊗ D` with the Koszul sign; basis ordered lexicographically by factor bases.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    c.check_square_zero()?;
    d.check_square_zero()?;
    let factors = [c.as_factor(), d.as_factor()];
    let choices: Vec<Vec<u32>> = factors.iter().map(|f| (0..f.dims.len() as u32).collect()).collect();
    let mut tuples = Vec::new();
    product_tuples(&choices, &mut tuples);
    tensor_cells(&factors, tuples, |_| false)
}

/// Left-folded tensor of several complexes; the empty product is `Z` in degree 0.
pub fn tensor_all(cs: &[ChainComplex]) -> Result<ChainComplex> {
    let mut acc = ChainComplex::point_in_degree(0);
    for c in cs {
        acc = tensor(&acc, c)?;
    }
    Ok(acc)
}

/// Reduced chain model of the join `X ∗ Y`: `(C ⊗ D)` raised one degree.
/// Both inputs must compute reduced homology (augmented, or quotients by a basepoint).
pub fn algebraic_join(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    Ok(tensor(c, d)?.shifted(1))
}

/// Quotient by the complementary cells: basis = selected cells, boundary = the
/// projection of `∂` onto them. `selected(d, i)` refers to basis cell `i` of degree `d`.
pub fn quotient_complex(c: &ChainComplex, selected: impl Fn(isize, usize) -> bool) -> Result<ChainComplex> {
    let mut keep: Vec<Vec<Option<usize>>> = Vec::new();
    for d in c.lo..=c.hi() {
        let mut next = 0;
        keep.push(
            (0..c.rank(d))
                .map(|i| {
                    selected(d, i).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect(),
        );
    }
    let at = |d: isize| &keep[(d - c.lo) as usize];
    // complement must be a subcomplex
    for d in c.lo + 1..=c.hi() {
        let b = c.boundary_or_zero(d);
        for (j, kept) in at(d).iter().enumerate() {
            if kept.is_none() && b.column(j).iter().any(|&(i, _)| at(d - 1)[i].is_some()) {
                return Err(Error::NotASubcomplex { degree: d, cell: j });
            }
        }
    }
    let mut ranks = Vec::new();
    let mut boundaries = Vec::new();
    let mut labels = c.labels.as_ref().map(|_| Vec::new());
    for d in c.lo..=c.hi() {
        let b = c.boundary_or_zero(d);
        let rows = if d == c.lo {
            0
        } else {
            at(d - 1).iter().flatten().count()
        };
        let cols: Vec<Vec<(usize, i64)>> = at(d)
            .iter()
            .enumerate()
            .filter(|(_, k)| k.is_some())
            .map(|(j, _)| {
                if d == c.lo {
                    return vec![];
                }
                b.column(j)
                    .iter()
                    .filter_map(|&(i, v)| at(d - 1)[i].map(|r| (r, v)))
                    .collect()
            })
            .collect();
        ranks.push(cols.len());
        boundaries.push(IntegerMatrix::from_columns(rows, cols)?);
        if let (Some(out), Some(src)) = (labels.as_mut(), c.labels.as_ref()) {
            let src = &src[(d - c.lo) as usize];
            out.push(
                at(d)
                    .iter()
                    .zip(src)
                    .filter(|(k, _)| k.is_some())
                    .map(|(_, s)| s.clone())
                    .collect::<Vec<_>>(),
            );
        }
    }
    let mut q = ChainComplex::new_unchecked(c.lo, ranks, boundaries)?;
    if let Some(l) = labels {
        q = q.with_labels(l)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp2() -> SimplicialComplex {
        crate::catalog::rp2_triangulation()
    }

    #[test]
    fn normalize_torsion_to_invariant_factors() {
        assert_eq!(normalize_torsion(&[2, 3]), vec![6]);
        assert_eq!(normalize_torsion(&[2, 4, 6]), vec![2, 2, 12]);
        assert_eq!(normalize_torsion(&[]), Vec::<u64>::new());
    }

    #[test]
    fn simplicial_homology_examples() {
        let circle = SimplicialComplex::boundary_of_simplex(3).unwrap();
        assert_eq!(
            homology(&simplicial_chain_complex(&circle, true), false).unwrap(),
            HomologySummary::sphere(1)
        );
        let h = homology(&simplicial_chain_complex(&rp2(), true), false).unwrap();
        assert_eq!(
            h.get(1),
            DegreeHomology {
                betti: 0,
                torsion: vec![2]
            }
        );
        assert_eq!(h.iter().count(), 1);
        let disk = SimplicialComplex::simplex(3).unwrap();
        assert!(homology(&simplicial_chain_complex(&disk, true), false)
            .unwrap()
            .is_zero());
        let two = SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap();
        assert_eq!(
            homology(&simplicial_chain_complex(&two, true), false).unwrap(),
            HomologySummary::sphere(0)
        );
        assert_eq!(
            homology(&simplicial_chain_complex(&SimplicialComplex::empty(), true), false).unwrap(),
            HomologySummary::sphere(-1)
        );
    }

    #[test]
    fn reduced_flag_augments() {
        let two = SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap();
        let c = simplicial_chain_complex(&two, false);
        assert_eq!(homology(&c, false).unwrap(), HomologySummary::from_betti(&[(0, 2)]));
        assert_eq!(homology(&c, true).unwrap(), HomologySummary::sphere(0));
        // empty degree 0 reduces to Z in degree -1
        assert_eq!(
            homology(&ChainComplex::zero(), true).unwrap(),
            HomologySummary::sphere(-1)
        );
    }

    #[test]
    fn rp2_boundary_shape() {
        let c = simplicial_chain_complex(&rp2(), false);
        assert_eq!(c.boundary(2).unwrap().rows(), 15);
        assert_eq!(c.boundary(2).unwrap().cols(), 10);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn rejects_non_square_zero() {
        let d1 = IntegerMatrix::from_rows(&[[1], [1]]).unwrap();
        let d0 = IntegerMatrix::zeros(0, 2);
        let d2 = IntegerMatrix::from_rows(&[[1]]).unwrap();
        let bad = ChainComplex::new(0, vec![2, 1, 1], vec![d0, d1, d2]);
        assert!(bad.is_err());
        let d1 = IntegerMatrix::from_rows(&[[-1], [1]]).unwrap();
        let d2 = IntegerMatrix::from_rows(&[[1]]).unwrap();
        let c = ChainComplex::new_unchecked(0, vec![2, 1, 1], vec![IntegerMatrix::zeros(0, 2), d1, d2]).unwrap();
        assert_eq!(homology(&c, false), Err(Error::BoundaryNotSquareZero { degree: 2 }));
    }

    #[test]
    fn torus_and_units() {
        let circle = simplicial_chain_complex(&SimplicialComplex::boundary_of_simplex(3).unwrap(), false);
        let torus = tensor(&circle, &circle).unwrap();
        assert_eq!(homology(&torus, false).unwrap().betti_vector(), vec![1, 2, 1]);
        let pt = ChainComplex::point_in_degree(0);
        let same = tensor(&circle, &pt).unwrap();
        assert_eq!(homology(&same, false).unwrap(), homology(&circle, false).unwrap());
    }

    #[test]
    fn joins_of_spheres() {
        let s0 = simplicial_chain_complex(&SimplicialComplex::from_maximal_faces(2, &[[1], [2]]).unwrap(), true);
        assert_eq!(
            homology(&algebraic_join(&s0, &s0).unwrap(), false).unwrap(),
            HomologySummary::sphere(1)
        );
        for m in 3..=5 {
            // S^(m-2) ∗ S^m = S^(2m-1)
            let a = simplicial_chain_complex(&SimplicialComplex::boundary_of_simplex(m).unwrap(), true);
            let b = simplicial_chain_complex(&SimplicialComplex::boundary_of_simplex(m + 2).unwrap(), true);
            let j = algebraic_join(&a, &b).unwrap();
            assert_eq!(
                homology(&j, false).unwrap(),
                HomologySummary::sphere(2 * m as isize - 1)
            );
        }
        let empty = simplicial_chain_complex(&SimplicialComplex::empty(), true);
        let c = simplicial_chain_complex(&rp2(), true);
        assert_eq!(
            homology(&algebraic_join(&empty, &c).unwrap(), false).unwrap(),
            homology(&c, false).unwrap()
        );
    }

    #[test]
    fn quotients() {
        // torus cells: v, a, b, ab with the product CW structure of S^1 × S^1
        let s1 = ChainComplex::new(
            0,
            vec![1, 1],
            vec![IntegerMatrix::zeros(0, 1), IntegerMatrix::zeros(1, 1)],
        )
        .unwrap();
        let torus = tensor(&s1, &s1).unwrap();
        let q = quotient_complex(&torus, |d, _| d == 2).unwrap();
        assert_eq!(homology(&q, false).unwrap(), HomologySummary::sphere(2));
        assert_eq!(quotient_complex(&torus, |_, _| true).unwrap(), torus);
        // D^2 / S^1 with a triangle
        let disk = simplicial_chain_complex(&SimplicialComplex::simplex(3).unwrap(), false);
        let q = quotient_complex(&disk, |d, _| d == 2).unwrap();
        assert_eq!(homology(&q, false).unwrap(), HomologySummary::sphere(2));
        // keeping an edge but dropping its face is not a quotient by a subcomplex
        assert!(matches!(
            quotient_complex(&disk, |d, _| d == 1),
            Err(Error::NotASubcomplex { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let h = HomologySummary::from_betti(&[(0, 1), (3, 2)]);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(
            s,
            r#"[{"degree":0,"betti":1,"torsion":[]},{"degree":3,"betti":2,"torsion":[]}]"#
        );
        let back: HomologySummary = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }
}
