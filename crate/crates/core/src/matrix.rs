//! Exact integer matrices and Smith normal form.
//!
//! Reductions run on `i64` with checked arithmetic and restart on `BigInt`
//! when any intermediate value overflows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix stored column by column as sorted `(row, value)` lists.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, 1));
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.columns[j].push((i, v));
                }
            }
        }
        Ok(m)
    }

    /// Builds from a column list; duplicate rows within a column are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for col in columns {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (r, v) in col {
                if r >= rows {
                    return Err(Error::ShapeMismatch(format!("row {r} >= {rows}")));
                }
                let e = acc.entry(r).or_insert(0);
                *e = e.checked_add(v).ok_or_else(|| Error::Overflow("matrix entry".into()))?;
            }
            out.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            columns: out,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |k| self.columns[j][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v));
            }
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    /// Appends a row.
    pub fn push_row(&mut self, row: &[i64]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch("pushed row length".into()));
        }
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                self.columns[j].push((self.rows, v));
            }
        }
        self.rows += 1;
        Ok(())
    }

    /// Exact product; fails rather than wrapping.
    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e
                        .checked_add(a as i128 * b as i128)
                        .ok_or_else(|| Error::Overflow("matrix product".into()))?;
                }
            }
            let mut c = Vec::new();
            for (i, v) in acc {
                if v != 0 {
                    c.push((
                        i,
                        i64::try_from(v).map_err(|_| Error::Overflow("matrix product".into()))?,
                    ));
                }
            }
            columns.push(c);
        }
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn to_big(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[(i, j)] = BigInt::from(v);
            }
        }
        d
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{:?}", self.to_dense())
    }
}

/// Dense arbitrary-precision matrix, used for unimodular witnesses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("dense product".into()));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.data.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub factors: Vec<BigInt>,
    /// `(U, V)` with `U · M · V = D`, both unimodular.
    pub witnesses: Option<(DenseMatrix, DenseMatrix)>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal(&self, rows: usize, cols: usize) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

#[derive(Debug)]
struct Overflow;

type Step<T> = std::result::Result<T, Overflow>;

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn s_is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn s_is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn add(&self, o: &Self) -> Step<Self>;
    fn sub(&self, o: &Self) -> Step<Self>;
    fn mul(&self, o: &Self) -> Step<Self>;
    fn neg(&self) -> Step<Self>;
    /// Truncating quotient.
    fn quot(&self, o: &Self) -> Self;
    fn divides(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn s_zero() -> Self {
        0
    }
    fn s_one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn s_is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn add(&self, o: &Self) -> Step<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Step<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Step<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Step<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn s_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, o: &Self) -> Step<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Step<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Step<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Step<Self> {
        Ok(-self)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        o.is_multiple_of(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Row-major dense working matrix.
struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Work<T> {
    fn identity(n: usize) -> Self {
        let mut a = vec![T::s_zero(); n * n];
        for i in 0..n {
            a[i * n + i] = T::s_one();
        }
        Work { rows: n, cols: n, a }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// row_i += c * row_k, from column `from` on.
    fn add_row(&mut self, i: usize, k: usize, c: &T, from: usize) -> Step<()> {
        for j in from..self.cols {
            let src = &self.a[k * self.cols + j];
            if src.s_is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].add(&c.mul(src)?)?;
            self.a[i * self.cols + j] = v;
        }
        Ok(())
    }

    /// col_j += c * col_k, from row `from` on.
    fn add_col(&mut self, j: usize, k: usize, c: &T, from: usize) -> Step<()> {
        for i in from..self.rows {
            let src = &self.a[i * self.cols + k];
            if src.s_is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].add(&c.mul(src)?)?;
            self.a[i * self.cols + j] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Step<()> {
        for j in 0..self.cols {
            let v = self.a[i * self.cols + j].neg()?;
            self.a[i * self.cols + j] = v;
        }
        Ok(())
    }

    fn to_dense(&self) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.a.iter().map(Scalar::to_big).collect(),
        }
    }
}

/// Dense Smith reduction with pivot of minimal absolute value. Optionally tracks
/// `U` (row operations) and `V` (column operations).
fn snf_dense<T: Scalar>(m: &mut Work<T>, mut u: Option<&mut Work<T>>, mut v: Option<&mut Work<T>>) -> Step<Vec<T>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // global minimum of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m.at(i, j);
                if !x.s_is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(m.at(bi, bj))) {
                    best = Some((i, j));
                    if x.is_unit() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            let p = m.at(t, t).clone();
            for i in t + 1..rows {
                if m.at(i, t).s_is_zero() {
                    continue;
                }
                let q = m.at(i, t).quot(&p).neg()?;
                m.add_row(i, t, &q, t)?;
                if let Some(u) = u.as_deref_mut() {
                    u.add_row(i, t, &q, 0)?;
                }
                clean &= m.at(i, t).s_is_zero();
            }
            for j in t + 1..cols {
                if m.at(t, j).s_is_zero() {
                    continue;
                }
                let q = m.at(t, j).quot(&p).neg()?;
                m.add_col(j, t, &q, t)?;
                if let Some(v) = v.as_deref_mut() {
                    v.add_col(j, t, &q, 0)?;
                }
                clean &= m.at(t, j).s_is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot is left in row t or column t
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m.at(i, t).s_is_zero() && m.at(i, t).abs_lt(m.at(best.0, best.1)) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m.at(t, j).s_is_zero() && m.at(t, j).abs_lt(m.at(best.0, best.1)) {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(t, best.0);
                }
                m.swap_cols(t, best.1);
                if let Some(v) = v.as_deref_mut() {
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(m.at(i, j))));
            match bad {
                Some(i) => {
                    m.add_row(t, i, &T::s_one(), t)?;
                    if let Some(u) = u.as_deref_mut() {
                        u.add_row(t, i, &T::s_one(), 0)?;
                    }
                }
                None => break,
            }
        }
        if m.at(t, t).s_is_negative() {
            m.negate_row(t)?;
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(t)?;
            }
        }
        t += 1;
    }
    Ok((0..t).map(|i| m.at(i, i).clone()).collect())
}

fn snf_with_witnesses<T: Scalar>(mat: &IntegerMatrix) -> Step<SmithForm> {
    let mut m = Work {
        rows: mat.rows,
        cols: mat.cols,
        a: vec![T::s_zero(); mat.rows * mat.cols],
    };
    for (j, col) in mat.columns.iter().enumerate() {
        for &(i, x) in col {
            m.a[i * mat.cols + j] = T::from_i64(x);
        }
    }
    let mut u = Work::<T>::identity(mat.rows);
    let mut v = Work::<T>::identity(mat.cols);
    let d = snf_dense(&mut m, Some(&mut u), Some(&mut v))?;
    Ok(SmithForm {
        factors: d.iter().map(Scalar::to_big).collect(),
        witnesses: Some((u.to_dense(), v.to_dense())),
    })
}

/// Sparse elimination of unit pivots followed by dense reduction of the remainder.
fn invariant_factors_generic<T: Scalar>(mat: &IntegerMatrix) -> Step<Vec<T>> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); mat.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); mat.cols];
    for (j, col) in mat.columns.iter().enumerate() {
        for &(i, x) in col {
            rows[i].insert(j, T::from_i64(x));
            col_rows[j].insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        let mut progressed = false;
        for c in 0..mat.cols {
            if col_rows[c].is_empty() {
                continue;
            }
            let pivot_row = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].is_unit())
                .min_by_key(|&r| rows[r].len());
            let Some(pr) = pivot_row else { continue };
            let prow = std::mem::take(&mut rows[pr]);
            for &cc in prow.keys() {
                col_rows[cc].remove(&pr);
            }
            let pval = prow[&c].clone();
            let targets: Vec<usize> = col_rows[c].iter().copied().collect();
            for r in targets {
                // pivot is ±1, so the multiplier is exact
                let factor = rows[r][&c].mul(&pval)?;
                for (&cc, x) in &prow {
                    let delta = factor.mul(x)?;
                    let entry = rows[r].entry(cc).or_insert_with(T::s_zero);
                    let nv = entry.sub(&delta)?;
                    if nv.s_is_zero() {
                        rows[r].remove(&cc);
                        col_rows[cc].remove(&r);
                    } else {
                        *rows[r].get_mut(&cc).unwrap() = nv;
                        col_rows[cc].insert(r);
                    }
                }
            }
            debug_assert!(col_rows[c].is_empty());
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..mat.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..mat.cols).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut out = vec![T::s_one(); units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut w = Work {
            rows: live_rows.len(),
            cols: live_cols.len(),
            a: vec![T::s_zero(); live_rows.len() * live_cols.len()],
        };
        for (k, &r) in live_rows.iter().enumerate() {
            for (c, x) in &rows[r] {
                w.a[k * w.cols + col_pos[c]] = x.clone();
            }
        }
        out.extend(snf_dense(&mut w, None, None)?);
    }
    Ok(out)
}

/// Smith normal form of `m`. With `witnesses`, also returns unimodular `U`, `V`
/// with `U · M · V = D` (dense; intended for small matrices).
pub fn smith_normal_form(m: &IntegerMatrix, witnesses: bool) -> SmithForm {
    if witnesses {
        snf_with_witnesses::<i64>(m)
            .or_else(|_| snf_with_witnesses::<BigInt>(m))
            .expect("bigint reduction cannot overflow")
    } else {
        SmithForm {
            factors: invariant_factors(m),
            witnesses: None,
        }
    }
}

/// Nonzero invariant factors of `m` in divisibility order.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    match invariant_factors_generic::<i64>(m) {
        Ok(d) => d.into_iter().map(BigInt::from).collect(),
        Err(Overflow) => invariant_factors_generic::<BigInt>(m).expect("bigint reduction cannot overflow"),
    }
}

/// Rank over the rationals.
pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

/// Converts an invariant factor to `u64`.
pub(crate) fn factor_to_u64(f: &BigInt) -> Result<u64> {
    f.to_u64()
        .ok_or_else(|| Error::Overflow(format!("invariant factor {f} exceeds u64")))
}

/// gcd of a list, 0 for an empty or all-zero list.
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &x| g.gcd(&x))
}
