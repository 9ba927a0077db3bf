//! Characteristic matrices over pure complexes and the even-degree invariants of
//! the associated quasi-toric manifolds.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::chain::HomologySummary;
use crate::complex::{IndexSubset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::{gcd_all, smith_normal_form, DenseMatrix, IntegerMatrix};
use crate::polyprod::Context;
use crate::series::{big_json_vec, Poly};
use crate::sr::{linear_string, sr_hilbert_series, sr_presentation, IdealPresentation};

/// `λ`: row `i` is the circle direction `λ_i ∈ Z^n` attached to vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl CharacteristicMatrix {
    pub fn new(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(CharacteristicMatrix { n, rows })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Columns as linear forms in `x_1..x_m`: `θ_j = Σ_i λ_ij x_i`.
    pub fn linear_forms(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect()
    }

    /// Reads `{"n": .., "rows": [[..], ..]}` or a whitespace matrix, one row per line.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let raw: CharacteristicMatrix =
                serde_json::from_str(text).map_err(|e| Error::parse(Some(e.line()), e.to_string()))?;
            return Self::new(raw.n, raw.rows);
        }
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::parse(Some(lineno + 1), format!("not an integer: {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = rows.first().map(Vec::len) {
                if row.len() != first {
                    return Err(Error::parse(
                        Some(lineno + 1),
                        format!("row has {} entries, expected {first}", row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(None, "empty matrix"));
        }
        Self::new(rows[0].len(), rows)
    }
}

/// A failed condition on `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ToricDiagnostic {
    /// Row `row` (1-based) has entry gcd `gcd ≠ 1`.
    NotPrimitive { row: usize, gcd: i64 },
    /// The rows over `face` are linearly dependent.
    DependentRows { face: IndexSubset },
    /// The rows over a maximal face have determinant other than ±1.
    NotUnimodular { face: IndexSubset, det: i64 },
}

impl std::fmt::Display for ToricDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ToricDiagnostic::NotPrimitive { row, gcd } => write!(f, "row {row} is not primitive (gcd {gcd})"),
            ToricDiagnostic::DependentRows { face } => write!(f, "rows over face {face} are dependent"),
            ToricDiagnostic::NotUnimodular { face, det } => write!(f, "face {face}: det = {det}"),
        }
    }
}

/// Outcome of [`validate_characteristic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicCheck {
    pub valid: bool,
    pub diagnostics: Vec<ToricDiagnostic>,
    /// Remarks that do not invalidate the input.
    pub notes: Vec<String>,
}

fn check_pure(k: &SimplicialComplex, n: usize) -> Result<()> {
    if !k.is_pure() {
        return Err(Error::NotPure { expected: k.dim() });
    }
    if k.dim() + 1 != n as isize {
        return Err(Error::DimensionMismatch(format!(
            "complex has dimension {}, torus rank {n} needs {}",
            k.dim(),
            n as isize - 1
        )));
    }
    Ok(())
}

/// Checks primitivity of every row and unimodularity over every maximal face.
/// Faces below the top dimension are independent whenever their maximal face is.
pub fn validate_characteristic(k: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Result<CharacteristicCheck> {
    check_pure(k, lambda.n)?;
    if lambda.m() != k.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows for {} vertices",
            lambda.m(),
            k.m()
        )));
    }
    let mut diagnostics = Vec::new();
    for (i, row) in lambda.rows.iter().enumerate() {
        let g = gcd_all(row);
        if g != 1 {
            diagnostics.push(ToricDiagnostic::NotPrimitive { row: i + 1, gcd: g });
        }
    }
    for &face in k.maximal_faces() {
        let sub: Vec<Vec<i64>> = face.vertices().map(|v| lambda.rows[v - 1].clone()).collect();
        let det = DenseMatrix::from_rows(&sub).determinant()?;
        if det.abs() != 1.into() {
            diagnostics.push(if det == 0.into() {
                ToricDiagnostic::DependentRows { face }
            } else {
                ToricDiagnostic::NotUnimodular {
                    face,
                    det: det.to_i64().ok_or_else(|| Error::Overflow(det.to_string()))?,
                }
            });
        }
    }
    let mut notes = Vec::new();
    let sphere = HomologySummary::sphere(lambda.n as isize - 1);
    if Context::shared().cache().reduced_homology(k)? != sphere {
        notes.push(format!(
            "complex is not a homology {}-sphere, so it is not the boundary of a simplicial polytope",
            lambda.n as isize - 1
        ));
    } else {
        notes.push("polytopality of the complex is assumed, not checked".to_string());
    }
    Ok(CharacteristicCheck {
        valid: diagnostics.is_empty(),
        diagnostics,
        notes,
    })
}

/// Even Betti numbers `b_(2i) = h_i`, read off `(1 - t^2)^n · Hilb(SR(K))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricBetti {
    /// `b_0 .. b_(2n)`.
    pub betti: Vec<u64>,
    pub euler: u64,
    /// `Σ h_i t^(2i)`.
    pub h_polynomial: Poly,
}

impl Serialize for ToricBetti {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ToricBetti", 3)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("euler", &self.euler)?;
        st.serialize_field("h_polynomial", &big_json_vec(self.h_polynomial.coeffs()))?;
        st.end()
    }
}

pub fn toric_betti(k: &SimplicialComplex, n: usize) -> Result<ToricBetti> {
    check_pure(k, n)?;
    let one_minus = Poly::new(vec![1, 0, -1]);
    let h_poly = sr_hilbert_series(k, 2)?
        .times_poly_exact(&one_minus.pow(n))
        .ok_or(Error::NonpolynomialQuotient)?;
    let coeffs = h_poly
        .to_i64_vec()
        .ok_or_else(|| Error::Overflow("h-vector entry".into()))?;
    let mut h = vec![0i64; n + 1];
    for (deg, &c) in coeffs.iter().enumerate() {
        if deg % 2 == 1 || deg / 2 > n {
            if c != 0 {
                return Err(Error::NonpolynomialQuotient);
            }
            continue;
        }
        h[deg / 2] = c;
    }
    debug_assert_eq!(h, k.h_vector());
    if h.iter().any(|&x| x < 0) {
        return Err(Error::NegativeHVector(h));
    }
    let mut betti = vec![0u64; 2 * n + 1];
    for (i, &x) in h.iter().enumerate() {
        betti[2 * i] = x as u64;
    }
    Ok(ToricBetti {
        euler: betti.iter().sum(),
        betti,
        h_polynomial: h_poly,
    })
}

/// Stanley–Reisner monomials together with the linear forms `θ_1..θ_n`.
pub fn toric_presentation(k: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Result<IdealPresentation> {
    let check = validate_characteristic(k, lambda)?;
    if let Some(first) = check.diagnostics.first() {
        return Err(Error::InvalidCharacteristic(first.to_string()));
    }
    let mut p = sr_presentation(k, 2)?;
    p.linear = lambda.linear_forms();
    Ok(p)
}

/// `row -= q * pivot`, or `None` on overflow.
fn subtract_multiple(row: &mut [i64], pivot: &[i64], q: i64) -> Option<()> {
    for (x, &y) in row.iter_mut().zip(pivot) {
        *x = x.checked_sub(q.checked_mul(y)?)?;
    }
    Some(())
}

/// Hermite normal form of the rows (positive pivots, entries above each pivot
/// reduced into `[0, pivot)`), zero rows dropped. Used only for display.
pub fn normalize_linear(forms: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let overflow = || Error::Overflow("linear form normalization".into());
    let mut a: Vec<Vec<i64>> = forms.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == a.len() {
            break;
        }
        // Euclid on column c among rows pivot_row..
        loop {
            let best = (pivot_row..a.len())
                .filter(|&r| a[r][c] != 0)
                .min_by_key(|&r| a[r][c].unsigned_abs());
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..a.len() {
                if a[r][c] != 0 {
                    let q = a[r][c] / a[pivot_row][c];
                    let pivot = a[pivot_row].clone();
                    subtract_multiple(&mut a[r], &pivot, q).ok_or_else(overflow)?;
                    if a[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][c] == 0 {
            continue;
        }
        if a[pivot_row][c] < 0 {
            for x in a[pivot_row].iter_mut() {
                *x = x.checked_neg().ok_or_else(overflow)?;
            }
        }
        let p = a[pivot_row][c];
        for r in 0..pivot_row {
            let q = a[r][c].div_euclid(p);
            if q != 0 {
                let pivot = a[pivot_row].clone();
                subtract_multiple(&mut a[r], &pivot, q).ok_or_else(overflow)?;
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    Ok(a)
}

/// Rank of `Ker(λ: Z^m → Z^n)` with a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelInfo {
    pub rank: usize,
    /// Rows of `U` outside the rank of `U · λ · V = D`; each pairs to zero with every column.
    pub basis: Vec<Vec<i64>>,
}

pub fn kernel_rank(lambda: &CharacteristicMatrix) -> Result<KernelInfo> {
    let mat = IntegerMatrix::from_rows(&lambda.rows)?;
    let snf = smith_normal_form(&mat, true);
    let r = snf.rank();
    if r < lambda.n {
        return Err(Error::RankDeficient { rank: r, n: lambda.n });
    }
    let (u, _) = snf.witnesses.expect("witnesses requested");
    let basis = (r..lambda.m())
        .map(|i| {
            u.row(i)
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelInfo {
        rank: lambda.m() - r,
        basis,
    })
}

/// Everything computed for a characteristic pair `(K, λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct ToricReport {
    pub n: usize,
    pub validity: CharacteristicCheck,
    #[serde(flatten)]
    pub betti: ToricBetti,
    pub presentation: IdealPresentation,
    pub relations: Vec<String>,
    pub normalized_linear: Vec<String>,
    pub kernel: KernelInfo,
}

pub fn toric_report(k: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Result<ToricReport> {
    let validity = validate_characteristic(k, lambda)?;
    let presentation = toric_presentation(k, lambda)?;
    let normalized = normalize_linear(&presentation.linear)?;
    Ok(ToricReport {
        n: lambda.n,
        betti: toric_betti(k, lambda.n)?,
        relations: presentation.relation_strings(),
        normalized_linear: normalized.iter().map(|r| linear_string(r)).collect(),
        presentation,
        validity,
        kernel: kernel_rank(lambda)?,
    })
}

/// The standard `λ` for `∂Δ[n]`: identity rows followed by `(-1, .., -1)`.
pub fn standard_projective_lambda(n: usize) -> CharacteristicMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rows.push(vec![-1; n]);
    CharacteristicMatrix { n, rows }
}
