//! Stanley–Reisner presentations and graded series.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::complex::{binomial, IndexSubset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::series::{big_json, Poly, RationalSeries};

/// Polynomial generators with monomial (and optionally linear) relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPresentation {
    /// Degree of `x_i`, indexed from vertex 1.
    pub generator_degrees: Vec<usize>,
    /// Squarefree monomials `x_I`, one per minimal non-face.
    pub monomials: Vec<IndexSubset>,
    /// Linear forms `Σ_i c_i x_i`, as coefficient vectors of length `m`.
    pub linear: Vec<Vec<i64>>,
}

impl IdealPresentation {
    pub fn m(&self) -> usize {
        self.generator_degrees.len()
    }

    /// Human-readable relations, monomials first.
    pub fn relation_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.monomials.iter().map(|s| monomial_string(*s)).collect();
        out.extend(self.linear.iter().map(|c| linear_string(c)));
        out
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generator_degrees
            .iter()
            .enumerate()
            .map(|(i, d)| format!("x{} (deg {d})", i + 1))
            .collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        let rels = self.relation_strings();
        if rels.is_empty() {
            write!(f, "relations: none")
        } else {
            write!(f, "relations: {}", rels.join(", "))
        }
    }
}

pub(crate) fn monomial_string(s: IndexSubset) -> String {
    s.vertices().map(|v| format!("x{v}")).collect()
}

pub(crate) fn linear_string(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let term = if mag == 1 {
            format!("x{}", i + 1)
        } else {
            format!("{mag}x{}", i + 1)
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `x_1..x_m` in degree `degree` modulo the minimal non-face monomials.
pub fn sr_presentation(k: &SimplicialComplex, degree: usize) -> Result<IdealPresentation> {
    if degree == 0 {
        return Err(Error::InvalidDegree);
    }
    Ok(IdealPresentation {
        generator_degrees: vec![degree; k.m()],
        monomials: k.minimal_non_faces(),
        linear: Vec::new(),
    })
}

/// `Σ_{I∈K} (t^d / (1 - t^d))^{|I|}`, empty face included.
pub fn sr_hilbert_series(k: &SimplicialComplex, d: usize) -> Result<RationalSeries> {
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    // in s = t^d: Σ_j f_{j-1} s^j (1-s)^{D-j} / (1-s)^D with D the largest face size
    let top = (k.dim() + 1) as usize;
    let one_minus = Poly::new(vec![1, -1]);
    let mut num = Poly::zero();
    for j in 0..=top {
        let count = k.faces_of_size(j).count();
        if count == 0 {
            continue;
        }
        let term = &Poly::monomial(count, j) * &one_minus.pow(top - j);
        num = &num + &term;
    }
    RationalSeries::new(num.inflate(d), one_minus.pow(top).inflate(d))
}

fn check_reduced(series: &[RationalSeries], m: usize) -> Result<()> {
    if series.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: series.len(),
        });
    }
    for s in series {
        if !s.constant_term()?.is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
    }
    Ok(())
}

/// `Σ_{∅≠σ∈K} Π_{i∈σ} series[i]`.
pub(crate) fn face_product_sum(k: &SimplicialComplex, series: &[RationalSeries]) -> Result<RationalSeries> {
    check_reduced(series, k.m())?;
    let mut products: HashMap<u32, RationalSeries> = HashMap::new();
    products.insert(0, RationalSeries::one());
    let mut total = RationalSeries::zero();
    // faces are in canonical order, so every facet-minus-top-vertex is already present
    for face in k.faces().iter().filter(|f| !f.is_empty()) {
        let top = face.vertices().last().expect("nonempty face");
        let rest = face.without(top);
        let p = products[&rest.mask()].mul(&series[top - 1]);
        total = total.add(&p);
        products.insert(face.mask(), p);
    }
    Ok(total)
}

/// `1 + Σ_{∅≠I∈K} Π_{i∈I} P̄(X_i)`: the graded rank series of the generalized quotient.
pub fn generalized_sr_series(k: &SimplicialComplex, x_series: &[RationalSeries]) -> Result<RationalSeries> {
    Ok(RationalSeries::one().add(&face_product_sum(k, x_series)?))
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DjRow {
    pub degree: usize,
    pub sr: BigInt,
    pub wedge: BigInt,
}

impl Serialize for DjRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DjRow", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("sr", &big_json(&self.sr))?;
        st.serialize_field("wedge", &big_json(&self.wedge))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DjCheck {
    pub truncation: usize,
    pub table: Vec<DjRow>,
    /// Degrees where the two sides differ.
    pub mismatches: Vec<usize>,
    pub verified: bool,
}

/// Compares the Stanley–Reisner Hilbert series (degree-2 generators) with the
/// rank series of `⋁_{I∈K} (BS^1)^{∧I}`, degree by degree below `trunc`.
pub fn dj_additive_check(k: &SimplicialComplex, trunc: usize) -> Result<DjCheck> {
    let sr = sr_hilbert_series(k, 2)?.expand(trunc)?;
    let f: Vec<usize> = (0..=k.m()).map(|s| k.faces_of_size(s).count()).collect();
    let mut table = Vec::with_capacity(trunc);
    let mut mismatches = Vec::new();
    for (degree, sr_coeff) in sr.into_iter().enumerate() {
        // (BS^1)^{∧s} has rank C(j-1, s-1) in degree 2j; the empty face contributes the unit
        let wedge: BigInt = if degree % 2 == 1 {
            BigInt::zero()
        } else if degree == 0 {
            BigInt::from(1)
        } else {
            let j = degree / 2;
            (1..=j.min(k.m()))
                .map(|s| BigInt::from(f[s]) * BigInt::from(binomial(j - 1, s - 1)))
                .sum()
        };
        if wedge != sr_coeff {
            mismatches.push(degree);
        }
        table.push(DjRow {
            degree,
            sr: sr_coeff,
            wedge,
        });
    }
    Ok(DjCheck {
        truncation: trunc,
        verified: mismatches.is_empty(),
        table,
        mismatches,
    })
}
