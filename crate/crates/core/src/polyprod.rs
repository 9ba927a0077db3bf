//! Chain models of polyhedral products and the decomposition formulas checked against them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::chain::{
    algebraic_join, homology, product_tuples, simplicial_chain_complex, tensor_all, tensor_cells, ChainComplex,
    HomologySummary,
};
use crate::complex::{
    binomial, full_mask, full_subcomplex, is_shifted, order_complex_below, IndexSubset, ShiftedVerdict,
    SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::pair::{CellModel, PairModel};
use crate::series::RationalSeries;
use crate::sr::face_product_sum;

pub const DEFAULT_BUDGET: usize = 2_000_000;
pub const DEFAULT_SPLIT_BOUND: usize = 12;

/// Memo table of `H̃_*(K)` keyed by the canonical face encoding.
#[derive(Default)]
pub struct HomologyCache {
    map: Mutex<HashMap<Vec<u32>, HomologySummary>>,
}

impl HomologyCache {
    pub fn reduced_homology(&self, k: &SimplicialComplex) -> Result<HomologySummary> {
        let key = k.canonical_key();
        if let Some(h) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(h.clone());
        }
        let h = homology(&simplicial_chain_complex(k, true), false)?;
        self.map.lock().expect("cache lock").insert(key, h.clone());
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Limits and the shared memo cache.
pub struct Context {
    /// Largest number of tensor cells a chain model may have.
    pub budget: usize,
    /// Largest `m` for the enumeration over all subsets in [`Context::stable_splitting`].
    pub split_bound: usize,
    cache: HomologyCache,
}

impl Default for Context {
    fn default() -> Self {
        Context::new(DEFAULT_BUDGET)
    }
}

impl Context {
    pub fn new(budget: usize) -> Self {
        Context {
            budget,
            split_bound: DEFAULT_SPLIT_BOUND,
            cache: HomologyCache::default(),
        }
    }

    /// Process-wide context with default limits, used by the free functions.
    pub fn shared() -> &'static Context {
        static SHARED: OnceLock<Context> = OnceLock::new();
        SHARED.get_or_init(Context::default)
    }

    pub fn cache(&self) -> &HomologyCache {
        &self.cache
    }
}

/// One wedge summand of a decomposition, reported at Z-level degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSummand {
    #[serde(rename = "I")]
    pub subset: IndexSubset,
    pub description: String,
    pub homology: HomologySummary,
}

/// Summands, their direct sum, and the independently computed oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub summands: Vec<SplitSummand>,
    pub total: HomologySummary,
    pub oracle: HomologySummary,
    pub verified: bool,
}

impl Decomposition {
    fn new(summands: Vec<SplitSummand>, oracle: HomologySummary) -> Self {
        let total = summands
            .iter()
            .fold(HomologySummary::zero(), |acc, s| acc.direct_sum(&s.homology));
        Decomposition {
            verified: total == oracle,
            summands,
            total,
            oracle,
        }
    }
}

/// Multiset of sphere dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphereList(BTreeMap<usize, usize>);

impl SphereList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, dimension: usize, multiplicity: usize) {
        if multiplicity > 0 {
            *self.0.entry(dimension).or_default() += multiplicity;
        }
    }

    /// `(dimension, multiplicity)` by increasing dimension.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&d, &k)| (d, k))
    }

    pub fn multiplicity(&self, dimension: usize) -> usize {
        self.0.get(&dimension).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.values().sum()
    }

    /// Reduced homology of the wedge.
    pub fn homology(&self) -> HomologySummary {
        let entries: Vec<(isize, usize)> = self.entries().map(|(d, k)| (d as isize, k)).collect();
        HomologySummary::from_betti(&entries)
    }

    /// Every sphere suspended `k` times (`k` may be negative).
    pub fn shifted(&self, k: isize) -> SphereList {
        let mut out = SphereList::new();
        for (d, mult) in self.entries() {
            let nd = d as isize + k;
            assert!(nd >= 0, "negative sphere dimension");
            out.add(nd as usize, mult);
        }
        out
    }
}

impl fmt::Display for SphereList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "*");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|(d, k)| {
                if k == 1 {
                    format!("S^{d}")
                } else {
                    format!("{k}×S^{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ∨ "))
    }
}

impl Serialize for SphereList {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            dimension: usize,
            multiplicity: usize,
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (dimension, multiplicity) in self.entries() {
            seq.serialize_element(&Entry {
                dimension,
                multiplicity,
            })?;
        }
        seq.end()
    }
}

/// Repeats a single pair `m` times; otherwise requires exactly `m` pairs.
pub fn broadcast_pairs(pairs: &[PairModel], m: usize) -> Result<Vec<PairModel>> {
    match pairs.len() {
        1 => Ok(vec![pairs[0].clone(); m]),
        n if n == m => Ok(pairs.to_vec()),
        n => Err(Error::ArityMismatch { expected: m, got: n }),
    }
}

fn check_arity(k: &SimplicialComplex, pairs: &[PairModel]) -> Result<()> {
    if pairs.len() != k.m() {
        return Err(Error::ArityMismatch {
            expected: k.m(),
            got: pairs.len(),
        });
    }
    Ok(())
}

/// Per-coordinate cell choices for the product over a face `σ`.
fn choices_for(face: IndexSubset, pairs: &[PairModel], smash: bool) -> Vec<Vec<u32>> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if face.contains(i + 1) {
                p.x_only_cells()
            } else {
                let mut a = p.a_cells();
                if smash {
                    a.retain(|&c| c as usize != p.basepoint());
                }
                a
            }
        })
        .collect()
}

/// Number of basis tensors in the chain model, computed without enumerating them.
pub fn cell_count(k: &SimplicialComplex, pairs: &[PairModel], smash: bool) -> Result<u128> {
    check_arity(k, pairs)?;
    Ok(k.faces()
        .iter()
        .map(|&f| {
            choices_for(f, pairs, smash)
                .iter()
                .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
        })
        .fold(0u128, u128::saturating_add))
}

fn build_chain(ctx: &Context, k: &SimplicialComplex, pairs: &[PairModel], smash: bool) -> Result<ChainComplex> {
    let cells = cell_count(k, pairs, smash)?;
    if cells > ctx.budget as u128 {
        return Err(Error::BudgetExceeded {
            cells,
            budget: ctx.budget,
        });
    }
    let factors: Vec<_> = pairs.iter().map(PairModel::factor).collect();
    let mut tuples = Vec::with_capacity(cells as usize);
    for &face in k.faces() {
        product_tuples(&choices_for(face, pairs, smash), &mut tuples);
    }
    let basepoints: Vec<u32> = pairs.iter().map(|p| p.basepoint() as u32).collect();
    if smash {
        tensor_cells(&factors, tuples, |t| t.iter().zip(&basepoints).any(|(c, b)| c == b))
    } else {
        tensor_cells(&factors, tuples, |_| false)
    }
}

impl Context {
    /// Cellular chains of `Z(K;(X,A))`: basis tensors whose X-only support is a face of `K`.
    pub fn moment_angle_chain(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<ChainComplex> {
        build_chain(self, k, pairs, false)
    }

    /// Chains of `Ẑ(K;(X,A))` modulo the basepoint: its ordinary homology is the
    /// reduced homology of the smash polyhedral product.
    pub fn smash_moment_angle_chain(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<ChainComplex> {
        build_chain(self, k, pairs, true)
    }

    /// `H̃_*(Z(K;(X,A)))`.
    pub fn moment_angle_homology(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<HomologySummary> {
        homology(&self.moment_angle_chain(k, pairs)?, true)
    }

    /// `H̃_*(Ẑ(K;(X,A)))`.
    pub fn smash_homology(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<HomologySummary> {
        homology(&self.smash_moment_angle_chain(k, pairs)?, false)
    }

    /// `H̃(Z(K)) = ⊕_{∅≠I⊆[m]} H̃(Ẑ(K_I))`, one summand per nonempty `I`.
    pub fn stable_splitting(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<Decomposition> {
        check_arity(k, pairs)?;
        if k.m() > self.split_bound {
            return Err(Error::EnumerationBoundExceeded {
                m: k.m(),
                bound: self.split_bound,
            });
        }
        let oracle = self.moment_angle_homology(k, pairs)?;
        let summands = nonempty_subsets(k.m())
            .into_par_iter()
            .map(|subset| {
                let sub = full_subcomplex(k, subset);
                let sub_pairs: Vec<PairModel> = subset.vertices().map(|v| pairs[v - 1].clone()).collect();
                Ok(SplitSummand {
                    subset,
                    description: format!("Ẑ(K_{subset})"),
                    homology: self.smash_homology(&sub, &sub_pairs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition::new(summands, oracle))
    }

    /// `H̃_k(Z(K;(D^(n+1),S^n))) = ⊕_{I∉K} H̃_{k-1-n|I|}(K_I)`, with one summand per non-face.
    pub fn hochster_homology(&self, k: &SimplicialComplex, n: usize) -> Result<(HomologySummary, Vec<SplitSummand>)> {
        let summands = nonempty_subsets(k.m())
            .into_par_iter()
            .filter(|&subset| {
                let face = k.contains(subset);
                debug_assert!(!face || full_subcomplex(k, subset).is_simplex());
                !face
            })
            .map(|subset| {
                let shift = 1 + n * subset.len();
                let h = self.cache.reduced_homology(&full_subcomplex(k, subset))?;
                Ok(SplitSummand {
                    subset,
                    description: format!("Σ^{shift}|K_{subset}|"),
                    homology: h.shifted(shift as isize),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let total = summands
            .iter()
            .fold(HomologySummary::zero(), |acc, s| acc.direct_sum(&s.homology));
        Ok((total, summands))
    }

    /// `Ẑ(K) ≃ ⋁_{σ∈K} |Δ(K̄_{<σ})| ∗ D̂(σ)` for pairs with null-homotopic inclusions.
    pub fn wedge_lemma_decomposition(&self, k: &SimplicialComplex, pairs: &[PairModel]) -> Result<Decomposition> {
        check_arity(k, pairs)?;
        for (index, p) in pairs.iter().enumerate() {
            if !p.kind().is_certified() {
                return Err(Error::PairNotCertified {
                    index: index + 1,
                    name: p.name().to_string(),
                });
            }
        }
        let oracle = self.smash_homology(k, pairs)?;
        let x_models: Vec<ChainComplex> = pairs.iter().map(|p| p.x_model().reduced_chain_complex()).collect();
        let a_models: Vec<ChainComplex> = pairs.iter().map(|p| p.a_model().reduced_chain_complex()).collect();
        let summands = k
            .faces()
            .par_iter()
            .map(|&sigma| {
                let order = order_complex_below(k, sigma)?;
                let factors: Vec<ChainComplex> = (1..=k.m())
                    .map(|i| {
                        if sigma.contains(i) {
                            x_models[i - 1].clone()
                        } else {
                            a_models[i - 1].clone()
                        }
                    })
                    .collect();
                let d_hat = tensor_all(&factors)?;
                let joined = algebraic_join(&simplicial_chain_complex(&order, true), &d_hat)?;
                Ok(SplitSummand {
                    subset: sigma,
                    description: format!("|Δ(K̄_<{sigma})| ∗ D̂({sigma})"),
                    homology: homology(&joined, false)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition::new(summands, oracle))
    }

    /// `H̃_*(|K| ∗ Â^{[m]})`, the model of `Ẑ(K;(CA,A))`.
    pub fn contractible_x_summary(&self, k: &SimplicialComplex, a_models: &[CellModel]) -> Result<HomologySummary> {
        if a_models.len() != k.m() {
            return Err(Error::ArityMismatch {
                expected: k.m(),
                got: a_models.len(),
            });
        }
        let a_hat = tensor_all(
            &a_models
                .iter()
                .map(CellModel::reduced_chain_complex)
                .collect::<Vec<_>>(),
        )?;
        homology(&algebraic_join(&simplicial_chain_complex(k, true), &a_hat)?, false)
    }

    /// `ΣZ(K;(D^(n+1),S^n))` as a wedge of spheres, for shifted `K`.
    pub fn sphere_wedge_report(
        &self,
        k: &SimplicialComplex,
        n: usize,
        labeling: Option<&[usize]>,
    ) -> Result<SphereList> {
        if let ShiftedVerdict::NotShifted { .. } = is_shifted(k, labeling)? {
            return Err(Error::NotShifted);
        }
        let mut out = SphereList::new();
        for subset in nonempty_subsets(k.m()) {
            if k.contains(subset) {
                continue;
            }
            let h = self.cache.reduced_homology(&full_subcomplex(k, subset))?;
            if !h.is_torsion_free() {
                return Err(Error::TorsionInShiftedSubcomplex { subset });
            }
            for (j, g) in h.iter() {
                let dim = j + 2 + (n * subset.len()) as isize;
                out.add(dim as usize, g.betti);
            }
        }
        Ok(out)
    }
}

/// Nonempty subsets of `[m]` in canonical order.
pub(crate) fn nonempty_subsets(m: usize) -> Vec<IndexSubset> {
    let mut v: Vec<IndexSubset> = (1..=full_mask(m)).map(IndexSubset::from_mask).collect();
    v.sort_unstable();
    v
}

pub fn moment_angle_chain(k: &SimplicialComplex, pairs: &[PairModel]) -> Result<ChainComplex> {
    Context::shared().moment_angle_chain(k, pairs)
}

pub fn smash_moment_angle_chain(k: &SimplicialComplex, pairs: &[PairModel]) -> Result<ChainComplex> {
    Context::shared().smash_moment_angle_chain(k, pairs)
}

pub fn stable_splitting(k: &SimplicialComplex, pairs: &[PairModel]) -> Result<Decomposition> {
    Context::shared().stable_splitting(k, pairs)
}

pub fn hochster_homology(k: &SimplicialComplex, n: usize) -> Result<(HomologySummary, Vec<SplitSummand>)> {
    Context::shared().hochster_homology(k, n)
}

pub fn wedge_lemma_decomposition(k: &SimplicialComplex, pairs: &[PairModel]) -> Result<Decomposition> {
    Context::shared().wedge_lemma_decomposition(k, pairs)
}

pub fn contractible_x_summary(k: &SimplicialComplex, a_models: &[CellModel]) -> Result<HomologySummary> {
    Context::shared().contractible_x_summary(k, a_models)
}

pub fn sphere_wedge_report(k: &SimplicialComplex, n: usize, labeling: Option<&[usize]>) -> Result<SphereList> {
    Context::shared().sphere_wedge_report(k, n, labeling)
}

/// `Σ_{∅≠I∈K} Π_{i∈I} P̄(X_i)`: reduced Poincaré series of `Z(K;(X,A))` with contractible `A_i`.
pub fn contractible_a_series(k: &SimplicialComplex, x_series: &[RationalSeries]) -> Result<RationalSeries> {
    face_product_sum(k, x_series)
}

/// `Σ_k f_k P̄(X)^(k+1)` for identical `X_i`.
pub fn poincare_polynomial(k: &SimplicialComplex, px: &RationalSeries) -> Result<RationalSeries> {
    if !px.constant_term()?.is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    Ok(k.f_vector()
        .iter()
        .enumerate()
        .fold(RationalSeries::zero(), |acc, (i, &f)| acc.add(&px.pow(i + 1).scale(f))))
}

/// Suspension exponent and multiplicity rule for the skeleton sphere formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PorterForm {
    /// `Σ^{q+1} Ŷ^I` with multiplicity `C(|I|-1, q+1)`; agrees with the chain-level oracle.
    SkeletonShift,
    /// `Σ^{|I|+1} Ŷ^I` with multiplicity `C(|I|+1, q+1)`; kept for comparison, it does not.
    CardinalityShift,
}

/// `Z(Δ[m-1]_q; (CΩY, ΩY))` for spheres `Y_i` of the given dimensions, as a wedge of
/// spheres indexed by `I ⊆ [m]` with `|I| > q+1`.
pub fn porter_decomposition(m: usize, q: usize, y_dims: &[usize]) -> Result<SphereList> {
    porter_decomposition_with(m, q, y_dims, PorterForm::SkeletonShift)
}

pub fn porter_decomposition_with(m: usize, q: usize, y_dims: &[usize], form: PorterForm) -> Result<SphereList> {
    if m < 2 || q + 2 > m {
        return Err(Error::SkeletonOutOfRange { m, q: q as isize });
    }
    if y_dims.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} sphere dimensions for m = {m}",
            y_dims.len()
        )));
    }
    let mut out = SphereList::new();
    for subset in nonempty_subsets(m) {
        let size = subset.len();
        if size <= q + 1 {
            continue;
        }
        let smash: usize = subset.vertices().map(|v| y_dims[v - 1]).sum();
        let (shift, mult) = match form {
            PorterForm::SkeletonShift => (q + 1, binomial(size - 1, q + 1)),
            PorterForm::CardinalityShift => (size + 1, binomial(size + 1, q + 1)),
        };
        out.add(shift + smash, mult as usize);
    }
    Ok(out)
}
