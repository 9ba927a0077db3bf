//! Oracles and generators shared by the integration tests. Nothing here calls the
//! library's decomposition formulas.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use polyprod::chain::{homology, quotient_complex, ChainComplex};
use polyprod::{HomologySummary, PairModel, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finitely generated abelian group as (rank, multiset of prime powers).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Primary {
    pub rank: usize,
    pub powers: BTreeMap<(u64, u32), usize>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Primary {
    pub fn cyclic(order: u64) -> Self {
        let mut g = Primary::default();
        g.add_cyclic(order);
        g
    }

    pub fn add_cyclic(&mut self, order: u64) {
        if order == 0 {
            self.rank += 1;
            return;
        }
        for pe in factor(order) {
            *self.powers.entry(pe).or_default() += 1;
        }
    }

    pub fn add(&mut self, other: &Primary) {
        self.rank += other.rank;
        for (k, v) in &other.powers {
            *self.powers.entry(*k).or_default() += v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.powers.is_empty()
    }

    /// Cyclic orders, `0` standing for `Z`.
    pub fn cyclics(&self) -> Vec<u64> {
        let mut v = vec![0; self.rank];
        for (&(p, e), &k) in &self.powers {
            v.extend(std::iter::repeat_n(p.pow(e), k));
        }
        v
    }
}

/// Degree-wise primary decomposition of a homology summary.
pub fn primary(h: &HomologySummary) -> BTreeMap<isize, Primary> {
    let mut out = BTreeMap::new();
    for (d, g) in h.iter() {
        let mut p = Primary {
            rank: g.betti,
            ..Primary::default()
        };
        for &t in &g.torsion {
            p.add_cyclic(t);
        }
        if !p.is_zero() {
            out.insert(d, p);
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Z/a ⊗ Z/b` and `Tor(Z/a, Z/b)` with `0` meaning `Z`.
fn tensor_cyclic(a: u64, b: u64) -> (u64, Option<u64>) {
    match (a, b) {
        (0, x) | (x, 0) => (x, None),
        (x, y) => {
            let g = gcd(x, y);
            (g, Some(g))
        }
    }
}

/// Künneth formula with Tor terms: `H(C ⊗ D)` from `H(C)` and `H(D)`.
pub fn kunneth(hc: &HomologySummary, hd: &HomologySummary) -> BTreeMap<isize, Primary> {
    let pc = primary(hc);
    let pd = primary(hd);
    let mut out: BTreeMap<isize, Primary> = BTreeMap::new();
    for (&i, gi) in &pc {
        for (&j, gj) in &pd {
            for a in gi.cyclics() {
                for b in gj.cyclics() {
                    let (t, tor) = tensor_cyclic(a, b);
                    if t != 1 {
                        let mut g = Primary::default();
                        g.add_cyclic(t);
                        out.entry(i + j).or_default().add(&g);
                    }
                    if let Some(o) = tor.filter(|&o| o != 1) {
                        out.entry(i + j + 1).or_default().add(&Primary::cyclic(o));
                    }
                }
            }
        }
    }
    out.retain(|_, g| !g.is_zero());
    out
}

pub fn shift(h: BTreeMap<isize, Primary>, k: isize) -> BTreeMap<isize, Primary> {
    h.into_iter().map(|(d, g)| (d + k, g)).collect()
}

/// Random complex on `[m]` from a few random generating faces.
pub fn random_complex(rng: &mut ChaCha8Rng, m: usize) -> SimplicialComplex {
    let gens = rng.gen_range(1..=m + 2);
    let faces: Vec<Vec<usize>> = (0..gens)
        .map(|_| (1..=m).filter(|_| rng.gen_bool(0.45)).collect())
        .collect();
    SimplicialComplex::from_maximal_faces(m, &faces).unwrap()
}

/// Shifted closure of random generators (shifted under the identity labeling),
/// then relabeled by a random permutation when `scramble` is set.
pub fn random_shifted(rng: &mut ChaCha8Rng, m: usize, scramble: bool) -> SimplicialComplex {
    let gens = rng.gen_range(1..=3);
    let mut faces: BTreeSet<u32> = BTreeSet::new();
    let mut stack: Vec<u32> = (0..gens)
        .map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).fold(0u32, |a, v| a | 1 << v))
        .collect();
    stack.push(0);
    while let Some(f) = stack.pop() {
        if !faces.insert(f) {
            continue;
        }
        for v in 0..m {
            if f >> v & 1 == 1 {
                stack.push(f & !(1 << v));
                for u in 0..v {
                    if f >> u & 1 == 0 {
                        stack.push(f & !(1 << v) | 1 << u);
                    }
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..m).collect();
    if scramble {
        perm.shuffle(rng);
    }
    let lists: Vec<Vec<usize>> = faces
        .iter()
        .map(|&f| (0..m).filter(|v| f >> v & 1 == 1).map(|v| perm[v] + 1).collect())
        .collect();
    SimplicialComplex::from_maximal_faces(m, &lists).unwrap()
}

/// Reduced homology of the smash polyhedral product computed as an explicit
/// quotient of the full chain model by the tensors with a basepoint coordinate,
/// identified through cell labels.
pub fn smash_by_quotient(z: &ChainComplex, pairs: &[PairModel]) -> HomologySummary {
    let base: Vec<String> = pairs
        .iter()
        .map(|p| p.cells()[p.basepoint()].cell.name.clone())
        .collect();
    let q = quotient_complex(z, |d, i| {
        let label = &z.labels(d).expect("labelled chain model")[i];
        !label.split('⊗').zip(&base).any(|(c, b)| c == b)
    })
    .unwrap();
    homology(&q, false).unwrap()
}

/// Faces of a complex as sorted vertex lists.
pub fn face_lists(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.faces().iter().map(|f| f.to_vec()).collect()
}

/// Number of monomials `x^a` of total degree `deg` whose support is a face.
pub fn count_face_monomials(k: &SimplicialComplex, deg: usize) -> u64 {
    // stars and bars over each face support, all exponents positive
    k.faces()
        .iter()
        .map(|f| {
            let s = f.len();
            if s == 0 {
                u64::from(deg == 0)
            } else if deg < s {
                0
            } else {
                binom((deg - 1) as u64, (s - 1) as u64)
            }
        })
        .sum()
}

/// Brute-force enumeration of exponent vectors, for small cases.
pub fn count_face_monomials_brute(k: &SimplicialComplex, deg: usize) -> u64 {
    fn rec(k: &SimplicialComplex, m: usize, i: usize, left: usize, support: u32) -> u64 {
        if i == m {
            let face = polyprod::IndexSubset::from_mask(support);
            return u64::from(left == 0 && k.contains(face));
        }
        (0..=left)
            .map(|e| rec(k, m, i + 1, left - e, if e > 0 { support | 1 << i } else { support }))
            .sum()
    }
    rec(k, k.m(), 0, deg, 0)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
