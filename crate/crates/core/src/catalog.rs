//! Standard complexes and exhaustive enumeration of small complexes.

use std::collections::BTreeSet;

use crate::complex::{full_mask, next_permutation, IndexSubset, SimplicialComplex};

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2_triangulation() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(
        6,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [3, 4, 6],
            [2, 4, 5],
            [3, 5, 6],
            [2, 4, 6],
        ],
    )
    .expect("static complex")
}

/// The 4-cycle.
pub fn square() -> SimplicialComplex {
    polygon(4)
}

/// The boundary of an `n`-gon, `n ≥ 3`.
pub fn polygon(n: usize) -> SimplicialComplex {
    let edges: Vec<[usize; 2]> = (1..=n).map(|i| [i, i % n + 1]).collect();
    SimplicialComplex::from_maximal_faces(n, &edges).expect("static complex")
}

/// `m` isolated vertices.
pub fn discrete(m: usize) -> SimplicialComplex {
    SimplicialComplex::skeleton(m, 0).expect("vertex count in range")
}

/// Every simplicial complex on `[m]` (ghost vertices allowed), one per antichain
/// of maximal faces, in a deterministic order.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= 6, "exhaustive enumeration is only practical for m <= 6");
    // subsets by decreasing size; an antichain is built greedily along this order
    let mut subsets: Vec<u32> = (0..=full_mask(m)).collect();
    subsets.sort_by_key(|&s| std::cmp::Reverse(IndexSubset::from_mask(s)));
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(idx: usize, subsets: &[u32], chosen: &mut Vec<u32>, m: usize, out: &mut Vec<SimplicialComplex>) {
        if idx == subsets.len() {
            if !chosen.is_empty() {
                out.push(SimplicialComplex::from_generators(m, chosen.clone()));
            }
            return;
        }
        let s = subsets[idx];
        if chosen.iter().any(|&c| s & !c == 0) {
            rec(idx + 1, subsets, chosen, m, out);
            return;
        }
        chosen.push(s);
        rec(idx + 1, subsets, chosen, m, out);
        chosen.pop();
        rec(idx + 1, subsets, chosen, m, out);
    }
    rec(0, &subsets, &mut chosen, m, &mut out);
    out
}

/// Lexicographically least face list over all vertex relabelings.
pub fn isomorphism_key(k: &SimplicialComplex) -> Vec<u32> {
    let m = k.m();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<u32>> = None;
    loop {
        let mut faces: Vec<u32> = k
            .faces()
            .iter()
            .map(|f| f.vertices().fold(0u32, |acc, v| acc | 1 << perm[v - 1]))
            .collect();
        faces.sort_unstable();
        if best.as_ref().is_none_or(|b| faces < *b) {
            best = Some(faces);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut key = vec![m as u32];
    key.extend(best.unwrap_or_default());
    key
}

/// One representative per isomorphism class of complexes on `[m]`.
pub fn complexes_up_to_isomorphism(m: usize) -> Vec<SimplicialComplex> {
    let mut seen = BTreeSet::new();
    all_complexes(m)
        .into_iter()
        .filter(|k| seen.insert(isomorphism_key(k)))
        .collect()
}

/// Named complexes accepted where a file path is expected (prefixed with `@`).
pub fn named(name: &str) -> Option<SimplicialComplex> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, a.parse::<usize>().ok()),
        None => (name, None),
    };
    match (base, arg) {
        ("rp2", None) => Some(rp2_triangulation()),
        ("square", None) => Some(square()),
        ("polygon", Some(n)) if n >= 3 => Some(polygon(n)),
        ("simplex", Some(m)) => SimplicialComplex::simplex(m).ok(),
        ("boundary", Some(m)) => SimplicialComplex::boundary_of_simplex(m).ok(),
        ("points", Some(m)) => SimplicialComplex::skeleton(m, 0).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_counts() {
        // antichains of the boolean lattice minus the empty antichain
        assert_eq!(all_complexes(1).len(), 2);
        assert_eq!(all_complexes(2).len(), 5);
        assert_eq!(all_complexes(3).len(), 19);
        assert_eq!(all_complexes(4).len(), 167);
    }

    #[test]
    fn iso_classes_small() {
        // {∅}, point, two ghosts... on 2 labeled vertices: {∅}, {1}, {1},{2}, {12} -> 4 classes
        assert_eq!(complexes_up_to_isomorphism(2).len(), 4);
        let c3 = complexes_up_to_isomorphism(3);
        assert!(c3.len() < 19);
        let keys: BTreeSet<_> = c3.iter().map(isomorphism_key).collect();
        assert_eq!(keys.len(), c3.len());
    }

    #[test]
    fn named_complexes() {
        assert_eq!(named("square").unwrap().f_vector(), vec![4, 4]);
        assert_eq!(named("rp2").unwrap().f_vector(), vec![6, 15, 10]);
        assert_eq!(named("boundary:4").unwrap().f_vector(), vec![4, 6, 4]);
        assert!(named("nope").is_none());
    }
}
