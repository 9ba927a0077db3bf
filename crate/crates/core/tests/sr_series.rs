mod common;

use num_bigint::BigInt;
use polyprod::polyprod::{contractible_a_series, poincare_polynomial};
use polyprod::sr::{dj_additive_check, generalized_sr_series, sr_hilbert_series, sr_presentation};
use polyprod::{catalog, Error, IndexSubset, Poly, RationalSeries, SimplicialComplex};
use proptest::prelude::*;
use rand::Rng;

fn one_minus_t_pow(n: usize) -> Poly {
    Poly::new(vec![1, -1]).pow(n)
}

#[test]
fn hilbert_series_counts_monomials() {
    let mut rng = common::rng(21);
    for _ in 0..30 {
        let m = rng.gen_range(1..=7);
        let k = common::random_complex(&mut rng, m);
        for d in [1usize, 3] {
            let coeffs = sr_hilbert_series(&k, d).unwrap().expand(7 * d).unwrap();
            for (deg, c) in coeffs.iter().enumerate() {
                let expected = if deg % d == 0 {
                    common::count_face_monomials(&k, deg / d)
                } else {
                    0
                };
                assert_eq!(*c, BigInt::from(expected), "{:?}, d={d}, t^{deg}", k.maximal_faces());
            }
        }
    }
}

#[test]
fn closed_form_counts_agree_with_enumeration() {
    let mut rng = common::rng(22);
    for _ in 0..20 {
        let k = common::random_complex(&mut rng, 5);
        for deg in 0..6 {
            assert_eq!(
                common::count_face_monomials(&k, deg),
                common::count_face_monomials_brute(&k, deg)
            );
        }
    }
}

#[test]
fn h_vector_numerator() {
    let mut rng = common::rng(23);
    for _ in 0..30 {
        let k = common::random_complex(&mut rng, 6);
        let n = (k.dim() + 1) as usize;
        let expected = RationalSeries::new(Poly::new(k.h_vector()), one_minus_t_pow(n)).unwrap();
        assert_eq!(sr_hilbert_series(&k, 1).unwrap(), expected, "{:?}", k.maximal_faces());
    }
}

#[test]
fn generalized_series_is_unreduced_poincare_series() {
    let px = RationalSeries::new(Poly::new(vec![0, 1, 2]), Poly::new(vec![1, -1])).unwrap();
    let bs1 = RationalSeries::new(Poly::monomial(1, 2), Poly::new(vec![1, 0, -1])).unwrap();
    let mut rng = common::rng(24);
    for _ in 0..20 {
        let m = rng.gen_range(1..=6);
        let k = common::random_complex(&mut rng, m);
        let g = generalized_sr_series(&k, &vec![px.clone(); m]).unwrap();
        assert_eq!(g, poincare_polynomial(&k, &px).unwrap().add(&RationalSeries::one()));
        assert_eq!(
            generalized_sr_series(&k, &vec![bs1.clone(); m]).unwrap(),
            sr_hilbert_series(&k, 2).unwrap()
        );
    }
}

#[test]
fn presentation_of_the_square() {
    let p = sr_presentation(&catalog::square(), 2).unwrap();
    assert_eq!(
        p.monomials,
        vec![IndexSubset::from_vertices([1, 3]), IndexSubset::from_vertices([2, 4])]
    );
    assert_eq!(p.relation_strings(), vec!["x1x3", "x2x4"]);
    assert_eq!(p.generator_degrees, vec![2; 4]);
    assert!(matches!(
        sr_presentation(&catalog::square(), 0),
        Err(Error::InvalidDegree)
    ));
    let h = sr_hilbert_series(&catalog::square(), 2).unwrap();
    assert_eq!(h.expand(7).unwrap(), [1, 0, 4, 0, 8, 0, 12].map(BigInt::from).to_vec());
}

#[test]
fn dj_check_on_catalog() {
    for name in ["square", "rp2", "boundary:5", "points:6", "polygon:7", "simplex:4"] {
        let k = catalog::named(name).unwrap();
        let check = dj_additive_check(&k, 24).unwrap();
        assert!(check.verified, "{name}: {:?}", check.mismatches);
        assert_eq!(check.table.len(), 24);
    }
}

#[test]
fn contractible_a_series_requires_reduced_input() {
    let k = catalog::square();
    let bad = vec![RationalSeries::one(); 4];
    assert!(matches!(
        contractible_a_series(&k, &bad),
        Err(Error::NonzeroConstantTerm)
    ));
    let short = vec![RationalSeries::polynomial(Poly::monomial(1, 1)); 3];
    assert!(matches!(
        contractible_a_series(&k, &short),
        Err(Error::ArityMismatch { expected: 4, got: 3 })
    ));
}

#[test]
fn series_for_spheres() {
    // Z(∂Δ[2];(S^1,*)) is the fat wedge of three circles: T^3 minus its top cell
    let k = SimplicialComplex::boundary_of_simplex(3).unwrap();
    let s = poincare_polynomial(&k, &RationalSeries::polynomial(Poly::monomial(1, 1))).unwrap();
    assert!(s.is_polynomial());
    assert_eq!(s.numerator(), &Poly::new(vec![0, 3, 3]));
}

#[test]
fn series_display_and_json() {
    let s = RationalSeries::new(Poly::new(vec![0, 2, 0, 1]), Poly::new(vec![1, 0, -1])).unwrap();
    assert_eq!(s.numerator().to_string(), "2t + t^3");
    let json = serde_json::to_value(s.view(4).unwrap()).unwrap();
    assert_eq!(json["expansion"], serde_json::json!([0, 2, 0, 3]));
    assert!(matches!(
        RationalSeries::new(Poly::one(), Poly::monomial(1, 1)),
        Err(Error::ZeroDenominatorConstant)
    ));
    let half = RationalSeries::new(Poly::one(), Poly::new(vec![2])).unwrap();
    assert!(matches!(half.expand(3), Err(Error::NonIntegralExpansion)));
}

fn arb_series() -> impl Strategy<Value = RationalSeries> {
    (
        prop::collection::vec(-4i64..=4, 1..5),
        prop::collection::vec(-3i64..=3, 0..3),
    )
        .prop_map(|(num, tail)| {
            let mut den = vec![1i64];
            den.extend(tail);
            RationalSeries::new(Poly::new(num), Poly::new(den)).unwrap()
        })
}

fn truncated_product(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    (0..a.len()).map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum()).collect()
}

proptest! {
    #[test]
    fn expansion_is_a_ring_map(a in arb_series(), b in arb_series()) {
        let (ea, eb) = (a.expand(10).unwrap(), b.expand(10).unwrap());
        let sum: Vec<BigInt> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.add(&b).expand(10).unwrap(), sum);
        prop_assert_eq!(a.mul(&b).expand(10).unwrap(), truncated_product(&ea, &eb));
    }
}
