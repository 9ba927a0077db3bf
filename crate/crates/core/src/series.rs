//! Exact one-variable polynomials and rational functions over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default number of expansion coefficients when none is requested explicitly.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Dense integer polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = Poly(coeffs.into_iter().map(Into::into).collect());
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new(vec![c.into()])
    }

    /// `c · t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Poly::new(v)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Substitutes `t ↦ t^d`.
    pub fn inflate(&self, d: usize) -> Poly {
        let mut v = vec![BigInt::zero(); self.0.len().saturating_sub(1) * d + 1];
        for (k, c) in self.0.iter().enumerate() {
            v[k * d] = c.clone();
        }
        Poly::new(v)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Poly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient in `Z[t]`, if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let dd = divisor.degree()?;
        let mut rem = self.0.clone();
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quo, r) = top.div_rem(divisor.leading());
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[k + j] -= &quo * c;
            }
            q[k] = quo;
        }
        rem.iter().all(Zero::is_zero).then(|| Poly::new(q))
    }

    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().clone();
            let shifted = &Poly::monomial(factor, rd - dd) * divisor;
            rem = &rem.scale(&lc) - &shifted;
        }
        rem
    }

    /// Primitive gcd with positive leading coefficient (the content is not included).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if first {
                write!(f, "{sign}{coeff}{var}")?;
            } else {
                write!(f, " {sign} {coeff}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `num / den` in lowest terms, `den(0) > 0`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RationalSeries {
    num: Poly,
    den: Poly,
}

impl RationalSeries {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::ZeroDenominatorConstant);
        }
        if num.is_zero() {
            return Ok(RationalSeries { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = Poly::new(num.0.iter().map(|x| x / &c).collect());
            den = Poly::new(den.0.iter().map(|x| x / &c).collect());
        }
        if den.coeff(0).is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(RationalSeries { num, den })
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalSeries {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Poly::zero())
    }

    pub fn one() -> Self {
        Self::polynomial(Poly::one())
    }

    /// `t^d / (1 - t^d)`: the reduced Poincaré series of `BS^1` when `d = 2`.
    pub fn geometric_tail(d: usize) -> Self {
        let den = &Poly::one() - &Poly::monomial(1, d);
        RationalSeries::new(Poly::monomial(1, d), den).expect("nonzero constant term")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    pub fn constant_term(&self) -> Result<BigInt> {
        Ok(self.expand(1)?.into_iter().next().unwrap_or_default())
    }

    pub fn add(&self, o: &RationalSeries) -> RationalSeries {
        RationalSeries::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("product of valid denominators")
    }

    pub fn mul(&self, o: &RationalSeries) -> RationalSeries {
        RationalSeries::new(&self.num * &o.num, &self.den * &o.den).expect("product of valid denominators")
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> RationalSeries {
        RationalSeries::new(self.num.scale(&c.into()), self.den.clone()).expect("valid denominator")
    }

    pub fn pow(&self, e: usize) -> RationalSeries {
        RationalSeries::new(self.num.pow(e), self.den.pow(e)).expect("valid denominator")
    }

    /// Multiplies by a polynomial and returns the result if it is a polynomial.
    pub fn times_poly_exact(&self, p: &Poly) -> Option<Poly> {
        (&self.num * p).div_exact(&self.den)
    }

    /// First `order` power-series coefficients `c_0 .. c_(order-1)`.
    pub fn expand(&self, order: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        let mut out: Vec<BigInt> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.0.len().saturating_sub(1)) {
                acc -= &self.den.0[j] * &out[k - j];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NonIntegralExpansion);
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Serializable view with an explicit expansion length.
    pub fn view(&self, order: usize) -> Result<SeriesView<'_>> {
        Ok(SeriesView {
            series: self,
            expansion: self.expand(order)?,
        })
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `{"num": [...], "den": [...], "expansion": [...]}`.
pub struct SeriesView<'a> {
    series: &'a RationalSeries,
    pub expansion: Vec<BigInt>,
}

pub(crate) fn big_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

pub(crate) fn big_json_vec(xs: &[BigInt]) -> Vec<serde_json::Value> {
    xs.iter().map(big_json).collect()
}

impl Serialize for SeriesView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Series", 3)?;
        st.serialize_field("num", &big_json_vec(&self.series.num.0))?;
        st.serialize_field("den", &big_json_vec(&self.series.den.0))?;
        st.serialize_field("expansion", &big_json_vec(&self.expansion))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.to_vec())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (1 - t^2) / (1 - t)^2 = (1 + t) / (1 - t)
        let s = RationalSeries::new(p(&[1, 0, -1]), p(&[1, -2, 1])).unwrap();
        assert_eq!(s.numerator(), &p(&[1, 1]));
        assert_eq!(s.denominator(), &p(&[1, -1]));
        // content and sign
        let s = RationalSeries::new(p(&[2, 4]), p(&[-2])).unwrap();
        assert_eq!(s, RationalSeries::polynomial(p(&[-1, -2])));
        assert_eq!(
            RationalSeries::new(p(&[1]), p(&[0, 1])),
            Err(Error::ZeroDenominatorConstant)
        );
    }

    #[test]
    fn expansion() {
        let s = RationalSeries::new(p(&[1]), p(&[1, 0, -1]).pow(2)).unwrap();
        assert_eq!(s.expand(7).unwrap(), ints(&[1, 0, 2, 0, 3, 0, 4]));
        let bad = RationalSeries::new(p(&[1]), p(&[2, 1])).unwrap();
        assert_eq!(bad.expand(3), Err(Error::NonIntegralExpansion));
        assert_eq!(bad.expand(0), Ok(vec![]));
    }

    #[test]
    fn arithmetic() {
        let g = RationalSeries::geometric_tail(2);
        let one_plus = RationalSeries::one().add(&g.scale(2));
        assert_eq!(one_plus.numerator(), &p(&[1, 0, 1]));
        assert_eq!(one_plus.denominator(), &p(&[1, 0, -1]));
        assert_eq!(g.pow(2).expand(8).unwrap(), ints(&[0, 0, 0, 0, 1, 0, 2, 0]));
        let t = RationalSeries::polynomial(p(&[0, 1]));
        assert_eq!(t.mul(&t).add(&t.scale(2)), RationalSeries::polynomial(p(&[0, 2, 1])));
    }

    #[test]
    fn polynomial_gcd_and_division() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[2, 0, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[1, 2, 1]).inflate(2), p(&[1, 0, 2, 0, 1]));
        assert_eq!(p(&[0, -2, 0, 1]).to_string(), "-2t + t^3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
            proptest::collection::vec(-4i64..5, 0..max_len).prop_map(Poly::new)
        }

        fn unit_den() -> impl Strategy<Value = Poly> {
            (proptest::bool::ANY, proptest::collection::vec(-3i64..4, 0..4)).prop_map(|(neg, mut v)| {
                v.insert(0, if neg { -1 } else { 1 });
                Poly::new(v)
            })
        }

        proptest! {
            // expansion of the reduced form agrees with direct long division of the unreduced form
            #[test]
            fn reduced_expansion_matches_long_division(num in poly(6), den in unit_den(), extra in unit_den(), order in 0usize..24) {
                let unreduced_num = &num * &extra;
                let unreduced_den = &den * &extra;
                let reduced = RationalSeries::new(unreduced_num.clone(), unreduced_den.clone()).unwrap();
                let d0 = unreduced_den.coeff(0);
                let mut direct: Vec<BigInt> = Vec::new();
                for k in 0..order {
                    let mut acc = unreduced_num.coeff(k);
                    for j in 1..=k {
                        acc -= unreduced_den.coeff(j) * &direct[k - j];
                    }
                    direct.push(acc / &d0);
                }
                prop_assert_eq!(reduced.expand(order).unwrap(), direct);
            }

            #[test]
            fn addition_commutes_with_expansion(a in poly(5), b in poly(5), da in unit_den(), db in unit_den()) {
                let x = RationalSeries::new(a, da).unwrap();
                let y = RationalSeries::new(b, db).unwrap();
                let sum = x.add(&y).expand(16).unwrap();
                let parts: Vec<BigInt> = x.expand(16).unwrap().iter().zip(y.expand(16).unwrap()).map(|(p, q)| p + q).collect();
                prop_assert_eq!(sum, parts);
            }
        }
    }
}
