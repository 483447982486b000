//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::ExactRing;

/// Sparse map from exponent to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * t^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients listed from exponent 0 upward.
    pub fn from_coefficients(coeffs: &[i64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, c)))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span between the highest and lowest exponents.
    pub fn breadth(&self) -> i64 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Multiply by the unit `±t^k` that puts the lowest exponent at 0 with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.leading_coefficient().is_negative() {
            -p
        } else {
            p
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.min_exponent() == Some(0) && self.leading_coefficient().is_positive())
    }

    /// True when the leading coefficient is a unit.
    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().abs().is_one()
    }

    /// `p(1/t)`.
    pub fn reciprocal(&self) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// True when `self = ±t^k * other` for some `k`.
    pub fn equals_up_to_unit(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn eval(&self, t: i64) -> BigInt {
        assert!(t != 0 || self.min_exponent().is_none_or(|e| e >= 0), "negative power of zero");
        let t = BigInt::from(t);
        let lo = self.min_exponent().unwrap_or(0).min(0);
        // evaluate t^(-lo) * p(t) as a polynomial, then divide out
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            acc += c * num_traits::pow(t.clone(), (e - lo) as usize);
        }
        if lo < 0 {
            acc / num_traits::pow(t, (-lo) as usize)
        } else {
            acc
        }
    }

    /// `exponent:coefficient` pairs in increasing exponent order, space separated.
    pub fn to_pairs_string(&self) -> String {
        self.terms.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_pairs(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Syntax { pos: 0, msg };
        let mut p = Self::zero();
        let mut last: Option<i64> = None;
        for tok in text.split_whitespace() {
            let (e, c) = tok.split_once(':').ok_or_else(|| bad(format!("expected exponent:coefficient, got {tok:?}")))?;
            let e: i64 = e.parse().map_err(|_| bad(format!("bad exponent in {tok:?}")))?;
            let c: BigInt = c.parse().map_err(|_| bad(format!("bad coefficient in {tok:?}")))?;
            if last.is_some_and(|l| l >= e) {
                return Err(bad("exponents must be strictly increasing".into()));
            }
            if c.is_zero() {
                return Err(bad(format!("zero coefficient in {tok:?}")));
            }
            last = Some(e);
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Long division by `divisor`, returning `None` unless it is exact in `Z[t, 1/t]`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a_lo, b_lo) = (self.min_exponent()?, divisor.min_exponent()?);
        let mut rem = self.shift(-a_lo);
        let b = divisor.shift(-b_lo);
        let b_deg = b.max_exponent()?;
        let b_lead = b.leading_coefficient();
        let mut quot = Self::zero();
        while let Some(deg) = rem.max_exponent() {
            if deg < b_deg {
                return None;
            }
            let lead = rem.leading_coefficient();
            if !(&lead % &b_lead).is_zero() {
                return None;
            }
            let q = Self::monomial(deg - b_deg, &lead / &b_lead);
            rem = &rem - &(&q * &b);
            quot = &quot + &q;
        }
        Some(quot.shift(a_lo - b_lo))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_pairs_string())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl ExactRing for LaurentPolynomial {
    fn ring_zero() -> Self {
        LaurentPolynomial::zero()
    }
    fn ring_one() -> Self {
        LaurentPolynomial::constant(1)
    }
    fn is_ring_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        LaurentPolynomial::exact_div(self, rhs).expect("fraction-free elimination divides exactly")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coefficients(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(&[1, -3, 1]).to_string(), "t^2 - 3t + 1");
        assert_eq!(LaurentPolynomial::monomial(-2, -2).to_string(), "-2t^-2");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn normalization() {
        let q = LaurentPolynomial::from_pairs([(-3, -1), (-2, 3), (-1, -1)]);
        assert_eq!(q.normalized(), p(&[1, -3, 1]));
        assert!(q.equals_up_to_unit(&p(&[1, -3, 1])));
        assert!(!q.is_normalized());
        assert!(q.normalized().is_normalized());
    }

    #[test]
    fn pairs_round_trip_and_errors() {
        let q = p(&[2, -3, 2]);
        assert_eq!(q.to_pairs_string(), "0:2 1:-3 2:2");
        assert_eq!(LaurentPolynomial::parse_pairs("0:2 1:-3 2:2").unwrap(), q);
        assert!(LaurentPolynomial::parse_pairs("1:2 0:1").is_err());
        assert!(LaurentPolynomial::parse_pairs("0:0").is_err());
        assert!(LaurentPolynomial::parse_pairs("x").is_err());
        assert!(LaurentPolynomial::parse_pairs("").unwrap().is_zero());
    }

    #[test]
    fn division() {
        let a = p(&[1, -1, 1]);
        let b = p(&[1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.shift(-4).exact_div(&b.shift(2)), Some(a.shift(-6)));
        assert_eq!(a.exact_div(&b), None);
        assert_eq!(p(&[3]).exact_div(&p(&[2])), None);
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let q = LaurentPolynomial::from_pairs([(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(q.eval(-1), BigInt::from(-3));
        assert_eq!(q.eval(1), BigInt::from(1));
    }

    proptest! {
        #[test]
        fn multiply_then_divide(a in prop::collection::vec(-5i64..5, 1..5), b in prop::collection::vec(-5i64..5, 1..4), k in -3i64..3) {
            let a = p(&a).shift(k);
            let b = p(&b);
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b), Some(a));
        }
    }
}
