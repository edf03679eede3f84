//! Exact elements of `Q(zeta_p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// `(sum_{k=1}^{p-1} a_k zeta^k) / den` with `den > 0` and the numerator
/// coefficients and denominator coprime. Since `1 = -(zeta + ... + zeta^{p-1})`,
/// every element has exactly one such representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicValue {
    p: u32,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicValue {
    /// `(sum_{k=0}^{p-1} counts[k] zeta^k) / den`.
    pub fn from_counts<T: Into<BigInt> + Clone>(p: u32, counts: &[T], den: impl Into<BigInt>) -> Self {
        assert_eq!(counts.len(), p as usize);
        let c0: BigInt = counts[0].clone().into();
        let coeffs = counts[1..].iter().map(|c| c.clone().into() - &c0).collect();
        CyclotomicValue {
            p,
            coeffs,
            den: den.into(),
        }
        .normalized()
    }

    pub fn zero(p: u32) -> Self {
        Self::integer(p, 0)
    }

    pub fn integer(p: u32, n: i64) -> Self {
        let mut counts = vec![BigInt::zero(); p as usize];
        counts[0] = n.into();
        Self::from_counts(p, &counts, 1)
    }

    /// `zeta^k`.
    pub fn zeta(p: u32, k: u64) -> Self {
        let mut counts = vec![BigInt::zero(); p as usize];
        counts[(k % p as u64) as usize] = BigInt::one();
        Self::from_counts(p, &counts, 1)
    }

    fn normalized(mut self) -> Self {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.coeffs {
                *c = -c.clone();
            }
        }
        let g = self.coeffs.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients of `zeta^1, ..., zeta^{p-1}` in the numerator.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn counts(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero()];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let counts: Vec<BigInt> = self
            .counts()
            .iter()
            .zip(other.counts())
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::from_counts(self.p, &counts, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let (a, b) = (self.counts(), other.counts());
        let mut out = vec![BigInt::zero(); p];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % p] += x * y;
            }
        }
        Self::from_counts(self.p, &out, &self.den * &other.den)
    }

    /// Multiplies by the rational `num / den`.
    pub fn scale(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let num = num.into();
        let counts: Vec<BigInt> = self.counts().iter().map(|c| c * &num).collect();
        Self::from_counts(self.p, &counts, &self.den * den.into())
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let c = self.counts();
        let counts: Vec<BigInt> = (0..p).map(|k| c[(p - k) % p].clone()).collect();
        Self::from_counts(self.p, &counts, self.den.clone())
    }

    /// The value as an integer when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        // rational values have all coefficients equal (to -value * den)
        let first = self.coeffs.first().cloned().unwrap_or_default();
        if self.coeffs.iter().any(|c| *c != first) {
            return None;
        }
        let (q, r) = (-first).div_rem(&self.den);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*z^{}", k + 1))
            .collect();
        let body = terms.join(" + ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// Integers serialize as JSON numbers when they fit in `i64`, else as strings.
#[derive(Serialize)]
#[serde(untagged)]
enum JsonInt {
    Int(i64),
    Str(String),
}

fn int_json(n: &BigInt) -> JsonInt {
    match n.to_i64() {
        Some(v) => JsonInt::Int(v),
        None => JsonInt::Str(n.to_string()),
    }
}

impl Serialize for CyclotomicValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicValue", 2)?;
        let coeffs: Vec<_> = self.coeffs.iter().map(int_json).collect();
        st.serialize_field("zeta_coefficients", &coeffs)?;
        st.serialize_field("denominator", &int_json(&self.den))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_roots_vanishes() {
        for p in [2u32, 3, 5, 7] {
            let mut s = CyclotomicValue::zero(p);
            for k in 0..p as u64 {
                s = s.add(&CyclotomicValue::zeta(p, k));
            }
            assert!(s.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn integers_and_conjugation() {
        let three = CyclotomicValue::integer(3, 3);
        assert_eq!(three.to_integer(), Some(BigInt::from(3)));
        let z = CyclotomicValue::zeta(3, 1);
        assert_eq!(z.conj(), CyclotomicValue::zeta(3, 2));
        assert_eq!(z.mul(&z.conj()), CyclotomicValue::integer(3, 1));
        // |1 + zeta|^2 = 1 for p = 3 since 1 + zeta = -zeta^2
        let w = CyclotomicValue::integer(3, 1).add(&z);
        assert_eq!(w.mul(&w.conj()).to_integer(), Some(BigInt::from(1)));
        assert_eq!(CyclotomicValue::zeta(2, 1).to_integer(), Some(BigInt::from(-1)));
        assert_eq!(z.to_integer(), None);
    }

    #[test]
    fn scaling_reduces() {
        let v = CyclotomicValue::integer(5, 6).scale(1, 4);
        assert_eq!(v, CyclotomicValue::integer(5, 3).scale(1, 2));
        assert_eq!(v.to_integer(), None);
        assert_eq!(v.scale(2, 1).to_integer(), Some(BigInt::from(3)));
        assert_eq!(v.to_string(), "(-3*z^1 + -3*z^2 + -3*z^3 + -3*z^4)/2");
    }

    #[test]
    fn gauss_sum_norm() {
        // g = sum_k (k/5) zeta^k has g * conj(g) = 5
        let legendre = [0i64, 1, -1, -1, 1];
        let g = CyclotomicValue::from_counts(5, &legendre, 1);
        assert_eq!(g.mul(&g.conj()).to_integer(), Some(BigInt::from(5)));
    }
}
