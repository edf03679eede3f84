//! Exact arithmetic in finite fields `F_{p^e}`.
//!
//! A field is fixed by its prime, degree and a monic irreducible modulus; the
//! modulus is always the lexicographically least one (coefficient tuples compared
//! from the constant term up), so two runs agree on every serialized element.
//! Elements are packed as base-`p` integers whose digits are the coefficients of
//! the residue polynomial, constant term first. Multiplication goes through
//! discrete-log tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::budget::Budgets;
use crate::error::{Error, Result};

/// An element of some [`Field`]; meaningless without its parent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed base-`p` code of this element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field handle. Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `p^i` for `0 <= i <= e`.
    radix: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    primitive: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial helpers over `Z/p`, coefficient vectors with constant term first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        trim(&mut a);
        while a.len() > dm {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// True when no monic polynomial of degree `1..=deg/2` divides `m`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut r = idx;
                for _ in 0..d {
                    cand.push((r % p as u64) as u32);
                    r /= p as u64;
                }
                cand.push(1);
                if rem(m.to_vec(), &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// The field with `p^e` elements under the default budget.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        Field::with_budget(p, e, &Budgets::default())
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn with_budget(p: u32, e: u32, budgets: &Budgets) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::validation("extension degree must be at least 1"));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        Budgets::check("field", budgets.field, q)?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, e)
        };
        Ok(Field::build(p, e, modulus))
    }

    /// Builds a field from an explicit modulus (constant term first, monic).
    pub fn with_modulus(p: u32, modulus: Vec<u32>, budgets: &Budgets) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::validation("modulus must be monic of degree at least 1"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::validation("modulus coefficients must lie in 0..p"));
        }
        let e = (modulus.len() - 1) as u32;
        Budgets::check("field", budgets.field, (p as u128).pow(e))?;
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::validation(format!(
                "modulus {modulus:?} is reducible over Z/{p}"
            )));
        }
        Ok(Field::build(p, e, modulus))
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(e);
        let radix: Vec<u32> = (0..=e).map(|i| p.pow(i)).collect();
        let decode = |c: u32| -> Vec<u32> { (0..e).map(|i| c / radix[i as usize] % p).collect() };
        let encode = |v: &[u32]| -> u32 {
            v.iter().enumerate().map(|(i, &d)| d * radix[i]).sum()
        };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly::mul(&decode(a), &decode(b), p);
            let mut r = poly::rem(prod, &modulus, p);
            r.resize(e as usize, 0);
            encode(&r)
        };

        // Find the least element of multiplicative order q - 1.
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let slow_pow = |x: u32, mut n: u64| -> u32 {
            let mut base = x;
            let mut acc = 1u32;
            while n > 0 {
                if n & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                n >>= 1;
            }
            acc
        };
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, primitive);
        }

        let add = if e > 1 && p != 2 && q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    let da = decode(a);
                    let db = decode(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s);
                }
            }
            Some(t)
        } else {
            None
        };

        Field {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus,
                radix,
                exp,
                log,
                add,
                primitive,
            }),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q() {
            Ok(FieldElement(code))
        } else {
            Err(Error::validation(format!(
                "element code {code} out of range for F_{}",
                self.q()
            )))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.e() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::validation("coefficient vector does not fit the field"));
        }
        Ok(FieldElement(
            coeffs.iter().enumerate().map(|(i, &c)| c * self.inner.radix[i]).sum(),
        ))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        (0..self.e() as usize)
            .map(|i| self.digit(x, i))
            .collect()
    }

    /// Coefficient of `t^i` in `x`.
    #[inline]
    pub fn digit(&self, x: FieldElement, i: usize) -> u32 {
        x.0 / self.inner.radix[i] % self.inner.p
    }

    /// `t^i` for `i < e`: the standard prime-field basis of the field.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        FieldElement(self.inner.radix[i])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.inner.primitive)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q()).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.inner;
        if f.e == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= f.p { s - f.p } else { s })
        } else if f.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else if let Some(t) = &f.add {
            FieldElement(t[(a.0 * f.q + b.0) as usize])
        } else {
            let mut out = 0;
            for i in 0..f.e as usize {
                let r = f.radix[i];
                out += ((a.0 / r % f.p + b.0 / r % f.p) % f.p) * r;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let f = &*self.inner;
        if a.0 == 0 || f.p == 2 {
            return a;
        }
        if f.e == 1 {
            return FieldElement(f.p - a.0);
        }
        let mut out = 0;
        for i in 0..f.e as usize {
            let r = f.radix[i];
            out += ((f.p - a.0 / r % f.p) % f.p) * r;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let f = &*self.inner;
        if f.e == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % f.p as u64) as u32);
        }
        let s = f.log[a.0 as usize] + f.log[b.0 as usize];
        let n = f.q - 1;
        FieldElement(f.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// `a + b c`, the inner step of every dot product in the crate.
    #[inline]
    pub fn mul_add(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::domain("inverse of zero"));
        }
        let f = &*self.inner;
        let n = f.q - 1;
        Ok(FieldElement(f.exp[((n - f.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let f = &*self.inner;
        let m = (f.q - 1) as u128;
        let k = (f.log[a.0 as usize] as u128 * (n as u128 % m)) % m;
        FieldElement(f.exp[k as usize])
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p() as u64)
    }

    /// Absolute trace `Σ_{i<e} x^{p^i}` as an element of `Z/p`.
    pub fn trace_to_prime(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.e() {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        debug_assert!(acc.0 < self.p(), "trace left the prime field");
        acc.0
    }

    /// Text record `p e c_0 c_1 ... c_e`.
    pub fn to_record(&self) -> String {
        let mut s = format!("{} {}", self.p(), self.e());
        for c in self.modulus() {
            s.push_str(&format!(" {c}"));
        }
        s
    }

    pub fn from_record(record: &str) -> Result<Field> {
        let nums: Vec<u32> = record
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::validation(format!("bad token `{t}` in field record")))
            })
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(Error::validation("field record too short"));
        }
        let (p, e) = (nums[0], nums[1]);
        let modulus = nums[2..].to_vec();
        if modulus.len() != e as usize + 1 {
            return Err(Error::validation(format!(
                "field record declares degree {e} but lists {} coefficients",
                modulus.len()
            )));
        }
        Field::with_modulus(p, modulus, &Budgets::default())
    }
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        // c_0 is the most significant digit of the lexicographic order.
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut r = idx;
        for k in (0..e as usize).rev() {
            coeffs[k] = (r % p as u64) as u32;
            r /= p as u64;
        }
        coeffs[e as usize] = 1;
        if coeffs[0] != 0 && poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.modulus() == other.modulus())
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.q(), self.to_record())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(f: &Field) -> FieldElement {
        f.basis_element(1)
    }

    #[test]
    fn prime_fields_use_modulus_t() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.q(), 2);
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // t * t = t + 1
        let tt = f4.mul(t(&f4), t(&f4));
        assert_eq!(f4.coeffs(tt), vec![1, 1]);
        assert_eq!(f4.coeffs(f4.frobenius(t(&f4))), vec![1, 1]);
        assert_eq!(f4.trace_to_prime(t(&f4)), 1);
    }

    #[test]
    fn least_irreducible_matches_exhaustive_search() {
        // Brute force: a monic cubic over F_3 is irreducible iff it has no root.
        let p = 3u32;
        let mut expected = None;
        'outer: for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    let has_root = (0..p).any(|x| (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0);
                    if !has_root {
                        expected = Some(vec![c0, c1, c2, 1]);
                        break 'outer;
                    }
                }
            }
        }
        let f27 = Field::new(3, 3).unwrap();
        assert_eq!(Some(f27.modulus().to_vec()), expected);
    }

    #[test]
    fn inverse_in_f5() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert!(matches!(f5.inv(f5.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_non_prime_and_budget() {
        assert!(matches!(Field::new(6, 1), Err(Error::Validation(_))));
        assert!(matches!(Field::new(2, 0), Err(Error::Validation(_))));
        let mut small = Budgets::default();
        small.field = 8;
        assert!(matches!(Field::with_budget(3, 2, &small), Err(Error::Budget { .. })));
    }

    #[test]
    fn every_element_satisfies_x_pow_q() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 10), (3, 2), (3, 5), (5, 2), (7, 3), (31, 2)] {
            let f = Field::new(p, e).unwrap();
            if f.q() > 1 << 10 {
                continue;
            }
            for x in f.elements() {
                assert_eq!(f.pow(x, f.q() as u64), x, "F_{} element {:?}", f.q(), x);
            }
        }
    }

    #[test]
    fn trace_is_surjective_and_frobenius_has_order_e() {
        for (p, e) in [(2, 1), (2, 4), (3, 3), (5, 2), (2, 10), (3, 6)] {
            let f = Field::new(p, e).unwrap();
            let mut hit = vec![false; p as usize];
            for x in f.elements() {
                hit[f.trace_to_prime(x) as usize] = true;
                let mut y = x;
                for _ in 0..e {
                    y = f.frobenius(y);
                }
                assert_eq!(y, x);
            }
            assert!(hit.iter().all(|&h| h), "trace not onto Z/{p} for F_{}", f.q());
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        for (p, e) in [(2, 3), (3, 2), (5, 3), (2, 8)] {
            let f = Field::new(p, e).unwrap();
            let g = f.primitive_element();
            let n = (f.q() - 1) as u64;
            assert_eq!(f.pow(g, n), f.one());
            for r in prime_factors(n) {
                assert_ne!(f.pow(g, n / r), f.one());
            }
        }
    }

    #[test]
    fn record_round_trip_and_reducible_rejected() {
        let f = Field::new(3, 2).unwrap();
        let rec = f.to_record();
        assert_eq!(Field::from_record(&rec).unwrap(), f);
        // t^2 + 1 over F_2 = (t+1)^2
        assert!(Field::from_record("2 2 1 0 1").is_err());
    }

    #[test]
    fn table_free_addition_matches_digitwise_rule() {
        // q = 3^6 > 256 exercises the slow additive path.
        let f = Field::new(3, 6).unwrap();
        let a = f.element(500).unwrap();
        let b = f.element(421).unwrap();
        let s = f.add(a, b);
        let expect: Vec<u32> = f
            .coeffs(a)
            .iter()
            .zip(f.coeffs(b))
            .map(|(x, y)| (x + y) % 3)
            .collect();
        assert_eq!(f.coeffs(s), expect);
    }

    proptest! {
        #[test]
        fn frobenius_is_a_ring_endomorphism(pe in prop::sample::select(vec![(2u32, 3u32), (3, 2), (5, 2), (3, 4), (7, 2)]), a in 0u32..10_000, b in 0u32..10_000) {
            let f = Field::new(pe.0, pe.1).unwrap();
            let x = f.element(a % f.q()).unwrap();
            let y = f.element(b % f.q()).unwrap();
            prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
            prop_assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
            prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
            prop_assert_eq!(
                f.trace_to_prime(f.add(x, y)),
                (f.trace_to_prime(x) + f.trace_to_prime(y)) % f.p()
            );
            if !x.is_zero() {
                prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            }
        }
    }
}
