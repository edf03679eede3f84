use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use super::spec::{Factor, FactorSpec, LieTypeSpec, PrimePower};
use crate::error::{Error, Result};

/// The product `Π_i L(p^i)^{f(i)}` with `f(i) = p^{k(h a_i - 2i)/2}`, `a_i = ⌊i c⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSpec {
    pub c: Ratio<i64>,
    pub lie_type: LieTypeSpec,
    pub p: u64,
    /// `f(i) = 0` for `i ≤ n0`.
    pub n0: u64,
}

/// `a_i` and `log_p f(i)` for one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TargetTerm {
    pub i: u64,
    pub a: i64,
    /// `None` when `f(i) = 0`.
    pub log_p_mult: Option<u64>,
}

/// Builds the target product for abscissa `c`.
///
/// Needs `k h c > 2` and `h` even. With `a_i = ⌊ic⌋` the exponent `k(h a_i - 2i)/2` is
/// eventually nonnegative only if `h c > 2`, which is also required.
pub fn target_abscissa_spec(c: Ratio<i64>, lie_type: LieTypeSpec, p: u64) -> Result<TargetSpec> {
    PrimePower::new(p, 1)?;
    if c <= Ratio::from_integer(0) {
        return Err(Error::domain("target abscissa must be positive"));
    }
    let k = lie_type.rank as i64;
    let h = lie_type.coxeter as i64;
    if h.is_odd() {
        return Err(Error::domain(format!(
            "Coxeter number h = {h} is odd; the construction needs h even"
        )));
    }
    if c * (k * h) <= Ratio::from_integer(2) {
        return Err(Error::domain(format!(
            "k*h*c = {} is not > 2 for c = {c}, k = {k}, h = {h}",
            c * (k * h)
        )));
    }
    let hc2 = c * h - Ratio::from_integer(2);
    if hc2 <= Ratio::from_integer(0) {
        return Err(Error::domain(format!(
            "h*c = {} is not > 2: with a_i = floor(i c) the multiplicity exponent k(h a_i - 2i)/2 is negative infinitely often",
            c * h
        )));
    }
    // Past i ≥ h / (hc - 2) the exponent is nonnegative since a_i > ic - 1.
    let bound = (Ratio::from_integer(h) / hc2).ceil().to_integer() as u64;
    let n0 = (1..=bound)
        .filter(|&i| h * floor_mul(c, i) < 2 * i as i64)
        .max()
        .unwrap_or(0);
    Ok(TargetSpec {
        c,
        lie_type,
        p,
        n0,
    })
}

fn floor_mul(c: Ratio<i64>, i: u64) -> i64 {
    (c * i as i64).floor().to_integer()
}

impl TargetSpec {
    pub fn a(&self, i: u64) -> i64 {
        floor_mul(self.c, i)
    }

    pub fn term(&self, i: u64) -> TargetTerm {
        let a = self.a(i);
        let k = self.lie_type.rank as i64;
        let h = self.lie_type.coxeter as i64;
        let log_p_mult = (i > self.n0).then(|| (k * (h * a - 2 * i as i64) / 2) as u64);
        TargetTerm { i, a, log_p_mult }
    }

    /// `f(i)` as an integer.
    pub fn multiplicity(&self, i: u64) -> BigUint {
        match self.term(i).log_p_mult {
            Some(e) => BigUint::from(self.p).pow(e as u32),
            None => BigUint::default(),
        }
    }

    /// Factors `L(p^i)^{f(i)}` for `n0 < i ≤ imax`.
    pub fn factor_spec(&self, imax: u64) -> Result<FactorSpec> {
        let factors = (self.n0 + 1..=imax)
            .map(|i| {
                Ok(Factor {
                    lie_type: self.lie_type,
                    q: PrimePower::new(self.p, i as u32)?,
                    mult: self.multiplicity(i),
                })
            })
            .collect::<Result<_>>()?;
        Ok(FactorSpec::new(factors))
    }
}

/// `log10` of the partial sums `Σ_{n0 < i ≤ m} f(i) p^{ik(1 - hs/2)}` for `m = 1..=imax`.
///
/// Each term equals `p^{(kh/2)(a_i - i s)}`; sums are accumulated in log space so that
/// divergent cases do not overflow.
pub fn akov_partial_sums(target: &TargetSpec, s: f64, imax: u64) -> Vec<f64> {
    let kh2 = target.lie_type.rank as f64 * target.lie_type.coxeter as f64 / 2.0;
    let log10p = (target.p as f64).log10();
    let mut acc = f64::NEG_INFINITY;
    (1..=imax)
        .map(|i| {
            if i > target.n0 {
                let t = kh2 * (target.a(i) as f64 - i as f64 * s) * log10p;
                acc = log10_add(acc, t);
            }
            acc
        })
        .collect()
}

fn log10_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (1.0 + 10f64.powf(lo - hi)).log10()
}

/// Number of ordered factorizations of `n` into parts `≥ 2` (1 for `n = 1`).
pub fn divisor_tuple_count(n: u64) -> u128 {
    fn go(n: u64, memo: &mut HashMap<u64, u128>) -> u128 {
        if n == 1 {
            return 1;
        }
        if let Some(&v) = memo.get(&n) {
            return v;
        }
        let mut divisors = Vec::new();
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                divisors.push(d);
                if d * d != n {
                    divisors.push(n / d);
                }
            }
            d += 1;
        }
        let total = divisors
            .into_iter()
            .filter(|&d| d >= 2)
            .map(|d| go(n / d, memo))
            .sum();
        memo.insert(n, total);
        total
    }
    if n == 0 {
        return 0;
    }
    go(n, &mut HashMap::new())
}
