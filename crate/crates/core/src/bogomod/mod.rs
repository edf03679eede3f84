//! The finite abelian `p`-group `M_q` attached to a `p`-group `pi` and
//! `q = p^e`: generated by `lambda (1 - r)` for `lambda` in a basis of the
//! unramified extension of `Z_p` of degree `e` and `r` running over the
//! nontrivial conjugacy classes, subject to
//! `p lambda (1 - r) = phi(lambda) (1 - r^p)` (with `1 - r^p = 0` when `r^p = 1`).

mod galois;
mod snf;

use num_bigint::BigUint;
use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::grouptab::FiniteGroupTable;

pub use galois::{frobenius_matrix, inv_mod, FrobeniusMatrix, ModMatrix};
pub use snf::smith_exponents;

/// Which basis of the unramified extension indexes the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionBasis {
    Teichmuller,
    Monomial,
}

#[derive(Clone, Debug)]
pub struct MqPresentation {
    pub p: u32,
    pub e: u32,
    /// Working precision: relations are taken modulo `p^v`.
    pub v: u32,
    pub k: usize,
    /// Representatives (group element ids) of the nontrivial classes.
    pub class_reps: Vec<u32>,
    /// Generator `(j, r)` has index `r * e + j`.
    pub relations: Vec<Vec<u64>>,
    /// `C_i`: number of nontrivial classes inside `pi_i \ pi_{i+1}`, `pi_i` the `p^i`-th powers.
    pub layer_classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLayer {
    pub i: usize,
    /// `log_p |p^i M / p^{i+1} M|` read from the invariant factors.
    pub measured_log_p: u64,
    /// `log_p q^{|C_i|}`.
    pub expected_log_p: u64,
}

fn log_p(p: u64, mut n: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

pub fn build_mq(group: &FiniteGroupTable, p: u32, e: u32, budgets: &Budgets) -> Result<MqPresentation> {
    build_mq_with(group, p, e, None, ExtensionBasis::Teichmuller, budgets)
}

/// `v` defaults to `1 + log_p exp(pi)`.
pub fn build_mq_with(
    group: &FiniteGroupTable,
    p: u32,
    e: u32,
    v: Option<u32>,
    basis: ExtensionBasis,
    budgets: &Budgets,
) -> Result<MqPresentation> {
    if !crate::ffield::is_prime(p as u64) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if !group.is_p_group_for(p) {
        return Err(Error::domain(format!(
            "group order {} is not a power of {p}",
            group.order()
        )));
    }
    let classes = group.conjugacy_classes(budgets)?;
    let power = group.class_power_map(&classes, p)?;
    let id_class = classes.class_of[group.identity() as usize];
    let exponent = group.exponent();
    let v = v.unwrap_or(1 + log_p(p as u64, exponent));
    let phi = frobenius_matrix(p, e, v)?;
    let phi = match basis {
        ExtensionBasis::Teichmuller => phi.teichmuller,
        ExtensionBasis::Monomial => phi.monomial,
    };
    let m = phi.modulus;
    let nontrivial: Vec<usize> = (0..classes.count()).filter(|&c| c as u32 != id_class).collect();
    let position = |c: usize| nontrivial.iter().position(|&x| x == c).expect("nontrivial class");
    let e_us = e as usize;
    let n = nontrivial.len() * e_us;
    let mut relations = Vec::with_capacity(n);
    for (r_idx, &c) in nontrivial.iter().enumerate() {
        let image = power[c];
        for j in 0..e_us {
            let mut row = vec![0u64; n];
            row[r_idx * e_us + j] = p as u64 % m;
            if image != id_class {
                let target = position(image as usize);
                for i in 0..e_us {
                    let col = target * e_us + i;
                    row[col] = (row[col] + m - phi.get(i, j)) % m;
                }
            }
            relations.push(row);
        }
    }
    // layers of the power filtration
    let mut layer_classes = Vec::new();
    let mut current: Vec<bool> = vec![true; group.order()];
    loop {
        let next: Vec<bool> = {
            let mut s = vec![false; group.order()];
            for x in group.elements().filter(|&x| current[x as usize]) {
                s[group.pow(x, p as u64) as usize] = true;
            }
            s
        };
        let count = nontrivial
            .iter()
            .filter(|&&c| {
                let r = classes.representatives[c] as usize;
                current[r] && !next[r]
            })
            .count();
        layer_classes.push(count);
        if current.iter().filter(|&&b| b).count() == 1 {
            break;
        }
        current = next;
    }
    while layer_classes.len() > 1 && *layer_classes.last().expect("nonempty") == 0 {
        layer_classes.pop();
    }
    Ok(MqPresentation {
        p,
        e,
        v,
        k: classes.count(),
        class_reps: nontrivial.iter().map(|&c| classes.representatives[c]).collect(),
        relations,
        layer_classes,
    })
}

impl MqPresentation {
    pub fn generator_count(&self) -> usize {
        self.relations.len()
    }

    /// Exponents `a` of the cyclic factors `Z/p^a`, ascending.
    pub fn invariant_exponents(&self) -> Result<Vec<u32>> {
        let (exps, zeros) = smith_exponents(self.p as u64, self.v, &self.relations, self.generator_count());
        if zeros > 0 || exps.iter().any(|&a| a >= self.v) {
            return Err(Error::internal(format!(
                "a cyclic factor reaches the working precision p^{}; the module is not annihilated by exp(pi)",
                self.v
            )));
        }
        Ok(exps)
    }

    /// Invariant factors `p^a`, ascending.
    pub fn invariant_factors(&self) -> Result<Vec<BigUint>> {
        Ok(self
            .invariant_exponents()?
            .into_iter()
            .map(|a| BigUint::from(self.p).pow(a))
            .collect())
    }

    pub fn order(&self) -> Result<BigUint> {
        let total: u32 = self.invariant_exponents()?.iter().sum();
        Ok(BigUint::from(self.p).pow(total))
    }

    /// `q^{k-1}`.
    pub fn expected_order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e * (self.k as u32 - 1))
    }

    /// Compares `|p^i M / p^{i+1} M|` with `q^{|C_i|}` for every layer.
    pub fn verify_filtration(&self) -> Result<(bool, Vec<FiltrationLayer>)> {
        let exps = self.invariant_exponents()?;
        let depth = exps.iter().copied().max().unwrap_or(0) as usize;
        let layers: Vec<FiltrationLayer> = (0..depth.max(self.layer_classes.len()))
            .map(|i| FiltrationLayer {
                i,
                measured_log_p: exps.iter().filter(|&&a| a as usize > i).count() as u64,
                expected_log_p: self.e as u64 * self.layer_classes.get(i).copied().unwrap_or(0) as u64,
            })
            .collect();
        let ok = layers.iter().all(|l| l.measured_log_p == l.expected_log_p);
        Ok((ok, layers))
    }
}

/// `q^{k(pi) - 1} |B_0(pi)|`.
pub fn predicted_ab_order(group: &FiniteGroupTable, p: u32, e: u32, b0_order: u64, budgets: &Budgets) -> Result<BigUint> {
    if !group.is_p_group_for(p) {
        return Err(Error::domain(format!(
            "group order {} is not a power of the characteristic {p}",
            group.order()
        )));
    }
    let k = group.conjugacy_classes(budgets)?.count() as u32;
    Ok(BigUint::from(p).pow(e * (k - 1)) * BigUint::from(b0_order))
}

#[cfg(test)]
mod tests;
