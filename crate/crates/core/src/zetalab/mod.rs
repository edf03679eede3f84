//! Representation zeta data for products of finite groups of Lie type.
//!
//! A product `H = Π S_i` of finite groups has `ζ_H = Π ζ_{S_i}`; this module
//! builds the truncated Dirichlet series of such products, either exactly (for
//! `SL_2(F_q)`, q odd) or through the two-term approximant `1 + q^{rank - |Φ⁺| s}`.

mod abscissa;
mod series;
mod spec;
mod target;

#[cfg(test)]
mod tests;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

pub use abscissa::{
    abscissa_estimate, geometric_grid, synthetic_power_series, AbscissaEstimate, AbscissaSample,
};
pub use series::{dirichlet_product, Provenance, TruncatedDirichlet};
pub use spec::{
    l_of_n, l_upper_bound, prg_witness, product_series, Factor, FactorSpec, LieTypeSpec,
    MinDegreeBound, PrimePower, SeriesMode,
};
pub use target::{
    akov_partial_sums, divisor_tuple_count, target_abscissa_spec, TargetSpec, TargetTerm,
};

/// Irreducible character degrees of one finite group, as sorted `(degree, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMultiset {
    entries: Vec<(u64, u64)>,
}

impl DegreeMultiset {
    /// Merges repeated degrees and drops zero multiplicities.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut entries: Vec<(u64, u64)> = Vec::new();
        let mut raw: Vec<(u64, u64)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        raw.sort_unstable();
        for (d, m) in raw {
            match entries.last_mut() {
                Some((last, mult)) if *last == d => *mult += m,
                _ => entries.push((d, m)),
            }
        }
        DegreeMultiset { entries }
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Number of irreducible characters.
    pub fn count(&self) -> u128 {
        self.entries.iter().map(|&(_, m)| m as u128).sum()
    }

    /// `Σ m·d²`, the group order.
    pub fn sum_of_squares(&self) -> u128 {
        self.entries
            .iter()
            .map(|&(d, m)| m as u128 * d as u128 * d as u128)
            .sum()
    }

    /// Least degree above 1, if any.
    pub fn min_nontrivial(&self) -> Option<u64> {
        self.entries.iter().map(|&(d, _)| d).find(|&d| d > 1)
    }

    /// Degrees listed with repetition, ascending.
    pub fn expanded(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat(d).take(m as usize))
            .collect()
    }

    /// The zeta function `Σ m d^{-s}` truncated at `cutoff`.
    pub fn series(&self, cutoff: u64) -> TruncatedDirichlet {
        let mut out = TruncatedDirichlet::zero(cutoff, Provenance::Exact);
        for &(d, m) in &self.entries {
            if d <= cutoff {
                out.add_at(d, &BigUint::from(m));
            }
        }
        out
    }
}

/// Degrees of `SL_2(F_q)` for odd `q ≥ 5`.
///
/// Each call rechecks `Σ m d² = q(q²-1)` and `Σ m = q + 4`.
pub fn sl2_degrees(q: u64) -> Result<DegreeMultiset> {
    if q < 5 || q % 2 == 0 {
        return Err(Error::domain(format!(
            "SL_2 degree data needs an odd prime power q >= 5, got {q}"
        )));
    }
    if !is_prime_power(q) {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    if q > 1 << 40 {
        return Err(Error::domain(format!("q = {q} too large for exact degree data")));
    }
    let degrees = DegreeMultiset::new([
        (1, 1),
        (q, 1),
        (q + 1, (q - 3) / 2),
        ((q + 1) / 2, 2),
        (q - 1, (q - 1) / 2),
        ((q - 1) / 2, 2),
    ]);
    let order = q as u128 * (q as u128 * q as u128 - 1);
    if degrees.sum_of_squares() != order || degrees.count() != q as u128 + 4 {
        return Err(Error::internal(format!(
            "SL_2({q}) degree data fails the order/class-number identities"
        )));
    }
    Ok(degrees)
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}
