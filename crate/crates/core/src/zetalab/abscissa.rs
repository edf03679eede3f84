use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::series::{Provenance, TruncatedDirichlet};
use super::spec::ser_big;
use crate::error::{Error, Result};

const POINTS_PER_DECADE: f64 = 20.0;

/// One grid point of the estimator: `R_n` and `log R_n / log n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbscissaSample {
    pub n: u64,
    #[serde(serialize_with = "ser_big")]
    pub r: BigUint,
    pub ratio: f64,
}

/// Numerical estimate of `limsup log R_n / log n` from finitely many coefficients.
///
/// `tail_max` is the maximum of the ratio over grid points `n ≥ √N`; `slope` is the
/// least-squares slope of `log R_n` against `log n` over the same points. Neither is a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbscissaEstimate {
    pub cutoff: u64,
    pub tail_start: u64,
    pub tail_max: f64,
    pub slope: f64,
    pub path: Vec<AbscissaSample>,
}

pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Geometric grid `2 ≤ n ≤ N` with a fixed number of points per decade; always contains `N`.
pub fn geometric_grid(cutoff: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let top = (cutoff as f64).log10();
    let mut j = 0.0;
    loop {
        let x = j / POINTS_PER_DECADE;
        if x > top {
            break;
        }
        let n = 10f64.powf(x).round() as u64;
        if n >= 2 && n <= cutoff && grid.last() != Some(&n) {
            grid.push(n);
        }
        j += 1.0;
    }
    if cutoff >= 2 && grid.last() != Some(&cutoff) {
        grid.push(cutoff);
    }
    grid
}

pub fn abscissa_estimate(series: &TruncatedDirichlet) -> Result<AbscissaEstimate> {
    let cutoff = series.cutoff();
    if cutoff < 4 {
        return Err(Error::validation("abscissa estimate needs a cutoff of at least 4"));
    }
    let cumulative = series.cumulative();
    let path: Vec<AbscissaSample> = geometric_grid(cutoff)
        .into_iter()
        .map(|n| {
            let r = cumulative[n as usize].clone();
            let lr = ln_big(&r);
            let ratio = if lr.is_finite() { lr / (n as f64).ln() } else { 0.0 };
            AbscissaSample { n, r, ratio }
        })
        .collect();

    let tail_start = (cutoff as f64).sqrt().ceil() as u64;
    let tail: Vec<&AbscissaSample> = path.iter().filter(|s| s.n >= tail_start).collect();
    let tail_max = tail
        .iter()
        .map(|s| s.ratio)
        .fold(f64::NEG_INFINITY, f64::max);

    let pts: Vec<(f64, f64)> = tail
        .iter()
        .filter(|s| s.r.bits() > 0)
        .map(|s| ((s.n as f64).ln(), ln_big(&s.r)))
        .collect();
    let slope = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        sxy / sxx
    } else {
        0.0
    };

    Ok(AbscissaEstimate {
        cutoff,
        tail_start,
        tail_max,
        slope,
        path,
    })
}

/// `r_n = ⌊n^c⌋ - ⌊(n-1)^c⌋`, so that `R_n = ⌊n^c⌋`.
pub fn synthetic_power_series(c: f64, cutoff: u64) -> Result<TruncatedDirichlet> {
    if !(c > 0.0) || c > 4.0 {
        return Err(Error::validation(format!("synthetic exponent {c} outside (0, 4]")));
    }
    let floor_pow = |n: u64| -> u128 {
        if c.fract() == 0.0 {
            (n as u128).pow(c as u32)
        } else if c == 0.5 {
            (n as u128).sqrt()
        } else {
            (n as f64).powf(c).floor() as u128
        }
    };
    let mut prev = 0u128;
    let coeffs = (1..=cutoff)
        .map(|n| {
            let cur = floor_pow(n);
            let r = cur - prev;
            prev = cur;
            BigUint::from(r)
        })
        .collect();
    Ok(TruncatedDirichlet::from_coefficients(coeffs, Provenance::Synthetic))
}
