use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// How the coefficients of a series were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exact representation counts for every `n ≤ cutoff`.
    Exact,
    /// Built from the two-term Lie-type approximant; not an exact count.
    AkovApprox,
    /// Hand-made coefficient sequence.
    Synthetic,
}

impl Provenance {
    fn combine(self, other: Provenance) -> Provenance {
        use Provenance::*;
        match (self, other) {
            (Exact, Exact) => Exact,
            (Synthetic, _) | (_, Synthetic) => Synthetic,
            _ => AkovApprox,
        }
    }
}

/// `Σ_{n ≤ N} r_n n^{-s}` with exact big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDirichlet {
    cutoff: u64,
    // coeffs[n] = r_n; index 0 is unused and always zero.
    coeffs: Vec<BigUint>,
    provenance: Provenance,
}

impl TruncatedDirichlet {
    pub fn zero(cutoff: u64, provenance: Provenance) -> Self {
        TruncatedDirichlet {
            cutoff,
            coeffs: vec![BigUint::zero(); cutoff as usize + 1],
            provenance,
        }
    }

    /// The series of the trivial group.
    pub fn one(cutoff: u64) -> Self {
        let mut s = Self::zero(cutoff, Provenance::Exact);
        if cutoff >= 1 {
            s.coeffs[1] = BigUint::from(1u32);
        }
        s
    }

    /// Builds a series from `r_1, ..., r_N`.
    pub fn from_coefficients(coeffs: Vec<BigUint>, provenance: Provenance) -> Self {
        let cutoff = coeffs.len() as u64;
        let mut all = Vec::with_capacity(coeffs.len() + 1);
        all.push(BigUint::zero());
        all.extend(coeffs);
        TruncatedDirichlet {
            cutoff,
            coeffs: all,
            provenance,
        }
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// `r_n`, zero beyond the cutoff.
    pub fn coeff(&self, n: u64) -> BigUint {
        self.coeffs.get(n as usize).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, n: u64) -> Option<&BigUint> {
        self.coeffs.get(n as usize)
    }

    pub(crate) fn add_at(&mut self, n: u64, value: &BigUint) {
        if n >= 1 && n <= self.cutoff {
            self.coeffs[n as usize] += value;
        }
    }

    pub fn add(&self, other: &TruncatedDirichlet) -> TruncatedDirichlet {
        let cutoff = self.cutoff.min(other.cutoff);
        let coeffs = (0..=cutoff as usize)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        TruncatedDirichlet {
            cutoff,
            coeffs,
            provenance: self.provenance.combine(other.provenance),
        }
    }

    pub fn scale(&self, factor: &BigUint) -> TruncatedDirichlet {
        TruncatedDirichlet {
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            provenance: self.provenance,
        }
    }

    /// Indices `n` with `r_n ≠ 0`, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, _)| n as u64)
            .collect()
    }

    /// `R_n = Σ_{m ≤ n} r_m` for `n = 0..=N`.
    pub fn cumulative(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    pub fn partial_count(&self, n: u64) -> BigUint {
        let top = n.min(self.cutoff) as usize;
        self.coeffs[..=top].iter().sum()
    }

    pub fn total(&self) -> BigUint {
        self.partial_count(self.cutoff)
    }

    /// Keeps only the first `cutoff` coefficients.
    pub fn truncate(&self, cutoff: u64) -> TruncatedDirichlet {
        let cutoff = cutoff.min(self.cutoff);
        TruncatedDirichlet {
            cutoff,
            coeffs: self.coeffs[..=cutoff as usize].to_vec(),
            provenance: self.provenance,
        }
    }
}

const GATHER_SUPPORT: usize = 64;

/// Dirichlet convolution `(fg)_n = Σ_{ab = n} f_a g_b` for `n ≤ cutoff`.
///
/// Both inputs must be known up to `cutoff`.
pub fn dirichlet_product(
    f: &TruncatedDirichlet,
    g: &TruncatedDirichlet,
    cutoff: u64,
) -> Result<TruncatedDirichlet> {
    if cutoff > f.cutoff || cutoff > g.cutoff {
        return Err(Error::validation(format!(
            "product cutoff {cutoff} exceeds a factor cutoff ({} / {})",
            f.cutoff, g.cutoff
        )));
    }
    let provenance = f.provenance.combine(g.provenance);
    let fs: Vec<u64> = f.support().into_iter().filter(|&n| n <= cutoff).collect();
    let gs: Vec<u64> = g.support().into_iter().filter(|&n| n <= cutoff).collect();
    let (dense, sparse, sparse_support) = if fs.len() <= gs.len() {
        (g, f, fs)
    } else {
        (f, g, gs)
    };

    if sparse_support.len() <= GATHER_SUPPORT {
        // Each output coefficient only reads the dense series at n / b.
        let coeffs: Vec<BigUint> = (0..=cutoff)
            .into_par_iter()
            .map(|n| {
                let mut acc = BigUint::zero();
                if n == 0 {
                    return acc;
                }
                for &b in &sparse_support {
                    if b > n {
                        break;
                    }
                    if n % b == 0 {
                        let a = &dense.coeffs[(n / b) as usize];
                        if !a.is_zero() {
                            acc += a * &sparse.coeffs[b as usize];
                        }
                    }
                }
                acc
            })
            .collect();
        return Ok(TruncatedDirichlet {
            cutoff,
            coeffs,
            provenance,
        });
    }

    let mut out = TruncatedDirichlet::zero(cutoff, provenance);
    let ds: Vec<u64> = dense
        .support()
        .into_iter()
        .filter(|&n| n <= cutoff)
        .collect();
    for &a in &sparse_support {
        let fa = &sparse.coeffs[a as usize];
        for &b in &ds {
            let n = a * b;
            if n > cutoff {
                break;
            }
            out.coeffs[n as usize] += fa * &dense.coeffs[b as usize];
        }
    }
    Ok(out)
}
