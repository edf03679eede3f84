//! The Galois ring `GR(p^v, e) = (Z/p^v)[t] / (f)` and the Frobenius matrix
//! of the unramified extension in its Teichmüller basis.

use crate::error::{Error, Result};
use crate::ffield::Field;

/// Square matrix over `Z/m`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub modulus: u64,
    pub n: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(modulus: u64, n: usize) -> ModMatrix {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % modulus;
        }
        ModMatrix { modulus, n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn from_columns(modulus: u64, columns: &[Vec<u64>]) -> ModMatrix {
        let n = columns.len();
        let mut data = vec![0; n * n];
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                data[i * n + j] = x % modulus;
            }
        }
        ModMatrix { modulus, n, data }
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let (n, m) = (self.n, self.modulus);
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    data[i * n + j] = (data[i * n + j] + a * other.get(k, j)) % m;
                }
            }
        }
        ModMatrix { modulus: m, n, data }
    }

    pub fn pow(&self, mut k: u64) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.modulus, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Entries reduced modulo `d`, a divisor of the modulus.
    pub fn reduce(&self, d: u64) -> ModMatrix {
        ModMatrix {
            modulus: d,
            n: self.n,
            data: self.data.iter().map(|x| x % d).collect(),
        }
    }

    /// Inverse, when the matrix is invertible over the local ring `Z/p^v`.
    pub fn inverse(&self, p: u64) -> Result<ModMatrix> {
        let (n, m) = (self.n, self.modulus);
        let mut a = self.clone();
        let mut inv = ModMatrix::identity(m, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a.get(r, col) % p != 0)
                .ok_or_else(|| Error::internal("matrix is not invertible modulo p"))?;
            for t in [&mut a, &mut inv] {
                for j in 0..n {
                    t.data.swap(col * n + j, piv * n + j);
                }
            }
            let u = inv_mod(a.get(col, col), m);
            for t in [&mut a, &mut inv] {
                for j in 0..n {
                    t.data[col * n + j] = t.data[col * n + j] * u % m;
                }
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r == col || c == 0 {
                    continue;
                }
                for t in [&mut a, &mut inv] {
                    for j in 0..n {
                        let v = t.data[col * n + j];
                        t.data[r * n + j] = (t.data[r * n + j] + m - c * v % m) % m;
                    }
                }
            }
        }
        Ok(inv)
    }
}

/// Inverse of a unit modulo `m`.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not a unit modulo {m}");
    s0.rem_euclid(m as i128) as u64
}

/// `(Z/m)[t] / (f)` for a monic `f` of degree `e`, elements as coefficient vectors of length `e`.
struct Ring {
    m: u64,
    /// Low coefficients of the monic modulus, `f = t^e + sum_i f[i] t^i`.
    f: Vec<u64>,
}

impl Ring {
    fn e(&self) -> usize {
        self.f.len()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.e();
        let m = self.m;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % m;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &fi) in self.f.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + m - c * fi % m) % m;
            }
        }
        prod.truncate(e);
        prod
    }

    fn pow(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.e()];
        acc[0] = 1 % self.m;
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Frobenius matrices of `Z_p[zeta_{q-1}]` modulo `p^v`.
#[derive(Clone, Debug)]
pub struct FrobeniusMatrix {
    pub p: u32,
    pub e: u32,
    pub v: u32,
    /// Column `j` holds the coordinates of `phi(omega^j) = omega^{jp}` in the
    /// Teichmüller basis `1, omega, ..., omega^{e-1}`.
    pub teichmuller: ModMatrix,
    /// The same automorphism in the monomial basis `1, t, ..., t^{e-1}` of
    /// `(Z/p^v)[t] / (f)`, `f` the lifted field modulus.
    pub monomial: ModMatrix,
}

pub fn frobenius_matrix(p: u32, e: u32, v: u32) -> Result<FrobeniusMatrix> {
    if e == 0 || v == 0 {
        return Err(Error::domain("frobenius matrix needs e >= 1 and v >= 1"));
    }
    let m = (p as u64)
        .checked_pow(v)
        .filter(|&m| m < 1 << 31)
        .ok_or_else(|| Error::domain(format!("precision {p}^{v} is too large")))?;
    let e_us = e as usize;
    if e == 1 {
        let id = ModMatrix::identity(m, 1);
        return Ok(FrobeniusMatrix {
            p,
            e,
            v,
            teichmuller: id.clone(),
            monomial: id,
        });
    }
    let field = Field::new(p, e)?;
    let modulus = field.modulus();
    let ring = Ring {
        m,
        f: modulus[..e_us].iter().map(|&c| c as u64).collect(),
    };
    let q = (p as u64).pow(e);
    // omega = t^{q^{v-1}} is the Teichmüller lift of t
    let mut t = vec![0u64; e_us];
    t[1] = 1;
    let mut omega = t.clone();
    for _ in 1..v {
        omega = ring.pow(&omega, q);
    }
    if ring.pow(&omega, q) != omega {
        return Err(Error::internal("Teichmüller lift is not fixed by the q-th power map"));
    }
    // columns: omega^j in the monomial basis
    let omega_powers: Vec<Vec<u64>> = (0..e_us as u64).map(|j| ring.pow(&omega, j)).collect();
    let w = ModMatrix::from_columns(m, &omega_powers);
    let w_inv = w.inverse(p as u64)?;
    // phi(omega^j) = omega^{jp}; coordinates in the omega basis are W^{-1} (omega^{jp} in monomials)
    let images: Vec<Vec<u64>> = (0..e_us as u64)
        .map(|j| {
            let img = ring.pow(&omega, j * p as u64);
            let mut coords = vec![0u64; e_us];
            for (i, c) in coords.iter_mut().enumerate() {
                *c = (0..e_us).map(|k| w_inv.get(i, k) * img[k] % m).sum::<u64>() % m;
            }
            coords
        })
        .collect();
    let teichmuller = ModMatrix::from_columns(m, &images);
    let monomial = w.mul(&teichmuller).mul(&w_inv);
    if teichmuller.pow(e as u64) != ModMatrix::identity(m, e_us) {
        return Err(Error::internal("Frobenius matrix does not have order dividing e"));
    }
    Ok(FrobeniusMatrix {
        p,
        e,
        v,
        teichmuller,
        monomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Matrix of `x -> x^p` on `F_q` in the basis `1, t, ..., t^{e-1}`.
    fn field_frobenius(p: u32, e: u32) -> ModMatrix {
        let f = Field::new(p, e).unwrap();
        let cols: Vec<Vec<u64>> = (0..e as usize)
            .map(|j| {
                f.coeffs(f.frobenius(f.basis_element(j)))
                    .into_iter()
                    .map(u64::from)
                    .collect()
            })
            .collect();
        ModMatrix::from_columns(p as u64, &cols)
    }

    #[test]
    fn prime_field_is_identity() {
        let fm = frobenius_matrix(5, 1, 3).unwrap();
        assert_eq!(fm.teichmuller, ModMatrix::identity(125, 1));
    }

    #[test]
    fn f4_reduction() {
        let fm = frobenius_matrix(2, 2, 2).unwrap();
        let red = fm.teichmuller.reduce(2);
        assert_eq!(red, ModMatrix::from_columns(2, &[vec![1, 0], vec![1, 1]]));
    }

    #[test]
    fn reductions_match_field_frobenius() {
        for (p, e, v) in [(2, 2, 4), (2, 3, 3), (3, 2, 3), (3, 3, 2), (5, 2, 2), (2, 4, 3)] {
            let fm = frobenius_matrix(p, e, v).unwrap();
            assert_eq!(fm.teichmuller.reduce(p as u64), field_frobenius(p, e), "({p},{e},{v})");
            assert_eq!(fm.monomial.reduce(p as u64), field_frobenius(p, e));
            let m = (p as u64).pow(v);
            assert_eq!(fm.monomial.pow(e as u64), ModMatrix::identity(m, e as usize));
            // fixed vectors mod p: exactly the prime-field line
            let red = fm.teichmuller.reduce(p as u64);
            let q = (p as u64).pow(e);
            let fixed = (0..q)
                .filter(|&x| {
                    let v: Vec<u64> = (0..e).map(|i| x / (p as u64).pow(i) % p as u64).collect();
                    (0..e as usize).all(|i| (0..e as usize).map(|j| red.get(i, j) * v[j]).sum::<u64>() % p as u64 == v[i])
                })
                .count();
            assert_eq!(fixed, p as usize);
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(3, 8), 3);
        assert_eq!(inv_mod(2, 9) * 2 % 9, 1);
        let a = ModMatrix::from_columns(8, &[vec![1, 2], vec![4, 3]]);
        let ai = a.inverse(2).unwrap();
        assert_eq!(a.mul(&ai), ModMatrix::identity(8, 2));
    }
}
