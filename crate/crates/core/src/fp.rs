//! Prime-field coordinates for `F_q`-spaces and small dense `F_p` matrices.
//!
//! A vector `x` in `F_q^d` with `q = p^e` has `F_p` coordinates `x_(i,s)`, the
//! coefficient of `t^s` in `x_i`, stored at flat position `i * e + s`. Reading
//! those digits base `p`, least significant first, gives the packed index
//! `sum_i code(x_i) q^i`.

use crate::ffield::{Field, FieldElement};

pub fn to_fp(field: &Field, x: &[FieldElement]) -> Vec<u32> {
    let e = field.e() as usize;
    let mut out = Vec::with_capacity(x.len() * e);
    for &xi in x {
        for s in 0..e {
            out.push(field.digit(xi, s));
        }
    }
    out
}

pub fn from_fp(field: &Field, digits: &[u32]) -> Vec<FieldElement> {
    let e = field.e() as usize;
    digits
        .chunks(e)
        .map(|c| field.from_coeffs(c).expect("digits below p"))
        .collect()
}

pub fn pack(p: u32, digits: &[u32]) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

pub fn unpack(p: u32, mut index: u64, out: &mut [u32]) {
    for d in out.iter_mut() {
        *d = (index % p as u64) as u32;
        index /= p as u64;
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> FpMatrix {
        let cols = columns.len();
        let mut m = FpMatrix::zero(p, rows, cols);
        for (k, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols + k] = x % p;
            }
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> FpMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x % p));
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `out = M x`.
    pub fn apply(&self, x: &[u32], out: &mut [u32]) {
        let p = self.p as u64;
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = 0u64;
            for (&a, &b) in row.iter().zip(x) {
                acc += a as u64 * b as u64;
            }
            *o = (acc % p) as u32;
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % self.p;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_matches_field_codes() {
        let f = Field::new(3, 2).unwrap();
        let x = vec![f.element(5).unwrap(), f.element(7).unwrap()];
        let d = to_fp(&f, &x);
        assert_eq!(pack(3, &d), 5 + 7 * 9);
        let mut back = vec![0; 4];
        unpack(3, 5 + 7 * 9, &mut back);
        assert_eq!(from_fp(&f, &back), x);
    }

    #[test]
    fn matrix_products() {
        let a = FpMatrix::from_rows(5, 2, &[vec![1, 2], vec![3, 4]]);
        let i = FpMatrix::identity(5, 2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(a.transpose().transpose(), a);
        let mut out = vec![0; 2];
        a.apply(&[1, 1], &mut out);
        assert_eq!(out, vec![3, 2]);
        assert_eq!(a.mul(&a), FpMatrix::from_rows(5, 2, &[vec![2, 0], vec![0, 2]]));
    }
}
