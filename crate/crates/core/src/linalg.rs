//! Row-echelon linear algebra over a [`Field`].
//!
//! Subspaces are always held in fully reduced row-echelon form with pivots in
//! increasing column order, so two equal subspaces have identical bases.

use crate::ffield::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            s.insert(&unit(field, ambient, i));
        }
        s
    }

    pub fn spanned_by<'a>(
        field: &Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vector>,
    ) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The part of `v` left after eliminating every pivot column.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = r[piv];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(r[piv]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }
}

pub fn unit(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows, each of length `ncols`.
pub fn nullspace(field: &Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let echelon = Subspace::spanned_by(field, ncols, rows.iter());
    let pivots = echelon.pivots();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![field.zero(); ncols];
        x[free] = field.one();
        for (row, &piv) in echelon.basis().iter().zip(pivots) {
            x[piv] = field.neg(row[free]);
        }
        out.push(x);
    }
    out
}

pub fn rank(field: &Field, rows: &[Vector], ncols: usize) -> usize {
    Subspace::spanned_by(field, ncols, rows.iter()).dim()
}

/// `M v` for a matrix stored as rows.
pub fn mat_vec(field: &Field, m: &[Vector], v: &[FieldElement]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (&a, &b)| field.mul_add(acc, a, b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let f = Field::prime(5).unwrap();
        let a = Subspace::spanned_by(&f, 3, [v(&f, &[1, 2, 3]), v(&f, &[0, 1, 4])].iter());
        let b = Subspace::spanned_by(&f, 3, [v(&f, &[1, 3, 2]), v(&f, &[2, 4, 1])].iter());
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), b.basis());
        assert!(a.contains(&v(&f, &[1, 3, 2])));
        assert!(!a.contains(&v(&f, &[0, 0, 1])));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::prime(3).unwrap();
        let rows = vec![v(&f, &[1, 1, 0, 2]), v(&f, &[0, 1, 1, 1])];
        let ker = nullspace(&f, &rows, 4);
        assert_eq!(ker.len(), 2);
        for x in &ker {
            for r in &rows {
                let dot = r.iter().zip(x).fold(f.zero(), |a, (&s, &t)| f.mul_add(a, s, t));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn extension_field_subspace() {
        let f = Field::new(2, 2).unwrap();
        let t = f.basis_element(1);
        let s = Subspace::spanned_by(&f, 2, [vec![f.one(), t]].iter());
        assert!(s.contains(&[t, f.mul(t, t)]));
        assert_eq!(s.dim(), 1);
    }
}
