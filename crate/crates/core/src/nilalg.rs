//! Finite-dimensional nilpotent associative algebras over `F_q`, given by
//! structure constants on a basis `b_0, ..., b_{d-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};
use crate::grouptab::FiniteGroupTable;
use crate::linalg::{unit, Subspace, Vector};

/// Coordinates of an algebra element in the structure-constant basis.
pub type AlgVector = Vector;

/// Seed for the sampled associativity check on larger algebras.
pub const ASSOCIATIVITY_SEED: u64 = 0xa55c;

/// Algebras up to this dimension get exhaustive associativity checks.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

#[derive(Clone, Debug)]
pub struct NilAlgebra {
    field: Field,
    dim: usize,
    /// `products[i * dim + j]` lists the nonzero coordinates of `b_i b_j`.
    products: Vec<Vec<(u32, FieldElement)>>,
    /// Least `n` with `J^n = 0`.
    class: usize,
    /// `J^1, J^2, ..., J^class = 0`.
    chain: Vec<Subspace>,
}

impl NilAlgebra {
    /// `entries` are `(i, j, k, c)` meaning `b_i b_j` has coefficient `c` on `b_k`;
    /// repeated entries are summed.
    pub fn from_structure_constants(
        field: &Field,
        dim: usize,
        entries: &[(usize, usize, usize, FieldElement)],
        budgets: &Budgets,
    ) -> Result<NilAlgebra> {
        Budgets::check("dimension", budgets.dimension, dim as u128)?;
        let mut dense: Vec<Vec<FieldElement>> = Vec::new();
        let mut products = vec![Vec::new(); dim * dim];
        for &(i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::validation(format!(
                    "structure constant ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if dense.is_empty() {
                dense = vec![Vec::new(); dim * dim];
            }
            let slot = &mut dense[i * dim + j];
            if slot.is_empty() {
                *slot = vec![field.zero(); dim];
            }
            slot[k] = field.add(slot[k], c);
        }
        for (slot, v) in products.iter_mut().zip(dense) {
            *slot = sparse(&v);
        }
        Self::from_products(field.clone(), dim, products)
    }

    fn from_products(field: Field, dim: usize, products: Vec<Vec<(u32, FieldElement)>>) -> Result<NilAlgebra> {
        let mut alg = NilAlgebra {
            field,
            dim,
            products,
            class: 0,
            chain: Vec::new(),
        };
        alg.check_associativity()?;
        alg.build_chain()?;
        Ok(alg)
    }

    fn check_associativity(&self) -> Result<()> {
        let d = self.dim;
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let bi = unit(&self.field, d, i);
            let bj = unit(&self.field, d, j);
            let bk = unit(&self.field, d, k);
            if self.mul(&self.mul(&bi, &bj), &bk) != self.mul(&bi, &self.mul(&bj, &bk)) {
                return Err(Error::validation(format!(
                    "associativity fails on basis triple ({i}, {j}, {k})"
                )));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_ASSOCIATIVITY {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..20 * d {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    fn build_chain(&mut self) -> Result<()> {
        let d = self.dim;
        let mut current = Subspace::full(&self.field, d);
        let mut chain = vec![current.clone()];
        while current.dim() > 0 {
            if chain.len() > d + 1 {
                break;
            }
            // J^{k+1} = J^k J, the span of all (k+1)-fold products.
            let mut next = Subspace::zero(&self.field, d);
            for v in current.basis() {
                for j in 0..d {
                    let w = self.mul(v, &unit(&self.field, d, j));
                    next.insert(&w);
                }
            }
            if next.dim() == current.dim() {
                return Err(Error::validation(format!(
                    "algebra is not nilpotent: J^{} = J^{} has dimension {}",
                    chain.len(),
                    chain.len() + 1,
                    next.dim()
                )));
            }
            chain.push(next.clone());
            current = next;
        }
        self.class = chain.len();
        self.chain = chain;
        Ok(())
    }

    /// Strictly upper unitriangular `n x n` matrices; basis `e_ij` (`i < j`)
    /// ordered by `(j - i, i)`.
    pub fn make_unitriangular(n: usize, field: &Field, budgets: &Budgets) -> Result<NilAlgebra> {
        if n < 2 {
            return Err(Error::domain("unitriangular algebra needs n >= 2"));
        }
        Budgets::check("dimension", budgets.dimension, (n * (n - 1) / 2) as u128)?;
        let basis = unitriangular_basis(n);
        let index = |i: usize, j: usize| basis.iter().position(|&b| b == (i, j)).expect("basis pair");
        let mut entries = Vec::new();
        for (a, &(i, j)) in basis.iter().enumerate() {
            for (b, &(k, l)) in basis.iter().enumerate() {
                if j == k {
                    entries.push((a, b, index(i, l), field.one()));
                }
            }
        }
        Self::from_structure_constants(field, basis.len(), &entries, budgets)
    }

    /// Augmentation ideal of `F_q[pi]` with basis `g - 1` for `g != 1`, in group element order.
    pub fn make_augmentation_ideal(group: &FiniteGroupTable, field: &Field, budgets: &Budgets) -> Result<NilAlgebra> {
        if !group.is_p_group_for(field.p()) {
            return Err(Error::domain(format!(
                "group order {} is not a power of the characteristic {}",
                group.order(),
                field.p()
            )));
        }
        let d = group.order() - 1;
        Budgets::check("dimension", budgets.dimension, d as u128)?;
        let id = group.identity();
        let idx = |g: u32| -> usize { if g < id { g as usize } else { g as usize - 1 } };
        let minus_one = field.neg(field.one());
        let mut products = Vec::with_capacity(d * d);
        for g in group.elements().filter(|&g| g != id) {
            for h in group.elements().filter(|&h| h != id) {
                let mut terms: Vec<(u32, FieldElement)> = Vec::with_capacity(3);
                let mut push = |k: usize, c: FieldElement| match terms.iter_mut().find(|t| t.0 == k as u32) {
                    Some(t) => t.1 = field.add(t.1, c),
                    None => terms.push((k as u32, c)),
                };
                let gh = group.mul(g, h);
                if gh != id {
                    push(idx(gh), field.one());
                }
                push(idx(g), minus_one);
                push(idx(h), minus_one);
                terms.retain(|t| !t.1.is_zero());
                terms.sort_by_key(|t| t.0);
                products.push(terms);
            }
        }
        Self::from_products(field.clone(), d, products)
    }

    /// The algebra with every product zero.
    pub fn zero_product(field: &Field, dim: usize, budgets: &Budgets) -> Result<NilAlgebra> {
        Self::from_structure_constants(field, dim, &[], budgets)
    }

    /// `t F_q[t] / (t^{n+1})` with basis `t, t^2, ..., t^n`.
    pub fn truncated_polynomial(field: &Field, n: usize, budgets: &Budgets) -> Result<NilAlgebra> {
        let entries: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i + j + 1 < n)
            .map(|(i, j)| (i, j, i + j + 1, field.one()))
            .collect();
        Self::from_structure_constants(field, n, &entries, budgets)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Least `n` with `J^n = 0`.
    pub fn class(&self) -> usize {
        self.class
    }

    /// Nonzero coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, FieldElement)] {
        &self.products[i * self.dim + j]
    }

    /// `(i, j, k, c)` for every nonzero structure constant, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, FieldElement)> {
        let d = self.dim;
        (0..d * d)
            .flat_map(|ij| self.products[ij].iter().map(move |&(k, c)| (ij / d, ij % d, k as usize, c)))
            .collect()
    }

    pub fn zero(&self) -> AlgVector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> AlgVector {
        unit(&self.field, self.dim, i)
    }

    fn check_dim(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::domain(format!(
                "vector has {} coordinates, algebra has dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Product `ab`; panics on a dimension mismatch (see [`NilAlgebra::multiply`]).
    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> AlgVector {
        assert!(a.len() == self.dim && b.len() == self.dim, "dimension mismatch");
        let f = &self.field;
        let mut out = self.zero();
        for (i, &ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = f.mul(ai, bj);
                for &(k, s) in &self.products[i * self.dim + j] {
                    out[k as usize] = f.mul_add(out[k as usize], c, s);
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &[FieldElement], b: &[FieldElement]) -> Result<AlgVector> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.mul(a, b))
    }

    /// `ab - ba`; panics on a dimension mismatch.
    pub fn bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> AlgVector {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn lie_bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> Result<AlgVector> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.bracket(a, b))
    }

    pub fn add(&self, a: &[FieldElement], b: &[FieldElement]) -> AlgVector {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[FieldElement], b: &[FieldElement]) -> AlgVector {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: FieldElement, a: &[FieldElement]) -> AlgVector {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// `J = J^1 ⊋ J^2 ⊋ ... ⊋ J^n = 0`.
    pub fn power_ideal_chain(&self) -> &[Subspace] {
        &self.chain
    }

    /// Basis `v_1, ..., v_d` with `v_i` in `J_i` but not in `J_{i+1}` for the
    /// flag of [`NilAlgebra::refine_to_flag`].
    pub fn flag_adapted_basis(&self) -> Vec<AlgVector> {
        adapted_basis(&self.chain)
    }

    /// `A, A^2, ..., 0` for a subalgebra `A`.
    pub fn power_chain_of(&self, a: &Subspace) -> Vec<Subspace> {
        let mut chain = vec![a.clone()];
        loop {
            let cur = chain.last().expect("chain starts nonempty");
            if cur.dim() == 0 {
                return chain;
            }
            let mut next = Subspace::zero(&self.field, self.dim);
            for v in cur.basis() {
                for w in a.basis() {
                    next.insert(&self.mul(v, w));
                }
            }
            chain.push(next);
        }
    }

    /// Flag-adapted basis of a subalgebra `A`, refining its power chain.
    pub fn flag_adapted_basis_of(&self, a: &Subspace) -> Vec<AlgVector> {
        adapted_basis(&self.power_chain_of(a))
    }

    pub fn is_subalgebra(&self, a: &Subspace) -> bool {
        a.basis()
            .iter()
            .all(|v| a.basis().iter().all(|w| a.contains(&self.mul(v, w))))
    }

    /// Full flag of ideals `J = J_1 ⊋ J_2 ⊋ ... ⊋ J_{d+1} = 0` with
    /// one-dimensional steps, refining the power chain.
    pub fn refine_to_flag(&self) -> Vec<Subspace> {
        let basis = self.flag_adapted_basis();
        (0..=self.dim)
            .map(|i| Subspace::spanned_by(&self.field, self.dim, basis[i..].iter()))
            .collect()
    }

    /// `[J, J]_L`, the span of all brackets of basis vectors.
    pub fn derived_lie_subspace(&self) -> Subspace {
        let mut s = Subspace::zero(&self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..i {
                s.insert(&self.bracket(&self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        s
    }

    /// `J^p = 0`.
    pub fn is_p_nilpotent(&self) -> bool {
        self.class <= self.field.p() as usize
    }

    /// `x^k`, with `x^0` undefined in a nonunital algebra so `k >= 1`.
    pub fn power(&self, x: &[FieldElement], k: usize) -> AlgVector {
        assert!(k >= 1);
        let mut acc = x.to_vec();
        for _ in 1..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Parses the `alg p e d` text format: one `i j k coeff` line per nonzero
    /// structure constant, coefficients given as packed field codes.
    pub fn parse(text: &str, budgets: &Budgets) -> Result<NilAlgebra> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hn, header) = lines.next().ok_or_else(|| Error::validation("empty algebra file"))?;
        let nums = |l: &str, n: usize| -> Result<Vec<u64>> {
            l.split_whitespace()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::validation(format!("line {n}: `{s}` is not a non-negative integer")))
                })
                .collect()
        };
        let head = header
            .strip_prefix("alg")
            .ok_or_else(|| Error::validation(format!("line {hn}: header must be `alg p e d`")))?;
        let [p, e, d] = nums(head, hn)?[..] else {
            return Err(Error::validation(format!("line {hn}: header must be `alg p e d`")));
        };
        let field = Field::with_budget(p as u32, e as u32, budgets)?;
        let d = d as usize;
        let mut entries = Vec::new();
        for (n, l) in lines {
            let [i, j, k, c] = nums(l, n)?[..] else {
                return Err(Error::validation(format!("line {n}: expected `i j k coeff`")));
            };
            entries.push((i as usize, j as usize, k as usize, field.element(c as u32)?));
        }
        Self::from_structure_constants(&field, d, &entries, budgets)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("alg {} {} {}\n", self.field.p(), self.field.e(), self.dim);
        for (i, j, k, c) in self.structure_constants() {
            out += &format!("{i} {j} {k} {}\n", c.code());
        }
        out
    }
}

/// Refines a descending chain of subspaces into a basis adapted to a full flag:
/// within each layer, `J^{m+1}` is extended by the earliest echelon rows of `J^m`.
fn adapted_basis(chain: &[Subspace]) -> Vec<AlgVector> {
    let mut out = Vec::new();
    for m in 0..chain.len().saturating_sub(1) {
        let mut span = chain[m + 1].clone();
        let mut added = Vec::new();
        for v in chain[m].basis() {
            if span.insert(v) {
                added.push(v.clone());
            }
        }
        // the flag descends, so within a layer the last added vector is deepest
        added.reverse();
        out.extend(added);
    }
    out
}

fn sparse(v: &[FieldElement]) -> Vec<(u32, FieldElement)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, &c)| (k as u32, c))
        .collect()
}

/// Index pairs `(i, j)`, `i < j`, ordered by `(j - i, i)`.
pub fn unitriangular_basis(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|s| (0..n - s).map(move |i| (i, i + s))).collect()
}
