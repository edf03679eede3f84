//! Coadjoint orbits of `1 + J` on the dual of `J`, their radicals and fake
//! degrees, maximal isotropic subalgebras and orbit-method characters.
//!
//! Dual functionals are `F_p`-linear maps `J -> Z/p`, stored as digit vectors
//! over the `F_p`-basis `beta_(i,s) = t^s b_i` (flat position `i * e + s`). The
//! group acts by `lambda^g(a) = lambda(g a g^{-1})`.

mod characters;
mod cyclotomic;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algroup::AlgebraGroup;
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::fp::{from_fp, pack, to_fp, unpack, FpMatrix};
use crate::linalg::{nullspace, Subspace};
use crate::nilalg::{AlgVector, NilAlgebra};

pub use characters::{Character, CharacterTable};
pub use cyclotomic::CyclotomicValue;

/// Digits of an `F_p`-linear functional on `J`.
pub type DualFunctional = Vec<u32>;

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub representative: DualFunctional,
    /// Packed index of the representative; the least index in the orbit.
    pub index: u64,
    pub size: u64,
    pub fake_degree: u64,
    /// `Rad B_lambda` as an `F_q`-subspace.
    pub radical: Subspace,
}

#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub records: Vec<OrbitRecord>,
    /// Orbit number of each dual functional, by packed index.
    pub orbit_of: Vec<u32>,
}

impl OrbitCensus {
    pub fn count(&self) -> usize {
        self.records.len()
    }

    /// Orbit size -> number of orbits of that size.
    pub fn sizes_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.size).or_insert(0) += 1;
        }
        h
    }

    /// Fake degrees with multiplicities, ascending.
    pub fn fake_degree_multiset(&self) -> Vec<(u64, usize)> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.fake_degree).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }

    pub fn fixed_points(&self) -> u64 {
        self.records.iter().filter(|r| r.size == 1).count() as u64
    }

    /// Packed indices of the members of every orbit.
    pub fn members(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.records.len()];
        for (i, &o) in self.orbit_of.iter().enumerate() {
            out[o as usize].push(i as u64);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    /// `|J / [J, J]_L|`.
    pub lie_index: u64,
    /// `|(1 + J)_ab|`.
    pub group_abelianization: u64,
    pub equal: bool,
}

pub struct Coadjoint {
    group: AlgebraGroup,
    prime: Field,
    /// Action of each group generator on digit vectors of functionals.
    actions: Vec<FpMatrix>,
    /// `brackets[u * n + w]`: digits of `[beta_u, beta_w]`, when `n` is small.
    brackets: Option<Vec<Vec<u32>>>,
}

const BRACKET_TABLE_LIMIT: usize = 128;

impl Coadjoint {
    pub fn new(alg: NilAlgebra) -> Coadjoint {
        let group = AlgebraGroup::new(alg);
        let prime = Field::prime(group.algebra().field().p()).expect("characteristic is prime");
        let actions = group
            .generators()
            .iter()
            .map(|g| group.conjugation_matrix(&group.ginv(g)).transpose())
            .collect();
        let mut c = Coadjoint {
            group,
            prime,
            actions,
            brackets: None,
        };
        let n = c.fp_dim();
        if n <= BRACKET_TABLE_LIMIT {
            let table = (0..n * n).map(|uw| c.bracket_digits_direct(uw / n, uw % n)).collect();
            c.brackets = Some(table);
        }
        c
    }

    pub fn group(&self) -> &AlgebraGroup {
        &self.group
    }

    pub fn algebra(&self) -> &NilAlgebra {
        self.group.algebra()
    }

    fn field(&self) -> &Field {
        self.group.algebra().field()
    }

    pub fn p(&self) -> u32 {
        self.field().p()
    }

    /// `e d`, the number of digits of a functional.
    pub fn fp_dim(&self) -> usize {
        self.group.fp_dim()
    }

    /// `|dual| = p^{ed}`, saturating.
    pub fn dual_size(&self) -> u128 {
        crate::algroup::size_of(self.p(), self.fp_dim())
    }

    fn beta(&self, u: usize) -> AlgVector {
        let mut digits = vec![0; self.fp_dim()];
        digits[u] = 1;
        from_fp(self.field(), &digits)
    }

    fn bracket_digits_direct(&self, u: usize, w: usize) -> Vec<u32> {
        to_fp(self.field(), &self.algebra().bracket(&self.beta(u), &self.beta(w)))
    }

    pub fn functional_from_index(&self, index: u64) -> DualFunctional {
        let mut d = vec![0; self.fp_dim()];
        unpack(self.p(), index, &mut d);
        d
    }

    pub fn index_of(&self, lambda: &[u32]) -> u64 {
        pack(self.p(), lambda)
    }

    fn dot(&self, lambda: &[u32], digits: &[u32]) -> u32 {
        let s: u64 = lambda.iter().zip(digits).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.p() as u64) as u32
    }

    /// `lambda(x)` in `Z/p`.
    pub fn evaluate(&self, lambda: &[u32], x: &[crate::FieldElement]) -> u32 {
        self.dot(lambda, &to_fp(self.field(), x))
    }

    /// `lambda^g`, where `g` stands for `1 + g`.
    pub fn act(&self, lambda: &[u32], g: &[crate::FieldElement]) -> DualFunctional {
        let m = self.group.conjugation_matrix(&self.group.ginv(g)).transpose();
        let mut out = vec![0; self.fp_dim()];
        m.apply(lambda, &mut out);
        out
    }

    /// `G[u][w] = lambda([beta_u, beta_w])`.
    pub fn gram(&self, lambda: &[u32]) -> FpMatrix {
        let n = self.fp_dim();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|w| match &self.brackets {
                        Some(t) => self.dot(lambda, &t[u * n + w]),
                        None => self.dot(lambda, &self.bracket_digits_direct(u, w)),
                    })
                    .collect()
            })
            .collect();
        FpMatrix::from_rows(self.p(), n, &rows)
    }

    /// `F_p`-kernel of the bilinear map `(u, w) -> lambda([u, w])` restricted
    /// to `left x right`, returned as the `F_q`-span; errors if that span is
    /// larger than the kernel (the kernel must be `F_q`-linear).
    fn kernel_within(&self, lambda: &[u32], left: &[AlgVector], right: &[AlgVector]) -> Result<Subspace> {
        let f = self.field();
        let rows: Vec<Vec<crate::FieldElement>> = right
            .iter()
            .map(|w| {
                left.iter()
                    .map(|u| self.prime.from_int(self.evaluate(lambda, &self.algebra().bracket(u, w)) as i64))
                    .collect()
            })
            .collect();
        let kernel = nullspace(&self.prime, &rows, left.len());
        let vectors: Vec<AlgVector> = kernel
            .iter()
            .map(|c| {
                let mut v = self.algebra().zero();
                for (coef, u) in c.iter().zip(left) {
                    if !coef.is_zero() {
                        v = self.algebra().add(&v, &self.algebra().scale(f.from_int(coef.code() as i64), u));
                    }
                }
                v
            })
            .collect();
        let span = Subspace::spanned_by(f, self.algebra().dim(), vectors.iter());
        if span.dim() * f.e() as usize != kernel.len() {
            return Err(Error::internal(format!(
                "kernel of dimension {} over F_p is not closed under F_q-scaling",
                kernel.len()
            )));
        }
        Ok(span)
    }

    /// `F_p`-basis `t^s v` of an `F_q`-subspace.
    fn fp_basis(&self, s: &Subspace) -> Vec<AlgVector> {
        let f = self.field();
        s.basis()
            .iter()
            .flat_map(|v| (0..f.e() as usize).map(move |k| self.algebra().scale(f.basis_element(k), v)))
            .collect()
    }

    /// `Rad B_lambda = {a : lambda([a, b]) = 0 for all b}`.
    pub fn radical(&self, lambda: &[u32]) -> Result<Subspace> {
        let n = self.fp_dim();
        let gram = self.gram(lambda);
        // a in Rad iff a^T G = 0, i.e. G^T a = 0; rows of G^T are the columns of G.
        let rows: Vec<Vec<crate::FieldElement>> = (0..n)
            .map(|w| (0..n).map(|u| self.prime.element(gram.get(u, w)).expect("digit")).collect())
            .collect();
        let kernel = nullspace(&self.prime, &rows, n);
        let f = self.field();
        let vectors: Vec<AlgVector> = kernel
            .iter()
            .map(|c| from_fp(f, &c.iter().map(|x| x.code()).collect::<Vec<_>>()))
            .collect();
        let span = Subspace::spanned_by(f, self.algebra().dim(), vectors.iter());
        if span.dim() * f.e() as usize != kernel.len() {
            return Err(Error::internal(format!(
                "radical of dimension {} over F_p is not an F_q-subspace",
                kernel.len()
            )));
        }
        Ok(span)
    }

    fn size_from_radical(&self, radical: &Subspace) -> Result<(u64, u64)> {
        let e = self.field().e() as usize;
        let codim = self.fp_dim() - radical.dim() * e;
        if codim % (2 * e) != 0 {
            return Err(Error::internal(format!(
                "orbit size p^{codim} is not the square of a power of q = p^{e}"
            )));
        }
        let p = self.p() as u64;
        Ok((p.pow(codim as u32), p.pow((codim / 2) as u32)))
    }

    /// `|J / Rad B_lambda|`.
    pub fn orbit_size(&self, lambda: &[u32]) -> Result<u64> {
        Ok(self.size_from_radical(&self.radical(lambda)?)?.0)
    }

    /// `|J / Rad B_lambda|^{1/2}`.
    pub fn fake_degree(&self, lambda: &[u32]) -> Result<u64> {
        Ok(self.size_from_radical(&self.radical(lambda)?)?.1)
    }

    fn check_dual_budget(&self, budgets: &Budgets) -> Result<usize> {
        let size = self.dual_size();
        if size > budgets.dual as u128 {
            return Err(Error::budget(
                "dual",
                budgets.dual,
                format!(
                    "the dual has p^{} functionals; query radicals and fake degrees of individual functionals instead",
                    self.fp_dim()
                ),
            ));
        }
        Ok(size as usize)
    }

    /// All coadjoint orbits, each represented by its least packed index.
    pub fn census(&self, budgets: &Budgets) -> Result<OrbitCensus> {
        let total = self.check_dual_budget(budgets)?;
        let n = self.fp_dim();
        let p = self.p();
        let mut orbit_of = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        let (mut x, mut y) = (vec![0u32; n], vec![0u32; n]);
        for start in 0..total {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            orbit_of[start] = id;
            reps.push(start as u64);
            let mut size = 1u64;
            stack.push(start as u64);
            while let Some(idx) = stack.pop() {
                unpack(p, idx, &mut x);
                for a in &self.actions {
                    a.apply(&x, &mut y);
                    let j = pack(p, &y) as usize;
                    if orbit_of[j] == u32::MAX {
                        orbit_of[j] = id;
                        size += 1;
                        stack.push(j as u64);
                    }
                }
            }
            sizes.push(size);
        }
        let records = reps
            .par_iter()
            .zip(sizes.par_iter())
            .map(|(&index, &counted)| {
                let representative = self.functional_from_index(index);
                let radical = self.radical(&representative)?;
                let (size, fake_degree) = self.size_from_radical(&radical)?;
                if size != counted {
                    return Err(Error::internal(format!(
                        "orbit of functional {index} has {counted} elements but |J/Rad| = {size}"
                    )));
                }
                Ok(OrbitRecord {
                    representative,
                    index,
                    size,
                    fake_degree,
                    radical,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let covered: u64 = records.iter().map(|r| r.size).sum();
        if covered != total as u64 {
            return Err(Error::internal("orbit sizes do not sum to |J|"));
        }
        Ok(OrbitCensus { records, orbit_of })
    }

    /// `|J / [J, J]_L|`, saturating.
    pub fn lie_index(&self) -> u128 {
        let alg = self.algebra();
        crate::algroup::size_of(alg.field().q(), alg.dim() - alg.derived_lie_subspace().dim())
    }

    /// Number of fixed functionals, counted in the census and compared with `|J / [J, J]_L|`.
    pub fn fixed_point_count(&self, census: &OrbitCensus) -> Result<u64> {
        let counted = census.fixed_points();
        let lie = self.lie_index();
        if counted as u128 != lie {
            return Err(Error::internal(format!(
                "census has {counted} fixed functionals but |J/[J,J]_L| = {lie}"
            )));
        }
        Ok(counted)
    }

    /// Compares `|J / [J, J]_L|` with `|(1 + J)_ab|`.
    pub fn conjecture_probe(&self, budgets: &Budgets) -> Result<ProbeReport> {
        let group_abelianization = self.group.abelianization_order(budgets)?;
        let lie_index = self.lie_index() as u64;
        Ok(ProbeReport {
            lie_index,
            group_abelianization,
            equal: lie_index == group_abelianization,
        })
    }

    fn is_isotropic(&self, lambda: &[u32], s: &Subspace) -> bool {
        let basis = self.fp_basis(s);
        basis.iter().enumerate().all(|(i, u)| {
            basis[..i]
                .iter()
                .all(|w| self.evaluate(lambda, &self.algebra().bracket(u, w)) == 0)
        })
    }

    /// A subalgebra `H` that is maximal isotropic for `B_lambda`, so that
    /// `|J / H|` is the fake degree of `lambda`.
    pub fn max_isotropic_subalgebra(&self, lambda: &[u32]) -> Result<Subspace> {
        let alg = self.algebra();
        let f = self.field();
        let mut a = Subspace::full(f, alg.dim());
        loop {
            let basis = alg.flag_adapted_basis_of(&a);
            let i = (0..=basis.len())
                .find(|&i| self.is_isotropic(lambda, &Subspace::spanned_by(f, alg.dim(), basis[i..].iter())))
                .expect("the zero subspace is isotropic");
            if i == 0 {
                break;
            }
            let s = Subspace::spanned_by(f, alg.dim(), basis[i..].iter());
            let perp = self.kernel_within(lambda, &self.fp_basis(&a), &self.fp_basis(&s))?;
            if perp.dim() >= a.dim() || !alg.is_subalgebra(&perp) {
                return Err(Error::internal(
                    "orthogonal complement of the first isotropic flag term is not a proper subalgebra",
                ));
            }
            a = perp;
        }
        let fake = self.fake_degree(lambda)?;
        let index = crate::algroup::size_of(f.q(), alg.dim() - a.dim());
        if !alg.is_subalgebra(&a) || !self.is_isotropic(lambda, &a) || index != fake as u128 {
            return Err(Error::internal(format!(
                "isotropic subalgebra of codimension {} does not match fake degree {fake}",
                alg.dim() - a.dim()
            )));
        }
        Ok(a)
    }

    /// Checks that the functionals agreeing with `lambda` on `H_lambda` form a
    /// single `(1 + H_lambda)`-orbit of size `|J / H_lambda|`.
    pub fn transitivity_check(&self, lambda: &[u32], budgets: &Budgets) -> Result<bool> {
        let total = self.check_dual_budget(budgets)?;
        let h = self.max_isotropic_subalgebra(lambda)?;
        let h_fp: Vec<Vec<u32>> = self.fp_basis(&h).iter().map(|v| to_fp(self.field(), v)).collect();
        let restrict = |mu: &[u32]| -> Vec<u32> { h_fp.iter().map(|v| self.dot(mu, v)).collect() };
        let target = restrict(lambda);
        let sigma: HashSet<u64> = (0..total as u64)
            .filter(|&i| restrict(&self.functional_from_index(i)) == target)
            .collect();
        let sub_group_gens: Vec<FpMatrix> = self
            .algebra()
            .flag_adapted_basis_of(&h)
            .iter()
            .flat_map(|v| {
                let f = self.field();
                (0..f.e() as usize).map(move |k| self.algebra().scale(f.basis_element(k), v))
            })
            .map(|g| self.group.conjugation_matrix(&self.group.ginv(&g)).transpose())
            .collect();
        let mut orbit = HashSet::from([self.index_of(lambda)]);
        let mut stack = vec![lambda.to_vec()];
        let mut y = vec![0; self.fp_dim()];
        while let Some(x) = stack.pop() {
            for m in &sub_group_gens {
                m.apply(&x, &mut y);
                if orbit.insert(self.index_of(&y)) {
                    stack.push(y.clone());
                }
            }
        }
        let index = crate::algroup::size_of(self.field().q(), self.algebra().dim() - h.dim());
        Ok(orbit == sigma && sigma.len() as u128 == index)
    }
}
