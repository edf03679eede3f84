//! The algebra group `1 + J` of a nilpotent algebra, with elements `1 + x`
//! stored as the coordinate vector of `x`.

use std::collections::VecDeque;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::fp::{from_fp, pack, to_fp, unpack, FpMatrix};
use crate::grouptab::ClassData;
use crate::nilalg::{AlgVector, NilAlgebra};

#[derive(Clone, Debug)]
pub struct AlgebraGroup {
    alg: NilAlgebra,
    generators: Vec<AlgVector>,
}

/// `q^d` as `u128`, saturating.
pub(crate) fn size_of(q: u32, d: usize) -> u128 {
    (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
}

impl AlgebraGroup {
    /// Generators are `1 + t^s v` for `v` in a flag-adapted basis and `t^s` in the
    /// standard `F_p`-basis of `F_q`; they generate because they span every
    /// layer of a central series `1 + J_i`.
    pub fn new(alg: NilAlgebra) -> AlgebraGroup {
        let field = alg.field().clone();
        let generators = alg
            .flag_adapted_basis()
            .into_iter()
            .flat_map(|v| {
                let f = field.clone();
                (0..field.e() as usize).map(move |s| v.iter().map(|&c| f.mul(f.basis_element(s), c)).collect())
            })
            .collect();
        AlgebraGroup { alg, generators }
    }

    pub fn algebra(&self) -> &NilAlgebra {
        &self.alg
    }

    pub fn generators(&self) -> &[AlgVector] {
        &self.generators
    }

    /// `|1 + J| = q^d`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        size_of(self.alg.field().q(), self.alg.dim())
    }

    pub fn identity(&self) -> AlgVector {
        self.alg.zero()
    }

    /// `(1 + x)(1 + y) = 1 + (x + y + xy)`.
    pub fn gmul(&self, x: &[FieldElement], y: &[FieldElement]) -> AlgVector {
        self.alg.add(&self.alg.add(x, y), &self.alg.mul(x, y))
    }

    /// `(1 + x)^{-1} = 1 + sum_{k >= 1} (-x)^k`.
    pub fn ginv(&self, x: &[FieldElement]) -> AlgVector {
        let f = self.alg.field();
        let minus_x = self.alg.scale(f.neg(f.one()), x);
        let mut acc = self.alg.zero();
        let mut term = minus_x.clone();
        for _ in 1..self.alg.class() {
            acc = self.alg.add(&acc, &term);
            term = self.alg.mul(&term, &minus_x);
        }
        acc
    }

    pub fn gpow(&self, x: &[FieldElement], mut k: u64) -> AlgVector {
        let mut acc = self.identity();
        let mut base = x.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.gmul(&acc, &base);
            }
            base = self.gmul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conj(&self, x: &[FieldElement], g: &[FieldElement]) -> AlgVector {
        self.gmul(&self.gmul(&self.ginv(g), x), g)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: &[FieldElement], y: &[FieldElement]) -> AlgVector {
        self.gmul(&self.gmul(&self.ginv(x), &self.ginv(y)), &self.gmul(x, y))
    }

    fn require_p_nilpotent(&self) -> Result<()> {
        if !self.alg.is_p_nilpotent() {
            return Err(Error::domain(format!(
                "exp and log need J^p = 0, but the algebra has class {} > p = {}",
                self.alg.class(),
                self.alg.field().p()
            )));
        }
        Ok(())
    }

    /// `exp(x) = sum_{k < n} x^k / k!`, returned as the `x`-part of `1 + x`.
    pub fn gexp(&self, x: &[FieldElement]) -> Result<AlgVector> {
        self.require_p_nilpotent()?;
        let f = self.alg.field();
        let mut acc = self.alg.zero();
        let mut term = x.to_vec();
        for k in 1..self.alg.class() {
            acc = self.alg.add(&acc, &term);
            if k + 1 < self.alg.class() {
                term = self.alg.scale(f.inv(f.from_int(k as i64 + 1))?, &self.alg.mul(&term, x));
            }
        }
        Ok(acc)
    }

    /// `log(1 + x) = sum_{k < n} (-1)^{k+1} x^k / k`.
    pub fn glog(&self, x: &[FieldElement]) -> Result<AlgVector> {
        self.require_p_nilpotent()?;
        let f = self.alg.field();
        let mut acc = self.alg.zero();
        let mut power = x.to_vec();
        for k in 1..self.alg.class() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = f.div(f.from_int(sign), f.from_int(k as i64))?;
            acc = self.alg.add(&acc, &self.alg.scale(c, &power));
            power = self.alg.mul(&power, x);
        }
        Ok(acc)
    }

    /// Packed index `sum_i code(x_i) q^i`.
    pub fn index_of(&self, x: &[FieldElement]) -> u64 {
        pack(self.alg.field().p(), &to_fp(self.alg.field(), x))
    }

    pub fn element(&self, index: u64) -> AlgVector {
        let f = self.alg.field();
        let mut digits = vec![0; self.fp_dim()];
        unpack(f.p(), index, &mut digits);
        from_fp(f, &digits)
    }

    /// `F_p`-dimension `e d` of `J`.
    pub fn fp_dim(&self) -> usize {
        self.alg.dim() * self.alg.field().e() as usize
    }

    fn enumerable(&self, budget: &'static str, limit: u64) -> Result<u64> {
        Budgets::check(budget, limit, self.order())?;
        Ok(self.order() as u64)
    }

    /// All elements in packed-index (odometer) order.
    pub fn enumerate_elements(&self, budgets: &Budgets) -> Result<impl Iterator<Item = AlgVector> + '_> {
        let n = self.enumerable("enumeration", budgets.enumeration)?;
        Ok((0..n).map(move |i| self.element(i)))
    }

    /// Matrix over `F_p` of the linear map `u -> g^{-1} u g` on `J` (`g` given as `1 + g`).
    pub fn conjugation_matrix(&self, g: &[FieldElement]) -> FpMatrix {
        let f = self.alg.field();
        let gi = self.ginv(g);
        let one_plus = |a: &[FieldElement], u: &[FieldElement]| self.alg.add(u, &self.alg.mul(a, u));
        let columns: Vec<Vec<u32>> = (0..self.fp_dim())
            .map(|k| {
                let mut digits = vec![0; self.fp_dim()];
                digits[k] = 1;
                let u = from_fp(f, &digits);
                // (1 + gi) u (1 + g)
                let left = one_plus(&gi, &u);
                let both = self.alg.add(&left, &self.alg.mul(&left, g));
                to_fp(f, &both)
            })
            .collect();
        FpMatrix::from_columns(f.p(), self.fp_dim(), &columns)
    }

    /// Conjugacy classes of `1 + J` over packed indices.
    pub fn conjugacy_classes(&self, budgets: &Budgets) -> Result<ClassData> {
        let n = self.enumerable("enumeration", budgets.enumeration)? as usize;
        let p = self.alg.field().p();
        let maps: Vec<FpMatrix> = self.generators.iter().map(|g| self.conjugation_matrix(g)).collect();
        let m = self.fp_dim();
        let mut label = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut stack = Vec::new();
        let (mut x, mut y) = (vec![0u32; m], vec![0u32; m]);
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start as u64);
            while let Some(idx) = stack.pop() {
                unpack(p, idx, &mut x);
                for map in &maps {
                    map.apply(&x, &mut y);
                    let j = pack(p, &y) as usize;
                    if label[j] == u32::MAX {
                        label[j] = next;
                        stack.push(j as u64);
                    }
                }
            }
            next += 1;
        }
        Ok(ClassData::from_labels(&label))
    }

    pub fn class_count(&self, budgets: &Budgets) -> Result<usize> {
        Ok(self.conjugacy_classes(budgets)?.count())
    }

    /// Derived subgroup as sorted packed indices: the normal closure of the
    /// commutators of generator pairs.
    pub fn commutator_subgroup(&self, budgets: &Budgets) -> Result<Vec<u64>> {
        let n = self.enumerable("closure", budgets.closure)? as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut list: Vec<u64> = vec![0];
        let mut sub_gens: Vec<AlgVector> = Vec::new();
        let mut pending: VecDeque<AlgVector> = VecDeque::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[..i] {
                pending.push_back(self.commutator(a, b));
            }
        }
        while let Some(c) = pending.pop_front() {
            if member[self.index_of(&c) as usize] {
                continue;
            }
            sub_gens.push(c.clone());
            // extend the closure under right multiplication by every subgroup generator
            let mut frontier = Vec::new();
            for i in 0..list.len() {
                let y = self.gmul(&self.element(list[i]), &c);
                let j = self.index_of(&y);
                if !member[j as usize] {
                    member[j as usize] = true;
                    list.push(j);
                    frontier.push(y);
                }
            }
            while let Some(y) = frontier.pop() {
                for s in &sub_gens {
                    let z = self.gmul(&y, s);
                    let j = self.index_of(&z);
                    if !member[j as usize] {
                        member[j as usize] = true;
                        list.push(j);
                        frontier.push(z);
                    }
                }
            }
            for g in &self.generators {
                pending.push_back(self.conj(&c, g));
            }
        }
        list.sort_unstable();
        Ok(list)
    }

    pub fn abelianization_order(&self, budgets: &Budgets) -> Result<u64> {
        let derived = self.commutator_subgroup(budgets)?;
        Ok(self.order() as u64 / derived.len() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::grouptab::{library, FiniteGroupTable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b() -> Budgets {
        Budgets::default()
    }

    fn random(g: &AlgebraGroup, rng: &mut ChaCha8Rng) -> AlgVector {
        let q = g.algebra().field().q();
        (0..g.algebra().dim())
            .map(|_| g.algebra().field().element(rng.gen_range(0..q)).unwrap())
            .collect()
    }

    fn unitriangular(n: usize, p: u32, e: u32) -> AlgebraGroup {
        AlgebraGroup::new(NilAlgebra::make_unitriangular(n, &Field::new(p, e).unwrap(), &b()).unwrap())
    }

    /// Cayley table of `1 + J` built from `gmul`, as an independent group for cross-checks.
    fn as_table(g: &AlgebraGroup) -> FiniteGroupTable {
        let n = g.order() as u64;
        let rows = (0..n)
            .map(|a| {
                let x = g.element(a);
                (0..n).map(|c| g.index_of(&g.gmul(&x, &g.element(c))) as u32).collect()
            })
            .collect();
        FiniteGroupTable::from_cayley_table(rows).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let g = unitriangular(3, 2, 1);
        let (e12, e23, e13) = (
            g.algebra().basis_vector(0),
            g.algebra().basis_vector(1),
            g.algebra().basis_vector(2),
        );
        let expect = g.algebra().add(&g.algebra().add(&e12, &e23), &e13);
        assert_eq!(g.gmul(&e12, &e23), expect);
        assert_eq!(g.gmul(&e12, &g.identity()), e12);
        assert_eq!(g.gmul(&expect, &g.ginv(&expect)), g.identity());
        assert_eq!(g.ginv(&g.identity()), g.identity());
    }

    #[test]
    fn inverse_in_group_algebra_of_c3() {
        let f = Field::prime(3).unwrap();
        let c3 = library::cyclic(3).unwrap();
        let g = AlgebraGroup::new(NilAlgebra::make_augmentation_ideal(&c3, &f, &b()).unwrap());
        // basis g-1, g^2-1; (1 + (g-1))^{-1} = g^2 = 1 + (g^2 - 1)
        assert_eq!(g.ginv(&g.algebra().basis_vector(0)), g.algebra().basis_vector(1));
    }

    #[test]
    fn square_zero_inverse_is_negation() {
        let f = Field::new(5, 2).unwrap();
        let g = AlgebraGroup::new(NilAlgebra::zero_product(&f, 2, &b()).unwrap());
        let x = vec![f.element(7).unwrap(), f.element(3).unwrap()];
        assert_eq!(g.ginv(&x), g.algebra().scale(f.neg(f.one()), &x));
        assert_eq!(g.gexp(&x).unwrap(), x);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(unitriangular(3, 2, 1).class_count(&b()).unwrap(), 5);
        assert_eq!(unitriangular(3, 3, 1).class_count(&b()).unwrap(), 11);
        assert_eq!(unitriangular(3, 2, 2).class_count(&b()).unwrap(), 4 * 4 + 4 - 1);
        let f = Field::new(3, 2).unwrap();
        let trunc = AlgebraGroup::new(NilAlgebra::truncated_polynomial(&f, 3, &b()).unwrap());
        assert_eq!(trunc.class_count(&b()).unwrap(), 729);
        assert_eq!(trunc.abelianization_order(&b()).unwrap(), 729);
    }

    #[test]
    fn generators_generate_the_whole_group() {
        // commutative, J^2 = span(xy) with x^2 = y^2 = 0 over F_3: elementary abelian of order 27
        let f = Field::prime(3).unwrap();
        let one = f.one();
        let alg = NilAlgebra::from_structure_constants(&f, 3, &[(0, 1, 2, one), (1, 0, 2, one)], &b()).unwrap();
        let g = AlgebraGroup::new(alg);
        let table = as_table(&g);
        let gens: Vec<u32> = g.generators().iter().map(|x| g.index_of(x) as u32).collect();
        assert_eq!(table.subgroup(&gens).len(), 27);
        let f4 = Field::new(2, 2).unwrap();
        let g4 = AlgebraGroup::new(NilAlgebra::zero_product(&f4, 1, &b()).unwrap());
        assert_eq!(g4.generators().len(), 2);
        let t4 = as_table(&g4);
        let gens: Vec<u32> = g4.generators().iter().map(|x| g4.index_of(x) as u32).collect();
        assert_eq!(t4.subgroup(&gens).len(), 4);
    }

    #[test]
    fn closure_and_classes_agree_with_cayley_table() {
        let algebras = [
            NilAlgebra::make_unitriangular(3, &Field::new(2, 2).unwrap(), &b()).unwrap(),
            NilAlgebra::make_unitriangular(4, &Field::prime(2).unwrap(), &b()).unwrap(),
            NilAlgebra::make_augmentation_ideal(&library::dihedral8(&b()).unwrap(), &Field::prime(2).unwrap(), &b()).unwrap(),
            NilAlgebra::make_augmentation_ideal(&library::cyclic(9).unwrap(), &Field::prime(3).unwrap(), &b()).unwrap(),
        ];
        for alg in algebras {
            let g = AlgebraGroup::new(alg);
            if g.order() > 256 {
                continue;
            }
            let t = as_table(&g);
            assert_eq!(g.class_count(&b()).unwrap(), t.conjugacy_classes(&b()).unwrap().count());
            let derived: Vec<u64> = t.commutator_subgroup(&b()).unwrap().into_iter().map(u64::from).collect();
            assert_eq!(g.commutator_subgroup(&b()).unwrap(), derived);
        }
    }

    #[test]
    fn abelianization_examples() {
        let f2 = Field::prime(2).unwrap();
        let d8 = library::dihedral8(&b()).unwrap();
        let g = AlgebraGroup::new(NilAlgebra::make_augmentation_ideal(&d8, &f2, &b()).unwrap());
        assert_eq!(g.abelianization_order(&b()).unwrap(), 16);
        assert_eq!(unitriangular(3, 2, 1).abelianization_order(&b()).unwrap(), 4);
        let c4 = AlgebraGroup::new(NilAlgebra::zero_product(&Field::new(2, 2).unwrap(), 3, &b()).unwrap());
        assert_eq!(c4.abelianization_order(&b()).unwrap(), 64);
    }

    #[test]
    fn exp_log_round_trip_u3_f5() {
        let g = unitriangular(3, 5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = random(&g, &mut rng);
            assert_eq!(g.glog(&g.gexp(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn exp_log_exhaustive_bijection() {
        for g in [unitriangular(3, 3, 1), unitriangular(3, 5, 1), unitriangular(2, 3, 2)] {
            let mut seen = std::collections::HashSet::new();
            for x in g.enumerate_elements(&b()).unwrap() {
                let e = g.gexp(&x).unwrap();
                assert_eq!(g.glog(&e).unwrap(), x);
                assert!(seen.insert(g.index_of(&e)));
            }
        }
    }

    #[test]
    fn exp_is_conjugation_equivariant() {
        let g = unitriangular(4, 5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (x, h) = (random(&g, &mut rng), random(&g, &mut rng));
            let a = g.algebra();
            let left = a.add(&x, &a.mul(&g.ginv(&h), &x));
            let conj_x = a.add(&left, &a.mul(&left, &h));
            assert_eq!(g.conj(&g.gexp(&x).unwrap(), &h), g.gexp(&conj_x).unwrap());
        }
    }

    #[test]
    fn exp_requires_p_nilpotence() {
        let g = unitriangular(3, 2, 1);
        assert!(matches!(g.gexp(&g.identity()), Err(Error::Domain(_))));
        assert!(matches!(g.glog(&g.identity()), Err(Error::Domain(_))));
    }

    #[test]
    fn baker_campbell_hausdorff_to_degree_three() {
        // J^4 = 0 in both algebras, so the series truncates exactly after the cubic terms.
        for g in [unitriangular(3, 5, 1), unitriangular(4, 5, 1), unitriangular(4, 7, 1)] {
            let a = g.algebra();
            let f = a.field();
            let half = f.inv(f.from_int(2)).unwrap();
            let twelfth = f.inv(f.from_int(12)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..100 {
                let (x, y) = (random(&g, &mut rng), random(&g, &mut rng));
                let xy = a.bracket(&x, &y);
                let cubic = a.add(&a.bracket(&x, &xy), &a.bracket(&y, &a.bracket(&y, &x)));
                let z = a.add(&a.add(&a.add(&x, &y), &a.scale(half, &xy)), &a.scale(twelfth, &cubic));
                assert_eq!(g.gmul(&g.gexp(&x).unwrap(), &g.gexp(&y).unwrap()), g.gexp(&z).unwrap());
            }
        }
    }

    #[test]
    fn gmul_associative_on_samples() {
        let g = AlgebraGroup::new(
            NilAlgebra::make_augmentation_ideal(&library::named_group("Q16", &b()).unwrap(), &Field::prime(2).unwrap(), &b())
                .unwrap(),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let (x, y, z) = (random(&g, &mut rng), random(&g, &mut rng), random(&g, &mut rng));
            assert_eq!(g.gmul(&g.gmul(&x, &y), &z), g.gmul(&x, &g.gmul(&y, &z)));
        }
    }
}
