//! Orbit-method characters `chi(exp j) = |Omega|^{-1/2} sum_{mu in Omega} zeta^{mu(j)}`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Coadjoint, CyclotomicValue, OrbitCensus};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::fp::to_fp;
use crate::grouptab::ClassData;
use crate::nilalg::AlgVector;

/// A character stored as `counts[c][k] / degree`, the value on class `c`
/// being `sum_k counts[c][k] zeta^k / degree`.
#[derive(Clone, Debug)]
pub struct Character {
    pub orbit: usize,
    pub degree: u64,
    counts: Vec<Vec<i64>>,
}

impl Character {
    pub fn value(&self, class: usize) -> CyclotomicValue {
        let p = self.counts[class].len() as u32;
        CyclotomicValue::from_counts(p, &self.counts[class], self.degree)
    }
}

/// Characters of `1 + J` indexed by its conjugacy classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub p: u32,
    pub group_order: u64,
    /// Classes over packed group indices.
    pub classes: ClassData,
    pub characters: Vec<Character>,
}

impl CharacterTable {
    /// Hermitian inner product `|G|^{-1} sum_g chi_a(g) conj(chi_b(g))`.
    pub fn inner_product(&self, a: usize, b: usize) -> CyclotomicValue {
        let p = self.p as usize;
        let (ca, cb) = (&self.characters[a], &self.characters[b]);
        let mut acc = vec![0i128; p];
        for (c, &size) in self.classes.sizes.iter().enumerate() {
            for (k, &x) in ca.counts[c].iter().enumerate().filter(|(_, x)| **x != 0) {
                for (l, &y) in cb.counts[c].iter().enumerate().filter(|(_, y)| **y != 0) {
                    acc[(k + p - l) % p] += size as i128 * x as i128 * y as i128;
                }
            }
        }
        let acc: Vec<BigInt> = acc.into_iter().map(BigInt::from).collect();
        let den = BigInt::from(self.group_order) * BigInt::from(ca.degree) * BigInt::from(cb.degree);
        CyclotomicValue::from_counts(self.p, &acc, den)
    }

    /// Every pair has inner product `delta_ab`.
    pub fn orthonormality_check(&self) -> bool {
        let n = self.characters.len();
        (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                let v = self.inner_product(a, b);
                v == CyclotomicValue::integer(self.p, (a == b) as i64)
            })
        })
    }
}

impl Coadjoint {
    fn require_exp(&self) -> Result<()> {
        if !self.algebra().is_p_nilpotent() {
            return Err(Error::domain(format!(
                "orbit-method characters need J^p = 0, but the algebra has class {} > p = {}",
                self.algebra().class(),
                self.p()
            )));
        }
        Ok(())
    }

    /// `F_p` digits of `log(g)` for every group element `g`, by packed index.
    fn logs(&self, budgets: &Budgets) -> Result<Vec<Vec<u32>>> {
        self.require_exp()?;
        let g = self.group();
        Budgets::check("enumeration", budgets.enumeration, g.order())?;
        (0..g.order() as u64)
            .into_par_iter()
            .map(|i| Ok(to_fp(self.algebra().field(), &g.glog(&g.element(i))?)))
            .collect()
    }

    /// One character per coadjoint orbit, with values checked to be constant on classes.
    pub fn characters(&self, census: &OrbitCensus, budgets: &Budgets) -> Result<CharacterTable> {
        let logs = self.logs(budgets)?;
        let classes = self.group().conjugacy_classes(budgets)?;
        let p = self.p() as usize;
        let mut class_members = vec![Vec::new(); classes.count()];
        for (x, &c) in classes.class_of.iter().enumerate() {
            class_members[c as usize].push(x);
        }
        let members = census.members();
        let characters = members
            .par_iter()
            .enumerate()
            .map(|(o, orbit)| {
                let functionals: Vec<Vec<u32>> = orbit.iter().map(|&i| self.functional_from_index(i)).collect();
                let counts_at = |x: usize| {
                    let mut counts = vec![0i64; p];
                    for mu in &functionals {
                        counts[self.dot(mu, &logs[x]) as usize] += 1;
                    }
                    counts
                };
                let mut counts = Vec::with_capacity(class_members.len());
                for members in &class_members {
                    let first = counts_at(members[0]);
                    if let Some(&bad) = members[1..].iter().find(|&&x| counts_at(x) != first) {
                        return Err(Error::internal(format!(
                            "character of orbit {o} is not constant on the class of element {}",
                            bad
                        )));
                    }
                    counts.push(first);
                }
                Ok(Character {
                    orbit: o,
                    degree: census.records[o].fake_degree,
                    counts,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            p: self.p(),
            group_order: self.group().order() as u64,
            classes,
            characters,
        })
    }

    /// Induces `exp(h) -> zeta^{lambda(h)}` from `1 + H_lambda` and compares it,
    /// class by class, with the orbit-method character of `lambda`'s orbit.
    pub fn verify_induced(&self, lambda: &[u32], census: &OrbitCensus, table: &CharacterTable) -> Result<bool> {
        self.require_exp()?;
        let g = self.group();
        let h = self.max_isotropic_subalgebra(lambda)?;
        let h_order = crate::algroup::size_of(self.algebra().field().q(), h.dim());
        let orbit = census.orbit_of[self.index_of(lambda) as usize] as usize;
        let chi = &table.characters[orbit];
        let elements: Vec<(AlgVector, AlgVector)> = (0..g.order() as u64)
            .map(|i| {
                let x = g.element(i);
                let xi = g.ginv(&x);
                (x, xi)
            })
            .collect();
        let p = self.p() as usize;
        for (c, &rep) in table.classes.representatives.iter().enumerate() {
            let x = g.element(rep as u64);
            let mut counts = vec![0i64; p];
            for (y, yi) in &elements {
                let conj = g.gmul(&g.gmul(yi, &x), y);
                if h.contains(&conj) {
                    counts[self.evaluate(lambda, &g.glog(&conj)?) as usize] += 1;
                }
            }
            let induced = CyclotomicValue::from_counts(self.p(), &counts, BigInt::from(h_order));
            if induced != chi.value(c) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
