//! Finite groups given by Cayley tables, permutation generators or
//! power-commutator presentations, with conjugacy classes, class power maps and
//! commutator subgroups.

mod io;
pub mod library;
mod pc;

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};

pub use io::{parse_group_file, write_pc_file, GroupFile};
pub use pc::{PcPresentation, COLLECTION_STEP_LIMIT};

/// Groups up to this order get exhaustive associativity checks.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 256;

#[derive(Clone, Debug)]
enum Multiplication {
    Table(Vec<u32>),
    Perm {
        perms: Vec<Vec<u32>>,
        lookup: HashMap<Vec<u32>, u32>,
    },
    Pc(PcPresentation),
    Quotient {
        parent: Box<FiniteGroupTable>,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
}

/// A finite group with elements numbered `0..order`.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    identity: u32,
    mult: Multiplication,
    inverse: Vec<u32>,
    generators: Vec<u32>,
}

/// Conjugacy classes; classes are numbered by increasing least element, which
/// is also the representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub class_of: Vec<u32>,
    pub representatives: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ClassData {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Builds class data from an arbitrary orbit labelling, renumbering classes by least member.
    pub(crate) fn from_labels(labels: &[u32]) -> ClassData {
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (x, &l) in labels.iter().enumerate() {
            let id = *renumber.entry(l).or_insert_with(|| {
                representatives.push(x as u32);
                sizes.push(0);
                (representatives.len() - 1) as u32
            });
            sizes[id as usize] += 1;
            class_of.push(id);
        }
        ClassData {
            class_of,
            representatives,
            sizes,
        }
    }
}

impl FiniteGroupTable {
    pub fn from_cayley_table(rows: Vec<Vec<u32>>) -> Result<FiniteGroupTable> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::validation("empty Cayley table"));
        }
        let mut table = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::validation(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            let mut seen = vec![false; m];
            for &x in row {
                if x as usize >= m || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::validation(format!("row {i} is not a permutation of 0..{m}")));
                }
            }
            table.extend_from_slice(row);
        }
        for j in 0..m {
            let mut seen = vec![false; m];
            for i in 0..m {
                if std::mem::replace(&mut seen[table[i * m + j] as usize], true) {
                    return Err(Error::validation(format!("column {j} repeats an entry")));
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| table[e * m + x] == x as u32 && table[x * m + e] == x as u32))
            .ok_or_else(|| Error::validation("table has no two-sided identity"))? as u32;
        let mut inverse = vec![0u32; m];
        for x in 0..m {
            let y = (0..m)
                .find(|&y| table[x * m + y] == identity)
                .expect("latin square row contains the identity");
            if table[y * m + x] != identity {
                return Err(Error::validation(format!("element {x} has no two-sided inverse")));
            }
            inverse[x] = y as u32;
        }
        let at = |a: usize, b: usize| table[a * m + b] as usize;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                Err(Error::validation(format!(
                    "associativity fails on triple ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if m <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10 * m {
                check(rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))?;
            }
        }
        let mut g = FiniteGroupTable {
            order: m,
            identity,
            mult: Multiplication::Table(table),
            inverse,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of permutations of `0..degree`. Products compose left to right:
    /// `(x y)(i) = y(x(i))`. Elements are numbered in breadth-first order with
    /// each layer sorted lexicographically by image list.
    pub fn from_permutation_generators(gens: &[Vec<u32>], budgets: &Budgets) -> Result<FiniteGroupTable> {
        let degree = gens.first().map_or(0, |g| g.len());
        for (k, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter().any(|&x| x as usize >= degree || std::mem::replace(&mut seen[x as usize], true))
            {
                return Err(Error::validation(format!("generator {k} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |x: &[u32], y: &[u32]| -> Vec<u32> { x.iter().map(|&i| y[i as usize]).collect() };
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0u32)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for &x in &layer {
                for g in gens {
                    let y = compose(&perms[x], g);
                    if !lookup.contains_key(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort();
            next.dedup();
            layer.clear();
            for y in next {
                if perms.len() as u64 >= budgets.closure {
                    return Err(Error::budget(
                        "closure",
                        budgets.closure,
                        format!("permutation closure reached {} elements and is still growing", perms.len()),
                    ));
                }
                lookup.insert(y.clone(), perms.len() as u32);
                layer.push(perms.len());
                perms.push(y);
            }
        }
        let order = perms.len();
        let inverse = perms
            .iter()
            .map(|x| {
                let mut inv = vec![0u32; degree];
                for (i, &xi) in x.iter().enumerate() {
                    inv[xi as usize] = i as u32;
                }
                lookup[&inv]
            })
            .collect();
        let generators = gens.iter().map(|g| lookup[g]).filter(|&x| x != 0).collect();
        let g = FiniteGroupTable {
            order,
            identity: 0,
            mult: Multiplication::Perm { perms, lookup },
            inverse,
            generators,
        };
        Ok(g.materialize(budgets))
    }

    pub fn from_power_commutator(pres: PcPresentation, budgets: &Budgets) -> Result<FiniteGroupTable> {
        let n = pres.generator_count();
        Budgets::check("pc_generators", budgets.pc_generators, n as u128)?;
        let order128 = (pres.p() as u128).pow(n as u32);
        Budgets::check("closure", budgets.closure, order128)?;
        let order = order128 as usize;
        let inverse = (0..order)
            .map(|x| Ok(pres.index_of(&pres.inverse(&pres.normal_form(x))?) as u32))
            .collect::<Result<Vec<u32>>>()?;
        let generators = (0..n).map(|i| pres.index_of(&pres.generator(i)) as u32).collect();
        let g = FiniteGroupTable {
            order,
            identity: 0,
            mult: Multiplication::Pc(pres),
            inverse,
            generators,
        };
        Ok(g.materialize(budgets))
    }

    /// Replaces the multiplication oracle by a dense table when the order fits the table budget.
    fn materialize(self, budgets: &Budgets) -> FiniteGroupTable {
        if matches!(self.mult, Multiplication::Table(_)) || self.order as u64 > budgets.table {
            return self;
        }
        let m = self.order;
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m as u32 {
            for b in 0..m as u32 {
                table.push(self.mul(a, b));
            }
        }
        FiniteGroupTable {
            mult: Multiplication::Table(table),
            ..self
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn pc_presentation(&self) -> Option<&PcPresentation> {
        match &self.mult {
            Multiplication::Pc(p) => Some(p),
            _ => None,
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mult {
            Multiplication::Table(t) => t[a as usize * self.order + b as usize],
            Multiplication::Perm { perms, lookup } => {
                let y = &perms[b as usize];
                let prod: Vec<u32> = perms[a as usize].iter().map(|&i| y[i as usize]).collect();
                lookup[&prod]
            }
            Multiplication::Pc(pres) => {
                let prod = pres
                    .multiply(&pres.normal_form(a as usize), &pres.normal_form(b as usize))
                    .expect("collection in a consistent presentation terminates");
                pres.index_of(&prod) as u32
            }
            Multiplication::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul(reps[a as usize], reps[b as usize]) as usize],
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = self.identity;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    /// The prime `p` when the order is a nontrivial power of `p`.
    pub fn p_group_prime(&self) -> Option<u32> {
        let factors = crate::ffield::prime_factors(self.order as u64);
        (factors.len() == 1).then(|| factors[0] as u32)
    }

    /// True when `|G|` is a power of `p` (including `p^0`).
    pub fn is_p_group_for(&self, p: u32) -> bool {
        let mut m = self.order;
        while m % p as usize == 0 {
            m /= p as usize;
        }
        m == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: u32) -> bool {
        self.generators.iter().all(|&g| self.mul(g, z) == self.mul(z, g))
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut closure = SubgroupClosure::new(self);
        for x in self.elements() {
            if !closure.contains(x) {
                gens.push(x);
                closure.add_generator(self, x);
            }
        }
        gens
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut closure = SubgroupClosure::new(self);
        for &g in gens {
            if !closure.contains(g) {
                closure.add_generator(self, g);
            }
        }
        closure.elements()
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut closure = SubgroupClosure::new(self);
        let mut pending: VecDeque<u32> = gens.iter().copied().collect();
        let mut sub_gens = Vec::new();
        while let Some(x) = pending.pop_front() {
            if closure.contains(x) {
                continue;
            }
            closure.add_generator(self, x);
            sub_gens.push(x);
            for &g in &self.generators {
                pending.push_back(self.conj(x, g));
            }
        }
        closure.elements()
    }

    pub fn conjugacy_classes(&self, budgets: &Budgets) -> Result<ClassData> {
        Budgets::check("classes", budgets.classes, self.order as u128)?;
        let m = self.order;
        let gens: Vec<(u32, u32)> = self.generators.iter().map(|&g| (g, self.inv(g))).collect();
        let mut label = vec![u32::MAX; m];
        let mut next = 0u32;
        let mut queue = Vec::new();
        for x in 0..m as u32 {
            if label[x as usize] != u32::MAX {
                continue;
            }
            label[x as usize] = next;
            queue.push(x);
            while let Some(y) = queue.pop() {
                for &(g, gi) in &gens {
                    let z = self.mul(self.mul(gi, y), g);
                    if label[z as usize] == u32::MAX {
                        label[z as usize] = next;
                        queue.push(z);
                    }
                }
            }
            next += 1;
        }
        Ok(ClassData::from_labels(&label))
    }

    /// Class of `r^p` for each class representative `r`.
    pub fn class_power_map(&self, classes: &ClassData, p: u32) -> Result<Vec<u32>> {
        let map: Vec<u32> = classes
            .representatives
            .iter()
            .map(|&r| classes.class_of[self.pow(r, p as u64) as usize])
            .collect();
        if self.order <= 1 << 12 {
            for x in self.elements() {
                let c = classes.class_of[x as usize];
                if classes.class_of[self.pow(x, p as u64) as usize] != map[c as usize] {
                    return Err(Error::internal(format!(
                        "p-th power of element {x} left the image of its class"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn commutator_subgroup(&self, budgets: &Budgets) -> Result<Vec<u32>> {
        Budgets::check("closure", budgets.closure, self.order as u128)?;
        let mut comms = Vec::new();
        for (i, &a) in self.generators.iter().enumerate() {
            for &b in &self.generators[..i] {
                comms.push(self.commutator(a, b));
            }
        }
        Ok(self.normal_closure(&comms))
    }

    pub fn abelianization_order(&self, budgets: &Budgets) -> Result<usize> {
        Ok(self.order / self.commutator_subgroup(budgets)?.len())
    }

    /// `G / <z>` for a central element `z`, with cosets numbered by least member.
    pub fn quotient_by_central(&self, z: u32) -> Result<FiniteGroupTable> {
        if z as usize >= self.order {
            return Err(Error::validation(format!("element {z} out of range")));
        }
        if !self.is_central(z) {
            return Err(Error::domain(format!("element {z} is not central")));
        }
        let mut powers = vec![self.identity];
        let mut y = z;
        while y != self.identity {
            powers.push(y);
            y = self.mul(y, z);
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &w in &powers {
                coset_of[self.mul(x, w) as usize] = id;
            }
        }
        let inverse = reps.iter().map(|&r| coset_of[self.inv(r) as usize]).collect();
        let identity = coset_of[self.identity as usize];
        let mut generators: Vec<u32> = self
            .generators
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&g| g != identity)
            .collect();
        generators.dedup();
        Ok(FiniteGroupTable {
            order: reps.len(),
            identity,
            mult: Multiplication::Quotient {
                parent: Box::new(self.clone()),
                reps,
                coset_of,
            },
            inverse,
            generators,
        })
    }

    /// `G × H` as a dense table; element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroupTable) -> Result<FiniteGroupTable> {
        let (m, n) = (self.order, other.order);
        let rows = (0..m * n)
            .map(|a| {
                (0..m * n)
                    .map(|b| {
                        let g = self.mul((a / n) as u32, (b / n) as u32);
                        let h = other.mul((a % n) as u32, (b % n) as u32);
                        g * n as u32 + h
                    })
                    .collect()
            })
            .collect();
        FiniteGroupTable::from_cayley_table(rows)
    }

    /// Dense Cayley table rows (only sensible for small groups).
    pub fn cayley_rows(&self) -> Vec<Vec<u32>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Incremental subgroup closure: a set closed under right multiplication by
/// every generator added so far.
struct SubgroupClosure {
    member: Vec<bool>,
    list: Vec<u32>,
    gens: Vec<u32>,
}

impl SubgroupClosure {
    fn new(g: &FiniteGroupTable) -> Self {
        let mut member = vec![false; g.order];
        member[g.identity as usize] = true;
        SubgroupClosure {
            member,
            list: vec![g.identity],
            gens: Vec::new(),
        }
    }

    fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    fn add_generator(&mut self, g: &FiniteGroupTable, x: u32) {
        self.gens.push(x);
        let mut frontier = Vec::new();
        for i in 0..self.list.len() {
            let y = g.mul(self.list[i], x);
            if !self.member[y as usize] {
                self.member[y as usize] = true;
                self.list.push(y);
                frontier.push(y);
            }
        }
        while let Some(y) = frontier.pop() {
            for &s in &self.gens {
                let z = g.mul(y, s);
                if !self.member[z as usize] {
                    self.member[z as usize] = true;
                    self.list.push(z);
                    frontier.push(z);
                }
            }
        }
    }

    fn elements(mut self) -> Vec<u32> {
        self.list.sort_unstable();
        self.list
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;

    fn b() -> Budgets {
        Budgets::default()
    }

    /// Brute-force class count: number of distinct sets {g^-1 x g : g in G}.
    fn brute_force_k(g: &FiniteGroupTable) -> usize {
        let mut seen = std::collections::HashSet::new();
        for x in g.elements() {
            let mut class: Vec<u32> = g.elements().map(|h| g.conj(x, h)).collect();
            class.sort();
            class.dedup();
            seen.insert(class);
        }
        seen.len()
    }

    #[test]
    fn small_cayley_tables() {
        let c2 = FiniteGroupTable::from_cayley_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        let s3 = symmetric3(&b()).unwrap();
        let s3t = FiniteGroupTable::from_cayley_table(s3.cayley_rows()).unwrap();
        assert_eq!(s3t.order(), 6);
        assert_eq!(s3t.conjugacy_classes(&b()).unwrap().count(), 3);
        assert_eq!(brute_force_k(&s3t), 3);
    }

    #[test]
    fn broken_associativity_names_triple() {
        // Latin square with identity 0 that is not associative (the loop of order 5).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroupTable::from_cayley_table(rows).unwrap_err();
        assert!(err.to_string().contains("triple"), "{err}");
    }

    #[test]
    fn d8_and_q8_invariants() {
        let d8 = dihedral8(&b()).unwrap();
        assert_eq!(d8.order(), 8);
        let cl = d8.conjugacy_classes(&b()).unwrap();
        assert_eq!(cl.count(), 5);
        assert_eq!(brute_force_k(&d8), 5);
        let q8 = quaternion8(&b()).unwrap();
        assert_eq!(q8.commutator_subgroup(&b()).unwrap().len(), 2);
        assert_eq!(q8.abelianization_order(&b()).unwrap(), 4);
        let s3 = symmetric3(&b()).unwrap();
        assert_eq!(s3.commutator_subgroup(&b()).unwrap().len(), 3);
    }

    #[test]
    fn class_sizes_divide_order() {
        for (_, g) in corpus_groups(&b()).unwrap() {
            let cl = g.conjugacy_classes(&b()).unwrap();
            assert_eq!(cl.sizes.iter().sum::<usize>(), g.order());
            assert!(cl.sizes.iter().all(|s| g.order() % s == 0));
            for (c, &r) in cl.representatives.iter().enumerate() {
                assert_eq!(cl.class_of[r as usize], c as u32);
            }
        }
    }

    #[test]
    fn class_counts_match_brute_force_on_small_groups() {
        for (name, g) in corpus_groups(&b()).unwrap() {
            if g.order() > 32 {
                continue;
            }
            let k = g.conjugacy_classes(&b()).unwrap().count();
            assert_eq!(k, brute_force_k(&g), "{name}");
        }
    }

    #[test]
    fn power_maps() {
        let c4 = cyclic(4).unwrap();
        let cl = c4.conjugacy_classes(&b()).unwrap();
        let map = c4.class_power_map(&cl, 2).unwrap();
        // elements 0,1,2,3 with x -> 2x mod 4
        assert_eq!(map, vec![0, 2, 0, 2]);
        let q8 = quaternion8(&b()).unwrap();
        let cl = q8.conjugacy_classes(&b()).unwrap();
        let map = q8.class_power_map(&cl, 2).unwrap();
        let minus_one = (0..cl.count())
            .find(|&c| cl.sizes[c] == 1 && cl.representatives[c] != q8.identity())
            .unwrap();
        for c in 0..cl.count() {
            if cl.sizes[c] == 2 {
                assert_eq!(map[c] as usize, minus_one);
            }
        }
    }

    #[test]
    fn class_number_is_multiplicative() {
        let pairs = [
            (cyclic(3).unwrap(), symmetric3(&b()).unwrap()),
            (dihedral8(&b()).unwrap(), cyclic(2).unwrap()),
            (quaternion8(&b()).unwrap(), symmetric3(&b()).unwrap()),
        ];
        for (g, h) in pairs {
            let gh = g.direct_product(&h).unwrap();
            let k = |x: &FiniteGroupTable| x.conjugacy_classes(&b()).unwrap().count();
            assert_eq!(k(&gh), k(&g) * k(&h));
        }
    }

    #[test]
    fn pc_normal_forms_are_unique() {
        for (name, g) in corpus_groups(&b()).unwrap() {
            let Some(pres) = g.pc_presentation().cloned().or_else(|| None) else {
                continue;
            };
            let n = pres.generator_count();
            assert_eq!(g.order(), (pres.p() as usize).pow(n as u32), "{name}");
            let mut seen = std::collections::HashSet::new();
            for x in 0..g.order() {
                assert!(seen.insert(pres.normal_form(x)));
            }
        }
    }

    #[test]
    fn disproof_group_and_quotient() {
        let pi = disproof_group(2, &b()).unwrap();
        assert_eq!(pi.order(), 1024);
        let z = disproof_central_element(&pi);
        assert!(pi.is_central(z));
        let quo = pi.quotient_by_central(z).unwrap();
        assert_eq!(quo.order(), 512);
        let k = pi.conjugacy_classes(&b()).unwrap().count();
        let kq = quo.conjugacy_classes(&b()).unwrap().count();
        assert_eq!(k, 2 * kq);
    }

    #[test]
    fn permutation_closure_budget() {
        let mut small = b();
        small.closure = 10;
        let cycle: Vec<u32> = vec![1, 2, 3, 4, 0];
        let swap: Vec<u32> = vec![1, 0, 2, 3, 4];
        let err = FiniteGroupTable::from_permutation_generators(&[cycle, swap], &small).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("closure"));
    }

    #[test]
    fn non_central_quotient_rejected() {
        let s3 = symmetric3(&b()).unwrap();
        let x = s3.generators()[0];
        assert!(matches!(s3.quotient_by_central(x), Err(Error::Domain(_))));
    }
}
