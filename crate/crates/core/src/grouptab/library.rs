//! A small library of named groups used by the verification corpus.
//!
//! Power-commutator presentations are written with 1-based generator lists:
//! `&[3, 4]` stands for the word `g3 g4` and `&[3, 3]` for `g3^2`.

use super::{FiniteGroupTable, PcPresentation};
use crate::budget::Budgets;
use crate::error::{Error, Result};

type Rel = (usize, &'static [usize]);
type CommRel = (usize, usize, &'static [usize]);

fn word(p: u32, n: usize, gens: &[usize]) -> Vec<u32> {
    let mut w = vec![0u32; n];
    for &g in gens {
        w[g - 1] = (w[g - 1] + 1) % p;
    }
    w
}

/// Presentation from 1-based relation lists.
pub fn presentation(p: u32, n: usize, pows: &[Rel], comms: &[CommRel]) -> Result<PcPresentation> {
    let pows: Vec<_> = pows.iter().map(|&(i, g)| (i - 1, word(p, n, g))).collect();
    let comms: Vec<_> = comms.iter().map(|&(j, i, g)| (j - 1, i - 1, word(p, n, g))).collect();
    PcPresentation::new(p, n, &pows, &comms)
}

struct Entry {
    name: &'static str,
    p: u32,
    n: usize,
    pows: &'static [Rel],
    comms: &'static [CommRel],
}

const fn entry(name: &'static str, p: u32, n: usize, pows: &'static [Rel], comms: &'static [CommRel]) -> Entry {
    Entry { name, p, n, pows, comms }
}

const LIBRARY: &[Entry] = &[
    entry("C2", 2, 1, &[], &[]),
    entry("C4", 2, 2, &[(1, &[2])], &[]),
    entry("C2xC2", 2, 2, &[], &[]),
    entry("C8", 2, 3, &[(1, &[2]), (2, &[3])], &[]),
    entry("C4xC2", 2, 3, &[(1, &[3])], &[]),
    entry("C2^3", 2, 3, &[], &[]),
    entry("D8", 2, 3, &[(2, &[3])], &[(2, 1, &[3])]),
    entry("Q8", 2, 3, &[(1, &[3]), (2, &[3])], &[(2, 1, &[3])]),
    entry("C16", 2, 4, &[(1, &[2]), (2, &[3]), (3, &[4])], &[]),
    entry("C4xC4", 2, 4, &[(1, &[3]), (2, &[4])], &[]),
    entry("(C4xC2):C2", 2, 4, &[(2, &[3])], &[(2, 1, &[4])]),
    entry("C4:C4", 2, 4, &[(1, &[3]), (2, &[4])], &[(2, 1, &[4])]),
    entry("C8xC2", 2, 4, &[(1, &[3]), (3, &[4])], &[]),
    entry("M16", 2, 4, &[(2, &[3]), (3, &[4])], &[(2, 1, &[4])]),
    entry("D16", 2, 4, &[(2, &[3]), (3, &[4])], &[(2, 1, &[3, 4]), (3, 1, &[4])]),
    entry("SD16", 2, 4, &[(2, &[3]), (3, &[4])], &[(2, 1, &[3]), (3, 1, &[4])]),
    entry("Q16", 2, 4, &[(1, &[4]), (2, &[3]), (3, &[4])], &[(2, 1, &[3, 4]), (3, 1, &[4])]),
    entry("C4xC2xC2", 2, 4, &[(1, &[4])], &[]),
    entry("C2xD8", 2, 4, &[(2, &[3])], &[(2, 1, &[3])]),
    entry("C2xQ8", 2, 4, &[(1, &[3]), (2, &[3])], &[(2, 1, &[3])]),
    entry("C4oD8", 2, 4, &[(2, &[4]), (3, &[4])], &[(2, 1, &[4])]),
    entry("C2^4", 2, 4, &[], &[]),
    entry("C32", 2, 5, &[(1, &[2]), (2, &[3]), (3, &[4]), (4, &[5])], &[]),
    entry("C2^5", 2, 5, &[], &[]),
    entry(
        "D32",
        2,
        5,
        &[(2, &[3]), (3, &[4]), (4, &[5])],
        &[(2, 1, &[3, 4, 5]), (3, 1, &[4, 5]), (4, 1, &[5])],
    ),
    entry("2^(1+4)+", 2, 5, &[], &[(2, 1, &[5]), (4, 3, &[5])]),
    entry("2^(1+4)-", 2, 5, &[(3, &[5]), (4, &[5])], &[(2, 1, &[5]), (4, 3, &[5])]),
    entry(
        "G128",
        2,
        7,
        &[(1, &[4]), (2, &[5])],
        &[(2, 1, &[3]), (3, 1, &[6]), (3, 2, &[7]), (4, 2, &[6]), (5, 1, &[7])],
    ),
    entry("C3", 3, 1, &[], &[]),
    entry("C9", 3, 2, &[(1, &[2])], &[]),
    entry("C3xC3", 3, 2, &[], &[]),
    entry("C27", 3, 3, &[(1, &[2]), (2, &[3])], &[]),
    entry("C9xC3", 3, 3, &[(1, &[3])], &[]),
    entry("C3^3", 3, 3, &[], &[]),
    entry("Heis27", 3, 3, &[], &[(2, 1, &[3])]),
    entry("M27", 3, 3, &[(2, &[3])], &[(2, 1, &[3])]),
];

/// Names of every library presentation, in library order.
pub fn names() -> Vec<&'static str> {
    LIBRARY.iter().map(|e| e.name).collect()
}

pub fn named_presentation(name: &str) -> Result<PcPresentation> {
    let e = LIBRARY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::validation(format!("unknown group `{name}`")))?;
    presentation(e.p, e.n, e.pows, e.comms)
}

pub fn named_group(name: &str, budgets: &Budgets) -> Result<FiniteGroupTable> {
    FiniteGroupTable::from_power_commutator(named_presentation(name)?, budgets)
}

/// Every library group of order at most 32.
pub fn corpus_groups(budgets: &Budgets) -> Result<Vec<(&'static str, FiniteGroupTable)>> {
    LIBRARY
        .iter()
        .filter(|e| (e.p as usize).pow(e.n as u32) <= 32)
        .map(|e| Ok((e.name, named_group(e.name, budgets)?)))
        .collect()
}

/// Order of the Bogomolov multiplier where it is recorded for a library group.
pub fn bogomolov_multiplier_order(name: &str) -> Option<u64> {
    let e = LIBRARY.iter().find(|e| e.name == name)?;
    ((e.p as usize).pow(e.n as u32) <= 32).then_some(1)
}

pub fn cyclic(n: u32) -> Result<FiniteGroupTable> {
    if n == 0 {
        return Err(Error::validation("cyclic group of order 0"));
    }
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroupTable::from_cayley_table(rows)
}

pub fn symmetric3(budgets: &Budgets) -> Result<FiniteGroupTable> {
    FiniteGroupTable::from_permutation_generators(&[vec![1, 2, 0], vec![1, 0, 2]], budgets)
}

pub fn dihedral8(budgets: &Budgets) -> Result<FiniteGroupTable> {
    named_group("D8", budgets)
}

pub fn quaternion8(budgets: &Budgets) -> Result<FiniteGroupTable> {
    named_group("Q8", budgets)
}

/// Free nilpotent group of class 2 on four generators `x1..x4` with
/// `x_i^p = 1`: generators `g1..g4 = x_i`, `g5..g10` the commutators
/// `[x2,x1], [x3,x1], [x4,x1], [x3,x2], [x4,x2], [x4,x3]`, all central.
pub fn disproof_presentation(p: u32) -> Result<PcPresentation> {
    let mut comms = Vec::new();
    let mut next = 4;
    for i in 0..4 {
        for j in i + 1..4 {
            let mut w = vec![0u32; 10];
            w[next] = 1;
            comms.push((j, i, w));
            next += 1;
        }
    }
    PcPresentation::new(p, 10, &[], &comms)
}

pub fn disproof_group(p: u32, budgets: &Budgets) -> Result<FiniteGroupTable> {
    FiniteGroupTable::from_power_commutator(disproof_presentation(p)?, budgets)
}

/// `[x2,x1][x4,x3]` in [`disproof_group`].
pub fn disproof_central_element(g: &FiniteGroupTable) -> u32 {
    let pres = g.pc_presentation().expect("disproof group keeps its presentation");
    let mut w = vec![0u32; 10];
    w[4] = 1;
    w[9] = 1;
    pres.index_of(&w) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (order, k, |G'|, number of squares, element-order histogram).
    fn invariants(g: &FiniteGroupTable) -> (usize, usize, usize, usize, Vec<(u64, usize)>) {
        let b = Budgets::default();
        let mut hist = std::collections::BTreeMap::new();
        for x in g.elements() {
            *hist.entry(g.element_order(x)).or_insert(0) += 1;
        }
        (
            g.order(),
            g.conjugacy_classes(&b).unwrap().count(),
            g.commutator_subgroup(&b).unwrap().len(),
            g.elements().map(|x| g.mul(x, x)).collect::<std::collections::HashSet<_>>().len(),
            hist.into_iter().collect(),
        )
    }

    #[test]
    fn library_groups_are_pairwise_non_isomorphic() {
        let b = Budgets::default();
        let groups = corpus_groups(&b).unwrap();
        let inv: Vec<_> = groups.iter().map(|(n, g)| (*n, invariants(g))).collect();
        for i in 0..inv.len() {
            for j in 0..i {
                assert_ne!(inv[i].1, inv[j].1, "{} vs {}", inv[i].0, inv[j].0);
            }
        }
    }

    #[test]
    fn order_16_class_numbers() {
        let b = Budgets::default();
        let expected = [
            ("C16", 16),
            ("C4xC4", 16),
            ("(C4xC2):C2", 10),
            ("C4:C4", 10),
            ("C8xC2", 16),
            ("M16", 10),
            ("D16", 7),
            ("SD16", 7),
            ("Q16", 7),
            ("C4xC2xC2", 16),
            ("C2xD8", 10),
            ("C2xQ8", 10),
            ("C4oD8", 10),
            ("C2^4", 16),
        ];
        for (name, k) in expected {
            let g = named_group(name, &b).unwrap();
            assert_eq!(g.order(), 16);
            assert_eq!(g.conjugacy_classes(&b).unwrap().count(), k, "{name}");
        }
    }

    #[test]
    fn extraspecial_and_dihedral_32() {
        let b = Budgets::default();
        for (name, k) in [("2^(1+4)+", 17), ("2^(1+4)-", 17), ("D32", 11)] {
            assert_eq!(named_group(name, &b).unwrap().conjugacy_classes(&b).unwrap().count(), k, "{name}");
        }
    }

    #[test]
    fn three_groups() {
        let b = Budgets::default();
        for (name, k) in [("Heis27", 11), ("M27", 11), ("C9xC3", 27)] {
            let g = named_group(name, &b).unwrap();
            assert_eq!(g.conjugacy_classes(&b).unwrap().count(), k, "{name}");
        }
        assert_eq!(named_group("Heis27", &b).unwrap().exponent(), 3);
        assert_eq!(named_group("M27", &b).unwrap().exponent(), 9);
    }

    #[test]
    fn order_128_group_builds() {
        let b = Budgets::default();
        let g = named_group("G128", &b).unwrap();
        assert_eq!(g.order(), 128);
    }

    #[test]
    fn disproof_group_is_class_two() {
        let b = Budgets::default();
        let g = disproof_group(2, &b).unwrap();
        let derived = g.commutator_subgroup(&b).unwrap();
        assert_eq!(derived.len(), 64);
        for &c in &derived {
            assert!(g.is_central(c));
        }
    }
}
