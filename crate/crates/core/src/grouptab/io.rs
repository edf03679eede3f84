//! Plain-text group files.
//!
//! ```text
//! # a Cayley table: header then one row per element
//! cayley 2
//! 0 1
//! 1 0
//! ```
//!
//! ```text
//! # a power-commutator presentation; generators are 1-based
//! pc 2 3
//! pow 2: 0 0 1
//! comm 2 1: 0 0 1
//! ```
//!
//! ```text
//! # permutation generators on 0..degree, one image list per line
//! perm 3
//! 1 2 0
//! 1 0 2
//! ```

use super::{FiniteGroupTable, PcPresentation};
use crate::budget::Budgets;
use crate::error::{Error, Result};

/// Parsed group file before the group is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFile {
    Cayley(Vec<Vec<u32>>),
    Pc(PcPresentation),
    Perm(Vec<Vec<u32>>),
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hn, header) = lines.next().ok_or_else(|| Error::validation("empty group file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str, line: usize| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::validation(format!("line {line}: `{s}` is not a non-negative integer")))
        };
        let row = |l: &str, line: usize| -> Result<Vec<u32>> { l.split_whitespace().map(|s| num(s, line)).collect() };
        match head.as_slice() {
            ["cayley", m] => {
                let m = num(m, hn)? as usize;
                let rows = lines.map(|(n, l)| row(l, n)).collect::<Result<Vec<_>>>()?;
                if rows.len() != m {
                    return Err(Error::validation(format!("expected {m} table rows, found {}", rows.len())));
                }
                Ok(GroupFile::Cayley(rows))
            }
            ["perm", degree] => {
                let degree = num(degree, hn)? as usize;
                let gens = lines.map(|(n, l)| row(l, n)).collect::<Result<Vec<_>>>()?;
                if let Some(g) = gens.iter().find(|g| g.len() != degree) {
                    return Err(Error::validation(format!(
                        "permutation has {} images, expected {degree}",
                        g.len()
                    )));
                }
                Ok(GroupFile::Perm(gens))
            }
            ["pc", p, n] => {
                let p = num(p, hn)?;
                let n = num(n, hn)? as usize;
                let mut pows = Vec::new();
                let mut comms = Vec::new();
                for (ln, l) in lines {
                    let (lhs, rhs) = l
                        .split_once(':')
                        .ok_or_else(|| Error::validation(format!("line {ln}: missing `:`")))?;
                    let word = row(rhs, ln)?;
                    let idx = |s: &str| -> Result<usize> {
                        let k = num(s, ln)? as usize;
                        if k == 0 || k > n {
                            return Err(Error::validation(format!("line {ln}: generator {k} out of range 1..={n}")));
                        }
                        Ok(k - 1)
                    };
                    match lhs.split_whitespace().collect::<Vec<_>>().as_slice() {
                        ["pow", i] => pows.push((idx(i)?, word)),
                        ["comm", j, i] => comms.push((idx(j)?, idx(i)?, word)),
                        _ => return Err(Error::validation(format!("line {ln}: expected `pow i:` or `comm j i:`"))),
                    }
                }
                Ok(GroupFile::Pc(PcPresentation::new(p, n, &pows, &comms)?))
            }
            _ => Err(Error::validation(format!(
                "line {hn}: header must be `cayley m`, `pc p n` or `perm degree`"
            ))),
        }
    }

    pub fn build(self, budgets: &Budgets) -> Result<FiniteGroupTable> {
        match self {
            GroupFile::Cayley(rows) => FiniteGroupTable::from_cayley_table(rows),
            GroupFile::Pc(pres) => FiniteGroupTable::from_power_commutator(pres, budgets),
            GroupFile::Perm(gens) => FiniteGroupTable::from_permutation_generators(&gens, budgets),
        }
    }
}

pub fn parse_group_file(text: &str, budgets: &Budgets) -> Result<FiniteGroupTable> {
    GroupFile::parse(text)?.build(budgets)
}

/// Serializes a presentation in the `pc` file format, omitting trivial relations.
pub fn write_pc_file(pres: &PcPresentation) -> String {
    let n = pres.generator_count();
    let word = |w: &[u32]| w.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("pc {} {n}\n", pres.p());
    for i in 0..n {
        let w = pres.power_relation(i);
        if w.iter().any(|&x| x != 0) {
            out += &format!("pow {}: {}\n", i + 1, word(w));
        }
    }
    for j in 0..n {
        for i in 0..j {
            let w = pres.commutator_relation(j, i);
            if w.iter().any(|&x| x != 0) {
                out += &format!("comm {} {}: {}\n", j + 1, i + 1, word(w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_formats() {
        let b = Budgets::default();
        let c2 = parse_group_file("cayley 2\n0 1\n1 0\n", &b).unwrap();
        assert_eq!(c2.order(), 2);
        let d8 = parse_group_file("# D8\npc 2 3\npow 2: 0 0 1\ncomm 2 1: 0 0 1 # r^s = r^-1\n", &b).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.conjugacy_classes(&b).unwrap().count(), 5);
        let s3 = parse_group_file("perm 3\n1 2 0\n1 0 2\n", &b).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn pc_round_trip() {
        let text = "pc 2 3\npow 2: 0 0 1\ncomm 2 1: 0 0 1\n";
        let GroupFile::Pc(pres) = GroupFile::parse(text).unwrap() else {
            panic!("expected pc")
        };
        assert_eq!(write_pc_file(&pres), text);
    }

    #[test]
    fn bad_files_are_validation_errors() {
        for text in ["", "cayley 2\n0 1\n", "pc 2 2\npow 3: 0 1\n", "group 4\n", "cayley 2\n0 x\n1 0\n"] {
            let err = GroupFile::parse(text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text:?}");
        }
    }
}
