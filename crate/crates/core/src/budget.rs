//! Resource limits shared by every enumeration in the crate.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest field cardinality `q` accepted by [`crate::ffield::Field::new`].
    pub field: u64,
    /// Largest group order stored as a dense multiplication table.
    pub table: u64,
    /// Largest number of polycyclic generators.
    pub pc_generators: u64,
    /// Largest group order for conjugacy-class computations on abstract groups.
    pub classes: u64,
    /// Largest `q^d` for enumerating an algebra group.
    pub enumeration: u64,
    /// Largest `p^(e d)` for enumerating the dual of an algebra.
    pub dual: u64,
    /// Largest subgroup produced by a closure computation.
    pub closure: u64,
    /// Largest algebra dimension.
    pub dimension: u64,
    /// Largest cutoff for truncated Dirichlet series.
    pub series_cutoff: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            field: 1 << 16,
            table: 256,
            pc_generators: 24,
            classes: 1 << 20,
            enumeration: 1 << 22,
            dual: 1 << 24,
            closure: 1 << 22,
            dimension: 4096,
            series_cutoff: 1_000_000,
        }
    }
}

impl Budgets {
    const KEYS: [&'static str; 9] = [
        "field",
        "table",
        "pc_generators",
        "classes",
        "enumeration",
        "dual",
        "closure",
        "dimension",
        "series_cutoff",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut u64> {
        Some(match key {
            "field" => &mut self.field,
            "table" => &mut self.table,
            "pc_generators" => &mut self.pc_generators,
            "classes" => &mut self.classes,
            "enumeration" => &mut self.enumeration,
            "dual" => &mut self.dual,
            "closure" => &mut self.closure,
            "dimension" => &mut self.dimension,
            "series_cutoff" => &mut self.series_cutoff,
            _ => return None,
        })
    }

    pub fn set(&mut self, key: &str, value: u64) -> Result<()> {
        match self.slot(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::validation(format!(
                "unknown budget `{key}` (known: {})",
                Self::KEYS.join(", ")
            ))),
        }
    }

    /// Applies a flat `key = value` configuration text. Blank lines and `#` comments are ignored.
    /// Values accept `2^k` as shorthand.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::validation(format!("config line {}: expected `key = value`", lineno + 1))
            })?;
            let value = parse_budget_value(value.trim()).ok_or_else(|| {
                Error::validation(format!(
                    "config line {}: `{}` is not a nonnegative integer",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, u64> {
        let mut copy = self.clone();
        Self::KEYS
            .iter()
            .map(|k| (*k, *copy.slot(k).expect("known key")))
            .collect()
    }

    pub(crate) fn check(name: &'static str, limit: u64, requested: u128) -> Result<()> {
        if requested > limit as u128 {
            Err(Error::budget(name, limit, format!("requested {requested}")))
        } else {
            Ok(())
        }
    }
}

pub fn parse_budget_value(s: &str) -> Option<u64> {
    if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base.trim().parse().ok()?;
        let exp: u32 = exp.trim().parse().ok()?;
        base.checked_pow(exp)
    } else {
        s.replace('_', "").parse().ok()
    }
}
