//! Resolving command-line inputs: files on disk or builtin names.

use std::cell::RefCell;
use std::path::Path;

use orbitlab::grouptab::{library, parse_group_file};
use orbitlab::{Budgets, Error, Field, FiniteGroupTable, NilAlgebra};
use sha2::{Digest, Sha256};

pub fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Files read while running one command, with their digests.
#[derive(Default)]
pub struct InputLog {
    files: RefCell<Vec<(String, String)>>,
}

impl InputLog {
    pub fn read(&self, path: &Path) -> Result<String, Error> {
        let text = read(path)?;
        self.files
            .borrow_mut()
            .push((path.display().to_string(), sha256_hex(text.as_bytes())));
        Ok(text)
    }

    pub fn into_digests(self) -> Vec<(String, String)> {
        self.files.into_inner()
    }
}

fn parts<const N: usize>(rest: &str, form: &str) -> Result<[String; N], Error> {
    let v: Vec<String> = rest.split(':').map(str::to_string).collect();
    v.try_into()
        .map_err(|_| Error::validation(format!("expected `{form}`")))
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::validation(format!("{what} `{s}` is not a valid integer")))
}

/// `library:NAME`, `disproof:P`, or a group file.
pub fn group(spec: &str, log: &InputLog, budgets: &Budgets) -> Result<FiniteGroupTable, Error> {
    if let Some(name) = spec.strip_prefix("library:") {
        return library::named_group(name, budgets);
    }
    if let Some(p) = spec.strip_prefix("disproof:") {
        return library::disproof_group(num(p, "prime")?, budgets);
    }
    parse_group_file(&log.read(Path::new(spec))?, budgets)
}

/// Builtin algebra forms or an `alg p e d` file.
pub fn algebra(spec: &str, log: &InputLog, budgets: &Budgets) -> Result<NilAlgebra, Error> {
    let field = |p: &str, e: &str| Field::with_budget(num(p, "p")?, num(e, "e")?, budgets);
    if let Some(rest) = spec.strip_prefix("unitriangular:") {
        let [n, p, e] = parts(rest, "unitriangular:N:P:E")?;
        return NilAlgebra::make_unitriangular(num(&n, "n")?, &field(&p, &e)?, budgets);
    }
    if let Some(rest) = spec.strip_prefix("augmentation:") {
        let [name, p, e] = parts(rest, "augmentation:NAME:P:E")?;
        let g = library::named_group(&name, budgets)?;
        return NilAlgebra::make_augmentation_ideal(&g, &field(&p, &e)?, budgets);
    }
    if let Some(rest) = spec.strip_prefix("zero:") {
        let [d, p, e] = parts(rest, "zero:D:P:E")?;
        return NilAlgebra::zero_product(&field(&p, &e)?, num(&d, "d")?, budgets);
    }
    if let Some(rest) = spec.strip_prefix("truncated:") {
        let [n, p, e] = parts(rest, "truncated:N:P:E")?;
        return NilAlgebra::truncated_polynomial(&field(&p, &e)?, num(&n, "n")?, budgets);
    }
    NilAlgebra::parse(&log.read(Path::new(spec))?, budgets)
}
