//! Power-commutator presentations of finite `p`-groups.
//!
//! Generators `g_1, ..., g_n` each have relative order `p`. A relation
//! `g_i^p = w_i` and `[g_j, g_i] = w_{ji}` (for `j > i`, with the convention
//! `[a, b] = a^{-1} b^{-1} a b`) gives every element a normal form
//! `g_1^{e_1} ... g_n^{e_n}` with `0 <= e_k < p`. Multiplication collects a
//! word into normal form using `g_j g_i = g_i g_j [g_j, g_i]`.

use crate::error::{Error, Result};

/// Hard cap on single-generator rewrite steps per multiplication.
pub const COLLECTION_STEP_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    n: usize,
    /// `powers[i]` is the normal form of `g_i^p`.
    powers: Vec<Vec<u32>>,
    /// `comms[j * n + i]` is the normal form of `[g_j, g_i]` for `j > i`.
    comms: Vec<Vec<u32>>,
}

impl PcPresentation {
    /// `power_relations`: `(i, w)` meaning `g_i^p = w`; `commutator_relations`:
    /// `(j, i, w)` meaning `[g_j, g_i] = w`. Indices are 0-based; `w` is an exponent
    /// vector of length `n`. Omitted relations are trivial.
    pub fn new(
        p: u32,
        n: usize,
        power_relations: &[(usize, Vec<u32>)],
        commutator_relations: &[(usize, usize, Vec<u32>)],
    ) -> Result<PcPresentation> {
        if !crate::ffield::is_prime(p as u64) {
            return Err(Error::Presentation(format!("{p} is not prime")));
        }
        let mut powers = vec![vec![0; n]; n];
        let mut comms = vec![vec![0; n]; n * n];
        let check_word = |w: &[u32], above: usize, what: &str| -> Result<()> {
            if w.len() != n {
                return Err(Error::Presentation(format!(
                    "{what}: word has {} exponents, expected {n}",
                    w.len()
                )));
            }
            if let Some(k) = w.iter().position(|&x| x >= p) {
                return Err(Error::Presentation(format!(
                    "{what}: exponent of g{} is not below p = {p}",
                    k + 1
                )));
            }
            if let Some(k) = w[..=above].iter().position(|&x| x != 0) {
                return Err(Error::Presentation(format!(
                    "{what}: word involves g{}, relations may only use later generators",
                    k + 1
                )));
            }
            Ok(())
        };
        for (i, w) in power_relations {
            if *i >= n {
                return Err(Error::Presentation(format!("power relation for g{} out of range", i + 1)));
            }
            check_word(w, *i, &format!("relation g{}^p", i + 1))?;
            powers[*i] = w.clone();
        }
        for (j, i, w) in commutator_relations {
            if *j >= n || *i >= *j {
                return Err(Error::Presentation(format!(
                    "commutator relation [g{}, g{}] must have {} > {}",
                    j + 1,
                    i + 1,
                    j + 1,
                    i + 1
                )));
            }
            check_word(w, *i, &format!("relation [g{}, g{}]", j + 1, i + 1))?;
            comms[j * n + i] = w.clone();
        }
        let pres = PcPresentation { p, n, powers, comms };
        pres.check_consistency()?;
        Ok(pres)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn power_relation(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    pub fn commutator_relation(&self, j: usize, i: usize) -> &[u32] {
        &self.comms[j * self.n + i]
    }

    pub fn generator(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// Right-multiplies the normal form `exps` by the generator `g_i`.
    fn mul_gen(&self, exps: &mut [u32], i: usize, steps: &mut u64) -> Result<()> {
        *steps += 1;
        if *steps > COLLECTION_STEP_LIMIT {
            return Err(Error::Presentation(format!(
                "collection exceeded {COLLECTION_STEP_LIMIT} rewrite steps"
            )));
        }
        let n = self.n;
        let tail: Vec<(usize, u32)> = (i + 1..n)
            .filter(|&j| exps[j] > 0)
            .map(|j| (j, exps[j]))
            .collect();
        for x in exps[i + 1..].iter_mut() {
            *x = 0;
        }
        exps[i] += 1;
        if exps[i] == self.p {
            exps[i] = 0;
            self.mul_word(exps, &self.powers[i], steps)?;
        }
        // tail * g_i = g_i * prod_j (g_j [g_j, g_i])^{e_j}
        for (j, e) in tail {
            for _ in 0..e {
                self.mul_gen(exps, j, steps)?;
                self.mul_word(exps, &self.comms[j * n + i], steps)?;
            }
        }
        Ok(())
    }

    fn mul_word(&self, exps: &mut [u32], word: &[u32], steps: &mut u64) -> Result<()> {
        for (k, &e) in word.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(exps, k, steps)?;
            }
        }
        Ok(())
    }

    /// Product of two normal forms.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        let mut out = a.to_vec();
        let mut steps = 0;
        self.mul_word(&mut out, b, &mut steps)?;
        Ok(out)
    }

    pub fn power(&self, a: &[u32], mut k: u64) -> Result<Vec<u32>> {
        let mut acc = vec![0; self.n];
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            base = self.multiply(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn inverse(&self, a: &[u32]) -> Result<Vec<u32>> {
        let order = (self.p as u64).pow(self.n as u32);
        self.power(a, order - 1)
    }

    /// The standard overlap tests; they pass iff the presentation is consistent,
    /// i.e. defines a group of order exactly `p^n`.
    pub fn check_consistency(&self) -> Result<()> {
        let n = self.n;
        let p = self.p;
        let g = |i: usize| self.generator(i);
        let gpow = |i: usize, k: u32| {
            let mut v = vec![0; n];
            v[i] = k;
            v
        };
        let fail = |what: String| Error::Presentation(format!("inconsistent presentation: {what}"));
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.multiply(&self.multiply(&g(k), &g(j))?, &g(i))?;
                    let rhs = self.multiply(&g(k), &self.multiply(&g(j), &g(i))?)?;
                    if lhs != rhs {
                        return Err(fail(format!(
                            "(g{} g{}) g{} != g{} (g{} g{})",
                            k + 1, j + 1, i + 1, k + 1, j + 1, i + 1
                        )));
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let lhs = self.multiply(&self.powers[j], &g(i))?;
                let rhs = self.multiply(&gpow(j, p - 1), &self.multiply(&g(j), &g(i))?)?;
                if lhs != rhs {
                    return Err(fail(format!("(g{}^p) g{} overlap", j + 1, i + 1)));
                }
                let lhs = self.multiply(&g(j), &self.powers[i])?;
                let rhs = self.multiply(&self.multiply(&g(j), &g(i))?, &gpow(i, p - 1))?;
                if lhs != rhs {
                    return Err(fail(format!("g{} (g{}^p) overlap", j + 1, i + 1)));
                }
            }
        }
        for i in 0..n {
            let lhs = self.multiply(&self.powers[i], &g(i))?;
            let rhs = self.multiply(&g(i), &self.powers[i])?;
            if lhs != rhs {
                return Err(fail(format!("(g{}^p) g{} != g{} (g{}^p)", i + 1, i + 1, i + 1, i + 1)));
            }
        }
        Ok(())
    }

    /// Lexicographic index of a normal form, `g_1` most significant.
    pub fn index_of(&self, exps: &[u32]) -> usize {
        exps.iter().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn normal_form(&self, mut index: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        for k in (0..self.n).rev() {
            v[k] = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        v
    }
}
