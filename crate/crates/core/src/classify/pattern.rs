use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::poly::Poly;

use super::{check_char, good_monomial_type};

/// The monomial module `R[x^(p^d)] + sum_i sum_{u in N} R[x^(p^e)] x_i^(p^u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePattern {
    pub p: u64,
    pub d: u32,
    pub e: u32,
    pub exps: Vec<u32>,
}

impl ModulePattern {
    /// Requires `d <= e`, `N` nonempty and `u + v` in `N` or at least `d` for `u, v` in `N`.
    pub fn new(p: u64, d: u32, e: u32, exps: Vec<u32>) -> Result<ModulePattern> {
        if p < 2 || !crate::ring::nt::is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not a prime")));
        }
        if d > e {
            return Err(Error::Precondition(format!("d = {d} exceeds e = {e}")));
        }
        if exps.is_empty() {
            return Err(Error::Precondition("N must be nonempty".into()));
        }
        for &u in &exps {
            for &v in &exps {
                if u + v < d && !exps.contains(&(u + v)) {
                    return Err(Error::Precondition(format!(
                        "{u} + {v} is neither in N nor at least d"
                    )));
                }
            }
        }
        Ok(ModulePattern { p, d, e, exps })
    }

    /// `V_n = V(1, 1, {0})`.
    pub fn v(p: u64) -> Result<ModulePattern> {
        ModulePattern::new(p, 1, 1, vec![0])
    }

    /// `W_n = V(1, 2, {0})`.
    pub fn w(p: u64) -> Result<ModulePattern> {
        ModulePattern::new(p, 1, 2, vec![0])
    }

    fn pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    pub fn contains_monomial(&self, t: &[u32]) -> bool {
        let pd = self.pow(self.d);
        let pe = self.pow(self.e);
        if t.iter().all(|&x| x as u64 % pd == 0) {
            return true;
        }
        (0..t.len()).any(|i| {
            t.iter().enumerate().all(|(j, &x)| j == i || x as u64 % pe == 0)
                && self.exps.iter().any(|&u| {
                    let pu = self.pow(u);
                    t[i] as u64 >= pu && (t[i] as u64 - pu) % pe == 0
                })
        })
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.terms().all(|(m, _)| self.contains_monomial(m.exps()))
    }

    pub fn contains_endo(&self, phi: &Endo) -> bool {
        phi.images().iter().all(|g| self.contains(g))
    }
}

/// The module whose `n`-th power is `ngg_n`: `W_2` when `n = p = 2`, else `V_n`.
pub fn ngg_pattern(n: usize, p: u64) -> Result<ModulePattern> {
    if n == 2 && p == 2 {
        ModulePattern::w(p)
    } else {
        ModulePattern::v(p)
    }
}

/// Whether no good monomial appears in any image of `phi`.
pub fn ngg_membership(phi: &Endo) -> Result<bool> {
    let p = phi.ring().characteristic();
    check_char(p)?;
    let n = phi.n();
    for g in phi.images() {
        for (m, _) in g.terms() {
            if good_monomial_type(m.exps(), n, p)?.is_good() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
