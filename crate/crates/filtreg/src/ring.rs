//! Polynomial rings over a prime field.
//!
//! A [`PolyRing`] is `Z/p[x_1,...,x_n]` with the standard grading
//! (every variable in degree one) and the degree-reverse-lexicographic
//! monomial order fixed once and for all.

use std::fmt;
use std::sync::Arc;

use crate::error::KernelError;

/// Default coefficient characteristic. Large enough that random choices
/// behave generically with failure probability about `deg/p` per trial.
pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// A polynomial ring `Z/p[x_1,...,x_n]`, all variables of degree 1.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    p: u64,
    vars: Vec<String>,
}

impl PolyRing {
    /// Builds a ring, checking that `p` is prime and the variable names
    /// are distinct and nonempty.
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<PolyRing>, KernelError> {
        if p < 2 || !is_prime(p) {
            return Err(KernelError::NotPrime(p));
        }
        if vars.is_empty() {
            return Err(KernelError::NoVariables);
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if v.is_empty() || names.iter().any(|w| w == v) {
                return Err(KernelError::BadVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing { p, vars: names }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    // --- coefficient field arithmetic -------------------------------------

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u64 {
        let p = self.p as i64;
        (((v % p) + p) % p) as u64
    }

    /// True when the two handles denote the same ring instance.
    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || (a.p == b.p && a.vars == b.vars)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.p, self.vars.join(","))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let r = PolyRing::new(7, &["x"]).unwrap();
        assert_eq!(r.add(5, 4), 2);
        assert_eq!(r.sub(2, 5), 4);
        assert_eq!(r.mul(3, 5), 1);
        assert_eq!(r.inv(3), 5);
        assert_eq!(r.from_i64(-1), 6);
        for a in 1..7 {
            assert_eq!(r.mul(a, r.inv(a)), 1);
        }
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::new(6, &["x"]).is_err());
        assert!(PolyRing::new(7, &[]).is_err());
        assert!(PolyRing::new(7, &["x", "x"]).is_err());
    }

    #[test]
    fn default_characteristic_is_prime() {
        assert!(is_prime(DEFAULT_CHARACTERISTIC));
    }
}
