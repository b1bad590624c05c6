//! Sparse multivariate polynomials over `Z/p`.
//!
//! Terms are kept sorted in descending grevlex order with no zero
//! coefficients, so the leading term is always `terms[0]` and equality is
//! structural.

use std::fmt;
use std::sync::Arc;

use crate::error::KernelError;
use crate::monomial::Monomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    /// Descending grevlex, coefficients nonzero.
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u64) -> Polynomial {
        let c = c % ring.characteristic();
        let mut p = Polynomial::zero(ring);
        if c != 0 {
            p.terms.push((Monomial::one(ring.num_vars()), c));
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.num_vars(), i), 1)],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Polynomial {
        let c = c % ring.characteristic();
        let mut p = Polynomial::zero(ring);
        if c != 0 {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds from unsorted terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut ts: Vec<(Monomial, u64)>) -> Polynomial {
        ts.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut terms: Vec<(Monomial, u64)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            let c = c % ring.characteristic();
            match terms.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = ring.add(last.1, c);
                }
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.first().map(|(_, c)| *c)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// All terms share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> u64 {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp_grevlex(&other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ring.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), self.ring.mul(*k, c)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Polynomial {
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), self.ring.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc: Vec<(Monomial, u64)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (mm, cc) in &other.terms {
                acc.push((m.mul(mm), self.ring.mul(*c, *cc)));
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.inv(c)),
        }
    }

    /// Exact division by `divisor`; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let ring = &self.ring;
        let dlm = divisor.leading_monomial().unwrap();
        let dlc = divisor.leading_coeff().unwrap();
        let dlc_inv = ring.inv(dlc);
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, u64)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dlm.divides(&m) {
                return None;
            }
            let qm = dlm.quotient(&m);
            let qc = ring.mul(c, dlc_inv);
            q.push((qm.clone(), qc));
            rem = rem.sub(&divisor.mul_term(&qm, qc));
        }
        Some(Polynomial::from_terms(ring, q))
    }

    /// Sum of the terms of a fixed total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .cloned()
                .collect(),
        }
    }

    /// Parses text like `x^2 + 3*x*y - y^2`. `*` between factors is
    /// optional, `^` denotes powers, integer coefficients are reduced
    /// mod p, and variable names are the declared ones.
    pub fn parse(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial, KernelError> {
        let tokens = tokenize(input)?;
        let mut acc = Polynomial::zero(ring);
        let mut idx = 0;
        let mut sign_neg;
        let mut first = true;
        while idx < tokens.len() {
            // leading sign of the term
            match &tokens[idx] {
                Token::Plus => {
                    sign_neg = false;
                    idx += 1;
                }
                Token::Minus => {
                    sign_neg = true;
                    idx += 1;
                }
                _ if first => {
                    sign_neg = false;
                }
                t => {
                    return Err(KernelError::Parse(format!(
                        "expected + or - before `{t:?}`"
                    )))
                }
            }
            first = false;
            let (term, next) = parse_term(ring, &tokens, idx)?;
            idx = next;
            acc = if sign_neg {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(input: &str) -> Result<Vec<Token>, KernelError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: u64 = s
                    .parse()
                    .map_err(|_| KernelError::Parse(format!("bad integer `{s}`")))?;
                out.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(KernelError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

/// Parses factors up to the next top-level `+`/`-`.
fn parse_term(
    ring: &Arc<PolyRing>,
    tokens: &[Token],
    mut idx: usize,
) -> Result<(Polynomial, usize), KernelError> {
    let mut coeff: u64 = 1;
    let mut exps = vec![0u32; ring.num_vars()];
    let mut saw_factor = false;
    while idx < tokens.len() {
        match &tokens[idx] {
            Token::Plus | Token::Minus => break,
            Token::Star => {
                if !saw_factor {
                    return Err(KernelError::Parse("`*` without left factor".into()));
                }
                idx += 1;
            }
            Token::Int(v) => {
                let (base, exp, next) = parse_power_int(tokens, idx, *v)?;
                coeff = ring.mul(coeff, ring.pow(base % ring.characteristic(), exp));
                idx = next;
                saw_factor = true;
            }
            Token::Ident(name) => {
                let vi = ring
                    .var_index(name)
                    .ok_or_else(|| KernelError::Parse(format!("unknown variable `{name}`")))?;
                let mut exp: u32 = 1;
                idx += 1;
                if idx < tokens.len() && tokens[idx] == Token::Caret {
                    idx += 1;
                    match tokens.get(idx) {
                        Some(Token::Int(e)) => {
                            exp = u32::try_from(*e)
                                .map_err(|_| KernelError::Parse("exponent too large".into()))?;
                            idx += 1;
                        }
                        _ => return Err(KernelError::Parse("expected exponent after ^".into())),
                    }
                }
                exps[vi] += exp;
                saw_factor = true;
            }
            Token::Caret => return Err(KernelError::Parse("dangling ^".into())),
        }
    }
    if !saw_factor {
        return Err(KernelError::Parse("empty term".into()));
    }
    Ok((
        Polynomial::monomial(ring, crate::monomial::Monomial::new(exps), coeff),
        idx,
    ))
}

fn parse_power_int(
    tokens: &[Token],
    idx: usize,
    base: u64,
) -> Result<(u64, u64, usize), KernelError> {
    let mut next = idx + 1;
    let mut exp = 1u64;
    if tokens.get(next) == Some(&Token::Caret) {
        next += 1;
        match tokens.get(next) {
            Some(Token::Int(e)) => {
                exp = *e;
                next += 1;
            }
            _ => return Err(KernelError::Parse("expected exponent after ^".into())),
        }
    }
    Ok((base, exp, next))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(32003, &["x", "y"]).unwrap()
    }

    #[test]
    fn parse_spec_example() {
        let r = ring2();
        let p = Polynomial::parse(&r, "x^2 + 3*x*y - y^2").unwrap();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.to_string(), "x^2 + 3*x*y + 32002*y^2");
    }

    #[test]
    fn parse_implicit_star_and_constants() {
        let r = ring2();
        let p = Polynomial::parse(&r, "2x y + x^2y - 5").unwrap();
        let q = Polynomial::parse(&r, "x^2*y + 2*x*y - 5").unwrap();
        assert_eq!(p, q);
        assert!(Polynomial::parse(&r, "z + 1").is_err());
        assert!(Polynomial::parse(&r, "x ^").is_err());
    }

    #[test]
    fn arithmetic_roundtrip() {
        let r = ring2();
        let f = Polynomial::parse(&r, "x + y").unwrap();
        let g = Polynomial::parse(&r, "x - y").unwrap();
        assert_eq!(f.mul(&g), Polynomial::parse(&r, "x^2 - y^2").unwrap());
        assert!(f.sub(&f).is_zero());
        let sq = f.mul(&f);
        assert_eq!(sq.div_exact(&f).unwrap(), f);
        assert!(sq.add(&Polynomial::one(&r)).div_exact(&f).is_none());
    }

    #[test]
    fn homogeneity() {
        let r = ring2();
        assert!(Polynomial::parse(&r, "x^2 + x*y").unwrap().is_homogeneous());
        assert!(!Polynomial::parse(&r, "x^2 + y").unwrap().is_homogeneous());
        assert!(Polynomial::zero(&r).is_homogeneous());
    }

    #[test]
    fn leading_term_grevlex() {
        let r = ring2();
        let p = Polynomial::parse(&r, "y^2 + x^2 + x*y").unwrap();
        assert_eq!(
            p.leading_monomial().unwrap(),
            &crate::monomial::Monomial::new(vec![2, 0])
        );
    }
}
