//! Buchberger's algorithm for ideals under grevlex.
//!
//! Output bases are fully reduced: monic, pairwise tail-reduced, sorted by
//! descending leading term, hence unique for the fixed order. Normal form
//! against such a basis is a K-linear canonical form.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::poly::Polynomial;

/// Process-wide Gröbner statistics, reported by `--profile`.
pub static SPAIRS: AtomicU64 = AtomicU64::new(0);
pub static REDUCTIONS: AtomicU64 = AtomicU64::new(0);
pub static BASES: AtomicU64 = AtomicU64::new(0);

pub fn stats_snapshot() -> (u64, u64, u64) {
    (
        SPAIRS.load(AtomicOrdering::Relaxed),
        REDUCTIONS.load(AtomicOrdering::Relaxed),
        BASES.load(AtomicOrdering::Relaxed),
    )
}

/// Fully reduces `f` against `basis` (every term, not just the lead).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rem = Polynomial::zero(&ring);
    let mut work = f.clone();
    'outer: while let Some((m, c)) = work.terms().first().cloned() {
        for g in basis {
            if let Some(glm) = g.leading_monomial() {
                if glm.divides(&m) {
                    REDUCTIONS.fetch_add(1, AtomicOrdering::Relaxed);
                    let q = glm.quotient(&m);
                    let k = ring.mul(c, ring.inv(g.leading_coeff().unwrap()));
                    work = work.sub(&g.mul_term(&q, k));
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        rem = rem.add(&Polynomial::monomial(&ring, m.clone(), c));
        work = work.sub(&Polynomial::monomial(&ring, m, c));
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ring = f.ring().clone();
    let fm = f.leading_monomial().unwrap();
    let gm = g.leading_monomial().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient(&l), ring.inv(f.leading_coeff().unwrap()));
    let b = g.mul_term(&gm.quotient(&l), ring.inv(g.leading_coeff().unwrap()));
    a.sub(&b)
}

/// The reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    BASES.fetch_add(1, AtomicOrdering::Relaxed);
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    if basis.is_empty() {
        return basis;
    }
    // monomial ideals: the minimal monomial generators are already the
    // reduced basis, no pairs needed
    if basis.iter().all(|g| g.terms().len() == 1) {
        return reduce_monomial_basis(basis);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some(pos) = pick_pair(&basis, &pairs) {
        let (i, j) = pairs.swap_remove(pos);
        SPAIRS.fetch_add(1, AtomicOrdering::Relaxed);
        let (fi, fj) = (&basis[i], &basis[j]);
        // Buchberger's product criterion
        if fi
            .leading_monomial()
            .unwrap()
            .coprime(fj.leading_monomial().unwrap())
        {
            continue;
        }
        let s = s_polynomial(fi, fj);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            for t in 0..k {
                pairs.push((t, k));
            }
            basis.push(r);
        }
    }
    reduce_basis(basis)
}

/// Picks the pair with the smallest lcm (normal selection strategy).
fn pick_pair(basis: &[Polynomial], pairs: &[(usize, usize)]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, (a, b)), (_, (c, d))| {
            let l1 = basis[*a]
                .leading_monomial()
                .unwrap()
                .lcm(basis[*b].leading_monomial().unwrap());
            let l2 = basis[*c]
                .leading_monomial()
                .unwrap()
                .lcm(basis[*d].leading_monomial().unwrap());
            l1.cmp_grevlex(&l2)
        })
        .map(|(idx, _)| idx)
}

fn reduce_monomial_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, f) in basis.iter().enumerate() {
        let fm = f.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            j != i && {
                let gm = g.leading_monomial().unwrap();
                gm.divides(fm) && (gm != fm || j < i)
            }
        });
        if !redundant {
            keep.push(f.monic());
        }
    }
    keep.sort_by(|a, b| {
        b.leading_monomial()
            .unwrap()
            .cmp_grevlex(a.leading_monomial().unwrap())
    });
    keep
}

/// Inter-reduces a basis into the unique reduced form.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose lead is divisible by another lead
    let mut keep: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp_grevlex(b.leading_monomial().unwrap())
    });
    for (i, f) in basis.iter().enumerate() {
        let flm = f.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            j != i && {
                let glm = g.leading_monomial().unwrap();
                glm.divides(flm) && (glm != flm || j < i)
            }
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    // tail-reduce each element against the others
    let mut out: Vec<Polynomial> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        out.push(normal_form(&keep[i], &others).monic());
    }
    out.retain(|f| !f.is_zero());
    out.sort_by(|a, b| {
        b.leading_monomial()
            .unwrap()
            .cmp_grevlex(a.leading_monomial().unwrap())
    });
    out
}
