//! Vectors in free modules and Gröbner bases for submodules.
//!
//! Two term orders are used: `Pot` (position over term, refining grevlex)
//! for cached submodule bases, and `ElimTag` for syzygy and lifting
//! computations, where the leading block of components dominates a trailing
//! block of tag components. S-pairs only form between leads in the same
//! component, and the product criterion is not applied (it is unsound for
//! modules).

use std::cmp::Ordering;
use std::sync::atomic::Ordering as AtomicOrdering;
use std::sync::Arc;

use crate::groebner::{BASES, REDUCTIONS, SPAIRS};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// An element of a free module `A^rank`, stored densely by component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVec {
    ring: Arc<PolyRing>,
    comps: Vec<Polynomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModOrder {
    /// Lower component wins; ties broken by grevlex.
    Pot,
    /// Components `< split` beat components `>= split`; grevlex within a
    /// block, then lower component.
    ElimTag(usize),
}

impl ModOrder {
    /// Compares module terms `(component, monomial)`.
    pub fn cmp(
        &self,
        (c1, m1): (usize, &Monomial),
        (c2, m2): (usize, &Monomial),
    ) -> Ordering {
        match self {
            ModOrder::Pot => match c2.cmp(&c1) {
                Ordering::Equal => m1.cmp_grevlex(m2),
                ord => ord,
            },
            ModOrder::ElimTag(split) => {
                let b1 = usize::from(c1 >= *split);
                let b2 = usize::from(c2 >= *split);
                match b2.cmp(&b1) {
                    Ordering::Equal => match m1.cmp_grevlex(m2) {
                        Ordering::Equal => c2.cmp(&c1),
                        ord => ord,
                    },
                    ord => ord,
                }
            }
        }
    }
}

impl ModVec {
    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> ModVec {
        ModVec {
            ring: ring.clone(),
            comps: vec![Polynomial::zero(ring); rank],
        }
    }

    pub fn from_components(ring: &Arc<PolyRing>, comps: Vec<Polynomial>) -> ModVec {
        ModVec {
            ring: ring.clone(),
            comps,
        }
    }

    /// `f * e_c` in `A^rank`.
    pub fn injected(ring: &Arc<PolyRing>, rank: usize, c: usize, f: Polynomial) -> ModVec {
        let mut v = ModVec::zero(ring, rank);
        v.comps[c] = f;
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn component(&self, c: usize) -> &Polynomial {
        &self.comps[c]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        ModVec {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .zip(other.comps.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        ModVec {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .zip(other.comps.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u64) -> ModVec {
        ModVec {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ModVec {
        ModVec {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|p| p.mul(f)).collect(),
        }
    }

    /// Leading term `(component, monomial, coeff)` under `order`.
    pub fn leading_term(&self, order: ModOrder) -> Option<(usize, Monomial, u64)> {
        let mut best: Option<(usize, Monomial, u64)> = None;
        for (c, p) in self.comps.iter().enumerate() {
            if let (Some(m), Some(k)) = (p.leading_monomial(), p.leading_coeff()) {
                match &best {
                    Some((bc, bm, _)) if order.cmp((c, m), (*bc, bm)) != Ordering::Greater => {}
                    _ => best = Some((c, m.clone(), k)),
                }
            }
        }
        best
    }

    /// Degree when homogeneous for the given component shifts.
    pub fn degree_homogeneous(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (c, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree().unwrap() as i64 + shifts[c];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// Restricts to the components `[from, to)`.
    pub fn slice(&self, from: usize, to: usize) -> ModVec {
        ModVec {
            ring: self.ring.clone(),
            comps: self.comps[from..to].to_vec(),
        }
    }
}

/// Fully reduces `v` against `basis` under `order`.
pub fn normal_form_mod(v: &ModVec, basis: &[ModVec], order: ModOrder) -> ModVec {
    let ring = v.ring().clone();
    let rank = v.rank();
    let mut work = v.clone();
    let mut rem = ModVec::zero(&ring, rank);
    'outer: while let Some((c, m, k)) = work.leading_term(order) {
        for g in basis {
            if let Some((gc, gm, glc)) = g.leading_term(order) {
                if gc == c && gm.divides(&m) {
                    REDUCTIONS.fetch_add(1, AtomicOrdering::Relaxed);
                    let q = gm.quotient(&m);
                    let coef = ring.mul(k, ring.inv(glc));
                    work = work.sub(&g.mul_term(&q, coef));
                    continue 'outer;
                }
            }
        }
        let t = ModVec::injected(&ring, rank, c, Polynomial::monomial(&ring, m.clone(), k));
        rem = rem.add(&t);
        work = work.sub(&t);
    }
    rem
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner_module(gens: &[ModVec], order: ModOrder) -> Vec<ModVec> {
    BASES.fetch_add(1, AtomicOrdering::Relaxed);
    let mut basis: Vec<ModVec> = gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    // rank one is ideal arithmetic; reuse the polynomial engine
    if basis[0].rank() == 1 {
        let polys: Vec<Polynomial> = basis.iter().map(|v| v.component(0).clone()).collect();
        return crate::groebner::groebner_basis(&polys)
            .into_iter()
            .map(|p| ModVec::injected(&ring, 1, 0, p))
            .collect();
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm among pairs in matching components
        let mut chosen: Option<(usize, Monomial)> = None;
        for (idx, (i, j)) in pairs.iter().enumerate() {
            let (ci, mi, _) = basis[*i].leading_term(order).unwrap();
            let (cj, mj, _) = basis[*j].leading_term(order).unwrap();
            if ci != cj {
                continue;
            }
            let l = mi.lcm(&mj);
            match &chosen {
                Some((_, best)) if l.cmp_grevlex(best) != Ordering::Less => {}
                _ => chosen = Some((idx, l)),
            }
        }
        let Some((pos, _)) = chosen else {
            break;
        };
        let (i, j) = pairs.swap_remove(pos);
        SPAIRS.fetch_add(1, AtomicOrdering::Relaxed);
        let (ci, mi, ki) = basis[i].leading_term(order).unwrap();
        let (_, mj, kj) = basis[j].leading_term(order).unwrap();
        debug_assert_eq!(ci, basis[j].leading_term(order).unwrap().0);
        let l = mi.lcm(&mj);
        let a = basis[i].mul_term(&mi.quotient(&l), ring.inv(ki));
        let b = basis[j].mul_term(&mj.quotient(&l), ring.inv(kj));
        let s = a.sub(&b);
        let r = normal_form_mod(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            for t in 0..k {
                pairs.push((t, k));
            }
            basis.push(r);
        }
    }
    reduce_module_basis(basis, order)
}

fn reduce_module_basis(basis: Vec<ModVec>, order: ModOrder) -> Vec<ModVec> {
    let mut keep: Vec<ModVec> = Vec::new();
    for (i, f) in basis.iter().enumerate() {
        let (fc, fm, _) = f.leading_term(order).unwrap();
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            j != i && {
                let (gc, gm, _) = g.leading_term(order).unwrap();
                gc == fc && gm.divides(&fm) && (gm != fm || j < i)
            }
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut out: Vec<ModVec> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<ModVec> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let f = normal_form_mod(&keep[i], &others, order);
        if f.is_zero() {
            continue;
        }
        let (_, _, lc) = f.leading_term(order).unwrap();
        let ring = f.ring().clone();
        out.push(f.mul_term(&Monomial::one(ring.num_vars()), ring.inv(lc)));
    }
    out.sort_by(|a, b| {
        let (ac, am, _) = a.leading_term(order).unwrap();
        let (bc, bm, _) = b.leading_term(order).unwrap();
        order.cmp((bc, &bm), (ac, &am))
    });
    out
}

/// Gröbner basis of `[v_i | e_i]` under the tag-elimination order, shared
/// by syzygy extraction and membership lifting.
pub struct TaggedBasis {
    rank: usize,
    count: usize,
    gb: Vec<ModVec>,
}

impl TaggedBasis {
    pub fn new(ambient_rank: usize, vectors: &[ModVec]) -> TaggedBasis {
        assert!(!vectors.is_empty() || ambient_rank > 0);
        let ring = vectors
            .first()
            .map(|v| v.ring().clone())
            .expect("tagged basis needs at least one vector");
        let count = vectors.len();
        let total = ambient_rank + count;
        let tagged: Vec<ModVec> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut comps = v.components().to_vec();
                comps.extend((0..count).map(|j| {
                    if j == i {
                        Polynomial::one(&ring)
                    } else {
                        Polynomial::zero(&ring)
                    }
                }));
                debug_assert_eq!(comps.len(), total);
                ModVec::from_components(&ring, comps)
            })
            .collect();
        let gb = groebner_module(&tagged, ModOrder::ElimTag(ambient_rank));
        TaggedBasis {
            rank: ambient_rank,
            count,
            gb,
        }
    }

    /// Generators of the syzygy module of the tagged vectors, as elements
    /// of `A^count`.
    pub fn syzygies(&self) -> Vec<ModVec> {
        self.gb
            .iter()
            .filter(|g| (0..self.rank).all(|c| g.component(c).is_zero()))
            .map(|g| g.slice(self.rank, self.rank + self.count))
            .collect()
    }

    /// Writes `target` as a combination of the vectors, or `None` when it
    /// is not in the submodule they generate.
    pub fn lift(&self, target: &ModVec) -> Option<Vec<Polynomial>> {
        let ring = target.ring().clone();
        let mut comps = target.components().to_vec();
        comps.extend((0..self.count).map(|_| Polynomial::zero(&ring)));
        let padded = ModVec::from_components(&ring, comps);
        let nf = normal_form_mod(&padded, &self.gb, ModOrder::ElimTag(self.rank));
        if (0..self.rank).any(|c| !nf.component(c).is_zero()) {
            return None;
        }
        Some(
            (0..self.count)
                .map(|j| nf.component(self.rank + j).neg())
                .collect(),
        )
    }
}

/// Syzygies of a list of vectors in `A^rank`.
pub fn syzygies(ambient_rank: usize, vectors: &[ModVec]) -> Vec<ModVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    TaggedBasis::new(ambient_rank, vectors).syzygies()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(32003, &["x", "y"]).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring2();
        let v1 = ModVec::injected(&r, 1, 0, p(&r, "x^2"));
        let v2 = ModVec::injected(&r, 1, 0, p(&r, "x*y"));
        let syz = syzygies(1, &[v1.clone(), v2.clone()]);
        assert_eq!(syz.len(), 1);
        // check it really is a syzygy
        let s = &syz[0];
        let combo = v1
            .mul_poly(s.component(0))
            .add(&v2.mul_poly(s.component(1)));
        assert!(combo.is_zero());
    }

    #[test]
    fn lift_membership() {
        let r = ring2();
        let g1 = ModVec::injected(&r, 1, 0, p(&r, "x^2"));
        let g2 = ModVec::injected(&r, 1, 0, p(&r, "y^3"));
        let tb = TaggedBasis::new(1, &[g1.clone(), g2.clone()]);
        let target = ModVec::injected(&r, 1, 0, p(&r, "x^3 + x*y^3"));
        let coeffs = tb.lift(&target).unwrap();
        let rebuilt = g1.mul_poly(&coeffs[0]).add(&g2.mul_poly(&coeffs[1]));
        assert_eq!(rebuilt, target);
        let outside = ModVec::injected(&r, 1, 0, p(&r, "x"));
        assert!(tb.lift(&outside).is_none());
    }

    #[test]
    fn module_gb_interreduced() {
        let r = ring2();
        let gens = vec![
            ModVec::from_components(&r, vec![p(&r, "x"), p(&r, "y")]),
            ModVec::from_components(&r, vec![p(&r, "y"), p(&r, "x")]),
        ];
        let gb = groebner_module(&gens, ModOrder::Pot);
        // normal form of a combination must vanish
        let combo = gens[0].mul_poly(&p(&r, "y^2")).add(&gens[1].mul_poly(&p(&r, "x")));
        assert!(normal_form_mod(&combo, &gb, ModOrder::Pot).is_zero());
        // and of something outside must not
        let out = ModVec::from_components(&r, vec![p(&r, "1"), Polynomial::zero(&r)]);
        assert!(!normal_form_mod(&out, &gb, ModOrder::Pot).is_zero());
    }
}
