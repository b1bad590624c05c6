//! Finitely presented graded modules over the polynomial ring.
//!
//! A module is a free module with degree shifts modulo a submodule of
//! relations, with a cached position-over-term Gröbner basis. Lengths and
//! graded dimensions are standard-monomial counts, exactly as for ideals
//! but componentwise.

use std::sync::{Arc, OnceLock};

use crate::error::KernelError;
use crate::ideal::Ideal;
use crate::linalg::RowSpan;
use crate::modvec::{groebner_module, normal_form_mod, syzygies, ModOrder, ModVec};
use crate::monomial::{monomials_of_degree, standard_monomials_for_leads, Monomial};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug)]
pub struct PresentedModule {
    ring: Arc<PolyRing>,
    rank: usize,
    shifts: Vec<i64>,
    relations: Vec<ModVec>,
    gb: OnceLock<Arc<Vec<ModVec>>>,
}

impl Clone for PresentedModule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        PresentedModule {
            ring: self.ring.clone(),
            rank: self.rank,
            shifts: self.shifts.clone(),
            relations: self.relations.clone(),
            gb,
        }
    }
}

impl PresentedModule {
    pub fn new(
        ring: &Arc<PolyRing>,
        shifts: Vec<i64>,
        relations: Vec<ModVec>,
    ) -> PresentedModule {
        let rank = shifts.len();
        let relations: Vec<ModVec> = relations.into_iter().filter(|v| !v.is_zero()).collect();
        for r in &relations {
            assert_eq!(r.rank(), rank, "relation rank mismatch");
        }
        PresentedModule {
            ring: ring.clone(),
            rank,
            shifts,
            relations,
            gb: OnceLock::new(),
        }
    }

    /// The cyclic module `A/J`.
    pub fn cyclic(j: &Ideal) -> PresentedModule {
        let ring = j.ring();
        let relations = j
            .generators()
            .iter()
            .map(|g| ModVec::injected(ring, 1, 0, g.clone()))
            .collect();
        PresentedModule::new(ring, vec![0], relations)
    }

    pub fn free(ring: &Arc<PolyRing>, shifts: Vec<i64>) -> PresentedModule {
        PresentedModule::new(ring, shifts, Vec::new())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn relations(&self) -> &[ModVec] {
        &self.relations
    }

    /// All relations homogeneous with respect to the shifts.
    pub fn is_graded(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.degree_homogeneous(&self.shifts).is_some())
    }

    pub fn gb(&self) -> &[ModVec] {
        self.gb
            .get_or_init(|| Arc::new(groebner_module(&self.relations, ModOrder::Pot)))
            .as_slice()
    }

    pub fn nf(&self, v: &ModVec) -> ModVec {
        normal_form_mod(v, self.gb(), ModOrder::Pot)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.nf(v).is_zero()
    }

    /// The zero module: every free generator is a relation image.
    pub fn is_zero_module(&self) -> bool {
        (0..self.rank).all(|c| {
            self.contains(&ModVec::injected(
                &self.ring,
                self.rank,
                c,
                Polynomial::one(&self.ring),
            ))
        })
    }

    fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.gb()
            .iter()
            .map(|g| {
                let (c, m, _) = g.leading_term(ModOrder::Pot).unwrap();
                (c, m)
            })
            .collect()
    }

    /// K-dimension of the degree-`n` piece (standard module monomials of
    /// that degree); meaningful for graded presentations.
    pub fn graded_dim(&self, n: i64) -> usize {
        let leads = self.lead_terms();
        let mut count = 0;
        for c in 0..self.rank {
            let d = n - self.shifts[c];
            if d < 0 {
                continue;
            }
            count += monomials_of_degree(self.ring.num_vars(), d as u32)
                .into_iter()
                .filter(|m| {
                    !leads
                        .iter()
                        .any(|(lc, lm)| *lc == c && lm.divides(m))
                })
                .count();
        }
        count
    }

    /// Standard module monomials `(component, monomial)` when finitely many.
    pub fn std_module_monomials(&self) -> Result<Vec<(usize, Monomial)>, KernelError> {
        let leads = self.lead_terms();
        let n = self.ring.num_vars();
        let mut out = Vec::new();
        for c in 0..self.rank {
            let comp_leads: Vec<Monomial> = leads
                .iter()
                .filter(|(lc, _)| *lc == c)
                .map(|(_, m)| m.clone())
                .collect();
            let std = standard_monomials_for_leads(&comp_leads, n)
                .ok_or(KernelError::NotCofinite)?;
            for m in std {
                out.push((c, m));
            }
        }
        out.sort_by(|(c1, m1), (c2, m2)| c1.cmp(c2).then(m1.cmp_grevlex(m2)));
        Ok(out)
    }

    /// Length of the module when finite.
    pub fn colength(&self) -> Result<usize, KernelError> {
        Ok(self.std_module_monomials()?.len())
    }

    /// Presents `M / I M`: the relations plus `f e_c` for generators `f`
    /// of `I` and every component `c`.
    pub fn quotient_by_ideal(&self, i: &Ideal) -> PresentedModule {
        let mut relations = self.relations.clone();
        for f in i.groebner() {
            for c in 0..self.rank {
                relations.push(ModVec::injected(&self.ring, self.rank, c, f.clone()));
            }
        }
        PresentedModule::new(&self.ring, self.shifts.clone(), relations)
    }

    /// Cancels unit entries in relations against free generators until the
    /// relations land inside `m` times the free module. The resulting rank
    /// is the minimal number of generators.
    pub fn minimalized(&self) -> PresentedModule {
        let mut shifts = self.shifts.clone();
        let mut rels: Vec<ModVec> = self.relations.clone();
        'outer: loop {
            for (ri, r) in rels.iter().enumerate() {
                for c in 0..shifts.len() {
                    if r.component(c).is_unit() {
                        let u = r.component(c).leading_coeff().unwrap();
                        let uinv = self.ring.inv(u);
                        let pivot = r.clone();
                        let mut next: Vec<ModVec> = Vec::with_capacity(rels.len() - 1);
                        for (wi, w) in rels.iter().enumerate() {
                            if wi == ri {
                                continue;
                            }
                            let factor = w.component(c).scale(uinv);
                            let reduced = w.sub(&pivot.mul_poly(&factor));
                            debug_assert!(reduced.component(c).is_zero());
                            next.push(reduced);
                        }
                        // drop component c everywhere
                        shifts.remove(c);
                        let rank = shifts.len();
                        let rebuilt: Vec<ModVec> = next
                            .into_iter()
                            .map(|w| {
                                let mut comps = w.components().to_vec();
                                comps.remove(c);
                                ModVec::from_components(&self.ring, comps)
                            })
                            .filter(|w| !w.is_zero())
                            .collect();
                        rels = rebuilt;
                        let _ = rank;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        PresentedModule::new(&self.ring, shifts, rels)
    }
}

/// Coordinate basis of the degree-`n` piece of a free module with shifts:
/// pairs `(component, monomial)` sorted canonically.
pub fn degree_basis(ring: &Arc<PolyRing>, shifts: &[i64], n: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (c, s) in shifts.iter().enumerate() {
        let d = n - s;
        if d < 0 {
            continue;
        }
        for m in monomials_of_degree(ring.num_vars(), d as u32) {
            out.push((c, m));
        }
    }
    out
}

/// Coordinates of a homogeneous vector over `degree_basis` of its degree.
pub fn modvec_coords(v: &ModVec, basis: &[(usize, Monomial)]) -> Vec<u64> {
    let mut out = vec![0u64; basis.len()];
    for (c, p) in v.components().iter().enumerate() {
        for (m, k) in p.terms() {
            let idx = basis
                .iter()
                .position(|(bc, bm)| *bc == c && bm == m)
                .expect("vector not supported on the degree basis");
            out[idx] = *k;
        }
    }
    out
}

/// Selects a minimal homogeneous generating subset of the submodule
/// generated by `vectors`, by rank growth in ascending degree. All vectors
/// must be homogeneous for the shifts.
pub fn minimal_generating_subset(
    ring: &Arc<PolyRing>,
    shifts: &[i64],
    vectors: &[ModVec],
) -> Vec<ModVec> {
    let mut tagged: Vec<(i64, usize)> = vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            let d = v
                .degree_homogeneous(shifts)
                .expect("minimal generator selection needs homogeneous vectors");
            (d, i)
        })
        .collect();
    tagged.sort();
    let mut kept: Vec<ModVec> = Vec::new();
    let mut kept_degs: Vec<i64> = Vec::new();
    let mut idx = 0;
    while idx < tagged.len() {
        let degree = tagged[idx].0;
        let basis = degree_basis(ring, shifts, degree);
        let mut span = RowSpan::new(ring, basis.len());
        // all multiples of already-kept lower-degree generators
        for (g, gd) in kept.iter().zip(kept_degs.iter()) {
            let up = degree - gd;
            if up < 0 {
                continue;
            }
            for u in monomials_of_degree(ring.num_vars(), up as u32) {
                let w = g.mul_term(&u, 1);
                span.insert(modvec_coords(&w, &basis));
            }
        }
        while idx < tagged.len() && tagged[idx].0 == degree {
            let v = &vectors[tagged[idx].1];
            if span.insert(modvec_coords(v, &basis)) {
                kept.push(v.clone());
                kept_degs.push(degree);
            }
            idx += 1;
        }
    }
    kept
}

/// Presents the submodule of `A/J` generated by `nums` (the subquotient
/// `(nums + J)/J`): generators map to the images, relations are all tuples
/// `u` with `Σ u_i nums_i ∈ J`.
pub fn subquotient_of_cyclic(nums: &[Polynomial], j: &Ideal) -> PresentedModule {
    let ring = j.ring();
    if nums.is_empty() {
        return PresentedModule::new(ring, Vec::new(), Vec::new());
    }
    let s = nums.len();
    let mut vectors: Vec<ModVec> = nums
        .iter()
        .map(|g| ModVec::injected(ring, 1, 0, g.clone()))
        .collect();
    for g in j.groebner() {
        vectors.push(ModVec::injected(ring, 1, 0, g.clone()));
    }
    let relations: Vec<ModVec> = syzygies(1, &vectors)
        .into_iter()
        .map(|sy| sy.slice(0, s))
        .filter(|v| !v.is_zero())
        .collect();
    let shifts = nums
        .iter()
        .map(|g| g.degree().map_or(0, |d| d as i64))
        .collect();
    PresentedModule::new(ring, shifts, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<PolyRing> {
        crate::ring::PolyRing::new(32003, &["x", "y"]).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn cokernel_graded_dim() {
        // coker of A(-1)^2 -> A by (x, y) is K in degree 0
        let r = ring2();
        let m = PresentedModule::cyclic(&Ideal::maximal(&r));
        assert_eq!(m.graded_dim(0), 1);
        assert_eq!(m.graded_dim(1), 0);
        assert_eq!(m.colength().unwrap(), 1);
    }

    #[test]
    fn module_colength_matches_ideal_colength() {
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let m = PresentedModule::cyclic(&j);
        assert_eq!(m.colength().unwrap(), j.colength().unwrap());
        let free = PresentedModule::free(&r, vec![0]);
        assert_eq!(free.colength(), Err(KernelError::NotCofinite));
    }

    #[test]
    fn zero_module_detection() {
        let r = ring2();
        let m = PresentedModule::new(
            &r,
            vec![0],
            vec![ModVec::injected(&r, 1, 0, Polynomial::one(&r))],
        );
        assert!(m.is_zero_module());
        assert_eq!(m.minimalized().rank(), 0);
    }

    #[test]
    fn minimalize_cancels_units() {
        // A^2 with relation e0 - x e1 is free of rank 1
        let r = ring2();
        let rel = ModVec::from_components(&r, vec![p(&r, "1"), p(&r, "x").neg()]);
        let m = PresentedModule::new(&r, vec![1, 0], vec![rel]);
        let min = m.minimalized();
        assert_eq!(min.rank(), 1);
        assert!(min.relations().is_empty());
    }

    #[test]
    fn minimal_generating_subset_filters() {
        let r = ring2();
        let v1 = ModVec::injected(&r, 1, 0, p(&r, "x^2"));
        let v2 = ModVec::injected(&r, 1, 0, p(&r, "x*y"));
        let v3 = ModVec::injected(&r, 1, 0, p(&r, "x^3 + x^2*y")); // x*(v1) + x*(v2)
        let kept = minimal_generating_subset(&r, &[0], &[v1, v2, v3]);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn subquotient_length_of_socle() {
        // (x)/(x^2, xy) in K[x,y] has length 1
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let h = subquotient_of_cyclic(&[p(&r, "x")], &j);
        assert_eq!(h.colength().unwrap(), 1);
    }

    #[test]
    fn quotient_by_ideal_lengths() {
        let r = ring2();
        let m = PresentedModule::cyclic(&Ideal::zero(&r));
        let m2 = Ideal::maximal(&r).power(2).unwrap();
        assert_eq!(m.quotient_by_ideal(&m2).colength().unwrap(), 3);
    }
}
