//! Good filtrations of cyclic modules `M = A/J`.
//!
//! A filtration is stored as a chain of ideals `V_0 ⊇ V_1 ⊇ …` with
//! `V_k ⊇ J` representing `M_k = V_k/J`, explicit up to a tail index `c`
//! and continued `I`-adically after it: `M_{c+j} = I^j M_c`. Filtration
//! ideals may be non-homogeneous; every length below is a colength call,
//! which does not need homogeneity.

use std::sync::Arc;
use std::sync::Mutex;

use crate::error::{FiltrationError, KernelError};
use crate::ideal::Ideal;
use crate::module::subquotient_of_cyclic;
use crate::numeric::stabilized_degree;
use crate::ring::PolyRing;

#[derive(Debug)]
pub struct GoodFiltration {
    ring: Arc<PolyRing>,
    base: Ideal,
    primary: Ideal,
    /// `V_k` for `k = 0..=tail`, with `V_0 = (1)`.
    reps: Vec<Arc<Ideal>>,
    tail: usize,
    r: usize,
    /// lazily extended representatives past the tail
    ext: Mutex<Vec<Arc<Ideal>>>,
}

impl Clone for GoodFiltration {
    fn clone(&self) -> Self {
        GoodFiltration {
            ring: self.ring.clone(),
            base: self.base.clone(),
            primary: self.primary.clone(),
            reps: self.reps.clone(),
            tail: self.tail,
            r: self.r,
            ext: Mutex::new(self.ext.lock().unwrap().clone()),
        }
    }
}

impl GoodFiltration {
    /// Validates a chain `U_0, …, U_c` of ideals as a good `I`-filtration
    /// of `A/J`, where `M_k` is represented by `(U_k + J)/J` and the chain
    /// continues `I`-adically past `c`.
    pub fn validate(
        chain: &[Ideal],
        i: &Ideal,
        j: &Ideal,
    ) -> Result<GoodFiltration, FiltrationError> {
        if i.colength().is_err() {
            return Err(FiltrationError::NotMPrimary);
        }
        if chain.is_empty() {
            return Err(FiltrationError::NotGoodFiltration(0));
        }
        let ring = i.ring().clone();
        let reps: Vec<Arc<Ideal>> = chain.iter().map(|u| Arc::new(u.sum(j))).collect();
        if !reps[0].is_unit_ideal() {
            return Err(FiltrationError::NotGoodFiltration(0));
        }
        let tail = reps.len() - 1;
        for k in 0..tail {
            // descent
            if !reps[k].contains_ideal(&reps[k + 1]) {
                return Err(FiltrationError::NotGoodFiltration(k));
            }
            // the I-filtration condition I·M_k ⊆ M_{k+1}
            let step = i.product(&reps[k]).sum(j);
            if !reps[k + 1].contains_ideal(&step) {
                return Err(FiltrationError::NotGoodFiltration(k));
            }
        }
        let r = compute_reduction_index(&reps, i, j, tail);
        Ok(GoodFiltration {
            ring,
            base: j.clone(),
            primary: i.clone(),
            reps,
            tail,
            r,
            ext: Mutex::new(Vec::new()),
        })
    }

    /// The `I`-adic filtration `{I^n M}` of `A/J`.
    pub fn adic(i: &Ideal, j: &Ideal) -> Result<GoodFiltration, FiltrationError> {
        GoodFiltration::validate(&[Ideal::unit(i.ring())], i, j)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn primary(&self) -> &Ideal {
        &self.primary
    }

    pub fn tail_index(&self) -> usize {
        self.tail
    }

    /// `r(𝔉)`: least `t` with `M_{k+1} = I·M_k` for all `k ≥ t`.
    pub fn reduction_index(&self) -> usize {
        self.r
    }

    /// The ideal `V_n` with `M_n = V_n/J`.
    pub fn rep(&self, n: usize) -> Arc<Ideal> {
        if n <= self.tail {
            return self.reps[n].clone();
        }
        let mut ext = self.ext.lock().unwrap();
        while ext.len() < n - self.tail {
            let prev = if ext.is_empty() {
                &self.reps[self.tail]
            } else {
                ext.last().unwrap()
            };
            let next = self.primary.product(prev).sum(&self.base);
            ext.push(Arc::new(next));
        }
        ext[n - self.tail - 1].clone()
    }

    /// `H_𝔉(n) = ℓ(M/M_{n+1})`.
    pub fn hilbert_samuel(&self, n: usize) -> Result<usize, KernelError> {
        self.rep(n + 1).colength()
    }

    /// The filtration `M ⊇ qM ⊇ qM_1 ⊇ …`; its reduction index is at most
    /// `r(𝔉) + 1`.
    pub fn scale(&self, q: &Ideal) -> Result<GoodFiltration, FiltrationError> {
        if !q.contains_ideal(&self.primary) || q.is_unit_ideal() {
            return Err(FiltrationError::QDoesNotContainI);
        }
        let mut chain = vec![Ideal::unit(&self.ring)];
        for k in 0..=self.tail {
            chain.push(q.product(&self.reps[k]));
        }
        let scaled = GoodFiltration::validate(&chain, &self.primary, &self.base)?;
        debug_assert!(scaled.reduction_index() <= self.r + 1);
        Ok(scaled)
    }

    /// The filtration `{(M_n + N)/N}` of `M/N`, for `J ⊆ N`.
    pub fn quotient(&self, n_ideal: &Ideal) -> Result<GoodFiltration, FiltrationError> {
        if !n_ideal.contains_ideal(&self.base) {
            return Err(FiltrationError::BaseNotContained);
        }
        let chain: Vec<Ideal> = self.reps.iter().map(|v| (**v).clone()).collect();
        let out = GoodFiltration::validate(&chain, &self.primary, n_ideal)?;
        debug_assert!(out.reduction_index() <= self.r);
        Ok(out)
    }
}

fn compute_reduction_index(reps: &[Arc<Ideal>], i: &Ideal, j: &Ideal, tail: usize) -> usize {
    let mut r = 0;
    for k in 0..tail {
        let step = i.product(&reps[k]).sum(j);
        if !step.equals(&reps[k + 1]) {
            r = k + 1;
        }
    }
    r
}

/// Derived data of the cyclic module `M = A/J`: dimension, the lift of
/// `H⁰_m(M)` and whether the depth is positive.
#[derive(Debug, Clone)]
pub struct ModuleSpec {
    pub base: Ideal,
    pub dim: usize,
    pub depth_positive: bool,
    pub saturation: Ideal,
    pub h0_length: usize,
}

/// Computes [`ModuleSpec`] for homogeneous proper `J`. The dimension comes
/// from the degree of the Hilbert polynomial, the saturation from
/// `(J : m^∞)`, and `ℓ(H⁰)` from an exact subquotient presentation.
pub fn module_spec(j: &Ideal) -> Result<ModuleSpec, KernelError> {
    if !j.is_homogeneous() || j.generators().iter().any(|g| !g.is_homogeneous()) {
        return Err(KernelError::NotHomogeneous);
    }
    if j.is_unit_ideal() {
        return Err(KernelError::NotHomogeneous);
    }
    let dim = cyclic_dimension(j)?;
    let m = Ideal::maximal(j.ring());
    let saturation = j.saturation(&m)?;
    let depth_positive = saturation.equals(j) && dim > 0;
    let h0_length = if saturation.equals(j) {
        0
    } else {
        subquotient_of_cyclic(saturation.groebner(), j).colength()?
    };
    Ok(ModuleSpec {
        base: j.clone(),
        dim,
        depth_positive,
        saturation,
        h0_length,
    })
}

/// Krull dimension of `A/J` for homogeneous `J`: one more than the degree
/// of the Hilbert polynomial, zero when the quotient is finite.
pub fn cyclic_dimension(j: &Ideal) -> Result<usize, KernelError> {
    if j.is_cofinite() {
        return Ok(0);
    }
    let mut top = 8usize;
    loop {
        let values: Vec<i64> = (0..=top).map(|t| j.graded_dim(t as u32) as i64).collect();
        if let Some((delta, _)) = stabilized_degree(&values) {
            return Ok(delta + 1);
        }
        top += 8;
        if top > 80 {
            return Err(KernelError::NotCofinite);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(32003, &["x", "y"]).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    #[test]
    fn adic_chain_is_valid_with_r_zero() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let j = Ideal::zero(&r);
        let f = GoodFiltration::adic(&i, &j).unwrap();
        assert_eq!(f.reduction_index(), 0);
        // explicit chain {A, I, I^2, I^3} validates the same way
        let chain = vec![
            Ideal::unit(&r),
            i.clone(),
            i.power(2).unwrap(),
            i.power(3).unwrap(),
        ];
        let g = GoodFiltration::validate(&chain, &i, &j).unwrap();
        assert_eq!(g.reduction_index(), 0);
        assert!(g.rep(5).equals(&f.rep(5)));
    }

    #[test]
    fn scaled_chain_has_r_one() {
        // A ⊃ m ⊃ mI ⊃ mI^2 with I = (x^2, y^2)
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let j = Ideal::zero(&r);
        let m = Ideal::maximal(&r);
        let f = GoodFiltration::adic(&i, &j).unwrap().scale(&m).unwrap();
        assert_eq!(f.reduction_index(), 1);
        assert!(f.rep(1).equals(&m));
        assert!(f.rep(2).equals(&m.product(&i)));
        // scaling by something not containing I is rejected
        let qx = ideal(&r, &["x"]);
        assert_eq!(
            GoodFiltration::adic(&i, &j).unwrap().scale(&qx).unwrap_err(),
            FiltrationError::QDoesNotContainI
        );
    }

    #[test]
    fn bad_chain_is_pinpointed() {
        // {A, m^2} with I = m: I·M_0 = m is not inside m^2
        let r = ring2();
        let m = Ideal::maximal(&r);
        let chain = vec![Ideal::unit(&r), m.power(2).unwrap()];
        assert_eq!(
            GoodFiltration::validate(&chain, &m, &Ideal::zero(&r)).unwrap_err(),
            FiltrationError::NotGoodFiltration(0)
        );
    }

    #[test]
    fn non_m_primary_is_rejected() {
        let r = ring2();
        let i = ideal(&r, &["x"]);
        assert_eq!(
            GoodFiltration::adic(&i, &Ideal::zero(&r)).unwrap_err(),
            FiltrationError::NotMPrimary
        );
    }

    #[test]
    fn filtration_condition_holds_at_every_level() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let f = GoodFiltration::adic(&i, &Ideal::zero(&r))
            .unwrap()
            .scale(&Ideal::maximal(&r))
            .unwrap();
        for k in 0..8 {
            let step = i.product(&f.rep(k)).sum(f.base());
            assert!(f.rep(k + 1).contains_ideal(&step));
        }
        // tail rule: M_{tail+j} = I^j M_tail
        let c = f.tail_index();
        for jj in 1..4 {
            let lhs = f.rep(c + jj);
            let rhs = i
                .power(jj as i64)
                .unwrap()
                .product(&f.rep(c))
                .sum(f.base());
            assert!(lhs.equals(&rhs));
        }
    }

    #[test]
    fn quotient_filtration_by_base_is_identity() {
        let r = ring2();
        let j = ideal(&r, &["x^2", "x*y"]);
        let m = Ideal::maximal(&r);
        let f = GoodFiltration::adic(&m, &j).unwrap();
        let g = f.quotient(&j).unwrap();
        for k in 0..5 {
            assert!(f.rep(k).equals(&g.rep(k)));
        }
        // m-adic on K[x,y] quotiented by (x) is the m-adic filtration of K[y]
        let f2 = GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap();
        let nx = ideal(&r, &["x"]);
        let g2 = f2.quotient(&nx).unwrap();
        assert!(g2.rep(2).equals(&m.power(2).unwrap().sum(&nx)));
        let j2 = ideal(&r, &["x^3"]);
        assert_eq!(
            GoodFiltration::adic(&m, &j2)
                .unwrap()
                .quotient(&ideal(&r, &["y"]))
                .unwrap_err(),
            FiltrationError::BaseNotContained
        );
    }

    #[test]
    fn hilbert_samuel_values() {
        let r1 = PolyRing::new(32003, &["x"]).unwrap();
        let i = Ideal::parse(&r1, &["x^2"]).unwrap();
        let f = GoodFiltration::adic(&i, &Ideal::zero(&r1)).unwrap();
        assert_eq!(f.hilbert_samuel(3).unwrap(), 8);

        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap();
        assert_eq!(f.hilbert_samuel(2).unwrap(), 6);

        let i = ideal(&r, &["x^2", "y^2"]);
        let f = GoodFiltration::adic(&i, &Ideal::zero(&r))
            .unwrap()
            .scale(&m)
            .unwrap();
        assert_eq!(f.rep(1).colength().unwrap(), 1);
    }

    #[test]
    fn module_spec_examples() {
        let r = ring2();
        let s = module_spec(&Ideal::zero(&r)).unwrap();
        assert_eq!(s.dim, 2);
        assert!(s.depth_positive);
        assert_eq!(s.h0_length, 0);

        let s = module_spec(&ideal(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(s.dim, 1);
        assert!(!s.depth_positive);
        assert!(s.saturation.equals(&ideal(&r, &["x"])));
        assert_eq!(s.h0_length, 1);

        let s = module_spec(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap();
        assert_eq!(s.dim, 0);

        assert!(module_spec(&ideal(&r, &["x^2 + y"])).is_err());
    }
}
