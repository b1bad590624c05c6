//! Ideals with lazily cached reduced Gröbner bases.
//!
//! All ideal arithmetic flows through this type. Equality is decided by
//! reduced-basis identity, never by generator-set heuristics. Intersections
//! and colons are computed by syzygy extraction, so no auxiliary variables
//! or elimination orders are ever introduced.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::KernelError;
use crate::groebner::{groebner_basis, normal_form};
use crate::modvec::{syzygies, ModVec};
use crate::monomial::{monomials_of_degree, standard_monomials_for_leads, Monomial};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
    std: OnceLock<Result<Arc<Vec<Monomial>>, KernelError>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        let std = OnceLock::new();
        if let Some(s) = self.std.get() {
            let _ = std.set(s.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
            std,
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
            std: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Ideal {
        let gens = (0..ring.num_vars())
            .map(|i| Polynomial::var(ring, i))
            .collect();
        Ideal::new(ring, gens)
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Ideal, KernelError> {
        let gens: Result<Vec<Polynomial>, KernelError> =
            gens.iter().map(|s| Polynomial::parse(ring, s)).collect();
        Ok(Ideal::new(ring, gens?))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed once and shared thereafter.
    pub fn groebner(&self) -> &[Polynomial] {
        self.gb
            .get_or_init(|| Arc::new(groebner_basis(&self.gens)))
            .as_slice()
    }

    /// Canonical normal form of `f` modulo the ideal.
    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.groebner())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.nf(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality via reduced-basis identity.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.groebner() == other.groebner()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner().iter().any(|g| g.is_unit())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.groebner().iter().all(|g| g.is_homogeneous())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        // multiply reduced bases to keep generator counts small
        let a = self.groebner();
        let b = other.groebner();
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for f in a {
            for g in b {
                gens.push(f.mul(g));
            }
        }
        if gens.is_empty() {
            return Ideal::zero(&self.ring);
        }
        Ideal::new(&self.ring, groebner_basis(&gens))
    }

    pub fn multiply_poly(&self, f: &Polynomial) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.mul(f)).collect())
    }

    pub fn power(&self, k: i64) -> Result<Ideal, KernelError> {
        if k < 0 {
            return Err(KernelError::NegativePower);
        }
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// `self ∩ other`, from syzygies of `[u+v, a_s u, b_t v]` in `A^2`:
    /// the coefficient on `u+v` ranges exactly over the intersection.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_unit_ideal() {
            return other.clone();
        }
        if other.is_unit_ideal() {
            return self.clone();
        }
        let ring = &self.ring;
        let mut vectors = Vec::with_capacity(1 + self.gens.len() + other.gens.len());
        vectors.push(ModVec::from_components(
            ring,
            vec![Polynomial::one(ring), Polynomial::one(ring)],
        ));
        for a in self.groebner() {
            vectors.push(ModVec::injected(ring, 2, 0, a.clone()));
        }
        for b in other.groebner() {
            vectors.push(ModVec::injected(ring, 2, 1, b.clone()));
        }
        let gens: Vec<Polynomial> = syzygies(2, &vectors)
            .into_iter()
            .map(|s| s.component(0).neg())
            .filter(|f| !f.is_zero())
            .collect();
        Ideal::new(ring, groebner_basis(&gens))
    }

    /// `(self : f) = { g | g f ∈ self }`, via `(self ∩ (f)) / f`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal, KernelError> {
        if f.is_zero() {
            return Err(KernelError::ZeroDivisor);
        }
        if self.is_unit_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()]);
        let meet = self.intersect(&principal);
        let gens: Vec<Polynomial> = meet
            .groebner()
            .iter()
            .map(|g| {
                g.div_exact(f)
                    .expect("element of the intersection must be divisible")
            })
            .collect();
        Ok(Ideal::new(&self.ring, groebner_basis(&gens)))
    }

    /// `(self : other) = ∩_g (self : g)` over the generators of `other`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal, KernelError> {
        let mut acc: Option<Ideal> = None;
        for g in other.groebner() {
            let c = self.colon_poly(g)?;
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.intersect(&c),
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `(self : other^∞)`, iterating the colon until stable.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal, KernelError> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_ideal(other)?;
            if next.equals(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_cofinite(&self) -> bool {
        self.std_monomials().is_ok()
    }

    /// The standard monomials (those outside the lead ideal), sorted
    /// ascending; a K-basis of the quotient when it is finite. Cached.
    pub fn std_monomials(&self) -> Result<Arc<Vec<Monomial>>, KernelError> {
        self.std
            .get_or_init(|| {
                let leads = self.leading_monomials();
                let mut out = standard_monomials_for_leads(&leads, self.ring.num_vars())
                    .ok_or(KernelError::NotCofinite)?;
                out.sort_by(|a, b| a.cmp_grevlex(b));
                Ok(Arc::new(out))
            })
            .clone()
    }

    /// `ℓ(A/self)` = number of standard monomials, when finite.
    pub fn colength(&self) -> Result<usize, KernelError> {
        Ok(self.std_monomials()?.len())
    }

    /// Length of the localization at the maximal ideal, for ideals whose
    /// quotient is Artinian (possibly supported away from the origin as
    /// well): `ℓ(A/(self + m^T))` is nondecreasing in `T` and one stable
    /// step certifies the limit, which is exactly the local length.
    pub fn local_colength(&self) -> Result<usize, KernelError> {
        let m = Ideal::maximal(&self.ring);
        let mut power = m.clone();
        let mut prev: Option<usize> = None;
        for _ in 0..256 {
            let c = self.sum(&power).colength()?;
            if prev == Some(c) {
                return Ok(c);
            }
            prev = Some(c);
            power = power.product(&m);
        }
        Err(KernelError::NotCofinite)
    }

    /// K-dimension of the degree-`n` piece of `A/self` (standard-monomial
    /// count in degree `n`); meaningful for homogeneous ideals.
    pub fn graded_dim(&self, n: u32) -> usize {
        let leads = self.leading_monomials();
        monomials_of_degree(self.ring.num_vars(), n)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count()
    }

    /// Smallest `t` with `m^t ⊆ self`; the quotient must be cofinite with
    /// the maximal ideal as radical.
    pub fn power_containment_bound(&self) -> Result<u32, KernelError> {
        let std = self.std_monomials()?;
        let start = std.iter().map(|m| m.degree()).max().map_or(0, |d| d + 1);
        let mut t = start;
        loop {
            let all_in = monomials_of_degree(self.ring.num_vars(), t)
                .into_iter()
                .all(|m| self.contains(&Polynomial::monomial(&self.ring, m, 1)));
            if all_in {
                return Ok(t);
            }
            t += 1;
            assert!(
                t < start + 4 * (start + 2),
                "quotient is cofinite but not supported at the maximal ideal"
            );
        }
    }

    /// A subset of the generators that minimally generates, selected by
    /// rank in `I/mI`. Degrees are intrinsic when the input is homogeneous.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>, KernelError> {
        if self.gens.is_empty() {
            return Ok(Vec::new());
        }
        let mi = Ideal::maximal(&self.ring).product(self);
        let coords = mi.std_monomials()?;
        let mut span = crate::linalg::RowSpan::new(&self.ring, coords.len());
        let mut out = Vec::new();
        for g in &self.gens {
            let v = poly_coords(&mi.nf(g), &coords);
            if span.insert(v) {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    /// Common degree of the minimal generators of a homogeneous ideal, or
    /// `None` when the degrees are mixed or the ideal is not homogeneous.
    pub fn equigenerated_degree(&self) -> Result<Option<u32>, KernelError> {
        if !self.is_homogeneous() || self.gens.iter().any(|g| !g.is_homogeneous()) {
            return Ok(None);
        }
        let mins = self.minimal_generators()?;
        let mut deg: Option<u32> = None;
        for g in &mins {
            let d = g.degree().unwrap();
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(deg)
    }
}

/// Coordinates of a (reduced) polynomial over an ordered monomial basis.
pub fn poly_coords(f: &Polynomial, basis: &[Monomial]) -> Vec<u64> {
    let mut v = vec![0u64; basis.len()];
    for (m, c) in f.terms() {
        let idx = basis
            .iter()
            .position(|b| b == m)
            .expect("normal form must be supported on the standard monomials");
        v[idx] = *c;
    }
    v
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
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
    fn colon_examples() {
        let r1 = PolyRing::new(32003, &["x"]).unwrap();
        let j = ideal(&r1, &["x^2"]);
        let c = j.colon_poly(&Polynomial::parse(&r1, "x").unwrap()).unwrap();
        assert!(c.equals(&ideal(&r1, &["x"])));

        let r = ring2();
        let j = ideal(&r, &["x^2", "x*y"]);
        let c = j.colon_poly(&Polynomial::parse(&r, "x").unwrap()).unwrap();
        assert!(c.equals(&Ideal::maximal(&r)));

        let id = j.colon_poly(&Polynomial::one(&r)).unwrap();
        assert!(id.equals(&j));
    }

    #[test]
    fn colon_product_lands_inside() {
        let r = ring2();
        let j = ideal(&r, &["x^3 + y^2", "x*y^2"]);
        let f = Polynomial::parse(&r, "x + y").unwrap();
        let c = j.colon_poly(&f).unwrap();
        for g in c.generators() {
            assert!(j.contains(&g.mul(&f)));
        }
    }

    #[test]
    fn intersection_and_power() {
        let r = ring2();
        let ix = ideal(&r, &["x"]);
        let iy = ideal(&r, &["y"]);
        assert!(ix.intersect(&iy).equals(&ideal(&r, &["x*y"])));

        let m = Ideal::maximal(&r);
        assert!(m
            .power(2)
            .unwrap()
            .equals(&ideal(&r, &["x^2", "x*y", "y^2"])));
    }

    #[test]
    fn product_vs_power_consistency() {
        let r = ring2();
        for gens in [&["x^2", "y^2"][..], &["x^2", "x*y", "y^3"][..]] {
            let j = ideal(&r, gens);
            for k in 1..4i64 {
                let a = j.power(k).unwrap().product(&j);
                let b = j.power(k + 1).unwrap();
                assert!(a.equals(&b));
            }
        }
        assert!(ideal(&r, &["x"]).power(-1).is_err());
    }

    #[test]
    fn saturation_strips_finite_part() {
        let r = ring2();
        let j = ideal(&r, &["x^2", "x*y"]);
        let s = j.saturation(&Ideal::maximal(&r)).unwrap();
        assert!(s.equals(&ideal(&r, &["x"])));
    }

    #[test]
    fn colength_examples() {
        let r = ring2();
        assert_eq!(Ideal::maximal(&r).colength().unwrap(), 1);
        assert_eq!(ideal(&r, &["x^2", "y^2"]).colength().unwrap(), 4);
        assert_eq!(
            ideal(&r, &["x"]).colength(),
            Err(KernelError::NotCofinite)
        );
    }

    #[test]
    fn graded_dims() {
        let r = ring2();
        let zero = Ideal::zero(&r);
        assert_eq!(zero.graded_dim(3), 4);
        let m2 = ideal(&r, &["x^2", "x*y", "y^2"]);
        assert_eq!(m2.graded_dim(1), 2);
        assert_eq!(m2.graded_dim(2), 0);
    }

    #[test]
    fn colength_is_sum_of_graded_dims() {
        let r = ring2();
        for gens in [&["x^2", "y^2"][..], &["x^3", "x*y", "y^4"][..]] {
            let j = ideal(&r, gens);
            let total = j.colength().unwrap();
            let sum: usize = (0..32).map(|n| j.graded_dim(n)).sum();
            assert_eq!(total, sum);
        }
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "y^2", "x^2 + y^2", "x^3"]).unwrap();
        let mins = j.minimal_generators().unwrap();
        assert_eq!(mins.len(), 2);
        assert_eq!(j.equigenerated_degree().unwrap(), Some(2));
        let mixed = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert_eq!(mixed.equigenerated_degree().unwrap(), None);
    }

    #[test]
    fn power_containment() {
        let r = ring2();
        assert_eq!(
            ideal(&r, &["x^2", "y^2"]).power_containment_bound().unwrap(),
            3
        );
        assert_eq!(Ideal::maximal(&r).power_containment_bound().unwrap(), 1);
    }
}
