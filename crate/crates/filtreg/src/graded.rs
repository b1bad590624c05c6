//! Degreewise vector-space models of associated graded modules and fiber
//! cones, generic element sampling, and filter-regularity tests.
//!
//! A piece in degree `n` is a subquotient `num/den` of the ring: for the
//! associated graded module `num = V_n, den = V_{n+1}`; for a fiber cone
//! `num = V_n, den = q·V_n + J`. Bases are canonical: the reduced row
//! echelon form of the image of `num` over the sorted standard monomials
//! of `A/den`, so all matrices are reproducible bit for bit.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::GradedError;
use crate::filtration::GoodFiltration;
use crate::ideal::{poly_coords, Ideal};
use crate::linalg::{row_kernel, RowSpan};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradedKind {
    /// `G(𝔉) = ⊕ M_n/M_{n+1}`
    AssocGraded,
    /// `F_q(𝔉) = ⊕ M_n/q M_n`
    FiberCone,
    /// `G_I(A)`, the associated graded ring of the ambient `I`-adic filtration
    AmbientG,
}

#[derive(Debug)]
pub struct Piece {
    /// denominator ideal of the subquotient
    pub den: Arc<Ideal>,
    /// standard monomials of `A/den`, ascending grevlex
    pub coords: Arc<Vec<Monomial>>,
    /// RREF basis of the subspace `num/den`
    pub span: RowSpan,
    /// polynomial lifts of the basis rows
    pub lifts: Vec<Polynomial>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.span.rank()
    }
}

#[derive(Debug)]
pub struct GradedPieceModule {
    kind: GradedKind,
    ring: Arc<PolyRing>,
    filtration: Arc<GoodFiltration>,
    q: Option<Ideal>,
    cap: i64,
    pieces: Mutex<Vec<Arc<Piece>>>,
    mats: Mutex<HashMap<(Polynomial, i64), MultMatrix>>,
}

/// Rows indexed by the source piece basis, entries in target coordinates.
pub type MultMatrix = Arc<Vec<Vec<u64>>>;

impl GradedPieceModule {
    /// `G(𝔉)` up to the degree cap (pieces extend lazily below the cap).
    pub fn assoc_graded(f: &Arc<GoodFiltration>, cap: i64) -> GradedPieceModule {
        GradedPieceModule {
            kind: GradedKind::AssocGraded,
            ring: f.ring().clone(),
            filtration: f.clone(),
            q: None,
            cap,
            pieces: Mutex::new(Vec::new()),
            mats: Mutex::new(HashMap::new()),
        }
    }

    /// `G_I(A)` up to the degree cap.
    pub fn ambient(i: &Ideal, cap: i64) -> Result<GradedPieceModule, GradedError> {
        let f = Arc::new(GoodFiltration::adic(i, &Ideal::zero(i.ring()))?);
        Ok(GradedPieceModule {
            kind: GradedKind::AmbientG,
            ring: i.ring().clone(),
            filtration: f,
            q: None,
            cap,
            pieces: Mutex::new(Vec::new()),
            mats: Mutex::new(HashMap::new()),
        })
    }

    /// `F_q(𝔉)`; requires `I ⊆ q` and the standing hypothesis
    /// `M_{n+1} ⊆ q M_n`, validated up to the tail.
    pub fn fiber_cone(
        f: &Arc<GoodFiltration>,
        q: &Ideal,
        cap: i64,
    ) -> Result<GradedPieceModule, GradedError> {
        if !q.contains_ideal(f.primary()) || q.is_unit_ideal() {
            return Err(GradedError::QDoesNotContainI);
        }
        if let Some(n) = fiber_hypothesis_violation(f, q) {
            return Err(GradedError::HypothesisFails(n));
        }
        Ok(GradedPieceModule {
            kind: GradedKind::FiberCone,
            ring: f.ring().clone(),
            filtration: f.clone(),
            q: Some(q.clone()),
            cap,
            pieces: Mutex::new(Vec::new()),
            mats: Mutex::new(HashMap::new()),
        })
    }

    pub fn kind(&self) -> GradedKind {
        self.kind
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn filtration(&self) -> &Arc<GoodFiltration> {
        &self.filtration
    }

    /// Degrees at and beyond which the module is generated over `G_I(A)`
    /// by earlier pieces: the reduction index of the source filtration.
    pub fn generation_degree(&self) -> usize {
        self.filtration.reduction_index()
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    fn num_den(&self, n: usize) -> (Arc<Ideal>, Arc<Ideal>) {
        let num = self.filtration.rep(n);
        let den = match (self.kind, &self.q) {
            (GradedKind::FiberCone, Some(q)) => {
                Arc::new(q.product(&num).sum(self.filtration.base()))
            }
            _ => self.filtration.rep(n + 1),
        };
        (num, den)
    }

    /// The cached piece in degree `n`.
    pub fn piece(&self, n: i64) -> Result<Arc<Piece>, GradedError> {
        if n < 0 {
            return Err(GradedError::CutoffTooSmall(n, self.cap));
        }
        if n > self.cap {
            return Err(GradedError::CutoffTooSmall(n, self.cap));
        }
        {
            let pieces = self.pieces.lock().unwrap();
            if let Some(p) = pieces.get(n as usize) {
                return Ok(p.clone());
            }
        }
        // compute missing pieces outside the lock, in order
        let mut next = {
            let pieces = self.pieces.lock().unwrap();
            pieces.len()
        };
        while next <= n as usize {
            let piece = Arc::new(self.compute_piece(next)?);
            let mut pieces = self.pieces.lock().unwrap();
            if pieces.len() == next {
                pieces.push(piece);
            }
            next = pieces.len();
        }
        let pieces = self.pieces.lock().unwrap();
        Ok(pieces[n as usize].clone())
    }

    pub fn dim(&self, n: i64) -> Result<usize, GradedError> {
        Ok(self.piece(n)?.dim())
    }

    /// The dimension sequence `h_E(0..=top)`.
    pub fn dims(&self, top: i64) -> Result<Vec<usize>, GradedError> {
        (0..=top).map(|n| self.dim(n)).collect()
    }

    fn compute_piece(&self, n: usize) -> Result<Piece, GradedError> {
        let (num, den) = self.num_den(n);
        let coords = den.std_monomials().map_err(GradedError::Kernel)?;
        let expected = coords.len() - num.colength().map_err(GradedError::Kernel)?;
        let mut span = RowSpan::new(&self.ring, coords.len());
        let mut lifts: Vec<Polynomial> = Vec::new();
        if expected > 0 {
            let bound = den.power_containment_bound().map_err(GradedError::Kernel)?;
            let den_homog = den.is_homogeneous();
            let max_std = coords.iter().map(|m| m.degree()).max().unwrap_or(0);
            'outer: for t in 0..bound {
                for g in num.groebner() {
                    if den_homog && g.is_homogeneous() {
                        let d = g.degree().unwrap_or(0) + t;
                        if d > max_std {
                            continue;
                        }
                    }
                    for u in monomials_of_degree(self.ring.num_vars(), t) {
                        let v = den.nf(&g.mul_term(&u, 1));
                        if span.insert(poly_coords(&v, &coords)) && span.rank() == expected {
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(
                span.rank(),
                expected,
                "piece spanning did not reach the colength difference"
            );
            lifts = span
                .basis()
                .iter()
                .map(|row| {
                    let terms: Vec<(Monomial, u64)> = row
                        .iter()
                        .zip(coords.iter())
                        .filter(|(c, _)| **c != 0)
                        .map(|(c, m)| (m.clone(), *c))
                        .collect();
                    Polynomial::from_terms(&self.ring, terms)
                })
                .collect();
        }
        Ok(Piece {
            den,
            coords,
            span,
            lifts,
        })
    }

    /// Matrix of multiplication by `z ∈ I` from piece `n` to piece `n+1`,
    /// rows indexed by the source basis, entries in the target basis
    /// coordinates. Cached per element and degree.
    pub fn mult_matrix(&self, z: &Polynomial, n: i64) -> Result<MultMatrix, GradedError> {
        let key = (z.clone(), n);
        if let Some(m) = self.mats.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let src = self.piece(n)?;
        let dst = self.piece(n + 1)?;
        let mut rows = Vec::with_capacity(src.dim());
        for lift in &src.lifts {
            let image = dst.den.nf(&lift.mul(z));
            let coords = poly_coords(&image, &dst.coords);
            let in_basis = dst
                .span
                .coordinates(&coords)
                .expect("multiplication must land in the next piece");
            rows.push(in_basis);
        }
        let out = Arc::new(rows);
        self.mats.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }
}

/// First `n ≤ tail` with `M_{n+1} ⊄ q M_n`, if any.
pub fn fiber_hypothesis_violation(f: &GoodFiltration, q: &Ideal) -> Option<usize> {
    for n in 0..=f.tail_index() {
        let qm = q.product(&f.rep(n)).sum(f.base());
        if !qm.contains_ideal(&f.rep(n + 1)) {
            return Some(n);
        }
    }
    None
}

/// A sampled element of `I \ mI`, with its provenance.
#[derive(Debug, Clone)]
pub struct GenericElement {
    pub element: Polynomial,
    pub seed: u64,
    pub retries: u32,
}

/// Draws a random K-combination of the minimal generators of `I`, retrying
/// until the result lies outside `mI` and its initial form is
/// filter-regular on every target. Deterministic given the seed.
pub fn sample_generic(
    i: &Ideal,
    targets: &[&GradedPieceModule],
    seed: u64,
    max_retries: u32,
) -> Result<GenericElement, GradedError> {
    let ring = i.ring().clone();
    let mins = i.minimal_generators().map_err(GradedError::Kernel)?;
    let mi = Ideal::maximal(&ring).product(i);
    let mut rng = Rng::new(seed).fork("generic-element");
    for attempt in 0..=max_retries {
        let mut x = Polynomial::zero(&ring);
        for g in &mins {
            let c = rng.below(ring.characteristic());
            x = x.add(&g.scale(c));
        }
        if x.is_zero() || mi.contains(&x) {
            continue;
        }
        let mut ok = true;
        for e in targets {
            let window = filter_window(e);
            let up_to = (e.generation_degree() as i64 + window as i64 + 2).min(e.cap() - 1);
            let (regular, _) = is_filter_regular(&x, e, up_to)?;
            if !regular {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(GenericElement {
                element: x,
                seed,
                retries: attempt,
            });
        }
    }
    Err(GradedError::GenericityFailure(max_retries))
}

/// Vanishing window used to certify filter-regularity empirically:
/// kernels must vanish for `max(4, d+2)` consecutive degrees.
pub fn filter_window(e: &GradedPieceModule) -> usize {
    4usize.max(e.filtration().base().ring().num_vars() + 2)
}

/// Checks `ker(x·: E_n -> E_{n+1}) = 0` on a terminal window of degrees up
/// to `up_to`. Returns the verdict and the largest degree with a nonzero
/// kernel (the witness), `None` when every explored kernel vanished.
pub fn is_filter_regular(
    x: &Polynomial,
    e: &GradedPieceModule,
    up_to: i64,
) -> Result<(bool, Option<i64>), GradedError> {
    let window = filter_window(e) as i64;
    let mut witness: Option<i64> = None;
    for n in 0..=up_to {
        let mat = e.mult_matrix(x, n)?;
        let cols = e.dim(n + 1)?;
        if e.dim(n)? == 0 {
            continue;
        }
        let ker = row_kernel(e.ring(), &mat, cols);
        if !ker.is_empty() {
            witness = Some(n);
        }
    }
    let regular = match witness {
        None => true,
        Some(w) => up_to - w >= window,
    };
    Ok((regular, witness))
}

/// `dim ker(x·: A/V → A/V)` for cofinite `V`, by exact linear algebra on
/// the standard monomials. Equals `ℓ((V : x)/V)`.
pub fn mult_kernel_dim(v: &Ideal, x: &Polynomial) -> Result<usize, GradedError> {
    let coords = v.std_monomials().map_err(GradedError::Kernel)?;
    let rows: Vec<Vec<u64>> = coords
        .iter()
        .map(|m| {
            let image = v.nf(&x.mul_term(m, 1));
            poly_coords(&image, &coords)
        })
        .collect();
    let rank = crate::linalg::rank(v.ring(), &rows, coords.len());
    Ok(coords.len() - rank)
}

/// Degreewise check of the length identity
/// `h_{G(𝔉)}(n) = H_{𝔉/xM}(n) − ℓ((M_{n+1} : x)/M_n)`
/// by exact colength computations on both sides. The colon length is
/// `ℓ(M/M_n) − ℓ(M/(M_{n+1}:x))`, with the latter read off the kernel of
/// multiplication on `A/V_{n+1}`.
pub fn singh_identity_check(
    f: &GoodFiltration,
    x: &Polynomial,
    n: usize,
) -> Result<bool, GradedError> {
    let v_n = f.rep(n);
    let v_n1 = f.rep(n + 1);
    let len_n = v_n.colength().map_err(GradedError::Kernel)? as i64;
    let len_n1 = v_n1.colength().map_err(GradedError::Kernel)? as i64;
    let lhs = len_n1 - len_n;
    let quot = v_n1
        .sum(&Ideal::new(f.ring(), vec![x.clone()]))
        .colength()
        .map_err(GradedError::Kernel)? as i64;
    let ker = mult_kernel_dim(&v_n1, x)? as i64;
    let colon_len = len_n - (len_n1 - ker);
    Ok(lhs == quot - colon_len)
}

/// Shared state for the filter-regular consequence checks: `(J : x)` and
/// `ℓ((0_M : x))` are computed once.
pub struct FilterRegChecker<'a> {
    f: &'a GoodFiltration,
    x: &'a Polynomial,
    j_colon_x: Ideal,
    zero_colon_len: usize,
}

impl<'a> FilterRegChecker<'a> {
    pub fn new(f: &'a GoodFiltration, x: &'a Polynomial) -> Result<Self, GradedError> {
        let j_colon_x = f.base().colon_poly(x).map_err(GradedError::Kernel)?;
        let zero_colon_len = crate::module::subquotient_of_cyclic(j_colon_x.groebner(), f.base())
            .colength()
            .map_err(GradedError::Kernel)?;
        Ok(FilterRegChecker {
            f,
            x,
            j_colon_x,
            zero_colon_len,
        })
    }

    /// `M_{k+1} : x = M_k + (0_M : x)`. Both sides contain each other one
    /// way for free, so equality reduces to a colength comparison; the
    /// left length comes from the multiplication kernel on `A/V_{k+1}`.
    pub fn colon_level(&self, k: usize) -> Result<bool, GradedError> {
        let v_next = self.f.rep(k + 1);
        let lhs_len = v_next.colength().map_err(GradedError::Kernel)?
            - mult_kernel_dim(&v_next, self.x)?;
        let rhs = self.f.rep(k).sum(&self.j_colon_x);
        let rhs_len = rhs.colength().map_err(GradedError::Kernel)?;
        Ok(lhs_len == rhs_len)
    }

    /// `(0_M : x) ∩ M_{k+1} = 0`: the image of `(0 : x)` in `M/M_{k+1}`
    /// keeps its full length.
    pub fn disjoint_level(&self, k: usize) -> Result<bool, GradedError> {
        let v_next = self.f.rep(k + 1);
        let img = v_next.colength().map_err(GradedError::Kernel)?
            - self
                .j_colon_x
                .sum(&v_next)
                .colength()
                .map_err(GradedError::Kernel)?;
        Ok(img == self.zero_colon_len)
    }

    /// `xM ∩ M_n = xM_{n−1}`, tested through the equivalent colon form
    /// `M_n : x = M_{n−1} + (0_M : x)` (multiply by `x` to pass between
    /// the two).
    pub fn intersection_level(&self, n: usize) -> Result<bool, GradedError> {
        assert!(n >= 1);
        self.colon_level(n - 1)
    }
}

/// `xM ∩ M_n = xM_{n−1}` at the ideal level, valid for `n > reg(G(𝔉))`
/// when `x*` is filter-regular.
pub fn intersection_identity_holds(f: &GoodFiltration, x: &Polynomial, n: usize) -> bool {
    assert!(n >= 1);
    let principal = Ideal::new(f.ring(), vec![x.clone()]).sum(f.base());
    let lhs = principal.intersect(&f.rep(n));
    let rhs = f.rep(n - 1).multiply_poly(x).sum(f.base());
    lhs.equals(&rhs)
}

/// `M_{n+1} : x = M_n + (0_M : x)` at the ideal level, plus the disjointness
/// `(0_M : x) ∩ M_{n+1} = 0`, valid for `n ≥ reg(G(𝔉))`.
pub fn colon_identity_holds(
    f: &GoodFiltration,
    x: &Polynomial,
    n: usize,
) -> Result<bool, GradedError> {
    let lhs = f.rep(n + 1).colon_poly(x).map_err(GradedError::Kernel)?;
    let zero_colon = f.base().colon_poly(x).map_err(GradedError::Kernel)?;
    let rhs = f.rep(n).sum(&zero_colon);
    if !lhs.equals(&rhs) {
        return Ok(false);
    }
    // (0 : x) ∩ M_{n+1} = 0 in M, i.e. the ideal intersection lands in J
    let meet = zero_colon.intersect(&f.rep(n + 1));
    Ok(f.base().contains_ideal(&meet))
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
    fn assoc_graded_dims_univariate() {
        // (x^2)-adic on K[x]: all pieces have dimension 2
        let r = PolyRing::new(32003, &["x"]).unwrap();
        let i = Ideal::parse(&r, &["x^2"]).unwrap();
        let f = Arc::new(GoodFiltration::adic(&i, &Ideal::zero(&r)).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 16);
        assert_eq!(g.dims(5).unwrap(), vec![2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn assoc_graded_dims_maximal_adic() {
        // m-adic on K[x,y]: dims 1, 2, 3, …
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = Arc::new(GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 16);
        assert_eq!(g.dims(4).unwrap(), vec![1, 2, 3, 4, 5]);
        // scaled chain A ⊃ m ⊃ mI: piece 0 has dimension ℓ(A/m) = 1
        let i = ideal(&r, &["x^2", "y^2"]);
        let fi = Arc::new(
            GoodFiltration::adic(&i, &Ideal::zero(&r))
                .unwrap()
                .scale(&m)
                .unwrap(),
        );
        let gi = GradedPieceModule::assoc_graded(&fi, 16);
        assert_eq!(gi.dim(0).unwrap(), 1);
    }

    #[test]
    fn dimension_additivity() {
        // Σ_{j≤n} dim G(𝔉)_j = ℓ(M/M_{n+1})
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let f = Arc::new(
            GoodFiltration::adic(&i, &Ideal::zero(&r))
                .unwrap()
                .scale(&Ideal::maximal(&r))
                .unwrap(),
        );
        let g = GradedPieceModule::assoc_graded(&f, 16);
        for n in 0..6usize {
            let sum: usize = (0..=n as i64)
                .map(|j| g.dim(j).unwrap())
                .sum();
            assert_eq!(sum, f.hilbert_samuel(n).unwrap());
        }
    }

    #[test]
    fn fiber_cone_of_regular_sequence() {
        // F_m(I) for I = (x^2, y^2): a polynomial ring in two variables
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let f = Arc::new(GoodFiltration::adic(&i, &Ideal::zero(&r)).unwrap());
        let fc = GradedPieceModule::fiber_cone(&f, &Ideal::maximal(&r), 16).unwrap();
        assert_eq!(fc.dims(4).unwrap(), vec![1, 2, 3, 4, 5]);
        // F_m(m) equals G_m(A)
        let m = Ideal::maximal(&r);
        let fm = Arc::new(GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap());
        let fc2 = GradedPieceModule::fiber_cone(&fm, &m, 16).unwrap();
        assert_eq!(fc2.dims(3).unwrap(), vec![1, 2, 3, 4]);
        // q must contain I
        let qx = ideal(&r, &["x"]);
        assert!(matches!(
            GradedPieceModule::fiber_cone(&f, &qx, 16),
            Err(GradedError::QDoesNotContainI)
        ));
    }

    #[test]
    fn multiplication_maps_commute() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = Arc::new(GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 16);
        let zx = Polynomial::parse(&r, "x").unwrap();
        let zy = Polynomial::parse(&r, "y").unwrap();
        for n in 0..3 {
            let a1 = g.mult_matrix(&zx, n).unwrap();
            let a2 = g.mult_matrix(&zy, n + 1).unwrap();
            let b1 = g.mult_matrix(&zy, n).unwrap();
            let b2 = g.mult_matrix(&zx, n + 1).unwrap();
            let ab = mat_mul(&r, &a1, &a2);
            let ba = mat_mul(&r, &b1, &b2);
            assert_eq!(ab, ba);
        }
    }

    fn mat_mul(r: &Arc<PolyRing>, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let cols = b.first().map_or(0, |row| row.len());
        a.iter()
            .map(|arow| {
                let mut out = vec![0u64; cols];
                for (k, c) in arow.iter().enumerate() {
                    for (j, bc) in b[k].iter().enumerate() {
                        out[j] = r.add(out[j], r.mul(*c, *bc));
                    }
                }
                out
            })
            .collect()
    }

    #[test]
    fn filter_regular_examples() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = Arc::new(GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 16);
        // x is regular on G_m(K[x,y]) ≅ K[x,y]
        let zx = Polynomial::parse(&r, "x").unwrap();
        let (ok, witness) = is_filter_regular(&zx, &g, 8).unwrap();
        assert!(ok);
        assert_eq!(witness, None);
        // on G for J = (y^2), multiplication by y has kernels forever
        let j = ideal(&r, &["y^2"]);
        let fj = Arc::new(GoodFiltration::adic(&m, &j).unwrap());
        let gj = GradedPieceModule::assoc_graded(&fj, 16);
        let zy = Polynomial::parse(&r, "y").unwrap();
        let (ok, witness) = is_filter_regular(&zy, &gj, 8).unwrap();
        assert!(!ok);
        assert_eq!(witness, Some(8));
        // while x stays filter-regular there
        let (ok, _) = is_filter_regular(&zx, &gj, 8).unwrap();
        assert!(ok);
    }

    #[test]
    fn sampling_retries_and_verifies() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "y^2"]);
        let g = GradedPieceModule::ambient(&i, 16).unwrap();
        let got = sample_generic(&i, &[&g], 11, 5).unwrap();
        assert!(i.contains(&got.element));
        assert!(!Ideal::maximal(&r).product(&i).contains(&got.element));
        // principal ideal: any nonzero multiple works
        let r1 = PolyRing::new(32003, &["x"]).unwrap();
        let p = Ideal::parse(&r1, &["x"]).unwrap();
        let gp = GradedPieceModule::ambient(&p, 16).unwrap();
        let got = sample_generic(&p, &[&gp], 3, 5).unwrap();
        assert_eq!(got.element.terms().len(), 1);
    }

    #[test]
    fn singh_identity_on_examples() {
        // m-adic on K[x,y], generic linear x, n = 2: both sides are 3
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap();
        let x = Polynomial::parse(&r, "x + 7*y").unwrap();
        assert!(singh_identity_check(&f, &x, 2).unwrap());
        // (x^2)-adic on K[x] with the element x^2 at n = 0: both sides 2
        let r1 = PolyRing::new(32003, &["x"]).unwrap();
        let i = Ideal::parse(&r1, &["x^2"]).unwrap();
        let f1 = GoodFiltration::adic(&i, &Ideal::zero(&r1)).unwrap();
        let x2 = Polynomial::parse(&r1, "x^2").unwrap();
        assert!(singh_identity_check(&f1, &x2, 0).unwrap());
    }

    #[test]
    fn piece_cutoff_errors() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = Arc::new(GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 4);
        assert!(g.piece(4).is_ok());
        assert!(matches!(
            g.piece(5),
            Err(GradedError::CutoffTooSmall(5, 4))
        ));
    }
}
