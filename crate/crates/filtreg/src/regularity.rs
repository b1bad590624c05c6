//! Regularity, end degrees and Hilbert coefficients via filter-regular
//! sequences.
//!
//! The engine quotients a graded piece module by successively sampled
//! degree-one elements. For each accepted element the top degree of its
//! kernel on the current quotient is recorded; the regularity is the
//! maximum of these end degrees together with the top degree of the final
//! finite-length quotient. Three certificates guard the run: a vanishing
//! window behind every recorded kernel degree, a hard degree cap taken
//! from the proven bounds, and the downstream polynomial-agreement check
//! in [`hilbert_coefficients`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::GradedError;
use crate::filtration::GoodFiltration;
use crate::graded::{filter_window, GradedPieceModule};
use crate::ideal::Ideal;
use crate::linalg::{row_kernel, RowSpan};
use crate::numeric::{eval_binomial_poly, interpolate_binomial};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::rng::Rng;

/// End degrees of a graded piece module. `a[i]` is the recorded end degree
/// shifted by `-i` (so `reg = max a_i + i` holds by construction), with
/// `a[0]` the exact top degree of `H⁰`; `None` encodes vanishing. `geom`
/// is the regularity of the quotient by `H⁰`, which equals
/// `max{a_i + i, i ≥ 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityData {
    pub a: Vec<Option<i64>>,
    pub reg: Option<i64>,
    pub geom: Option<i64>,
    pub dim: usize,
}

impl RegularityData {
    pub fn reg_or(&self, default: i64) -> i64 {
        self.reg.unwrap_or(default)
    }
}

#[derive(Debug, Clone)]
pub struct RegularityOptions {
    pub seed: u64,
    pub retries: u32,
    /// Largest degree the run may explore.
    pub cap: i64,
}

#[derive(Debug)]
pub struct RegularityOutcome {
    pub data: RegularityData,
    /// The accepted filter-regular sequence.
    pub sequence: Vec<Polynomial>,
    pub total_retries: u32,
}

/// Successive quotient of a piece module by sampled elements, tracked
/// degreewise as denominator subspaces in the canonical piece coordinates.
struct Tower<'a> {
    e: &'a GradedPieceModule,
    ring: Arc<PolyRing>,
    dens: Vec<RowSpan>,
    zs: Vec<Polynomial>,
    initial: Vec<RowSpan>,
}

impl<'a> Tower<'a> {
    fn new(e: &'a GradedPieceModule, initial: Vec<RowSpan>) -> Tower<'a> {
        Tower {
            e,
            ring: e.ring().clone(),
            dens: Vec::new(),
            zs: Vec::new(),
            initial,
        }
    }

    fn ensure(&mut self, n: i64) -> Result<(), GradedError> {
        while (self.dens.len() as i64) <= n {
            let m = self.dens.len();
            let width = self.e.dim(m as i64)?;
            let mut span = match self.initial.get(m) {
                Some(s) => s.clone(),
                None => RowSpan::new(&self.ring, width),
            };
            if m >= 1 {
                let zs = self.zs.clone();
                for z in &zs {
                    let mat = self.e.mult_matrix(z, (m - 1) as i64)?;
                    for row in mat.iter() {
                        span.insert(row.clone());
                    }
                }
            }
            self.dens.push(span);
        }
        Ok(())
    }

    fn qdim(&mut self, n: i64) -> Result<usize, GradedError> {
        self.ensure(n)?;
        Ok(self.e.dim(n)? - self.dens[n as usize].rank())
    }

    /// Kernel dimension of multiplication by `z` on the quotient in degree `n`.
    fn qker(&mut self, z: &Polynomial, n: i64) -> Result<usize, GradedError> {
        self.ensure(n + 1)?;
        if self.qdim(n)? == 0 {
            return Ok(0);
        }
        let mat = self.e.mult_matrix(z, n)?;
        let next_width = self.e.dim(n + 1)?;
        let reduced: Vec<Vec<u64>> = mat
            .iter()
            .map(|row| self.dens[(n + 1) as usize].reduce(row.clone()))
            .collect();
        let pre = row_kernel(&self.ring, &reduced, next_width).len();
        Ok(pre - self.dens[n as usize].rank())
    }

    fn push(&mut self, z: Polynomial) -> Result<(), GradedError> {
        for m in 1..self.dens.len() {
            let mat = self.e.mult_matrix(&z, (m - 1) as i64)?;
            for row in mat.iter() {
                self.dens[m].insert(row.clone());
            }
        }
        self.zs.push(z);
        Ok(())
    }
}

enum Probe {
    Finite(Option<i64>),
    Infinite,
}

/// End degrees, accepted sequence, and total retry count of an engine run.
type EngineRun = (Vec<Option<i64>>, Vec<Polynomial>, u32);

/// Regularity of a graded piece module by the filter-regular quotient
/// method. The `initial` denominators let the same engine run on a
/// quotient of the module (used for the geometric regularity).
fn run_engine(
    e: &GradedPieceModule,
    opts: &RegularityOptions,
    initial: Vec<RowSpan>,
    rng_label: &str,
) -> Result<EngineRun, GradedError> {
    let i_ideal = e.filtration().primary().clone();
    let ring = e.ring().clone();
    let mins = i_ideal.minimal_generators().map_err(GradedError::Kernel)?;
    let mi = Ideal::maximal(&ring).product(&i_ideal);
    let window = filter_window(e) as i64;
    let gen_deg = e.generation_degree() as i64;
    let mut rng = Rng::new(opts.seed).fork(rng_label);
    let mut tower = Tower::new(e, initial);
    let mut ends: Vec<Option<i64>> = Vec::new();
    let mut sequence: Vec<Polynomial> = Vec::new();
    let mut total_retries = 0u32;

    loop {
        match probe(&mut tower, gen_deg, window, opts.cap)? {
            Probe::Finite(top) => {
                ends.push(top);
                return Ok((ends, sequence, total_retries));
            }
            Probe::Infinite => {}
        }
        let mut accepted = false;
        for _attempt in 0..=opts.retries {
            let mut z = Polynomial::zero(&ring);
            for g in &mins {
                z = z.add(&g.scale(rng.below(ring.characteristic())));
            }
            if z.is_zero() || mi.contains(&z) {
                total_retries += 1;
                continue;
            }
            match kernel_profile(&mut tower, &z, gen_deg, window, opts.cap)? {
                Some(end) => {
                    ends.push(end);
                    tower.push(z.clone())?;
                    sequence.push(z);
                    accepted = true;
                    break;
                }
                None => {
                    total_retries += 1;
                }
            }
        }
        if !accepted {
            return Err(GradedError::GenericityFailure(opts.retries));
        }
        if ends.len() > e.ring().num_vars() + 1 {
            return Err(GradedError::CutoffExceeded(opts.cap));
        }
    }
}

/// Decides whether the current quotient has finite length. A zero piece at
/// degree `≥ gen_deg` certifies finiteness because the module is generated
/// in degrees up to `gen_deg`; seeing only nonzero pieces through
/// `gen_deg + window + 2` classifies the quotient as positive-dimensional
/// (a later quotient step stays correct even if that was a long finite
/// module, since its top degree is still recorded as a kernel end degree).
fn probe(
    tower: &mut Tower,
    gen_deg: i64,
    window: i64,
    cap: i64,
) -> Result<Probe, GradedError> {
    let mut last_nonzero: Option<i64> = None;
    let mut n = 0i64;
    loop {
        if n > cap {
            return Err(GradedError::CutoffExceeded(cap));
        }
        let q = tower.qdim(n)?;
        if q > 0 {
            last_nonzero = Some(n);
        } else if n >= gen_deg {
            return Ok(Probe::Finite(last_nonzero));
        }
        if n >= gen_deg + window + 2 {
            return Ok(Probe::Infinite);
        }
        n += 1;
    }
}

/// Largest degree with a nonzero kernel for a candidate element, certified
/// by `window` zero kernels past it; `None` when the candidate is not
/// filter-regular within the cap.
fn kernel_profile(
    tower: &mut Tower,
    z: &Polynomial,
    gen_deg: i64,
    window: i64,
    cap: i64,
) -> Result<Option<Option<i64>>, GradedError> {
    let mut last_nonzero: Option<i64> = None;
    let mut n = 0i64;
    loop {
        let horizon = gen_deg.max(last_nonzero.map_or(0, |w| w + 1)) + window;
        if n > horizon {
            return Ok(Some(last_nonzero));
        }
        if n > cap {
            return Ok(None);
        }
        if tower.qker(z, n)? > 0 {
            last_nonzero = Some(n);
        }
        n += 1;
    }
}

/// Computes the end degrees, regularity and geometric regularity of `e`.
pub fn regularity(
    e: &GradedPieceModule,
    opts: &RegularityOptions,
) -> Result<RegularityOutcome, GradedError> {
    let (ends, sequence, mut total_retries) = run_engine(e, opts, Vec::new(), "regularity")?;
    let reg = ends.iter().flatten().copied().max();
    let a: Vec<Option<i64>> = ends
        .iter()
        .enumerate()
        .map(|(i, b)| b.map(|v| v - i as i64))
        .collect();
    let dim = ends.len() - 1;
    let a0 = a[0];
    let geom = if dim == 0 {
        // finite length: H⁰ is everything, the quotient is zero
        None
    } else if a0.is_none() {
        reg
    } else {
        let h0 = h0_spans(e, &sequence[0], ends[0].unwrap())?;
        let (g_ends, _, g_retries) = run_engine(e, opts, h0, "geom")?;
        total_retries += g_retries;
        g_ends.iter().flatten().copied().max()
    };
    Ok(RegularityOutcome {
        data: RegularityData {
            a,
            reg,
            geom,
            dim,
        },
        sequence,
        total_retries,
    })
}

/// `a_0(e)`: the top degree of `H⁰`, read off a regularity run.
pub fn a0(e: &GradedPieceModule, opts: &RegularityOptions) -> Result<Option<i64>, GradedError> {
    Ok(regularity(e, opts)?.data.a[0])
}

/// Degreewise `H⁰ = (0 : z^∞)` for a filter-regular `z` whose kernel top
/// degree is `top`: in degree `n ≤ top` it is the kernel of the composed
/// multiplication into degree `top + 1`, and zero beyond.
fn h0_spans(
    e: &GradedPieceModule,
    z: &Polynomial,
    top: i64,
) -> Result<Vec<RowSpan>, GradedError> {
    let ring = e.ring().clone();
    let mut spans = Vec::new();
    for n in 0..=top {
        // composed matrix E_n -> E_{top+1}
        let dim_n = e.dim(n)?;
        let mut mat: Vec<Vec<u64>> = (0..dim_n)
            .map(|i| {
                let mut row = vec![0u64; dim_n];
                row[i] = 1;
                row
            })
            .collect();
        for m in n..=top {
            let step = e.mult_matrix(z, m)?;
            mat = mat
                .iter()
                .map(|row| {
                    let mut out = vec![0u64; e.dim(m + 1)?];
                    for (k, c) in row.iter().enumerate() {
                        if *c != 0 {
                            for (j, s) in step[k].iter().enumerate() {
                                out[j] = ring.add(out[j], ring.mul(*c, *s));
                            }
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>, GradedError>>()?;
        }
        let ker = row_kernel(&ring, &mat, e.dim(top + 1)?);
        let mut span = RowSpan::new(&ring, e.dim(n)?);
        for row in ker {
            span.insert(row);
        }
        spans.push(span);
    }
    Ok(spans)
}

/// Hilbert–Samuel values, Hilbert coefficients and postulation number of a
/// filtration, interpolated past the regularity and verified at two extra
/// points.
#[derive(Debug, Clone)]
pub struct HilbertData {
    /// `H_𝔉(n) = ℓ(M/M_{n+1})` for `n = 0..=reg+d+3`
    pub h: Vec<i64>,
    /// `e_0, …, e_d`
    pub e: Vec<BigInt>,
    /// least `n₀` with `H = P` from `n₀` on (within the computed window)
    pub postulation: i64,
}

pub fn hilbert_coefficients(
    f: &GoodFiltration,
    reg: i64,
    d: usize,
) -> Result<HilbertData, GradedError> {
    let reg = reg.max(0);
    let top = reg + d as i64 + 3;
    let h: Vec<i64> = (0..=top)
        .map(|n| {
            f.hilbert_samuel(n as usize)
                .map(|v| v as i64)
                .map_err(GradedError::Kernel)
        })
        .collect::<Result<_, _>>()?;
    let start = reg + 1;
    let values: Vec<i64> = (0..=d as i64).map(|k| h[(start + k) as usize]).collect();
    let e = interpolate_binomial(start, &values)
        .ok_or(GradedError::InterpolationInconsistent)?;
    // consistency guard at two further points
    for extra in 1..=2i64 {
        let t = reg + d as i64 + 1 + extra;
        if eval_binomial_poly(&e, t) != BigInt::from(h[t as usize]) {
            return Err(GradedError::InterpolationInconsistent);
        }
    }
    if e[0] < BigInt::one() {
        return Err(GradedError::InterpolationInconsistent);
    }
    let mut postulation = 0i64;
    for n in (0..=top).rev() {
        if eval_binomial_poly(&e, n) != BigInt::from(h[n as usize]) {
            postulation = n + 1;
            break;
        }
    }
    Ok(HilbertData { h, e, postulation })
}

/// Hilbert coefficients of a graded module from its dimension sequence:
/// `h(n) = Σ_i (-1)^i e_i binom(n + δ-1-i, δ-1-i)` for `n > reg`, with
/// `δ` the dimension. Verified at two extra points.
pub fn graded_hilbert_coefficients(
    dims: &[i64],
    reg: i64,
    delta: usize,
) -> Result<Vec<BigInt>, GradedError> {
    let reg = reg.max(-1);
    if delta == 0 {
        return Ok(vec![BigInt::from(dims.iter().sum::<i64>())]);
    }
    let start = reg + 1;
    let need = (start + delta as i64 + 1) as usize;
    if dims.len() < need + 1 {
        return Err(GradedError::CutoffExceeded(dims.len() as i64));
    }
    let values: Vec<i64> = (0..delta as i64)
        .map(|k| dims[(start + k) as usize])
        .collect();
    let e = interpolate_binomial(start, &values)
        .ok_or(GradedError::InterpolationInconsistent)?;
    for extra in 0..=1i64 {
        let t = start + delta as i64 + extra;
        if eval_binomial_poly(&e, t) != BigInt::from(dims[t as usize]) {
            return Err(GradedError::InterpolationInconsistent);
        }
    }
    Ok(e)
}

/// |e_i| as a `BigInt`, for bound comparisons.
pub fn abs_big(v: &BigInt) -> BigInt {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::GoodFiltration;
    use crate::graded::GradedPieceModule;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(32003, &["x", "y"]).unwrap()
    }

    fn opts(seed: u64) -> RegularityOptions {
        RegularityOptions {
            seed,
            retries: 5,
            cap: 48,
        }
    }

    fn assoc(i: &Ideal, j: &Ideal) -> GradedPieceModule {
        let f = Arc::new(GoodFiltration::adic(i, j).unwrap());
        GradedPieceModule::assoc_graded(&f, 64)
    }

    #[test]
    fn polynomial_ring_has_reg_zero() {
        let r = ring2();
        let e = assoc(&Ideal::maximal(&r), &Ideal::zero(&r));
        let out = regularity(&e, &opts(5)).unwrap();
        assert_eq!(out.data.reg, Some(0));
        assert_eq!(out.data.dim, 2);
        assert_eq!(out.data.a, vec![None, None, Some(-2)]);
        assert_eq!(out.data.geom, Some(0));
    }

    #[test]
    fn depth_zero_module_reg_one() {
        // G for the m-adic filtration on A/(x^2, xy): reg = 1, a_0 = 1
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let e = assoc(&Ideal::maximal(&r), &j);
        let out = regularity(&e, &opts(7)).unwrap();
        assert_eq!(out.data.reg, Some(1));
        assert_eq!(out.data.dim, 1);
        assert_eq!(out.data.a[0], Some(1));
        // E/H⁰ is K[y], whose regularity is 0
        assert_eq!(out.data.geom, Some(0));
    }

    #[test]
    fn finite_length_module_reg_is_top_degree() {
        // A/(x^2, y^2): top standard monomial degree is 2
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let e = assoc(&Ideal::maximal(&r), &j);
        let out = regularity(&e, &opts(3)).unwrap();
        assert_eq!(out.data.dim, 0);
        assert_eq!(out.data.reg, Some(2));
        assert_eq!(out.data.geom, None);
    }

    #[test]
    fn fiber_cone_of_regular_sequence_has_reg_zero() {
        let r = ring2();
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let f = Arc::new(GoodFiltration::adic(&i, &Ideal::zero(&r)).unwrap());
        let fc = GradedPieceModule::fiber_cone(&f, &Ideal::maximal(&r), 64).unwrap();
        let out = regularity(&fc, &opts(9)).unwrap();
        assert_eq!(out.data.reg, Some(0));
        assert_eq!(out.data.a[0], None);
        assert_eq!(out.data.dim, 2);
    }

    #[test]
    fn determinism_same_seed() {
        let r = ring2();
        let j = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let e1 = assoc(&Ideal::maximal(&r), &j);
        let e2 = assoc(&Ideal::maximal(&r), &j);
        let a = regularity(&e1, &opts(21)).unwrap();
        let b = regularity(&e2, &opts(21)).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.sequence, b.sequence);
    }

    #[test]
    fn hilbert_coefficients_univariate() {
        // (x^2)-adic on K[x]: ℓ(M/M_{n+1}) = 2(n+1), e = (2, 0)
        let r1 = PolyRing::new(32003, &["x"]).unwrap();
        let i = Ideal::parse(&r1, &["x^2"]).unwrap();
        let f = GoodFiltration::adic(&i, &Ideal::zero(&r1)).unwrap();
        let hd = hilbert_coefficients(&f, 1, 1).unwrap();
        assert_eq!(hd.e, vec![BigInt::from(2), BigInt::from(0)]);
    }

    #[test]
    fn hilbert_coefficients_maximal_adic() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = GoodFiltration::adic(&m, &Ideal::zero(&r)).unwrap();
        let hd = hilbert_coefficients(&f, 0, 2).unwrap();
        assert_eq!(
            hd.e,
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]
        );
        assert_eq!(hd.postulation, 0);
    }

    #[test]
    fn hilbert_coefficients_scaled_filtration() {
        // q𝔉 with q = m over the (x^2,y^2)-adic filtration: e_0 = 4
        let r = ring2();
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let f = GoodFiltration::adic(&i, &Ideal::zero(&r))
            .unwrap()
            .scale(&Ideal::maximal(&r))
            .unwrap();
        let e = Arc::new(f.clone());
        let g = GradedPieceModule::assoc_graded(&e, 64);
        let out = regularity(&g, &opts(13)).unwrap();
        let hd = hilbert_coefficients(&f, out.data.reg_or(0), 2).unwrap();
        assert_eq!(hd.e[0], BigInt::from(4));
    }

    #[test]
    fn zero_module_has_vanishing_invariants() {
        // a filtration of the zero module: every piece is zero
        let r = ring2();
        let m = Ideal::maximal(&r);
        let f = Arc::new(
            GoodFiltration::validate(&[Ideal::unit(&r)], &m, &Ideal::unit(&r)).unwrap(),
        );
        let g = GradedPieceModule::assoc_graded(&f, 16);
        let out = regularity(&g, &opts(1)).unwrap();
        assert_eq!(out.data.reg, None);
        assert_eq!(out.data.dim, 0);
        assert_eq!(out.data.geom, None);
        assert_eq!(a0(&g, &opts(1)).unwrap(), None);
        // multiplication by anything is vacuously filter-regular
        let x = crate::poly::Polynomial::parse(&r, "x").unwrap();
        let (ok, witness) = crate::graded::is_filter_regular(&x, &g, 6).unwrap();
        assert!(ok);
        assert_eq!(witness, None);
    }

    #[test]
    fn graded_coefficients_of_polynomial_ring() {
        // h(n) = n+1 for K[x,y]: δ = 2, e = (1, 0)
        let dims: Vec<i64> = (0..10).map(|n| n + 1).collect();
        let e = graded_hilbert_coefficients(&dims, 0, 2).unwrap();
        assert_eq!(e, vec![BigInt::from(1), BigInt::from(0)]);
    }
}
