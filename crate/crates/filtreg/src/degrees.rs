//! Resolution-based invariants: minimal free resolutions, regularity of
//! graded modules, Ext modules, multiplicities, the homological degree,
//! and minimal reductions.
//!
//! Resolutions are built by iterated syzygy computation with a minimal
//! generating subset selected at every homological step by degreewise
//! linear algebra, so the Betti numbers and shifts come out minimal
//! directly. Ext is the cohomology of the dualized resolution. The
//! multiplicity is read off the stabilized finite-difference table of the
//! Hilbert–Samuel function, which keeps it independent of the reduction
//! machinery it is later checked against.

use std::sync::Arc;

use crate::error::DegreeError;
use crate::ideal::Ideal;
use crate::modvec::{syzygies, ModVec, TaggedBasis};
use crate::module::{minimal_generating_subset, PresentedModule};
use crate::numeric::stabilized_degree;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::rng::Rng;

/// A minimal graded free resolution: `shifts[j]` are the degree shifts of
/// the `j`-th free module, `maps[j]` (for `j ≥ 1`) the columns of
/// `F_j -> F_{j-1}`.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    pub shifts: Vec<Vec<i64>>,
    pub maps: Vec<Vec<ModVec>>,
}

impl ResolutionData {
    /// Projective dimension.
    pub fn length(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn betti(&self, j: usize) -> usize {
        self.shifts.get(j).map_or(0, |s| s.len())
    }

    /// `max_j (max shift at j) - j`, or `None` for the zero module.
    pub fn reg(&self) -> Option<i64> {
        let mut out: Option<i64> = None;
        for (j, sh) in self.shifts.iter().enumerate() {
            for s in sh {
                let v = s - j as i64;
                out = Some(out.map_or(v, |o: i64| o.max(v)));
            }
        }
        out
    }

    /// Initial degree `i(M) = min{p | M_p ≠ 0}`: the least generator shift.
    pub fn initial_degree(&self) -> Option<i64> {
        self.shifts[0].iter().copied().min()
    }

    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.betti(0)
    }
}

/// Minimal graded free resolution by iterated syzygies with minimal
/// generator selection at each step. Terminates within the variable count
/// by Hilbert's syzygy theorem.
pub fn minimal_resolution(m: &PresentedModule) -> ResolutionData {
    assert!(m.is_graded(), "resolution requires a graded presentation");
    let ring = m.ring().clone();
    let min = m.minimalized();
    let mut shifts: Vec<Vec<i64>> = vec![min.shifts().to_vec()];
    let mut maps: Vec<Vec<ModVec>> = vec![Vec::new()];
    if min.rank() == 0 {
        return ResolutionData { shifts, maps };
    }
    let mut current = minimal_generating_subset(&ring, min.shifts(), min.relations());
    while !current.is_empty() {
        let prev_shifts = shifts.last().unwrap().clone();
        let step_shifts: Vec<i64> = current
            .iter()
            .map(|v| {
                v.degree_homogeneous(&prev_shifts)
                    .expect("resolution vectors are homogeneous")
            })
            .collect();
        let syz = syzygies(prev_shifts.len(), &current);
        let next = minimal_generating_subset(&ring, &step_shifts, &syz);
        shifts.push(step_shifts);
        maps.push(current);
        current = next;
        assert!(
            shifts.len() <= ring.num_vars() + 1,
            "resolution exceeded the syzygy-theorem length"
        );
    }
    ResolutionData { shifts, maps }
}

/// `reg(M)` from the minimal resolution; `None` for the zero module.
pub fn reg_module(m: &PresentedModule) -> Option<i64> {
    minimal_resolution(m).reg()
}

/// `Ext^j(M, A)` as a presented module: cohomology of the dualized
/// resolution at index `j`.
pub fn ext_module(m: &PresentedModule, j: usize) -> PresentedModule {
    let ring = m.ring().clone();
    let res = minimal_resolution(m);
    let length = res.length();
    if res.shifts[0].is_empty() || j > length {
        return PresentedModule::new(&ring, Vec::new(), Vec::new());
    }
    let rank_j = res.betti(j);
    let dual_shifts_j: Vec<i64> = res.shifts[j].iter().map(|s| -s).collect();
    // kernel of the dual map G_j -> G_{j+1}
    let kernel_gens: Vec<ModVec> = if j == length {
        (0..rank_j)
            .map(|c| ModVec::injected(&ring, rank_j, c, Polynomial::one(&ring)))
            .collect()
    } else {
        let cols = transpose_columns(&ring, &res.maps[j + 1], rank_j, res.betti(j + 1));
        syzygies(res.betti(j + 1), &cols)
    };
    if kernel_gens.is_empty() {
        return PresentedModule::new(&ring, Vec::new(), Vec::new());
    }
    let gen_shifts: Vec<i64> = kernel_gens
        .iter()
        .map(|v| {
            v.degree_homogeneous(&dual_shifts_j)
                .expect("kernel generators are homogeneous")
        })
        .collect();
    let mut relations: Vec<ModVec> = Vec::new();
    if j >= 1 {
        let image_cols = transpose_columns(&ring, &res.maps[j], res.betti(j - 1), rank_j);
        if !image_cols.is_empty() {
            let tagged = TaggedBasis::new(rank_j, &kernel_gens);
            for col in &image_cols {
                let coeffs = tagged
                    .lift(col)
                    .expect("image of the dual complex lies in the kernel");
                relations.push(ModVec::from_components(&ring, coeffs));
            }
        }
    }
    relations.extend(syzygies(rank_j, &kernel_gens));
    PresentedModule::new(&ring, gen_shifts, relations).minimalized()
}

/// Columns of the transpose of a map given by `columns`: the dual map
/// `G_{j-1} -> G_j` has one column per basis element of the source.
fn transpose_columns(
    ring: &Arc<PolyRing>,
    columns: &[ModVec],
    source_rank: usize,
    target_rank: usize,
) -> Vec<ModVec> {
    (0..source_rank)
        .map(|c| {
            let comps: Vec<Polynomial> = (0..target_rank)
                .map(|i| columns[i].component(c).clone())
                .collect();
            ModVec::from_components(ring, comps)
        })
        .collect()
}

/// Multiplicity and dimension from the stabilized difference table of
/// `n ↦ ℓ(M/I^{n+1}M)`.
pub fn multiplicity(i: &Ideal, m: &PresentedModule) -> Result<(u64, usize), DegreeError> {
    multiplicity_capped(i, m, 40)
}

pub fn multiplicity_capped(
    i: &Ideal,
    m: &PresentedModule,
    cap: usize,
) -> Result<(u64, usize), DegreeError> {
    if m.is_zero_module() {
        return Err(DegreeError::ZeroModule);
    }
    let mut table: Vec<i64> = Vec::new();
    let mut power = i.clone();
    loop {
        let value = m.quotient_by_ideal(&power).colength()? as i64;
        table.push(value);
        if let Some((delta, lead)) = stabilized_degree(&table) {
            debug_assert!(lead > 0);
            return Ok((lead as u64, delta));
        }
        if table.len() > cap {
            return Err(DegreeError::StabilizationNotReached(cap));
        }
        power = power.product(i);
    }
}

/// The homological degree
/// `hdeg(I, M) = e(I, M) + Σ_t binom(d-1, t) hdeg(I, Ext^{n+t+1-d}(M, A))`
/// for `d = dim M > 0`, and `ℓ(M)` in dimension zero.
pub fn hdeg(i: &Ideal, m: &PresentedModule) -> Result<u64, DegreeError> {
    if m.is_zero_module() {
        return Ok(0);
    }
    let n = m.ring().num_vars();
    let (e, d) = multiplicity(i, m)?;
    if d == 0 {
        return Ok(m.colength()? as u64);
    }
    let mut acc = e;
    for t in 0..d {
        let idx = n + t + 1 - d;
        let ext = ext_module(m, idx);
        if ext.is_zero_module() {
            continue;
        }
        acc += binom_u64((d - 1) as u64, t as u64) * hdeg(i, &ext)?;
    }
    Ok(acc)
}

fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// A verified reduction `Q ⊆ I` with respect to a cyclic module `A/J`.
#[derive(Debug, Clone)]
pub struct MinimalReduction {
    pub q: Ideal,
    /// least `n` with `I^{n+1} M = Q I^n M` confirmed (three consecutive
    /// levels are checked)
    pub verified_at: usize,
    pub retries: u32,
}

/// Samples `Q` generated by `d` random combinations of the minimal
/// generators of `I` and verifies `I^{n+1}M = Q I^n M` on a window of
/// three consecutive levels over `M = A/J`. When `I` is equigenerated the
/// combinations are homogeneous of the common degree, so `Q` is a
/// homogeneous reduction and the equality is a literal ideal equality;
/// for mixed generator degrees the combinations are non-homogeneous and
/// `V(Q)` can meet points away from the origin, so the equality is tested
/// on the localization at the maximal ideal via local colengths.
pub fn minimal_reduction(
    i: &Ideal,
    j_base: &Ideal,
    d: usize,
    seed: u64,
    max_retries: u32,
) -> Result<MinimalReduction, DegreeError> {
    assert!(d >= 1, "reductions need positive dimension");
    let ring = i.ring().clone();
    let mins = i.minimal_generators()?;
    let mut rng = Rng::new(seed).fork("minimal-reduction");
    for attempt in 0..=max_retries {
        let combos: Vec<Polynomial> = (0..d)
            .map(|_| {
                let mut acc = Polynomial::zero(&ring);
                for g in &mins {
                    acc = acc.add(&g.scale(rng.below(ring.characteristic())));
                }
                acc
            })
            .collect();
        let q = Ideal::new(&ring, combos);
        if let Some(at) = verify_reduction(i, &q, j_base, 24) {
            return Ok(MinimalReduction {
                q,
                verified_at: at,
                retries: attempt,
            });
        }
    }
    Err(DegreeError::ReductionCheckFailed(max_retries))
}

/// The scalar invariants feeding the bound evaluators.
#[derive(Debug, Clone)]
pub struct ScalarInvariants {
    pub l_ai: usize,
    pub l_mqm: Option<usize>,
    pub i_m: i64,
    pub mu_m: usize,
    /// common generator degree of an equigenerated `I`, `None` otherwise
    pub delta: Option<u32>,
    pub dim: usize,
    pub depth_positive: bool,
}

/// Assembles `ℓ(A/I)`, `ℓ(M/QM)`, `i(M)`, `μ(M)`, `Δ`, the dimension and
/// the depth flag for the cyclic module `A/J`.
pub fn scalar_invariants(
    i: &Ideal,
    j: &Ideal,
    seed: u64,
    retries: u32,
) -> Result<ScalarInvariants, DegreeError> {
    let spec = crate::filtration::module_spec(j)?;
    let res = minimal_resolution(&PresentedModule::cyclic(j));
    let l_mqm = if spec.dim >= 1 {
        let red = minimal_reduction(i, j, spec.dim, seed, retries)?;
        Some(red.q.sum(j).local_colength()?)
    } else {
        None
    };
    Ok(ScalarInvariants {
        l_ai: i.colength()?,
        l_mqm,
        i_m: res.initial_degree().unwrap_or(0),
        mu_m: res.min_generators(),
        delta: i.equigenerated_degree()?,
        dim: spec.dim,
        depth_positive: spec.depth_positive,
    })
}

fn verify_reduction(i: &Ideal, q: &Ideal, j_base: &Ideal, cap: usize) -> Option<usize> {
    let mut streak = 0usize;
    let mut power = Ideal::unit(i.ring()); // I^n starting at n = 0
    for n in 0..cap {
        let lhs = power.product(i).sum(j_base); // I^{n+1} + J, m-primary
        let rhs = q.product(&power).sum(j_base); // Q I^n + J
        // rhs ⊆ lhs always; literal basis equality is the cheap route,
        // the localized length comparison decides the general case
        let equal = lhs.equals(&rhs) || {
            match (lhs.colength(), rhs.local_colength()) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
        };
        if equal {
            streak += 1;
            if streak == 3 {
                return Some(n + 1 - streak);
            }
        } else {
            streak = 0;
        }
        power = power.product(i);
    }
    None
}
