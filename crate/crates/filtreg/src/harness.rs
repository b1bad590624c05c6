//! Experiment execution: compute every invariant for a configured
//! instance, evaluate every applicable inequality, and assemble a
//! self-contained report.
//!
//! Check identifiers form a fixed registry; each maps to exactly one
//! bound evaluator and one computed invariant. Inapplicable checks are
//! reported as skipped with a reason, never silently dropped.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bounds;
use crate::bounds::FiberMode;
use crate::config::{ExperimentConfig, FiltrationSpec};
use crate::degrees;
use crate::error::{BoundError, GradedError};
use crate::filtration::{module_spec, GoodFiltration};
use crate::graded::{
    filter_window, sample_generic, singh_identity_check, FilterRegChecker, GradedPieceModule,
};
use crate::ideal::Ideal;
use crate::module::PresentedModule;
use crate::numeric::{bigint_to_i64, eval_binomial_poly};
use crate::poly::Polynomial;
use crate::regularity::{
    graded_hilbert_coefficients, hilbert_coefficients, regularity, HilbertData,
    RegularityOptions, RegularityOutcome,
};
use crate::report::{
    CheckResult, CheckStatus, FiberInvariants, InvariantReport, Invariants, Provenance,
};
use crate::ring::PolyRing;

#[derive(Debug, Clone)]
pub enum HarnessError {
    /// bad configuration (exit code 2)
    Config(String),
    /// failure inside a computation stage (exit code 3)
    Computation { stage: String, message: String },
}

impl std::fmt::Display for HarnessError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HarnessError::Config(m) => write!(f, "configuration error: {m}"),
            HarnessError::Computation { stage, message } => {
                write!(f, "computation error in {stage}: {message}")
            }
        }
    }
}

fn comp_err<E: std::fmt::Display>(stage: &str) -> impl Fn(E) -> HarnessError + '_ {
    move |e| HarnessError::Computation {
        stage: stage.to_string(),
        message: e.to_string(),
    }
}

/// The registry of check identifiers.
pub const CHECK_IDS: &[&str] = &[
    "A3.i",
    "A3.ii",
    "Hilb.0",
    "Hilb.1",
    "Hilb.i",
    "A5.i",
    "A5.ii",
    "B3.i",
    "B3.ii",
    "B4.i",
    "B4.ii",
    "B5.i",
    "B5.ii",
    "C3.i",
    "C3.ii",
    "F1.a0",
    "F2.e0",
    "F2.ei",
    "F3.i",
    "F3.ii",
    "F3.iii",
    "F4.i",
    "F4.ii",
    "F4.iii",
    "FiberGraded.i",
    "FiberGraded.ii",
    "FiberGraded.iii",
    "Lemma-r<=reg",
    "GS-agreement",
    "Singh",
    "FilterReg-colon",
    "C1-ineq",
    "A7-ineq",
    "C2-implication",
    "B1-ineq",
    "FiberSeq-dims",
];

/// Family of a check id, used by the `--filter` tag.
pub fn check_family(id: &str) -> &'static str {
    if id.starts_with("A3") || id.starts_with("Hilb") || id.starts_with("A5") {
        "local"
    } else if id.starts_with("B3")
        || id.starts_with("B4")
        || id.starts_with("B5")
        || id.starts_with("C3")
    {
        "graded"
    } else if id.starts_with('F') {
        "fiber"
    } else {
        "structural"
    }
}

fn enabled(id: &str, filters: &Option<Vec<String>>) -> bool {
    match filters {
        None => true,
        Some(fs) => fs.iter().any(|f| {
            let f = f.to_lowercase();
            id.to_lowercase().starts_with(&f) || check_family(id) == f
        }),
    }
}

struct Timer {
    timings: BTreeMap<String, u128>,
}

impl Timer {
    fn new() -> Timer {
        Timer {
            timings: BTreeMap::new(),
        }
    }

    fn stage<T, F: FnOnce() -> T>(&mut self, name: &str, f: F) -> T {
        let start = Instant::now();
        let out = f();
        self.timings
            .insert(name.to_string(), start.elapsed().as_millis());
        out
    }
}

/// Outcome of the fiber-cone stage: either the invariants or the reason
/// the fiber checks are skipped.
enum FiberStage {
    Absent(String),
    Ready(Box<FiberData>),
}

struct FiberData {
    inv: FiberInvariants,
    scaled: GoodFiltration,
    cone: GradedPieceModule,
    q: Ideal,
}

/// Runs a full experiment. Deterministic for a fixed config and seed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<InvariantReport, HarnessError> {
    let mut timer = Timer::new();
    let mut retries: BTreeMap<String, u32> = BTreeMap::new();

    // ring and ideals
    let var_refs: Vec<&str> = cfg.variables.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(cfg.characteristic, &var_refs)
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let parse_ideal = |gens: &[String]| -> Result<Ideal, HarnessError> {
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        Ideal::parse(&ring, &refs).map_err(|e| HarnessError::Config(e.to_string()))
    };
    let j = parse_ideal(&cfg.j_gens)?;
    let i = parse_ideal(&cfg.i_gens)?;
    if j.is_unit_ideal() {
        return Err(HarnessError::Config("J must be a proper ideal".into()));
    }
    if !j.is_homogeneous() || j.generators().iter().any(|g| !g.is_homogeneous()) {
        return Err(HarnessError::Config(
            "J must be homogeneous so that resolution-based invariants apply".into(),
        ));
    }

    // module data and filtration
    let spec = timer
        .stage("module-spec", || module_spec(&j))
        .map_err(comp_err("module-spec"))?;
    let d = spec.dim;
    let filtration = timer.stage("filtration", || match &cfg.filtration {
        FiltrationSpec::Adic => GoodFiltration::adic(&i, &j),
        FiltrationSpec::Chain(chain) => {
            let ideals: Result<Vec<Ideal>, HarnessError> = chain
                .iter()
                .map(|gens| parse_ideal(gens))
                .collect();
            match ideals {
                Ok(ideals) => GoodFiltration::validate(&ideals, &i, &j),
                Err(HarnessError::Config(m)) => {
                    Err(crate::error::FiltrationError::Kernel(
                        crate::error::KernelError::Parse(m),
                    ))
                }
                Err(_) => unreachable!(),
            }
        }
    });
    let filtration = Arc::new(filtration.map_err(comp_err("filtration"))?);
    let r = filtration.reduction_index();
    let is_adic = matches!(cfg.filtration, FiltrationSpec::Adic);

    // resolution-based invariants
    let m_mod = PresentedModule::cyclic(&j);
    let resolution = timer.stage("resolution", || degrees::minimal_resolution(&m_mod));
    let reg_m = resolution.reg().expect("A/J is nonzero");
    let i_m = resolution.initial_degree().expect("A/J is nonzero");
    let mu_m = resolution.min_generators() as i64;
    let cohen_macaulay = resolution.length() == ring.num_vars() - d;
    let l_ai = i.colength().map_err(comp_err("colength"))? as i64;
    let (e_im, d_mult) = timer
        .stage("multiplicity", || degrees::multiplicity(&i, &m_mod))
        .map_err(comp_err("multiplicity"))?;
    if d_mult != d {
        return Err(HarnessError::Computation {
            stage: "multiplicity".into(),
            message: format!(
                "dimension mismatch: Hilbert polynomial gives {d}, difference table gives {d_mult}"
            ),
        });
    }
    let hdeg_i = timer
        .stage("hdeg-I", || degrees::hdeg(&i, &m_mod))
        .map_err(comp_err("hdeg"))? as i64;
    let maximal = Ideal::maximal(&ring);
    let hdeg_m = timer
        .stage("hdeg-m", || degrees::hdeg(&maximal, &m_mod))
        .map_err(comp_err("hdeg"))? as i64;
    let delta = i
        .equigenerated_degree()
        .map_err(comp_err("equigenerated"))?
        .map(|v| v as i64);
    let reduction = if d >= 1 {
        let red = timer
            .stage("reduction", || {
                degrees::minimal_reduction(&i, &j, d, cfg.seed, cfg.retries)
            })
            .map_err(comp_err("reduction"))?;
        retries.insert("reduction".into(), red.retries);
        Some(red)
    } else {
        None
    };
    let l_mqm = match &reduction {
        Some(red) => Some(
            red.q
                .sum(&j)
                .local_colength()
                .map_err(comp_err("colength"))? as i64,
        ),
        None => None,
    };

    // regularity of G(𝔉), with the polynomial-agreement guard retrying on
    // a fresh seed
    let engine_cap = engine_cap(cfg, d, hdeg_i, r);
    let g_module = GradedPieceModule::assoc_graded(&filtration, cfg.cutoff_cap);
    let (g_out, hilb) = timer.stage("regularity-G", || {
        certified_regularity(&g_module, &filtration, d, cfg, engine_cap)
    })?;
    retries.insert("regularity-G".into(), g_out.total_retries);
    let reg_g = g_out.data.reg;
    let reg_g0 = reg_g.unwrap_or(0);
    let window = filter_window(&g_module) as i64;

    // generic element for the structural identities
    let x_elt = timer
        .stage("generic-x", || {
            sample_generic(&i, &[&g_module], cfg.seed, cfg.retries)
        })
        .map_err(comp_err("generic-x"))?;
    retries.insert("generic-x".into(), x_elt.retries);

    // extended-degree axiom (ii) is observed, never asserted: a single
    // random section gives only probabilistic evidence
    let mut notes: Vec<String> = Vec::new();
    if d >= 1 && x_elt.element.is_homogeneous() {
        let section = j.sum(&Ideal::new(&ring, vec![x_elt.element.clone()]));
        if section.is_proper() {
            let hdeg_section = degrees::hdeg(&i, &PresentedModule::cyclic(&section))
                .map_err(comp_err("hdeg"))?;
            notes.push(format!(
                "axiom-ii informational: hdeg(I,M) = {hdeg_i}, hdeg(I,M/xM) = {hdeg_section}"
            ));
        }
    }

    // regularity of G(𝔉/H⁰) for the quotient comparisons
    let reg_gbar = if spec.h0_length == 0 {
        reg_g
    } else {
        let fbar = Arc::new(
            filtration
                .quotient(&spec.saturation)
                .map_err(comp_err("quotient-filtration"))?,
        );
        let gbar = GradedPieceModule::assoc_graded(&fbar, cfg.cutoff_cap);
        let out = timer
            .stage("regularity-Gbar", || {
                regularity(
                    &gbar,
                    &RegularityOptions {
                        seed: cfg.seed,
                        retries: cfg.retries,
                        cap: engine_cap,
                    },
                )
            })
            .map_err(comp_err("regularity-Gbar"))?;
        retries.insert("regularity-Gbar".into(), out.total_retries);
        out.data.reg
    };

    // fiber stage
    let fiber = timer.stage("fiber", || {
        fiber_stage(cfg, &filtration, d, engine_cap, &mut retries)
    })?;

    // assemble invariants
    let top_dims = (reg_g0 + d as i64 + 3).min(cfg.cutoff_cap);
    let dims_g = g_module
        .dims(top_dims)
        .map_err(comp_err("graded-dims"))?;
    let invariants = Invariants {
        d,
        r,
        l_ai,
        e_im: e_im as i64,
        hdeg_i,
        hdeg_m,
        reg_m,
        i_m,
        mu_m,
        delta,
        l_mqm,
        h0_len: spec.h0_length as i64,
        depth_positive: spec.depth_positive,
        cohen_macaulay,
        reg_g,
        geom_g: g_out.data.geom,
        a: g_out.data.a.clone(),
        e_coeffs: hilb.e.clone(),
        postulation: hilb.postulation,
        dims_g,
        fiber: match &fiber {
            FiberStage::Ready(f) => Some(f.inv.clone()),
            FiberStage::Absent(_) => None,
        },
    };

    // evaluate the registry
    let checks = timer.stage("checks", || {
        build_checks(BuildChecks {
            cfg,
            ring: &ring,
            i: &i,
            j: &j,
            filtration: &filtration,
            inv: &invariants,
            hilb: &hilb,
            reg_gbar,
            x: &x_elt.element,
            window,
            fiber: &fiber,
            is_adic,
        })
    })?;

    Ok(InvariantReport {
        name: cfg.name.clone(),
        config_text: cfg.to_text(),
        invariants,
        checks,
        provenance: Provenance {
            seed: cfg.seed,
            retries,
            timings_ms: timer.timings,
            notes,
        },
    })
}

/// Degree cap for the regularity engine: the user cap, tightened by the
/// proven bound when that is smaller.
fn engine_cap(cfg: &ExperimentConfig, d: usize, hdeg_i: i64, r: usize) -> i64 {
    let user = cfg.cutoff_cap - 2;
    if d == 0 {
        return user;
    }
    match bounds::bound_assoc_graded(d as i64, hdeg_i, r as i64) {
        Ok(b) => match bigint_to_i64(&b) {
            Some(v) => user.min(v + d as i64 + 5),
            None => user,
        },
        Err(_) => user,
    }
}

/// Regularity plus Hilbert coefficients, re-run with a fresh seed when the
/// Grothendieck–Serre agreement guard rejects the interpolation.
fn certified_regularity(
    module: &GradedPieceModule,
    filtration: &Arc<GoodFiltration>,
    d: usize,
    cfg: &ExperimentConfig,
    cap: i64,
) -> Result<(RegularityOutcome, HilbertData), HarnessError> {
    let mut last: Option<GradedError> = None;
    for attempt in 0..=cfg.retries {
        let opts = RegularityOptions {
            seed: cfg.seed.wrapping_add(u64::from(attempt).wrapping_mul(0x9e37_79b9)),
            retries: cfg.retries,
            cap,
        };
        let out = regularity(module, &opts).map_err(comp_err("regularity-G"))?;
        match hilbert_coefficients(filtration, out.data.reg.unwrap_or(0), d) {
            Ok(h) => return Ok((out, h)),
            Err(GradedError::InterpolationInconsistent) => {
                last = Some(GradedError::InterpolationInconsistent);
            }
            Err(e) => return Err(comp_err("hilbert-coefficients")(e)),
        }
    }
    Err(HarnessError::Computation {
        stage: "hilbert-coefficients".into(),
        message: last
            .map(|e| e.to_string())
            .unwrap_or_else(|| "agreement guard failed".into()),
    })
}

fn fiber_stage(
    cfg: &ExperimentConfig,
    filtration: &Arc<GoodFiltration>,
    d: usize,
    cap: i64,
    retries: &mut BTreeMap<String, u32>,
) -> Result<FiberStage, HarnessError> {
    let Some(q_gens) = &cfg.q_gens else {
        return Ok(FiberStage::Absent("no q configured".into()));
    };
    let refs: Vec<&str> = q_gens.iter().map(|s| s.as_str()).collect();
    let q = Ideal::parse(filtration.ring(), &refs)
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    if d == 0 {
        return Ok(FiberStage::Absent("dimension 0".into()));
    }
    let cone = match GradedPieceModule::fiber_cone(filtration, &q, cfg.cutoff_cap) {
        Ok(c) => c,
        Err(GradedError::QDoesNotContainI) => {
            return Ok(FiberStage::Absent("QDoesNotContainI".into()))
        }
        Err(GradedError::HypothesisFails(n)) => {
            return Ok(FiberStage::Absent(format!("HypothesisFails({n})")))
        }
        Err(e) => return Err(comp_err("fiber-cone")(e)),
    };
    let scaled = filtration.scale(&q).map_err(comp_err("scale"))?;
    let out = regularity(
        &cone,
        &RegularityOptions {
            seed: cfg.seed,
            retries: cfg.retries,
            cap,
        },
    )
    .map_err(comp_err("regularity-F"))?;
    retries.insert("regularity-F".into(), out.total_retries);
    let dim_f = out.data.dim;
    let reg_f = out.data.reg;
    let top = (reg_f.unwrap_or(0) + dim_f as i64 + 2).min(cfg.cutoff_cap);
    let dims: Vec<i64> = cone
        .dims(top)
        .map_err(comp_err("fiber-dims"))?
        .into_iter()
        .map(|v| v as i64)
        .collect();
    let e_f = graded_hilbert_coefficients(&dims, reg_f.unwrap_or(-1), dim_f)
        .map_err(comp_err("fiber-coefficients"))?;
    Ok(FiberStage::Ready(Box::new(FiberData {
        inv: FiberInvariants {
            dim: dim_f,
            reg: reg_f,
            a0: out.data.a[0],
            e: e_f,
            r_scaled: scaled.reduction_index(),
        },
        scaled,
        cone,
        q,
    })))
}

struct BuildChecks<'a> {
    cfg: &'a ExperimentConfig,
    ring: &'a Arc<PolyRing>,
    i: &'a Ideal,
    j: &'a Ideal,
    filtration: &'a Arc<GoodFiltration>,
    inv: &'a Invariants,
    hilb: &'a HilbertData,
    reg_gbar: Option<i64>,
    x: &'a Polynomial,
    window: i64,
    fiber: &'a FiberStage,
    is_adic: bool,
}

fn build_checks(ctx: BuildChecks) -> Result<Vec<CheckResult>, HarnessError> {
    let mut out: Vec<CheckResult> = Vec::new();
    let filters = &ctx.cfg.checks;
    let inv = ctx.inv;
    let d = inv.d as i64;
    let dd = inv.hdeg_i;
    let r = inv.r as i64;
    let reg_g = inv.reg_g;
    let reg_g0 = reg_g.unwrap_or(0);
    let big = BigInt::from;
    let opt_big = |v: Option<i64>| v.map(BigInt::from);
    let dim_skip = "dimension 0";

    let mut push = |c: CheckResult, out: &mut Vec<CheckResult>| {
        if enabled(&c.id, filters) {
            out.push(c);
        }
    };

    let bound_or_skip = |id: &str, res: Result<BigInt, BoundError>, computed: Option<i64>| {
        match res {
            Ok(b) => CheckResult::le(id, opt_big(computed), b),
            Err(e) => CheckResult::skip(id, &e.to_string()),
        }
    };

    // A3: main bound for the associated graded module
    if d == 0 {
        push(CheckResult::skip("A3.i", dim_skip), &mut out);
        push(CheckResult::skip("A3.ii", dim_skip), &mut out);
    } else if d == 1 {
        push(
            bound_or_skip("A3.i", bounds::bound_assoc_graded(1, dd, r), reg_g),
            &mut out,
        );
        push(CheckResult::skip("A3.ii", "requires d >= 2"), &mut out);
    } else {
        push(CheckResult::skip("A3.i", "requires d = 1"), &mut out);
        push(
            bound_or_skip("A3.ii", bounds::bound_assoc_graded(d, dd, r), reg_g),
            &mut out,
        );
    }

    // Hilbert coefficients
    push(
        CheckResult::eq("Hilb.0", ctx.hilb.e[0].clone(), big(inv.e_im)),
        &mut out,
    );
    if d >= 1 {
        let e1 = ctx.hilb.e[1].abs();
        match bounds::bound_hilbert_coeff(1, d, dd, r) {
            Ok(b) => push(CheckResult::le("Hilb.1", Some(e1), b), &mut out),
            Err(e) => push(CheckResult::skip("Hilb.1", &e.to_string()), &mut out),
        }
        for idx in 2..=d {
            let id = format!("Hilb.{idx}");
            let ei = ctx.hilb.e[idx as usize].abs();
            match bounds::bound_hilbert_coeff(idx, d, dd, r) {
                Ok(b) => push(CheckResult::le(&id, Some(ei), b), &mut out),
                Err(e) => push(CheckResult::skip(&id, &e.to_string()), &mut out),
            }
        }
    } else {
        push(CheckResult::skip("Hilb.1", dim_skip), &mut out);
    }

    // A5: Hilbert–Samuel comparisons for the adic function, worst degree
    if d >= 1 {
        let adic = GoodFiltration::adic(ctx.i, ctx.j).map_err(comp_err("adic"))?;
        let top = reg_g0 + 3;
        let mut worst_i: Option<(BigInt, BigInt)> = None;
        let mut worst_ii: Option<(BigInt, BigInt)> = None;
        for n in 0..=top {
            let lhs = big(adic.hilbert_samuel(n as usize).map_err(comp_err("A5"))? as i64);
            if let Some(l_mqm) = inv.l_mqm {
                let b = bounds::bound_hs_binomial(n, d, l_mqm).map_err(comp_err("A5"))?;
                if worst_i.as_ref().is_none_or(|(c, bb)| &lhs - &b > c - bb) {
                    worst_i = Some((lhs.clone(), b));
                }
            }
            let b2 = bounds::bound_hs_binomial(n, d, dd).map_err(comp_err("A5"))?;
            if worst_ii.as_ref().is_none_or(|(c, bb)| &lhs - &b2 > c - bb) {
                worst_ii = Some((lhs, b2));
            }
        }
        match worst_i {
            Some((c, b)) => push(CheckResult::le("A5.i", Some(c), b), &mut out),
            None => push(CheckResult::skip("A5.i", "no reduction available"), &mut out),
        }
        let (c, b) = worst_ii.unwrap();
        push(CheckResult::le("A5.ii", Some(c), b), &mut out);
    } else {
        push(CheckResult::skip("A5.i", dim_skip), &mut out);
        push(CheckResult::skip("A5.ii", dim_skip), &mut out);
    }

    // B3 / B4 / B5: graded bounds
    if d == 0 {
        for id in ["B3.i", "B3.ii", "B4.i", "B4.ii", "B5.i", "B5.ii"] {
            push(CheckResult::skip(id, dim_skip), &mut out);
        }
    } else {
        let (b3a, b3b) = ("B3.i", "B3.ii");
        if d == 1 {
            push(
                bound_or_skip(b3a, bounds::bound_graded_hdeg(1, inv.l_ai, inv.hdeg_m, r), reg_g),
                &mut out,
            );
            push(CheckResult::skip(b3b, "requires d >= 2"), &mut out);
        } else {
            push(CheckResult::skip(b3a, "requires d = 1"), &mut out);
            push(
                bound_or_skip(b3b, bounds::bound_graded_hdeg(d, inv.l_ai, inv.hdeg_m, r), reg_g),
                &mut out,
            );
        }
        let ambient = ctx.j.is_zero_ideal() && ctx.is_adic;
        if ambient {
            if d == 1 {
                push(
                    bound_or_skip("B4.i", bounds::bound_ambient_graded(1, inv.l_ai), reg_g),
                    &mut out,
                );
                push(CheckResult::skip("B4.ii", "requires d >= 2"), &mut out);
            } else {
                push(CheckResult::skip("B4.i", "requires d = 1"), &mut out);
                push(
                    bound_or_skip("B4.ii", bounds::bound_ambient_graded(d, inv.l_ai), reg_g),
                    &mut out,
                );
            }
        } else {
            let why = "needs the ambient adic instance (J = 0, adic filtration)";
            push(CheckResult::skip("B4.i", why), &mut out);
            push(CheckResult::skip("B4.ii", why), &mut out);
        }
        let nvars = ctx.ring.num_vars() as i64;
        let b5 = bounds::bound_graded_reg_m(d, inv.l_ai, inv.mu_m, inv.reg_m, inv.i_m, nvars, r);
        if d == 1 {
            push(bound_or_skip("B5.i", b5, reg_g), &mut out);
            push(CheckResult::skip("B5.ii", "requires d >= 2"), &mut out);
        } else {
            push(CheckResult::skip("B5.i", "requires d = 1"), &mut out);
            push(bound_or_skip("B5.ii", b5, reg_g), &mut out);
        }
        // C3: equigenerated case
        match (inv.delta, inv.l_mqm) {
            (Some(delta), Some(l_mqm)) => {
                let c3 = bounds::bound_equigenerated(d, l_mqm, r, inv.reg_m, inv.i_m, Some(delta));
                if d == 1 {
                    push(bound_or_skip("C3.i", c3, reg_g), &mut out);
                    push(CheckResult::skip("C3.ii", "requires d >= 2"), &mut out);
                } else {
                    push(CheckResult::skip("C3.i", "requires d = 1"), &mut out);
                    push(bound_or_skip("C3.ii", c3, reg_g), &mut out);
                }
            }
            _ => {
                let why = "I is not equigenerated";
                push(CheckResult::skip("C3.i", why), &mut out);
                push(CheckResult::skip("C3.ii", why), &mut out);
            }
        }
    }

    // fiber checks
    build_fiber_checks(&ctx, &mut out, &mut push)?;

    // structural checks
    push(
        CheckResult::le("Lemma-r<=reg", Some(big(r)), big(reg_g0)),
        &mut out,
    );
    {
        // Grothendieck–Serre agreement on (reg, reg + d + 3]
        let mut violations = 0i64;
        for n in (reg_g0 + 1)..=(reg_g0 + d + 3) {
            if eval_binomial_poly(&ctx.hilb.e, n) != big(ctx.hilb.h[n as usize]) {
                violations += 1;
            }
        }
        push(CheckResult::identity("GS-agreement", violations), &mut out);
    }
    {
        let mut violations = 0i64;
        for n in 0..=(reg_g0 + ctx.window) {
            if !singh_identity_check(ctx.filtration, ctx.x, n as usize)
                .map_err(comp_err("Singh"))?
            {
                violations += 1;
            }
        }
        push(CheckResult::identity("Singh", violations), &mut out);
    }
    {
        let checker =
            FilterRegChecker::new(ctx.filtration, ctx.x).map_err(comp_err("FilterReg-colon"))?;
        let mut violations = 0i64;
        for n in (reg_g0 + 1)..=(reg_g0 + ctx.window) {
            let n = n as usize;
            if !checker
                .intersection_level(n)
                .map_err(comp_err("FilterReg-colon"))?
            {
                violations += 1;
            }
            if !checker.colon_level(n).map_err(comp_err("FilterReg-colon"))? {
                violations += 1;
            }
            if !checker
                .disjoint_level(n)
                .map_err(comp_err("FilterReg-colon"))?
            {
                violations += 1;
            }
        }
        push(
            CheckResult::identity("FilterReg-colon", violations),
            &mut out,
        );
    }
    {
        let rhs = ctx
            .reg_gbar
            .unwrap_or(0)
            .max(inv.reg_m - inv.i_m + r);
        push(
            CheckResult::le("C1-ineq", opt_big(reg_g), big(rhs)),
            &mut out,
        );
        let rhs7 = ctx.reg_gbar.unwrap_or(0).max(r) + inv.h0_len;
        push(
            CheckResult::le("A7-ineq", opt_big(reg_g), big(rhs7)),
            &mut out,
        );
    }
    {
        // x filter-regular on G forces x filter-regular on M:
        // (J : x) ⊆ (J : m^∞)
        let sat = ctx
            .j
            .saturation(&Ideal::maximal(ctx.ring))
            .map_err(comp_err("C2"))?;
        let colon = ctx.j.colon_poly(ctx.x).map_err(comp_err("C2"))?;
        let violations = i64::from(!sat.contains_ideal(&colon));
        push(
            CheckResult::identity("C2-implication", violations),
            &mut out,
        );
    }
    {
        let rhs = BigInt::from(inv.l_ai).pow(inv.d as u32) * big(inv.hdeg_m);
        push(
            CheckResult::le("B1-ineq", Some(big(inv.hdeg_i)), rhs),
            &mut out,
        );
    }
    build_fiber_seq_check(&ctx, &mut out, &mut push)?;

    Ok(out)
}

fn build_fiber_checks(
    ctx: &BuildChecks,
    out: &mut Vec<CheckResult>,
    push: &mut impl FnMut(CheckResult, &mut Vec<CheckResult>),
) -> Result<(), HarnessError> {
    let inv = ctx.inv;
    let d = inv.d as i64;
    let dd = inv.hdeg_i;
    let r = inv.r as i64;
    let fiber_ids: Vec<String> = {
        let mut ids = vec![
            "F1.a0".to_string(),
            "F2.e0".to_string(),
        ];
        for idx in 1..d.max(1) {
            ids.push(format!("F2.e{idx}"));
        }
        ids.extend(
            ["F3.i", "F3.ii", "F3.iii", "F4.i", "F4.ii", "F4.iii"]
                .iter()
                .map(|s| s.to_string()),
        );
        ids.extend(
            ["FiberGraded.i", "FiberGraded.ii", "FiberGraded.iii"]
                .iter()
                .map(|s| s.to_string()),
        );
        ids
    };
    let data = match ctx.fiber {
        FiberStage::Absent(reason) => {
            for id in &fiber_ids {
                push(CheckResult::skip(id, reason), out);
            }
            return Ok(());
        }
        FiberStage::Ready(data) => data,
    };
    let f = &data.inv;
    push(
        match bounds::bound_fiber(d, dd, r, FiberMode::A0) {
            Ok(b) => CheckResult::le("F1.a0", f.a0.map(BigInt::from), b),
            Err(e) => CheckResult::skip("F1.a0", &e.to_string()),
        },
        out,
    );
    push(
        match bounds::bound_fiber(d, dd, r, FiberMode::E0) {
            Ok(b) => CheckResult::le("F2.e0", Some(f.e[0].clone()), b),
            Err(e) => CheckResult::skip("F2.e0", &e.to_string()),
        },
        out,
    );
    for idx in 1..d.max(1) {
        let id = format!("F2.e{idx}");
        if (idx as usize) < f.e.len() {
            match bounds::bound_fiber(d, dd, r, FiberMode::Ei(idx)) {
                Ok(b) => push(CheckResult::le(&id, Some(f.e[idx as usize].abs()), b), out),
                Err(e) => push(CheckResult::skip(&id, &e.to_string()), out),
            }
        } else {
            push(CheckResult::skip(&id, "coefficient not present"), out);
        }
    }
    let f3_variant = match d {
        1 => "F3.i",
        2 => "F3.ii",
        _ => "F3.iii",
    };
    for id in ["F3.i", "F3.ii", "F3.iii"] {
        if id == f3_variant {
            match bounds::bound_fiber(d, dd, r, FiberMode::Reg) {
                Ok(b) => push(CheckResult::le(id, f.reg.map(BigInt::from), b), out),
                Err(e) => push(CheckResult::skip(id, &e.to_string()), out),
            }
        } else {
            push(CheckResult::skip(id, "dimension selects another case"), out);
        }
    }
    // classical fiber cone: J = 0, adic, q = m
    let classical =
        ctx.j.is_zero_ideal() && ctx.is_adic && data.q.equals(&Ideal::maximal(ctx.ring));
    let f4_variant = match d {
        1 => "F4.i",
        2 => "F4.ii",
        _ => "F4.iii",
    };
    for id in ["F4.i", "F4.ii", "F4.iii"] {
        if !classical {
            push(
                CheckResult::skip(id, "needs the classical fiber cone (J = 0, adic, q = m)"),
                out,
            );
        } else if id == f4_variant {
            match bounds::bound_fiber_classical(d, dd) {
                Ok(b) => push(CheckResult::le(id, f.reg.map(BigInt::from), b), out),
                Err(e) => push(CheckResult::skip(id, &e.to_string()), out),
            }
        } else {
            push(CheckResult::skip(id, "dimension selects another case"), out);
        }
    }
    let fg_variant = match d {
        1 => "FiberGraded.i",
        2 => "FiberGraded.ii",
        _ => "FiberGraded.iii",
    };
    for id in ["FiberGraded.i", "FiberGraded.ii", "FiberGraded.iii"] {
        if id == fg_variant {
            match bounds::bound_fiber_graded(d, inv.l_ai, dd, r) {
                Ok(b) => push(CheckResult::le(id, f.reg.map(BigInt::from), b), out),
                Err(e) => push(CheckResult::skip(id, &e.to_string()), out),
            }
        } else {
            push(CheckResult::skip(id, "dimension selects another case"), out);
        }
    }
    Ok(())
}

/// `dim F_q(𝔉)_n = dim G(q𝔉)_n − dim N_{n−1}` with `N_n = qM_n/M_{n+1}`,
/// all three sides computed independently by colengths.
fn build_fiber_seq_check(
    ctx: &BuildChecks,
    out: &mut Vec<CheckResult>,
    push: &mut impl FnMut(CheckResult, &mut Vec<CheckResult>),
) -> Result<(), HarnessError> {
    let data = match ctx.fiber {
        FiberStage::Absent(reason) => {
            push(CheckResult::skip("FiberSeq-dims", reason), out);
            return Ok(());
        }
        FiberStage::Ready(data) => data,
    };
    let f = ctx.filtration;
    let q = &data.q;
    let top = ctx
        .inv
        .reg_g
        .unwrap_or(0)
        .max(data.inv.reg.unwrap_or(0))
        + 3;
    let mut violations = 0i64;
    for n in 0..=top {
        let fib = data.cone.dim(n).map_err(comp_err("FiberSeq"))? as i64;
        let gq_n = data.scaled.rep(n as usize + 1).colength().map_err(comp_err("FiberSeq"))?
            as i64
            - data.scaled.rep(n as usize).colength().map_err(comp_err("FiberSeq"))? as i64;
        let n_prev = if n == 0 {
            0
        } else {
            // ℓ(q M_{n-1} / M_n)
            f.rep(n as usize).colength().map_err(comp_err("FiberSeq"))? as i64
                - q.product(&f.rep(n as usize - 1))
                    .sum(f.base())
                    .colength()
                    .map_err(comp_err("FiberSeq"))? as i64
        };
        if fib != gq_n - n_prev {
            violations += 1;
        }
    }
    push(CheckResult::identity("FiberSeq-dims", violations), out);
    Ok(())
}

/// Evaluates a bound by registry identifier from named integer arguments,
/// for the `bound` CLI subcommand. The `.i/.ii/.iii` suffix may be
/// omitted; the dimension argument selects the case.
pub fn evaluate_bound_by_id(
    id: &str,
    args: &BTreeMap<String, i64>,
) -> Result<BigInt, BoundError> {
    let get = |k: &str| -> Result<i64, BoundError> {
        args.get(k)
            .copied()
            .ok_or_else(|| BoundError::MissingArgument(k.to_string()))
    };
    let base = id.split('.').next().unwrap_or(id);
    match base {
        "A3" => bounds::bound_assoc_graded(get("d")?, get("D")?, get("r")?),
        "Hilb" => {
            let idx = id
                .split('.')
                .nth(1)
                .and_then(|s| s.parse::<i64>().ok())
                .map_or_else(|| get("i"), Ok)?;
            bounds::bound_hilbert_coeff(idx, get("d")?, get("D")?, get("r")?)
        }
        "A5" => {
            let b = if id.ends_with(".ii") {
                get("D")?
            } else {
                get("lMQM").or_else(|_| get("D"))?
            };
            bounds::bound_hs_binomial(get("n")?, get("d")?, b)
        }
        "B3" => bounds::bound_graded_hdeg(get("d")?, get("lAI")?, get("hdegM")?, get("r")?),
        "B4" => bounds::bound_ambient_graded(get("d")?, get("lAI")?),
        "B5" => bounds::bound_graded_reg_m(
            get("d")?,
            get("lAI")?,
            get("muM")?,
            get("regM")?,
            get("iM")?,
            get("n")?,
            get("r")?,
        ),
        "C3" => bounds::bound_equigenerated(
            get("d")?,
            get("lMQM")?,
            get("r")?,
            get("regM")?,
            get("iM")?,
            get("delta").ok(),
        ),
        "F1" => bounds::bound_fiber(get("d")?, get("D")?, get("r")?, FiberMode::A0),
        "F2" => {
            let idx = id.split('.').nth(1).unwrap_or("e0");
            if idx == "e0" {
                bounds::bound_fiber(get("d")?, get("D")?, get("r")?, FiberMode::E0)
            } else {
                let i: i64 = idx
                    .trim_start_matches('e')
                    .parse()
                    .map_err(|_| BoundError::UnknownBound(id.to_string()))?;
                bounds::bound_fiber(get("d")?, get("D")?, get("r")?, FiberMode::Ei(i))
            }
        }
        "F3" => bounds::bound_fiber(get("d")?, get("D")?, get("r")?, FiberMode::Reg),
        "F4" => bounds::bound_fiber_classical(get("d")?, get("D")?),
        "FiberGraded" => {
            bounds::bound_fiber_graded(get("d")?, get("lAI")?, get("hdegIM")?, get("r")?)
        }
        _ => Err(BoundError::UnknownBound(id.to_string())),
    }
}

/// Pass/fail/skip counts of a check list.
pub fn tally(checks: &[CheckResult]) -> (usize, usize, usize) {
    let mut pass = 0;
    let mut fail = 0;
    let mut skip = 0;
    for c in checks {
        match c.status {
            CheckStatus::Pass => pass += 1,
            CheckStatus::Fail => fail += 1,
            CheckStatus::Skip => skip += 1,
        }
    }
    (pass, fail, skip)
}
