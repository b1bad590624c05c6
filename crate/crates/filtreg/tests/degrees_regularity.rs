//! Resolution-route against filter-regular-route comparisons, homological
//! degree axioms, reduction properties and Hilbert-coefficient identities.

use std::sync::Arc;

use num_bigint::BigInt;

use filtreg::degrees::{hdeg, minimal_reduction, multiplicity, reg_module};
use filtreg::filtration::{module_spec, GoodFiltration};
use filtreg::graded::GradedPieceModule;
use filtreg::ideal::Ideal;
use filtreg::module::PresentedModule;
use filtreg::regularity::{hilbert_coefficients, regularity, RegularityOptions};
use filtreg::ring::PolyRing;

fn ring2() -> Arc<PolyRing> {
    PolyRing::new(32003, &["x", "y"]).unwrap()
}

fn opts(seed: u64) -> RegularityOptions {
    RegularityOptions {
        seed,
        retries: 5,
        cap: 40,
    }
}

#[test]
fn homogeneous_oracle_resolution_vs_filter_regular() {
    // for homogeneous J with the m-adic filtration, G ≅ A/J, so the two
    // regularity routes must agree exactly
    let ring = ring2();
    let cases: &[&[&str]] = &[
        &[],
        &["x^2", "x*y"],
        &["x^2", "y^2"],
        &["x^2", "x*y", "y^2"],
        &["x^3", "x*y"],
        &["y^2"],
    ];
    let m = Ideal::maximal(&ring);
    for (k, gens) in cases.iter().enumerate() {
        let j = Ideal::parse(&ring, gens).unwrap();
        let resolution_reg = reg_module(&PresentedModule::cyclic(&j)).unwrap();
        let f = Arc::new(GoodFiltration::adic(&m, &j).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 32);
        let out = regularity(&g, &opts(100 + k as u64)).unwrap();
        assert_eq!(out.data.reg, Some(resolution_reg), "J = {gens:?}");
    }
    // and in three variables
    let r3 = PolyRing::new(32003, &["x", "y", "z"]).unwrap();
    let j = Ideal::maximal(&r3);
    let resolution_reg = reg_module(&PresentedModule::cyclic(&j)).unwrap();
    let f = Arc::new(GoodFiltration::adic(&Ideal::maximal(&r3), &j).unwrap());
    let g = GradedPieceModule::assoc_graded(&f, 24);
    let out = regularity(&g, &opts(7)).unwrap();
    assert_eq!(out.data.reg, Some(resolution_reg));
}

#[test]
fn reg_dominates_reduction_index() {
    let ring = ring2();
    let i = Ideal::parse(&ring, &["x^2", "y^2"]).unwrap();
    let m = Ideal::maximal(&ring);
    let scaled = Arc::new(
        GoodFiltration::adic(&i, &Ideal::zero(&ring))
            .unwrap()
            .scale(&m)
            .unwrap(),
    );
    let g = GradedPieceModule::assoc_graded(&scaled, 32);
    let out = regularity(&g, &opts(3)).unwrap();
    assert!(out.data.reg.unwrap() >= scaled.reduction_index() as i64);
}

#[test]
fn positive_depth_gives_reg_equals_geom() {
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    for gens in [&[][..], &["y^2"][..]] {
        let j = Ideal::parse(&ring, gens).unwrap();
        let spec = module_spec(&j).unwrap();
        assert!(spec.depth_positive);
        let f = Arc::new(GoodFiltration::adic(&m, &j).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 32);
        let out = regularity(&g, &opts(11)).unwrap();
        assert_eq!(out.data.reg, out.data.geom, "J = {gens:?}");
    }
}

#[test]
fn quotient_by_socle_regularity_bound() {
    // reg(G(𝔉)) ≤ max{reg(G(𝔉bar)), r} + ℓ(H⁰)
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    for gens in [&["x^2", "x*y"][..], &["x^3", "x*y"][..]] {
        let j = Ideal::parse(&ring, gens).unwrap();
        let spec = module_spec(&j).unwrap();
        assert!(!spec.depth_positive);
        let f = Arc::new(GoodFiltration::adic(&m, &j).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 32);
        let reg = regularity(&g, &opts(13)).unwrap().data.reg.unwrap();
        let fbar = Arc::new(f.quotient(&spec.saturation).unwrap());
        let gbar = GradedPieceModule::assoc_graded(&fbar, 32);
        let reg_bar = regularity(&gbar, &opts(13)).unwrap().data.reg.unwrap();
        let r = f.reduction_index() as i64;
        assert!(reg <= reg_bar.max(r) + spec.h0_length as i64);
    }
}

#[test]
fn hdeg_axiom_additivity_over_socle() {
    // hdeg(I, M) = hdeg(I, M/H⁰) + ℓ(H⁰) on depth-zero instances
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    let i2 = Ideal::parse(&ring, &["x^2", "y^2"]).unwrap();
    for gens in [&["x^2", "x*y"][..], &["x^3", "x*y"][..]] {
        let j = Ideal::parse(&ring, gens).unwrap();
        let spec = module_spec(&j).unwrap();
        let module = PresentedModule::cyclic(&j);
        let quotient = PresentedModule::cyclic(&spec.saturation);
        for ideal in [&m, &i2] {
            let total = hdeg(ideal, &module).unwrap();
            let reduced = hdeg(ideal, &quotient).unwrap();
            assert_eq!(total, reduced + spec.h0_length as u64);
        }
    }
}

#[test]
fn hdeg_localization_comparison() {
    // hdeg(I, M) ≤ ℓ(A/I)^d · hdeg(m, M)
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    let ideals = [
        Ideal::parse(&ring, &["x^2", "y^2"]).unwrap(),
        Ideal::parse(&ring, &["x^2", "x*y", "y^2"]).unwrap(),
        m.clone(),
    ];
    let modules = [
        Ideal::zero(&ring),
        Ideal::parse(&ring, &["x^2", "x*y"]).unwrap(),
        Ideal::parse(&ring, &["y^2"]).unwrap(),
    ];
    for i in &ideals {
        let l_ai = i.colength().unwrap() as u64;
        for j in &modules {
            let module = PresentedModule::cyclic(j);
            let spec = module_spec(j).unwrap();
            let lhs = hdeg(i, &module).unwrap();
            let rhs = l_ai.pow(spec.dim as u32) * hdeg(&m, &module).unwrap();
            assert!(lhs <= rhs, "I = {i}, J = {j}");
        }
    }
}

#[test]
fn reduction_multiplicity_and_length_chain() {
    // e(I, M) = e(Q, M) ≤ ℓ(M/QM) for the produced minimal reduction
    let ring = ring2();
    let a = PresentedModule::cyclic(&Ideal::zero(&ring));
    for gens in [&["x^2", "y^2"][..], &["x^2", "x*y", "y^2"][..]] {
        let i = Ideal::parse(&ring, gens).unwrap();
        let red = minimal_reduction(&i, &Ideal::zero(&ring), 2, 23, 5).unwrap();
        let (ei, _) = multiplicity(&i, &a).unwrap();
        let (eq, _) = multiplicity(&red.q, &a).unwrap();
        assert_eq!(ei, eq);
        let l_mqm = red.q.colength().unwrap() as u64;
        assert!(eq <= l_mqm);
    }
}

#[test]
fn e0_equals_multiplicity_across_filtrations() {
    let ring = ring2();
    let i = Ideal::parse(&ring, &["x^2", "y^2"]).unwrap();
    let m = Ideal::maximal(&ring);
    let a = PresentedModule::cyclic(&Ideal::zero(&ring));
    let (e, d) = multiplicity(&i, &a).unwrap();
    for f in [
        GoodFiltration::adic(&i, &Ideal::zero(&ring)).unwrap(),
        GoodFiltration::adic(&i, &Ideal::zero(&ring))
            .unwrap()
            .scale(&m)
            .unwrap(),
    ] {
        let fa = Arc::new(f);
        let g = GradedPieceModule::assoc_graded(&fa, 32);
        let out = regularity(&g, &opts(29)).unwrap();
        let hd = hilbert_coefficients(&fa, out.data.reg.unwrap(), d).unwrap();
        assert_eq!(hd.e[0], BigInt::from(e));
    }
}

#[test]
fn fiber_coefficients_satisfy_scaling_identity() {
    // e_i(F_q(𝔉)) = e_i(𝔉) + e_{i+1}(𝔉) − e_{i+1}(q𝔉) for 0 ≤ i ≤ d−1
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    for gens in [&["x^2", "y^2"][..], &["x", "y"][..]] {
        let i = Ideal::parse(&ring, gens).unwrap();
        let f = Arc::new(GoodFiltration::adic(&i, &Ideal::zero(&ring)).unwrap());
        let d = 2usize;
        let g = GradedPieceModule::assoc_graded(&f, 32);
        let reg_f = regularity(&g, &opts(31)).unwrap().data.reg.unwrap();
        let e_fil = hilbert_coefficients(&f, reg_f, d).unwrap().e;

        let scaled = Arc::new(f.scale(&m).unwrap());
        let gq = GradedPieceModule::assoc_graded(&scaled, 32);
        let reg_q = regularity(&gq, &opts(37)).unwrap().data.reg.unwrap();
        let e_scaled = hilbert_coefficients(&scaled, reg_q, d).unwrap().e;

        let cone = GradedPieceModule::fiber_cone(&f, &m, 32).unwrap();
        let out = regularity(&cone, &opts(41)).unwrap();
        let dims: Vec<i64> = cone
            .dims(out.data.reg.unwrap_or(0) + out.data.dim as i64 + 2)
            .unwrap()
            .into_iter()
            .map(|v| v as i64)
            .collect();
        let e_cone = filtreg::regularity::graded_hilbert_coefficients(
            &dims,
            out.data.reg.unwrap_or(-1),
            out.data.dim,
        )
        .unwrap();

        for idx in 0..d {
            let expected = &e_fil[idx] + &e_fil[idx + 1] - &e_scaled[idx + 1];
            assert_eq!(e_cone[idx], expected, "I = {gens:?}, i = {idx}");
        }
    }
}

#[test]
fn regularity_internal_consistency() {
    // reg = max(a_0, geom) holds for the exact a_0 and geom routes
    let ring = ring2();
    let m = Ideal::maximal(&ring);
    for gens in [&["x^2", "x*y"][..], &["x^3", "x*y"][..], &[][..]] {
        let j = Ideal::parse(&ring, gens).unwrap();
        let f = Arc::new(GoodFiltration::adic(&m, &j).unwrap());
        let g = GradedPieceModule::assoc_graded(&f, 32);
        let out = regularity(&g, &opts(43)).unwrap();
        let a0 = out.data.a[0];
        let reg = out.data.reg;
        let geom = out.data.geom;
        let max = match (a0, geom) {
            (None, g) => g,
            (Some(a), None) => Some(a),
            (Some(a), Some(g)) => Some(a.max(g)),
        };
        assert_eq!(reg, max, "J = {gens:?}");
    }
}
