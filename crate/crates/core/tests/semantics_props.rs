mod common;

use common::*;
use proptest::prelude::*;
use qlogic::contexts::{invariant_lattice, paste, BlockStructure, Context};
use qlogic::formula::Formula;
use qlogic::semantics::{
    check_product_rule, eval_bivalent, eval_lukasiewicz, eval_super, formula_subspace,
    lukasiewicz_conj, lukasiewicz_degree, lukasiewicz_disj, reduce_super, Degree, RuleOutcome,
    TruthValue, Value,
};
use qlogic::StateVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn ray_structure(
    rng: &mut ChaCha8Rng,
    d: usize,
    blocks: usize,
) -> (BlockStructure, Vec<Vec<StateVector>>) {
    let mut bases = Vec::new();
    let mut lattices = Vec::new();
    for k in 0..blocks {
        let basis: Vec<StateVector> = random_orthonormal_basis(rng, d)
            .into_iter()
            .map(|v| StateVector::new(v.iter().copied().collect()).unwrap())
            .collect();
        let ctx = Context::from_rays(format!("c{k}"), &basis, tol()).unwrap();
        lattices.push(invariant_lattice(&ctx, tol()).unwrap());
        bases.push(basis);
    }
    (paste(lattices, tol()).unwrap(), bases)
}

fn random_formula(
    rng: &mut ChaCha8Rng,
    bs: &BlockStructure,
    blocks: &[usize],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        let b = blocks[rng.random_range(0..blocks.len())];
        let block = &bs.blocks()[b];
        let mask = rng.random_range(0..block.len() as u32);
        return Formula::atom(format!("e{b}_{mask}"), block.element(mask).clone());
    }
    match rng.random_range(0..3) {
        0 => random_formula(rng, bs, blocks, depth - 1).and(random_formula(
            rng,
            bs,
            blocks,
            depth - 1,
        )),
        1 => random_formula(rng, bs, blocks, depth - 1).or(random_formula(
            rng,
            bs,
            blocks,
            depth - 1,
        )),
        _ => random_formula(rng, bs, blocks, depth - 1).not(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decided_supervaluation_agrees_with_bivalent(seed in any::<u64>(), d in 2usize..=4, nblocks in 1usize..=3) {
        let mut rng = rng(seed);
        let (bs, _) = ray_structure(&mut rng, d, nblocks);
        let all: Vec<usize> = (0..nblocks).collect();
        let f = random_formula(&mut rng, &bs, &all, 3);
        let psi = random_state(&mut rng, d);
        if let Some(e) = reduce_super(&bs, &f).unwrap() {
            prop_assert!(e.equals(&formula_subspace(&f, d, tol()).unwrap(), tol()));
        }
        let sv = eval_super(&bs, &psi, &f).unwrap();
        let bv = eval_bivalent(&psi, &f, tol()).unwrap();
        if sv != TruthValue::Gap {
            prop_assert_eq!(sv, bv);
        }
    }

    #[test]
    fn single_block_formulas_are_decided_in_eigenstates(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = rng(seed);
        let (bs, bases) = ray_structure(&mut rng, d, 2);
        let f = random_formula(&mut rng, &bs, &[0], 4);
        let psi = bases[0][rng.random_range(0..d)].clone();
        let e = reduce_super(&bs, &f).unwrap();
        prop_assert!(e.is_some());
        let sv = eval_super(&bs, &psi, &f).unwrap();
        prop_assert_ne!(sv, TruthValue::Gap);
        prop_assert_eq!(sv, eval_bivalent(&psi, &f, tol()).unwrap());
    }

    #[test]
    fn product_rule_holds_bivalently_within_a_block(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = rng(seed);
        let (bs, _) = ray_structure(&mut rng, d, 1);
        let a = random_formula(&mut rng, &bs, &[0], 2);
        let b = random_formula(&mut rng, &bs, &[0], 2);
        let psi = random_state(&mut rng, d);
        let va: Value = eval_bivalent(&psi, &a, tol()).unwrap().into();
        let vb: Value = eval_bivalent(&psi, &b, tol()).unwrap().into();
        let vab: Value = eval_bivalent(&psi, &a.clone().and(b.clone()), tol()).unwrap().into();
        prop_assert_eq!(check_product_rule(va, vb, vab), RuleOutcome::Holds);
    }

    #[test]
    fn context_degrees_sum_to_one(seed in any::<u64>(), d in 2usize..=8) {
        let mut rng = rng(seed);
        let n = rng.random_range(2..=d);
        let ctx = random_context(&mut rng, d, n);
        let psi = random_state(&mut rng, d);
        let total: f64 = ctx.projectors().iter().map(|p| lukasiewicz_degree(&psi, p).unwrap().value()).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn ray_degree_is_squared_overlap(seed in any::<u64>(), d in 1usize..=8) {
        let mut rng = rng(seed);
        let psi = random_state(&mut rng, d);
        let v = random_state(&mut rng, d);
        let overlap: f64 = psi.amplitudes().iter().zip(v.amplitudes().iter()).map(|(a, b)| a.conj() * b).sum::<qlogic::hilbert::C64>().norm_sqr();
        let p = qlogic::Projector::rank_one(&v);
        prop_assert!((lukasiewicz_degree(&psi, &p).unwrap().value() - overlap).abs() <= 1e-12);
    }

    #[test]
    fn exclusivity_bound(seed in any::<u64>(), d in 2usize..=8) {
        let mut rng = rng(seed);
        let k = rng.random_range(0..=d);
        let p = random_subspace(&mut rng, d, k);
        let q = p.complement(tol());
        let psi = random_state(&mut rng, d);
        let dp = eval_lukasiewicz(&psi, &Formula::atom("p", p)).unwrap().value();
        let dq = eval_lukasiewicz(&psi, &Formula::atom("q", q)).unwrap().value();
        prop_assert!(dp + dq <= 1.0 + 1e-9);
        prop_assert!((dp + dq - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn lukasiewicz_laws(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0) {
        let (a, b, c) = (Degree::new(a).unwrap(), Degree::new(b).unwrap(), Degree::new(c).unwrap());
        let close = |x: Degree, y: Degree| (x.value() - y.value()).abs() <= 1e-12;
        prop_assert!(close(a.negate().negate(), a));
        prop_assert!(close(a.conj(b), b.conj(a)));
        prop_assert!(close(a.conj(b).conj(c), a.conj(b.conj(c))));
        prop_assert!(close(a.disj(b).disj(c), a.disj(b.disj(c))));
        prop_assert!(close(a.conj(b).negate(), a.negate().disj(b.negate())));
        prop_assert!(close(a.conj(a.negate()), Degree::ZERO));
        prop_assert!(close(a.disj(a.negate()), Degree::ONE));
        prop_assert!(close(a.conj(Degree::ONE), a));
        prop_assert!(close(a.disj(Degree::ZERO), a));
        prop_assert!(close(lukasiewicz_conj(a, b), Degree::clamped(a.value() + b.value() - 1.0)));
        prop_assert!(close(lukasiewicz_disj(a, b), Degree::clamped(a.value() + b.value())));
        let m = a.conj(b).value();
        prop_assert!((0.0..=1.0).contains(&m) && m <= a.value().min(b.value()));
    }
}

#[test]
fn degrees_outside_the_unit_interval_are_rejected() {
    assert!(Degree::new(1.5).is_err());
    assert!(Degree::new(-0.1).is_err());
    assert!(Degree::new(f64::NAN).is_err());
}

#[test]
fn qubit_gap_structure() {
    let t = tol();
    let ray = |x: &[f64]| StateVector::from_real(x).unwrap();
    let x = Context::from_rays("X", &[ray(&[1.0, 1.0]), ray(&[1.0, -1.0])], t).unwrap();
    let z = Context::from_rays("Z", &[ray(&[1.0, 0.0]), ray(&[0.0, 1.0])], t).unwrap();
    let bs = paste(
        vec![
            invariant_lattice(&x, t).unwrap(),
            invariant_lattice(&z, t).unwrap(),
        ],
        t,
    )
    .unwrap();
    let atom = |name: &str, v: &[f64]| Formula::atom(name, qlogic::Subspace::ray(&ray(v)));
    let xp = atom("Xp", &[1.0, 1.0]);
    let zp = atom("Zp", &[1.0, 0.0]);
    let zm = atom("Zm", &[0.0, 1.0]);
    let p1 = xp.clone().and(zp.clone());
    let p2 = xp.clone().and(zm.clone());
    let psi = ray(&[1.0, 0.0]);
    assert_eq!(eval_super(&bs, &psi, &p1).unwrap(), TruthValue::Gap);
    assert_eq!(
        eval_super(&bs, &psi, &p1.clone().and(p2.clone())).unwrap(),
        TruthValue::False
    );
    assert_eq!(
        eval_super(&bs, &psi, &p1.clone().or(p2.clone())).unwrap(),
        TruthValue::Gap
    );
    assert_eq!(
        eval_super(&bs, &psi, &zp.clone().or(zm.clone())).unwrap(),
        TruthValue::True
    );
    assert_eq!(eval_super(&bs, &psi, &zp.not()).unwrap(), TruthValue::False);
    assert_eq!(eval_super(&bs, &psi, &xp).unwrap(), TruthValue::Gap);
    for f in [&p1, &p2] {
        assert_eq!(eval_bivalent(&psi, f, t).unwrap(), TruthValue::False);
    }
}
