use std::sync::OnceLock;

use hermcode::code_construct::{build_code, codeword, CodeSpec, CoefficientTuple, TupleSpace};
use hermcode::finite_field::{build_field, trace, CodeParams, FieldCtx, FieldElement};
use hermcode::hermitian_graph::{closed_form_spectrum, gaussian_binomial};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn instance(p: u32, m: u32) -> &'static (FieldCtx, CodeSpec) {
    static C23: OnceLock<(FieldCtx, CodeSpec)> = OnceLock::new();
    static C33: OnceLock<(FieldCtx, CodeSpec)> = OnceLock::new();
    static C53: OnceLock<(FieldCtx, CodeSpec)> = OnceLock::new();
    let cell = match (p, m) {
        (2, 3) => &C23,
        (3, 3) => &C33,
        (5, 3) => &C53,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let ctx = build_field(CodeParams::new(p, m).unwrap()).unwrap();
        let spec = build_code(&ctx).unwrap();
        (ctx, spec)
    })
}

fn elem(ctx: &FieldCtx, raw: u32) -> FieldElement {
    let order = ctx.field().order();
    match raw % order {
        0 => FieldElement::ZERO,
        k => ctx.field().pi_pow(k as i64 - 1),
    }
}

fn tuple(ctx: &FieldCtx, raw: &[u32]) -> CoefficientTuple {
    let space = TupleSpace::new(ctx).unwrap();
    let idx = raw.iter().fold(0u64, |acc, &r| acc.wrapping_mul(1 << 20).wrapping_add(r as u64));
    space.tuple(idx % space.len() as u64)
}

/// Product formula for `[j, i]_b` over the rationals.
fn gaussian_binomial_by_product(j: u32, i: u32, b: i64) -> BigInt {
    if i > j {
        return BigInt::zero();
    }
    let b = BigRational::from_integer(BigInt::from(b));
    let mut acc = BigRational::one();
    for l in 0..i {
        let num = num_traits::pow(b.clone(), j as usize) - num_traits::pow(b.clone(), l as usize);
        let den = num_traits::pow(b.clone(), i as usize) - num_traits::pow(b.clone(), l as usize);
        acc *= num / den;
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

#[test]
fn gaussian_binomial_recurrence_matches_product_formula() {
    for b in (-5..=-2).chain(2..=5) {
        for j in 0..=8 {
            for i in 0..=j {
                assert_eq!(
                    gaussian_binomial(j, i, b).unwrap(),
                    gaussian_binomial_by_product(j, i, b),
                    "[{j}, {i}]_{b}"
                );
            }
        }
    }
}

#[test]
fn spectrum_counting_identities_on_grid() {
    for d in 1..=7 {
        for r in [2u64, 3, 4, 5] {
            let lines = closed_form_spectrum(d, r).unwrap();
            let total: BigUint = lines.iter().map(|l| &l.multiplicity).sum();
            assert_eq!(total, BigUint::from(r).pow(d * d), "Σ f_j for ({d}, {r})");
            let trace: BigInt = lines.iter().map(|l| &l.eigenvalue * BigInt::from(l.multiplicity.clone())).sum();
            assert!(trace.is_zero(), "Σ f_j θ_j for ({d}, {r})");
            let theta0 = (BigInt::from(r).pow(2 * d) - 1) / BigInt::from(r + 1);
            assert_eq!(lines[0].eigenvalue, theta0);
        }
    }
}

#[test]
fn zech_addition_agrees_with_polynomial_arithmetic() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (p, m) in [(2, 3), (3, 3), (5, 3)] {
        let (ctx, _) = instance(p, m);
        let gf = ctx.field();
        for _ in 0..1000 {
            let a = elem(ctx, rng.gen());
            let b = elem(ctx, rng.gen());
            assert_eq!(gf.add(a, b), gf.add_by_coordinates(a, b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_additive_and_frobenius_invariant(a in any::<u32>(), b in any::<u32>()) {
        let (ctx, _) = instance(3, 3);
        let gf = ctx.field();
        let (x, y) = (elem(ctx, a), elem(ctx, b));
        let tx = trace(ctx, 6, 1, x).unwrap();
        let ty = trace(ctx, 6, 1, y).unwrap();
        prop_assert_eq!(trace(ctx, 6, 1, gf.add(x, y)).unwrap(), gf.add(tx, ty));
        prop_assert_eq!(trace(ctx, 6, 1, gf.frobenius(x, 1)).unwrap(), tx);
        // transitivity through the middle field
        let mid = trace(ctx, 6, 3, x).unwrap();
        prop_assert_eq!(trace(ctx, 3, 1, mid).unwrap(), tx);
    }

    #[test]
    fn minimal_polynomial_vanishes_and_has_orbit_degree(a in any::<u32>()) {
        let (ctx, _) = instance(5, 3);
        let gf = ctx.field();
        let x = elem(ctx, a);
        let h = hermcode::finite_field::minimal_polynomial(ctx, x).unwrap();
        prop_assert!(h.is_monic());
        prop_assert_eq!(gf.eval(&h, x), FieldElement::ZERO);
        let mut orbit = 1;
        let mut y = gf.frobenius(x, 1);
        while y != x {
            orbit += 1;
            y = gf.frobenius(y, 1);
        }
        prop_assert_eq!(h.degree(), Some(orbit));
        // the orbit closes inside GF(p^n)
        prop_assert!((ctx.params().n as usize).is_multiple_of(orbit));
    }

    #[test]
    fn codewords_are_linear(a in prop::collection::vec(any::<u32>(), 2), b in prop::collection::vec(any::<u32>(), 2)) {
        for (p, m) in [(2, 3), (3, 3)] {
            let (ctx, spec) = instance(p, m);
            let (ta, tb) = (tuple(ctx, &a), tuple(ctx, &b));
            let ca = codeword(spec, ctx, &ta).unwrap();
            let cb = codeword(spec, ctx, &tb).unwrap();
            let sum = codeword(spec, ctx, &ta.add(ctx, &tb)).unwrap();
            prop_assert_eq!(sum, ca.add(&cb, p));
        }
    }

    #[test]
    fn codeword_weights_lie_in_the_closed_form_set(a in prop::collection::vec(any::<u32>(), 2)) {
        let (ctx, spec) = instance(3, 3);
        let w = codeword(spec, ctx, &tuple(ctx, &a)).unwrap().weight();
        prop_assert!([0, 432, 504, 648].contains(&w));
    }
}
