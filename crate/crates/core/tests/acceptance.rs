//! End-to-end acceptance checks. Runs as a plain binary (`harness = false`)
//! so that every criterion reports one PASS/FAIL line, in order.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hermcode::cayley_spectrum::{
    build_connection_set, character_value, default_basis, moore_matrix_nonsingular, spectrum_of_cayley,
    verify_isomorphism,
};
use hermcode::code_construct::{
    brute_force_weight_distribution, build_code, closed_form_weight_distribution, codeword, CoefficientTuple,
    TupleSpace, WeightDistribution,
};
use hermcode::enumerate::EnumConfig;
use hermcode::exp_sums::{exp_sum_T, weights_from_spectrum};
use hermcode::finite_field::{build_field, cyclotomic_coset_size, CodeParams, FieldCtx, PolyFp};
use hermcode::hermitian_graph::{closed_form_spectrum, enumerate_rank1, spectrum_multiset};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn params(p: u32, m: u32) -> CodeParams {
    CodeParams::new(p, m).expect("valid parameters")
}

fn ctx(p: u32, m: u32) -> FieldCtx {
    build_field(params(p, m)).expect("field fits")
}

fn lines(pairs: &[(u64, u64)]) -> BTreeMap<u64, BigUint> {
    pairs.iter().map(|&(w, a)| (w, BigUint::from(a))).collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn closed_form_example(p: u32, m: u32, expected: &[(u64, u64)]) -> Outcome {
    let (dist, dt) = timed(|| closed_form_weight_distribution(&params(p, m)));
    let dist = dist.map_err(|e| e.to_string())?;
    ensure!(dist.lines == lines(expected), "({p},{m}) got {:?}", dist.lines);
    ensure!(dt < Duration::from_secs(1), "({p},{m}) took {dt:?}");
    Ok(format!("({p},{m}) exact in {dt:?}"))
}

fn example_3_3() -> Outcome {
    closed_form_example(3, 3, &[(0, 1), (432, 5460), (504, 14040), (648, 182)])
}

fn example_2_5() -> Outcome {
    closed_form_example(2, 5, &[(0, 1), (384, 57970), (480, 12985280), (528, 18887680), (576, 1623160), (768, 341)])
}

fn three_way(p: u32, m: u32, limit: Duration) -> Result<Duration, String> {
    let cfg = EnumConfig::single_worker();
    let (res, dt) = timed(|| -> hermcode::Result<[WeightDistribution; 3]> {
        let c = ctx(p, m);
        let spec = build_code(&c)?;
        let brute = brute_force_weight_distribution(&spec, &c, &cfg)?;
        let spectral = weights_from_spectrum(c.params(), &spectrum_of_cayley(&c, &cfg)?)?;
        let closed = closed_form_weight_distribution(c.params())?;
        Ok([brute, spectral, closed])
    });
    let [brute, spectral, closed] = res.map_err(|e| e.to_string())?;
    ensure!(brute.lines == closed.lines, "({p},{m}) brute {:?} vs closed {:?}", brute.lines, closed.lines);
    ensure!(spectral.lines == closed.lines, "({p},{m}) spectral {:?} vs closed {:?}", spectral.lines, closed.lines);
    ensure!(dt < limit, "({p},{m}) took {dt:?}, limit {limit:?}");
    Ok(dt)
}

fn three_way_agreement() -> Outcome {
    let a = three_way(2, 3, Duration::from_secs(1))?;
    let b = three_way(3, 3, Duration::from_secs(60))?;
    Ok(format!("(2,3) in {a:?}, (3,3) in {b:?} single worker"))
}

fn spectrum_equality() -> Outcome {
    for (p, m) in [(2, 1), (2, 3), (3, 3)] {
        let c = ctx(p, m);
        let direct = spectrum_of_cayley(&c, &EnumConfig::default()).map_err(|e| e.to_string())?;
        let closed = spectrum_multiset(&closed_form_spectrum(m, p as u64).map_err(|e| e.to_string())?);
        ensure!(direct == closed, "({p},{m}) character sums {direct:?} vs closed form {closed:?}");
    }
    Ok("(2,1), (2,3), (3,3) multisets equal".into())
}

fn isomorphism() -> Outcome {
    let mut notes = Vec::new();
    for (p, m) in [(2, 3), (3, 3)] {
        let c = ctx(p, m);
        let basis = default_basis(&c).map_err(|e| e.to_string())?;
        ensure!(moore_matrix_nonsingular(&c, &basis), "({p},{m}) Moore matrix singular");
        let report = verify_isomorphism(&c, &basis, &EnumConfig::default()).map_err(|e| e.to_string())?;
        ensure!(report.clauses.len() == 4 && report.passed(), "({p},{m}) {:?}", report.first_failure());
        ensure!(report.exhaustive, "({p},{m}) injectivity was not checked exhaustively");
        notes.push(format!("({p},{m}) |S|={}", report.s_size));
    }
    Ok(notes.join(", "))
}

fn counting_identities() -> Outcome {
    for d in 1..=7u32 {
        for r in [2u64, 3, 4, 5] {
            let spec = closed_form_spectrum(d, r).map_err(|e| e.to_string())?;
            let total: BigUint = spec.iter().map(|l| &l.multiplicity).sum();
            ensure!(total == BigUint::from(r).pow(d * d), "Σ f_j at ({d},{r}) = {total}");
            let trace: BigInt = spec.iter().map(|l| &l.eigenvalue * BigInt::from(l.multiplicity.clone())).sum();
            ensure!(trace.is_zero(), "Σ f_j θ_j at ({d},{r}) = {trace}");
        }
    }
    for (d, r) in [(1usize, 2u64), (2, 2), (3, 2), (2, 3)] {
        let count = enumerate_rank1(d, r, &EnumConfig::default()).map_err(|e| e.to_string())?.len() as u64;
        let theta0 = (r.pow(2 * d as u32) - 1) / (r + 1);
        ensure!(count == theta0, "rank-one count at ({d},{r}) = {count}, expected {theta0}");
    }
    Ok("d ≤ 7, r ∈ {2,3,4,5}; rank-one counts match θ_0".into())
}

fn structure_of(p: u32, m: u32) -> Result<(), String> {
    let c = ctx(p, m);
    let spec = build_code(&c).map_err(|e| e.to_string())?;
    let n = 2 * m as usize;
    let h = &spec.h_factors;
    ensure!(h.len() as u32 == (m - 1) / 2 + 1, "({p},{m}) {} factors", h.len());
    ensure!(h[0].degree() == Some(m as usize), "({p},{m}) deg h_0 = {:?}", h[0].degree());
    for (i, hi) in h.iter().enumerate().skip(1) {
        ensure!(hi.degree() == Some(n), "({p},{m}) deg h_{i} = {:?}", hi.degree());
    }
    let distinct: BTreeSet<Vec<u32>> = h.iter().map(|f| f.coeffs().to_vec()).collect();
    ensure!(distinct.len() == h.len(), "({p},{m}) factors not distinct");
    let product = h.iter().fold(PolyFp::one(p), |acc, f| acc.mul(f));
    ensure!(product == spec.parity_check, "({p},{m}) parity check is not the product");
    ensure!(product.degree() == Some((m * m) as usize), "({p},{m}) deg = {:?}", product.degree());
    let x_q = PolyFp::x_pow_minus_one(p, c.params().length() as usize);
    ensure!(spec.parity_check.divides(&x_q), "({p},{m}) parity check does not divide X^(q-1) - 1");
    Ok(())
}

/// Degrees and distinctness from cyclotomic cosets alone, without field tables.
fn structure_symbolic(p: u64, m: u32) -> Result<(), String> {
    let n = 2 * m;
    let group = p.pow(n) - 1;
    let neg = |e: u64| (group - e % group) % group;
    let exps: Vec<u64> = std::iter::once(p.pow(m) + 1).chain((1..=(m - 1) / 2).map(|i| p.pow(2 * i - 1) + 1)).collect();
    let mut total = 0;
    let mut reps = BTreeSet::new();
    for (i, &e) in exps.iter().enumerate() {
        let size = cyclotomic_coset_size(neg(e), p, group);
        let want = if i == 0 { m } else { n };
        ensure!(size == want, "({p},{m}) coset of h_{i} has size {size}");
        total += size;
        let mut x = neg(e);
        let mut least = x;
        for _ in 0..size {
            x = ((x as u128 * p as u128) % group as u128) as u64;
            least = least.min(x);
        }
        reps.insert(least);
    }
    ensure!(reps.len() == exps.len(), "({p},{m}) minimal polynomials coincide");
    ensure!(total == m * m, "({p},{m}) parity check degree {total}");
    Ok(())
}

fn structural_claims() -> Outcome {
    for (p, m) in [(2, 3), (3, 3), (2, 5), (5, 3)] {
        structure_of(p, m)?;
    }
    for p in [2, 3, 5] {
        structure_symbolic(p, 7)?;
    }
    Ok("(2,3), (3,3), (2,5), (5,3) explicit; m = 7 via cyclotomic cosets".into())
}

fn bridge_with(
    c: &FieldCtx,
    s: &hermcode::cayley_spectrum::ConnectionSetS,
    tuple: &CoefficientTuple,
) -> Result<(), String> {
    let p1 = c.params().p as i64 + 1;
    let t = exp_sum_T(c, tuple).map_err(|e| e.to_string())?;
    let chi = character_value(c, tuple, s).map_err(|e| e.to_string())?;
    ensure!(t == p1 * chi + 1, "T = {t}, χ(S) = {chi} for {tuple:?}");
    ensure!((t - 1).rem_euclid(p1) == 0, "T = {t} not 1 mod p+1");
    Ok(())
}

fn bridge_identity() -> Outcome {
    let c = ctx(2, 3);
    let s = build_connection_set(&c).map_err(|e| e.to_string())?;
    let space = TupleSpace::new(&c).map_err(|e| e.to_string())?;
    for idx in 0..space.len() as u64 {
        bridge_with(&c, &s, &space.tuple(idx))?;
    }
    let c = ctx(2, 5);
    let s = build_connection_set(&c).map_err(|e| e.to_string())?;
    let space = TupleSpace::new(&c).map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let samples = 10_000;
    for _ in 0..samples {
        let idx = rng.gen_range(0..space.len() as u64);
        bridge_with(&c, &s, &space.tuple(idx))?;
    }
    Ok(format!("all {} tuples of (2,3); {samples} random tuples of (2,5)", 1u64 << 9))
}

fn weight_sum() -> Outcome {
    let pr = params(3, 3);
    let dist = closed_form_weight_distribution(&pr).map_err(|e| e.to_string())?;
    let got = dist.weight_sum();
    let formula = BigUint::from(pr.length()) * BigUint::from(pr.p - 1) * BigUint::from(pr.p).pow(pr.m * pr.m - 1);
    ensure!(got == formula, "Σ A_i·i = {got}, formula {formula}");
    ensure!(got == BigUint::from(9_552_816u64), "Σ A_i·i = {got}");
    Ok(format!("Σ A_i·i = {got}"))
}

fn cyclic_shift() -> Outcome {
    let c = ctx(2, 3);
    let spec = build_code(&c).map_err(|e| e.to_string())?;
    let space = TupleSpace::new(&c).map_err(|e| e.to_string())?;
    let gf = c.field();
    let twists = c.params().twists();
    let mut members = BTreeSet::new();
    let mut words = Vec::new();
    for idx in 0..space.len() as u64 {
        let tuple = space.tuple(idx);
        let word = codeword(&spec, &c, &tuple).map_err(|e| e.to_string())?;
        members.insert(word.symbols.clone());
        words.push((tuple, word));
    }
    for (tuple, word) in &words {
        // c_{i+1}(α) = c_i(α_j π^{p^{k_j}+1})
        let shifted = CoefficientTuple {
            alpha0: gf.mul(tuple.alpha0, gf.pi_pow(twists[0] as i64)),
            alphas: tuple.alphas.iter().zip(&twists[1..]).map(|(&a, &tw)| gf.mul(a, gf.pi_pow(tw as i64))).collect(),
        };
        let expected = codeword(&spec, &c, &shifted).map_err(|e| e.to_string())?;
        ensure!(word.shift_left() == expected, "shift identity fails for {tuple:?}");
        ensure!(members.contains(&expected.symbols), "shifted word outside the code");
    }
    Ok(format!("all {} codewords of (2,3)", words.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed form (3,3)", example_3_3),
        ("closed form (2,5)", example_2_5),
        ("three-way agreement", three_way_agreement),
        ("spectrum equality", spectrum_equality),
        ("isomorphism", isomorphism),
        ("counting identities", counting_identities),
        ("structural claims", structural_claims),
        ("bridge identity", bridge_identity),
        ("weight sum", weight_sum),
        ("cyclic shift", cyclic_shift),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>().map(String::as_str).or(e.downcast_ref::<&str>().copied())
            ))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
