//! The exponential sum `T(α_0, …, α_t)` evaluated exactly, and the weight it
//! determines.
//!
//! `T = Σ_{x ∈ GF(q)} ζ_p^{f(x)}` is computed by counting the residues
//! `N_r = #{x : f(x) = r}`. When the sum is rational the conjugate counts
//! `N_1, …, N_{p-1}` coincide and `T = N_0 - N_1`; that equality is checked
//! on every evaluation rather than assumed.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::code_construct::{CoefficientTuple, TupleSpace, WeightDistribution};
use crate::enumerate::{self, EnumConfig};
use crate::error::{Error, Result};
use crate::finite_field::{CodeParams, FieldCtx};

/// Eigenvalue or sum-value multiset with exact counts.
pub type ValueDistribution = BTreeMap<BigInt, BigUint>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCounts {
    pub counts: Vec<u64>,
}

impl ResidueCounts {
    pub fn new(p: u32) -> Self {
        Self { counts: vec![0; p as usize] }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_r N_r ζ_p^r` when it is rational, i.e. `N_0 - N_1`.
    pub fn rational_value(&self) -> Result<i64> {
        let (n0, rest) = self.counts.split_first().expect("p >= 2");
        let n1 = rest[0];
        if rest.iter().any(|&c| c != n1) {
            return Err(Error::NonRationalSum(self.counts.clone()));
        }
        Ok(*n0 as i64 - n1 as i64)
    }
}

/// Residue counts of `f(x) = Tr_1^m(α_0 x^{p^m+1}) + Σ_j Tr_1^n(α_j x^{p^{2j-1}+1})`
/// over all `x ∈ GF(q)`.
pub fn residue_counts(ctx: &FieldCtx, coeffs: &CoefficientTuple) -> Result<ResidueCounts> {
    coeffs.validate(ctx)?;
    let params = ctx.params();
    let p = params.p;
    let group = params.length();
    let twists = params.twists();
    let alphas: Vec<Option<u32>> =
        std::iter::once(coeffs.alpha0).chain(coeffs.alphas.iter().copied()).map(|a| a.exponent()).collect();

    let mut out = ResidueCounts::new(p);
    // x = 0
    out.counts[0] += 1;
    for i in 0..group {
        let mut value = 0u32;
        for (j, (&alpha, &tw)) in alphas.iter().zip(&twists).enumerate() {
            let Some(a) = alpha else {
                continue;
            };
            let e = ((a as u64 + i * tw) % group) as u32;
            value += if j == 0 { ctx.trace_half_exp(e) } else { ctx.trace_full_exp(e) } as u32;
        }
        out.counts[(value % p) as usize] += 1;
    }
    Ok(out)
}

/// `T(α_0, …, α_t)` as an exact integer.
#[allow(non_snake_case)]
pub fn exp_sum_T(ctx: &FieldCtx, coeffs: &CoefficientTuple) -> Result<i64> {
    residue_counts(ctx, coeffs)?.rational_value()
}

/// Hamming weight `p^{n-1}(p-1) - (p-1)/p · T` of the codeword whose
/// exponential sum is `T`.
#[allow(non_snake_case)]
pub fn weight_from_T(params: &CodeParams, T: i64) -> Result<u64> {
    let p = params.p as i128;
    let q = params.q as i128;
    let t = T as i128;
    if (t - 1).rem_euclid(p + 1) != 0 {
        return Err(Error::InvalidParams(format!("T = {T} is not 1 modulo p + 1")));
    }
    if (t - 1).abs() / (p + 1) > (q - 1) / (p + 1) {
        return Err(Error::InvalidParams(format!("T = {T} is outside the eigenvalue range")));
    }
    // p · weight = p^n (p - 1) - (p - 1) T
    let scaled = q * (p - 1) - (p - 1) * t;
    if scaled % p != 0 {
        return Err(Error::NonIntegralWeight(T));
    }
    let w = scaled / p;
    if w < 0 {
        return Err(Error::InternalInconsistency(format!("negative weight for T = {T}")));
    }
    Ok(w as u64)
}

/// Hamming weight from the unaveraged sum
/// `p^{n-1}(p-1) - (1/p) Σ_{a ∈ GF(p)^*} T(aα_0, …, aα_t)`.
pub fn weight_by_conjugate_sum(ctx: &FieldCtx, coeffs: &CoefficientTuple) -> Result<u64> {
    let params = ctx.params();
    let p = params.p as i128;
    let mut sum = 0i128;
    for a in 1..params.p {
        sum += exp_sum_T(ctx, &coeffs.scale(ctx, a))? as i128;
    }
    let scaled = params.q as i128 * (p - 1) - sum;
    if scaled % p != 0 {
        return Err(Error::NonIntegralWeight(sum as i64));
    }
    Ok((scaled / p) as u64)
}

/// The multiset of `T` over all `p^{m^2}` coefficient tuples.
pub fn t_value_distribution(ctx: &FieldCtx, cfg: &EnumConfig) -> Result<ValueDistribution> {
    let space = TupleSpace::new(ctx)?;
    let total = cfg.check(space.len())?;
    let counts = enumerate::histogram(cfg, total, "exponential sums", |range| {
        let mut h = BTreeMap::new();
        for idx in range {
            *h.entry(exp_sum_T(ctx, &space.tuple(idx))?).or_insert(0u64) += 1;
        }
        Ok(h)
    })?;
    Ok(counts.into_iter().map(|(v, c)| (BigInt::from(v), BigUint::from(c))).collect())
}

/// Weight distribution implied by a multiset of `T` values.
pub fn weights_from_t_values(params: &CodeParams, values: &ValueDistribution) -> Result<WeightDistribution> {
    let mut lines: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (t, count) in values {
        let t = t.to_i64().ok_or_else(|| Error::InvalidParams(format!("T = {t} out of range")))?;
        *lines.entry(weight_from_T(params, t)?).or_insert_with(BigUint::zero) += count;
    }
    let dist = WeightDistribution::new(params, lines);
    dist.validate(params.p)?;
    Ok(dist)
}

/// Weight distribution implied by a graph spectrum, through
/// `T = (p + 1)θ + 1`.
pub fn weights_from_spectrum(params: &CodeParams, spectrum: &ValueDistribution) -> Result<WeightDistribution> {
    let p1 = BigInt::from(params.p + 1);
    let values: ValueDistribution = spectrum.iter().map(|(theta, f)| (&p1 * theta + 1, f.clone())).collect();
    weights_from_t_values(params, &values)
}
