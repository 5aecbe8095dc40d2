//! The cyclic code `C(p, m)`: parity-check polynomial, codewords and weight
//! distributions (closed form and exhaustive).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::{self, EnumConfig};
use crate::error::{Error, Result};
use crate::finite_field::{minimal_polynomial, CodeParams, FieldCtx, FieldElement, PolyFp};
use crate::hermitian_graph::gaussian_binomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: CodeParams,
    /// `h_0, h_1, …, h_t`.
    pub h_factors: Vec<PolyFp>,
    pub parity_check: PolyFp,
    pub length: u64,
    pub dimension: u32,
}

/// Coefficients `(α_0, α_1, …, α_t)` indexing a codeword, `α_0 ∈ GF(p^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientTuple {
    pub alpha0: FieldElement,
    pub alphas: Vec<FieldElement>,
}

impl CoefficientTuple {
    pub fn zero(params: &CodeParams) -> Self {
        Self { alpha0: FieldElement::ZERO, alphas: vec![FieldElement::ZERO; params.t as usize] }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha0.is_zero() && self.alphas.iter().all(|a| a.is_zero())
    }

    pub fn validate(&self, ctx: &FieldCtx) -> Result<()> {
        if self.alphas.len() != ctx.params().t as usize {
            return Err(Error::InvalidParams(format!(
                "expected {} coefficients after α0, got {}",
                ctx.params().t,
                self.alphas.len()
            )));
        }
        if !ctx.in_half_field(self.alpha0) {
            return Err(Error::NotInSubfield { degree: ctx.params().m });
        }
        Ok(())
    }

    /// Multiplies every coefficient by a scalar of GF(p).
    pub fn scale(&self, ctx: &FieldCtx, a: u32) -> Self {
        let gf = ctx.field();
        let s = gf.from_prime(a);
        Self { alpha0: gf.mul(self.alpha0, s), alphas: self.alphas.iter().map(|&x| gf.mul(x, s)).collect() }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Self) -> Self {
        let gf = ctx.field();
        Self {
            alpha0: gf.add(self.alpha0, other.alpha0),
            alphas: self.alphas.iter().zip(&other.alphas).map(|(&a, &b)| gf.add(a, b)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub symbols: Vec<u8>,
}

impl Codeword {
    pub fn weight(&self) -> u64 {
        self.symbols.iter().filter(|&&s| s != 0).count() as u64
    }

    /// `(c_1, c_2, …, c_{l-1}, c_0)`.
    pub fn shift_left(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(1);
        Self { symbols }
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let symbols =
            self.symbols.iter().zip(&other.symbols).map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8).collect();
        Self { symbols }
    }
}

/// Exact weight histogram with code metadata `[length, dimension, min_distance]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub lines: BTreeMap<u64, BigUint>,
    pub length: u64,
    pub dimension: u32,
    pub min_distance: u64,
}

impl WeightDistribution {
    pub fn new(params: &CodeParams, lines: BTreeMap<u64, BigUint>) -> Self {
        let min_distance = lines.iter().filter(|(&w, a)| w > 0 && !a.is_zero()).map(|(&w, _)| w).next().unwrap_or(0);
        Self { lines, length: params.length(), dimension: params.dimension(), min_distance }
    }

    pub fn from_counts(params: &CodeParams, counts: BTreeMap<u64, u64>) -> Self {
        Self::new(params, counts.into_iter().map(|(w, a)| (w, BigUint::from(a))).collect())
    }

    pub fn total(&self) -> BigUint {
        self.lines.values().sum()
    }

    /// `Σ_i i·A_i`.
    pub fn weight_sum(&self) -> BigUint {
        self.lines.iter().map(|(&w, a)| a * w).sum()
    }

    /// Checks the histogram invariants: total `p^dimension`, `A_0 = 1`,
    /// weights within the length.
    pub fn validate(&self, p: u32) -> Result<()> {
        let expected = BigUint::from(p).pow(self.dimension);
        if self.total() != expected {
            return Err(Error::InternalInconsistency(format!("counts sum to {}, expected {expected}", self.total())));
        }
        if self.lines.get(&0) != Some(&BigUint::one()) {
            return Err(Error::InternalInconsistency("A_0 must be 1".into()));
        }
        if let Some((&w, _)) = self.lines.iter().next_back() {
            if w > self.length {
                return Err(Error::InternalInconsistency(format!("weight {w} exceeds the length")));
            }
        }
        Ok(())
    }
}

/// Builds `C(p, m)` and checks the degree, distinctness and divisibility
/// claims on its parity-check polynomial.
pub fn build_code(ctx: &FieldCtx) -> Result<CodeSpec> {
    let params = *ctx.params();
    let gf = ctx.field();
    let p = params.p;
    let inconsistent = |msg: String| Err(Error::InternalInconsistency(msg));

    let twists = params.twists();
    let mut h_factors = Vec::with_capacity(twists.len());
    for (i, &tw) in twists.iter().enumerate() {
        let h = minimal_polynomial(ctx, gf.pi_pow(-(tw as i64)))?;
        let want = if i == 0 { params.m } else { params.n } as usize;
        if h.degree() != Some(want) {
            return inconsistent(format!("deg h_{i} = {:?}, expected {want}", h.degree()));
        }
        h_factors.push(h);
    }
    for i in 0..h_factors.len() {
        for j in (i + 1)..h_factors.len() {
            if h_factors[i] == h_factors[j] {
                return inconsistent(format!("h_{i} = h_{j}"));
            }
        }
    }

    let parity_check = h_factors.iter().fold(PolyFp::one(p), |acc, h| acc.mul(h));
    if parity_check.degree() != Some(params.dimension() as usize) {
        return inconsistent(format!("deg h = {:?}, expected m^2", parity_check.degree()));
    }
    // h | X^{q-1} - 1  ⇔  X^{q-1} ≡ 1 (mod h)
    let x = PolyFp::new(p, vec![0, 1]);
    if x.pow_mod(params.length(), &parity_check) != PolyFp::one(p).rem(&parity_check) {
        return inconsistent("parity check does not divide X^(q-1) - 1".into());
    }

    Ok(CodeSpec { params, h_factors, parity_check, length: params.length(), dimension: params.dimension() })
}

/// `c_i = Tr_1^m(α_0 π^{i(p^m+1)}) + Σ_j Tr_1^n(α_j π^{i(p^{2j-1}+1)})`
/// for `0 ≤ i ≤ q - 2`.
pub fn codeword(spec: &CodeSpec, ctx: &FieldCtx, coeffs: &CoefficientTuple) -> Result<Codeword> {
    coeffs.validate(ctx)?;
    let params = &spec.params;
    let p = params.p;
    let len = params.length();
    let twists = params.twists();
    let mut symbols = vec![0u32; len as usize];

    let terms = std::iter::once(coeffs.alpha0).chain(coeffs.alphas.iter().copied());
    for (j, (alpha, &tw)) in terms.zip(&twists).enumerate() {
        let Some(a) = alpha.exponent() else {
            continue;
        };
        let mut e = a as u64;
        for s in symbols.iter_mut() {
            let tr = if j == 0 { ctx.trace_half_exp(e as u32) } else { ctx.trace_full_exp(e as u32) };
            *s += tr as u32;
            e = (e + tw) % len;
        }
    }
    Ok(Codeword { symbols: symbols.into_iter().map(|s| (s % p) as u8).collect() })
}

/// The coefficient tuples in lexicographic exponent order: each coordinate
/// runs over `0, π^0, π^s, π^{2s}, …` (with `s` the subfield step), and
/// `α_0` is the most significant coordinate.
pub struct TupleSpace {
    half: Vec<FieldElement>,
    full: Vec<FieldElement>,
    t: usize,
}

impl TupleSpace {
    pub fn new(ctx: &FieldCtx) -> Result<Self> {
        let params = ctx.params();
        Ok(Self {
            half: ctx.field().subfield_elements(params.m)?,
            full: ctx.field().subfield_elements(params.n)?,
            t: params.t as usize,
        })
    }

    pub fn len(&self) -> u128 {
        self.half.len() as u128 * (self.full.len() as u128).pow(self.t as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tuple(&self, mut index: u64) -> CoefficientTuple {
        let q = self.full.len() as u64;
        let mut alphas = vec![FieldElement::ZERO; self.t];
        for slot in alphas.iter_mut().rev() {
            *slot = self.full[(index % q) as usize];
            index /= q;
        }
        CoefficientTuple { alpha0: self.half[index as usize], alphas }
    }
}

/// Weight histogram by evaluating every codeword from its coefficient tuple.
/// Slower than [`brute_force_weight_distribution`]; kept as an independent
/// oracle for small instances.
pub fn direct_weight_distribution(spec: &CodeSpec, ctx: &FieldCtx, cfg: &EnumConfig) -> Result<WeightDistribution> {
    let space = TupleSpace::new(ctx)?;
    let total = cfg.check(space.len())?;
    let counts = enumerate::histogram(cfg, total, "direct codeword evaluation", |range| {
        let mut h = BTreeMap::new();
        for idx in range {
            let w = codeword(spec, ctx, &space.tuple(idx))?.weight();
            *h.entry(w).or_insert(0u64) += 1;
        }
        Ok(h)
    })?;
    Ok(WeightDistribution::from_counts(&spec.params, counts))
}

/// Coefficient tuples whose codewords form a GF(p)-basis of the code:
/// `α_0 = β^i` (`β = π^{p^m+1}`, `0 ≤ i < m`) and `α_j = π^k`
/// (`0 ≤ k < n`), all other coefficients zero.
pub fn basis_tuples(ctx: &FieldCtx) -> Vec<CoefficientTuple> {
    let params = ctx.params();
    let gf = ctx.field();
    let beta_exp = params.twist(params.m) as i64;
    let zero = CoefficientTuple::zero(params);
    let mut out = Vec::with_capacity(params.dimension() as usize);
    for i in 0..params.m as i64 {
        out.push(CoefficientTuple { alpha0: gf.pi_pow(i * beta_exp), ..zero.clone() });
    }
    for j in 0..params.t as usize {
        for k in 0..params.n as i64 {
            let mut tuple = zero.clone();
            tuple.alphas[j] = gf.pi_pow(k);
            out.push(tuple);
        }
    }
    out
}

/// Rank over GF(p) of byte rows.
pub fn rank_mod_p(mut rows: Vec<Vec<u8>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::arith::inv_mod_prime(rows[rank][col] as u32, p);
        let pivot_row: Vec<u32> = rows[rank].iter().map(|&v| v as u32 * inv % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col] as u32;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u32 + p - factor * pv % p) % p) as u8;
            }
        }
        rows[rank] = pivot_row.into_iter().map(|v| v as u8).collect();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exhaustive weight distribution over all `p^{m^2}` codewords.
///
/// Codewords are visited in modular Gray-code order over a basis of the code,
/// so each step adds one basis codeword. The basis is checked to have full
/// rank first, which makes the tuple-to-codeword map injective.
pub fn brute_force_weight_distribution(
    spec: &CodeSpec,
    ctx: &FieldCtx,
    cfg: &EnumConfig,
) -> Result<WeightDistribution> {
    let params = &spec.params;
    let p = params.p;
    let k = params.dimension();
    cfg.check((p as u128).pow(k))?;

    let basis: Vec<Codeword> = basis_tuples(ctx).iter().map(|t| codeword(spec, ctx, t)).collect::<Result<_>>()?;
    let rank = rank_mod_p(basis.iter().map(|c| c.symbols.clone()).collect(), p);
    if rank != k as usize {
        return Err(Error::InternalInconsistency(format!("basis codewords have rank {rank}, expected {k}")));
    }

    // top digits select a chunk, low digits are walked inside it
    let mut top = 0u32;
    while top < k && (p as u64).pow(top) < 64 {
        top += 1;
    }
    let low = k - top;
    let chunks = (p as u64).pow(top);
    let len = params.length() as usize;

    let counts = if p == 2 {
        let packed: Vec<Vec<u64>> = basis.iter().map(|c| pack_bits(&c.symbols)).collect();
        enumerate::histogram(cfg, chunks, "gray-code enumeration", |range| {
            let mut hist = vec![0u64; len + 1];
            for chunk in range {
                walk_binary_chunk(&packed, chunk, low, &mut hist);
            }
            Ok(to_map(hist))
        })?
    } else {
        let rows: Vec<Vec<u8>> = basis.into_iter().map(|c| c.symbols).collect();
        enumerate::histogram(cfg, chunks, "gray-code enumeration", |range| {
            let mut hist = vec![0u64; len + 1];
            for chunk in range {
                walk_chunk(&rows, p, chunk, low, &mut hist);
            }
            Ok(to_map(hist))
        })?
    };
    let dist = WeightDistribution::from_counts(params, counts);
    dist.validate(p)?;
    Ok(dist)
}

fn to_map(hist: Vec<u64>) -> BTreeMap<u64, u64> {
    hist.into_iter().enumerate().filter(|&(_, c)| c > 0).map(|(w, c)| (w as u64, c)).collect()
}

/// Gray-code digits of `index`: `g_i = (d_i - d_{i+1}) mod p`.
fn gray_digits(index: u64, p: u32, width: u32) -> Vec<u32> {
    let mut digits = Vec::with_capacity(width as usize + 1);
    let mut rest = index;
    for _ in 0..width {
        digits.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    digits.push(0);
    (0..width as usize).map(|i| (digits[i] + p - digits[i + 1]) % p).collect()
}

fn walk_chunk(basis: &[Vec<u8>], p: u32, chunk: u64, low: u32, hist: &mut [u64]) {
    let k = basis.len() as u32;
    let start = chunk * (p as u64).pow(low);
    let gray = gray_digits(start, p, k);
    let mut cur = vec![0u8; basis[0].len()];
    for (row, &g) in basis.iter().zip(&gray) {
        for (c, &b) in cur.iter_mut().zip(row) {
            *c = ((*c as u32 + g * b as u32) % p) as u8;
        }
    }
    let mut counter = vec![0u32; low as usize];
    let steps = (p as u64).pow(low);
    for step in 0..steps {
        hist[cur.iter().filter(|&&c| c != 0).count()] += 1;
        if step + 1 == steps {
            break;
        }
        let mut digit = 0;
        while counter[digit] == p - 1 {
            counter[digit] = 0;
            digit += 1;
        }
        counter[digit] += 1;
        for (c, &b) in cur.iter_mut().zip(&basis[digit]) {
            let s = *c as u32 + b as u32;
            *c = if s >= p { (s - p) as u8 } else { s as u8 };
        }
    }
}

fn pack_bits(symbols: &[u8]) -> Vec<u64> {
    let mut words = vec![0u64; symbols.len().div_ceil(64)];
    for (i, &s) in symbols.iter().enumerate() {
        if s != 0 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn walk_binary_chunk(basis: &[Vec<u64>], chunk: u64, low: u32, hist: &mut [u64]) {
    let k = basis.len() as u32;
    let start = chunk << low;
    let gray = gray_digits(start, 2, k);
    let mut cur = vec![0u64; basis[0].len()];
    for (row, &g) in basis.iter().zip(&gray) {
        if g == 1 {
            cur.iter_mut().zip(row).for_each(|(c, &b)| *c ^= b);
        }
    }
    let steps = 1u64 << low;
    for step in 0..steps {
        hist[cur.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
        if step + 1 == steps {
            break;
        }
        let digit = step.trailing_ones() as usize;
        cur.iter_mut().zip(&basis[digit]).for_each(|(c, &b)| *c ^= b);
    }
}

/// The weight `w_j = (p^{2m} - p^{2m-1})(1 - (-p)^{-j})`, exact.
pub fn closed_form_weight(params: &CodeParams, j: u32) -> u64 {
    let p = BigInt::from(params.p);
    let m = params.m;
    // (p - 1)(p^{2m-1} - (-1)^j p^{2m-1-j})
    let sign = if j.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let w = (&p - BigInt::one()) * (p.pow(2 * m - 1) - sign * p.pow(2 * m - 1 - j));
    w.to_u64().expect("weight fits the code length")
}

/// `f_j = [m, j]_{-p} · Π_{l<j} (p^m - (-p)^l)`, exact.
pub fn closed_form_multiplicity(params: &CodeParams, j: u32) -> Result<BigUint> {
    let neg_p = -BigInt::from(params.p);
    let pm = BigInt::from(params.p).pow(params.m);
    let gauss = gaussian_binomial(params.m, j, -(params.p as i64))?;
    let product: BigInt = (0..j).map(|l| &pm - neg_p.pow(l)).product();
    let f = gauss * product;
    if f.is_negative() {
        return Err(Error::InternalInconsistency(format!("negative multiplicity f_{j} = {f}")));
    }
    Ok(f.magnitude().clone())
}

/// The weight distribution in closed form: `A_0 = 1`, `A_{w_j} = f_j`.
/// Checks the total count and that the minimum distance is `w_2` (for m ≥ 3).
pub fn closed_form_weight_distribution(params: &CodeParams) -> Result<WeightDistribution> {
    let mut lines = BTreeMap::new();
    lines.insert(0, BigUint::one());
    for j in 1..=params.m {
        let w = closed_form_weight(params, j);
        let f = closed_form_multiplicity(params, j)?;
        if lines.insert(w, f).is_some() {
            return Err(Error::InternalInconsistency(format!("weight {w} repeats")));
        }
    }
    let dist = WeightDistribution::new(params, lines);
    dist.validate(params.p)?;
    if params.m >= 3 {
        let w2 = closed_form_weight(params, 2);
        if dist.min_distance != w2 {
            return Err(Error::InternalInconsistency(format!(
                "minimum distance {} differs from w_2 = {w2}",
                dist.min_distance
            )));
        }
    }
    Ok(dist)
}
