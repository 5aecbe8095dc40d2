//! Exact arithmetic in the tower GF(p) ⊂ GF(p^m) ⊂ GF(p^{2m}).
//!
//! Everything is built on a single table-driven field [`Gf`] of order
//! `q = p^{2m}`; subfields are recognised by the divisibility of discrete
//! logarithms, so the tower is coherent by construction.

mod gf;
mod poly;

pub use gf::{least_primitive_polynomial, FieldElement, Gf};
pub use poly::PolyFp;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Default cap on the field order for table construction.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 26;

/// The parameters `(p, m)` with the derived `n = 2m`, `t = (m - 1) / 2` and
/// `q = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub t: u32,
    pub q: u64,
}

impl CodeParams {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        if m.is_multiple_of(2) {
            return Err(Error::EvenM(m));
        }
        let n = 2 * m;
        let q = (p as u64)
            .checked_pow(n)
            .ok_or_else(|| Error::InvalidParams(format!("p^(2m) = {p}^{n} overflows 64 bits")))?;
        Ok(Self { p, m, n, t: (m - 1) / 2, q })
    }

    /// Code length `q - 1`.
    pub fn length(&self) -> u64 {
        self.q - 1
    }

    /// Code dimension `m^2`.
    pub fn dimension(&self) -> u32 {
        self.m * self.m
    }

    /// `p^m`, the order of the middle field.
    pub fn half_order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    /// `p^k + 1` reduced modulo `q - 1`; the exponent of the k-th
    /// coordinate map `x ↦ x^{p^k + 1}`.
    pub fn twist(&self, k: u32) -> u64 {
        ((self.p as u64).pow(k) + 1) % (self.q - 1)
    }

    /// Exponents `p^m + 1, p + 1, p^3 + 1, …, p^{m-2} + 1` of the coordinate
    /// maps, first entry for the GF(p^m) coordinate.
    pub fn twists(&self) -> Vec<u64> {
        std::iter::once(self.m).chain((1..=self.t).map(|j| 2 * j - 1)).map(|k| self.twist(k)).collect()
    }
}

/// An immutable field context for one parameter set: the field GF(q) plus
/// absolute-trace tables for GF(q) and GF(p^m).
#[derive(Debug)]
pub struct FieldCtx {
    params: CodeParams,
    gf: Gf,
    trace_full: Vec<u8>,
    trace_half: Vec<u8>,
    half_step: u32,
}

impl FieldCtx {
    pub fn build(params: CodeParams, cap: u64) -> Result<Self> {
        let gf = Gf::new(params.p, params.n, cap)?;
        let p = params.p;
        if p > u8::MAX as u32 {
            return Err(Error::InvalidParams(format!("p = {p} is too large for trace tables")));
        }
        let half_step = gf.subfield_step(params.m)?;

        // Tr(π^e) = Σ_i coordinate_i(π^e) · Tr(X^i)
        let basis_traces: Vec<u32> = (0..params.n as i64)
            .map(|i| {
                let t = gf.trace(params.n, 1, gf.pi_pow(i)).expect("full field element");
                gf.to_prime(t).expect("trace lands in GF(p)")
            })
            .collect();
        let trace_full = (0..gf.group_order())
            .map(|e| {
                let mut code = gf.to_code(gf.pi_pow(e as i64));
                let mut acc = 0u32;
                for &bt in &basis_traces {
                    acc = (acc + (code % p) * bt) % p;
                    code /= p;
                }
                acc as u8
            })
            .collect();

        let trace_half = (0..gf.group_order() / half_step)
            .map(|k| {
                let x = gf.pi_pow(k as i64 * half_step as i64);
                let t = gf.trace(params.m, 1, x).expect("subfield element");
                gf.to_prime(t).expect("trace lands in GF(p)") as u8
            })
            .collect();

        Ok(Self { params, gf, trace_full, trace_half, half_step })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> &Gf {
        &self.gf
    }

    pub fn pi(&self) -> FieldElement {
        self.gf.pi()
    }

    /// `Tr_1^n(π^e)` as a residue, for any exponent.
    #[inline]
    pub fn trace_full_exp(&self, e: u32) -> u8 {
        self.trace_full[e as usize]
    }

    /// `Tr_1^m(π^e)` as a residue; `e` must be a multiple of `p^m + 1`.
    #[inline]
    pub fn trace_half_exp(&self, e: u32) -> u8 {
        debug_assert_eq!(e % self.half_step, 0);
        self.trace_half[(e / self.half_step) as usize]
    }

    /// Absolute trace from GF(q) as a residue.
    pub fn trace_full_abs(&self, x: FieldElement) -> u8 {
        x.exponent().map_or(0, |e| self.trace_full_exp(e))
    }

    /// Absolute trace from GF(p^m) as a residue.
    pub fn trace_half_abs(&self, x: FieldElement) -> Result<u8> {
        match x.exponent() {
            None => Ok(0),
            Some(e) if e % self.half_step == 0 => Ok(self.trace_half_exp(e)),
            Some(_) => Err(Error::NotInSubfield { degree: self.params.m }),
        }
    }

    pub fn in_half_field(&self, x: FieldElement) -> bool {
        x.exponent().is_none_or(|e| e % self.half_step == 0)
    }
}

/// Size of the cyclotomic coset `{e p^k mod (q - 1)}`, i.e. the degree of
/// the minimal polynomial of `π^e`, computed without field tables.
pub fn cyclotomic_coset_size(e: u64, p: u64, group_order: u64) -> u32 {
    let start = e % group_order;
    let mut cur = start;
    let mut size = 0;
    loop {
        cur = ((cur as u128 * p as u128) % group_order as u128) as u64;
        size += 1;
        if cur == start {
            return size;
        }
    }
}

/// Builds the field context with the default table cap.
pub fn build_field(params: CodeParams) -> Result<FieldCtx> {
    FieldCtx::build(params, DEFAULT_FIELD_CAP)
}

/// `Tr_{to}^{from}(x)`: the trace from GF(p^from) to GF(p^to).
pub fn trace(ctx: &FieldCtx, from_degree: u32, to_degree: u32, x: FieldElement) -> Result<FieldElement> {
    let n = ctx.params.n;
    if from_degree == 0 || !n.is_multiple_of(from_degree) {
        return Err(Error::NotADivisor { degree: from_degree, field_degree: n });
    }
    ctx.gf.trace(from_degree, to_degree, x)
}

pub fn minimal_polynomial(ctx: &FieldCtx, x: FieldElement) -> Result<PolyFp> {
    ctx.gf.minimal_polynomial(x)
}

/// All `p^degree` elements of the subfield of that degree, zero first.
pub fn subfield_elements(ctx: &FieldCtx, degree: u32) -> Result<Vec<FieldElement>> {
    ctx.gf.subfield_elements(degree)
}
