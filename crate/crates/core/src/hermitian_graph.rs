//! Hermitian matrices over GF(r^2), the rank-one connection set of the
//! Hermitian forms graph, and the graph's spectrum in closed form.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::prime_power;
use crate::enumerate::EnumConfig;
use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, Gf, DEFAULT_FIELD_CAP};

/// Gaussian binomial coefficient `[j, i]_b` by the recurrence
/// `[j, i] = [j-1, i-1] + b^i [j-1, i]`, `[j, 0] = 1`. Zero when `i > j`.
pub fn gaussian_binomial(j: u32, i: u32, b: i64) -> Result<BigInt> {
    if b == 0 || b == 1 {
        return Err(Error::InvalidBasis(b));
    }
    if i > j {
        return Ok(BigInt::zero());
    }
    let i = i as usize;
    let base = BigInt::from(b);
    let powers: Vec<BigInt> = (0..=i as u32).map(|k| base.pow(k)).collect();
    // row[k] holds [row, k]
    let mut row = vec![BigInt::zero(); i + 1];
    row[0] = BigInt::one();
    for _ in 0..j {
        for k in (1..=i).rev() {
            let shifted = &row[k - 1] + &powers[k] * &row[k];
            row[k] = shifted;
        }
    }
    Ok(row.swap_remove(i))
}

/// One eigenvalue of the Hermitian forms graph with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLine {
    pub j: u32,
    pub eigenvalue: BigInt,
    pub multiplicity: BigUint,
}

/// Eigenvalues and multiplicities of the Hermitian forms graph on
/// GF(r^2)^d:
///
/// * `θ_0 = (r^{2d} - 1)/(r + 1)`, `θ_j = θ_0 + (-r)^{2d-j} [j, 1]_{-r}`
/// * `f_0 = 1`, `f_j = [d, j]_{-r} Π_{l<j} ((-1)^{d+1} r^d + (-1)^{l+1} r^l)`
pub fn closed_form_spectrum(d: u32, r: u64) -> Result<Vec<SpectrumLine>> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    if prime_power(r).is_none() {
        return Err(Error::InvalidParams(format!("r = {r} is not a prime power")));
    }
    let rr = BigInt::from(r);
    let neg_r = -rr.clone();
    let theta0 = (rr.pow(2 * d) - BigInt::one()) / (&rr + BigInt::one());
    let sign = |e: u32| if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let neg_r_i64 = -(i64::try_from(r).map_err(|_| Error::InvalidParams(format!("r = {r} too large")))?);

    let mut lines = vec![SpectrumLine { j: 0, eigenvalue: theta0.clone(), multiplicity: BigUint::one() }];
    for j in 1..=d {
        let theta = &theta0 + neg_r.pow(2 * d - j) * gaussian_binomial(j, 1, neg_r_i64)?;
        let product: BigInt = (0..j).map(|l| sign(d + 1) * rr.pow(d) + sign(l + 1) * rr.pow(l)).product();
        let f = gaussian_binomial(d, j, neg_r_i64)? * product;
        if f.is_negative() {
            return Err(Error::InternalInconsistency(format!("negative multiplicity f_{j} = {f}")));
        }
        lines.push(SpectrumLine { j, eigenvalue: theta, multiplicity: f.magnitude().clone() });
    }
    Ok(lines)
}

/// The spectrum as an eigenvalue → multiplicity map.
pub fn spectrum_multiset(lines: &[SpectrumLine]) -> BTreeMap<BigInt, BigUint> {
    let mut out = BTreeMap::new();
    for line in lines {
        *out.entry(line.eigenvalue.clone()).or_insert_with(BigUint::zero) += &line.multiplicity;
    }
    out
}

/// A `d × d` matrix over GF(r^2), row-major. Entries live in whatever field
/// the owning [`HermitianSpace`] was built on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HermitianMatrix {
    pub d: usize,
    pub entries: Vec<FieldElement>,
}

impl HermitianMatrix {
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.d + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// Builds GF(r^2) for standalone use (same least-primitive modulus rule as
/// the code field).
pub fn hermitian_field(r: u64) -> Result<Gf> {
    let (p, s) = prime_power(r).ok_or_else(|| Error::InvalidParams(format!("r = {r} is not a prime power")))?;
    let p = u32::try_from(p).map_err(|_| Error::InvalidParams(format!("r = {r} too large")))?;
    Gf::new(p, 2 * s, DEFAULT_FIELD_CAP)
}

/// Hermitian `d × d` matrices over the subfield GF(r^2) of a field `gf`,
/// with conjugation `x ↦ x^r`.
pub struct HermitianSpace<'a> {
    gf: &'a Gf,
    r: u64,
    d: usize,
    conj_power: u32,
    r_step: u32,
    r2_step: u32,
}

impl<'a> HermitianSpace<'a> {
    pub fn new(gf: &'a Gf, r: u64, d: usize) -> Result<Self> {
        let (p, s) = prime_power(r).ok_or_else(|| Error::InvalidParams(format!("r = {r} is not a prime power")))?;
        if p != gf.characteristic() as u64 {
            return Err(Error::InvalidParams(format!("r = {r} has the wrong characteristic")));
        }
        if d == 0 {
            return Err(Error::InvalidParams("d must be at least 1".into()));
        }
        Ok(Self { gf, r, d, conj_power: s, r_step: gf.subfield_step(s)?, r2_step: gf.subfield_step(2 * s)? })
    }

    pub fn field(&self) -> &Gf {
        self.gf
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn conj(&self, x: FieldElement) -> FieldElement {
        self.gf.frobenius(x, self.conj_power)
    }

    /// Zero, then the nonzero elements of GF(r) in exponent order.
    pub fn base_elements(&self) -> Vec<FieldElement> {
        self.elements_with_step(self.r_step)
    }

    /// Zero, then the nonzero elements of GF(r^2) in exponent order.
    pub fn quad_elements(&self) -> Vec<FieldElement> {
        self.elements_with_step(self.r2_step)
    }

    fn elements_with_step(&self, step: u32) -> Vec<FieldElement> {
        std::iter::once(FieldElement::ZERO)
            .chain((0..self.gf.group_order()).step_by(step as usize).map(|e| self.gf.pi_pow(e as i64)))
            .collect()
    }

    pub fn zero(&self) -> HermitianMatrix {
        HermitianMatrix { d: self.d, entries: vec![FieldElement::ZERO; self.d * self.d] }
    }

    pub fn identity(&self) -> HermitianMatrix {
        let mut h = self.zero();
        for i in 0..self.d {
            h.entries[i * self.d + i] = FieldElement::ONE;
        }
        h
    }

    /// `a^T · ā` for a row `a` over GF(r^2).
    pub fn outer(&self, a: &[FieldElement]) -> HermitianMatrix {
        let mut entries = Vec::with_capacity(self.d * self.d);
        for &ai in a {
            for &aj in a {
                entries.push(self.gf.mul(ai, self.conj(aj)));
            }
        }
        HermitianMatrix { d: self.d, entries }
    }

    pub fn add(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> HermitianMatrix {
        let entries = x.entries.iter().zip(&y.entries).map(|(&a, &b)| self.gf.add(a, b)).collect();
        HermitianMatrix { d: self.d, entries }
    }

    pub fn sub(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> HermitianMatrix {
        let entries = x.entries.iter().zip(&y.entries).map(|(&a, &b)| self.gf.sub(a, b)).collect();
        HermitianMatrix { d: self.d, entries }
    }

    /// Entries in GF(r^2) and `H = H^*`.
    pub fn is_hermitian(&self, h: &HermitianMatrix) -> bool {
        if h.d != self.d || h.entries.len() != self.d * self.d {
            return false;
        }
        let in_quad = |x: FieldElement| x.exponent().is_none_or(|e| e % self.r2_step == 0);
        h.entries.iter().all(|&x| in_quad(x))
            && (0..self.d).all(|i| (0..self.d).all(|j| h.get(i, j) == self.conj(h.get(j, i))))
    }

    pub fn rank(&self, h: &HermitianMatrix) -> usize {
        matrix_rank(self.gf, h.entries.clone(), h.d, h.d)
    }

    /// Number of Hermitian matrices, `r^{d^2}`.
    pub fn count(&self) -> u128 {
        (self.r as u128).saturating_pow((self.d * self.d) as u32)
    }

    /// All Hermitian matrices: diagonal over GF(r), strict upper triangle
    /// over GF(r^2), lower triangle by conjugation.
    pub fn enumerate_all(&self, cfg: &EnumConfig) -> Result<Vec<HermitianMatrix>> {
        let total = cfg.check(self.count())?;
        let base = self.base_elements();
        let quad = self.quad_elements();
        let d = self.d;
        let upper: Vec<(usize, usize)> = (0..d).flat_map(|i| ((i + 1)..d).map(move |j| (i, j))).collect();
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut h = self.zero();
            for i in 0..d {
                let x = base[(idx % base.len() as u64) as usize];
                idx /= base.len() as u64;
                h.entries[i * d + i] = x;
            }
            for &(i, j) in &upper {
                let x = quad[(idx % quad.len() as u64) as usize];
                idx /= quad.len() as u64;
                h.entries[i * d + j] = x;
                h.entries[j * d + i] = self.conj(x);
            }
            out.push(h);
        }
        Ok(out)
    }

    /// The rank-one Hermitian matrices `a^T ā`, one per class of nonzero
    /// rows modulo the (r+1)-th roots of unity. The representative row has
    /// its first nonzero coordinate at GF(r^2)-exponent below `r - 1`.
    pub fn enumerate_rank1(&self, cfg: &EnumConfig) -> Result<Vec<HermitianMatrix>> {
        let quad = self.quad_elements();
        let q2 = quad.len() as u64;
        let rows = cfg.check((q2 as u128).saturating_pow(self.d as u32))?;
        let mut out = Vec::new();
        let mut row = vec![FieldElement::ZERO; self.d];
        for idx in 1..rows {
            let mut rest = idx;
            for slot in row.iter_mut().rev() {
                *slot = quad[(rest % q2) as usize];
                rest /= q2;
            }
            let lead = row.iter().find_map(|x| x.exponent()).expect("nonzero row");
            if (lead / self.r2_step) as u64 >= self.r - 1 {
                continue;
            }
            out.push(self.outer(&row));
        }
        Ok(out)
    }
}

/// Rank of a `rows × cols` matrix over `gf` by Gaussian elimination.
pub fn matrix_rank(gf: &Gf, mut entries: Vec<FieldElement>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !entries[r * cols + col].is_zero()) else {
            continue;
        };
        for k in 0..cols {
            entries.swap(rank * cols + k, pivot * cols + k);
        }
        let inv = gf.inv(entries[rank * cols + col]).expect("nonzero pivot");
        for k in 0..cols {
            entries[rank * cols + k] = gf.mul(entries[rank * cols + k], inv);
        }
        for r in 0..rows {
            let factor = entries[r * cols + col];
            if r == rank || factor.is_zero() {
                continue;
            }
            for k in 0..cols {
                let sub = gf.mul(factor, entries[rank * cols + k]);
                entries[r * cols + k] = gf.sub(entries[r * cols + k], sub);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of a Hermitian matrix over the standalone GF(r^2) of [`hermitian_field`].
pub fn hermitian_rank(gf: &Gf, h: &HermitianMatrix) -> usize {
    matrix_rank(gf, h.entries.clone(), h.d, h.d)
}

/// All rank-one Hermitian `d × d` matrices over the standalone GF(r^2).
pub fn enumerate_rank1(d: usize, r: u64, cfg: &EnumConfig) -> Result<Vec<HermitianMatrix>> {
    let gf = hermitian_field(r)?;
    HermitianSpace::new(&gf, r, d)?.enumerate_rank1(cfg)
}
