use std::fmt;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

use super::PolyFp;

const ZERO_TAG: u32 = u32::MAX;

/// Element of a table-driven field GF(p^k), stored as a discrete logarithm
/// to the base of the field's primitive element, or the distinguished zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(ZERO_TAG);
    pub const ONE: Self = Self(0);

    pub fn is_zero(self) -> bool {
        self.0 == ZERO_TAG
    }

    /// The exponent `e` with `self = π^e`, or `None` for zero.
    pub fn exponent(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(e) => write!(f, "π^{e}"),
        }
    }
}

/// GF(p^k) with log, antilog and Zech tables.
///
/// Elements are encoded as integers `Σ c_i p^i` from their coordinates in the
/// polynomial basis `1, X, …, X^{k-1}` modulo the field modulus.
pub struct Gf {
    p: u32,
    degree: u32,
    order: u32,
    modulus: PolyFp,
    antilog: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf").field("p", &self.p).field("degree", &self.degree).field("modulus", &self.modulus).finish()
    }
}

impl Gf {
    /// Builds GF(p^degree) over the least primitive modulus, refusing fields
    /// larger than `cap` elements.
    pub fn new(p: u32, degree: u32, cap: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        if degree == 0 {
            return Err(Error::InvalidParams("field degree must be positive".into()));
        }
        let order = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        let hard_limit = u32::MAX as u64 / 2;
        if order > cap.min(hard_limit) as u128 {
            return Err(Error::TooLarge { order, cap: cap.min(hard_limit) });
        }
        let modulus = least_primitive_polynomial(p, degree);
        Ok(Self::with_modulus(modulus, degree, order as u32))
    }

    fn with_modulus(modulus: PolyFp, degree: u32, order: u32) -> Self {
        let p = modulus.characteristic();
        let n = degree as usize;
        let group = (order - 1) as usize;
        let low: Vec<u32> = modulus.coeffs()[..n].to_vec();

        let mut antilog = Vec::with_capacity(group);
        let mut log = vec![ZERO_TAG; order as usize];
        let mut coords = vec![0u32; n];
        coords[0] = 1;
        for e in 0..group {
            let code = encode(&coords, p);
            debug_assert_eq!(log[code as usize], ZERO_TAG, "modulus is not primitive");
            antilog.push(code);
            log[code as usize] = e as u32;
            // multiply by X and reduce: X^n = -(c_0 + c_1 X + ...)
            let top = coords[n - 1];
            for i in (1..n).rev() {
                coords[i] = coords[i - 1];
            }
            coords[0] = 0;
            if top != 0 {
                let neg_top = (p - top) as u64;
                for (c, &l) in coords.iter_mut().zip(&low) {
                    *c = ((*c as u64 + neg_top * l as u64) % p as u64) as u32;
                }
            }
        }

        let zech = antilog
            .iter()
            .map(|&code| {
                let digit = code % p;
                let bumped = code - digit + (digit + 1) % p;
                log[bumped as usize]
            })
            .collect();

        Self { p, degree, order, modulus, antilog, log, zech }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &PolyFp {
        &self.modulus
    }

    /// The primitive element: the class of `X` modulo the field modulus.
    pub fn pi(&self) -> FieldElement {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, e: i64) -> FieldElement {
        FieldElement(e.rem_euclid(self.group_order() as i64) as u32)
    }

    pub fn from_code(&self, code: u32) -> FieldElement {
        FieldElement(self.log[code as usize])
    }

    /// Integer code of `x` (coordinates in the polynomial basis, base p).
    pub fn to_code(&self, x: FieldElement) -> u32 {
        match x.exponent() {
            None => 0,
            Some(e) => self.antilog[e as usize],
        }
    }

    /// Embeds a residue of GF(p).
    pub fn from_prime(&self, c: u32) -> FieldElement {
        self.from_code(c % self.p)
    }

    /// Residue of an element of the prime field, `None` otherwise.
    pub fn to_prime(&self, x: FieldElement) -> Option<u32> {
        let code = self.to_code(x);
        (code < self.p).then_some(code)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.group_order();
        let s = a.0 as u64 + b.0 as u64;
        FieldElement((s % n as u64) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.group_order();
        let diff = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + n - a.0 };
        let z = self.zech[diff as usize];
        if z == ZERO_TAG {
            return FieldElement::ZERO;
        }
        FieldElement(((a.0 as u64 + z as u64) % n as u64) as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        self.mul(a, FieldElement(self.group_order() / 2))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let e = a.exponent()?;
        Some(FieldElement((self.group_order() - e) % self.group_order()))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        match a.exponent() {
            None if k == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(e) => {
                let n = self.group_order() as u64;
                FieldElement(((e as u64 * (k % n)) % n) as u32)
            }
        }
    }

    /// `a^{p^k}`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let Some(e) = a.exponent() else {
            return a;
        };
        let n = self.group_order() as u64;
        let mut e = e as u64;
        for _ in 0..(k % self.degree) {
            e = e * self.p as u64 % n;
        }
        FieldElement(e as u32)
    }

    /// Step between consecutive exponents of the subfield GF(p^sub):
    /// `(q - 1) / (p^sub - 1)`.
    pub fn subfield_step(&self, sub: u32) -> Result<u32> {
        if sub == 0 || !self.degree.is_multiple_of(sub) {
            return Err(Error::NotADivisor { degree: sub, field_degree: self.degree });
        }
        let sub_order = (self.p as u64).pow(sub);
        Ok((self.group_order() as u64 / (sub_order - 1)) as u32)
    }

    pub fn in_subfield(&self, x: FieldElement, sub: u32) -> Result<bool> {
        let step = self.subfield_step(sub)?;
        Ok(x.exponent().is_none_or(|e| e % step == 0))
    }

    /// Zero followed by the nonzero elements of GF(p^sub) in exponent order.
    pub fn subfield_elements(&self, sub: u32) -> Result<Vec<FieldElement>> {
        let step = self.subfield_step(sub)?;
        let mut out = Vec::with_capacity((self.group_order() / step) as usize + 1);
        out.push(FieldElement::ZERO);
        out.extend((0..self.group_order()).step_by(step as usize).map(FieldElement));
        Ok(out)
    }

    /// `Σ_k x^{p^{to·k}}` from GF(p^from) down to GF(p^to).
    pub fn trace(&self, from: u32, to: u32, x: FieldElement) -> Result<FieldElement> {
        if to == 0 || !from.is_multiple_of(to) {
            return Err(Error::NotADivisor { degree: to, field_degree: from });
        }
        if !self.in_subfield(x, from)? {
            return Err(Error::NotInSubfield { degree: from });
        }
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..(from / to) {
            acc = self.add(acc, term);
            term = self.frobenius(term, to);
        }
        Ok(acc)
    }

    /// Monic minimal polynomial of `x` over GF(p), the product of `X - y`
    /// over the Frobenius orbit of `x`.
    pub fn minimal_polynomial(&self, x: FieldElement) -> Result<PolyFp> {
        let mut orbit = vec![x];
        loop {
            let next = self.frobenius(*orbit.last().unwrap(), 1);
            if next == x {
                break;
            }
            orbit.push(next);
        }
        // coefficients low degree first, over the big field
        let mut coeffs = vec![FieldElement::ONE];
        for &root in &orbit {
            let neg_root = self.neg(root);
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.add(next[i], self.mul(c, neg_root));
            }
            coeffs = next;
        }
        let prime_coeffs = coeffs
            .into_iter()
            .map(|c| {
                self.to_prime(c).ok_or_else(|| {
                    Error::InternalInconsistency(format!("minimal polynomial coefficient {c:?} outside GF({})", self.p))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyFp::new(self.p, prime_coeffs))
    }

    /// Evaluates a GF(p) polynomial at a field element (Horner).
    pub fn eval(&self, poly: &PolyFp, x: FieldElement) -> FieldElement {
        poly.coeffs().iter().rev().fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_prime(c)))
    }

    /// Polynomial-basis arithmetic, independent of the Zech table; used to
    /// cross-check it.
    pub fn add_by_coordinates(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let (mut x, mut y) = (self.to_code(a), self.to_code(b));
        let mut code = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            code += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        self.from_code(code)
    }
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Least primitive polynomial of the given degree over GF(p).
///
/// Candidates `X^n + c_{n-1} X^{n-1} + … + c_0` are ordered by the sequence
/// `(c_0, c_1, …, c_{n-1})` compared lexicographically.
pub fn least_primitive_polynomial(p: u32, degree: u32) -> PolyFp {
    let n = degree as usize;
    let order = (p as u64).pow(degree);
    let group = order - 1;
    let cofactors: Vec<u64> = prime_factors(group).into_iter().map(|l| group / l).collect();
    let x = PolyFp::new(p, vec![0, 1]);
    let one = PolyFp::one(p);
    for index in 0..order {
        let mut coeffs = vec![0u32; n + 1];
        let mut rest = index;
        for i in (0..n).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs[n] = 1;
        let candidate = PolyFp::new(p, coeffs);
        if x.pow_mod(group, &candidate) != one {
            continue;
        }
        if cofactors.iter().all(|&c| x.pow_mod(c, &candidate) != one) {
            return candidate;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}
