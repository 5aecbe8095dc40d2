use std::fmt;

use crate::arith::inv_mod_prime;

/// Polynomial over GF(p), coefficients stored low degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u32,
    coeffs: Vec<u32>,
}

impl PolyFp {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let mut poly = Self { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        poly.trim();
        poly
    }

    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self { p, coeffs: vec![1] }
    }

    /// `X^k - 1`.
    pub fn x_pow_minus_one(p: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[0] = p - 1;
        coeffs[k] = 1;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed characteristics");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder of `self` divided by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        assert_eq!(self.p, divisor.p, "mixed characteristics");
        let dd = divisor.degree().expect("division by the zero polynomial");
        let p = self.p as u64;
        let lead_inv = inv_mod_prime(divisor.coeffs[dd], self.p) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let factor = rem[top] * lead_inv % p;
            if factor != 0 {
                let shift = top - dd;
                for (k, &c) in divisor.coeffs.iter().enumerate() {
                    let sub = factor * c as u64 % p;
                    rem[shift + k] = (rem[shift + k] + p - sub) % p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Self::new(self.p, rem.into_iter().map(|c| c as u32).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp[p={}](", self.p)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_trailing_zeros() {
        let poly = PolyFp::new(3, vec![1, 2, 3, 0]);
        assert_eq!(poly.coeffs(), &[1, 2]);
        assert_eq!(poly.degree(), Some(1));
        assert_eq!(PolyFp::new(5, vec![0, 0]).degree(), None);
    }

    #[test]
    fn multiplication_and_remainder() {
        // (X + 1)^2 = X^2 + 1 over GF(2)
        let a = PolyFp::new(2, vec![1, 1]);
        assert_eq!(a.mul(&a), PolyFp::new(2, vec![1, 0, 1]));
        // X^3 - 1 = (X - 1)(X^2 + X + 1)
        let cube = PolyFp::x_pow_minus_one(5, 3);
        let lin = PolyFp::new(5, vec![4, 1]);
        let quad = PolyFp::new(5, vec![1, 1, 1]);
        assert!(lin.divides(&cube));
        assert!(quad.divides(&cube));
        assert_eq!(lin.mul(&quad), cube);
        assert!(!PolyFp::new(5, vec![1, 1]).divides(&cube));
    }

    #[test]
    fn non_monic_division() {
        let a = PolyFp::new(7, vec![3, 0, 2]);
        let b = PolyFp::new(7, vec![5, 4]);
        let r = a.rem(&b);
        assert!(r.degree().is_none_or(|d| d < 1));
        // a - r must be a multiple of b
        let diff = PolyFp::new(7, vec![(3 + 7 - r.coeff(0)) % 7, 0, 2]);
        assert!(b.divides(&diff));
    }

    #[test]
    fn power_modulo() {
        // X has order 7 modulo X^3 + X + 1 over GF(2)
        let modulus = PolyFp::new(2, vec![1, 1, 0, 1]);
        let x = PolyFp::new(2, vec![0, 1]);
        assert_eq!(x.pow_mod(7, &modulus), PolyFp::one(2));
        assert_ne!(x.pow_mod(1, &modulus), PolyFp::one(2));
    }

    #[test]
    fn display() {
        assert_eq!(PolyFp::new(3, vec![1, 2, 0, 1]).to_string(), "X^3 + 2*X + 1");
        assert_eq!(PolyFp::zero(2).to_string(), "0");
    }
}
