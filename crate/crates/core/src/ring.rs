//! The truncated polynomial ring `k_E[u]/u^N`.
//!
//! This is a chain ring: its ideals are exactly `(u^m)` for `0 <= m <= N`,
//! every element is `u^val * unit`, and a nonzero `a` divides `b` iff
//! `val(a) <= val(b)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, GaloisField};

/// An element of `k_E[u]/u^N` as a dense coefficient vector of length `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    coeffs: Vec<FieldElem>,
}

impl TruncPoly {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> FieldElem {
        self.coeffs.get(degree).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms as `(degree, coefficient)`, in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElem)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Least degree with a nonzero coefficient; `N` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }
}

/// The ring `R = k_E[u]/u^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    field: Arc<GaloisField>,
    len: usize,
}

impl ChainRing {
    pub fn new(field: Arc<GaloisField>, len: usize) -> Self {
        assert!(len > 0, "truncation degree must be positive");
        ChainRing { field, len }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// The truncation degree `N`; `u^N = 0`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn zero(&self) -> TruncPoly {
        TruncPoly { coeffs: vec![FieldElem::ZERO; self.len] }
    }

    pub fn one(&self) -> TruncPoly {
        self.constant(FieldElem::ONE)
    }

    pub fn constant(&self, c: FieldElem) -> TruncPoly {
        self.monomial(0, c)
    }

    /// `c * u^degree`, which is zero once `degree >= N`.
    pub fn monomial(&self, degree: usize, c: FieldElem) -> TruncPoly {
        let mut out = self.zero();
        if degree < self.len {
            out.coeffs[degree] = c;
        }
        out
    }

    /// `u^degree`.
    pub fn u_pow(&self, degree: usize) -> TruncPoly {
        self.monomial(degree, FieldElem::ONE)
    }

    /// Sums the given terms; degrees `>= N` vanish.
    pub fn from_terms(&self, terms: &[(usize, FieldElem)]) -> TruncPoly {
        let mut out = self.zero();
        for &(d, c) in terms {
            if d < self.len {
                out.coeffs[d] = self.field.add(out.coeffs[d], c);
            }
        }
        out
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<FieldElem>) -> Result<TruncPoly> {
        if coeffs.len() > self.len && coeffs[self.len..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidParameter(format!("polynomial has terms of degree >= {}", self.len)));
        }
        coeffs.resize(self.len, FieldElem::ZERO);
        Ok(TruncPoly { coeffs })
    }

    pub fn add(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        let k = &self.field;
        TruncPoly { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        let k = &self.field;
        TruncPoly { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &TruncPoly) -> TruncPoly {
        TruncPoly { coeffs: a.coeffs.iter().map(|&x| self.field.neg(x)).collect() }
    }

    pub fn scale(&self, c: FieldElem, a: &TruncPoly) -> TruncPoly {
        TruncPoly { coeffs: a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect() }
    }

    pub fn mul(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        let mut out = self.zero();
        self.mul_add_into(&mut out, a, b);
        out
    }

    /// `acc += a * b`.
    pub fn mul_add_into(&self, acc: &mut TruncPoly, a: &TruncPoly, b: &TruncPoly) {
        let k = &self.field;
        let n = self.len;
        let va = a.valuation();
        let vb = b.valuation();
        if va + vb >= n {
            return;
        }
        for i in va..n - vb {
            let ai = a.coeffs[i];
            if ai.is_zero() {
                continue;
            }
            for j in vb..n - i {
                let bj = b.coeffs[j];
                if !bj.is_zero() {
                    acc.coeffs[i + j] = k.add(acc.coeffs[i + j], k.mul(ai, bj));
                }
            }
        }
    }

    /// `acc -= a * b`.
    pub fn mul_sub_into(&self, acc: &mut TruncPoly, a: &TruncPoly, b: &TruncPoly) {
        let neg = self.neg(a);
        self.mul_add_into(acc, &neg, b);
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, a: &TruncPoly, k: usize) -> TruncPoly {
        let mut out = self.zero();
        for i in 0..self.len.saturating_sub(k) {
            out.coeffs[i + k] = a.coeffs[i];
        }
        out
    }

    /// The `k_E`-linear ring endomorphism `u^i -> u^{p i}`.
    pub fn phi_twist(&self, a: &TruncPoly) -> TruncPoly {
        let p = self.field.characteristic() as usize;
        let mut out = self.zero();
        for (i, c) in a.terms() {
            if i * p < self.len {
                out.coeffs[i * p] = c;
            }
        }
        out
    }

    pub fn unit_inverse(&self, a: &TruncPoly) -> Result<TruncPoly> {
        let k = &self.field;
        let a0 = k.inv(a.coeffs[0]).ok_or(Error::NotAUnit)?;
        // b_0 = 1/a_0, b_n = -(1/a_0) sum_{i=1}^n a_i b_{n-i}
        let mut b = self.zero();
        b.coeffs[0] = a0;
        for n in 1..self.len {
            let mut s = FieldElem::ZERO;
            for i in 1..=n {
                s = k.add(s, k.mul(a.coeffs[i], b.coeffs[n - i]));
            }
            b.coeffs[n] = k.neg(k.mul(a0, s));
        }
        Ok(b)
    }

    /// `u^{-val(a)} a`, a unit when `a` is nonzero.
    pub fn unit_part(&self, a: &TruncPoly) -> TruncPoly {
        let v = a.valuation();
        let mut out = self.zero();
        for i in v..self.len {
            out.coeffs[i - v] = a.coeffs[i];
        }
        out
    }

    /// Some `x` with `x * b = a`, given `val(b) <= val(a)`.
    pub fn divide(&self, a: &TruncPoly, b: &TruncPoly) -> Option<TruncPoly> {
        let (va, vb) = (a.valuation(), b.valuation());
        if a.is_zero() {
            return Some(self.zero());
        }
        if vb > va {
            return None;
        }
        let inv = self.unit_inverse(&self.unit_part(b)).ok()?;
        Some(self.mul(&self.shift(&self.unit_part(a), va - vb), &inv))
    }

    /// Every element of `R`. There are `q^N` of them, so only for tests and
    /// oracles on tiny rings.
    pub fn elements(&self) -> impl Iterator<Item = TruncPoly> + '_ {
        let q = self.field.order() as u64;
        let total = q.checked_pow(self.len as u32).expect("ring too large to enumerate");
        (0..total).map(move |mut n| {
            let coeffs = (0..self.len)
                .map(|_| {
                    let d = (n % q) as u32;
                    n /= q;
                    self.field.from_index(d).unwrap()
                })
                .collect();
            TruncPoly { coeffs }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, f: u32, len: usize) -> ChainRing {
        ChainRing::new(Arc::new(GaloisField::new(p, f).unwrap()), len)
    }

    #[test]
    fn phi_twist_examples() {
        let r = ring(3, 1, 6);
        assert_eq!(r.phi_twist(&r.one()), r.one());
        assert!(r.phi_twist(&r.u_pow(2)).is_zero());

        let r = ring(3, 1, 12);
        let f = r.add(&r.one(), &r.u_pow(2));
        assert_eq!(r.phi_twist(&f), r.add(&r.one(), &r.u_pow(6)));
    }

    #[test]
    fn truncation_and_valuation() {
        let r = ring(5, 1, 8);
        let a = r.u_pow(5);
        let b = r.u_pow(4);
        assert!(r.mul(&a, &b).is_zero());
        assert_eq!(r.zero().valuation(), 8);
        assert_eq!(r.mul(&r.u_pow(2), &r.u_pow(3)).valuation(), 5);
    }

    #[test]
    fn inverse_and_division() {
        let r = ring(3, 2, 9);
        let k = r.field();
        let a = r.from_terms(&[(0, k.generator()), (1, k.one()), (4, k.from_int(2))]);
        let inv = r.unit_inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());
        assert_eq!(r.unit_inverse(&r.u_pow(1)), Err(Error::NotAUnit));

        let b = r.mul(&r.u_pow(2), &a);
        let c = r.from_terms(&[(5, k.one()), (7, k.generator())]);
        let x = r.divide(&c, &b).unwrap();
        assert_eq!(r.mul(&x, &b), c);
        assert!(r.divide(&r.u_pow(1), &b).is_none());
    }

    #[test]
    fn enumerate_tiny_ring() {
        let r = ring(3, 1, 2);
        assert_eq!(r.elements().count(), 9);
    }
}
