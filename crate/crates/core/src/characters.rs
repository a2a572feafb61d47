//! Fundamental characters, characters of `G_K` and Serre weights.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, GaloisField};
use crate::ring::ChainRing;

/// The arithmetic setting: `K/Q_p` totally ramified of degree `e`,
/// coefficients in `k_E = GF(p^f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalContext {
    p: u32,
    e: u32,
    field: Arc<GaloisField>,
    ring: ChainRing,
    cyclotomic_scalar: FieldElem,
}

impl GlobalContext {
    pub fn new(p: u32, e: u32, f: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParameter("e must be at least 1".into()));
        }
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        let field = Arc::new(GaloisField::new(p, f)?);
        let len = (e as usize)
            .checked_mul((p as usize - 1) * p as usize)
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| Error::InvalidParameter(format!("e = {} is too large", e)))?;
        let ring = ChainRing::new(field.clone(), len);
        Ok(GlobalContext { p, e, field, ring, cyclotomic_scalar: FieldElem::ONE })
    }

    /// Sets the value of the mod `p` cyclotomic character on Frobenius.
    pub fn with_cyclotomic_scalar(mut self, scalar: FieldElem) -> Result<Self> {
        if scalar.is_zero() || scalar.index() >= self.field.order() {
            return Err(Error::NotAUnit);
        }
        self.cyclotomic_scalar = scalar;
        Ok(self)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.field.degree()
    }

    /// `e' = e(p - 1)`.
    pub fn e_prime(&self) -> usize {
        (self.e * (self.p - 1)) as usize
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// `k_E[u]/u^{e'p}`.
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn cyclotomic_scalar(&self) -> FieldElem {
        self.cyclotomic_scalar
    }

    /// Image of the chosen generator of `Gal(K_1/K)` under `omega`.
    pub fn zeta(&self) -> FieldElem {
        self.field.prime_field_primitive_root()
    }

    /// `n mod (p - 1)` in `[0, p - 1)`.
    pub fn modp1(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64 - 1) as u32
    }
}

/// `omega^exponent` on inertia, exponent mod `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertialChar1 {
    exponent: u32,
}

impl InertialChar1 {
    pub fn new(exponent: i64, ctx: &GlobalContext) -> Self {
        InertialChar1 { exponent: ctx.modp1(exponent) }
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }
}

/// A power of a niveau-2 fundamental character, exponent mod `p^2 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertialChar2 {
    exponent: u32,
}

impl InertialChar2 {
    pub fn new(exponent: i64, ctx: &GlobalContext) -> Self {
        let m = (ctx.p() as i64).pow(2) - 1;
        InertialChar2 { exponent: exponent.rem_euclid(m) as u32 }
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }
}

/// A character of `G_K`: `omega^exp` on inertia times the unramified
/// character taking the given value on Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FullChar {
    inertial: InertialChar1,
    frob_scalar: FieldElem,
}

impl FullChar {
    pub fn new(exponent: i64, frob_scalar: FieldElem, ctx: &GlobalContext) -> Result<Self> {
        if frob_scalar.is_zero() || frob_scalar.index() >= ctx.field().order() {
            return Err(Error::NotAUnit);
        }
        Ok(FullChar { inertial: InertialChar1::new(exponent, ctx), frob_scalar })
    }

    pub fn trivial() -> Self {
        FullChar { inertial: InertialChar1 { exponent: 0 }, frob_scalar: FieldElem::ONE }
    }

    pub fn inertial(self) -> InertialChar1 {
        self.inertial
    }

    pub fn exponent(self) -> u32 {
        self.inertial.exponent
    }

    pub fn frob_scalar(self) -> FieldElem {
        self.frob_scalar
    }

    pub fn is_unramified(self) -> bool {
        self.inertial.exponent == 0
    }

    pub fn is_trivial(self) -> bool {
        self == Self::trivial()
    }
}

pub fn char_mul(chi: FullChar, psi: FullChar, ctx: &GlobalContext) -> FullChar {
    FullChar {
        inertial: InertialChar1::new(chi.exponent() as i64 + psi.exponent() as i64, ctx),
        frob_scalar: ctx.field().mul(chi.frob_scalar, psi.frob_scalar),
    }
}

pub fn char_inv(chi: FullChar, ctx: &GlobalContext) -> FullChar {
    FullChar {
        inertial: InertialChar1::new(-(chi.exponent() as i64), ctx),
        frob_scalar: ctx.field().inv(chi.frob_scalar).expect("Frobenius scalar is a unit"),
    }
}

pub fn char_pow(chi: FullChar, n: u64, ctx: &GlobalContext) -> FullChar {
    let m = ctx.p() as u64 - 1;
    FullChar {
        inertial: InertialChar1::new(((chi.exponent() as u64 * (n % m)) % m) as i64, ctx),
        frob_scalar: ctx.field().pow(chi.frob_scalar, n),
    }
}

/// The mod `p` cyclotomic character: `omega^e` on inertia.
pub fn cyclotomic(ctx: &GlobalContext) -> FullChar {
    FullChar { inertial: InertialChar1::new(ctx.e() as i64, ctx), frob_scalar: ctx.cyclotomic_scalar() }
}

pub fn niveau2_frobenius_conjugate(chi: InertialChar2, ctx: &GlobalContext) -> InertialChar2 {
    InertialChar2::new(chi.exponent as i64 * ctx.p() as i64, ctx)
}

/// A Serre weight `(a1, a2)` with `0 <= a1 - a2 <= p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SerreWeight {
    pub a1: i64,
    pub a2: i64,
}

impl SerreWeight {
    pub fn new(a1: i64, a2: i64) -> Self {
        SerreWeight { a1, a2 }
    }

    pub fn validate(self, p: u32) -> Result<Self> {
        let d = self.a1 - self.a2;
        if d < 0 || d > p as i64 - 1 {
            return Err(Error::InvalidWeight { a1: self.a1, a2: self.a2, p });
        }
        Ok(self)
    }
}

pub fn weight_equivalent(a: SerreWeight, b: SerreWeight, ctx: &GlobalContext) -> Result<bool> {
    a.validate(ctx.p())?;
    b.validate(ctx.p())?;
    Ok(a.a1 - a.a2 == b.a1 - b.a2 && ctx.modp1(a.a2) == ctx.modp1(b.a2))
}
