//! Explicit weight sets and crystalline extension-space dimensions.

use crate::characters::{char_inv, char_mul, cyclotomic, niveau2_frobenius_conjugate, FullChar, GlobalContext, InertialChar2, SerreWeight};
use crate::error::{Error, Result};

/// A decomposition `Hom(F_p, F_p-bar) = J ⊔ J^c` (so `J` is all or nothing)
/// together with `0 <= delta <= e - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JDelta {
    pub j_full: bool,
    pub delta: u32,
}

impl JDelta {
    pub fn j_size(self) -> u32 {
        self.j_full as u32
    }
}

/// `rho-bar = [[chi1, *], [0, chi2]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducibleShape {
    pub chi1: FullChar,
    pub chi2: FullChar,
}

impl ReducibleShape {
    pub fn chars_equal(self) -> bool {
        self.chi1 == self.chi2
    }
}

/// All `(J, delta)` for which the inertial exponents of `chi1, chi2` match
/// `omega^{delta + (a1 + 1 or a2)}` and `omega^{e - 1 - delta + (a2 or a1 + 1)}`.
pub fn reducible_inertial_params(shape: ReducibleShape, a: SerreWeight, ctx: &GlobalContext) -> Result<Vec<JDelta>> {
    a.validate(ctx.p())?;
    let (alpha, beta) = (shape.chi1.exponent(), shape.chi2.exponent());
    let e = ctx.e() as i64;
    let mut out = Vec::new();
    for j_full in [true, false] {
        for delta in 0..ctx.e() {
            let d = delta as i64;
            let (top, bottom) = if j_full { (a.a1 + 1, a.a2) } else { (a.a2, a.a1 + 1) };
            if ctx.modp1(d + top) == alpha && ctx.modp1(e - 1 - d + bottom) == beta {
                out.push(JDelta { j_full, delta });
            }
        }
    }
    Ok(out)
}

pub fn lchi_dimension(jd: JDelta, chars_equal: bool, _ctx: &GlobalContext) -> u32 {
    jd.j_size() + jd.delta + chars_equal as u32
}

pub fn h1_dimension(chi: FullChar, ctx: &GlobalContext) -> u32 {
    ctx.e() + chi.is_trivial() as u32 + (chi == cyclotomic(ctx)) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcrysDimension {
    pub dim: u32,
    pub exceptional: bool,
}

/// `a1 - a2 = p - 1` and `chi1 chi2^{-1}` is the cyclotomic character.
pub fn is_exceptional(shape: ReducibleShape, a: SerreWeight, ctx: &GlobalContext) -> bool {
    a.a1 - a.a2 == ctx.p() as i64 - 1 && char_mul(shape.chi1, char_inv(shape.chi2, ctx), ctx) == cyclotomic(ctx)
}

pub fn lcrys_dimension(shape: ReducibleShape, a: SerreWeight, ctx: &GlobalContext) -> Result<LcrysDimension> {
    let params = reducible_inertial_params(shape, a, ctx)?;
    if params.is_empty() {
        return Err(Error::InertiallyIncompatible);
    }
    if is_exceptional(shape, a, ctx) {
        return Ok(LcrysDimension { dim: h1_dimension(cyclotomic(ctx), ctx), exceptional: true });
    }
    let dim = params.iter().map(|&jd| lchi_dimension(jd, shape.chars_equal(), ctx)).max().unwrap_or(0);
    Ok(LcrysDimension { dim, exceptional: false })
}

/// Membership of `a` in the explicit weight set of an irreducible
/// representation whose inertial restriction is `chi ⊕ chi^p`.
pub fn irreducible_in_wexplicit(chi: InertialChar2, a: SerreWeight, ctx: &GlobalContext) -> Result<bool> {
    a.validate(ctx.p())?;
    let p = ctx.p() as i64;
    let e = ctx.e() as i64;
    let conj = niveau2_frobenius_conjugate(chi, ctx);
    Ok((0..e).any(|d| {
        let target = InertialChar2::new(a.a1 + 1 + d + p * (a.a2 + e - 1 - d), ctx);
        target == chi || target == conj
    }))
}
