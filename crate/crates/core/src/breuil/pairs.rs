//! Valid pairs `(x, y)`, the extremal pair `(X, Y)` and `dim L_flat`.

use crate::breuil::extension::min_lambda_degree;
use crate::characters::{FullChar, GlobalContext, SerreWeight};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValidPair {
    pub x: u32,
    pub y: u32,
    pub k: u32,
    pub l: u32,
}

fn same_multiset(a: [u32; 2], b: [u32; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

/// All `(x, y)` in `[0, e]^2` with `{alpha - x, beta - y} = {a1, a2}` mod `p - 1`.
pub fn valid_pairs(chi1: FullChar, chi2: FullChar, a: SerreWeight, ctx: &GlobalContext) -> Result<Vec<ValidPair>> {
    a.validate(ctx.p())?;
    let (alpha, beta) = (chi1.exponent() as i64, chi2.exponent() as i64);
    let product = ctx.modp1(alpha + beta);
    let expected = ctx.modp1(a.a1 + a.a2 + ctx.e() as i64);
    if product != expected {
        return Err(Error::WeightDeterminantMismatch { product, expected, modulus: ctx.p() - 1 });
    }
    let target = [ctx.modp1(a.a1), ctx.modp1(a.a2)];
    Ok(pairs_with_exponents(alpha, beta, target, ctx))
}

/// Valid pairs for the descent data of an extension with parameters
/// `(x, y, k, l)`: those `(x', y')` with `{k + x - x', l + y - y'} = {k, l}`.
pub fn intrinsic_valid_pairs(x: u32, y: u32, k: u32, l: u32, ctx: &GlobalContext) -> Vec<ValidPair> {
    pairs_with_exponents(k as i64 + x as i64, l as i64 + y as i64, [k, l], ctx)
}

fn pairs_with_exponents(alpha: i64, beta: i64, target: [u32; 2], ctx: &GlobalContext) -> Vec<ValidPair> {
    let mut out = Vec::new();
    for x in 0..=ctx.e() {
        for y in 0..=ctx.e() {
            let k = ctx.modp1(alpha - x as i64);
            let l = ctx.modp1(beta - y as i64);
            if same_multiset([k, l], target) {
                out.push(ValidPair { x, y, k, l });
            }
        }
    }
    out
}

/// `(X, Y)` with `X` the largest `x` and `Y` the smallest `y`; `Y = e - X`.
pub fn extremal_pair(pairs: &[ValidPair], ctx: &GlobalContext) -> Result<(u32, u32)> {
    let x = pairs.iter().map(|vp| vp.x).max().ok_or(Error::NoValidPairs)?;
    let y = pairs.iter().map(|vp| vp.y).min().ok_or(Error::NoValidPairs)?;
    if x + y != ctx.e() {
        return Err(Error::ExtremalInconsistent { x, y, e: ctx.e() });
    }
    Ok((x, y))
}

/// Degrees of the normal-form monomials of `P(x, y, lambda)`: those
/// `d = l - k` mod `p - 1` with `max(0, (x+y-e)(p-1)) <= d < x(p-1)`, and
/// `px - y` when the two characters coincide and `x >= y`.
pub fn extension_space_basis(x: u32, y: u32, k: u32, l: u32, chars_equal: bool, ctx: &GlobalContext) -> Vec<usize> {
    let m = ctx.p() as usize - 1;
    let r = ctx.modp1(l as i64 - k as i64) as usize;
    let lo = min_lambda_degree(x, y, ctx);
    let hi = x as usize * m;
    let mut out: Vec<usize> = (lo..hi).filter(|d| d % m == r).collect();
    if chars_equal && x >= y {
        out.push((ctx.p() * x - y) as usize);
    }
    out
}

/// `dim L_flat`: the number of normal-form monomials at `(X, Y)`.
pub fn lflat_dimension(chi1: FullChar, chi2: FullChar, a: SerreWeight, ctx: &GlobalContext) -> Result<u32> {
    let pairs = valid_pairs(chi1, chi2, a, ctx)?;
    let (x, y) = extremal_pair(&pairs, ctx)?;
    let vp = pairs.iter().find(|vp| vp.x == x && vp.y == y).ok_or(Error::ExtremalInconsistent { x, y, e: ctx.e() })?;
    Ok(extension_space_basis(x, y, vp.k, vp.l, chi1 == chi2, ctx).len() as u32)
}
