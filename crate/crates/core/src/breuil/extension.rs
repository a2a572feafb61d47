//! Rank-two extensions `P(x, y, lambda)` and the maps between their models.

use crate::breuil::module::{BreuilModule, RankOneBM};
use crate::breuil::pairs::valid_pairs;
use crate::characters::{FullChar, GlobalContext, SerreWeight};
use crate::error::{Error, Result};
use crate::linalg::RModuleMap;
use crate::ring::TruncPoly;

/// An extension of `N = quot` by `M = sub` with basis `v` (of `M`) and `w`,
///
/// `Fil^1 P = R u^{x(p-1)} v + R (u^{y(p-1)} w + lambda v)`,
/// `phi_1(u^{x(p-1)} v) = c v`, `phi_1(u^{y(p-1)} w + lambda v) = d w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtBM {
    pub sub: RankOneBM,
    pub quot: RankOneBM,
    pub lambda: TruncPoly,
}

impl ExtBM {
    /// Checks that `lambda` lies in `u^{max(0, (x+y-e)(p-1))} R` and has only
    /// terms of degree `l - k` mod `p - 1`.
    pub fn new(sub: RankOneBM, quot: RankOneBM, lambda: TruncPoly, ctx: &GlobalContext) -> Result<Self> {
        let ext = ExtBM { sub, quot, lambda };
        ext.check_lambda(ctx)?;
        Ok(ext)
    }

    pub fn split(sub: RankOneBM, quot: RankOneBM, ctx: &GlobalContext) -> Self {
        ExtBM { sub, quot, lambda: ctx.ring().zero() }
    }

    pub fn x(&self) -> u32 {
        self.sub.x
    }

    pub fn y(&self) -> u32 {
        self.quot.x
    }

    pub fn k(&self) -> u32 {
        self.sub.k
    }

    pub fn l(&self) -> u32 {
        self.quot.k
    }

    /// `(l - k) mod (p - 1)`, the residue class of degrees allowed in `lambda`.
    pub fn residue(&self, ctx: &GlobalContext) -> u32 {
        ctx.modp1(self.l() as i64 - self.k() as i64)
    }

    /// Least degree allowed in `lambda`.
    pub fn min_degree(&self, ctx: &GlobalContext) -> usize {
        min_lambda_degree(self.x(), self.y(), ctx)
    }

    /// Whether sub and quotient have the same generic fibre.
    pub fn chars_equal(&self, ctx: &GlobalContext) -> bool {
        self.sub.c == self.quot.c && ctx.modp1((self.k() + self.x()) as i64) == ctx.modp1((self.l() + self.y()) as i64)
    }

    fn check_lambda(&self, ctx: &GlobalContext) -> Result<()> {
        let r = self.residue(ctx) as usize;
        let lo = self.min_degree(ctx);
        let m = ctx.p() as usize - 1;
        for (degree, _) in self.lambda.terms() {
            if degree % m != r {
                return Err(Error::InadmissibleLambda {
                    degree,
                    reason: format!("is not congruent to l - k = {} mod {}", r, m),
                });
            }
            if degree < lo {
                return Err(Error::InadmissibleLambda { degree, reason: format!("is below the minimum degree {}", lo) });
            }
        }
        Ok(())
    }

    pub fn to_module(&self, ctx: &GlobalContext) -> BreuilModule {
        let r = ctx.ring();
        let (v, w) = (0, 1);
        let mut g1 = vec![r.zero(), r.zero()];
        g1[v] = r.u_pow(self.sub.fil_degree(ctx));
        let mut g2 = vec![r.zero(), r.zero()];
        g2[v] = self.lambda.clone();
        g2[w] = r.u_pow(self.quot.fil_degree(ctx));
        let phi_g1 = vec![r.constant(self.sub.c), r.zero()];
        let phi_g2 = vec![r.zero(), r.constant(self.quot.c)];
        BreuilModule::new(vec![g1, g2], vec![phi_g1, phi_g2], vec![self.k(), self.l()])
    }
}

pub(crate) fn min_lambda_degree(x: u32, y: u32, ctx: &GlobalContext) -> usize {
    ((x + y).saturating_sub(ctx.e()) * (ctx.p() - 1)) as usize
}

/// `P(x, y, lambda)` with sub-character `chi1` and quotient character `chi2`.
pub fn make_extension(
    x: u32,
    y: u32,
    lambda: TruncPoly,
    chi1: FullChar,
    chi2: FullChar,
    a: SerreWeight,
    ctx: &GlobalContext,
) -> Result<ExtBM> {
    let pairs = valid_pairs(chi1, chi2, a, ctx)?;
    let pair = pairs.iter().find(|vp| vp.x == x && vp.y == y).ok_or_else(|| Error::InvalidPair {
        x,
        y,
        reason: "not a valid pair for these characters and weight".into(),
    })?;
    let k = ctx.field();
    let c = k.inv(chi1.frob_scalar()).ok_or(Error::NotAUnit)?;
    let d = k.inv(chi2.frob_scalar()).ok_or(Error::NotAUnit)?;
    ExtBM::new(RankOneBM::new(x, c, pair.k, ctx)?, RankOneBM::new(y, d, pair.l, ctx)?, lambda, ctx)
}

/// `u^{p(e-x)+y} lambda`, which does not change under shifts between valid pairs.
pub fn big_payload(p: &ExtBM, ctx: &GlobalContext) -> TruncPoly {
    let s = (ctx.p() * (ctx.e() - p.x()) + p.y()) as usize;
    ctx.ring().shift(&p.lambda, s)
}

/// `P' = P(e, 0, u^{p(e-x)+y} lambda)` with descent exponents
/// `k + x - e` on `v'` and `l + y` on `w'`.
pub fn transform_to_big_model(p: &ExtBM, ctx: &GlobalContext) -> ExtBM {
    let sub = RankOneBM { x: ctx.e(), c: p.sub.c, k: ctx.modp1(p.k() as i64 + p.x() as i64 - ctx.e() as i64) };
    let quot = RankOneBM { x: 0, c: p.quot.c, k: ctx.modp1(p.l() as i64 + p.y() as i64) };
    ExtBM { sub, quot, lambda: big_payload(p, ctx) }
}

/// `P'' = P(e, y, u^{p(e-x)} lambda)`, the common target of the maps from
/// `P` and from its big model.
pub fn comparison_hub(p: &ExtBM, ctx: &GlobalContext) -> ExtBM {
    let sub = RankOneBM { x: ctx.e(), c: p.sub.c, k: ctx.modp1(p.k() as i64 + p.x() as i64 - ctx.e() as i64) };
    let s = (ctx.p() * (ctx.e() - p.x())) as usize;
    ExtBM { sub, quot: p.quot, lambda: ctx.ring().shift(&p.lambda, s) }
}

/// The two comparison morphisms into the hub `P''`.
#[derive(Clone, Debug)]
pub struct ComparisonMaps {
    pub big: ExtBM,
    pub hub: ExtBM,
    /// `P -> P''`: `v -> u^{p(e-x)} v''`, `w -> w''`.
    pub from_original: RModuleMap,
    /// `P' -> P''`: `v' -> v''`, `w' -> u^{py} w''`.
    pub from_big: RModuleMap,
}

pub fn comparison_maps(p: &ExtBM, ctx: &GlobalContext) -> ComparisonMaps {
    let r = ctx.ring();
    let pe = ctx.p() as usize;
    let from_original = RModuleMap::from_columns(
        2,
        &[vec![r.u_pow(pe * (ctx.e() - p.x()) as usize), r.zero()], vec![r.zero(), r.one()]],
    );
    let from_big = RModuleMap::from_columns(2, &[vec![r.one(), r.zero()], vec![r.zero(), r.u_pow(pe * p.y() as usize)]]);
    ComparisonMaps { big: transform_to_big_model(p, ctx), hub: comparison_hub(p, ctx), from_original, from_big }
}

/// Moves `P(x, y, lambda)` to `P(x', y', u^{p(x'-x)+(y-y')} lambda)`.
pub fn shift_valid_pair(p: &ExtBM, x2: u32, y2: u32, ctx: &GlobalContext) -> Result<ExtBM> {
    if x2 + y2 > ctx.e() {
        return Err(Error::ShiftExceedsE { sum: x2 + y2, e: ctx.e() });
    }
    let exponent = ctx.p() as i64 * (x2 as i64 - p.x() as i64) + (p.y() as i64 - y2 as i64);
    if exponent < 0 {
        return Err(Error::ShiftNegative { exponent });
    }
    let k2 = ctx.modp1(p.k() as i64 + p.x() as i64 - x2 as i64);
    let l2 = ctx.modp1(p.l() as i64 + p.y() as i64 - y2 as i64);
    let mut old = [p.k(), p.l()];
    let mut new = [k2, l2];
    old.sort_unstable();
    new.sort_unstable();
    if old != new {
        return Err(Error::ShiftNotValid { x: x2, y: y2 });
    }
    let sub = RankOneBM { x: x2, c: p.sub.c, k: k2 };
    let quot = RankOneBM { x: y2, c: p.quot.c, k: l2 };
    ExtBM::new(sub, quot, ctx.ring().shift(&p.lambda, exponent as usize), ctx)
}
