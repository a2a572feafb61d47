//! Reduction of `lambda` to normal form.
//!
//! The change of basis `w -> w + (c/d) phi(q) v` turns `P(x, y, lambda)`
//! into `P(x, y, lambda + B(q))` with
//!
//! `B(q) = (c/d) u^{y(p-1)} phi(q) - u^{x(p-1)} q`,
//!
//! so extension classes are `lambda` modulo the span of the `B(u^j)`. The
//! normal-form monomials span a complement of that span at the extremal
//! pair, and the reducer projects onto it.

use crate::breuil::extension::{min_lambda_degree, shift_valid_pair, ExtBM};
use crate::breuil::pairs::{extension_space_basis, extremal_pair, intrinsic_valid_pairs};
use crate::characters::GlobalContext;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ring::TruncPoly;

/// `B(q) = (c/d) u^{y(p-1)} phi(q) - u^{x(p-1)} q`.
pub fn coboundary(p: &ExtBM, q: &TruncPoly, ctx: &GlobalContext) -> TruncPoly {
    let r = ctx.ring();
    let m = ctx.p() as usize - 1;
    let ratio = ctx.field().div(p.sub.c, p.quot.c).expect("d is a unit");
    let a = r.scale(ratio, &r.shift(&r.phi_twist(q), p.y() as usize * m));
    r.sub(&a, &r.shift(q, p.x() as usize * m))
}

/// Projection of the admissible `lambda` onto the normal-form monomials
/// along the coboundaries, for fixed `(x, y, k, l, c, d)`.
#[derive(Clone, Debug)]
pub struct NormalFormReducer {
    degrees: Vec<usize>,
    nf_degrees: Vec<usize>,
    /// Reduced row echelon form of the coboundaries: pivot position in
    /// `degrees`, and the row with a 1 at the pivot.
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl NormalFormReducer {
    pub fn new(template: &ExtBM, ctx: &GlobalContext) -> Result<Self> {
        let k = ctx.field();
        let ring = ctx.ring();
        let n = ring.len();
        let m = ctx.p() as usize - 1;
        let r = template.residue(ctx) as usize;
        let lo = min_lambda_degree(template.x(), template.y(), ctx);
        let degrees: Vec<usize> = (lo..n).filter(|d| d % m == r).collect();
        let mut position = vec![usize::MAX; n];
        for (i, &d) in degrees.iter().enumerate() {
            position[d] = i;
        }
        let nf_degrees = extension_space_basis(
            template.x(),
            template.y(),
            template.k(),
            template.l(),
            template.chars_equal(ctx),
            ctx,
        );
        let is_nf: Vec<bool> = {
            let mut v = vec![false; degrees.len()];
            for &d in &nf_degrees {
                v[position[d]] = true;
            }
            v
        };

        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for j in (0..n).filter(|j| j % m == r) {
            let b = coboundary(template, &ring.u_pow(j), ctx);
            if b.is_zero() {
                continue;
            }
            let mut row = vec![FieldElem::ZERO; degrees.len()];
            for (d, c) in b.terms() {
                debug_assert!(position[d] != usize::MAX, "coboundary leaves the admissible space");
                row[position[d]] = c;
            }
            rows.push(row);
        }

        // eliminate on the non-normal-form columns first
        let order: Vec<usize> = (0..degrees.len()).filter(|&i| !is_nf[i]).chain((0..degrees.len()).filter(|&i| is_nf[i])).collect();
        let mut pivots: Vec<(usize, Vec<FieldElem>)> = Vec::new();
        for &col in &order {
            let Some(idx) = rows.iter().position(|row| !row[col].is_zero()) else { continue };
            let mut row = rows.swap_remove(idx);
            let inv = k.inv(row[col]).expect("nonzero");
            for x in row.iter_mut() {
                *x = k.mul(*x, inv);
            }
            for other in rows.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
                let f = other[col];
                if !f.is_zero() {
                    for (o, &x) in other.iter_mut().zip(&row) {
                        *o = k.sub(*o, k.mul(f, x));
                    }
                }
            }
            pivots.push((col, row));
        }
        let mut pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
        pivot_cols.sort_unstable();
        let expected: Vec<usize> = (0..degrees.len()).filter(|&i| !is_nf[i]).collect();
        if pivot_cols != expected {
            return Err(Error::NoComplement);
        }
        Ok(NormalFormReducer { degrees, nf_degrees, rows: pivots })
    }

    pub fn nf_degrees(&self) -> &[usize] {
        &self.nf_degrees
    }

    /// Degrees of the admissible space of `lambda`.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Dimension of the span of the coboundaries.
    pub fn coboundary_rank(&self) -> usize {
        self.rows.len()
    }

    /// The normal-form representative of an admissible `lambda`.
    pub fn reduce(&self, lambda: &TruncPoly, ctx: &GlobalContext) -> TruncPoly {
        let k = ctx.field();
        let mut v: Vec<FieldElem> = self.degrees.iter().map(|&d| lambda.coeff(d)).collect();
        for (col, row) in &self.rows {
            let f = v[*col];
            if !f.is_zero() {
                for (o, &x) in v.iter_mut().zip(row) {
                    *o = k.sub(*o, k.mul(f, x));
                }
            }
        }
        let terms: Vec<(usize, FieldElem)> = self.degrees.iter().copied().zip(v).filter(|(_, c)| !c.is_zero()).collect();
        ctx.ring().from_terms(&terms)
    }
}

/// Reduces `lambda` at the pair `(x, y)` of `p` itself.
pub fn reduce_normal_form(p: &ExtBM, ctx: &GlobalContext) -> Result<ExtBM> {
    let reducer = NormalFormReducer::new(p, ctx)?;
    Ok(ExtBM { sub: p.sub, quot: p.quot, lambda: reducer.reduce(&p.lambda, ctx) })
}

/// `(X, Y)` for the descent data of `p`.
pub fn extremal_pair_of(p: &ExtBM, ctx: &GlobalContext) -> Result<(u32, u32)> {
    if ctx.modp1((p.x() + p.y()) as i64) != ctx.modp1(ctx.e() as i64) {
        return Err(Error::InvalidPair { x: p.x(), y: p.y(), reason: "x + y is not congruent to e mod p - 1".into() });
    }
    extremal_pair(&intrinsic_valid_pairs(p.x(), p.y(), p.k(), p.l(), ctx), ctx)
}

/// The unique normal form at `(X, Y)` with the same generic fibre as `p`.
pub fn to_extremal_normal_form(p: &ExtBM, ctx: &GlobalContext) -> Result<ExtBM> {
    let (x, y) = extremal_pair_of(p, ctx)?;
    reduce_normal_form(&shift_valid_pair(p, x, y, ctx)?, ctx)
}

/// `lambda` scaled so that its lowest nonzero coefficient is 1.
pub fn projective_representative(lambda: &TruncPoly, ctx: &GlobalContext) -> TruncPoly {
    match lambda.terms().next() {
        None => lambda.clone(),
        Some((_, lead)) => {
            let inv = ctx.field().inv(lead).expect("nonzero");
            ctx.ring().scale(inv, lambda)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breuil::module::RankOneBM;

    fn ext(ctx: &GlobalContext, x: u32, y: u32, k: u32, l: u32, lambda: TruncPoly) -> ExtBM {
        let one = ctx.field().one();
        ExtBM::new(RankOneBM::new(x, one, k, ctx).unwrap(), RankOneBM::new(y, one, l, ctx).unwrap(), lambda, ctx).unwrap()
    }

    #[test]
    fn degenerate_coboundary_gives_extra_term() {
        // x - y = l - k and c = d: B(u^{x-y}) vanishes
        let ctx = GlobalContext::new(3, 2, 1).unwrap();
        let p = ext(&ctx, 2, 0, 0, 0, ctx.ring().zero());
        assert!(coboundary(&p, &ctx.ring().u_pow(2), &ctx).is_zero());
        let reducer = NormalFormReducer::new(&p, &ctx).unwrap();
        assert_eq!(reducer.nf_degrees(), &[0, 2, 6]);
    }

    #[test]
    fn reduction_p3_e1() {
        let ctx = GlobalContext::new(3, 1, 1).unwrap();
        let r = ctx.ring();
        // k = l = 0 at (1, 0) with distinct characters: the window is {1}
        let k = ctx.field();
        let sub = RankOneBM::new(1, k.one(), 0, &ctx).unwrap();
        let quot = RankOneBM::new(0, k.from_int(2), 0, &ctx).unwrap();
        let p = ExtBM::new(sub, quot, r.add(&r.u_pow(2), &r.u_pow(4)), &ctx).unwrap();
        let nf = to_extremal_normal_form(&p, &ctx).unwrap();
        assert!(nf.lambda.terms().all(|(d, _)| d == 0));
        assert_eq!(to_extremal_normal_form(&nf, &ctx).unwrap(), nf);
    }

    #[test]
    fn split_stays_split() {
        let ctx = GlobalContext::new(3, 2, 1).unwrap();
        let p = ext(&ctx, 0, 0, 0, 1, ctx.ring().zero());
        let nf = to_extremal_normal_form(&p, &ctx).unwrap();
        assert!(nf.lambda.is_zero());
        assert_eq!((nf.x(), nf.y()), (2, 0));
    }

    #[test]
    fn projective_examples() {
        let ctx = GlobalContext::new(5, 1, 1).unwrap();
        let r = ctx.ring();
        let k = ctx.field();
        let lambda = r.from_terms(&[(1, k.from_int(3)), (5, k.from_int(2))]);
        let rep = projective_representative(&lambda, &ctx);
        assert_eq!(rep.coeff(1), k.one());
        assert_eq!(rep.coeff(5), k.from_int(4));
        assert!(projective_representative(&r.zero(), &ctx).is_zero());
    }
}
