//! Breuil modules with descent data, presented by generators of `Fil^1`.

use crate::characters::{FullChar, GlobalContext};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{basis_vector, contains_free_element, is_zero_vector, kernel, zero_vector, RModuleMap, RSubmodule, RVector};
use crate::ring::{ChainRing, TruncPoly};

/// A free module `M = R^n` over `R = k_E[u]/u^{e'p}` with
///
/// * `Fil^1 M` generated by `fil_generators`,
/// * `phi_1(fil_generators[i]) = phi1_images[i]`,
/// * descent data `g(a u^i e_j) = zeta^{i + kappa_j} a u^i e_j` for the
///   chosen generator `g` of `Gal(K_1/K)`.
#[derive(Clone, Debug)]
pub struct BreuilModule {
    fil: RSubmodule,
    phi1_images: Vec<RVector>,
    kappa: Vec<u32>,
}

impl BreuilModule {
    /// Assembles a module without checking the axioms; see [`Self::validate`].
    pub fn new(fil_generators: Vec<RVector>, phi1_images: Vec<RVector>, kappa: Vec<u32>) -> Self {
        let rank = kappa.len();
        assert_eq!(fil_generators.len(), phi1_images.len(), "one image per generator");
        assert!(phi1_images.iter().all(|v| v.len() == rank));
        BreuilModule { fil: RSubmodule::new(rank, fil_generators), phi1_images, kappa }
    }

    pub fn rank(&self) -> usize {
        self.kappa.len()
    }

    pub fn fil(&self) -> &RSubmodule {
        &self.fil
    }

    pub fn fil_generators(&self) -> &[RVector] {
        self.fil.generators()
    }

    pub fn phi1_images(&self) -> &[RVector] {
        &self.phi1_images
    }

    pub fn kappa(&self) -> &[u32] {
        &self.kappa
    }

    /// `phi_1` on an element of `Fil^1`.
    pub fn phi1(&self, ctx: &GlobalContext, m: &[TruncPoly]) -> Result<RVector> {
        crate::linalg::semilinear_phi1_apply(ctx.ring(), &self.fil, &self.phi1_images, m)
    }

    /// The action of the chosen generator of `Gal(K_1/K)`.
    pub fn descent_apply(&self, ctx: &GlobalContext, m: &[TruncPoly]) -> RVector {
        self.descent_apply_with(ctx, &zeta_powers(ctx), m)
    }

    fn descent_apply_with(&self, ctx: &GlobalContext, table: &[FieldElem], m: &[TruncPoly]) -> RVector {
        let ring = ctx.ring();
        let order = table.len();
        m.iter()
            .zip(&self.kappa)
            .map(|(a, &kappa)| {
                let terms: Vec<(usize, FieldElem)> = a
                    .terms()
                    .map(|(i, c)| (i, ctx.field().mul(table[(i + kappa as usize) % order], c)))
                    .collect();
                ring.from_terms(&terms)
            })
            .collect()
    }

    /// Checks the axioms: `u^{e'} M ⊆ Fil^1 M`, `phi_1(Fil^1 M)` generates
    /// `M`, `phi_1` is well defined on the given presentation, and the
    /// descent data preserves `Fil^1` and commutes with `phi_1`.
    pub fn validate(&self, ctx: &GlobalContext) -> Result<()> {
        let ring = ctx.ring();
        let n = self.rank();
        if self.kappa.iter().any(|&k| k >= ctx.p() - 1) {
            return Err(Error::InvalidModule("descent exponent out of range".into()));
        }
        for j in 0..n {
            let mut v = zero_vector(ring, n);
            v[j] = ring.u_pow(ctx.e_prime());
            if !self.fil.contains(ring, &v) {
                return Err(Error::InvalidModule(format!("Fil^1 does not contain u^{} e_{}", ctx.e_prime(), j)));
            }
        }
        let image = RSubmodule::new(n, self.phi1_images.clone());
        if !(0..n).all(|j| image.contains(ring, &basis_vector(ring, n, j))) {
            return Err(Error::InvalidModule("image of phi_1 does not generate".into()));
        }
        let presentation = RModuleMap::from_columns(n, self.fil.generators());
        for relation in kernel(ring, &presentation).generators() {
            let mut total = zero_vector(ring, n);
            for (r, image) in relation.iter().zip(&self.phi1_images) {
                let r = ring.phi_twist(r);
                for (t, x) in total.iter_mut().zip(image) {
                    ring.mul_add_into(t, &r, x);
                }
            }
            if !is_zero_vector(&total) {
                return Err(Error::InvalidModule("phi_1 is not well defined".into()));
            }
        }
        for (g, image) in self.fil.generators().iter().zip(&self.phi1_images) {
            let moved = self.descent_apply(ctx, g);
            let lhs = self.phi1(ctx, &moved).map_err(|_| Error::InvalidModule("descent data does not preserve Fil^1".into()))?;
            if lhs != self.descent_apply(ctx, image) {
                return Err(Error::InvalidModule("descent data does not commute with phi_1".into()));
            }
        }
        Ok(())
    }
}

fn zeta_powers(ctx: &GlobalContext) -> Vec<FieldElem> {
    let k = ctx.field();
    let zeta = ctx.zeta();
    let mut out = Vec::with_capacity(ctx.p() as usize - 1);
    let mut z = k.one();
    for _ in 0..ctx.p() - 1 {
        out.push(z);
        z = k.mul(z, zeta);
    }
    out
}

/// Whether `f` (columns indexed by the basis of `p1`, rows by that of `p2`)
/// is a morphism of Breuil modules with descent data.
pub fn breuil_morphism_check(f: &RModuleMap, p1: &BreuilModule, p2: &BreuilModule, ctx: &GlobalContext) -> bool {
    let ring = ctx.ring();
    if f.cols() != p1.rank() || f.rows() != p2.rank() {
        return false;
    }
    for (g, image) in p1.fil_generators().iter().zip(p1.phi1_images()) {
        let fg = f.apply(ring, g);
        let Some(coeffs) = p2.fil.express(ring, &fg) else {
            return false;
        };
        if phi_combination(ring, &coeffs, p2.phi1_images(), p2.rank()) != f.apply(ring, image) {
            return false;
        }
    }
    let table = zeta_powers(ctx);
    (0..p1.rank()).all(|j| {
        let col = f.column(j);
        let moved = p2.descent_apply_with(ctx, &table, &col);
        let zeta = table[p1.kappa[j] as usize];
        moved == col.iter().map(|a| ring.scale(zeta, a)).collect::<Vec<_>>()
    })
}

fn phi_combination(ring: &ChainRing, coeffs: &[TruncPoly], images: &[RVector], rank: usize) -> RVector {
    let mut out = zero_vector(ring, rank);
    for (r, image) in coeffs.iter().zip(images) {
        if r.is_zero() {
            continue;
        }
        let r = ring.phi_twist(r);
        for (o, x) in out.iter_mut().zip(image) {
            ring.mul_add_into(o, &r, x);
        }
    }
    out
}

/// A morphism whose kernel contains no free rank-one submodule; such a map
/// induces an isomorphism on generic fibres.
pub fn same_generic_fibre_witness(f: &RModuleMap, p1: &BreuilModule, p2: &BreuilModule, ctx: &GlobalContext) -> bool {
    breuil_morphism_check(f, p1, p2, ctx) && !contains_free_element(&kernel(ctx.ring(), f))
}

/// The rank-one module `M(x)`: `Fil^1 = u^{x(p-1)} M`, `phi_1(u^{x(p-1)} e) = c e`,
/// `g(e) = omega(g)^k e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankOneBM {
    pub x: u32,
    pub c: FieldElem,
    pub k: u32,
}

impl RankOneBM {
    pub fn new(x: u32, c: FieldElem, k: u32, ctx: &GlobalContext) -> Result<Self> {
        if x > ctx.e() {
            return Err(Error::InvalidParameter(format!("x = {} exceeds e = {}", x, ctx.e())));
        }
        if k >= ctx.p() - 1 {
            return Err(Error::InvalidParameter(format!("k = {} is not reduced mod p - 1", k)));
        }
        if c.is_zero() || c.index() >= ctx.field().order() {
            return Err(Error::NotAUnit);
        }
        Ok(RankOneBM { x, c, k })
    }

    pub fn fil_degree(self, ctx: &GlobalContext) -> usize {
        (self.x * (ctx.p() - 1)) as usize
    }

    pub fn to_module(self, ctx: &GlobalContext) -> BreuilModule {
        let ring = ctx.ring();
        BreuilModule::new(
            vec![vec![ring.u_pow(self.fil_degree(ctx))]],
            vec![vec![ring.constant(self.c)]],
            vec![self.k],
        )
    }
}

/// `omega^{k + x} ur_{c^{-1}}`.
pub fn rank_one_generic_fibre(m: RankOneBM, ctx: &GlobalContext) -> FullChar {
    let c_inv = ctx.field().inv(m.c).expect("c is a unit");
    FullChar::new(m.k as i64 + m.x as i64, c_inv, ctx).expect("inverse of a unit is a unit")
}
