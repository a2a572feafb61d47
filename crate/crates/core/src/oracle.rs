//! Exhaustive checks on small parameters: every extension is enumerated,
//! isomorphisms are found by searching all triangular basis changes, and the
//! two dimension counts are compared over whole grids of characters and
//! weights.

use std::collections::HashMap;
use std::rc::Rc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::breuil::extension::min_lambda_degree;
use crate::breuil::module::{breuil_morphism_check, BreuilModule, RankOneBM};
use crate::breuil::normal_form::{to_extremal_normal_form, NormalFormReducer};
use crate::breuil::pairs::{extension_space_basis, extremal_pair, valid_pairs};
use crate::breuil::ExtBM;
use crate::characters::{FullChar, GlobalContext, SerreWeight};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::RModuleMap;
use crate::ring::TruncPoly;
use crate::weights::{is_exceptional, lchi_dimension, lcrys_dimension, reducible_inertial_params, ReducibleShape};

/// Parameters of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    /// `(p, e, f)` triples.
    pub contexts: Vec<(u32, u32, u32)>,
    /// Wall-clock budget for the whole sweep.
    pub budget: Option<Duration>,
    /// Largest number of extensions enumerated for one pair of rank-one modules.
    pub max_extensions: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { contexts: vec![(3, 1, 1), (3, 2, 1), (5, 1, 1), (3, 1, 2)], budget: None, max_extensions: 1 << 14 }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        for &(p, e, f) in &self.contexts {
            if !(p == 3 || p == 5) || !(1..=3).contains(&e) || !(1..=2).contains(&f) {
                return Err(Error::InvalidParameter(format!(
                    "sweep context (p, e, f) = ({}, {}, {}) outside p in {{3, 5}}, 1 <= e <= 3, 1 <= f <= 2",
                    p, e, f
                )));
            }
        }
        Ok(())
    }
}

/// Deadline and work limits shared by one oracle run.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_extensions: u64,
    ticks: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, max_extensions: u64::MAX, ticks: 0 }
    }

    pub fn new(time: Option<Duration>, max_extensions: u64) -> Self {
        Budget { deadline: time.map(|t| Instant::now() + t), max_extensions, ticks: 0 }
    }

    pub fn for_sweep(spec: &SweepSpec) -> Self {
        Self::new(spec.budget, spec.max_extensions)
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(1024) {
            self.check_time()?;
        }
        Ok(())
    }

    fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

/// Polynomials supported on `degrees`, in a fixed order. The first one is 0.
fn all_polys(degrees: &[usize], ctx: &GlobalContext, limit: u64) -> Result<Vec<TruncPoly>> {
    let q = ctx.field().order() as u64;
    let total = q
        .checked_pow(degrees.len() as u32)
        .filter(|&t| t <= limit)
        .ok_or_else(|| Error::BudgetExceeded(format!("{}^{} polynomials exceed the enumeration limit", q, degrees.len())))?;
    let ring = ctx.ring();
    Ok((0..total)
        .map(|mut n| {
            let terms: Vec<(usize, FieldElem)> = degrees
                .iter()
                .map(|&d| {
                    let c = ctx.field().from_index((n % q) as u32).expect("digit below q");
                    n /= q;
                    (d, c)
                })
                .collect();
            ring.from_terms(&terms)
        })
        .collect())
}

fn residue_degrees(from: usize, r: u32, ctx: &GlobalContext) -> Vec<usize> {
    let m = ctx.p() as usize - 1;
    (from..ctx.ring().len()).filter(|d| d % m == r as usize).collect()
}

/// Every extension of `n` by `m`: all admissible `lambda` of degree `< e'p`.
pub fn enumerate_extensions(m: RankOneBM, n: RankOneBM, ctx: &GlobalContext, budget: &mut Budget) -> Result<Vec<ExtBM>> {
    let r = ctx.modp1(n.k as i64 - m.k as i64);
    let degrees = residue_degrees(min_lambda_degree(m.x, n.x, ctx), r, ctx);
    let lambdas = all_polys(&degrees, ctx, budget.max_extensions)?;
    budget.check_time()?;
    Ok(lambdas.into_iter().map(|lambda| ExtBM { sub: m, quot: n, lambda }).collect())
}

/// Which triangular basis changes `v -> s v, w -> t w + h v` are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoKind {
    /// `s = t = 1`: isomorphisms of extensions.
    Extension,
    /// `s, t` any units of `k_E`: isomorphisms of the underlying modules.
    Module,
}

struct Searcher<'a> {
    ctx: &'a GlobalContext,
    h_space: HashMap<u32, Rc<Vec<TruncPoly>>>,
}

impl<'a> Searcher<'a> {
    fn new(ctx: &'a GlobalContext) -> Self {
        Searcher { ctx, h_space: HashMap::new() }
    }

    fn h_candidates(&mut self, r: u32) -> Result<Rc<Vec<TruncPoly>>> {
        if !self.h_space.contains_key(&r) {
            let polys = all_polys(&residue_degrees(0, r, self.ctx), self.ctx, u64::MAX)?;
            self.h_space.insert(r, Rc::new(polys));
        }
        Ok(self.h_space[&r].clone())
    }

    fn search(
        &mut self,
        p1: &ExtBM,
        m1: &BreuilModule,
        p2: &ExtBM,
        m2: &BreuilModule,
        kind: IsoKind,
        budget: &mut Budget,
    ) -> Result<Option<RModuleMap>> {
        let ctx = self.ctx;
        let k = ctx.field();
        let ring = ctx.ring();
        let scalars: Vec<FieldElem> = match kind {
            IsoKind::Extension => vec![k.one()],
            IsoKind::Module => k.units().collect(),
        };
        // h v must carry the descent character of w
        let r = ctx.modp1(p1.l() as i64 - p2.k() as i64);
        let hs = self.h_candidates(r)?;
        for &s in &scalars {
            for &t in &scalars {
                let (s_inv, t_inv) = (k.inv(s).unwrap(), k.inv(t).unwrap());
                for h in hs.iter() {
                    budget.tick()?;
                    let f = RModuleMap::from_columns(2, &[vec![ring.constant(s), ring.zero()], vec![h.clone(), ring.constant(t)]]);
                    if !breuil_morphism_check(&f, m1, m2, ctx) {
                        continue;
                    }
                    let g_h = ring.scale(k.neg(k.mul(s_inv, t_inv)), h);
                    let g = RModuleMap::from_columns(2, &[vec![ring.constant(s_inv), ring.zero()], vec![g_h, ring.constant(t_inv)]]);
                    if breuil_morphism_check(&g, m2, m1, ctx) {
                        return Ok(Some(f));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// An isomorphism `p1 -> p2` among the triangular basis changes of `kind`,
/// or `None` once all of them have been tried.
pub fn isomorphism_search(
    p1: &ExtBM,
    p2: &ExtBM,
    kind: IsoKind,
    ctx: &GlobalContext,
    budget: &mut Budget,
) -> Result<Option<RModuleMap>> {
    Searcher::new(ctx).search(p1, &p1.to_module(ctx), p2, &p2.to_module(ctx), kind, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Fail,
    SkippedExceptional,
    SkippedNoJdelta,
    SkippedNoValidPairs,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessParams {
    pub p: u32,
    pub e: u32,
    pub f: u32,
    pub x: u32,
    pub y: u32,
    pub k: u32,
    pub l: u32,
    pub c: String,
    pub d: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub params: UniquenessParams,
    pub extensions: usize,
    pub normal_form_dim: usize,
    pub expected_classes: u64,
    pub classes_found: usize,
    pub extremal_classes: usize,
    pub counterexamples: Vec<String>,
    pub status: Status,
}

/// Classifies every extension of `n` by `m` by isomorphism search and
/// compares with the normal-form reducer, both at `(x, y)` and after moving
/// to the extremal pair.
pub fn verify_normal_form_uniqueness(
    m: RankOneBM,
    n: RankOneBM,
    ctx: &GlobalContext,
    budget: &mut Budget,
) -> Result<UniquenessReport> {
    let k = ctx.field();
    let params = UniquenessParams {
        p: ctx.p(),
        e: ctx.e(),
        f: ctx.f(),
        x: m.x,
        y: n.x,
        k: m.k,
        l: n.k,
        c: k.format(m.c),
        d: k.format(n.c),
    };
    let mut counterexamples = Vec::new();
    let template = ExtBM::split(m, n, ctx);
    let reducer = match NormalFormReducer::new(&template, ctx) {
        Ok(r) => r,
        Err(err) => {
            return Ok(UniquenessReport {
                params,
                extensions: 0,
                normal_form_dim: 0,
                expected_classes: 0,
                classes_found: 0,
                extremal_classes: 0,
                counterexamples: vec![err.to_string()],
                status: Status::Fail,
            })
        }
    };
    let dim = reducer.nf_degrees().len();
    let expected_classes = (k.order() as u64).pow(dim as u32);

    let extensions = enumerate_extensions(m, n, ctx, budget)?;
    let mut searcher = Searcher::new(ctx);
    let mut targets: HashMap<TruncPoly, (ExtBM, BreuilModule)> = HashMap::new();
    let mut extremal: HashMap<TruncPoly, ExtBM> = HashMap::new();
    let fmt = |lambda: &TruncPoly| format_poly(lambda, ctx);

    for p in &extensions {
        let nf = ExtBM { lambda: reducer.reduce(&p.lambda, ctx), ..p.clone() };
        if reducer.reduce(&nf.lambda, ctx) != nf.lambda {
            counterexamples.push(format!("reduction of {} is not idempotent", fmt(&p.lambda)));
        }
        let (nf, nf_module) = targets
            .entry(nf.lambda.clone())
            .or_insert_with(|| {
                let module = nf.to_module(ctx);
                (nf, module)
            })
            .clone();
        let module = p.to_module(ctx);
        if searcher.search(p, &module, &nf, &nf_module, IsoKind::Extension, budget)?.is_none() {
            counterexamples.push(format!("no isomorphism from lambda = {} to its normal form {}", fmt(&p.lambda), fmt(&nf.lambda)));
        }
        match (to_extremal_normal_form(p, ctx), to_extremal_normal_form(&nf, ctx)) {
            (Ok(a), Ok(b)) if a == b => {
                extremal.entry(b.lambda.clone()).or_insert(b);
            }
            (Ok(a), Ok(b)) => counterexamples.push(format!(
                "extremal normal forms of {} and {} differ: {} vs {}",
                fmt(&p.lambda),
                fmt(&nf.lambda),
                fmt(&a.lambda),
                fmt(&b.lambda)
            )),
            (Err(err), _) | (_, Err(err)) => counterexamples.push(format!("extremal reduction failed: {}", err)),
        }
    }

    // distinct normal forms must not be isomorphic
    let mut forms: Vec<&(ExtBM, BreuilModule)> = targets.values().collect();
    forms.sort_by(|a, b| a.0.lambda.coeffs().cmp(b.0.lambda.coeffs()));
    for (i, (a, ma)) in forms.iter().map(|t| (&t.0, &t.1)).enumerate() {
        for (b, mb) in forms.iter().skip(i + 1).map(|t| (&t.0, &t.1)) {
            if searcher.search(a, ma, b, mb, IsoKind::Extension, budget)?.is_some() {
                counterexamples.push(format!("normal forms {} and {} are isomorphic", fmt(&a.lambda), fmt(&b.lambda)));
            }
        }
    }
    if targets.len() as u64 != expected_classes {
        counterexamples.push(format!("found {} classes, expected {}", targets.len(), expected_classes));
    }
    if extremal.len() != targets.len() {
        counterexamples.push(format!("{} classes but {} extremal normal forms", targets.len(), extremal.len()));
    }
    let status = if counterexamples.is_empty() { Status::Ok } else { Status::Fail };
    Ok(UniquenessReport {
        params,
        extensions: extensions.len(),
        normal_form_dim: dim,
        expected_classes,
        classes_found: targets.len(),
        extremal_classes: extremal.len(),
        counterexamples,
        status,
    })
}

/// `lambda` as `deg:coeff` terms separated by commas, `0` for zero.
pub fn format_poly(lambda: &TruncPoly, ctx: &GlobalContext) -> String {
    let terms: Vec<String> = lambda.terms().map(|(d, c)| format!("{}:{}", d, ctx.field().format(c))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(",")
    }
}

/// The pairs of rank-one modules swept by [`verify_sweep`]: `x + y = e`
/// mod `p - 1`, `k = 0`, every `l`, and `(c, d)` equal or not.
pub fn uniqueness_cases(ctx: &GlobalContext) -> Vec<(RankOneBM, RankOneBM)> {
    let scalar_pairs = scalar_configs(ctx);
    let mut out = Vec::new();
    for x in 0..=ctx.e() {
        for y in 0..=ctx.e() {
            if ctx.modp1((x + y) as i64) != ctx.modp1(ctx.e() as i64) {
                continue;
            }
            for l in 0..ctx.p() - 1 {
                for &(c, d) in &scalar_pairs {
                    out.push((RankOneBM { x, c, k: 0 }, RankOneBM { x: y, c: d, k: l }));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionParams {
    pub p: u32,
    pub e: u32,
    pub f: u32,
    pub alpha: u32,
    pub beta: u32,
    pub a1: i64,
    pub a2: i64,
    pub chi1_frob: String,
    pub chi2_frob: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub params: DimensionParams,
    pub lflat: Option<u32>,
    pub lcrys: Option<u32>,
    /// `X` from the valid pairs.
    pub extremal_x: Option<u32>,
    /// Number of normal-form monomials at `(X, Y)`.
    pub basis_size: Option<u32>,
    /// `max |J| + delta` over the `(J, delta)` decompositions, plus one for equal characters.
    pub lchi_max: Option<u32>,
    pub exceptional: bool,
    pub status: Status,
    pub failures: Vec<String>,
}

/// One instance of the dimension comparison.
pub fn check_dimension_instance(chi1: FullChar, chi2: FullChar, a: SerreWeight, ctx: &GlobalContext) -> Result<DimensionReport> {
    let k = ctx.field();
    let params = DimensionParams {
        p: ctx.p(),
        e: ctx.e(),
        f: ctx.f(),
        alpha: chi1.exponent(),
        beta: chi2.exponent(),
        a1: a.a1,
        a2: a.a2,
        chi1_frob: k.format(chi1.frob_scalar()),
        chi2_frob: k.format(chi2.frob_scalar()),
    };
    let shape = ReducibleShape { chi1, chi2 };
    let equal = chi1 == chi2;
    let mut report = DimensionReport {
        params,
        lflat: None,
        lcrys: None,
        extremal_x: None,
        basis_size: None,
        lchi_max: None,
        exceptional: is_exceptional(shape, a, ctx),
        status: Status::Ok,
        failures: Vec::new(),
    };
    let pairs = valid_pairs(chi1, chi2, a, ctx)?;
    if pairs.is_empty() {
        report.status = Status::SkippedNoValidPairs;
        return Ok(report);
    }
    let (x, y) = match extremal_pair(&pairs, ctx) {
        Ok(xy) => xy,
        Err(err) => {
            report.status = Status::Fail;
            report.failures.push(err.to_string());
            return Ok(report);
        }
    };
    report.extremal_x = Some(x);
    let vp = pairs.iter().find(|vp| vp.x == x && vp.y == y).expect("extremal pair is valid");
    let basis = extension_space_basis(x, y, vp.k, vp.l, equal, ctx).len() as u32;
    report.basis_size = Some(basis);
    report.lflat = Some(basis);
    let expected = x + equal as u32;
    if basis != expected {
        report.failures.push(format!("basis size {} != X{} = {}", basis, if equal { " + 1" } else { "" }, expected));
    }
    let params = reducible_inertial_params(shape, a, ctx)?;
    if params.is_empty() {
        report.status = Status::SkippedNoJdelta;
        return Ok(report);
    }
    let lcrys = lcrys_dimension(shape, a, ctx)?;
    report.lcrys = Some(lcrys.dim);
    if lcrys.exceptional {
        report.status = if report.failures.is_empty() { Status::SkippedExceptional } else { Status::Fail };
        return Ok(report);
    }
    let lchi_max = params.iter().map(|&jd| lchi_dimension(jd, equal, ctx)).max().expect("nonempty");
    report.lchi_max = Some(lchi_max);
    if lchi_max != expected {
        report.failures.push(format!("max |J| + delta{} = {} != {}", if equal { " + 1" } else { "" }, lchi_max, expected));
    }
    if lcrys.dim != basis {
        report.failures.push(format!("lcrys = {} != lflat = {}", lcrys.dim, basis));
    }
    if !report.failures.is_empty() {
        report.status = Status::Fail;
    }
    Ok(report)
}

/// Frobenius scalar configurations swept for `(chi1, chi2)`: equal, and
/// (when `k_E` has more than two elements) distinct.
fn scalar_configs(ctx: &GlobalContext) -> Vec<(FieldElem, FieldElem)> {
    let k = ctx.field();
    let g = k.generator();
    if g == k.one() {
        vec![(k.one(), k.one())]
    } else {
        vec![(k.one(), k.one()), (k.one(), g)]
    }
}

/// All `(chi1, chi2, a)` for one context satisfying the determinant
/// condition, with `0 <= a2 < p - 1`.
pub fn dimension_instances(ctx: &GlobalContext) -> Vec<(FullChar, FullChar, SerreWeight)> {
    let m = ctx.p() as i64 - 1;
    let mut out = Vec::new();
    for alpha in 0..m {
        for beta in 0..m {
            for a2 in 0..m {
                for diff in 0..=m {
                    let a = SerreWeight::new(a2 + diff, a2);
                    if ctx.modp1(alpha + beta) != ctx.modp1(a.a1 + a.a2 + ctx.e() as i64) {
                        continue;
                    }
                    for (s1, s2) in scalar_configs(ctx) {
                        let chi1 = FullChar::new(alpha, s1, ctx).expect("unit");
                        let chi2 = FullChar::new(beta, s2, ctx).expect("unit");
                        out.push((chi1, chi2, a));
                    }
                }
            }
        }
    }
    out
}

pub fn cross_check_dimensions(spec: &SweepSpec) -> Result<Vec<DimensionReport>> {
    spec.validate()?;
    let budget = Budget::for_sweep(spec);
    let mut out = Vec::new();
    for &(p, e, f) in &spec.contexts {
        let ctx = GlobalContext::new(p, e, f)?;
        for (chi1, chi2, a) in dimension_instances(&ctx) {
            out.push(check_dimension_instance(chi1, chi2, a, &ctx)?);
        }
        budget.check_time()?;
    }
    Ok(out)
}

/// Normal-form uniqueness over every case of [`uniqueness_cases`] for each
/// context in the sweep.
pub fn verify_sweep(spec: &SweepSpec) -> Result<Vec<UniquenessReport>> {
    spec.validate()?;
    let mut budget = Budget::for_sweep(spec);
    let mut out = Vec::new();
    for &(p, e, f) in &spec.contexts {
        let ctx = GlobalContext::new(p, e, f)?;
        for (m, n) in uniqueness_cases(&ctx) {
            out.push(verify_normal_form_uniqueness(m, n, &ctx, &mut budget)?);
        }
    }
    Ok(out)
}
