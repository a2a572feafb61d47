//! Linear algebra over the chain ring `R = k_E[u]/u^N`.
//!
//! Every pivot step divides only by units: in a chain ring the entry of least
//! valuation in a column divides every other entry of that column, so echelon
//! forms and diagonal forms exist without general Smith-normal-form machinery.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::{ChainRing, TruncPoly};

/// An element of `R^n`.
pub type RVector = Vec<TruncPoly>;

pub fn zero_vector(ring: &ChainRing, n: usize) -> RVector {
    vec![ring.zero(); n]
}

pub fn basis_vector(ring: &ChainRing, n: usize, i: usize) -> RVector {
    let mut v = zero_vector(ring, n);
    v[i] = ring.one();
    v
}

pub fn is_zero_vector(v: &[TruncPoly]) -> bool {
    v.iter().all(TruncPoly::is_zero)
}

fn axpy(ring: &ChainRing, acc: &mut [TruncPoly], a: &TruncPoly, x: &[TruncPoly]) {
    for (acc, x) in acc.iter_mut().zip(x) {
        ring.mul_add_into(acc, a, x);
    }
}

fn axmy(ring: &ChainRing, acc: &mut [TruncPoly], a: &TruncPoly, x: &[TruncPoly]) {
    let neg = ring.neg(a);
    axpy(ring, acc, &neg, x);
}

pub fn scale_vector(ring: &ChainRing, a: &TruncPoly, x: &[TruncPoly]) -> RVector {
    x.iter().map(|xi| ring.mul(a, xi)).collect()
}

/// An `R`-linear map `R^cols -> R^rows`, stored as a row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModuleMap {
    rows: usize,
    cols: usize,
    entries: Vec<TruncPoly>,
}

impl RModuleMap {
    /// Builds the map sending the `j`-th basis vector to `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[RVector]) -> Self {
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                assert_eq!(c.len(), rows, "column has the wrong length");
                entries.push(c[i].clone());
            }
        }
        RModuleMap { rows, cols, entries }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Self {
        let cols: Vec<RVector> = (0..n).map(|j| basis_vector(ring, n, j)).collect();
        Self::from_columns(n, &cols)
    }

    pub fn zero(ring: &ChainRing, rows: usize, cols: usize) -> Self {
        RModuleMap { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    /// Target rank.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Source rank.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> RVector {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn apply(&self, ring: &ChainRing, v: &[TruncPoly]) -> RVector {
        assert_eq!(v.len(), self.cols);
        let mut out = zero_vector(ring, self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                ring.mul_add_into(o, self.entry(i, j), vj);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &ChainRing, other: &RModuleMap) -> RModuleMap {
        assert_eq!(self.cols, other.rows);
        let cols: Vec<RVector> = (0..other.cols).map(|j| self.apply(ring, &other.column(j))).collect();
        Self::from_columns(self.rows, &cols)
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    col: usize,
    vector: RVector,
    /// Coefficients expressing `vector` in the original generators.
    combo: Vec<TruncPoly>,
    pivot_unit_inv: TruncPoly,
    pivot_val: usize,
}

/// A submodule of `R^n` given by generators.
#[derive(Clone, Debug)]
pub struct RSubmodule {
    rank: usize,
    generators: Vec<RVector>,
    echelon: OnceLock<Vec<EchelonRow>>,
}

impl RSubmodule {
    pub fn new(rank: usize, generators: Vec<RVector>) -> Self {
        assert!(generators.iter().all(|g| g.len() == rank), "generator has the wrong length");
        RSubmodule { rank, generators, echelon: OnceLock::new() }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    /// The whole of `R^n`.
    pub fn full(ring: &ChainRing, rank: usize) -> Self {
        Self::new(rank, (0..rank).map(|i| basis_vector(ring, rank, i)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[RVector] {
        &self.generators
    }

    fn echelon(&self, ring: &ChainRing) -> &[EchelonRow] {
        self.echelon.get_or_init(|| echelonize(ring, self.rank, &self.generators))
    }

    /// A generating set in echelon form: pivot columns strictly increase and
    /// each row vanishes left of its pivot.
    pub fn echelon_form(&self, ring: &ChainRing) -> Vec<(usize, RVector)> {
        self.echelon(ring).iter().map(|r| (r.col, r.vector.clone())).collect()
    }

    /// Coefficients `r_i` with `v = sum r_i g_i` over the generators, if `v`
    /// lies in the submodule.
    pub fn express(&self, ring: &ChainRing, v: &[TruncPoly]) -> Option<Vec<TruncPoly>> {
        assert_eq!(v.len(), self.rank);
        let mut rest = v.to_vec();
        let mut coeffs = vec![ring.zero(); self.generators.len()];
        for row in self.echelon(ring) {
            let entry = &rest[row.col];
            if entry.is_zero() {
                continue;
            }
            let val = entry.valuation();
            if val < row.pivot_val {
                return None;
            }
            let factor = ring.mul(&ring.shift(&ring.unit_part(entry), val - row.pivot_val), &row.pivot_unit_inv);
            axmy(ring, &mut rest, &factor, &row.vector);
            axpy(ring, &mut coeffs, &factor, &row.combo);
        }
        is_zero_vector(&rest).then_some(coeffs)
    }

    pub fn contains(&self, ring: &ChainRing, v: &[TruncPoly]) -> bool {
        self.express(ring, v).is_some()
    }

    pub fn is_contained_in(&self, ring: &ChainRing, other: &RSubmodule) -> bool {
        self.generators.iter().all(|g| other.contains(ring, g))
    }

    pub fn same_as(&self, ring: &ChainRing, other: &RSubmodule) -> bool {
        self.is_contained_in(ring, other) && other.is_contained_in(ring, self)
    }
}

fn echelonize(ring: &ChainRing, rank: usize, generators: &[RVector]) -> Vec<EchelonRow> {
    let n = ring.len();
    let m = generators.len();
    let mut active: Vec<(RVector, Vec<TruncPoly>)> = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !is_zero_vector(g))
        .map(|(i, g)| (g.clone(), basis_vector(ring, m, i)))
        .collect();
    let mut rows = Vec::new();
    for col in 0..rank {
        let best = active
            .iter()
            .enumerate()
            .filter(|(_, (v, _))| !v[col].is_zero())
            .min_by_key(|(_, (v, _))| v[col].valuation())
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let (pivot, pivot_combo) = active.swap_remove(best);
        let pivot_val = pivot[col].valuation();
        let pivot_unit_inv = ring
            .unit_inverse(&ring.unit_part(&pivot[col]))
            .expect("unit part of a nonzero element is a unit");
        for (v, combo) in active.iter_mut() {
            if v[col].is_zero() {
                continue;
            }
            let val = v[col].valuation();
            let factor = ring.mul(&ring.shift(&ring.unit_part(&v[col]), val - pivot_val), &pivot_unit_inv);
            axmy(ring, v, &factor, &pivot);
            axmy(ring, combo, &factor, &pivot_combo);
        }
        // u^(N - val) kills the pivot entry but not necessarily the rest of the row
        if pivot_val > 0 {
            let ann = ring.u_pow(n - pivot_val);
            let v = scale_vector(ring, &ann, &pivot);
            if !is_zero_vector(&v) {
                active.push((v, scale_vector(ring, &ann, &pivot_combo)));
            }
        }
        active.retain(|(v, _)| !is_zero_vector(v));
        rows.push(EchelonRow { col, vector: pivot, combo: pivot_combo, pivot_unit_inv, pivot_val });
    }
    debug_assert!(active.is_empty());
    rows
}

/// Generators of `{v : map(v) = 0}`.
pub fn kernel(ring: &ChainRing, map: &RModuleMap) -> RSubmodule {
    let n = ring.len();
    let (rows, cols) = (map.rows, map.cols);
    let mut a: Vec<RVector> = (0..rows).map(|i| (0..cols).map(|j| map.entry(i, j).clone()).collect()).collect();
    // columns of `v` track the column operations
    let mut v: Vec<RVector> = (0..cols).map(|j| basis_vector(ring, cols, j)).collect();
    let mut vals = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(_, _, b)| x.valuation() < b) {
                    best = Some((i, j, x.valuation()));
                }
            }
        }
        let Some((bi, bj, val)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        v.swap(t, bj);

        let inv = ring.unit_inverse(&ring.unit_part(&a[t][t])).expect("unit part is a unit");
        let pivot_row = a[t].clone();
        for row in a.iter_mut().skip(t + 1) {
            if row[t].is_zero() {
                continue;
            }
            let factor = ring.mul(&ring.shift(&ring.unit_part(&row[t]), row[t].valuation() - val), &inv);
            axmy(ring, row, &factor, &pivot_row);
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let factor = ring.mul(&ring.shift(&ring.unit_part(&a[t][j]), a[t][j].valuation() - val), &inv);
            let pivot_col = v[t].clone();
            axmy(ring, &mut v[j], &factor, &pivot_col);
            let entry = a[t][t].clone();
            ring.mul_sub_into(&mut a[t][j], &factor, &entry);
        }
        vals.push(val);
    }

    let mut gens = Vec::new();
    for (s, &val) in vals.iter().enumerate() {
        if val > 0 {
            gens.push(scale_vector(ring, &ring.u_pow(n - val), &v[s]));
        }
    }
    gens.extend(v.into_iter().skip(vals.len()));
    gens.retain(|g| !is_zero_vector(g));
    RSubmodule::new(cols, gens)
}

/// Whether `s` contains an element generating a free rank-one submodule,
/// i.e. a vector with a coordinate of valuation zero. The coordinate ideals
/// of `s` are generated by the coordinates of its generators, so it suffices
/// to inspect those.
pub fn contains_free_element(s: &RSubmodule) -> bool {
    s.generators().iter().any(|g| g.iter().any(TruncPoly::is_unit))
}

/// Evaluates a `phi`-semilinear map given on generators of a submodule:
/// writes `element = sum r_i g_i` and returns `sum phi(r_i) images_i`, where
/// `phi` is the `k_E`-linear map `u^i -> u^{pi}`.
pub fn semilinear_phi1_apply(
    ring: &ChainRing,
    fil: &RSubmodule,
    images: &[RVector],
    element: &[TruncPoly],
) -> Result<RVector> {
    let coeffs = fil.express(ring, element).ok_or(Error::NotInFil)?;
    let target_rank = images.first().map_or(fil.rank(), Vec::len);
    let mut out = zero_vector(ring, target_rank);
    for (r, image) in coeffs.iter().zip(images) {
        axpy(ring, &mut out, &ring.phi_twist(r), image);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use std::sync::Arc;

    fn ring(p: u32, len: usize) -> ChainRing {
        ChainRing::new(Arc::new(GaloisField::new(p, 1).unwrap()), len)
    }

    #[test]
    fn kernel_of_multiplication_is_annihilator() {
        let r = ring(3, 6);
        for m in 0..=6 {
            let map = RModuleMap::from_columns(1, &[vec![r.u_pow(m)]]);
            let ker = kernel(&r, &map);
            let expected = RSubmodule::new(1, vec![vec![r.u_pow(6 - m)]]);
            assert!(ker.same_as(&r, &expected), "m = {}", m);
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = ring(5, 8);
        for n in 1..4 {
            let ker = kernel(&r, &RModuleMap::identity(&r, n));
            assert!(ker.generators().is_empty());
            assert!(!contains_free_element(&ker));
        }
    }

    #[test]
    fn kernel_matches_brute_force_example() {
        // (a, b) -> u^3 a + u^3 b over F_3[u]/u^6
        let r = ring(3, 6);
        let map = RModuleMap::from_columns(1, &[vec![r.u_pow(3)], vec![r.u_pow(3)]]);
        let ker = kernel(&r, &map);
        let minus_one = r.constant(r.field().from_int(-1));
        let expected = RSubmodule::new(2, vec![vec![r.one(), minus_one], vec![r.u_pow(3), r.zero()]]);
        assert!(ker.same_as(&r, &expected));
    }

    #[test]
    fn free_element_detection() {
        let r = ring(3, 6);
        let u = r.u_pow(1);
        assert!(!contains_free_element(&RSubmodule::new(2, vec![vec![u.clone(), r.zero()], vec![r.zero(), u]])));
        assert!(contains_free_element(&RSubmodule::full(&r, 2)));
        assert!(contains_free_element(&RSubmodule::new(2, vec![vec![r.u_pow(2), r.one()]])));
    }

    #[test]
    fn saturation_rows_are_kept() {
        // (u, 1) generates a module containing (0, u^5)
        let r = ring(3, 6);
        let s = RSubmodule::new(2, vec![vec![r.u_pow(1), r.one()]]);
        assert!(s.contains(&r, &[r.zero(), r.u_pow(5)]));
        assert!(!s.contains(&r, &[r.zero(), r.u_pow(4)]));
    }

    #[test]
    fn semilinear_examples() {
        let r = ring(3, 12); // p = 3, e = 2, e' = 4
        let fil = RSubmodule::new(1, vec![vec![r.u_pow(4)]]);
        let images = vec![vec![r.one()]];
        assert_eq!(semilinear_phi1_apply(&r, &fil, &images, &[r.u_pow(4)]).unwrap(), vec![r.one()]);
        assert_eq!(semilinear_phi1_apply(&r, &fil, &images, &[r.u_pow(5)]).unwrap(), vec![r.u_pow(3)]);
        assert_eq!(semilinear_phi1_apply(&r, &fil, &images, &[r.zero()]).unwrap(), vec![r.zero()]);
        assert_eq!(semilinear_phi1_apply(&r, &fil, &images, &[r.u_pow(3)]), Err(Error::NotInFil));
    }
}
