//! Finite fields GF(p^f) in a fixed polynomial basis.
//!
//! Elements are stored as the base-`p` integer of their coefficient vector
//! with respect to `1, z, z^2, ..., z^(f-1)`, where `z` is a root of a fixed
//! monic primitive polynomial. For the small `(p, f)` used in practice the
//! polynomial is the Conway polynomial, so serialized elements agree with
//! other computer algebra systems.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order we are willing to tabulate.
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this size get full addition and multiplication tables.
const TABLE_ORDER: u32 = 256;

/// Conway polynomials, lowest coefficient first, without the leading 1.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 2, 1, 0, 2, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
    (11, 2, &[2, 7]),
    (11, 3, &[9, 2, 0]),
    (13, 2, &[2, 12]),
    (13, 3, &[11, 2, 0]),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The base-`p` index of the coefficient vector.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
}

/// The field GF(p^f).
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "GF({}^{})", self.p, self.f)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidParameter("field degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_ORDER as u64);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, f }),
        };

        let fixed = CONWAY
            .iter()
            .find(|(cp, cf, _)| *cp == p && *cf == f)
            .map(|(_, _, c)| c.to_vec());
        let candidates: Box<dyn Iterator<Item = Vec<u32>>> = match fixed {
            Some(c) => Box::new(std::iter::once(c)),
            None if f == 1 => Box::new((1..p).map(move |g| vec![(p - g) % p])),
            None => Box::new((0..q).map(move |mut n| {
                // lexicographic in (c_{f-1}, ..., c_0)
                let mut c = vec![0; f as usize];
                for slot in c.iter_mut() {
                    *slot = n % p;
                    n /= p;
                }
                c
            })),
        };

        for low in candidates {
            if let Some((exp, log)) = power_tables(p, f, q, &low) {
                let mut field = GaloisField { p, f, q, modulus: low, exp, log, tables: None };
                if q <= TABLE_ORDER {
                    field.tables = Some(field.build_tables());
                }
                return Ok(field);
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_slow(a as u32, b as u32) as u8;
                mul[a * q + b] = self.mul_slow(a as u32, b as u32) as u8;
            }
        }
        Tables { add, mul }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0, ..., c_{f-1}` of the defining polynomial
    /// `X^f + c_{f-1} X^{f-1} + ... + c_0`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_index(&self, index: u32) -> Result<FieldElem> {
        if index < self.q {
            Ok(FieldElem(index))
        } else {
            Err(Error::Parse(format!("field index {} out of range for GF({})", index, self.q)))
        }
    }

    /// The fixed primitive element `z`.
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.exp[1 % self.exp.len()])
    }

    /// A generator of the multiplicative group of the prime field.
    pub fn prime_field_primitive_root(&self) -> FieldElem {
        // z^((q-1)/(p-1)) generates F_p^x
        self.pow(self.generator(), ((self.q - 1) / (self.p - 1)) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    pub fn in_prime_field(&self, a: FieldElem) -> bool {
        a.0 < self.p
    }

    fn add_slow(&self, mut a: u32, mut b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.add[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElem(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.mul[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElem(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let (mut a, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(FieldElem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|b| self.mul(a, b))
    }

    pub fn pow(&self, a: FieldElem, n: u64) -> FieldElem {
        if n == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let l = self.log[a.0 as usize] as u64 * (n % (self.q as u64 - 1));
        FieldElem(self.exp[(l % (self.q as u64 - 1)) as usize])
    }

    /// The absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.p as u64)
    }

    /// Discrete logarithm base `z`, for nonzero `a`.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    fn digits(&self, a: FieldElem) -> Vec<u32> {
        let mut n = a.0;
        (0..self.f)
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    /// Renders `a` as an integer (prime field) or a polynomial in `z`
    /// with ascending powers, e.g. `2+z`.
    pub fn format(&self, a: FieldElem) -> String {
        if self.f == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .into_iter()
            .enumerate()
            .filter(|(_, d)| *d != 0)
            .map(|(i, d)| match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "z".to_string(),
                (1, d) => format!("{}z", d),
                (i, 1) => format!("z^{}", i),
                (i, d) => format!("{}z^{}", d, i),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`GaloisField::format`]. Terms may appear in any order
    /// and are summed; integer coefficients are reduced mod `p`.
    pub fn parse(&self, text: &str) -> Result<FieldElem> {
        let bad = || Error::Parse(format!("invalid field element {:?}", text));
        let text = text.trim();
        if text.is_empty() {
            return Err(bad());
        }
        let mut acc = FieldElem::ZERO;
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coeff, power) = match term.find('z') {
                None => (term, 0u32),
                Some(_) if self.f == 1 => return Err(bad()),
                Some(at) => {
                    let coeff = term[..at].trim_end_matches('*').trim();
                    let rest = term[at + 1..].trim();
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?
                    };
                    (if coeff.is_empty() { "1" } else { coeff }, power)
                }
            };
            let coeff: i64 = coeff.parse().map_err(|_| bad())?;
            let value = self.mul(self.from_int(coeff), self.pow(FieldElem(self.p), power as u64));
            acc = self.add(acc, value);
        }
        Ok(acc)
    }
}

/// `exp`/`log` tables for the primitive element `z`, or `None` if the
/// polynomial with low coefficients `low` is not primitive.
fn power_tables(p: u32, f: u32, q: u32, low: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let f = f as usize;
    let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![0u32; f];
    cur[0] = 1;
    for k in 0..(q - 1) {
        let code = encode(&cur);
        if k > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        log[code as usize] = k;
        // multiply by z modulo X^f + low
        let top = cur[f - 1];
        for i in (1..f).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for (i, c) in cur.iter_mut().enumerate() {
            *c = (*c + (p - low[i] % p) * top) % p;
        }
    }
    (encode(&cur) == 1).then_some((exp, log))
}
