//! JSON-facing representations. Field elements are strings in the format of
//! [`GaloisField::format`](crate::field::GaloisField::format).

use serde::{Deserialize, Serialize};

use crate::breuil::{ExtBM, RankOneBM};
use crate::characters::{FullChar, GlobalContext};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ring::TruncPoly;
use crate::weights::JDelta;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharWire {
    pub exp: i64,
    pub frob: String,
}

impl CharWire {
    pub fn from_char(chi: FullChar, ctx: &GlobalContext) -> Self {
        CharWire { exp: chi.exponent() as i64, frob: ctx.field().format(chi.frob_scalar()) }
    }

    pub fn to_char(&self, ctx: &GlobalContext) -> Result<FullChar> {
        FullChar::new(self.exp, ctx.field().parse(&self.frob)?, ctx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JSet {
    Full,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JDeltaWire {
    #[serde(rename = "J")]
    pub j: JSet,
    pub delta: u32,
}

impl From<JDelta> for JDeltaWire {
    fn from(jd: JDelta) -> Self {
        JDeltaWire { j: if jd.j_full { JSet::Full } else { JSet::Empty }, delta: jd.delta }
    }
}

impl From<JDeltaWire> for JDelta {
    fn from(w: JDeltaWire) -> Self {
        JDelta { j_full: w.j == JSet::Full, delta: w.delta }
    }
}

/// `[[degree, "coeff"], ...]` in increasing degree, zero terms omitted.
pub type PolyWire = Vec<(usize, String)>;

pub fn poly_to_wire(f: &TruncPoly, ctx: &GlobalContext) -> PolyWire {
    f.terms().map(|(d, c)| (d, ctx.field().format(c))).collect()
}

pub fn poly_from_wire(terms: &[(usize, String)], ctx: &GlobalContext) -> Result<TruncPoly> {
    let ring = ctx.ring();
    let mut parsed: Vec<(usize, FieldElem)> = Vec::with_capacity(terms.len());
    for (d, c) in terms {
        if *d >= ring.len() {
            return Err(Error::Parse(format!("degree {} is not below e'p = {}", d, ring.len())));
        }
        parsed.push((*d, ctx.field().parse(c)?));
    }
    Ok(ring.from_terms(&parsed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtWire {
    pub x: u32,
    pub y: u32,
    pub lambda: PolyWire,
    pub c: String,
    pub d: String,
    pub k: u32,
    pub l: u32,
}

impl ExtWire {
    pub fn from_ext(p: &ExtBM, ctx: &GlobalContext) -> Self {
        let k = ctx.field();
        ExtWire {
            x: p.x(),
            y: p.y(),
            lambda: poly_to_wire(&p.lambda, ctx),
            c: k.format(p.sub.c),
            d: k.format(p.quot.c),
            k: p.k(),
            l: p.l(),
        }
    }

    pub fn to_ext(&self, ctx: &GlobalContext) -> Result<ExtBM> {
        let k = ctx.field();
        let sub = RankOneBM::new(self.x, k.parse(&self.c)?, self.k, ctx)?;
        let quot = RankOneBM::new(self.y, k.parse(&self.d)?, self.l, ctx)?;
        ExtBM::new(sub, quot, poly_from_wire(&self.lambda, ctx)?, ctx)
    }
}
