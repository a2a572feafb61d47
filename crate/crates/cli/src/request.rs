//! Requests: built from flags or read from a JSON file.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use flatcrys::wire::{CharWire, PolyWire};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Wexplicit,
    NormalForm,
    Verify,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Option<Command>,
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub f: Option<u32>,
    pub cyclotomic_scalar: Option<String>,
    pub a1: Option<i64>,
    pub a2: Option<i64>,
    pub chi1: Option<CharWire>,
    pub chi2: Option<CharWire>,
    pub niveau2_exp: Option<i64>,
    pub x: Option<u32>,
    pub y: Option<u32>,
    pub lambda: Option<PolyWire>,
    pub contexts: Option<Vec<(u32, u32, u32)>>,
    pub budget_secs: Option<f64>,
    pub max_extensions: Option<u64>,
    pub skip_normal_forms: Option<bool>,
}

/// Marks errors in the request itself, as opposed to failed computations.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

pub fn require<T: Clone>(value: &Option<T>, field: &str) -> Result<T> {
    value.clone().ok_or_else(|| usage(format!("{}: missing", field)))
}

impl Request {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| usage(format!("request: {}", e)))
    }

    /// Fills fields missing here from `other`.
    pub fn merge(self, other: Request) -> Request {
        Request {
            command: self.command.or(other.command),
            p: self.p.or(other.p),
            e: self.e.or(other.e),
            f: self.f.or(other.f),
            cyclotomic_scalar: self.cyclotomic_scalar.or(other.cyclotomic_scalar),
            a1: self.a1.or(other.a1),
            a2: self.a2.or(other.a2),
            chi1: self.chi1.or(other.chi1),
            chi2: self.chi2.or(other.chi2),
            niveau2_exp: self.niveau2_exp.or(other.niveau2_exp),
            x: self.x.or(other.x),
            y: self.y.or(other.y),
            lambda: self.lambda.or(other.lambda),
            contexts: self.contexts.or(other.contexts),
            budget_secs: self.budget_secs.or(other.budget_secs),
            max_extensions: self.max_extensions.or(other.max_extensions),
            skip_normal_forms: self.skip_normal_forms.or(other.skip_normal_forms),
        }
    }
}

/// `exp,frob`, e.g. `1,2` or `3,1+z`.
pub fn parse_char(text: &str) -> Result<CharWire> {
    let (exp, frob) = text.split_once(',').ok_or_else(|| anyhow!("expected EXP,FROB, got {:?}", text))?;
    let exp = exp.trim().parse().with_context(|| format!("bad exponent {:?}", exp))?;
    Ok(CharWire { exp, frob: frob.trim().to_string() })
}

/// `deg:coeff,deg:coeff,...`; `0` or the empty string for zero.
pub fn parse_lambda(text: &str) -> Result<PolyWire> {
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|term| {
            let (d, c) = term.split_once(':').ok_or_else(|| anyhow!("expected DEG:COEFF, got {:?}", term))?;
            let d = d.trim().parse().with_context(|| format!("bad degree {:?}", d))?;
            Ok((d, c.trim().to_string()))
        })
        .collect()
}

/// A parsed `--contexts` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextList(pub Vec<(u32, u32, u32)>);

/// `p,e,f;p,e,f;...`.
pub fn parse_contexts(text: &str) -> Result<ContextList> {
    let list = text
        .split(';')
        .map(|item| {
            let parts: Vec<u32> = item
                .split(',')
                .map(|s| s.trim().parse().with_context(|| format!("bad integer {:?}", s)))
                .collect::<Result<_>>()?;
            match parts[..] {
                [p, e, f] => Ok((p, e, f)),
                _ => bail!("expected p,e,f, got {:?}", item),
            }
        })
        .collect::<Result<_>>()?;
    Ok(ContextList(list))
}
