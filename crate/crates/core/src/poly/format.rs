//! Text and JSON forms of polynomials and polynomial systems.
//!
//! Text: `(1,0)*X0^2 X1 + (0,1)`; coefficients are flat `GF(p)` digit tuples
//! (length `n*e`, little-endian), exponent 1 is omitted, terms are written in
//! descending grevlex order and the zero polynomial is `0`.

use serde::{Deserialize, Serialize};

use super::{Level, Monomial, MultiPoly, PolySystem, Ring};
use crate::error::{Error, Result};
use crate::gf::{make_field_from_json, FieldElement, FieldSpecJson};

pub fn to_text(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let f = p.field();
    let vars = p.ring().vars();
    let mut parts = Vec::with_capacity(p.nterms());
    for (m, c) in p.terms() {
        let digits: Vec<String> = f.flat_digits(c).iter().map(|d| d.to_string()).collect();
        let mut s = format!("({})", digits.join(","));
        let factors: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { vars[v].clone() } else { format!("{}^{}", vars[v], e) })
            .collect();
        if !factors.is_empty() {
            s.push('*');
            s.push_str(&factors.join(" "));
        }
        parts.push(s);
    }
    parts.join(" + ")
}

pub fn from_text(ring: &Ring, text: &str) -> Result<MultiPoly> {
    let text = text.trim();
    if text == "0" {
        return Ok(ring.zero());
    }
    let f = ring.field().clone();
    let mut terms = Vec::new();
    for raw in split_terms(text)? {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff, rest) = if let Some(stripped) = raw.strip_prefix('(') {
            let close = stripped
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed coefficient in {raw:?}")))?;
            let digits = stripped[..close]
                .split(',')
                .map(|d| d.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{d:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let c = f.from_flat_digits(&digits)?;
            let rest = stripped[close + 1..].trim_start();
            let rest = match rest.strip_prefix('*') {
                Some(r) => r,
                None if rest.is_empty() => rest,
                None => return Err(Error::Parse(format!("expected '*' after coefficient in {raw:?}"))),
            };
            (c, rest)
        } else {
            (FieldElement::ONE, raw)
        };
        let mut exps = vec![0u32; ring.nvars()];
        for factor in rest.split_whitespace() {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => {
                    (n, e.parse::<u32>().map_err(|err| Error::Parse(format!("{factor:?}: {err}")))?)
                }
                None => (factor, 1),
            };
            let v = ring
                .var_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            exps[v] += e;
        }
        terms.push((Monomial::new(exps), coeff));
    }
    MultiPoly::from_terms(ring, terms)
}

fn split_terms(text: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse("unbalanced parentheses".into()));
        }
    }
    out.push(&text[start..]);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Vec<u32>,
    pub exps: Vec<u32>,
}

pub fn to_json_terms(p: &MultiPoly) -> Vec<TermJson> {
    let f = p.field();
    p.terms()
        .map(|(m, c)| TermJson { coeff: f.flat_digits(c), exps: m.exps().to_vec() })
        .collect()
}

pub fn from_json_terms(ring: &Ring, terms: &[TermJson]) -> Result<MultiPoly> {
    let f = ring.field();
    let parsed = terms
        .iter()
        .map(|t| Ok((Monomial::new(t.exps.clone()), f.from_flat_digits(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(ring, parsed)
}

/// A polynomial in a system file: either text or a JSON term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Text(String),
    Terms(Vec<TermJson>),
}

/// `{field, vars, polys}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub field: FieldSpecJson,
    pub vars: Vec<String>,
    pub polys: Vec<PolyRepr>,
}

impl SystemFile {
    pub fn from_system(sys: &PolySystem) -> Self {
        SystemFile {
            field: sys.ring().field().to_json(),
            vars: sys.ring().vars().to_vec(),
            polys: sys.polys().iter().map(|p| PolyRepr::Terms(to_json_terms(p))).collect(),
        }
    }

    pub fn from_system_text(sys: &PolySystem) -> Self {
        SystemFile {
            field: sys.ring().field().to_json(),
            vars: sys.ring().vars().to_vec(),
            polys: sys.polys().iter().map(|p| PolyRepr::Text(to_text(p))).collect(),
        }
    }

    pub fn to_system(&self) -> Result<PolySystem> {
        let field = make_field_from_json(&self.field)?;
        let ring = Ring::new(field, Level::K, self.vars.clone())?;
        let polys = self
            .polys
            .iter()
            .map(|p| match p {
                PolyRepr::Text(s) => from_text(&ring, s),
                PolyRepr::Terms(t) => from_json_terms(&ring, t),
            })
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(&ring, polys)
    }
}
