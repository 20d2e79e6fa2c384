//! The JSON document formats.
//!
//! A term is `{"coeff":"n/d","t":[[i,e],...],"dt":[i,...],"word":[g,...]}`,
//! where `g` is `i` for `B_i` and a string for a closed generator. Rationals
//! are always written as `n/d` in lowest terms.

use atiyah_core::{CechCochain, FormPolynomial, LiftTuple, Monomial, Rational, TracePolynomial, SIGN_CONVENTION};
use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LetterJson {
    Omega(u32),
    Closed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub t: Vec<[u32; 2]>,
    pub dt: Vec<u32>,
    pub word: Vec<LetterJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub p: usize,
    pub q: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftTupleJson {
    pub k: usize,
    pub components: Vec<ComponentJson>,
    pub sign_convention: String,
}

pub fn rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Schema(format!("malformed rational {s:?}"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn term(m: &Monomial, c: &Rational) -> TermJson {
    TermJson {
        coeff: rational(c),
        t: m.t_exponents().iter().map(|&(i, e)| [i, e]).collect(),
        dt: m.dt().to_vec(),
        word: m
            .word()
            .iter()
            .map(|l| match l {
                atiyah_core::Letter::Omega(i) => LetterJson::Omega(*i),
                atiyah_core::Letter::Closed(name) => LetterJson::Closed(name.to_string()),
            })
            .collect(),
    }
}

pub fn trace_terms(f: &TracePolynomial) -> Vec<TermJson> {
    f.terms().map(|(m, c)| term(m, c)).collect()
}

pub fn form_terms(f: &FormPolynomial) -> Vec<TermJson> {
    f.terms().map(|(m, c)| term(m, c)).collect()
}

pub fn component(c: &CechCochain) -> ComponentJson {
    ComponentJson { p: c.p(), q: c.q(), terms: trace_terms(c.value()) }
}

pub fn lift_tuple(t: &LiftTuple) -> LiftTupleJson {
    LiftTupleJson {
        k: t.k(),
        components: t.components().iter().map(component).collect(),
        sign_convention: SIGN_CONVENTION.to_string(),
    }
}

fn letters(word: &[LetterJson]) -> Vec<atiyah_core::Letter> {
    word.iter()
        .map(|g| match g {
            LetterJson::Omega(i) => atiyah_core::Letter::Omega(*i),
            LetterJson::Closed(name) => atiyah_core::Letter::closed(name),
        })
        .collect()
}

/// Read a trace polynomial back; scalar parts must be empty on the Čech side.
fn trace_polynomial(terms: &[TermJson]) -> Result<TracePolynomial, CliError> {
    let mut out = TracePolynomial::zero();
    for t in terms {
        if !t.t.is_empty() || !t.dt.is_empty() {
            return Err(CliError::Schema("Čech components carry no t or dt factors".into()));
        }
        out.add_assign(&TracePolynomial::word(parse_rational(&t.coeff)?, &letters(&t.word)));
    }
    Ok(out)
}

pub fn parse_lift_tuple(doc: &LiftTupleJson) -> Result<LiftTuple, CliError> {
    if doc.sign_convention != SIGN_CONVENTION {
        return Err(CliError::Schema(format!("unsupported sign convention {:?}", doc.sign_convention)));
    }
    let components = doc
        .components
        .iter()
        .map(|c| Ok(CechCochain::new(c.p, c.q, trace_polynomial(&c.terms)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(LiftTuple::new(doc.k, components)?)
}

pub fn lift_tuple_from_str(s: &str) -> Result<LiftTuple, CliError> {
    let doc: LiftTupleJson = serde_json::from_str(s).map_err(|e| CliError::Schema(e.to_string()))?;
    parse_lift_tuple(&doc)
}

pub fn lift_tuple_to_string(t: &LiftTuple) -> String {
    serde_json::to_string(&lift_tuple(t)).expect("plain data serializes")
}
