//! Fullness verdicts: positive height rules fullness out, and a degree-0
//! cocycle with nonzero evaluation pairing proves it.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::collection::{CollectionSpec, Obj, TensorTerm};
use crate::exactlin::{Field, FieldKind, SparseVec};
use crate::extint::ExtInt;
use crate::fixtures::{beilinson, beilinson_certificate, FixtureRange};
use crate::height::{height, HeightError, HeightValue};
use crate::nhh::{assemble_differential, spectral_sequence, NhhError, NormalComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FullnessError {
    #[error("ξ term on chain {chain:?} with degrees {degs:?} is not in bidegree (-p, p)")]
    WrongBidegree { chain: Vec<Obj>, degs: Vec<i64> },
    #[error("ξ mixes chain lengths {0} and {1}")]
    MixedLengths(usize, usize),
    #[error("{what} on chain {chain:?} with degrees {degs:?}: {msg}")]
    Shape { what: &'static str, chain: Vec<Obj>, degs: Vec<i64>, msg: String },
    #[error(transparent)]
    Nhh(#[from] NhhError),
    #[error(transparent)]
    Height(#[from] HeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FullnessStatus {
    NotFull,
    Full,
    Inconclusive,
}

impl FullnessStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FullnessStatus::NotFull => "NOT_FULL",
            FullnessStatus::Full => "FULL",
            FullnessStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Height(HeightValue),
    /// The pairing of `ξ_p^i` with `η_i` for each object, rendered in the working field.
    Pairing { p: usize, values: BTreeMap<Obj, String>, nonzero: Option<Obj> },
    Reason(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullnessVerdict {
    pub status: FullnessStatus,
    pub evidence: Evidence,
}

impl FullnessVerdict {
    fn inconclusive(reason: impl Into<String>) -> Self {
        Self { status: FullnessStatus::Inconclusive, evidence: Evidence::Reason(reason.into()) }
    }

    pub fn to_json(&self) -> Value {
        let evidence = match &self.evidence {
            Evidence::Height(h) => json!({"height": h.to_json()}),
            Evidence::Pairing { p, values, nonzero } => json!({
                "p": p,
                "pairing": values.iter().map(|(i, v)| (i.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "object": nonzero,
            }),
            Evidence::Reason(r) => json!({"reason": r}),
        };
        json!({"status": self.status.as_str(), "evidence": evidence})
    }
}

impl fmt::Display for FullnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status.as_str())?;
        match &self.evidence {
            Evidence::Height(h) => write!(f, ": height {h} > 0"),
            Evidence::Pairing { p, values, nonzero } => {
                let parts: Vec<String> = values.iter().map(|(i, v)| format!("E_{i}: {v}")).collect();
                write!(f, ": ξ in bidegree (-{p},{p}), pairings {}", parts.join(", "))?;
                match nonzero {
                    Some(i) => write!(f, "; nonzero at E_{i}"),
                    None => Ok(()),
                }
            }
            Evidence::Reason(r) => write!(f, ": {r}"),
        }
    }
}

/// NOT_FULL exactly when the height is provably positive.
pub fn not_full_check(h: HeightValue) -> Option<FullnessVerdict> {
    (h.lo > ExtInt::Fin(0)).then_some(FullnessVerdict { status: FullnessStatus::NotFull, evidence: Evidence::Height(h) })
}

fn term_p(t: &TensorTerm) -> usize {
    t.chain.len().saturating_sub(1)
}

/// Global coordinates of a tensor term in the degree-0 part of the complex.
fn coordinates<F: Field>(
    cx: &NormalComplex<F>,
    term: &TensorTerm,
    what: &'static str,
) -> Result<Vec<(usize, F::Elem)>, FullnessError> {
    let shape = |msg: String| FullnessError::Shape { what, chain: term.chain.clone(), degs: term.degs.clone(), msg };
    let ct = cx
        .terms
        .get(&0)
        .and_then(|ts| ts.iter().find(|c| c.chain == term.chain && c.degs == term.degs))
        .ok_or_else(|| shape("no such summand in total degree 0".into()))?;
    let mut out = Vec::new();
    for (tuple, coef) in &term.entries {
        if tuple.len() != ct.dims.len() || tuple.iter().zip(&ct.dims).any(|(i, d)| i >= d) {
            return Err(shape(format!("index {tuple:?} outside dimensions {:?}", ct.dims)));
        }
        let x = cx.field.from_rational(coef).map_err(|e| shape(e.to_string()))?;
        out.push((ct.offset + ct.index_of(tuple), x));
    }
    Ok(out)
}

fn check_bidegree(term: &TensorTerm) -> Result<(), FullnessError> {
    let p = term_p(term) as i64;
    if term.degs.len() != term.chain.len() || term.degs.iter().sum::<i64>() != p {
        return Err(FullnessError::WrongBidegree { chain: term.chain.clone(), degs: term.degs.clone() });
    }
    Ok(())
}

/// The sufficient condition: a cocycle `ξ` in bidegree `(-p, p)` at the largest
/// surviving `p` whose pairing with some `η_i` is nonzero.
pub fn full_check(
    spec: &CollectionSpec,
    xi: &[TensorTerm],
    pairing: &BTreeMap<Obj, Vec<TensorTerm>>,
    field: Option<FieldKind>,
) -> Result<FullnessVerdict, FullnessError> {
    let mut p = None;
    for term in xi {
        check_bidegree(term)?;
        match p {
            None => p = Some(term_p(term)),
            Some(q) if q != term_p(term) => return Err(FullnessError::MixedLengths(q, term_p(term))),
            _ => {}
        }
    }
    for (i, terms) in pairing {
        for term in terms {
            check_bidegree(term)?;
            if term.chain.first() != Some(i) || Some(term_p(term)) != p && p.is_some() {
                return Err(FullnessError::Shape {
                    what: "pairing",
                    chain: term.chain.clone(),
                    degs: term.degs.clone(),
                    msg: format!("expected a chain of length {} starting at {i}", p.unwrap_or(0)),
                });
            }
        }
    }
    let Some(p) = p else {
        return Ok(FullnessVerdict::inconclusive("ξ is zero"));
    };
    crate::with_field!(field.unwrap_or(spec.field), |f| full_check_in(&f, spec, xi, pairing, p))
}

fn full_check_in<F: Field>(
    field: &F,
    spec: &CollectionSpec,
    xi: &[TensorTerm],
    pairing: &BTreeMap<Obj, Vec<TensorTerm>>,
    p: usize,
) -> Result<FullnessVerdict, FullnessError> {
    let cx = assemble_differential(field, spec)?;
    let mut v: SparseVec<F::Elem> = Vec::new();
    let mut by_object: BTreeMap<Obj, SparseVec<F::Elem>> = BTreeMap::new();
    for term in xi {
        let coords = coordinates(&cx, term, "ξ")?;
        let slot = by_object.entry(term.chain[0]).or_default();
        *slot = crate::exactlin::normalize(field, slot.iter().cloned().chain(coords.iter().cloned()).collect());
        v = crate::exactlin::normalize(field, v.into_iter().chain(coords).collect());
    }
    if v.is_empty() {
        return Ok(FullnessVerdict::inconclusive("ξ is zero"));
    }
    let ss = spectral_sequence(&cx, 1)?;
    if !ss.limit_known() {
        return Ok(FullnessVerdict::inconclusive("higher products are incomplete, so E_∞ is unknown"));
    }
    if let Some(((c, q), _)) = ss.e_inf.iter().find(|((c, q), d)| *c + *q == 0 && -*c > p as i64 && **d > 0) {
        return Ok(FullnessVerdict::inconclusive(format!("E_∞^{{{c},{q}}} is nonzero, so p = {p} is not maximal")));
    }
    if !cx.apply(0, &v).is_empty() {
        return Ok(FullnessVerdict::inconclusive("ξ is not a cocycle"));
    }
    let mut values = BTreeMap::new();
    let mut nonzero = None;
    for (&i, terms) in pairing {
        let xi_i: BTreeMap<usize, F::Elem> = by_object.get(&i).cloned().unwrap_or_default().into_iter().collect();
        let mut total = field.zero();
        for term in terms {
            for (idx, a) in coordinates(&cx, term, "pairing")? {
                if let Some(b) = xi_i.get(&idx) {
                    total = field.add(&total, &field.mul(&a, b));
                }
            }
        }
        if nonzero.is_none() && !field.is_zero(&total) {
            nonzero = Some(i);
        }
        values.insert(i, field.render(&total));
    }
    let status = if nonzero.is_some() { FullnessStatus::Full } else { FullnessStatus::Inconclusive };
    Ok(FullnessVerdict { status, evidence: Evidence::Pairing { p, values, nonzero } })
}

/// NOT_FULL from the height if possible, otherwise the shipped certificate.
pub fn fullness(spec: &CollectionSpec, field: Option<FieldKind>) -> Result<FullnessVerdict, FullnessError> {
    let h = height(spec, field)?;
    if let Some(v) = not_full_check(h.value) {
        return Ok(v);
    }
    match &spec.certificate {
        Some(cert) => full_check(spec, &cert.xi, &cert.pairing, field),
        None => Ok(FullnessVerdict::inconclusive(format!("height {} is not positive and no certificate is supplied", h.value))),
    }
}

/// The Beilinson collection on `P^{n-1}` with its pairing and antisymmetric `ξ`.
pub fn beilinson_fixture(
    n: usize,
) -> Result<(CollectionSpec, BTreeMap<Obj, Vec<TensorTerm>>, Vec<TensorTerm>), FixtureRange> {
    let spec = beilinson(n)?;
    let cert = beilinson_certificate(n);
    Ok((spec, cert.pairing, cert.xi))
}
