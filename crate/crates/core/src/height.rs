//! The height of a collection, the shortcuts that pin it down without the full
//! spectral sequence, and the comparison with Hochschild cohomology of `X`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::collection::{CollectionSpec, ModelError, QualitativeExtTable, TableOptions};
use crate::exactlin::FieldKind;
use crate::extint::ExtInt;
use crate::nhh::{summarize, Bidegree, NhhError, NhhSummary};
use crate::pseudoheight::{pseudoheight, qualitative_ph_bounds, Chain, PhBounds, PhError, Pseudoheight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error(transparent)]
    Nhh(#[from] NhhError),
    #[error(transparent)]
    Ph(#[from] PhError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A height known as a closed interval; a point when both ends agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightValue {
    pub lo: ExtInt,
    pub hi: ExtInt,
}

impl HeightValue {
    pub fn point(v: ExtInt) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<ExtInt> {
        self.is_point().then_some(self.lo)
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { lo: self.lo + by, hi: self.hi + by }
    }

    pub fn to_json(&self) -> Value {
        match self.value() {
            Some(v) => v.to_json(),
            None => json!([self.lo.to_json(), self.hi.to_json()]),
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// How the height was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shortcut {
    /// Read off the spectral sequence.
    None,
    /// The pseudoheight is attained on a single object.
    Heph,
    /// Bounds from qualitative vanishing data only.
    Qualitative,
}

impl Shortcut {
    pub fn as_str(self) -> &'static str {
        match self {
            Shortcut::None => "none",
            Shortcut::Heph => "heph",
            Shortcut::Qualitative => "qualitative",
        }
    }
}

/// Result of [`height`] together with the data it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightOutcome {
    pub value: HeightValue,
    pub shortcut: Shortcut,
    pub summary: Option<NhhSummary>,
    pub pseudoheight: Option<Pseudoheight>,
    pub bounds: Option<PhBounds>,
    /// Human-readable justification of each end of the interval.
    pub evidence: Vec<String>,
    pub warnings: Vec<String>,
}

/// Least total degree with a nonzero entry.
fn min_total(entries: &BTreeMap<Bidegree, usize>) -> ExtInt {
    entries.keys().map(|(c, q)| c + q).min().map_or(ExtInt::PosInf, ExtInt::Fin)
}

/// Whether entry `(c, t)` of a trusted page `E_r` survives to the limit: every
/// later differential into or out of it starts or ends at a zero entry of `E_r`.
pub fn survives(page: &BTreeMap<Bidegree, usize>, r: usize, c: i64, t: i64) -> bool {
    let r = r as i64;
    page.iter().all(|(&(c2, q2), _)| {
        let t2 = c2 + q2;
        !(t2 == t - 1 && c2 <= c - r || t2 == t + 1 && c2 >= c + r)
    })
}

/// `he = ph` when the pseudoheight is attained on a chain of length 0.
pub fn heph_shortcut(spec: &CollectionSpec) -> Result<Option<ExtInt>, HeightError> {
    if spec.exact {
        let ph = pseudoheight(spec)?;
        return Ok(match &ph.witness {
            Some(w) if w.length() == 0 => Some(ph.ph),
            _ => None,
        });
    }
    let table = QualitativeExtTable::from_spec(spec, TableOptions::default())?;
    let b = qualitative_ph_bounds(&table)?;
    Ok(heph_from_bounds(&b))
}

fn heph_from_bounds(b: &PhBounds) -> Option<ExtInt> {
    match &b.witness {
        Some(w) if b.is_point() && w.length() == 0 => Some(b.upper()),
        _ => None,
    }
}

/// The height `min{t : NHH^t ≠ 0}`, or the best interval the data allow.
pub fn height(spec: &CollectionSpec, field: Option<FieldKind>) -> Result<HeightOutcome, HeightError> {
    if !spec.exact {
        return qualitative_height(spec);
    }
    let ph = pseudoheight(spec)?;
    let summary = summarize(spec, field, usize::MAX)?;
    let mut evidence = Vec::new();
    let mut warnings = Vec::new();
    let heph = match &ph.witness {
        Some(w) if w.length() == 0 => Some(ph.ph),
        _ => None,
    };
    let value = match summary.exact_through {
        None => {
            let he = summary.nhh.iter().find(|(_, d)| **d > 0).map_or(ExtInt::PosInf, |(t, _)| ExtInt::Fin(*t));
            evidence.push("least degree of nonzero normal Hochschild cohomology".into());
            HeightValue::point(he)
        }
        Some(r) => {
            let page = summary.pages.get(r - 1).unwrap_or(&summary.e_inf);
            let from_page = min_total(page);
            let lo = from_page.max(ph.ph);
            evidence.push(format!("lower bound {lo}: least total degree on E_{r} is {from_page}, pseudoheight {}", ph.ph));
            let survivor = page
                .keys()
                .map(|&(c, q)| (c + q, c))
                .filter(|&(t, c)| survives(page, r, c, t))
                .min_by_key(|&(t, c)| (t, -c));
            let hi = match (survivor, heph) {
                (Some((t, c)), h) if h.is_none_or(|h| ExtInt::Fin(t) <= h) => {
                    evidence.push(format!("upper bound {t}: E_{r}^{{{c},{}}} survives to E_∞", t - c));
                    ExtInt::Fin(t)
                }
                (_, Some(h)) => {
                    evidence.push(format!("upper bound {h}: pseudoheight attained on a single object"));
                    h
                }
                _ => ExtInt::PosInf,
            };
            HeightValue { lo, hi: hi.max(lo) }
        }
    };
    if value.lo == ExtInt::PosInf {
        warnings.push("normal Hochschild cohomology vanishes identically; the collection may be full".into());
    }
    let shortcut = Shortcut::None;
    Ok(HeightOutcome { value, shortcut, summary: Some(summary), pseudoheight: Some(ph), bounds: None, evidence, warnings })
}

fn qualitative_height(spec: &CollectionSpec) -> Result<HeightOutcome, HeightError> {
    let table = QualitativeExtTable::from_spec(spec, TableOptions::default())?;
    let b = qualitative_ph_bounds(&table)?;
    let mut evidence = vec![format!("lower bound {}: pseudoheight bounds [{}, {}]", b.lower(), b.lower(), b.upper())];
    let (value, shortcut) = match heph_from_bounds(&b) {
        Some(h) => {
            let w = b.witness.as_ref().map(Chain::to_string).unwrap_or_default();
            evidence.push(format!("upper bound {h}: pseudoheight attained on the single object {w}"));
            (HeightValue::point(h), Shortcut::Heph)
        }
        None => (HeightValue { lo: b.lower(), hi: ExtInt::PosInf }, Shortcut::Qualitative),
    };
    Ok(HeightOutcome {
        value,
        shortcut,
        summary: None,
        pseudoheight: None,
        bounds: Some(b),
        evidence,
        warnings: Vec::new(),
    })
}

/// Consequences of the long exact sequence relating `NHH`, `HOH(X)` and `HOH(𝒜)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    /// `HOH^k(X) ≅ HOH^k(𝒜)` for `k` up to this degree.
    pub iso_range: ExtInt,
    /// `HOH^k(X) → HOH^k(𝒜)` is injective in this degree.
    pub mono_degree: ExtInt,
    pub deformation_equivalent: bool,
    pub hoh_x: Option<Vec<usize>>,
    /// Dimensions of `HOH^k(𝒜)` determined by the isomorphism range.
    pub hoh_a: Option<Vec<usize>>,
}

/// Only a proven lower bound `h` is used.
pub fn comparison_report(h: ExtInt, hoh_x: Option<&[usize]>) -> Comparison {
    let iso_range = h + -2;
    let hoh_a = hoh_x.map(|dims| {
        dims.iter().enumerate().take_while(|(k, _)| ExtInt::Fin(*k as i64) <= iso_range).map(|(_, d)| *d).collect()
    });
    Comparison {
        iso_range,
        mono_degree: h + -1,
        deformation_equivalent: h >= ExtInt::Fin(4),
        hoh_x: hoh_x.map(<[usize]>::to_vec),
        hoh_a,
    }
}

/// `HOH^t = Σ_{p+q=t} h^q(Λ^p T_X)` from a table keyed by `(q, p)`.
pub fn hkr_total(table: &BTreeMap<(usize, usize), usize>) -> Vec<usize> {
    let top = table.keys().map(|(q, p)| q + p + 1).max().unwrap_or(0);
    let mut out = vec![0; top];
    for (&(q, p), &d) in table {
        out[q + p] += d;
    }
    out
}

/// Everything the `height` and `report` commands print.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightReport {
    pub ph: ExtInt,
    pub ph_ac: ExtInt,
    /// Present when the pseudoheight itself is only known as an interval.
    pub ph_interval: Option<(ExtInt, ExtInt)>,
    pub ph_witness: Option<Chain>,
    pub height: HeightValue,
    pub height_ac: HeightValue,
    pub used_shortcut: Shortcut,
    pub heph: Option<ExtInt>,
    pub comparison: Comparison,
    pub nhh: Option<BTreeMap<i64, usize>>,
    pub exact_through: Option<usize>,
    pub evidence: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn height_report(
    spec: &CollectionSpec,
    field: Option<FieldKind>,
    hoh_x: Option<&[usize]>,
) -> Result<HeightReport, HeightError> {
    let out = height(spec, field)?;
    let (ph, ph_interval, ph_witness) = match (&out.pseudoheight, &out.bounds) {
        (Some(p), _) => (p.ph, None, p.witness.clone()),
        (None, Some(b)) if b.is_point() => (b.upper(), None, b.witness.clone()),
        (None, Some(b)) => (b.lower(), Some((b.lower(), b.upper())), b.witness.clone()),
        (None, None) => unreachable!("height always records a pseudoheight or its bounds"),
    };
    let heph = match (&out.pseudoheight, &out.bounds) {
        (Some(p), _) => p.witness.as_ref().filter(|w| w.length() == 0).map(|_| p.ph),
        (None, Some(b)) => heph_from_bounds(b),
        _ => None,
    };
    Ok(HeightReport {
        ph,
        ph_ac: ph + -spec.dim_x,
        ph_interval,
        ph_witness,
        height: out.value,
        height_ac: out.value.shift(-spec.dim_x),
        used_shortcut: out.shortcut,
        heph,
        comparison: comparison_report(out.value.lo, hoh_x),
        nhh: out.summary.as_ref().filter(|s| s.exact_through.is_none()).map(|s| s.nhh.clone()),
        exact_through: out.summary.as_ref().and_then(|s| s.exact_through),
        evidence: out.evidence,
        warnings: out.warnings,
    })
}

impl HeightReport {
    pub fn to_json(&self) -> Value {
        let c = &self.comparison;
        json!({
            "ph": self.ph.to_json(),
            "ph_ac": self.ph_ac.to_json(),
            "ph_interval": self.ph_interval.map(|(a, b)| json!([a.to_json(), b.to_json()])),
            "ph_witness": self.ph_witness.as_ref().map(Chain::to_json),
            "height": self.height.to_json(),
            "height_ac": self.height_ac.to_json(),
            "used_shortcut": self.used_shortcut.as_str(),
            "heph": self.heph.map(|h| h.to_json()),
            "iso_range": c.iso_range.to_json(),
            "mono_degree": c.mono_degree.to_json(),
            "deformation_equivalent": c.deformation_equivalent,
            "hoh_x_dims": c.hoh_x,
            "hoh_a_dims": c.hoh_a,
            "nhh": self.nhh.as_ref().map(|m| m.iter().map(|(t, d)| (t.to_string(), json!(d))).collect::<serde_json::Map<_, _>>()),
            "exact_through_page": self.exact_through,
            "evidence": self.evidence,
            "warnings": self.warnings,
        })
    }
}

impl fmt::Display for HeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ph_interval {
            Some((a, b)) => writeln!(f, "ph      in [{a}, {b}]")?,
            None => writeln!(f, "ph      = {}", self.ph)?,
        }
        writeln!(f, "ph_ac   = {}", self.ph_ac)?;
        if let Some(w) = &self.ph_witness {
            writeln!(f, "witness = {w}")?;
        }
        writeln!(f, "he      = {}", self.height)?;
        writeln!(f, "he_ac   = {}", self.height_ac)?;
        writeln!(f, "shortcut: {}", self.used_shortcut.as_str())?;
        if let Some(nhh) = &self.nhh {
            let parts: Vec<String> = nhh.iter().map(|(t, d)| format!("{t}:{d}")).collect();
            writeln!(f, "NHH dims: {{{}}}", parts.join(", "))?;
        }
        if let Some(r) = self.exact_through {
            writeln!(f, "pages trusted through E_{r}")?;
        }
        let c = &self.comparison;
        writeln!(f, "HOH^k(X) ≅ HOH^k(A) for k ≤ {}; injective for k = {}", c.iso_range, c.mono_degree)?;
        writeln!(f, "deformation equivalent: {}", c.deformation_equivalent)?;
        if let Some(a) = &c.hoh_a {
            writeln!(f, "HOH(A) dims determined: {a:?}")?;
        }
        for e in &self.evidence {
            writeln!(f, "  {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_at_zero_is_vacuous() {
        let c = comparison_report(ExtInt::Fin(0), None);
        assert_eq!(c.iso_range, ExtInt::Fin(-2));
        assert_eq!(c.mono_degree, ExtInt::Fin(-1));
        assert!(!c.deformation_equivalent);
    }

    #[test]
    fn comparison_copies_iso_range() {
        let c = comparison_report(ExtInt::Fin(4), Some(&[1, 0, 0, 6, 9]));
        assert_eq!(c.hoh_a, Some(vec![1, 0, 0]));
        assert!(c.deformation_equivalent);
        let inf = comparison_report(ExtInt::PosInf, Some(&[1, 3]));
        assert_eq!(inf.hoh_a, Some(vec![1, 3]));
    }

    #[test]
    fn hkr_sums_antidiagonals() {
        assert_eq!(hkr_total(&BTreeMap::from([((0, 0), 1), ((0, 1), 3)])), vec![1, 3]);
        assert!(hkr_total(&BTreeMap::new()).is_empty());
        assert_eq!(hkr_total(&BTreeMap::from([((0, 0), 1)])), vec![1]);
    }

    #[test]
    fn survival_looks_at_reachable_entries_only() {
        let page = BTreeMap::from([((0, 4), 36), ((-2, 6), 4), ((-1, 6), 2)]);
        assert!(survives(&page, 2, 0, 4));
        let with_source = BTreeMap::from([((0, 4), 36), ((-3, 6), 1)]);
        assert!(!survives(&with_source, 2, 0, 4));
        let with_target = BTreeMap::from([((-2, 6), 1), ((0, 5), 1)]);
        assert!(!survives(&with_target, 2, -2, 4));
    }

    #[test]
    fn interval_display() {
        let v = HeightValue { lo: ExtInt::Fin(3), hi: ExtInt::PosInf };
        assert_eq!(v.to_string(), "[3, +inf]");
        assert_eq!(HeightValue::point(ExtInt::Fin(4)).to_string(), "4");
        assert_eq!(v.shift(-2).lo, ExtInt::Fin(1));
    }
}
