//! Three-valued Ext-vanishing knowledge on the anticanonically extended
//! collection `E_1, …, E_n, E_1 ⊗ ω⁻¹, …, E_n ⊗ ω⁻¹`.
//!
//! Extended objects are numbered `1..=2n`, object `n + i` being `E_i ⊗ ω⁻¹`.
//! A [`Link`] is an ordered pair `(src, dst)` with `src < dst ≤ src + n`;
//! degrees are ordinary Ext degrees, so a link `(i, n + j)` in degree `k`
//! is the Serre-twisted space `N(j, i)` in degree `k + dim X`.

use std::collections::BTreeMap;
use std::fmt;

use super::{CollectionSpec, Flags, GradedDims, ModelError, SpaceId};
use crate::extint::ExtInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtStatus {
    Zero,
    Nonzero,
    Unknown,
}

impl ExtStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtStatus::Zero => "zero",
            ExtStatus::Nonzero => "nonzero",
            ExtStatus::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zero" => Some(ExtStatus::Zero),
            "nonzero" => Some(ExtStatus::Nonzero),
            "unknown" => Some(ExtStatus::Unknown),
            _ => None,
        }
    }
}

/// An ordered pair of objects of the extended collection, normalised so that `src ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub src: usize,
    pub dst: usize,
}

impl Link {
    pub fn new(n: usize, src: usize, dst: usize) -> Result<Self, ModelError> {
        let (src, dst) = if src > n && dst > n { (src - n, dst - n) } else { (src, dst) };
        if src < 1 || src > n || dst <= src || dst > src + n {
            return Err(ModelError::Malformed {
                path: "qualitative".into(),
                msg: format!("({src},{dst}) is not a forward pair of the extended collection"),
            });
        }
        Ok(Self { src, dst })
    }

    /// `Ext(E_i, E_j)`, `i < j`.
    pub fn forward(i: usize, j: usize) -> Self {
        debug_assert!(i < j);
        Self { src: i, dst: j }
    }

    /// `Ext(E_from, E_to ⊗ ω⁻¹)`, `to ≤ from`.
    pub fn twisted(n: usize, from: usize, to: usize) -> Self {
        debug_assert!(to <= from);
        Self { src: from, dst: n + to }
    }

    /// Underlying space and the offset from Ext degree to the model's degree.
    pub fn space(&self, n: usize, dim_x: i64) -> (SpaceId, i64) {
        if self.dst <= n {
            (SpaceId::A(self.src, self.dst), 0)
        } else {
            (SpaceId::N(self.dst - n, self.src), dim_x)
        }
    }

    pub fn is_twisted(&self, n: usize) -> bool {
        self.dst > n
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.src, self.dst)
    }
}

/// One recorded vanishing fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualFact {
    pub link: Link,
    pub deg: i64,
    pub status: ExtStatus,
    /// Where the fact comes from (a lemma, a reference, a computation).
    pub source: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct LinkInfo {
    statuses: BTreeMap<i64, ExtStatus>,
    /// Every degree not listed is zero.
    exact: bool,
}

/// Which knowledge sources feed a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    pub use_exact: bool,
    pub use_facts: bool,
    pub degree_rule: bool,
    pub h2_rule: bool,
    pub sheaf_range: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self { use_exact: true, use_facts: true, degree_rule: true, h2_rule: true, sheaf_range: true }
    }
}

impl TableOptions {
    /// Only recorded facts and the deduction rules; exact dimensions are ignored.
    pub fn qualitative_only() -> Self {
        Self { use_exact: false, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualitativeExtTable {
    n: usize,
    dim_x: i64,
    links: BTreeMap<Link, LinkInfo>,
    /// Ext degrees outside this range vanish on every link.
    sheaf_range: Option<(i64, i64)>,
}

impl QualitativeExtTable {
    pub fn new(n: usize, dim_x: i64) -> Self {
        Self { n, dim_x, links: BTreeMap::new(), sheaf_range: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_x(&self) -> i64 {
        self.dim_x
    }

    /// Marks Ext in degrees outside `[lo, hi]` as zero everywhere.
    pub fn set_sheaf_range(&mut self, lo: i64, hi: i64) -> Result<(), ModelError> {
        for (link, info) in &self.links {
            for (&d, &s) in &info.statuses {
                if s == ExtStatus::Nonzero && (d < lo || d > hi) {
                    return Err(ModelError::Inconsistent {
                        link: (link.src, link.dst),
                        deg: d,
                        msg: format!("nonzero outside the range [{lo},{hi}]"),
                    });
                }
            }
        }
        self.sheaf_range = Some((lo, hi));
        Ok(())
    }

    pub fn status(&self, link: Link, deg: i64) -> ExtStatus {
        if let Some((lo, hi)) = self.sheaf_range {
            if deg < lo || deg > hi {
                return ExtStatus::Zero;
            }
        }
        match self.links.get(&link) {
            Some(info) => match info.statuses.get(&deg) {
                Some(&s) => s,
                None if info.exact => ExtStatus::Zero,
                None => ExtStatus::Unknown,
            },
            None => ExtStatus::Unknown,
        }
    }

    /// Records a status; returns whether the table changed.
    pub fn set(&mut self, link: Link, deg: i64, status: ExtStatus) -> Result<bool, ModelError> {
        if status == ExtStatus::Unknown {
            return Ok(false);
        }
        let current = self.status(link, deg);
        if current == status {
            return Ok(false);
        }
        if current != ExtStatus::Unknown {
            return Err(ModelError::Inconsistent {
                link: (link.src, link.dst),
                deg,
                msg: format!("recorded as {} but deduced {}", current.as_str(), status.as_str()),
            });
        }
        self.links.entry(link).or_default().statuses.insert(deg, status);
        Ok(true)
    }

    /// Records the complete graded dimensions of a link (Ext degrees).
    pub fn set_exact(&mut self, link: Link, dims: &GradedDims) -> Result<(), ModelError> {
        let info = self.links.entry(link).or_default();
        for (&d, &s) in &info.statuses {
            let expected = if dims.get(d) > 0 { ExtStatus::Nonzero } else { ExtStatus::Zero };
            if s != expected {
                return Err(ModelError::Inconsistent {
                    link: (link.src, link.dst),
                    deg: d,
                    msg: format!("exact data says {} but the table says {}", expected.as_str(), s.as_str()),
                });
            }
        }
        for (d, _) in dims.iter() {
            if let Some((lo, hi)) = self.sheaf_range {
                if d < lo || d > hi {
                    return Err(ModelError::Inconsistent {
                        link: (link.src, link.dst),
                        deg: d,
                        msg: "exact data is nonzero outside the sheaf range".into(),
                    });
                }
            }
            info.statuses.insert(d, ExtStatus::Nonzero);
        }
        info.statuses.retain(|_, s| *s == ExtStatus::Nonzero);
        info.exact = true;
        Ok(())
    }

    pub fn is_exact(&self, link: Link) -> bool {
        self.links.get(&link).is_some_and(|i| i.exact)
    }

    /// Every link of the collection: forward pairs first, then twisted ones.
    pub fn all_links(&self) -> Vec<Link> {
        let n = self.n;
        let mut v = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                v.push(Link::forward(i, j));
            }
        }
        for from in 1..=n {
            for to in 1..=from {
                v.push(Link::twisted(n, from, to));
            }
        }
        v
    }

    /// Interval `[lo, hi]` containing the relative height of a link.
    ///
    /// `hi` is the least degree known to be nonzero; `lo` the least degree
    /// not known to vanish. Without a vanishing range below, `lo = -∞`.
    pub fn se_interval(&self, link: Link) -> (ExtInt, ExtInt) {
        let info = self.links.get(&link);
        let in_range = |d: i64| self.sheaf_range.is_none_or(|(lo, hi)| lo <= d && d <= hi);
        let hi = info
            .and_then(|i| i.statuses.iter().find(|(d, s)| **s == ExtStatus::Nonzero && in_range(**d)))
            .map_or(ExtInt::PosInf, |(d, _)| ExtInt::Fin(*d));
        if info.is_some_and(|i| i.exact) {
            return (hi, hi);
        }
        let lo = match self.sheaf_range {
            Some((a, b)) => (a..=b)
                .find(|&d| self.status(link, d) != ExtStatus::Zero)
                .map_or(ExtInt::PosInf, ExtInt::Fin),
            None => ExtInt::NegInf,
        };
        (lo, hi)
    }

    /// Builds the table for a spec from the selected knowledge sources.
    pub fn from_spec(spec: &CollectionSpec, opts: TableOptions) -> Result<Self, ModelError> {
        let n = spec.n;
        let mut t = Self::new(n, spec.dim_x);
        if opts.sheaf_range && spec.flags.line_bundles {
            t.set_sheaf_range(0, spec.dim_x)?;
        }
        if opts.use_exact && spec.exact {
            for i in 1..=n {
                for j in i + 1..=n {
                    let dims = spec.dims(SpaceId::A(i, j)).cloned().unwrap_or_default();
                    t.set_exact(Link::forward(i, j), &dims)?;
                }
            }
            for from in 1..=n {
                for to in 1..=from {
                    let dims = spec.dims(SpaceId::N(to, from)).cloned().unwrap_or_default();
                    let shifted = GradedDims::from_pairs(dims.iter().map(|(d, k)| (d - spec.dim_x, k)));
                    t.set_exact(Link::twisted(n, from, to), &shifted)?;
                }
            }
        }
        if opts.use_facts {
            for f in &spec.qualitative {
                t.set(f.link, f.deg, f.status)?;
            }
        }
        // both rules only add facts, so one sweep each reaches the fixpoint; loop anyway
        // in case further rules are added
        loop {
            let mut changed = false;
            if opts.degree_rule {
                if let (Some(degs), Some(k2)) = (spec.canonical_degrees(), spec.k_squared) {
                    if let Ok(updates) = hom_vanishing_from_degrees(&extend_degrees(&degs, k2), spec.flags) {
                        for (link, deg, status) in updates {
                            changed |= t.set(link, deg, status)?;
                        }
                    }
                }
            }
            if opts.h2_rule {
                let f = spec.flags;
                if f.is_surface && f.line_bundles && f.h2_anticanonical_nonzero {
                    for i in 1..=n {
                        changed |= t.set(Link::twisted(n, i, i), 2, ExtStatus::Nonzero)?;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(t)
    }
}

/// Canonical degrees of the extended collection: `deg_i` followed by `deg_i - K²`.
pub fn extend_degrees(degrees: &[i64], k_squared: i64) -> Vec<i64> {
    degrees.iter().copied().chain(degrees.iter().map(|d| d - k_squared)).collect()
}

/// Hom vanishing between line bundles on a surface with ample canonical class:
/// `Hom(L_1, L_2) = 0` whenever `c_1(L_1)·K ≥ c_1(L_2)·K` and `L_1 ≇ L_2`.
///
/// Returns only `Zero` deductions, one per link whose degrees allow it.
pub fn hom_vanishing_from_degrees(
    extended: &[i64],
    flags: Flags,
) -> Result<Vec<(Link, i64, ExtStatus)>, ModelError> {
    if !(flags.is_surface && flags.ample_canonical && flags.line_bundles) {
        return Err(ModelError::Inapplicable(
            "degree criterion needs line bundles on a surface with ample canonical class".into(),
        ));
    }
    if extended.len() % 2 != 0 {
        return Err(ModelError::Malformed {
            path: "degrees".into(),
            msg: "extended degree sequence must have even length".into(),
        });
    }
    let n = extended.len() / 2;
    let mut out = Vec::new();
    for src in 1..=n {
        for dst in src + 1..=src + n {
            if extended[src - 1] >= extended[dst - 1] {
                out.push((Link::new(n, src, dst)?, 0, ExtStatus::Zero));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface() -> Flags {
        Flags { is_surface: true, ample_canonical: true, line_bundles: true, h2_anticanonical_nonzero: true }
    }

    #[test]
    fn burniat_extension() {
        assert_eq!(extend_degrees(&[3, 3, 2, 2, 2, 0], 6), vec![3, 3, 2, 2, 2, 0, -3, -3, -4, -4, -4, -6]);
    }

    #[test]
    fn beauville_extension() {
        assert_eq!(extend_degrees(&[0, -2, -2, -4], 8), vec![0, -2, -2, -4, -8, -10, -10, -12]);
    }

    #[test]
    fn godeaux_extension() {
        let d = extend_degrees(&[0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0], 1);
        assert_eq!(&d[11..], &[-1, -1, 0, -1, -1, -1, 0, -1, -1, -1, -1]);
    }

    #[test]
    fn non_increasing_degrees_give_hom_free() {
        let ext = extend_degrees(&[3, 3, 2, 2, 2, 0], 6);
        let updates = hom_vanishing_from_degrees(&ext, surface()).unwrap();
        // every forward link of the extended collection: 6*6 pairs
        assert_eq!(updates.len(), 36);
        assert!(updates.iter().all(|(_, d, s)| *d == 0 && *s == ExtStatus::Zero));
    }

    #[test]
    fn increasing_degrees_give_nothing() {
        let updates = hom_vanishing_from_degrees(&[0, 1, 2, 3, 4, 5], surface()).unwrap();
        assert!(updates.is_empty());
    }

    #[test]
    fn godeaux_leaves_only_degree_raising_pairs() {
        let ext = extend_degrees(&[0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0], 1);
        let zero: Vec<Link> = hom_vanishing_from_degrees(&ext, surface()).unwrap().into_iter().map(|u| u.0).collect();
        let open: Vec<Link> = QualitativeExtTable::new(11, 2)
            .all_links()
            .into_iter()
            .filter(|l| !zero.contains(l))
            .collect();
        let expected: Vec<Link> = [(1, 3), (1, 7), (2, 3), (2, 7), (4, 7), (5, 7), (6, 7)]
            .into_iter()
            .map(|(i, j)| Link::forward(i, j))
            .collect();
        assert_eq!(open, expected);
    }

    #[test]
    fn degree_rule_needs_flags() {
        assert!(hom_vanishing_from_degrees(&[1, 0], Flags::default()).is_err());
    }

    #[test]
    fn conflicting_statuses_are_rejected() {
        let mut t = QualitativeExtTable::new(2, 2);
        let l = Link::forward(1, 2);
        assert!(t.set(l, 1, ExtStatus::Zero).unwrap());
        assert!(!t.set(l, 1, ExtStatus::Zero).unwrap());
        assert!(t.set(l, 1, ExtStatus::Nonzero).is_err());
    }

    #[test]
    fn link_normalisation() {
        assert_eq!(Link::new(4, 5, 7).unwrap(), Link::forward(1, 3));
        assert!(Link::new(4, 2, 1).is_err());
        assert!(Link::new(4, 1, 6).is_err());
        assert_eq!(Link::new(4, 3, 6).unwrap().space(4, 2), (SpaceId::N(2, 3), 2));
    }

    #[test]
    fn se_intervals() {
        let mut t = QualitativeExtTable::new(2, 2);
        let l = Link::forward(1, 2);
        assert_eq!(t.se_interval(l), (ExtInt::NegInf, ExtInt::PosInf));
        t.set_sheaf_range(0, 2).unwrap();
        t.set(l, 0, ExtStatus::Zero).unwrap();
        assert_eq!(t.se_interval(l), (ExtInt::Fin(1), ExtInt::PosInf));
        t.set(l, 2, ExtStatus::Nonzero).unwrap();
        assert_eq!(t.se_interval(l), (ExtInt::Fin(1), ExtInt::Fin(2)));
        t.set(l, 1, ExtStatus::Zero).unwrap();
        assert_eq!(t.se_interval(l), (ExtInt::Fin(2), ExtInt::Fin(2)));
    }
}
