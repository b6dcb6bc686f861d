//! Relative heights, the pseudoheight and its interval version over
//! qualitative vanishing data.

use std::fmt;

use thiserror::Error;

use crate::collection::{CollectionSpec, ExtStatus, GradedDims, Link, ModelError, Obj, QualitativeExtTable, SpaceId};
use crate::extint::ExtInt;

/// Chains are enumerated as subsets of `{1..n}`.
pub const MAX_OBJECTS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhError {
    #[error("the spec only carries qualitative data; exact dimensions are required")]
    NotExact,
    #[error("{0} objects exceed the chain enumeration limit of {MAX_OBJECTS}")]
    TooLarge(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A strictly increasing sequence `a_0 < … < a_p` of object indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(pub Vec<Obj>);

impl Chain {
    /// The number of steps `p`.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn indices(&self) -> &[Obj] {
        &self.0
    }

    /// Links of the extended collection traversed by the chain, closing link last.
    pub fn links(&self, n: usize) -> Vec<Link> {
        let c = &self.0;
        let mut v: Vec<Link> = c.windows(2).map(|w| Link::forward(w[0], w[1])).collect();
        v.push(Link::twisted(n, *c.last().unwrap(), c[0]));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All chains in `{1..n}`, in subset-bitmask order.
pub fn chains(n: usize) -> Result<impl Iterator<Item = Chain>, PhError> {
    if n > MAX_OBJECTS {
        return Err(PhError::TooLarge(n));
    }
    Ok((1u32..(1u32 << n)).map(move |mask| Chain((0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())))
}

/// Least degree with a nonzero piece, `+∞` for the zero space.
pub fn rel_height(space: &GradedDims) -> ExtInt {
    space.min_degree().map_or(ExtInt::PosInf, ExtInt::Fin)
}

/// Orders candidates by value, then by chain length, then lexicographically.
fn better(value: ExtInt, chain: &Chain, best: &Option<(ExtInt, Chain)>) -> bool {
    match best {
        None => true,
        Some((v, c)) => (value, chain.length(), &chain.0) < (*v, c.length(), &c.0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudoheight {
    pub ph: ExtInt,
    /// `ph - dim X`.
    pub ph_ac: ExtInt,
    /// A chain realising the minimum: shortest first, then lexicographically least.
    pub witness: Option<Chain>,
}

/// `se(E_{a_0},E_{a_1}) + … + se(E_{a_p}, S⁻¹E_{a_0}) - p` for one chain.
pub fn chain_value(spec: &CollectionSpec, chain: &Chain) -> ExtInt {
    let c = &chain.0;
    let empty = GradedDims::new();
    let mut v = ExtInt::Fin(-(chain.length() as i64));
    for w in c.windows(2) {
        v = v + rel_height(spec.dims(SpaceId::A(w[0], w[1])).unwrap_or(&empty));
    }
    v + rel_height(spec.dims(SpaceId::N(c[0], *c.last().unwrap())).unwrap_or(&empty))
}

/// Minimum of [`chain_value`] over all chains.
pub fn pseudoheight(spec: &CollectionSpec) -> Result<Pseudoheight, PhError> {
    if !spec.exact {
        return Err(PhError::NotExact);
    }
    let mut best: Option<(ExtInt, Chain)> = None;
    for chain in chains(spec.n)? {
        let v = chain_value(spec, &chain);
        if v.is_finite() && better(v, &chain, &best) {
            best = Some((v, chain));
        }
    }
    Ok(match best {
        Some((ph, c)) => Pseudoheight { ph, ph_ac: ph + -spec.dim_x, witness: Some(c) },
        None => Pseudoheight { ph: ExtInt::PosInf, ph_ac: ExtInt::PosInf, witness: None },
    })
}

/// Interval for the anticanonical pseudoheight derived from a qualitative table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhBounds {
    pub ac_lower: ExtInt,
    pub ac_upper: ExtInt,
    /// Chain realising the upper bound (shortest first).
    pub witness: Option<Chain>,
    /// Chain realising the lower bound.
    pub lower_witness: Option<Chain>,
    pub dim_x: i64,
}

impl PhBounds {
    /// Bounds on the pseudoheight itself.
    pub fn lower(&self) -> ExtInt {
        self.ac_lower + self.dim_x
    }

    pub fn upper(&self) -> ExtInt {
        self.ac_upper + self.dim_x
    }

    pub fn is_point(&self) -> bool {
        self.ac_lower == self.ac_upper && self.ac_lower.is_finite()
    }
}

/// Interval arithmetic on relative heights over every chain.
///
/// A link known to vanish in all degrees up to `d` contributes at least `d + 1`;
/// a link known to be nonzero in degree `d` contributes at most `d`.
pub fn qualitative_ph_bounds(table: &QualitativeExtTable) -> Result<PhBounds, PhError> {
    let n = table.n();
    let mut lo_best: Option<(ExtInt, Chain)> = None;
    let mut hi_best: Option<(ExtInt, Chain)> = None;
    for chain in chains(n)? {
        let mut lo = ExtInt::Fin(-(chain.length() as i64));
        let mut hi = lo;
        for link in chain.links(n) {
            let (l, h) = table.se_interval(link);
            lo = lo + l;
            hi = hi + h;
        }
        if better(lo, &chain, &lo_best) {
            lo_best = Some((lo, chain.clone()));
        }
        if better(hi, &chain, &hi_best) {
            hi_best = Some((hi, chain));
        }
    }
    let (ac_lower, lower_witness) = lo_best.map_or((ExtInt::PosInf, None), |(v, c)| (v, Some(c)));
    let (ac_upper, witness) = match hi_best {
        Some((v, c)) if v.is_finite() => (v, Some(c)),
        _ => (ExtInt::PosInf, None),
    };
    Ok(PhBounds { ac_lower, ac_upper, witness, lower_witness, dim_x: table.dim_x() })
}

/// Three-valued truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "true",
            Tri::No => "false",
            Tri::Unknown => "unknown",
        }
    }
}

/// Whether every link of the extended collection has vanishing `Hom`.
pub fn hom_free(table: &QualitativeExtTable) -> Tri {
    let statuses: Vec<ExtStatus> = table.all_links().into_iter().map(|l| table.status(l, 0)).collect();
    if statuses.iter().all(|s| *s == ExtStatus::Zero) {
        Tri::Yes
    } else if statuses.contains(&ExtStatus::Nonzero) {
        Tri::No
    } else {
        Tri::Unknown
    }
}

/// Whether some chain has nonzero `Ext¹` along every link, closing link included.
pub fn cyclically_ext1_connected(table: &QualitativeExtTable) -> Result<(Tri, Option<Chain>), PhError> {
    let n = table.n();
    let mut undecided = false;
    for chain in chains(n)? {
        let statuses: Vec<ExtStatus> = chain.links(n).into_iter().map(|l| table.status(l, 1)).collect();
        if statuses.iter().all(|s| *s == ExtStatus::Nonzero) {
            return Ok((Tri::Yes, Some(chain)));
        }
        if !statuses.contains(&ExtStatus::Zero) {
            undecided = true;
        }
    }
    Ok((if undecided { Tri::Unknown } else { Tri::No }, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::TableOptions;

    fn point() -> CollectionSpec {
        let mut s = CollectionSpec::empty(1, 0);
        s.set_dims(SpaceId::N(1, 1), GradedDims::from_pairs([(0, 1)]));
        s
    }

    #[test]
    fn rel_height_examples() {
        assert_eq!(rel_height(&GradedDims::from_pairs([(0, 2), (1, 3)])), ExtInt::Fin(0));
        assert_eq!(rel_height(&GradedDims::new()), ExtInt::PosInf);
        assert_eq!(rel_height(&GradedDims::from_pairs([(2, 5)])), ExtInt::Fin(2));
    }

    #[test]
    fn point_has_pseudoheight_zero() {
        let ph = pseudoheight(&point()).unwrap();
        assert_eq!(ph.ph, ExtInt::Fin(0));
        assert_eq!(ph.witness, Some(Chain(vec![1])));
    }

    #[test]
    fn no_morphisms_gives_infinity() {
        let ph = pseudoheight(&CollectionSpec::empty(3, 1)).unwrap();
        assert_eq!(ph.ph, ExtInt::PosInf);
        assert!(ph.witness.is_none());
    }

    #[test]
    fn chain_enumeration_counts() {
        assert_eq!(chains(4).unwrap().count(), 15);
        assert!(chains(25).is_err());
    }

    #[test]
    fn all_unknown_table_is_unbounded() {
        let t = QualitativeExtTable::new(3, 2);
        let b = qualitative_ph_bounds(&t).unwrap();
        assert_eq!((b.ac_lower, b.ac_upper), (ExtInt::NegInf, ExtInt::PosInf));
        assert_eq!(cyclically_ext1_connected(&t).unwrap().0, Tri::Unknown);
    }

    #[test]
    fn single_object_without_ext1_is_not_connected() {
        let mut t = QualitativeExtTable::new(1, 2);
        t.set(Link::twisted(1, 1, 1), 1, ExtStatus::Zero).unwrap();
        assert_eq!(cyclically_ext1_connected(&t).unwrap(), (Tri::No, None));
    }

    #[test]
    fn exact_table_brackets_pseudoheight() {
        let s = point();
        let t = QualitativeExtTable::from_spec(&s, TableOptions::default()).unwrap();
        let b = qualitative_ph_bounds(&t).unwrap();
        assert_eq!(b.lower(), ExtInt::Fin(0));
        assert_eq!(b.upper(), ExtInt::Fin(0));
    }
}
