//! Input model for exceptional collections.
//!
//! A collection `E_1, ..., E_n` is described by a minimal A∞ model of its
//! Ext algebra together with the bimodule `N(i, j) = Ext(E_j, S⁻¹E_i)`:
//! graded dimensions, structure constants of `m_2` and of any supplied
//! higher products, and optional qualitative vanishing knowledge for
//! examples where only partial data is available.
//!
//! Objects are numbered from 1. Morphism spaces are
//!
//! * `A(i, j) = Ext(E_i, E_j)` for `i < j` (`A(i, i)` is the ground field),
//! * `N(i, j) = Ext(E_j, S⁻¹E_i)` for `i ≤ j`.
//!
//! Products act on composable words written in diagrammatic order. A word
//! either consists of `A` factors only, or has the shape
//! `A … A N A … A`, where the factors after `N` act through `S⁻¹`.

mod document;
mod qualitative;
pub(crate) mod validate;

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::exactlin::FieldKind;

pub use document::{parse, parse_str, serialize, serialize_value};
pub use qualitative::{
    extend_degrees, hom_vanishing_from_degrees, ExtStatus, Link, QualFact, QualitativeExtTable, TableOptions,
};
pub use validate::{validate, Check, ValidationReport};

pub type Obj = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("{path}: {msg}")]
    Malformed { path: String, msg: String },
    #[error("{path}: index {index} out of range 1..={n}")]
    DanglingIndex { path: String, index: i64, n: usize },
    #[error("{path}: negative dimension {dim}")]
    NegativeDim { path: String, dim: i64 },
    #[error("{path}: exceptionality violated: {msg}")]
    Exceptionality { path: String, msg: String },
    #[error("inconsistent qualitative data for link {link:?} in degree {deg}: {msg}")]
    Inconsistent { link: (usize, usize), deg: i64, msg: String },
    #[error("{0}")]
    Inapplicable(String),
}

/// Nonzero dimensions of a graded vector space, by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut g = Self::new();
        for (d, k) in pairs {
            g.add(d, k);
        }
        g
    }

    /// Adds `dim` to the given degree.
    pub fn add(&mut self, deg: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(deg).or_default() += dim;
        }
    }

    pub fn get(&self, deg: i64) -> usize {
        self.0.get(&deg).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(d, k)| (*d, *k))
    }
}

/// A morphism space of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    /// `Ext(E_i, E_j)`, `i < j`.
    A(Obj, Obj),
    /// `Ext(E_j, S⁻¹E_i)`, `i ≤ j`.
    N(Obj, Obj),
}

impl std::fmt::Display for SpaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceId::A(i, j) => write!(f, "A({i},{j})"),
            SpaceId::N(i, j) => write!(f, "N({i},{j})"),
        }
    }
}

/// Object path of a composable word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `A(b_0,b_1) ⊗ … ⊗ A(b_{k-1},b_k) → A(b_0,b_k)`.
    Pure(Vec<Obj>),
    /// `A(b_0,b_1) ⊗ … ⊗ A(b_{r-1},b_r) ⊗ N(c_0,b_r) ⊗ A(c_0,c_1) ⊗ … ⊗ A(c_{s-1},c_s) → N(c_s,b_0)`
    /// with `left = [b_0..b_r]` and `right = [c_0..c_s]`.
    Bimodule { left: Vec<Obj>, right: Vec<Obj> },
}

impl Shape {
    /// `A(j,l)` composed after `A(i,j)`.
    pub fn aa(i: Obj, j: Obj, l: Obj) -> Self {
        Shape::Pure(vec![i, j, l])
    }

    /// `A(j1,j2) ⊗ N(i,j2) → N(i,j1)`.
    pub fn an(i: Obj, j1: Obj, j2: Obj) -> Self {
        Shape::Bimodule { left: vec![j1, j2], right: vec![i] }
    }

    /// `N(i1,j) ⊗ A(i1,i2) → N(i2,j)`.
    pub fn na(i1: Obj, i2: Obj, j: Obj) -> Self {
        Shape::Bimodule { left: vec![j], right: vec![i1, i2] }
    }

    pub fn arity(&self) -> usize {
        match self {
            Shape::Pure(c) => c.len() - 1,
            Shape::Bimodule { left, right } => left.len() + right.len() - 1,
        }
    }

    pub fn inputs(&self) -> Vec<SpaceId> {
        match self {
            Shape::Pure(c) => c.windows(2).map(|w| SpaceId::A(w[0], w[1])).collect(),
            Shape::Bimodule { left, right } => {
                let mut v: Vec<_> = left.windows(2).map(|w| SpaceId::A(w[0], w[1])).collect();
                v.push(SpaceId::N(right[0], *left.last().unwrap()));
                v.extend(right.windows(2).map(|w| SpaceId::A(w[0], w[1])));
                v
            }
        }
    }

    pub fn output(&self) -> SpaceId {
        match self {
            Shape::Pure(c) => SpaceId::A(c[0], *c.last().unwrap()),
            Shape::Bimodule { left, right } => SpaceId::N(*right.last().unwrap(), left[0]),
        }
    }

    /// Position of the `N` input, if any.
    pub fn n_position(&self) -> Option<usize> {
        match self {
            Shape::Pure(_) => None,
            Shape::Bimodule { left, .. } => Some(left.len() - 1),
        }
    }

    /// Checks index ranges, strict monotonicity, and that the output space exists.
    pub fn check(&self, n: usize) -> Result<(), String> {
        let increasing = |c: &[Obj]| c.windows(2).all(|w| w[0] < w[1]);
        let in_range = |c: &[Obj]| c.iter().all(|&x| x >= 1 && x <= n);
        match self {
            Shape::Pure(c) => {
                if c.len() < 3 {
                    return Err("a product needs at least two inputs".into());
                }
                if !in_range(c) || !increasing(c) {
                    return Err(format!("chain {c:?} is not strictly increasing within 1..={n}"));
                }
            }
            Shape::Bimodule { left, right } => {
                if left.is_empty() || right.is_empty() || left.len() + right.len() < 3 {
                    return Err("a bimodule product needs at least two inputs".into());
                }
                if !in_range(left) || !in_range(right) || !increasing(left) || !increasing(right) {
                    return Err(format!("paths {left:?} / {right:?} are not strictly increasing within 1..={n}"));
                }
                if right[right.len() - 1] > left[0] {
                    return Err(format!("output N({},{}) lies outside the bimodule", right[right.len() - 1], left[0]));
                }
            }
        }
        Ok(())
    }
}

/// A product is keyed by its word shape and the degrees of its inputs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductKey {
    pub shape: Shape,
    pub degs: Vec<i64>,
}

impl ProductKey {
    pub fn new(shape: Shape, degs: Vec<i64>) -> Self {
        Self { shape, degs }
    }

    pub fn arity(&self) -> usize {
        self.shape.arity()
    }

    /// Output degree forced by `|m_k| = 2 - k`.
    pub fn additive_out_deg(&self) -> i64 {
        self.degs.iter().sum::<i64>() + 2 - self.arity() as i64
    }
}

/// Structure constants of one product: input basis tuple ↦ output coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub out_deg: i64,
    pub entries: BTreeMap<Vec<usize>, BTreeMap<usize, BigRational>>,
}

impl Product {
    pub fn new(out_deg: i64) -> Self {
        Self { out_deg, entries: BTreeMap::new() }
    }

    /// Adds `coef` to the coefficient of output `out` on input tuple `input`.
    pub fn add(&mut self, input: Vec<usize>, out: usize, coef: BigRational) {
        use num_traits::Zero;
        let row = self.entries.entry(input.clone()).or_default();
        let v = row.entry(out).or_insert_with(BigRational::zero);
        *v += coef;
        if v.is_zero() {
            row.remove(&out);
            if row.is_empty() {
                self.entries.remove(&input);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObjectMeta {
    pub label: Option<String>,
    /// `c_1(E_i) · K_X`, when known.
    pub canonical_degree: Option<i64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Flags {
    pub is_surface: bool,
    pub ample_canonical: bool,
    pub line_bundles: bool,
    pub h2_anticanonical_nonzero: bool,
}

/// A multilinear tensor on chain terms: used for fullness candidates and pairings.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorTerm {
    /// `a_0 < … < a_p`.
    pub chain: Vec<Obj>,
    /// Degrees of `A(a_0,a_1), …, A(a_{p-1},a_p), N(a_0,a_p)`.
    pub degs: Vec<i64>,
    pub entries: BTreeMap<Vec<usize>, BigRational>,
}

/// Fullness certificate data shipped with a collection.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Certificate {
    pub xi: Vec<TensorTerm>,
    /// Per object `i`, the functional `m_{p+2}(- ⊗ η_i)` on chain terms with `a_0 = i`.
    pub pairing: BTreeMap<Obj, Vec<TensorTerm>>,
}

/// Everything known about one exceptional collection.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionSpec {
    pub n: usize,
    pub dim_x: i64,
    pub field: FieldKind,
    pub objects: Vec<ObjectMeta>,
    /// `A(i,j)` for `i < j`; absent means zero.
    pub ext: BTreeMap<(Obj, Obj), GradedDims>,
    /// `N(i,j)` for `i ≤ j`; absent means zero.
    pub serre: BTreeMap<(Obj, Obj), GradedDims>,
    pub products: BTreeMap<ProductKey, Product>,
    /// Products of arity up to this bound are completely specified. `None`: all of them.
    pub known_arity: Option<usize>,
    /// Whether `ext`/`serre` list every nonzero graded piece.
    pub exact: bool,
    pub qualitative: Vec<QualFact>,
    pub flags: Flags,
    pub k_squared: Option<i64>,
    pub metadata: BTreeMap<String, serde_json::Value>,
    pub certificate: Option<Certificate>,
}

impl CollectionSpec {
    /// An exact spec with no morphisms at all.
    pub fn empty(n: usize, dim_x: i64) -> Self {
        Self {
            n,
            dim_x,
            field: FieldKind::Rational,
            objects: vec![ObjectMeta::default(); n],
            ext: BTreeMap::new(),
            serre: BTreeMap::new(),
            products: BTreeMap::new(),
            known_arity: None,
            exact: true,
            qualitative: Vec::new(),
            flags: Flags::default(),
            k_squared: None,
            metadata: BTreeMap::new(),
            certificate: None,
        }
    }

    pub fn dims(&self, space: SpaceId) -> Option<&GradedDims> {
        match space {
            SpaceId::A(i, j) => self.ext.get(&(i, j)),
            SpaceId::N(i, j) => self.serre.get(&(i, j)),
        }
        .filter(|g| !g.is_zero())
    }

    pub fn dim(&self, space: SpaceId, deg: i64) -> usize {
        self.dims(space).map_or(0, |g| g.get(deg))
    }

    pub fn set_dims(&mut self, space: SpaceId, dims: GradedDims) {
        let map = match space {
            SpaceId::A(i, j) => {
                assert!(i < j, "A({i},{j}) would point backwards");
                &mut self.ext
            }
            SpaceId::N(i, j) => {
                assert!(i <= j, "N({i},{j}) lies outside the bimodule");
                &mut self.serre
            }
        };
        let key = match space {
            SpaceId::A(i, j) | SpaceId::N(i, j) => (i, j),
        };
        if dims.is_zero() {
            map.remove(&key);
        } else {
            map.insert(key, dims);
        }
    }

    pub fn product(&self, key: &ProductKey) -> Option<&Product> {
        self.products.get(key)
    }

    /// Mutable access to a product, creating it with the additive output degree.
    pub fn product_mut(&mut self, key: ProductKey) -> &mut Product {
        let deg = key.additive_out_deg();
        self.products.entry(key).or_insert_with(|| Product::new(deg))
    }

    pub fn max_arity(&self) -> usize {
        self.products.keys().map(ProductKey::arity).max().unwrap_or(2).max(2)
    }

    /// Whether products of the given arity are part of the supplied data.
    pub fn arity_known(&self, k: usize) -> bool {
        self.known_arity.is_none_or(|a| k <= a)
    }

    /// Canonical degrees of all objects, if every one is present.
    pub fn canonical_degrees(&self) -> Option<Vec<i64>> {
        self.objects.iter().map(|o| o.canonical_degree).collect()
    }
}
