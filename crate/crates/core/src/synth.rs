//! Random collections with a genuine A∞ structure, for property tests.
//!
//! Each object `i` gets a graded vector space `V_i`. Morphisms `A(i,j)` are
//! the graded maps `V_i → V_j` for pairs in a random transitive relation, and
//! `N(i,j)` are the maps `V_j → V_i`, shifted. Composition makes this a graded
//! category with a bimodule; the part of the bimodule with `i > j` is a
//! sub-bimodule, so dropping it leaves a quotient. A random change of basis
//! hides the matrix units, and an optional gauge by a binary map `φ` adds a
//! nonzero `m_3`. With at most four objects no word has arity five, so
//! `m_4` never enters a relation and may be left out.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collection::validate::{convert_products, split, ProductTable};
use crate::collection::{CollectionSpec, GradedDims, Obj, ProductKey, Shape, SpaceId};
use crate::exactlin::Rationals;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    /// At most 4, see the module docs.
    pub n: usize,
    /// Largest dimension of each graded piece of `V_i`.
    pub max_dim: usize,
    /// Probability that a pair `i < j` is put in the relation before closing it.
    pub density: f64,
    /// Degree shift of the bimodule, also used as `dim X`.
    pub shift: i64,
    pub basis_change: bool,
    pub gauge: bool,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self { n: 3, max_dim: 1, density: 0.7, shift: 1, basis_change: true, gauge: true }
    }
}

type Q = BigRational;
type Dense = Vec<Vec<Q>>;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

struct Model {
    n: usize,
    rel: BTreeSet<(Obj, Obj)>,
    /// Degree of every basis vector of `V_i`, 0-based in `i`.
    v: Vec<Vec<i64>>,
    shift: i64,
}

impl Model {
    /// Source and target object of the maps making up a space, plus its degree shift.
    fn maps(&self, space: SpaceId) -> (Obj, Obj, i64) {
        match space {
            SpaceId::A(i, j) => (i, j, 0),
            SpaceId::N(i, j) => (j, i, self.shift),
        }
    }

    fn exists(&self, space: SpaceId) -> bool {
        match space {
            SpaceId::A(i, j) => self.rel.contains(&(i, j)),
            SpaceId::N(i, j) => i <= j,
        }
    }

    /// Matrix units `u ↦ w` of the given degree, as `(u, w)`.
    fn units(&self, space: SpaceId, deg: i64) -> Vec<(usize, usize)> {
        if !self.exists(space) {
            return Vec::new();
        }
        let (a, b, s) = self.maps(space);
        let mut out = Vec::new();
        for (u, du) in self.v[a - 1].iter().enumerate() {
            for (w, dw) in self.v[b - 1].iter().enumerate() {
                if dw - du + s == deg {
                    out.push((u, w));
                }
            }
        }
        out
    }

    fn dims(&self, space: SpaceId) -> GradedDims {
        let mut g = GradedDims::new();
        if self.exists(space) {
            for d in -1 + self.maps(space).2..=1 + self.maps(space).2 {
                let k = self.units(space, d).len();
                if k > 0 {
                    g.add(d, k);
                }
            }
        }
        g
    }
}

fn random_unitriangular(rng: &mut ChaCha8Rng, d: usize) -> (Dense, Dense) {
    let mut p: Dense = (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for (i, row) in p.iter_mut().enumerate() {
        for x in row.iter_mut().skip(i + 1) {
            *x = q(rng.gen_range(-1..=2));
        }
    }
    // back substitution for the inverse of a unit upper triangular matrix
    let mut inv: Dense = vec![vec![Q::zero(); d]; d];
    for j in 0..d {
        for i in (0..=j).rev() {
            let mut s = if i == j { Q::one() } else { Q::zero() };
            for k in i + 1..=j {
                s -= &p[i][k] * &inv[k][j];
            }
            inv[i][j] = s;
        }
    }
    (p, inv)
}

struct Bases {
    change: bool,
    mats: HashMap<(SpaceId, i64), (Dense, Dense)>,
}

impl Bases {
    fn get(&mut self, rng: &mut ChaCha8Rng, key: (SpaceId, i64), d: usize) -> &(Dense, Dense) {
        let change = self.change;
        self.mats.entry(key).or_insert_with(|| {
            if change {
                random_unitriangular(rng, d)
            } else {
                let id: Dense =
                    (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
                (id.clone(), id)
            }
        })
    }
}

fn binary_shapes(m: &Model) -> Vec<Shape> {
    let n = m.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                if m.rel.contains(&(i, j)) && m.rel.contains(&(j, l)) {
                    out.push(Shape::aa(i, j, l));
                }
                // AN: (i, j, l) = (i, j1, j2)
                if i <= j && m.rel.contains(&(j, l)) {
                    out.push(Shape::an(i, j, l));
                }
                // NA: (i, j, l) = (i1, i2, j)
                if j <= l && m.rel.contains(&(i, j)) {
                    out.push(Shape::na(i, j, l));
                }
            }
        }
    }
    out
}

fn increasing_paths(m: &Model, len: usize) -> Vec<Vec<Obj>> {
    let mut paths: Vec<Vec<Obj>> = (1..=m.n).map(|i| vec![i]).collect();
    for _ in 1..len {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                (last + 1..=m.n).filter(move |&j| m.rel.contains(&(last, j))).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    paths
}

fn ternary_shapes(m: &Model) -> Vec<Shape> {
    let mut out: Vec<Shape> = increasing_paths(m, 4).into_iter().map(Shape::Pure).collect();
    for l in 1..=3 {
        for left in increasing_paths(m, l) {
            for right in increasing_paths(m, 4 - l) {
                if right.last() <= left.first() {
                    out.push(Shape::Bimodule { left: left.clone(), right });
                }
            }
        }
    }
    out
}

/// All degree tuples for the inputs of a shape.
fn degree_tuples(spec: &CollectionSpec, shape: &Shape) -> Vec<Vec<i64>> {
    let mut tuples = vec![Vec::new()];
    for space in shape.inputs() {
        let degs: Vec<i64> = spec.dims(space).map(|g| g.iter().map(|(d, _)| d).collect()).unwrap_or_default();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                degs.iter().map(move |d| {
                    let mut u = t.clone();
                    u.push(*d);
                    u
                })
            })
            .collect();
    }
    tuples
}

/// Composition of two matrix-unit basis vectors, in the order they are applied.
fn compose(m: &Model, shape: &Shape, degs: &[i64], a: usize, b: usize) -> Option<(usize, usize)> {
    let ins = shape.inputs();
    let (u, w) = m.units(ins[0], degs[0])[a];
    let (w2, z) = m.units(ins[1], degs[1])[b];
    (w == w2).then_some((u, z))
}

/// A random collection satisfying every A∞ relation that can occur.
pub fn random_spec(seed: u64, params: SynthParams) -> CollectionSpec {
    assert!((1..=4).contains(&params.n), "synthetic collections have between 1 and 4 objects");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let v: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            let mut degs = Vec::new();
            while degs.is_empty() {
                for d in 0..=1 {
                    let k = rng.gen_range(0..=params.max_dim);
                    degs.extend(std::iter::repeat_n(d, k));
                }
            }
            degs
        })
        .collect();
    let mut rel = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(params.density) {
                rel.insert((i, j));
            }
        }
    }
    // transitive closure
    loop {
        let extra: Vec<(Obj, Obj)> = rel
            .iter()
            .flat_map(|&(i, j)| rel.iter().filter(move |&&(j2, _)| j2 == j).map(move |&(_, l)| (i, l)))
            .filter(|p| !rel.contains(p))
            .collect();
        if extra.is_empty() {
            break;
        }
        rel.extend(extra);
    }
    let model = Model { n, rel, v, shift: params.shift };

    let mut spec = CollectionSpec::empty(n, params.shift);
    for i in 1..=n {
        for j in i..=n {
            for space in [SpaceId::A(i, j), SpaceId::N(i, j)] {
                if (i < j || matches!(space, SpaceId::N(..))) && model.exists(space) {
                    let g = model.dims(space);
                    if !g.is_zero() {
                        spec.set_dims(space, g);
                    }
                }
            }
        }
    }

    let mut bases = Bases { change: params.basis_change, mats: HashMap::new() };
    for shape in binary_shapes(&model) {
        for degs in degree_tuples(&spec, &shape) {
            let ins = shape.inputs();
            let out_space = shape.output();
            let out_deg = degs[0] + degs[1];
            let dout = spec.dim(out_space, out_deg);
            if dout == 0 {
                continue;
            }
            let (d1, d2) = (spec.dim(ins[0], degs[0]), spec.dim(ins[1], degs[1]));
            let (p1, _) = bases.get(&mut rng, (ins[0], degs[0]), d1).clone();
            let (p2, _) = bases.get(&mut rng, (ins[1], degs[1]), d2).clone();
            let (_, pinv) = bases.get(&mut rng, (out_space, out_deg), dout).clone();
            let key = ProductKey::new(shape.clone(), degs.clone());
            for a in 0..d1 {
                for b in 0..d2 {
                    let mut old = vec![Q::zero(); dout];
                    for x in 0..d1 {
                        for y in 0..d2 {
                            let c = &p1[x][a] * &p2[y][b];
                            if c.is_zero() {
                                continue;
                            }
                            if let Some(unit) = compose(&model, &shape, &degs, x, y) {
                                let idx = model.units(out_space, out_deg).iter().position(|&e| e == unit).unwrap();
                                old[idx] += c;
                            }
                        }
                    }
                    for (o, row) in pinv.iter().enumerate() {
                        let c: Q = row.iter().zip(&old).map(|(r, x)| r * x).sum();
                        if !c.is_zero() {
                            spec.product_mut(key.clone()).add(vec![a, b], o, c);
                        }
                    }
                }
            }
        }
    }
    spec.products.retain(|_, p| !p.is_zero());

    if params.gauge {
        add_gauge(&mut rng, &model, &mut spec);
    }
    spec.metadata.insert("description".into(), serde_json::json!(format!("synthetic collection, seed {seed}")));
    spec
}

/// Adds `m_3 = φ(m_2 ⊗ 1) - φ(1 ⊗ m_2) + m_2(φ ⊗ 1) - (-1)^{|x_1|} m_2(1 ⊗ φ)` for a random `φ` of degree `-1`.
///
/// This is the arity-3 component of the transported structure under the
/// A∞ isomorphism with components `id` and `φ`.
fn add_gauge(rng: &mut ChaCha8Rng, model: &Model, spec: &mut CollectionSpec) {
    let mut phi = CollectionSpec::empty(spec.n, spec.dim_x);
    phi.ext = spec.ext.clone();
    phi.serre = spec.serre.clone();
    for shape in binary_shapes(model) {
        for degs in degree_tuples(spec, &shape) {
            let out_deg = degs[0] + degs[1] - 1;
            let ins = shape.inputs();
            let dout = spec.dim(shape.output(), out_deg);
            let (d1, d2) = (spec.dim(ins[0], degs[0]), spec.dim(ins[1], degs[1]));
            if dout == 0 {
                continue;
            }
            let mut prod = crate::collection::Product::new(out_deg);
            for a in 0..d1 {
                for b in 0..d2 {
                    for o in 0..dout {
                        if rng.gen_bool(0.5) {
                            let c = rng.gen_range(-2..=2);
                            if c != 0 {
                                prod.add(vec![a, b], o, q(c));
                            }
                        }
                    }
                }
            }
            if !prod.is_zero() {
                phi.products.insert(ProductKey::new(shape.clone(), degs), prod);
            }
        }
    }
    let m2 = convert_products(&Rationals, spec).expect("rational coefficients");
    let ph = convert_products(&Rationals, &phi).expect("rational coefficients");
    for word in ternary_shapes(model) {
        for degs in degree_tuples(spec, &word) {
            let mut acc: BTreeMap<(Vec<usize>, usize), Q> = BTreeMap::new();
            let x1_odd = degs[0].rem_euclid(2) == 1;
            // (outer, inner, position of the inner segment, sign)
            let terms = [(&ph, &m2, 0, 1), (&ph, &m2, 1, -1), (&m2, &ph, 1, if x1_odd { 1 } else { -1 }), (&m2, &ph, 0, 1)];
            for (outer, inner, r, sign) in terms {
                compose_into(outer, inner, &word, &degs, r, q(sign), &mut acc);
            }
            acc.retain(|_, c| !c.is_zero());
            if acc.is_empty() {
                continue;
            }
            let key = ProductKey::new(word.clone(), degs.clone());
            let out_deg = key.additive_out_deg();
            if spec.dim(word.output(), out_deg) == 0 {
                continue;
            }
            let prod = spec.product_mut(key);
            for ((input, out), c) in acc {
                prod.add(input, out, c);
            }
        }
    }
}

/// Adds `sign · outer(… ⊗ inner(x_r, x_{r+1}) ⊗ …)` evaluated on every basis tuple of `word`.
fn compose_into(
    outer: &ProductTable<Q>,
    inner: &ProductTable<Q>,
    word: &Shape,
    degs: &[i64],
    r: usize,
    sign: Q,
    acc: &mut BTreeMap<(Vec<usize>, usize), Q>,
) {
    let Some((ishape, oshape)) = split(word, r, 2) else { return };
    let Some((mid, irows)) = inner.get(&ProductKey::new(ishape, degs[r..r + 2].to_vec())) else { return };
    let mut odegs = degs[..r].to_vec();
    odegs.push(*mid);
    odegs.extend_from_slice(&degs[r + 2..]);
    let Some((_, orows)) = outer.get(&ProductKey::new(oshape, odegs)) else { return };
    for (iin, iout, ic) in irows {
        for (oin, oout, oc) in orows.iter().filter(|row| row.0[r] == *iout) {
            let mut full = oin[..r].to_vec();
            full.extend_from_slice(iin);
            full.extend_from_slice(&oin[r + 1..]);
            *acc.entry((full, *oout)).or_insert_with(Q::zero) += &sign * ic * oc;
        }
    }
}
