//! Built-in collections: Beilinson collections on projective spaces, a
//! point, and encodings of known collections on surfaces of general type.
//!
//! The surface fixtures record vanishing facts rather than computed Ext
//! groups; each carries a `metadata.assumptions` block saying where every
//! encoded fact comes from.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::json;

use crate::collection::{
    Certificate, CollectionSpec, ExtStatus, Flags, GradedDims, Link, ObjectMeta, ProductKey, QualFact, Shape,
    SpaceId, TensorTerm,
};

pub const FIXTURE_NAMES: [&str; 8] =
    ["beauville_I0", "beauville_I1", "beilinson_p1", "beilinson_p2", "beilinson_p3", "burniat", "godeaux", "point"];

/// Looks up a built-in fixture by name.
pub fn fixture(name: &str) -> Option<CollectionSpec> {
    Some(match name {
        "point" => point(),
        "beilinson_p1" => beilinson(2).ok()?,
        "beilinson_p2" => beilinson(3).ok()?,
        "beilinson_p3" => beilinson(4).ok()?,
        "burniat" => burniat(),
        "beauville_I0" => beauville_i0(),
        "beauville_I1" => beauville_i1(),
        "godeaux" => godeaux(),
        _ => return None,
    })
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn dims(pairs: &[(i64, usize)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}

fn labelled(spec: &mut CollectionSpec, prefix: &str, degrees: Option<&[i64]>) {
    for (k, o) in spec.objects.iter_mut().enumerate() {
        *o = ObjectMeta { label: Some(format!("{prefix}{}", k + 1)), canonical_degree: degrees.map(|d| d[k]) };
    }
}

fn surface_flags() -> Flags {
    Flags { is_surface: true, ample_canonical: true, line_bundles: true, h2_anticanonical_nonzero: true }
}

/// A single object with `N(1,1)` the ground field in degree 0.
pub fn point() -> CollectionSpec {
    let mut s = CollectionSpec::empty(1, 0);
    s.set_dims(SpaceId::N(1, 1), dims(&[(0, 1)]));
    s.objects[0].label = Some("pt".into());
    s
}

/// Exponent vectors of the monomials of degree `d` in `m` variables, `x_1^d` first.
pub fn monomials(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(m, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Beilinson fixtures exist for 2 ≤ n ≤ 6, not {0}")]
pub struct FixtureRange(pub usize);

/// The collection `O, O(1), …, O(n-1)` on `P^{n-1}`.
///
/// `A(i,j) = S^{j-i}V` in degree 0 and `N(i,j) = S^{i+n-j}V` in degree `n-1`,
/// with every product given by polynomial multiplication. The certificate is
/// the antisymmetrizer on the full chain together with the determinant
/// functional as pairing for the first object.
pub fn beilinson(n: usize) -> Result<CollectionSpec, FixtureRange> {
    if !(2..=6).contains(&n) {
        return Err(FixtureRange(n));
    }
    let top = (n - 1) as i64;
    let mut s = CollectionSpec::empty(n, top);
    let names: Vec<String> = (0..n).map(|k| if k == 0 { "O".into() } else { format!("O({k})") }).collect();
    for (k, o) in s.objects.iter_mut().enumerate() {
        o.label = Some(names[k].clone());
    }
    let basis: Vec<Vec<Vec<usize>>> = (0..=n).map(|d| monomials(n, d)).collect();
    let position: Vec<BTreeMap<Vec<usize>, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect()).collect();
    for i in 1..=n {
        for j in i..=n {
            if i < j {
                s.set_dims(SpaceId::A(i, j), dims(&[(0, basis[j - i].len())]));
            }
            s.set_dims(SpaceId::N(i, j), dims(&[(top, basis[i + n - j].len())]));
        }
    }
    // multiplication table S^a ⊗ S^b → S^{a+b}
    let mult = |a: usize, b: usize| {
        let mut rows = Vec::new();
        for (x, ma) in basis[a].iter().enumerate() {
            for (y, mb) in basis[b].iter().enumerate() {
                let m: Vec<usize> = ma.iter().zip(mb).map(|(u, v)| u + v).collect();
                rows.push((vec![x, y], position[a + b][&m]));
            }
        }
        rows
    };
    let add = |s: &mut CollectionSpec, shape: Shape, degs: Vec<i64>, a: usize, b: usize| {
        let prod = s.product_mut(ProductKey::new(shape, degs));
        for (input, out) in mult(a, b) {
            prod.add(input, out, one());
        }
    };
    for i in 1..=n {
        for j in i + 1..=n {
            for l in j + 1..=n {
                add(&mut s, Shape::aa(i, j, l), vec![0, 0], j - i, l - j);
            }
        }
    }
    for i in 1..=n {
        for j1 in i..=n {
            for j2 in j1 + 1..=n {
                add(&mut s, Shape::an(i, j1, j2), vec![0, top], j2 - j1, i + n - j2);
            }
        }
    }
    for i1 in 1..=n {
        for i2 in i1 + 1..=n {
            for j in i2..=n {
                add(&mut s, Shape::na(i1, i2, j), vec![top, 0], i1 + n - j, i2 - i1);
            }
        }
    }
    s.certificate = Some(beilinson_certificate(n));
    s.metadata.insert(
        "description".into(),
        json!(format!("line bundles O, ..., O({}) on the projective space of dimension {}", n - 1, n - 1)),
    );
    Ok(s)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (rest, odd) in permutations(n - 1) {
        // insert n-1 at every position; moving it left past k entries flips parity k times
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push((p, odd ^ ((rest.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// Antisymmetrized `x_1 ⊗ … ⊗ x_n` on the chain `(1, …, n)` and the matching determinant functional.
pub fn beilinson_certificate(n: usize) -> Certificate {
    let chain: Vec<usize> = (1..=n).collect();
    let mut degs = vec![0; n - 1];
    degs.push((n - 1) as i64);
    let mut entries = BTreeMap::new();
    for (perm, odd) in permutations(n) {
        let c = if odd { -one() } else { one() };
        entries.insert(perm, c);
    }
    let term = TensorTerm { chain, degs, entries };
    Certificate { xi: vec![term.clone()], pairing: BTreeMap::from([(1, vec![term])]) }
}

fn fact(n: usize, src: usize, dst: usize, deg: i64, status: ExtStatus, source: &str) -> QualFact {
    QualFact { link: Link::new(n, src, dst).expect("fixture links are valid"), deg, status, source: Some(source.into()) }
}

const FROM_CONSTRUCTION: &str = "Ext^1 vanishing between bundles of the collection, from its construction";
const H1_ANTICANONICAL: &str = "H^1 of the anticanonical bundle vanishes";

/// Six line bundles on a surface with `K² = 6`, known only qualitatively.
pub fn burniat() -> CollectionSpec {
    let n = 6;
    let degrees = [3, 3, 2, 2, 2, 0];
    let mut s = CollectionSpec::empty(n, 2);
    s.exact = false;
    s.flags = surface_flags();
    s.k_squared = Some(6);
    labelled(&mut s, "L", Some(&degrees));
    for i in 1..=n {
        for j in i + 1..=n {
            s.qualitative.push(fact(n, i, j, 1, ExtStatus::Zero, FROM_CONSTRUCTION));
        }
    }
    for i in 1..=n {
        s.qualitative.push(fact(n, i, n + i, 1, ExtStatus::Zero, H1_ANTICANONICAL));
    }
    s.metadata.insert("description".into(), json!("exceptional collection of six line bundles on a Burniat surface"));
    s.metadata.insert(
        "assumptions".into(),
        json!({
            "canonical_degrees": "c_1(L_i).K for the six bundles; K^2 = 6",
            "hom_vanishing": "derived from the degrees: K is ample, so Hom(L, L') = 0 when deg L >= deg L'",
            "ext1_forward": FROM_CONSTRUCTION,
            "ext1_diagonal": H1_ANTICANONICAL,
            "h2_anticanonical": "H^2 of the anticanonical bundle is nonzero",
        }),
    );
    s
}

/// Collection `I_1` of four line bundles on the Beauville surface, known only qualitatively.
pub fn beauville_i1() -> CollectionSpec {
    let n = 4;
    let degrees = [0, -2, -2, -4];
    let mut s = CollectionSpec::empty(n, 2);
    s.exact = false;
    s.flags = surface_flags();
    s.k_squared = Some(8);
    labelled(&mut s, "L", Some(&degrees));
    let src = "no Ext^1 from the collection to its anticanonical twist, read off from the character matrices";
    for i in 1..=n {
        for j in 1..=i {
            s.qualitative.push(fact(n, i, n + j, 1, ExtStatus::Zero, src));
        }
    }
    s.metadata.insert("description".into(), json!("exceptional collection I_1 on the Beauville surface"));
    s.metadata.insert(
        "assumptions".into(),
        json!({
            "canonical_degrees": "c_1(L_i).K for the four bundles; K^2 = 8",
            "hom_vanishing": "derived from the degrees via ampleness of K",
            "ext1_twisted": src,
            "h2_anticanonical": "H^2 of the anticanonical bundle is nonzero",
        }),
    );
    s
}

/// Collection `I_0` on the Beauville surface: a dimension model with the products
/// that matter in low total degree, plus the qualitative facts.
pub fn beauville_i0() -> CollectionSpec {
    let n = 4;
    let degrees = [0, -2, -4, -6];
    let mut s = CollectionSpec::empty(n, 2);
    s.flags = surface_flags();
    s.k_squared = Some(8);
    s.known_arity = Some(2);
    labelled(&mut s, "L", Some(&degrees));
    for (i, j) in [(1, 2), (2, 3), (3, 4)] {
        s.set_dims(SpaceId::A(i, j), dims(&[(1, 1)]));
    }
    for (i, j) in [(1, 3), (2, 4), (1, 4)] {
        s.set_dims(SpaceId::A(i, j), dims(&[(2, 1)]));
    }
    for i in 1..=n {
        // H^2 of the anticanonical bundle has dimension K^2 + 1
        s.set_dims(SpaceId::N(i, i), dims(&[(4, 9)]));
        for j in i + 1..=n {
            s.set_dims(SpaceId::N(i, j), dims(&[(4, 1)]));
        }
    }
    s.set_dims(SpaceId::N(1, 4), dims(&[(3, 1)]));
    let products = [
        (Shape::aa(1, 2, 3), vec![1, 1]),
        (Shape::aa(2, 3, 4), vec![1, 1]),
        (Shape::an(1, 3, 4), vec![1, 3]),
        (Shape::na(1, 2, 4), vec![3, 1]),
    ];
    for (shape, degs) in products {
        s.product_mut(ProductKey::new(shape, degs)).add(vec![0, 0], 0, one());
    }
    let src = "Ext^1 along the chain (1,2,3,4) and its closing link";
    for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 5)] {
        s.qualitative.push(fact(n, a, b, 1, ExtStatus::Nonzero, src));
    }
    s.metadata.insert("description".into(), json!("exceptional collection I_0 on the Beauville surface"));
    s.metadata.insert(
        "assumptions".into(),
        json!({
            "canonical_degrees": "c_1(L_i).K for the four bundles; K^2 = 8",
            "dimensions": "a model: one-dimensional Ext^1 along the chain, Ext^2 on the remaining forward pairs, \
                           Ext^3(E_4, S^-1 E_1) one-dimensional, all other twisted spaces in top degree",
            "products": "the compositions Ext^1 x Ext^1 -> Ext^2 along the chain, and the two actions on \
                         Ext^3(E_4, S^-1 E_1), are nonzero; no higher products are supplied",
            "ext1_chain": src,
        }),
    );
    s
}

/// The collection of eleven line bundles on the classical Godeaux surface, as a
/// dimension model carrying the one composition that matters in total degree 3.
pub fn godeaux() -> CollectionSpec {
    let n = 11;
    let degrees = [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0];
    let mut s = CollectionSpec::empty(n, 2);
    s.flags = surface_flags();
    s.k_squared = Some(1);
    s.known_arity = Some(2);
    labelled(&mut s, "L", Some(&degrees));
    let ext1_pairs = [(1, 3), (1, 7), (2, 7), (4, 7), (5, 7), (6, 7)];
    for i in 1..=n {
        for j in i + 1..=n {
            let g = if (i, j) == (2, 3) {
                dims(&[(0, 1), (1, 2)])
            } else if ext1_pairs.contains(&(i, j)) {
                dims(&[(1, 1), (2, 1)])
            } else {
                dims(&[(2, 1)])
            };
            s.set_dims(SpaceId::A(i, j), g);
        }
    }
    for i in 1..=n {
        // H^2 of the anticanonical bundle is H^0(2K)^*, of dimension 2
        s.set_dims(SpaceId::N(i, i), dims(&[(4, 2)]));
        for j in i + 1..=n {
            s.set_dims(SpaceId::N(i, j), dims(&[(4, 1)]));
        }
    }
    s.set_dims(SpaceId::N(2, 3), dims(&[(4, 2)]));
    // Hom(E_2,E_3) ⊗ Ext^2(E_3, E_2(-K)) → Ext^2(E_2, E_2(-K)) is injective
    let prod = s.product_mut(ProductKey::new(Shape::an(2, 2, 3), vec![0, 4]));
    prod.add(vec![0, 0], 0, one());
    prod.add(vec![0, 1], 1, one());
    s.metadata.insert("description".into(), json!("exceptional collection of eleven line bundles on the classical Godeaux surface"));
    s.metadata.insert(
        "assumptions".into(),
        json!({
            "canonical_degrees": "c_1(L_i).K for the eleven bundles; K^2 = 1",
            "hom": "Hom is nonzero only from E_2 to E_3, one-dimensional",
            "e3_e2": "Hom and Ext^1 from E_3 to E_2(-K) vanish and Ext^2 is two-dimensional",
            "candidate_chains": "on the chains (1,3),(1,7),(2,7),(4,7),(5,7),(6,7) the pseudoheight is not \
                                 attained; encoded by an Ext^2 closing link, which is an external computation",
            "composition": "the composition Hom(E_2,E_3) x Ext^2(E_3,E_2(-K)) -> Ext^2(E_2,E_2(-K)) is injective",
            "dimensions": "remaining dimensions are a model: Ext^2 between other pairs, top-degree twisted spaces",
            "higher_products": "not supplied; only pages determined by binary products are trusted",
        }),
    );
    s
}
