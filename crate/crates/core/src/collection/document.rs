//! JSON document format for collection specs.
//!
//! Serialization is canonical: object keys are sorted (serde_json's default
//! map is ordered), lists are emitted in a fixed order and coefficients are
//! strings `"p"` or `"p/q"` in lowest terms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::{
    Certificate, CollectionSpec, ExtStatus, Flags, Link, ModelError, ObjectMeta, Obj, Product,
    ProductKey, QualFact, Shape, SpaceId, TensorTerm,
};
use crate::exactlin::{format_rational, parse_rational, FieldKind};

type Result<T> = std::result::Result<T, ModelError>;

fn malformed(path: &str, msg: impl Into<String>) -> ModelError {
    ModelError::Malformed { path: path.to_string(), msg: msg.into() }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| malformed(path, format!("missing key `{key}`")))
}

fn as_obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed(path, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(path, "expected a list"))
}

fn as_int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| malformed(path, "expected an integer"))
}

fn int_at(obj: &Map<String, Value>, key: &str, path: &str) -> Result<i64> {
    as_int(get(obj, key, path)?, &format!("{path}.{key}"))
}

fn index(v: &Value, path: &str, n: usize) -> Result<Obj> {
    let i = as_int(v, path)?;
    if i < 1 || i as usize > n {
        return Err(ModelError::DanglingIndex { path: path.to_string(), index: i, n });
    }
    Ok(i as usize)
}

fn index_list(v: &Value, path: &str, n: usize) -> Result<Vec<Obj>> {
    as_arr(v, path)?.iter().enumerate().map(|(k, x)| index(x, &format!("{path}[{k}]"), n)).collect()
}

fn int_list(v: &Value, path: &str) -> Result<Vec<i64>> {
    as_arr(v, path)?.iter().enumerate().map(|(k, x)| as_int(x, &format!("{path}[{k}]"))).collect()
}

fn coefficient(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| malformed(path, format!("bad coefficient `{s}`"))),
        Value::Number(_) => v
            .as_i64()
            .map(|x| BigRational::from_integer(BigInt::from(x)))
            .ok_or_else(|| malformed(path, "coefficients must be integers or \"p/q\" strings")),
        _ => Err(malformed(path, "expected a coefficient")),
    }
}

/// Parses a document from text.
pub fn parse_str(text: &str) -> Result<CollectionSpec> {
    let v: Value = serde_json::from_str(text).map_err(|e| ModelError::Syntax(e.to_string()))?;
    parse(&v)
}

/// Parses a document tree.
pub fn parse(doc: &Value) -> Result<CollectionSpec> {
    let root = as_obj(doc, "$")?;
    let n = int_at(root, "n", "$")?;
    if n < 1 {
        return Err(malformed("$.n", "need at least one object"));
    }
    let n = n as usize;
    let dim_x = match root.get("dim_x") {
        Some(v) => as_int(v, "$.dim_x")?,
        None => 0,
    };
    if dim_x < 0 {
        return Err(malformed("$.dim_x", "dimension must be non-negative"));
    }
    let mut spec = CollectionSpec::empty(n, dim_x);

    if let Some(f) = root.get("field") {
        let s = f.as_str().ok_or_else(|| malformed("$.field", "expected a string"))?;
        spec.field = s.parse::<FieldKind>().map_err(|e| malformed("$.field", e.to_string()))?;
    }

    if let Some(objs) = root.get("objects") {
        let objs = as_arr(objs, "$.objects")?;
        if objs.len() != n {
            return Err(malformed("$.objects", format!("expected {n} entries, found {}", objs.len())));
        }
        for (k, o) in objs.iter().enumerate() {
            let path = format!("$.objects[{k}]");
            let o = as_obj(o, &path)?;
            let label = match o.get("label") {
                None | Some(Value::Null) => None,
                Some(v) => Some(v.as_str().ok_or_else(|| malformed(&path, "label must be a string"))?.to_string()),
            };
            let canonical_degree = match o.get("canonical_degree") {
                None | Some(Value::Null) => None,
                Some(v) => Some(as_int(v, &format!("{path}.canonical_degree"))?),
            };
            spec.objects[k] = ObjectMeta { label, canonical_degree };
        }
    }

    if let Some(ext) = root.get("ext") {
        for (k, e) in as_arr(ext, "$.ext")?.iter().enumerate() {
            let path = format!("$.ext[{k}]");
            let o = as_obj(e, &path)?;
            let i = index(get(o, "src", &path)?, &format!("{path}.src"), n)?;
            let j = index(get(o, "dst", &path)?, &format!("{path}.dst"), n)?;
            if j <= i {
                let msg = if i == j {
                    "self-Ext is the ground field and must not be listed".to_string()
                } else {
                    format!("Ext from E_{i} to the earlier object E_{j}")
                };
                return Err(ModelError::Exceptionality { path, msg });
            }
            add_dims(&mut spec, SpaceId::A(i, j), o, &path)?;
        }
    }

    if let Some(serre) = root.get("serre_ext") {
        for (k, e) in as_arr(serre, "$.serre_ext")?.iter().enumerate() {
            let path = format!("$.serre_ext[{k}]");
            let o = as_obj(e, &path)?;
            let i = index(get(o, "twist", &path)?, &format!("{path}.twist"), n)?;
            let j = index(get(o, "from", &path)?, &format!("{path}.from"), n)?;
            if i > j {
                return Err(ModelError::Exceptionality {
                    path,
                    msg: format!("Ext(E_{j}, S⁻¹E_{i}) vanishes for {i} > {j}"),
                });
            }
            add_dims(&mut spec, SpaceId::N(i, j), o, &path)?;
        }
    }

    if let Some(ps) = root.get("products") {
        for (k, p) in as_arr(ps, "$.products")?.iter().enumerate() {
            parse_product(&mut spec, p, &format!("$.products[{k}]"), false)?;
        }
    }
    if let Some(ps) = root.get("higher_products") {
        for (k, p) in as_arr(ps, "$.higher_products")?.iter().enumerate() {
            parse_product(&mut spec, p, &format!("$.higher_products[{k}]"), true)?;
        }
    }

    match root.get("known_arity") {
        None | Some(Value::Null) => {}
        Some(v) => {
            let a = as_int(v, "$.known_arity")?;
            if a < 2 {
                return Err(malformed("$.known_arity", "must be at least 2"));
            }
            spec.known_arity = Some(a as usize);
        }
    }
    if let Some(v) = root.get("exact") {
        spec.exact = v.as_bool().ok_or_else(|| malformed("$.exact", "expected a boolean"))?;
    }

    if let Some(q) = root.get("qualitative") {
        for (k, f) in as_arr(q, "$.qualitative")?.iter().enumerate() {
            let path = format!("$.qualitative[{k}]");
            let o = as_obj(f, &path)?;
            let src = index(get(o, "src", &path)?, &format!("{path}.src"), 2 * n)?;
            let dst = index(get(o, "dst", &path)?, &format!("{path}.dst"), 2 * n)?;
            let link = Link::new(n, src, dst).map_err(|_| {
                malformed(&path, format!("({src},{dst}) is not a forward pair of the extended collection"))
            })?;
            let deg = int_at(o, "deg", &path)?;
            let status = get(o, "status", &path)?
                .as_str()
                .and_then(ExtStatus::parse)
                .ok_or_else(|| malformed(&path, "status must be zero, nonzero or unknown"))?;
            let source = match o.get("source") {
                None | Some(Value::Null) => None,
                Some(v) => Some(v.as_str().ok_or_else(|| malformed(&path, "source must be a string"))?.to_string()),
            };
            spec.qualitative.push(QualFact { link, deg, status, source });
        }
    }

    if let Some(f) = root.get("flags") {
        let o = as_obj(f, "$.flags")?;
        let flag = |key: &str| -> Result<bool> {
            match o.get(key) {
                None => Ok(false),
                Some(v) => v.as_bool().ok_or_else(|| malformed(&format!("$.flags.{key}"), "expected a boolean")),
            }
        };
        spec.flags = Flags {
            is_surface: flag("is_surface")?,
            ample_canonical: flag("ample_canonical")?,
            line_bundles: flag("line_bundles")?,
            h2_anticanonical_nonzero: flag("h2_anticanonical_nonzero")?,
        };
    }
    match root.get("k_squared") {
        None | Some(Value::Null) => {}
        Some(v) => spec.k_squared = Some(as_int(v, "$.k_squared")?),
    }
    if let Some(m) = root.get("metadata") {
        spec.metadata = as_obj(m, "$.metadata")?.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    }
    if let Some(c) = root.get("fullness") {
        spec.certificate = Some(parse_certificate(&spec, c)?);
    }
    Ok(spec)
}

fn add_dims(spec: &mut CollectionSpec, space: SpaceId, o: &Map<String, Value>, path: &str) -> Result<()> {
    let deg = int_at(o, "deg", path)?;
    let dim = int_at(o, "dim", path)?;
    if dim < 0 {
        return Err(ModelError::NegativeDim { path: path.to_string(), dim });
    }
    let mut dims = spec.dims(space).cloned().unwrap_or_default();
    if dims.get(deg) > 0 {
        return Err(malformed(path, format!("{space} in degree {deg} listed twice")));
    }
    dims.add(deg, dim as usize);
    spec.set_dims(space, dims);
    Ok(())
}

fn parse_product(spec: &mut CollectionSpec, p: &Value, path: &str, higher: bool) -> Result<()> {
    let n = spec.n;
    let o = as_obj(p, path)?;
    let kind = get(o, "kind", path)?.as_str().ok_or_else(|| malformed(path, "kind must be a string"))?;
    let shape = match (higher, kind) {
        (false, "AA" | "AN" | "NA") => {
            let c = index_list(get(o, "chain", path)?, &format!("{path}.chain"), n)?;
            if c.len() != 3 {
                return Err(malformed(path, "a binary product needs a chain of three indices"));
            }
            match kind {
                "AA" => Shape::aa(c[0], c[1], c[2]),
                "AN" => Shape::an(c[0], c[1], c[2]),
                _ => Shape::na(c[0], c[1], c[2]),
            }
        }
        (true, "A") => Shape::Pure(index_list(get(o, "chain", path)?, &format!("{path}.chain"), n)?),
        (true, "N") => Shape::Bimodule {
            left: index_list(get(o, "left", path)?, &format!("{path}.left"), n)?,
            right: index_list(get(o, "right", path)?, &format!("{path}.right"), n)?,
        },
        _ => return Err(malformed(path, format!("unknown product kind `{kind}`"))),
    };
    shape.check(n).map_err(|msg| ModelError::Exceptionality { path: path.to_string(), msg })?;
    if higher {
        let arity = int_at(o, "arity", path)?;
        if arity < 3 || arity as usize != shape.arity() {
            return Err(malformed(path, format!("arity {arity} does not match a word of {} factors", shape.arity())));
        }
    }
    let degs = int_list(get(o, "degs", path)?, &format!("{path}.degs"))?;
    if degs.len() != shape.arity() {
        return Err(malformed(path, "one degree per input factor is required"));
    }
    let key = ProductKey::new(shape, degs);
    let out_deg = match o.get("out_deg") {
        None | Some(Value::Null) => key.additive_out_deg(),
        Some(v) => as_int(v, &format!("{path}.out_deg"))?,
    };
    let in_dims: Vec<usize> = key.shape.inputs().iter().zip(&key.degs).map(|(s, d)| spec.dim(*s, *d)).collect();
    let out_dim = spec.dim(key.shape.output(), out_deg);
    if spec.products.contains_key(&key) {
        return Err(malformed(path, "product listed twice"));
    }
    let mut prod = Product::new(out_deg);
    let k = key.arity();
    for (e, entry) in as_arr(get(o, "entries", path)?, &format!("{path}.entries"))?.iter().enumerate() {
        let epath = format!("{path}.entries[{e}]");
        let row = as_arr(entry, &epath)?;
        if row.len() != k + 2 {
            return Err(malformed(&epath, format!("expected {} input indices, an output index and a coefficient", k)));
        }
        let mut idx = Vec::with_capacity(k + 1);
        for (pos, x) in row[..=k].iter().enumerate() {
            let i = as_int(x, &epath)?;
            let bound = if pos < k { in_dims[pos] } else { out_dim };
            if i < 0 || i as usize >= bound {
                return Err(ModelError::DanglingIndex { path: epath.clone(), index: i, n: bound });
            }
            idx.push(i as usize);
        }
        let out = idx.pop().unwrap();
        prod.add(idx, out, coefficient(&row[k + 1], &epath)?);
    }
    spec.products.insert(key, prod);
    Ok(())
}

fn parse_term(spec: &CollectionSpec, v: &Value, path: &str) -> Result<TensorTerm> {
    let o = as_obj(v, path)?;
    let chain = index_list(get(o, "chain", path)?, &format!("{path}.chain"), spec.n)?;
    if chain.is_empty() || !chain.windows(2).all(|w| w[0] < w[1]) {
        return Err(malformed(path, "chain must be nonempty and strictly increasing"));
    }
    let degs = int_list(get(o, "degs", path)?, &format!("{path}.degs"))?;
    if degs.len() != chain.len() {
        return Err(malformed(path, "one degree per factor is required"));
    }
    let dims = term_dims(spec, &chain, &degs);
    let mut entries = BTreeMap::new();
    for (e, entry) in as_arr(get(o, "entries", path)?, &format!("{path}.entries"))?.iter().enumerate() {
        let epath = format!("{path}.entries[{e}]");
        let row = as_arr(entry, &epath)?;
        if row.len() != chain.len() + 1 {
            return Err(malformed(&epath, "expected one index per factor and a coefficient"));
        }
        let mut idx = Vec::with_capacity(chain.len());
        for (pos, x) in row[..chain.len()].iter().enumerate() {
            let i = as_int(x, &epath)?;
            if i < 0 || i as usize >= dims[pos] {
                return Err(ModelError::DanglingIndex { path: epath.clone(), index: i, n: dims[pos] });
            }
            idx.push(i as usize);
        }
        let c = coefficient(&row[chain.len()], &epath)?;
        let slot = entries.entry(idx).or_insert_with(|| BigRational::from_integer(0.into()));
        *slot += c;
    }
    entries.retain(|_, c: &mut BigRational| *c != BigRational::from_integer(0.into()));
    Ok(TensorTerm { chain, degs, entries })
}

/// Dimensions of the factors `A(a_0,a_1), …, N(a_0,a_p)` of a chain term.
pub(crate) fn term_dims(spec: &CollectionSpec, chain: &[Obj], degs: &[i64]) -> Vec<usize> {
    let mut dims: Vec<usize> = chain.windows(2).zip(degs).map(|(w, d)| spec.dim(SpaceId::A(w[0], w[1]), *d)).collect();
    dims.push(spec.dim(SpaceId::N(chain[0], *chain.last().unwrap()), *degs.last().unwrap()));
    dims
}

fn parse_certificate(spec: &CollectionSpec, v: &Value) -> Result<Certificate> {
    let o = as_obj(v, "$.fullness")?;
    let mut cert = Certificate::default();
    if let Some(xi) = o.get("xi") {
        for (k, t) in as_arr(xi, "$.fullness.xi")?.iter().enumerate() {
            cert.xi.push(parse_term(spec, t, &format!("$.fullness.xi[{k}]"))?);
        }
    }
    if let Some(p) = o.get("pairing") {
        for (k, entry) in as_arr(p, "$.fullness.pairing")?.iter().enumerate() {
            let path = format!("$.fullness.pairing[{k}]");
            let e = as_obj(entry, &path)?;
            let obj = index(get(e, "object", &path)?, &format!("{path}.object"), spec.n)?;
            let mut terms = Vec::new();
            for (m, t) in as_arr(get(e, "terms", &path)?, &format!("{path}.terms"))?.iter().enumerate() {
                let term = parse_term(spec, t, &format!("{path}.terms[{m}]"))?;
                if term.chain[0] != obj {
                    return Err(malformed(&path, format!("pairing for object {obj} must start its chains at {obj}")));
                }
                terms.push(term);
            }
            if cert.pairing.insert(obj, terms).is_some() {
                return Err(malformed(&path, "object listed twice"));
            }
        }
    }
    Ok(cert)
}

fn coef_value(c: &BigRational) -> Value {
    Value::String(format_rational(c))
}

fn term_value(t: &TensorTerm) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|(idx, c)| {
            let mut row: Vec<Value> = idx.iter().map(|&i| json!(i)).collect();
            row.push(coef_value(c));
            Value::Array(row)
        })
        .collect();
    json!({ "chain": t.chain, "degs": t.degs, "entries": entries })
}

/// Canonical document tree for a spec.
pub fn serialize_value(spec: &CollectionSpec) -> Value {
    let mut root = Map::new();
    root.insert("n".into(), json!(spec.n));
    root.insert("dim_x".into(), json!(spec.dim_x));
    root.insert("field".into(), json!(spec.field.to_string()));
    root.insert("exact".into(), json!(spec.exact));
    if let Some(a) = spec.known_arity {
        root.insert("known_arity".into(), json!(a));
    }
    let objects: Vec<Value> = spec
        .objects
        .iter()
        .map(|o| {
            let mut m = Map::new();
            if let Some(l) = &o.label {
                m.insert("label".into(), json!(l));
            }
            if let Some(d) = o.canonical_degree {
                m.insert("canonical_degree".into(), json!(d));
            }
            Value::Object(m)
        })
        .collect();
    root.insert("objects".into(), Value::Array(objects));

    let mut ext = Vec::new();
    for (&(i, j), dims) in &spec.ext {
        for (d, k) in dims.iter() {
            ext.push(json!({ "src": i, "dst": j, "deg": d, "dim": k }));
        }
    }
    root.insert("ext".into(), Value::Array(ext));
    let mut serre = Vec::new();
    for (&(i, j), dims) in &spec.serre {
        for (d, k) in dims.iter() {
            serre.push(json!({ "twist": i, "from": j, "deg": d, "dim": k }));
        }
    }
    root.insert("serre_ext".into(), Value::Array(serre));

    let mut binary = Vec::new();
    let mut higher = Vec::new();
    for (key, prod) in &spec.products {
        let entries: Vec<Value> = prod
            .entries
            .iter()
            .flat_map(|(idx, row)| {
                row.iter().map(move |(out, c)| {
                    let mut r: Vec<Value> = idx.iter().map(|&i| json!(i)).collect();
                    r.push(json!(out));
                    r.push(coef_value(c));
                    Value::Array(r)
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("degs".into(), json!(key.degs));
        m.insert("out_deg".into(), json!(prod.out_deg));
        m.insert("entries".into(), Value::Array(entries));
        if key.arity() == 2 {
            let (kind, chain) = match &key.shape {
                Shape::Pure(c) => ("AA", c.clone()),
                Shape::Bimodule { left, right } if left.len() == 2 => ("AN", vec![right[0], left[0], left[1]]),
                Shape::Bimodule { left, right } => ("NA", vec![right[0], right[1], left[0]]),
            };
            m.insert("kind".into(), json!(kind));
            m.insert("chain".into(), json!(chain));
            binary.push(Value::Object(m));
        } else {
            m.insert("arity".into(), json!(key.arity()));
            match &key.shape {
                Shape::Pure(c) => {
                    m.insert("kind".into(), json!("A"));
                    m.insert("chain".into(), json!(c));
                }
                Shape::Bimodule { left, right } => {
                    m.insert("kind".into(), json!("N"));
                    m.insert("left".into(), json!(left));
                    m.insert("right".into(), json!(right));
                }
            }
            higher.push(Value::Object(m));
        }
    }
    root.insert("products".into(), Value::Array(binary));
    if !higher.is_empty() {
        root.insert("higher_products".into(), Value::Array(higher));
    }

    if !spec.qualitative.is_empty() {
        let q: Vec<Value> = spec
            .qualitative
            .iter()
            .map(|f| {
                let mut m = Map::new();
                m.insert("src".into(), json!(f.link.src));
                m.insert("dst".into(), json!(f.link.dst));
                m.insert("deg".into(), json!(f.deg));
                m.insert("status".into(), json!(f.status.as_str()));
                if let Some(s) = &f.source {
                    m.insert("source".into(), json!(s));
                }
                Value::Object(m)
            })
            .collect();
        root.insert("qualitative".into(), Value::Array(q));
    }
    let f = spec.flags;
    if f != Flags::default() {
        root.insert(
            "flags".into(),
            json!({
                "is_surface": f.is_surface,
                "ample_canonical": f.ample_canonical,
                "line_bundles": f.line_bundles,
                "h2_anticanonical_nonzero": f.h2_anticanonical_nonzero,
            }),
        );
    }
    if let Some(k2) = spec.k_squared {
        root.insert("k_squared".into(), json!(k2));
    }
    if !spec.metadata.is_empty() {
        root.insert("metadata".into(), Value::Object(spec.metadata.clone().into_iter().collect()));
    }
    if let Some(cert) = &spec.certificate {
        let pairing: Vec<Value> = cert
            .pairing
            .iter()
            .map(|(obj, terms)| json!({ "object": obj, "terms": terms.iter().map(term_value).collect::<Vec<_>>() }))
            .collect();
        root.insert(
            "fullness".into(),
            json!({ "xi": cert.xi.iter().map(term_value).collect::<Vec<_>>(), "pairing": pairing }),
        );
    }
    Value::Object(root)
}

/// Canonical pretty-printed text, newline-terminated.
pub fn serialize(spec: &CollectionSpec) -> String {
    let mut s = serde_json::to_string_pretty(&serialize_value(spec)).expect("documents are always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_point() {
        let spec = parse_str(r#"{"n":1,"dim_x":0,"serre_ext":[{"twist":1,"from":1,"deg":0,"dim":1}]}"#).unwrap();
        assert_eq!(spec.n, 1);
        assert_eq!(spec.dim(SpaceId::N(1, 1), 0), 1);
        assert!(spec.ext.is_empty() && spec.products.is_empty());
    }

    #[test]
    fn rejects_backward_ext() {
        let r = parse_str(r#"{"n":2,"ext":[{"src":2,"dst":1,"deg":0,"dim":1}]}"#);
        assert!(matches!(r, Err(ModelError::Exceptionality { .. })));
        let r = parse_str(r#"{"n":2,"ext":[{"src":1,"dst":1,"deg":0,"dim":1}]}"#);
        assert!(matches!(r, Err(ModelError::Exceptionality { .. })));
    }

    #[test]
    fn rejects_negative_and_dangling() {
        let r = parse_str(r#"{"n":2,"ext":[{"src":1,"dst":2,"deg":0,"dim":-1}]}"#);
        assert!(matches!(r, Err(ModelError::NegativeDim { .. })));
        let r = parse_str(r#"{"n":2,"ext":[{"src":1,"dst":3,"deg":0,"dim":1}]}"#);
        assert!(matches!(r, Err(ModelError::DanglingIndex { .. })));
        let r = parse_str(
            r#"{"n":2,"ext":[{"src":1,"dst":2,"deg":0,"dim":1}],
                "serre_ext":[{"twist":1,"from":2,"deg":0,"dim":1},{"twist":1,"from":1,"deg":0,"dim":1}],
                "products":[{"kind":"AN","chain":[1,1,2],"degs":[0,0],"entries":[[0,1,0,"1"]]}]}"#,
        );
        assert!(matches!(r, Err(ModelError::DanglingIndex { .. })));
    }

    #[test]
    fn syntax_error() {
        assert!(matches!(parse_str("{"), Err(ModelError::Syntax(_))));
    }

    #[test]
    fn round_trip_with_products() {
        let text = r#"{"n":2,"dim_x":1,"ext":[{"src":1,"dst":2,"deg":0,"dim":1}],
            "serre_ext":[{"twist":1,"from":2,"deg":0,"dim":1},{"twist":1,"from":1,"deg":0,"dim":1}],
            "products":[{"kind":"AN","chain":[1,1,2],"degs":[0,0],"entries":[[0,0,0,"3/6"]]}],
            "qualitative":[{"src":1,"dst":3,"deg":1,"status":"zero","source":"lemma"}]}"#;
        let spec = parse_str(text).unwrap();
        let again = parse_str(&serialize(&spec)).unwrap();
        assert_eq!(spec, again);
        assert!(serialize(&spec).contains("\"1/2\""));
    }
}
