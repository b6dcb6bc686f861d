//! Consistency checks on a parsed spec: index ranges, degree additivity,
//! qualitative-versus-exact agreement and the A∞ relations.
//!
//! The relations are checked in the unshifted convention
//! `Σ (-1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t) = 0`, where applying
//! `1^r ⊗ m_s ⊗ 1^t` to a word costs `(-1)^{s·(|x_1|+…+|x_r|)}`. With only
//! binary products this is plain associativity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{CollectionSpec, ProductKey, QualitativeExtTable, Shape, SpaceId, TableOptions};
use crate::exactlin::Field;

/// Result of one group of checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Human-readable description of each failure (empty when passed).
    pub failures: Vec<String>,
    /// Number of individual items examined.
    pub examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "passed": c.passed,
                "examined": c.examined,
                "failures": c.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<24} {} ({} examined)", c.name, if c.passed { "ok" } else { "FAILED" }, c.examined)?;
            for msg in c.failures.iter().take(20) {
                writeln!(f, "    {msg}")?;
            }
            if c.failures.len() > 20 {
                writeln!(f, "    … {} more", c.failures.len() - 20)?;
            }
        }
        Ok(())
    }
}

fn check(name: &str, examined: usize, failures: Vec<String>) -> Check {
    Check { name: name.into(), passed: failures.is_empty(), failures, examined }
}

/// Structure constants converted into a concrete field, as `(inputs, output, coefficient)` triples.
pub(crate) type ProductTable<E> = HashMap<ProductKey, (i64, Vec<(Vec<usize>, usize, E)>)>;

pub(crate) fn convert_products<F: Field>(
    field: &F,
    spec: &CollectionSpec,
) -> Result<ProductTable<F::Elem>, crate::exactlin::LinAlgError> {
    let mut table = HashMap::new();
    for (key, prod) in &spec.products {
        let mut rows = Vec::new();
        for (input, outs) in &prod.entries {
            for (out, c) in outs {
                let c = field.from_rational(c)?;
                if !field.is_zero(&c) {
                    rows.push((input.clone(), *out, c));
                }
            }
        }
        table.insert(key.clone(), (prod.out_deg, rows));
    }
    Ok(table)
}

/// Splits a word at the segment `r..r+s`, returning the inner and outer shapes.
/// `None` when the inner output would be a vanishing `N(c,b)` with `c > b`.
pub(crate) fn split(word: &Shape, r: usize, s: usize) -> Option<(Shape, Shape)> {
    match word {
        Shape::Pure(c) => {
            let inner = Shape::Pure(c[r..=r + s].to_vec());
            let mut outer = c[..=r].to_vec();
            outer.extend_from_slice(&c[r + s..]);
            Some((inner, Shape::Pure(outer)))
        }
        Shape::Bimodule { left, right } => {
            let l = left.len() - 1;
            if r + s <= l {
                let inner = Shape::Pure(left[r..=r + s].to_vec());
                let mut nl = left[..=r].to_vec();
                nl.extend_from_slice(&left[r + s..]);
                Some((inner, Shape::Bimodule { left: nl, right: right.clone() }))
            } else if r > l {
                let k = r - l - 1;
                let inner = Shape::Pure(right[k..=k + s].to_vec());
                let mut nr = right[..=k].to_vec();
                nr.extend_from_slice(&right[k + s..]);
                Some((inner, Shape::Bimodule { left: left.clone(), right: nr }))
            } else {
                let e = r + s - 1 - l;
                if right[e] > left[r] {
                    return None;
                }
                let inner = Shape::Bimodule { left: left[r..].to_vec(), right: right[..=e].to_vec() };
                let outer = Shape::Bimodule { left: left[..=r].to_vec(), right: right[e..].to_vec() };
                Some((inner, outer))
            }
        }
    }
}

/// Inserts the word of `inner` in place of input `pos` of `outer`.
pub(crate) fn splice(outer: &Shape, pos: usize, inner: &Shape) -> Option<Shape> {
    if outer.inputs().get(pos) != Some(&inner.output()) {
        return None;
    }
    let replace = |c: &[usize], at: usize, d: &[usize]| {
        let mut v = c[..at].to_vec();
        v.extend_from_slice(d);
        v.extend_from_slice(&c[at + 2..]);
        v
    };
    match (outer, inner) {
        (Shape::Pure(c), Shape::Pure(d)) => Some(Shape::Pure(replace(c, pos, d))),
        (Shape::Bimodule { left, right }, _) => {
            let l = left.len() - 1;
            match inner {
                Shape::Pure(d) if pos < l => Some(Shape::Bimodule { left: replace(left, pos, d), right: right.clone() }),
                Shape::Pure(d) if pos > l => {
                    Some(Shape::Bimodule { left: left.clone(), right: replace(right, pos - l - 1, d) })
                }
                Shape::Bimodule { left: il, right: ir } if pos == l => {
                    let mut nl = left[..l].to_vec();
                    nl.extend_from_slice(il);
                    let mut nr = ir.clone();
                    nr.extend_from_slice(&right[1..]);
                    Some(Shape::Bimodule { left: nl, right: nr })
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Evaluates the A∞ relation on all basis tuples of one word, returning the nonzero residuals
/// keyed by `(input tuple, output degree, output index)`.
pub(crate) fn relation_residual<F: Field>(
    field: &F,
    table: &ProductTable<F::Elem>,
    word: &Shape,
    degs: &[i64],
) -> BTreeMap<(Vec<usize>, i64, usize), F::Elem> {
    let n = degs.len();
    let mut acc: BTreeMap<(Vec<usize>, i64, usize), F::Elem> = BTreeMap::new();
    for s in 2..n {
        for r in 0..=n - s {
            let t = n - r - s;
            let Some((inner, outer)) = split(word, r, s) else { continue };
            let Some((mid_deg, inner_rows)) = table.get(&ProductKey::new(inner, degs[r..r + s].to_vec())) else {
                continue;
            };
            let mut odegs = degs[..r].to_vec();
            odegs.push(*mid_deg);
            odegs.extend_from_slice(&degs[r + s..]);
            let Some((out_deg, outer_rows)) = table.get(&ProductKey::new(outer, odegs)) else { continue };
            let prefix: i64 = degs[..r].iter().sum();
            let odd = ((r + s * t) as i64 + s as i64 * prefix).rem_euclid(2) == 1;
            for (iin, iout, ic) in inner_rows {
                for (oin, oout, oc) in outer_rows.iter().filter(|row| row.0[r] == *iout) {
                    let mut full = oin[..r].to_vec();
                    full.extend_from_slice(iin);
                    full.extend_from_slice(&oin[r + 1..]);
                    let mut c = field.mul(ic, oc);
                    if odd {
                        c = field.neg(&c);
                    }
                    let slot = acc.entry((full, *out_deg, *oout)).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &c);
                }
            }
        }
    }
    acc.retain(|_, v| !field.is_zero(v));
    acc
}

/// Every word on which some relation term can be nonzero, up to the given arity.
pub(crate) fn candidate_words<E>(table: &ProductTable<E>, max_arity: usize) -> Vec<(Shape, Vec<i64>)> {
    let mut by_output: HashMap<(SpaceId, i64), Vec<&ProductKey>> = HashMap::new();
    for (key, (deg, _)) in table {
        by_output.entry((key.shape.output(), *deg)).or_default().push(key);
    }
    let mut words = std::collections::BTreeSet::new();
    for outer in table.keys() {
        for (pos, space) in outer.shape.inputs().into_iter().enumerate() {
            for inner in by_output.get(&(space, outer.degs[pos])).into_iter().flatten() {
                if outer.arity() + inner.arity() - 1 > max_arity {
                    continue;
                }
                if let Some(w) = splice(&outer.shape, pos, &inner.shape) {
                    let mut degs = outer.degs[..pos].to_vec();
                    degs.extend_from_slice(&inner.degs);
                    degs.extend_from_slice(&outer.degs[pos + 1..]);
                    words.insert((w, degs));
                }
            }
        }
    }
    words.into_iter().collect()
}

/// Runs every check and collects the results.
pub fn validate(spec: &CollectionSpec) -> ValidationReport {
    let mut checks = Vec::new();
    let n = spec.n;

    let mut fails = Vec::new();
    for &(i, j) in spec.ext.keys() {
        if !(1 <= i && i < j && j <= n) {
            fails.push(format!("A({i},{j}) violates the ordering"));
        }
    }
    for &(i, j) in spec.serre.keys() {
        if !(1 <= i && i <= j && j <= n) {
            fails.push(format!("N({i},{j}) lies outside the bimodule"));
        }
    }
    for key in spec.products.keys() {
        if let Err(msg) = key.shape.check(n) {
            fails.push(msg);
        }
    }
    checks.push(check("exceptionality", spec.ext.len() + spec.serre.len() + spec.products.len(), fails));

    let mut fails = Vec::new();
    for (key, prod) in &spec.products {
        if prod.out_deg != key.additive_out_deg() {
            fails.push(format!(
                "product on {:?} with degrees {:?} lands in degree {}, expected {}",
                key.shape,
                key.degs,
                prod.out_deg,
                key.additive_out_deg()
            ));
        }
        let in_dims: Vec<usize> = key.shape.inputs().iter().zip(&key.degs).map(|(s, d)| spec.dim(*s, *d)).collect();
        let out_dim = spec.dim(key.shape.output(), prod.out_deg);
        for (input, outs) in &prod.entries {
            let bad_in = input.len() != in_dims.len() || input.iter().zip(&in_dims).any(|(x, d)| x >= d);
            if bad_in || outs.keys().any(|o| *o >= out_dim) {
                fails.push(format!("product on {:?}: entry {input:?} references a missing basis vector", key.shape));
            }
        }
    }
    checks.push(check("degree_additivity", spec.products.len(), fails));

    let fails = match QualitativeExtTable::from_spec(spec, TableOptions::default()) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    };
    checks.push(check("qualitative_consistency", spec.qualitative.len(), fails));

    let bound = spec.known_arity.map_or(usize::MAX, |k| k + 1);
    let (assoc, higher) = crate::with_field!(spec.field, |f| relation_checks(&f, spec, bound));
    checks.push(assoc);
    checks.push(higher);
    ValidationReport { checks }
}

fn relation_checks<F: Field>(field: &F, spec: &CollectionSpec, bound: usize) -> (Check, Check) {
    let table = match convert_products(field, spec) {
        Ok(t) => t,
        Err(e) => {
            let c = check("associativity", 0, vec![e.to_string()]);
            return (c.clone(), Check { name: "ainfinity".into(), ..c });
        }
    };
    let mut assoc = (0, Vec::new());
    let mut higher = (0, Vec::new());
    for (word, degs) in candidate_words(&table, bound) {
        let res = relation_residual(field, &table, &word, &degs);
        let slot = if degs.len() == 3 { &mut assoc } else { &mut higher };
        slot.0 += 1;
        if let Some(((input, deg, out), v)) = res.iter().next() {
            slot.1.push(format!(
                "word {:?} degrees {:?}: residual {} at input {:?} → output {} in degree {} ({} nonzero)",
                word,
                degs,
                field.render(v),
                input,
                out,
                deg,
                res.len()
            ));
        }
    }
    (check("associativity", assoc.0, assoc.1), check("ainfinity", higher.0, higher.1))
}
