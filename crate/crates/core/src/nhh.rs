//! The normal Hochschild complex of a collection and its column spectral sequence.
//!
//! For a chain `a_0 < … < a_p` the complex has the summand
//! `A(a_0,a_1) ⊗ … ⊗ A(a_{p-1},a_p) ⊗ N(a_0,a_p)` in bidegree `(-p, q)`,
//! `q` the sum of the factor degrees, and total degree `t = q - p`.
//! The differential applies a product to a consecutive segment of the
//! cyclic word `a_0 → a_1 → … → a_p → S⁻¹a_0 → S⁻¹a_1 → …`; a product of
//! arity `k` moves the column `-p` up by `k - 1`.
//!
//! Signs follow the bar construction: every factor carries its shifted
//! degree `|x| - 1`, the word is read as `(n, f_0, …, f_{p-1})`, a segment
//! collapsed after factors of total shifted degree `e` costs `(-1)^e`, and a
//! segment wrapping through `n` is first rotated to the front with the
//! Koszul sign of the rotation. Input products are converted from the
//! unshifted convention by `μ_k(sx_1,…,sx_k) = (-1)^{Σ (k-l)|x_l|} s m_k(x_1,…,x_k)`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::collection::validate::{convert_products, ProductTable};
use crate::collection::{CollectionSpec, ProductKey, Shape, SpaceId};
use crate::exactlin::{kernel_basis, rank, Field, LinAlgError, Matrix, SparseVec, Subspace};
use crate::pseudoheight::{chains, PhError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NhhError {
    #[error("the spec only carries qualitative data; exact dimensions are required")]
    NotExact,
    #[error("d∘d ≠ 0: {}", .0.join("; "))]
    NotADifferential(Vec<String>),
    #[error("max page must be at least 1")]
    BadMaxPage,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Chains(#[from] PhError),
}

/// Bidegree `(-p, q)` of the complex.
pub type Bidegree = (i64, i64);

/// One summand of the complex: a chain with a choice of degree for each factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTerm {
    pub chain: Vec<usize>,
    /// Degrees of `A(a_0,a_1), …, A(a_{p-1},a_p), N(a_0,a_p)`.
    pub degs: Vec<i64>,
    pub dims: Vec<usize>,
    /// Position of the first basis vector inside its total degree.
    pub offset: usize,
}

impl ChainTerm {
    pub fn p(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn column(&self) -> i64 {
        -(self.p() as i64)
    }

    pub fn q(&self) -> i64 {
        self.degs.iter().sum()
    }

    pub fn total(&self) -> i64 {
        self.q() - self.p() as i64
    }

    pub fn bidegree(&self) -> Bidegree {
        (self.column(), self.q())
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Mixed-radix position of a basis tuple, last factor fastest.
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.dims).fold(0, |acc, (x, d)| acc * d + x)
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            t[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
        t
    }
}

/// Every nonzero chain term of a spec, grouped by total degree and ordered by column.
pub fn chain_terms(spec: &CollectionSpec) -> Result<BTreeMap<i64, Vec<ChainTerm>>, NhhError> {
    if !spec.exact {
        return Err(NhhError::NotExact);
    }
    let mut by_t: BTreeMap<i64, Vec<ChainTerm>> = BTreeMap::new();
    for chain in chains(spec.n)? {
        let c = chain.0;
        let mut spaces: Vec<SpaceId> = c.windows(2).map(|w| SpaceId::A(w[0], w[1])).collect();
        spaces.push(SpaceId::N(c[0], *c.last().unwrap()));
        let pieces: Option<Vec<Vec<(i64, usize)>>> =
            spaces.iter().map(|s| spec.dims(*s).map(|g| g.iter().collect())).collect();
        let Some(pieces) = pieces else { continue };
        let mut choice = vec![0usize; pieces.len()];
        loop {
            let degs: Vec<i64> = choice.iter().zip(&pieces).map(|(&k, p)| p[k].0).collect();
            let dims: Vec<usize> = choice.iter().zip(&pieces).map(|(&k, p)| p[k].1).collect();
            let term = ChainTerm { chain: c.clone(), degs, dims, offset: 0 };
            by_t.entry(term.total()).or_default().push(term);
            // odometer over degree choices
            let mut k = pieces.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < pieces[k].len() {
                    break;
                }
                choice[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX {
                break;
            }
        }
    }
    for terms in by_t.values_mut() {
        terms.sort_by(|a, b| (a.column(), &a.chain, &a.degs).cmp(&(b.column(), &b.chain, &b.degs)));
        let mut off = 0;
        for t in terms.iter_mut() {
            t.offset = off;
            off += t.size();
        }
    }
    Ok(by_t)
}

/// Dimensions of the first page, keyed by `(-p, q)`.
pub fn build_e1(spec: &CollectionSpec) -> Result<BTreeMap<Bidegree, usize>, NhhError> {
    let mut table = BTreeMap::new();
    for terms in chain_terms(spec)?.values() {
        for t in terms {
            *table.entry(t.bidegree()).or_insert(0) += t.size();
        }
    }
    Ok(table)
}

/// The assembled complex over a concrete field.
#[derive(Debug, Clone)]
pub struct NormalComplex<F: Field> {
    pub field: F,
    pub n: usize,
    pub terms: BTreeMap<i64, Vec<ChainTerm>>,
    /// `D_t : C^t → C^{t+1}` as a `dim C^{t+1} × dim C^t` matrix.
    pub diffs: BTreeMap<i64, Matrix<F::Elem>>,
    /// Products of arity above this bound are missing from the data.
    pub known_arity: Option<usize>,
}

fn parity(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// Sign turning an unshifted product into its bar-construction counterpart.
fn shift_sign(degs: &[i64]) -> bool {
    let k = degs.len() as i64;
    parity(degs.iter().enumerate().map(|(l, d)| (k - 1 - l as i64) * d).sum())
}

impl<F: Field> NormalComplex<F> {
    pub fn dim(&self, t: i64) -> usize {
        self.terms.get(&t).map_or(0, |ts| ts.iter().map(ChainTerm::size).sum())
    }

    /// First basis index in total degree `t` whose column is at least `c`.
    pub fn column_start(&self, t: i64, c: i64) -> usize {
        match self.terms.get(&t) {
            None => 0,
            Some(ts) => ts.iter().find(|x| x.column() >= c).map_or(self.dim(t), |x| x.offset),
        }
    }

    pub fn columns(&self, t: i64) -> Vec<i64> {
        let mut cs: Vec<i64> = self.terms.get(&t).into_iter().flatten().map(ChainTerm::column).collect();
        cs.dedup();
        cs
    }

    /// The term containing basis vector `idx` of total degree `t`.
    pub fn term_at(&self, t: i64, idx: usize) -> &ChainTerm {
        let ts = &self.terms[&t];
        let k = ts.partition_point(|x| x.offset <= idx) - 1;
        &ts[k]
    }

    /// Zero matrix-safe access to `D_t`.
    pub fn diff(&self, t: i64) -> Matrix<F::Elem> {
        self.diffs.get(&t).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(t + 1), self.dim(t)))
    }

    /// Total degrees carrying at least one basis vector.
    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Applies the differential to a vector of total degree `t`.
    pub fn apply(&self, t: i64, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.diffs.get(&t).map_or_else(Vec::new, |m| m.apply(&self.field, v))
    }
}

/// Builds the complex and its differential; fails when `D ∘ D ≠ 0`.
pub fn assemble_differential<F: Field>(field: &F, spec: &CollectionSpec) -> Result<NormalComplex<F>, NhhError> {
    let terms = chain_terms(spec)?;
    let table = convert_products(field, spec)?;
    let mut cx = NormalComplex { field: field.clone(), n: spec.n, terms, diffs: BTreeMap::new(), known_arity: spec.known_arity };
    let index: HashMap<(Vec<usize>, Vec<i64>), (i64, usize)> = cx
        .terms
        .iter()
        .flat_map(|(t, ts)| ts.iter().enumerate().map(move |(k, x)| ((x.chain.clone(), x.degs.clone()), (*t, k))))
        .collect();
    let mut triples: BTreeMap<i64, Vec<(usize, usize, F::Elem)>> = BTreeMap::new();
    for (t, ts) in &cx.terms {
        for src in ts {
            for (seg, tgt_chain, tgt_degs) in segments(src, &table) {
                let Some(&(tt, k)) = index.get(&(tgt_chain, tgt_degs)) else { continue };
                debug_assert_eq!(tt, t + 1);
                let tgt = &cx.terms[&tt][k];
                emit(field, src, tgt, &seg, &table, triples.entry(*t).or_default());
            }
        }
    }
    for (t, tr) in triples {
        let m = Matrix::from_triples(field, cx.dim(t + 1), cx.dim(t), tr);
        if !m.is_zero() {
            cx.diffs.insert(t, m);
        }
    }
    check_square_zero(&cx)?;
    Ok(cx)
}

/// A product applied to part of a chain term.
struct Segment {
    key: ProductKey,
    /// Positions (in storage order `f_0, …, f_{p-1}, n`) consumed, in word order.
    consumed: Vec<usize>,
    /// Storage position in the target where the output goes.
    out_pos: usize,
    /// Storage positions of the source copied, in target storage order (excluding the output).
    kept: Vec<usize>,
    /// Sign from the position of the segment in the word, before the product's own conversion.
    odd: bool,
}

/// Every product that can act on a term, with the target term it lands in.
fn segments<E>(src: &ChainTerm, table: &ProductTable<E>) -> Vec<(Segment, Vec<usize>, Vec<i64>)> {
    let a = &src.chain;
    let p = src.p();
    let sh: Vec<i64> = src.degs.iter().map(|d| d - 1).collect();
    let n_sh = sh[p];
    let mut out = Vec::new();
    // products inside the A part
    for i in 0..p {
        for k in 2..=p - i {
            let key = ProductKey::new(Shape::Pure(a[i..=i + k].to_vec()), src.degs[i..i + k].to_vec());
            let Some((od, _)) = table.get(&key) else { continue };
            let mut chain = a[..=i].to_vec();
            chain.extend_from_slice(&a[i + k..]);
            let mut degs = src.degs[..i].to_vec();
            degs.push(*od);
            degs.extend_from_slice(&src.degs[i + k..]);
            let before = n_sh + sh[..i].iter().sum::<i64>();
            let consumed = (i..i + k).collect();
            let kept = (0..i).chain(i + k..=p).collect();
            out.push((Segment { key, consumed, out_pos: i, kept, odd: parity(before) }, chain, degs));
        }
    }
    // products through the N factor: trailing block f_{p-r}.., n, leading block ..f_{s-1}
    for r in 0..=p {
        for s in 0..=p - r {
            if r + s == 0 {
                continue;
            }
            let shape = Shape::Bimodule { left: a[p - r..].to_vec(), right: a[..=s].to_vec() };
            let mut wdegs = src.degs[p - r..p].to_vec();
            wdegs.push(src.degs[p]);
            wdegs.extend_from_slice(&src.degs[..s]);
            let key = ProductKey::new(shape, wdegs);
            let Some((od, _)) = table.get(&key) else { continue };
            let chain = a[s..=p - r].to_vec();
            let mut degs = src.degs[s..p - r].to_vec();
            degs.push(*od);
            let moved: i64 = sh[p - r..p].iter().sum();
            let rest: i64 = n_sh + sh[..p - r].iter().sum::<i64>();
            let consumed = (p - r..=p).chain(0..s).collect();
            let kept: Vec<usize> = (s..p - r).collect();
            let out_pos = kept.len();
            out.push((Segment { key, consumed, out_pos, kept, odd: parity(moved * rest) }, chain, degs));
        }
    }
    out
}

fn emit<F: Field>(
    field: &F,
    src: &ChainTerm,
    tgt: &ChainTerm,
    seg: &Segment,
    table: &ProductTable<F::Elem>,
    sink: &mut Vec<(usize, usize, F::Elem)>,
) {
    let (_, rows) = &table[&seg.key];
    let odd = seg.odd ^ shift_sign(&seg.key.degs);
    let kept_dims: Vec<usize> = seg.kept.iter().map(|&k| src.dims[k]).collect();
    let kept_count: usize = kept_dims.iter().product();
    let mut src_tuple = vec![0; src.dims.len()];
    let mut tgt_tuple = vec![0; tgt.dims.len()];
    for (input, out, coef) in rows {
        let c = if odd { field.neg(coef) } else { coef.clone() };
        for (pos, x) in seg.consumed.iter().zip(input) {
            src_tuple[*pos] = *x;
        }
        tgt_tuple[seg.out_pos] = *out;
        for mut m in 0..kept_count {
            for k in (0..seg.kept.len()).rev() {
                let x = m % kept_dims[k];
                m /= kept_dims[k];
                src_tuple[seg.kept[k]] = x;
                let tk = if k < seg.out_pos { k } else { k + 1 };
                tgt_tuple[tk] = x;
            }
            sink.push((tgt.offset + tgt.index_of(&tgt_tuple), src.offset + src.index_of(&src_tuple), c.clone()));
        }
    }
}

/// Verifies `D_{t+1} ∘ D_t = 0`, reporting offending term pairs.
///
/// With incomplete products only the components moving at most `known_arity`
/// columns are determined, so only those are checked.
fn check_square_zero<F: Field>(cx: &NormalComplex<F>) -> Result<(), NhhError> {
    let mut problems = Vec::new();
    for (&t, d0) in &cx.diffs {
        let Some(d1) = cx.diffs.get(&(t + 1)) else { continue };
        let sq = d1.mul(&cx.field, d0)?;
        for (row, col, v) in sq.triples() {
            let from = cx.term_at(t, col);
            let to = cx.term_at(t + 2, row);
            let jump = (to.column() - from.column()) as usize;
            if cx.known_arity.is_some_and(|k| jump > k) {
                continue;
            }
            if problems.len() < 10 {
                problems.push(format!(
                    "chain {:?} degrees {:?} → chain {:?} degrees {:?}: coefficient {}",
                    from.chain,
                    from.degs,
                    to.chain,
                    to.degs,
                    cx.field.render(v)
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(NhhError::NotADifferential(problems))
    }
}

/// `dim ker D_t - rank D_{t-1}` for every total degree carrying terms.
pub fn total_cohomology<F: Field>(cx: &NormalComplex<F>) -> BTreeMap<i64, usize> {
    let ranks: BTreeMap<i64, usize> = cx.diffs.iter().map(|(t, m)| (*t, rank(&cx.field, m))).collect();
    cx.degrees()
        .into_iter()
        .map(|t| {
            let r_out = ranks.get(&t).copied().unwrap_or(0);
            let r_in = ranks.get(&(t - 1)).copied().unwrap_or(0);
            (t, cx.dim(t) - r_out - r_in)
        })
        .collect()
}

/// Pages of the spectral sequence of the column filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSequencePages<E> {
    /// `pages[r-1]` holds the nonzero dimensions of `E_r`.
    pub pages: Vec<BTreeMap<Bidegree, usize>>,
    /// First page equal to the limit.
    pub r_stab: usize,
    pub e_inf: BTreeMap<Bidegree, usize>,
    /// Vectors of `C^t` representing a basis of each nonzero `E_∞` entry.
    pub representatives: BTreeMap<Bidegree, Vec<SparseVec<E>>>,
    /// Pages up to this one are determined by the supplied products; `None` when all are.
    pub exact_through: Option<usize>,
}

impl<E> SpectralSequencePages<E> {
    pub fn page(&self, r: usize) -> Option<&BTreeMap<Bidegree, usize>> {
        self.pages.get(r.checked_sub(1)?)
    }

    /// Whether `E_∞` is known exactly.
    pub fn limit_known(&self) -> bool {
        self.exact_through.is_none()
    }

    /// `Σ_p dim E_∞^{-p,t+p}` for each total degree.
    pub fn e_inf_by_total(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for (&(c, q), &d) in &self.e_inf {
            *m.entry(c + q).or_insert(0) += d;
        }
        m
    }
}

/// Pages whose formula only involves supplied products.
pub fn reliable_pages(known_arity: Option<usize>) -> Option<usize> {
    known_arity.map(|k| k / 2 + 1)
}

struct Filtration<'a, F: Field> {
    cx: &'a NormalComplex<F>,
    cache: HashMap<(i64, i64, usize), Subspace<F::Elem>>,
}

impl<F: Field> Filtration<'_, F> {
    /// `Z_r^c` in total degree `t`: elements of `F^c` whose image lies in `F^{c+r}`.
    fn z(&mut self, t: i64, c: i64, r: usize) -> Subspace<F::Elem> {
        if let Some(z) = self.cache.get(&(t, c, r)) {
            return z.clone();
        }
        let cx = self.cx;
        let dim = cx.dim(t);
        let s0 = cx.column_start(t, c);
        let s1 = cx.column_start(t + 1, c + r as i64);
        let field = &cx.field;
        let z = match cx.diffs.get(&t) {
            Some(d) if s1 > 0 && s0 < dim => {
                let rows: Vec<usize> = (0..s1).collect();
                let cols: Vec<usize> = (s0..dim).collect();
                let k = kernel_basis(field, &d.submatrix(&rows, &cols));
                let shifted = k.basis().iter().map(|v| v.iter().map(|(i, x)| (i + s0, x.clone())).collect());
                Subspace::span(field, dim, shifted)
            }
            _ => Subspace::span(field, dim, (s0..dim).map(|i| vec![(i, field.one())])),
        };
        self.cache.insert((t, c, r), z.clone());
        z
    }

    /// `Z_{r-1}^{c+1} + D(Z_{r-1}^{c-r+1})` in total degree `t`.
    fn boundary(&mut self, t: i64, c: i64, r: usize) -> Subspace<F::Elem> {
        let upper = self.z(t, c + 1, r - 1);
        let lower = self.z(t - 1, c - r as i64 + 1, r - 1);
        let cx = self.cx;
        let images = lower.basis().iter().map(|v| cx.apply(t - 1, v)).collect::<Vec<_>>();
        upper.sum(&cx.field, &Subspace::span(&cx.field, cx.dim(t), images))
    }
}

/// Runs the spectral sequence to its limit; `max_page` truncates the stored pages.
pub fn spectral_sequence<F: Field>(
    cx: &NormalComplex<F>,
    max_page: usize,
) -> Result<SpectralSequencePages<F::Elem>, NhhError> {
    if max_page < 1 {
        return Err(NhhError::BadMaxPage);
    }
    let all_cols: Vec<i64> = cx.degrees().iter().flat_map(|t| cx.columns(*t)).collect();
    let last = match (all_cols.iter().min(), all_cols.iter().max()) {
        (Some(lo), Some(hi)) => (hi - lo) as usize + 1,
        _ => 1,
    };
    let mut filt = Filtration { cx, cache: HashMap::new() };
    let mut pages = Vec::new();
    let mut representatives = BTreeMap::new();
    for r in 1..=last {
        let mut page = BTreeMap::new();
        for t in cx.degrees() {
            for c in cx.columns(t) {
                let z = filt.z(t, c, r);
                let b = filt.boundary(t, c, r);
                // B ⊆ Z for a genuine differential; measuring Z ∩ B keeps truncated data honest
                let sum = z.sum(&cx.field, &b);
                let dim = sum.dim() - b.dim();
                if dim > 0 {
                    page.insert((c, t - c), dim);
                    if r == last {
                        representatives.insert((c, t - c), sum.complement_basis(&cx.field, &b));
                    }
                }
            }
        }
        pages.push(page);
    }
    let e_inf = pages.last().cloned().unwrap_or_default();
    let r_stab = pages.iter().position(|p| *p == e_inf).map_or(1, |i| i + 1);
    pages.truncate(max_page);
    Ok(SpectralSequencePages { pages, r_stab, e_inf, representatives, exact_through: reliable_pages(cx.known_arity) })
}

/// Dimension-only results, computed over the spec's own field or an override.
#[derive(Debug, Clone, PartialEq)]
pub struct NhhSummary {
    pub e1: BTreeMap<Bidegree, usize>,
    pub nhh: BTreeMap<i64, usize>,
    pub pages: Vec<BTreeMap<Bidegree, usize>>,
    pub e_inf: BTreeMap<Bidegree, usize>,
    pub r_stab: usize,
    pub exact_through: Option<usize>,
}

pub fn summarize(
    spec: &CollectionSpec,
    field: Option<crate::exactlin::FieldKind>,
    max_page: usize,
) -> Result<NhhSummary, NhhError> {
    let kind = field.unwrap_or(spec.field);
    crate::with_field!(kind, |f| {
        let cx = assemble_differential(&f, spec)?;
        let ss = spectral_sequence(&cx, max_page)?;
        Ok(NhhSummary {
            e1: build_e1(spec)?,
            nhh: total_cohomology(&cx),
            pages: ss.pages,
            e_inf: ss.e_inf,
            r_stab: ss.r_stab,
            exact_through: ss.exact_through,
        })
    })
}
