use std::collections::BTreeMap;

use excol::collection::CollectionSpec;
use excol::exactlin::{rank, FieldKind, Matrix, PrimeField, Rationals};
use excol::fixtures::{beilinson, fixture, FIXTURE_NAMES};
use excol::nhh::{assemble_differential, build_e1, spectral_sequence, summarize, total_cohomology, Bidegree};
use excol::synth::{random_spec, SynthParams};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `h^0(Λ^t T)` on `P^m`, the only nonzero Hodge-type group in each degree.
fn hkr_projective_space(m: usize) -> BTreeMap<i64, usize> {
    (0..=m).map(|t| (t as i64, binom(m + 1 + t, m + 1) * binom(m, m - t))).collect()
}

/// E_1 of the Beilinson collection by direct counting over chains.
fn beilinson_e1(n: usize) -> BTreeMap<Bidegree, usize> {
    let sym = |d: usize| binom(d + n - 1, n - 1);
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let c: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let p = c.len() - 1;
        let mut dim: usize = c.windows(2).map(|w| sym(w[1] - w[0])).product();
        dim *= sym(c[0] + n - c[p]);
        *out.entry((-(p as i64), (n - 1) as i64)).or_insert(0) += dim;
    }
    out
}

fn exact_fixtures() -> Vec<(&'static str, CollectionSpec)> {
    FIXTURE_NAMES.iter().map(|n| (*n, fixture(n).unwrap())).filter(|(_, s)| s.exact).collect()
}

#[test]
fn p1_differential_block() {
    let cx = assemble_differential(&Rationals, &beilinson(2).unwrap()).unwrap();
    assert_eq!((cx.dim(0), cx.dim(1)), (4, 6));
    let d = cx.diff(0);
    assert_eq!((d.rows(), d.cols()), (6, 4));
    assert_eq!(rank(&Rationals, &d), 3);
}

#[test]
fn beilinson_e1_matches_counting() {
    for n in 2..=4 {
        assert_eq!(build_e1(&beilinson(n).unwrap()).unwrap(), beilinson_e1(n), "n = {n}");
    }
}

#[test]
fn beilinson_cohomology_matches_hkr() {
    for n in 2..=4 {
        let s = summarize(&beilinson(n).unwrap(), None, 10).unwrap();
        let nonzero: BTreeMap<i64, usize> = s.nhh.into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(nonzero, hkr_projective_space(n - 1), "P^{}", n - 1);
    }
}

#[test]
fn prime_field_agrees_on_beilinson() {
    let spec = beilinson(3).unwrap();
    let q = summarize(&spec, Some(FieldKind::Rational), 10).unwrap();
    let p = summarize(&spec, Some(FieldKind::Prime(1_000_003)), 10).unwrap();
    assert_eq!(q.nhh, p.nhh);
    assert_eq!(q.pages, p.pages);
}

#[test]
fn composite_of_differentials_vanishes_on_fixtures() {
    for (name, spec) in exact_fixtures() {
        let cx = assemble_differential(&PrimeField::new(1_000_003).unwrap(), &spec).unwrap();
        for t in cx.degrees() {
            let dd = cx.diff(t + 1).mul(&cx.field, &cx.diff(t)).unwrap();
            assert!(dd.is_zero(), "{name} at t = {t}");
        }
    }
}

#[test]
fn spectral_sequence_invariants_on_fixtures() {
    for (name, spec) in exact_fixtures() {
        let cx = assemble_differential(&Rationals, &spec).unwrap();
        let ss = spectral_sequence(&cx, usize::MAX).unwrap();
        let nhh = total_cohomology(&cx);
        // the limit is a graded version of the cohomology
        let by_total: BTreeMap<i64, usize> = ss.e_inf_by_total();
        for (t, d) in &nhh {
            assert_eq!(by_total.get(t).copied().unwrap_or(0), *d, "{name} degree {t}");
        }
        assert_eq!(ss.pages[0], build_e1(&spec).unwrap(), "{name}");
        // pages only shrink
        for w in ss.pages.windows(2) {
            for (k, d) in &w[1] {
                assert!(w[0].get(k).copied().unwrap_or(0) >= *d, "{name} at {k:?}");
            }
        }
        // Euler characteristic of the complex equals that of its cohomology
        let chi_c: i64 = cx.degrees().iter().map(|t| if t % 2 == 0 { 1 } else { -1 } * cx.dim(*t) as i64).sum();
        let chi_h: i64 = nhh.iter().map(|(t, d)| if t % 2 == 0 { 1 } else { -1 } * *d as i64).sum();
        assert_eq!(chi_c, chi_h, "{name}");
    }
}

#[test]
fn beauville_i0_second_page() {
    let s = summarize(&fixture("beauville_I0").unwrap(), None, 10).unwrap();
    assert_eq!(s.exact_through, Some(2));
    assert_eq!(s.pages[0].get(&(-3, 6)), Some(&1));
    assert_eq!(s.pages[1].get(&(-3, 6)), None);
    assert_eq!(s.pages[1].get(&(0, 4)), Some(&36));
}

#[test]
fn godeaux_second_page_vanishes_in_degree_three() {
    let s = summarize(&fixture("godeaux").unwrap(), None, 2).unwrap();
    assert_eq!(s.pages[0].get(&(-1, 4)), Some(&2));
    assert!(s.pages[1].keys().all(|(c, q)| c + q >= 4));
    assert_eq!(s.pages[1].get(&(0, 4)), Some(&20));
}

#[test]
fn random_collections_have_square_zero_differential() {
    let mut with_m3 = 0;
    for seed in 0..100u64 {
        let n = 1 + (seed % 4) as usize;
        let params = SynthParams { n, shift: (seed % 3) as i64, max_dim: 1 + (seed % 2) as usize, ..SynthParams::default() };
        let spec = random_spec(seed, params);
        assert!(excol::collection::validate(&spec).ok(), "seed {seed}");
        with_m3 += usize::from(spec.max_arity() >= 3);
        let cx = assemble_differential(&Rationals, &spec).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        for t in cx.degrees() {
            let dd: Matrix<_> = cx.diff(t + 1).mul(&Rationals, &cx.diff(t)).unwrap();
            assert!(dd.is_zero(), "seed {seed} at t = {t}");
        }
    }
    assert!(with_m3 > 20, "only {with_m3} specs carry a ternary product");
}

#[test]
fn gauge_and_basis_changes_preserve_cohomology() {
    for seed in 0..60u64 {
        let n = 2 + (seed % 3) as usize;
        let base = SynthParams { n, shift: (seed % 3) as i64, ..SynthParams::default() };
        let plain = random_spec(seed, SynthParams { gauge: false, basis_change: false, ..base });
        let moved = random_spec(seed, SynthParams { gauge: false, ..base });
        let gauged = random_spec(seed, base);
        let h = |s: &CollectionSpec| total_cohomology(&assemble_differential(&Rationals, s).unwrap());
        assert_eq!(h(&plain), h(&moved), "seed {seed}");
        assert_eq!(h(&plain), h(&gauged), "seed {seed}");
    }
}

#[test]
fn qualitative_specs_are_refused() {
    assert!(summarize(&fixture("burniat").unwrap(), None, 3).is_err());
}
