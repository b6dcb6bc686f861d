use num_rational::BigRational;
use proptest::prelude::*;

use excol::exactlin::{kernel_basis, rank, rref, Field, Matrix, PrimeField, Rationals, Subspace};

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| fixed_width(r, c))
}

fn fixed_width(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn matrix_pair() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1..=3usize, 1..=3usize, 1..=5usize).prop_flat_map(|(ra, rb, c)| (fixed_width(ra, c), fixed_width(rb, c)))
}

/// Exact determinant by cofactor expansion; fine for the tiny sizes used here.
fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|b| m >> b & 1 == 1).collect()).collect()
}

/// Rank as the size of the largest minor that is nonzero modulo `p` (or over Z when `p` is 0).
fn minor_rank(m: &[Vec<i64>], p: i128) -> usize {
    let (r, c) = (m.len(), m[0].len());
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                let d = det(&sub);
                if (p == 0 && d != 0) || (p != 0 && d.rem_euclid(p) != 0) {
                    return k;
                }
            }
        }
    }
    0
}

proptest! {
    #[test]
    fn rank_matches_minor_oracle_over_q(m in small_matrix(4, 5)) {
        let mat = Matrix::from_dense(&Rationals, &m);
        prop_assert_eq!(rank(&Rationals, &mat), minor_rank(&m, 0));
    }

    #[test]
    fn rank_matches_minor_oracle_mod_small_prime(m in small_matrix(4, 4)) {
        let f = PrimeField::new(5).unwrap();
        let mat = Matrix::from_dense(&f, &m);
        prop_assert_eq!(rank(&f, &mat), minor_rank(&m, 5));
    }

    #[test]
    fn rank_plus_nullity(m in small_matrix(6, 7)) {
        let mat = Matrix::from_dense(&Rationals, &m);
        let k = kernel_basis(&Rationals, &mat);
        prop_assert_eq!(rank(&Rationals, &mat) + k.dim(), mat.cols());
        for v in k.basis() {
            prop_assert!(mat.apply(&Rationals, v).is_empty());
        }
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix(5, 5)) {
        let mat = Matrix::from_dense(&Rationals, &m);
        let once = rref(&Rationals, &mat);
        let twice = rref(&Rationals, &once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivot_cols, twice.pivot_cols);
    }

    #[test]
    fn large_prime_agrees_with_rationals(m in small_matrix(5, 6)) {
        let f = PrimeField::new(1_000_003).unwrap();
        prop_assert_eq!(rank(&f, &Matrix::from_dense(&f, &m)), rank(&Rationals, &Matrix::from_dense(&Rationals, &m)));
    }

    #[test]
    fn subspace_sum_dimension((a, b) in matrix_pair()) {
        let n = a[0].len();
        let rows = |m: &[Vec<i64>]| -> Vec<Vec<(usize, BigRational)>> {
            m.iter().map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, x)| (j, Rationals.from_i64(*x))).collect()).collect()
        };
        let sa = Subspace::span(&Rationals, n, rows(&a));
        let sb = Subspace::span(&Rationals, n, rows(&b));
        let sum = sa.sum(&Rationals, &sb);
        let stacked: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(sum.dim(), minor_rank(&stacked, 0));
        prop_assert!(sum.contains_subspace(&Rationals, &sa));
        prop_assert_eq!(sa.complement_basis(&Rationals, &Subspace::zero(n)).len(), sa.dim());
    }
}

#[test]
fn prime_field_rejects_bad_denominators() {
    let f = PrimeField::new(7).unwrap();
    let q = BigRational::new(1.into(), 14.into());
    assert!(f.from_rational(&q).is_err());
    assert!(PrimeField::new(8).is_err());
}
