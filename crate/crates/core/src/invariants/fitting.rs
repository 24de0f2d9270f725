//! Fitting invariants: gcd of maximal minors.

use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

use crate::laurent::{exact_div, gcd, LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FittingError {
    #[error("matrix has {rows} rows but only {cols} columns")]
    TooManyRows { rows: usize, cols: usize },
}

fn unit_inverse(u: &LaurentPoly) -> LaurentPoly {
    let (exp, c) = u.terms().next().expect("unit is nonzero");
    let neg: Vec<i64> = exp.iter().map(|e| -e).collect();
    LaurentPoly::monomial(u.nvars(), neg, c.clone())
}

/// Deletes zero columns and every column that is a multiple of a kept one.
/// A maximal minor through such a column is a multiple of the minor with
/// the kept column in its place, so the ideal of maximal minors is unchanged.
pub fn drop_redundant_columns(m: &LaurentMatrix) -> LaurentMatrix {
    let mut kept: Vec<usize> = Vec::new();
    'col: for j in 0..m.cols() {
        let Some(p) = (0..m.rows()).find(|&i| !m.get(i, j).is_zero()) else {
            continue;
        };
        for &k in &kept {
            if (0..p).any(|i| !m.get(i, k).is_zero()) || m.get(p, k).is_zero() {
                continue;
            }
            let Some(f) = exact_div(m.get(p, j), m.get(p, k)) else {
                continue;
            };
            if (p + 1..m.rows()).all(|i| &(m.get(i, k) * &f) == m.get(i, j)) {
                continue 'col;
            }
        }
        kept.push(j);
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.select(&rows, &kept)
}

/// Pivots on unit entries until none is left, deleting each pivot's row and
/// column. The ideal of maximal minors is unchanged up to a unit.
pub fn unit_pivot_reduce(m: &LaurentMatrix) -> LaurentMatrix {
    let nv = m.nvars();
    let mut rows: Vec<Vec<LaurentPoly>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut ncols = m.cols();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        let col_nnz: Vec<usize> = (0..ncols).map(|j| rows.iter().filter(|r| !r[j].is_zero()).count()).collect();
        for (i, r) in rows.iter().enumerate() {
            let row_nnz = r.iter().filter(|x| !x.is_zero()).count();
            for (j, x) in r.iter().enumerate() {
                if x.is_unit() {
                    let cost = (row_nnz - 1) * (col_nnz[j] - 1);
                    if best.is_none_or(|(c, bj, bi)| (cost, j, i) < (c, bj, bi)) {
                        best = Some((cost, j, i));
                    }
                }
            }
        }
        let Some((_, j, i)) = best else { break };
        let pivot_row = rows.swap_remove(i);
        let inv = unit_inverse(&pivot_row[j]);
        for r in rows.iter_mut() {
            if r[j].is_zero() {
                continue;
            }
            let factor = &r[j] * &inv;
            for (k, p) in pivot_row.iter().enumerate() {
                if k != j && !p.is_zero() {
                    r[k] = &r[k] - &(&factor * p);
                }
            }
            r[j] = LaurentPoly::zero(nv);
        }
        for r in rows.iter_mut() {
            r.remove(j);
        }
        ncols -= 1;
    }
    let mut out = LaurentMatrix::zeros(nv, rows.len(), ncols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// All nonzero maximal minors, keyed by their sorted column sets.
///
/// Minors on the first `j + 1` rows are obtained from those on the first
/// `j` rows by Laplace expansion along row `j`, so shared sub-minors are
/// computed once and zero entries are never touched.
pub fn maximal_minors(m: &LaurentMatrix) -> BTreeMap<Vec<usize>, LaurentPoly> {
    super::packed::maximal_minors_packed(m).unwrap_or_else(|| maximal_minors_general(m))
}

/// The same expansion with arbitrary-precision coefficients throughout.
pub fn maximal_minors_general(m: &LaurentMatrix) -> BTreeMap<Vec<usize>, LaurentPoly> {
    let nv = m.nvars();
    let mut level: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::from([(Vec::new(), LaurentPoly::one(nv))]);
    for j in 0..m.rows() {
        let row = m.row(j);
        let mut next: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
        for (cols, minor) in &level {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || cols.contains(&c) {
                    continue;
                }
                let pos = cols.iter().filter(|&&x| x < c).count();
                let mut key = cols.clone();
                key.insert(pos, c);
                let term = entry * minor;
                let slot = next.entry(key).or_insert_with(|| LaurentPoly::zero(nv));
                if (j + pos) % 2 == 0 {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        level = next.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    }
    level
}

/// gcd of all maximal minors, taken in lexicographic column order and
/// stopping early once the gcd is a unit.
pub fn maximal_minors_gcd(m: &LaurentMatrix) -> Result<LaurentPoly, FittingError> {
    let (r, c) = (m.rows(), m.cols());
    if r > c {
        return Err(FittingError::TooManyRows { rows: r, cols: c });
    }
    let mut acc = LaurentPoly::zero(m.nvars());
    for det in maximal_minors(m).values() {
        // a minor already divisible by the running gcd cannot lower it
        if acc.is_zero() || exact_div(det, &acc).is_none() {
            acc = gcd(&acc, det);
            if acc.is_unit() {
                break;
            }
        }
    }
    Ok(acc.normalize_unit())
}

/// gcd of the maximal minors of a presentation matrix (rows ≤ columns).
pub fn fitting_gcd(m: &LaurentMatrix) -> Result<LaurentPoly, FittingError> {
    if m.rows() > m.cols() {
        return Err(FittingError::TooManyRows { rows: m.rows(), cols: m.cols() });
    }
    if (0..m.rows()).any(|i| m.row(i).iter().all(|x| x.is_zero())) {
        return Ok(LaurentPoly::zero(m.nvars()));
    }
    let reduced = drop_redundant_columns(&unit_pivot_reduce(m));
    if reduced.rows() > reduced.cols() {
        return Ok(LaurentPoly::zero(m.nvars()));
    }
    maximal_minors_gcd(&reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use num_bigint::BigInt;

    fn p(nv: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nv, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn empty_matrix_gives_one() {
        let m = LaurentMatrix::zeros(1, 0, 3);
        assert_eq!(fitting_gcd(&m).unwrap(), LaurentPoly::one(1));
    }

    #[test]
    fn too_many_rows_is_rejected() {
        let m = LaurentMatrix::zeros(1, 3, 2);
        assert!(fitting_gcd(&m).is_err());
    }

    #[test]
    fn zero_matrix_gives_zero() {
        let m = LaurentMatrix::zeros(1, 2, 3);
        assert!(fitting_gcd(&m).unwrap().is_zero());
    }

    fn brute_force(m: &LaurentMatrix) -> LaurentPoly {
        let rows: Vec<usize> = (0..m.rows()).collect();
        let mut acc = LaurentPoly::zero(m.nvars());
        for cols in (0..m.cols()).combinations(m.rows()) {
            acc = gcd(&acc, &m.select(&rows, &cols).determinant());
        }
        acc.normalize_unit()
    }

    fn random_poly(rng: &mut impl Rng, nv: usize, terms: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            nv,
            (0..terms).map(|_| ((0..nv).map(|_| rng.gen_range(-1..=2)).collect::<Vec<i64>>(), rng.gen_range(-3..=3i64))),
        )
    }

    #[test]
    fn laplace_minors_match_bareiss() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (r, c) = (rng.gen_range(1..=3), rng.gen_range(3..=6));
            let rows = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { LaurentPoly::zero(2) } else { random_poly(&mut rng, 2, 2) }).collect())
                .collect();
            let m = LaurentMatrix::from_rows(2, rows);
            let minors = maximal_minors(&m);
            let all_rows: Vec<usize> = (0..r).collect();
            for cols in (0..c).combinations(r) {
                let det = m.select(&all_rows, &cols).determinant();
                assert_eq!(minors.get(&cols).cloned().unwrap_or_else(|| LaurentPoly::zero(2)), det);
            }
        }
    }

    #[test]
    fn pipeline_matches_exhaustive_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let rows = (0..3)
                .map(|_| {
                    (0..6)
                        .map(|_| match rng.gen_range(0..4) {
                            0 => LaurentPoly::zero(1),
                            1 => random_poly(&mut rng, 1, 1),
                            _ => random_poly(&mut rng, 1, 3),
                        })
                        .collect()
                })
                .collect();
            let m = LaurentMatrix::from_rows(1, rows);
            assert_eq!(fitting_gcd(&m).unwrap(), brute_force(&m));
        }
    }

    #[test]
    fn repeated_columns_do_not_change_the_gcd() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..8 {
            let mut m = LaurentMatrix::zeros(2, 3, 7);
            for i in 0..3 {
                for j in 0..4 {
                    m.set(i, j, random_poly(&mut rng, 2, 2));
                }
            }
            // unit multiple, polynomial multiple and zero column
            let u = LaurentPoly::monomial(2, vec![1, -1], -1);
            let f = random_poly(&mut rng, 2, 2);
            for i in 0..3 {
                m.set(i, 4, m.get(i, 1) * &u);
                m.set(i, 5, m.get(i, 2) * &f);
            }
            let reduced = drop_redundant_columns(&m);
            assert!(reduced.cols() <= 4 + usize::from(f.is_zero()));
            assert_eq!(fitting_gcd(&m).unwrap(), brute_force(&m));
        }
    }

    #[test]
    fn packed_minors_match_general_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..30 {
            let nv = 1 + trial % 3;
            let mut m = LaurentMatrix::zeros(nv, 3, 6);
            for i in 0..3 {
                for j in 0..6 {
                    if rng.gen_range(0..4) > 0 {
                        m.set(i, j, random_poly(&mut rng, nv, 3));
                    }
                }
            }
            if trial % 5 == 0 {
                // coefficients too large for the packed route
                m.set(0, 0, LaurentPoly::constant(nv, BigInt::from(i64::MAX) * 3));
            }
            assert_eq!(maximal_minors(&m), maximal_minors_general(&m));
        }
    }

    #[test]
    fn unit_rich_matrix_reduces_completely() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let mut m = LaurentMatrix::zeros(2, 3, 6);
            for i in 0..3 {
                m.set(i, i, LaurentPoly::monomial(2, vec![rng.gen_range(-2..3), 0], if rng.gen_bool(0.5) { 1 } else { -1 }));
                for j in 3..6 {
                    m.set(i, j, random_poly(&mut rng, 2, 2));
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    if i != j && rng.gen_bool(0.3) {
                        m.set(i, j, random_poly(&mut rng, 2, 2));
                    }
                }
            }
            let reduced = unit_pivot_reduce(&m);
            assert!(reduced.rows() < 3);
            assert_eq!(fitting_gcd(&m).unwrap(), brute_force(&m));
        }
    }

    #[test]
    fn single_row() {
        let t2m1 = p(1, &[(&[2], 1), (&[0], -1)]);
        let tm1 = p(1, &[(&[1], 1), (&[0], -1)]);
        let m = LaurentMatrix::from_rows(1, vec![vec![t2m1, tm1.clone()]]);
        assert_eq!(fitting_gcd(&m).unwrap(), tm1);
    }
}
