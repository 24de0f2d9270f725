//! Smith normal form over the integers with unimodular transforms.

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each
/// diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: Vec<Vec<i64>>,
    /// The `m × n` diagonal matrix.
    pub d: Vec<Vec<i64>>,
    /// Nonzero diagonal entries, in order.
    pub diagonal: Vec<i64>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

type Wide = i128;

fn add(a: Wide, b: Wide) -> Wide {
    a.checked_add(b).expect("integer overflow in Smith normal form")
}

fn mul(a: Wide, b: Wide) -> Wide {
    a.checked_mul(b).expect("integer overflow in Smith normal form")
}

/// Quotient rounded to nearest, so remainders are at most |p|/2.
fn nearest_quotient(a: Wide, p: Wide) -> Wide {
    let q = a.div_euclid(p);
    if 2 * a.rem_euclid(p) > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// `row_dst += q · row_src` on a row-major matrix.
fn row_axpy(m: &mut [Vec<Wide>], dst: usize, src: usize, q: Wide) {
    if q == 0 {
        return;
    }
    for k in 0..m[dst].len() {
        m[dst][k] = add(m[dst][k], mul(q, m[src][k]));
    }
}

fn col_axpy(m: &mut [Vec<Wide>], dst: usize, src: usize, q: Wide) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] = add(row[dst], mul(q, row[src]));
    }
}

fn col_swap<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn wide_identity(n: usize) -> Vec<Vec<Wide>> {
    (0..n).map(|i| (0..n).map(|j| Wide::from(i == j)).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Smith normal form of an `m × n` matrix given as rows.
///
/// Pivots are chosen as the entry of least absolute value (first in
/// row-major order), so the result is deterministic. Work is done in
/// 128-bit integers; the result must fit in 64 bits.
pub fn smith_normal_form(a: &[Vec<i64>], n_cols: usize) -> SnfResult {
    let m = a.len();
    let n = n_cols;
    assert!(a.iter().all(|r| r.len() == n), "ragged matrix");
    let mut d: Vec<Vec<Wide>> = a.iter().map(|r| r.iter().map(|&x| Wide::from(x)).collect()).collect();
    let mut u = wide_identity(m);
    let mut v = wide_identity(n);
    let mut v_inv = wide_identity(n);

    'pivots: for t in 0..m.min(n) {
        let mut first = true;
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if (first || i == t || j == t) && d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            first = false;
            let Some((pi, pj)) = best else {
                break 'pivots;
            };
            if pi != t {
                d.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                col_swap(&mut d, pj, t);
                col_swap(&mut v, pj, t);
                v_inv.swap(pj, t);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = nearest_quotient(d[i][t], p);
                row_axpy(&mut d, i, t, -q);
                row_axpy(&mut u, i, t, -q);
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = nearest_quotient(d[t][j], p);
                col_axpy(&mut d, j, t, -q);
                col_axpy(&mut v, j, t, -q);
                row_axpy(&mut v_inv, t, j, q);
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, 1);
                    row_axpy(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    finish(narrow(u), narrow(v), narrow(v_inv), narrow(d))
}

fn narrow(m: Vec<Vec<Wide>>) -> Vec<Vec<i64>> {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("Smith normal form entry exceeds 64 bits")).collect())
        .collect()
}

fn finish(u: Vec<Vec<i64>>, v: Vec<Vec<i64>>, v_inv: Vec<Vec<i64>>, d: Vec<Vec<i64>>) -> SnfResult {
    let k = d.len().min(d.first().map_or(0, Vec::len));
    let diagonal = (0..k).map(|i| d[i][i]).take_while(|&x| x != 0).collect();
    SnfResult { u, v, v_inv, d, diagonal }
}

/// Integer matrix product.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], b_cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).fold(0i64, |acc, (&x, brow)| acc.checked_add(x.checked_mul(brow[j]).expect("overflow in matrix product")).expect("overflow in matrix product")))
                .collect()
        })
        .collect()
}

/// Exact determinant of a small integer matrix by fraction-free elimination.
pub fn int_determinant(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    let mut sign = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_two_three() {
        let r = smith_normal_form(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(r.diagonal, vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let r = smith_normal_form(&[vec![0, 0, 0], vec![0, 0, 0]], 3);
        assert!(r.diagonal.is_empty());
        assert_eq!(r.u, identity(2));
        assert_eq!(r.v, identity(3));
    }

    #[test]
    fn already_diagonal_keeps_identity_transforms() {
        let r = smith_normal_form(&[vec![2, 0, 0, 0], vec![0, 6, 0, 0]], 4);
        assert_eq!(r.diagonal, vec![2, 6]);
        assert_eq!(r.u, identity(2));
        assert_eq!(r.v, identity(4));
    }

    #[test]
    fn transforms_reconstruct() {
        let a = vec![vec![4, 6, -2], vec![2, 8, 10], vec![6, 14, 8]];
        let r = smith_normal_form(&a, 3);
        assert_eq!(mat_mul(&mat_mul(&r.u, &a, 3), &r.v, 3), r.d);
        assert_eq!(mat_mul(&r.v, &r.v_inv, 3), identity(3));
        assert_eq!(int_determinant(&r.u).abs(), 1);
    }

    #[test]
    fn dense_matrix_with_large_transforms() {
        // Transforms for this matrix once overflowed 64-bit intermediates.
        let a = vec![
            vec![6, -6, -4, -4, 5, 3],
            vec![-4, 0, 0, 6, -3, 4],
            vec![0, -6, 3, 1, -5, 6],
            vec![-3, 3, -6, 2, -2, -6],
            vec![0, -6, -3, -4, 6, -4],
            vec![-6, 4, -6, -4, -3, 5],
        ];
        let r = smith_normal_form(&a, 6);
        assert_eq!(r.rank(), 6);
        assert_eq!(r.diagonal.iter().map(|&x| x as i128).product::<i128>(), int_determinant(&a).abs());
        assert_eq!(int_determinant(&r.u).abs(), 1);
        assert_eq!(int_determinant(&r.v).abs(), 1);
    }
}
