//! Matrices over the Laurent ring.

use super::{exact_div, LaurentPoly};

/// A dense matrix of Laurent polynomials; rows and columns are identified
/// by index (edges and faces for presentation matrices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix { nvars, rows, cols, data: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            for x in row {
                assert_eq!(x.nvars(), nvars, "variable count mismatch");
                data.push(x);
            }
        }
        LaurentMatrix { nvars, rows: r, cols: c, data }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentPoly) {
        assert_eq!(x.nvars(), self.nvars, "variable count mismatch");
        self.data[i * self.cols + j] = x;
    }

    /// Adds `x` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, x: &LaurentPoly) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + x;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = LaurentMatrix::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        LaurentMatrix { nvars: self.nvars, rows: rows.len(), cols: cols.len(), data }
    }

    /// Applies a monomial specialisation to every entry.
    pub fn specialize(&self, a: &[Vec<i64>], chi: Option<&[i8]>) -> Self {
        LaurentMatrix {
            nvars: a.len(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.specialize(a, chi)).collect(),
        }
    }

    /// Integer matrix obtained by setting every variable to 1.
    pub fn eval_ones(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j).eval_ones()).expect("entry too large for i64"))
                    .collect()
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; the empty matrix has determinant 1.
    pub fn determinant(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = LaurentPoly::one(self.nvars);
        let mut negate = false;
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return LaurentPoly::zero(self.nvars);
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
                }
                m[i][k] = LaurentPoly::zero(self.nvars);
            }
            prev = m[k][k].clone();
        }
        let det = if n == 0 { LaurentPoly::one(self.nvars) } else { m[n - 1][n - 1].clone() };
        if negate {
            -det
        } else {
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        assert_eq!(LaurentMatrix::zeros(2, 0, 0).determinant(), LaurentPoly::one(2));
        let v = |i| LaurentPoly::var(4, i);
        let m = LaurentMatrix::from_rows(4, vec![vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(m.determinant(), &(&v(0) * &v(3)) - &(&v(1) * &v(2)));
        let swapped = LaurentMatrix::from_rows(4, vec![vec![LaurentPoly::zero(4), v(1)], vec![v(2), v(3)]]);
        assert_eq!(swapped.determinant(), -(&v(1) * &v(2)));
    }
}
