//! Maximal minors on packed polynomials: exponents inside a fixed box are
//! encoded as one integer key, coefficients as i128. Any overflow sends the
//! caller back to the general routine.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::laurent::{LaurentMatrix, LaurentPoly};

/// Sorted by key, no zero coefficients.
type Packed = Vec<(u64, i128)>;

struct Layout {
    base: Vec<i64>,
    strides: Vec<u64>,
}

impl Layout {
    /// Box holding every product of one entry per row.
    fn for_matrix(m: &LaurentMatrix) -> Option<Self> {
        let nv = m.nvars();
        let mut base = vec![0i64; nv];
        let mut top = vec![0i64; nv];
        for i in 0..m.rows() {
            let mut lo = vec![i64::MAX; nv];
            let mut hi = vec![i64::MIN; nv];
            for p in m.row(i) {
                for (e, _) in p.terms() {
                    for k in 0..nv {
                        lo[k] = lo[k].min(e[k]);
                        hi[k] = hi[k].max(e[k]);
                    }
                }
            }
            if nv > 0 && lo[0] == i64::MAX {
                // zero row: every minor vanishes
                lo = vec![0; nv];
                hi = vec![0; nv];
            }
            for k in 0..nv {
                base[k] += lo[k];
                top[k] += hi[k];
            }
        }
        let mut strides = Vec::with_capacity(nv);
        let mut size: u64 = 1;
        for k in 0..nv {
            strides.push(size);
            size = size.checked_mul(u64::try_from(top[k] - base[k] + 1).ok()?)?;
        }
        Some(Layout { base, strides })
    }

    /// Key of an entry exponent; entries are packed relative to the origin,
    /// and the box base is added once to the minor at the end.
    fn entry_key(&self, e: &[i64], row_lo: &[i64]) -> u64 {
        e.iter().zip(row_lo).zip(&self.strides).map(|((x, l), s)| (x - l) as u64 * s).sum()
    }

    fn unpack(&self, mut key: u64) -> Vec<i64> {
        let mut e = vec![0i64; self.base.len()];
        for k in (0..e.len()).rev() {
            e[k] = self.base[k] + (key / self.strides[k]) as i64;
            key %= self.strides[k];
        }
        e
    }
}

/// `acc += c · shift(p, by)`, merging sorted vectors.
fn axpy(acc: &Packed, p: &Packed, c: i128, by: u64) -> Option<Packed> {
    let mut out = Vec::with_capacity(acc.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < p.len() {
        let kb = p.get(j).map(|&(k, _)| k + by);
        match (acc.get(i), kb) {
            (Some(&(ka, ca)), Some(kb)) if ka == kb => {
                let v = ca.checked_add(c.checked_mul(p[j].1)?)?;
                if v != 0 {
                    out.push((ka, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ka, ca)), Some(kb)) if ka < kb => {
                out.push((ka, ca));
                i += 1;
            }
            (Some(&(ka, ca)), None) => {
                out.push((ka, ca));
                i += 1;
            }
            (_, Some(kb)) => {
                out.push((kb, c.checked_mul(p[j].1)?));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

/// Laplace expansion row by row, as in the general routine. `None` when the
/// packed representation does not apply.
pub(super) fn maximal_minors_packed(m: &LaurentMatrix) -> Option<BTreeMap<Vec<usize>, LaurentPoly>> {
    if m.cols() > 64 {
        return None;
    }
    let nv = m.nvars();
    let layout = Layout::for_matrix(m)?;
    // entries as (column, [(key, coef)]) with keys relative to the row minimum
    let rows: Vec<Vec<(usize, Vec<(u64, i128)>)>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let mut lo = vec![i64::MAX; nv];
            for p in row {
                for (e, _) in p.terms() {
                    for k in 0..nv {
                        lo[k] = lo[k].min(e[k]);
                    }
                }
            }
            row.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(c, p)| {
                    let terms = p.terms().map(|(e, x)| Some((layout.entry_key(e, &lo), i128::from(x.to_i64()?)))).collect::<Option<Vec<_>>>()?;
                    Some((c, terms))
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    let mut level: HashMap<u64, Packed> = HashMap::from([(0u64, vec![(0u64, 1i128)])]);
    for (j, row) in rows.iter().enumerate() {
        let mut next: HashMap<u64, Packed> = HashMap::new();
        for (&mask, minor) in &level {
            for (c, entry) in row {
                let bit = 1u64 << c;
                if mask & bit != 0 {
                    continue;
                }
                let pos = (mask & (bit - 1)).count_ones() as usize;
                let sign: i128 = if (j + pos) % 2 == 0 { 1 } else { -1 };
                let slot = next.entry(mask | bit).or_default();
                for &(k, x) in entry {
                    *slot = axpy(slot, minor, sign.checked_mul(x)?, k)?;
                }
            }
        }
        next.retain(|_, p| !p.is_empty());
        level = next;
    }
    Some(
        level
            .into_iter()
            .map(|(mask, p)| {
                let cols: Vec<usize> = (0..64).filter(|&c| mask >> c & 1 == 1).collect();
                let poly = LaurentPoly::from_terms(nv, p.into_iter().map(|(k, c)| (layout.unpack(k), BigInt::from(c))));
                (cols, poly)
            })
            .collect(),
    )
}
