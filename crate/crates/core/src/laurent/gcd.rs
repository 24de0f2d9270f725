//! Exact division and greatest common divisors.
//!
//! Both reduce to ordinary polynomials by shifting exponents. The gcd is
//! the recursive primitive subresultant algorithm: treat the polynomial as
//! univariate in one variable over the ring of the remaining ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Mono};

/// Returns `s` with `p = q · s` if `q` divides `p` in the Laurent ring.
///
/// # Panics
/// If `q` is zero.
pub fn exact_div(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!q.is_zero(), "division by zero polynomial");
    assert_eq!(p.nvars, q.nvars, "variable count mismatch");
    if p.is_zero() {
        return Some(LaurentPoly::zero(p.nvars));
    }
    if p.nvars == 1 {
        let (ps, pd) = super::dense::to_dense(p);
        let (qs, qd) = super::dense::to_dense(q);
        return super::dense::div_exact(&pd, &qd).map(|s| super::dense::from_dense(ps - qs, &s));
    }
    let pm = p.min_exponents();
    let qm = q.min_exponents();
    let ps = p.shift(&pm.iter().map(|e| -e).collect::<Vec<_>>());
    let qs = q.shift(&qm.iter().map(|e| -e).collect::<Vec<_>>());
    let s = match kronecker_div(&ps, &qs) {
        Some(found) => found?,
        None => div_poly(&ps, &qs)?,
    };
    Some(s.shift(&pm.iter().zip(&qm).map(|(a, b)| a - b).collect::<Vec<_>>()))
}

/// Exact division of ordinary polynomials through the substitution
/// `x_k ↦ t^{stride_k}`, which is injective on the dividend's degree box;
/// the decoded quotient is confirmed by multiplying back. The outer `None`
/// means the box is too large for this route.
fn kronecker_div(p: &LaurentPoly, q: &LaurentPoly) -> Option<Option<LaurentPoly>> {
    let nv = p.nvars;
    let deg = |x: &LaurentPoly, k: usize| x.terms.keys().map(|m| m.0[k]).max().unwrap_or(0);
    let dp: Vec<i64> = (0..nv).map(|k| deg(p, k)).collect();
    if (0..nv).any(|k| deg(q, k) > dp[k]) {
        return Some(None);
    }
    let mut strides = Vec::with_capacity(nv);
    let mut size: i64 = 1;
    for &d in &dp {
        strides.push(size);
        size = size.checked_mul(d + 1).filter(|&s| s <= 1 << 24)?;
    }
    let pack = |x: &LaurentPoly| {
        LaurentPoly::from_terms(1, x.terms.iter().map(|(m, c)| (vec![m.0.iter().zip(&strides).map(|(e, s)| e * s).sum()], c.clone())))
    };
    let Some(quot) = exact_div(&pack(p), &pack(q)) else {
        return Some(None);
    };
    let mut terms = std::collections::BTreeMap::new();
    for (m, c) in quot.terms {
        let mut key = m.0[0];
        if key < 0 {
            return Some(None);
        }
        let mut e = vec![0i64; nv];
        for k in (0..nv).rev() {
            e[k] = key / strides[k];
            key %= strides[k];
        }
        terms.insert(Mono(e), c);
    }
    let s = LaurentPoly { nvars: nv, terms };
    Some((&s * q == *p).then_some(s))
}

/// Exact division of ordinary polynomials (nonnegative exponents).
fn div_poly(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    let (qlead_m, qlead_c) = q.leading_term().map(|(m, c)| (m.to_vec(), c.clone()))?;
    if q.len() == 1 {
        let mut terms = std::collections::BTreeMap::new();
        for (m, c) in &p.terms {
            let (quot, rem) = c.div_rem(&qlead_c);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<i64> = m.0.iter().zip(&qlead_m).map(|(a, b)| a - b).collect();
            if e.iter().any(|&x| x < 0) {
                return None;
            }
            terms.insert(Mono(e), quot);
        }
        return Some(LaurentPoly { nvars: p.nvars, terms });
    }
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero(p.nvars);
    while let Some((m, c)) = rem.leading_term() {
        let e: Vec<i64> = m.iter().zip(&qlead_m).map(|(a, b)| a - b).collect();
        if e.iter().any(|&x| x < 0) {
            return None;
        }
        let (qc, r) = c.div_rem(&qlead_c);
        if !r.is_zero() {
            return None;
        }
        let t = LaurentPoly::monomial(p.nvars, e, qc);
        rem = &rem - &(&t * q);
        quot = &quot + &t;
    }
    Some(quot)
}

fn exact(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    div_poly(p, q).expect("inexact division inside gcd")
}

/// Unit-normalized gcd in the Laurent ring; `gcd(0, 0) = 0`.
pub fn gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    assert_eq!(p.nvars, q.nvars, "variable count mismatch");
    if p.is_zero() {
        return q.normalize_unit();
    }
    if q.is_zero() {
        return p.normalize_unit();
    }
    if p.is_unit() || q.is_unit() {
        return LaurentPoly::one(p.nvars);
    }
    let g = if p.nvars == 1 {
        let (_, pd) = super::dense::to_dense(p);
        let (_, qd) = super::dense::to_dense(q);
        super::dense::from_dense(0, &super::dense::gcd_z(&pd, &qd)).normalize_unit()
    } else {
        poly_gcd(&p.normalize_unit(), &q.normalize_unit()).normalize_unit()
    };
    debug_assert!(exact_div(p, &g).is_some() && exact_div(q, &g).is_some(), "gcd does not divide its inputs");
    g
}

/// gcd of a list, stopping early once the running gcd is a unit.
pub fn gcd_many<'a>(nvars: usize, items: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(nvars);
    for p in items {
        acc = gcd(&acc, p);
        if acc.is_unit() {
            break;
        }
    }
    acc
}

fn degree_in(p: &LaurentPoly, var: usize) -> i64 {
    p.terms.keys().map(|m| m.0[var]).max().unwrap_or(-1)
}

/// Coefficients of `p` as a polynomial in `var`, lowest degree first.
fn coeffs_in(p: &LaurentPoly, var: usize) -> Vec<LaurentPoly> {
    let deg = degree_in(p, var);
    let mut out = vec![LaurentPoly::zero(p.nvars); (deg + 1).max(0) as usize];
    for (m, c) in &p.terms {
        let mut e = m.0.clone();
        let k = std::mem::replace(&mut e[var], 0) as usize;
        out[k].terms.insert(Mono(e), c.clone());
    }
    out
}

fn lead_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    coeffs_in(p, var).pop().unwrap_or_else(|| LaurentPoly::zero(p.nvars))
}

fn times_var_pow(p: &LaurentPoly, var: usize, k: i64) -> LaurentPoly {
    let mut shift = vec![0; p.nvars];
    shift[var] = k;
    p.shift(&shift)
}

fn integer_content(p: &LaurentPoly) -> BigInt {
    p.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// gcd of two nonzero ordinary polynomials (up to sign).
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let nvars = a.nvars;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let var = (0..nvars).find(|&v| degree_in(a, v) > 0 || degree_in(b, v) > 0);
    let Some(var) = var else {
        let g = integer_content(a).gcd(&integer_content(b));
        return LaurentPoly::constant(nvars, g);
    };

    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content = poly_gcd(&ca, &cb);
    let pa = exact(a, &ca);
    let pb = exact(b, &cb);
    if degree_in(&pa, var) == 0 || degree_in(&pb, var) == 0 {
        return content;
    }
    let g = subresultant(pa, pb, var);
    &content * &g
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.nvars);
    for c in coeffs_in(p, var).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, c);
        if acc.is_constant() && integer_content(&acc).is_one() {
            break;
        }
    }
    if acc.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        acc = -acc;
    }
    acc
}

fn primitive_part(p: &LaurentPoly, var: usize) -> LaurentPoly {
    exact(p, &content_in(p, var))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b` in `var`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let db = degree_in(b, var);
    let lb = lead_in(b, var);
    let mut r = a.clone();
    let mut steps = degree_in(a, var) - db + 1;
    while !r.is_zero() && degree_in(&r, var) >= db {
        let dr = degree_in(&r, var);
        let lr = lead_in(&r, var);
        r = &(&lb * &r) - &times_var_pow(&(&lr * b), var, dr - db);
        steps -= 1;
    }
    for _ in 0..steps.max(0) {
        r = &lb * &r;
    }
    r
}

/// Primitive gcd of two primitive polynomials of positive degree in `var`.
fn subresultant(a: LaurentPoly, b: LaurentPoly, var: usize) -> LaurentPoly {
    let nvars = a.nvars;
    let (mut a, mut b) = if degree_in(&a, var) >= degree_in(&b, var) { (a, b) } else { (b, a) };
    let mut g = LaurentPoly::one(nvars);
    let mut h = LaurentPoly::one(nvars);
    loop {
        let delta = degree_in(&a, var) - degree_in(&b, var);
        let r = prem(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if degree_in(&r, var) == 0 {
            return LaurentPoly::one(nvars);
        }
        let denom = &g * &h.pow(delta as u32);
        a = b;
        b = exact(&r, &denom);
        g = lead_in(&a, var);
        h = if delta == 0 {
            h
        } else {
            exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1))
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn division_examples() {
        let num = p(1, &[(&[2], 1), (&[0], -1)]);
        let den = p(1, &[(&[1], 1), (&[0], -1)]);
        assert_eq!(exact_div(&num, &den), Some(p(1, &[(&[1], 1), (&[0], 1)])));
        let num2 = p(1, &[(&[2], 1), (&[0], 1)]);
        assert_eq!(exact_div(&num2, &den), None);
        let laurent = p(1, &[(&[-3], 2), (&[-1], -2)]);
        assert_eq!(exact_div(&laurent, &p(1, &[(&[5], 2)])), Some(p(1, &[(&[-8], 1), (&[-6], -1)])));
    }

    #[test]
    fn gcd_examples() {
        let a = p(1, &[(&[2], 1), (&[0], -1)]);
        let b = p(1, &[(&[2], 1), (&[1], -2), (&[0], 1)]);
        assert_eq!(gcd(&a, &b), p(1, &[(&[1], 1), (&[0], -1)]));
        assert_eq!(gcd(&a, &LaurentPoly::zero(1)), a.normalize_unit());
        assert!(gcd(&LaurentPoly::zero(2), &LaurentPoly::zero(2)).is_zero());
        let six = LaurentPoly::constant(1, 6);
        let four_x = p(1, &[(&[1], 4)]);
        assert_eq!(gcd(&six, &four_x), LaurentPoly::constant(1, 2));
    }

    #[test]
    fn bivariate_gcd() {
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[1, 0], 2), (&[0, 2], 1)]);
        let h = p(2, &[(&[2, 0], 1), (&[0, 1], -3), (&[1, 1], 1)]);
        assert_eq!(gcd(&(&f * &g), &(&f * &h)), f.normalize_unit());
    }
}
