//! Dense univariate polynomials over Z, with modular images used to speed
//! up exact division and gcd. Every modular answer is confirmed over Z.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::LaurentPoly;

/// Coefficients lowest degree first, no trailing zeros.
pub(crate) type Dense = Vec<BigInt>;

/// Splits a univariate Laurent polynomial as `t^shift · dense`, with the
/// dense part having a nonzero constant term.
pub(crate) fn to_dense(p: &LaurentPoly) -> (i64, Dense) {
    let shift = p.min_exponents()[0];
    let deg = p.terms().next_back().map_or(shift, |(e, _)| e[0]);
    let mut v = vec![BigInt::zero(); (deg - shift + 1) as usize];
    for (e, c) in p.terms() {
        v[(e[0] - shift) as usize] = c.clone();
    }
    (shift, v)
}

pub(crate) fn from_dense(shift: i64, v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(1, v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (vec![k as i64 + shift], c.clone())))
}

fn small_terms(p: &LaurentPoly) -> Option<Vec<(&[i64], i128)>> {
    p.terms().map(|(e, c)| Some((e, i128::from(c.to_i64()?)))).collect()
}

/// Product of two polynomials with machine-sized coefficients, using packed
/// exponent keys; `None` when a coefficient does not fit.
pub(crate) fn mul_small(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let nv = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Some(LaurentPoly::zero(nv));
    }
    let (xs, ys) = (small_terms(a)?, small_terms(b)?);
    let (lo_a, lo_b) = (a.min_exponents(), b.min_exponents());
    let hi = |p: &LaurentPoly| (0..nv).map(|k| p.terms().map(|(e, _)| e[k]).max().unwrap()).collect::<Vec<i64>>();
    let (hi_a, hi_b) = (hi(a), hi(b));
    // mixed-radix strides over the exponent box of the product
    let mut strides = Vec::with_capacity(nv);
    let mut size: u64 = 1;
    for k in 0..nv {
        strides.push(size);
        let span = (hi_a[k] - lo_a[k] + hi_b[k] - lo_b[k] + 1) as u64;
        size = size.checked_mul(span)?;
    }
    let key = |e: &[i64], lo: &[i64]| -> u64 { (0..nv).map(|k| (e[k] - lo[k]) as u64 * strides[k]).sum() };
    let ka: Vec<(u64, i128)> = xs.iter().map(|(e, c)| (key(e, &lo_a), *c)).collect();
    let kb: Vec<(u64, i128)> = ys.iter().map(|(e, c)| (key(e, &lo_b), *c)).collect();
    let mut sums: Vec<(u64, i128)> = Vec::new();
    if size <= 1 << 22 && size <= 64 * (ka.len() * kb.len()) as u64 {
        let mut out = vec![0i128; size as usize];
        for &(x, cx) in &ka {
            for &(y, cy) in &kb {
                let slot = &mut out[(x + y) as usize];
                *slot = slot.checked_add(cx.checked_mul(cy)?)?;
            }
        }
        sums.extend(out.into_iter().enumerate().filter(|&(_, c)| c != 0).map(|(k, c)| (k as u64, c)));
    } else {
        let mut out: std::collections::HashMap<u64, i128> = std::collections::HashMap::with_capacity(ka.len() * kb.len());
        for &(x, cx) in &ka {
            for &(y, cy) in &kb {
                let slot = out.entry(x + y).or_default();
                *slot = slot.checked_add(cx.checked_mul(cy)?)?;
            }
        }
        sums.extend(out.into_iter().filter(|&(_, c)| c != 0));
    }
    let base: Vec<i64> = (0..nv).map(|k| lo_a[k] + lo_b[k]).collect();
    let unpack = |mut key: u64| -> Vec<i64> {
        let mut e = vec![0i64; nv];
        for k in (0..nv).rev() {
            e[k] = base[k] + (key / strides[k]) as i64;
            key %= strides[k];
        }
        e
    };
    Some(LaurentPoly::from_terms(nv, sums.into_iter().map(|(k, c)| (unpack(k), BigInt::from(c)))))
}

fn trim<T: PartialEq + Default>(v: &mut Vec<T>) {
    while v.last().is_some_and(|x| *x == T::default()) {
        v.pop();
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^31, largest first, so products fit in a u64.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 31) - 1;
        while out.len() < 512 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn image(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let pi = p as i64;
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| match c.to_i64() {
            Some(x) => x.rem_euclid(pi) as u64,
            None => c.mod_floor(&pb).to_u64().unwrap(),
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` over Z/p; `b` must have a unit leading coefficient.
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let support: Vec<(usize, u64)> = b.iter().copied().enumerate().filter(|&(_, x)| x != 0).collect();
    while a.len() > db {
        let top = a.len() - 1;
        let q = mul_mod(a[top], inv, p);
        if q != 0 {
            let off = top - db;
            for &(k, bk) in &support {
                let s = mul_mod(q, bk, p);
                a[off + k] = (a[off + k] + p - s) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        a.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
    }
    a
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Exact quotient `a / b` in Z[t], if it exists.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    if a.len() < b.len() {
        return if a.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    if let Some(q) = div_exact_small(a, b) {
        return q;
    }
    // cheap rejection through one modular image
    let p = primes()[0];
    let bp = image(b, p);
    if bp.len() == b.len() && !rem_mod(image(a, p), &bp, p).is_empty() {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for top in (db..a.len()).rev() {
        if rem[top].is_zero() {
            continue;
        }
        let (q, r) = rem[top].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        let off = top - db;
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                rem[off + k] -= &q * bk;
            }
        }
        quot[off] = q;
    }
    if rem[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Machine-integer division. The outer `None` means an intermediate value
/// left the i128 range and the caller must redo the work with big integers.
fn div_exact_small(a: &[BigInt], b: &[BigInt]) -> Option<Option<Dense>> {
    let small = |v: &[BigInt]| v.iter().map(|c| c.to_i64().map(i128::from)).collect::<Option<Vec<i128>>>();
    let (mut rem, bs) = (small(a)?, small(b)?);
    let db = bs.len() - 1;
    let lc = bs[db];
    let support: Vec<(usize, i128)> = bs.iter().copied().enumerate().filter(|&(_, x)| x != 0).collect();
    let mut quot = vec![0i128; rem.len() - db];
    for top in (db..rem.len()).rev() {
        let r = rem[top];
        if r == 0 {
            continue;
        }
        if r % lc != 0 {
            return Some(None);
        }
        let q = r / lc;
        let off = top - db;
        for &(k, bk) in &support {
            rem[off + k] = rem[off + k].checked_sub(q.checked_mul(bk)?)?;
        }
        quot[off] = q;
    }
    if rem[..db].iter().any(|&c| c != 0) {
        return Some(None);
    }
    let mut out: Dense = quot.into_iter().map(BigInt::from).collect();
    trim(&mut out);
    Some(Some(out))
}

/// gcd in Z[t] by Chinese remaindering of modular gcds, confirmed by exact
/// division; the sign is left unnormalised.
pub(crate) fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Dense {
    let (ca, cb) = (content(a), content(b));
    let c = ca.gcd(&cb);
    let pa: Dense = a.iter().map(|x| x / &ca).collect();
    let pb: Dense = b.iter().map(|x| x / &cb).collect();
    let lca = pa.last().unwrap();
    let lcb = pb.last().unwrap();
    let lcg = lca.gcd(lcb);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    let mut previous: Option<Dense> = None;
    for &p in primes() {
        let pbig = BigInt::from(p);
        if (lca % &pbig).is_zero() || (lcb % &pbig).is_zero() {
            continue;
        }
        let g = gcd_mod(image(&pa, p), image(&pb, p), p);
        if g.len() == 1 {
            return vec![c];
        }
        let scale = lcg.mod_floor(&pbig).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&x| mul_mod(x, scale, p)).collect();
        let d = g.len() - 1;
        if d > deg {
            continue;
        }
        if d < deg {
            deg = d;
            modulus = pbig.clone();
            acc = g.iter().map(|&x| BigInt::from(x)).collect();
            previous = None;
        } else {
            // combine x ≡ acc (mod modulus), x ≡ g (mod p)
            let inv = inv_mod((&modulus % &pbig).to_u64().unwrap(), p);
            for (ak, &gk) in acc.iter_mut().zip(&g) {
                let cur = ak.mod_floor(&pbig).to_u64().unwrap();
                let t = mul_mod((gk + p - cur) % p, inv, p);
                *ak += &modulus * BigInt::from(t);
            }
            modulus *= &pbig;
        }
        let half = &modulus / 2;
        let candidate: Dense = acc.iter().map(|x| if x > &half { x - &modulus } else { x.clone() }).collect();
        if previous.as_ref() == Some(&candidate) {
            let cc = content(&candidate);
            let prim: Dense = candidate.iter().map(|x| x / &cc).collect();
            if div_exact(&pa, &prim).is_some() && div_exact(&pb, &prim).is_some() {
                return prim.iter().map(|x| x * &c).collect();
            }
        }
        previous = Some(candidate);
    }
    panic!("modular gcd did not stabilise");
}
