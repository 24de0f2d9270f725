//! Oracles shared by the integration tests. They work from the gluing table
//! alone and avoid the library's presentation-matrix and minor code paths.
#![allow(dead_code)]

use std::collections::VecDeque;

use veerpoly::census_io::{load_census, CensusEntry, GluingTable};
use veerpoly::homology::{smith_normal_form, H1Data};
use veerpoly::laurent::{gcd, LaurentMatrix, LaurentPoly};
use veerpoly::taut_structure::TautStructure;

pub const CENSUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/veering_census_with_data.txt");

pub fn census() -> Vec<CensusEntry> {
    load_census(CENSUS).expect("census file is readable")
}

/// Every `step`-th census entry, starting at `offset`.
pub fn sample(entries: &[CensusEntry], step: usize, offset: usize) -> Vec<&CensusEntry> {
    entries.iter().skip(offset).step_by(step).collect()
}

/// Whitespace-separated metadata column (0-based, the signature is column 0).
pub fn column<'a>(entry_line: &'a str, k: usize) -> &'a str {
    entry_line.split_whitespace().nth(k).expect("census column present")
}

/// π_1 presentation from the dual spine: generators are the faces off a
/// breadth-first spanning tree of the tetrahedra, relators read around the
/// edge classes. A face is crossed positively from `sides[0]` to `sides[1]`.
pub struct Presentation {
    pub n_gens: usize,
    pub gen_of_face: Vec<Option<usize>>,
    pub relators: Vec<Vec<(usize, i64)>>,
    /// Tree parent of each tetrahedron: (face, +1 if entered from sides[0]).
    pub parent: Vec<Option<(usize, usize, i64)>>,
    pub order: Vec<usize>,
}

pub fn presentation(table: &GluingTable) -> Presentation {
    let n = table.n_tet();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; table.n_faces()];
    let mut order = vec![0];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for i in 0..4 {
            let (u, _) = table.gluing(t, i);
            if !seen[u] {
                seen[u] = true;
                let f = table.face_id(veerpoly::census_io::Side { tet: t, face: i });
                in_tree[f] = true;
                let dir = if table.face(f).sides[0].tet == t && table.face(f).sides[0].face == i { 1 } else { -1 };
                parent[u] = Some((t, f, dir));
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    let mut gen_of_face = vec![None; table.n_faces()];
    let mut n_gens = 0;
    for f in 0..table.n_faces() {
        if !in_tree[f] {
            gen_of_face[f] = Some(n_gens);
            n_gens += 1;
        }
    }
    let relators = (0..table.n_edges())
        .map(|e| {
            table
                .edge_cycle(e)
                .iter()
                .filter_map(|emb| {
                    let side = emb.exit_face();
                    let f = table.face_id(side);
                    let s = if table.face(f).sides[0] == side { 1 } else { -1 };
                    gen_of_face[f].map(|g| (g, s))
                })
                .collect()
        })
        .collect();
    Presentation { n_gens, gen_of_face, relators, parent, order }
}

/// Abelianised presentation: (torsion divisors > 1, rank).
pub fn abelianised_h1(p: &Presentation) -> (Vec<i64>, usize) {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|w| {
            let mut r = vec![0; p.n_gens];
            for &(g, s) in w {
                r[g] += s;
            }
            r
        })
        .collect();
    let snf = smith_normal_form(&rows, p.n_gens);
    let nonzero: Vec<i64> = snf.diagonal.iter().copied().filter(|&d| d != 0).map(i64::abs).collect();
    let torsion = nonzero.iter().copied().filter(|&d| d > 1).collect();
    (torsion, p.n_gens - nonzero.len())
}

/// Images of the generators in H_M under the library's face cocycle,
/// transported along the oracle's own spanning tree.
pub fn generator_classes(p: &Presentation, table: &GluingTable, ts: &TautStructure, h1: &H1Data) -> Vec<Vec<i64>> {
    let r = h1.rank();
    // H_M class of crossing f from sides[0] to sides[1]
    let dir_class = |f: usize| -> Vec<i64> {
        let c = h1.cocycle(f).to_vec();
        if ts.side0_below(f) {
            c
        } else {
            c.iter().map(|x| -x).collect()
        }
    };
    let mut pot = vec![vec![0i64; r]; table.n_tet()];
    for &t in &p.order[1..] {
        let (par, f, dir) = p.parent[t].unwrap();
        let c = dir_class(f);
        pot[t] = pot[par].iter().zip(&c).map(|(a, b)| a + dir * b).collect();
    }
    let mut out = vec![Vec::new(); p.n_gens];
    for f in 0..table.n_faces() {
        if let Some(g) = p.gen_of_face[f] {
            let [s0, s1] = table.face(f).sides;
            let c = dir_class(f);
            out[g] = (0..r).map(|k| pot[s0.tet][k] + c[k] - pot[s1.tet][k]).collect();
        }
    }
    out
}

/// Fox-calculus Alexander matrix (relators × generators) over Z[H_M].
pub fn fox_matrix(p: &Presentation, phi: &[Vec<i64>], r: usize) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(r, p.relators.len(), p.n_gens);
    for (i, w) in p.relators.iter().enumerate() {
        let mut prefix = vec![0i64; r];
        for &(g, s) in w {
            if s == 1 {
                m.add_to(i, g, &LaurentPoly::monomial(r, prefix.clone(), 1));
                prefix.iter_mut().zip(&phi[g]).for_each(|(a, b)| *a += b);
            } else {
                prefix.iter_mut().zip(&phi[g]).for_each(|(a, b)| *a -= b);
                m.add_to(i, g, &LaurentPoly::monomial(r, prefix.clone(), -1));
            }
        }
        assert!(prefix.iter().all(|&x| x == 0), "relator {i} is not null-homologous");
    }
    m
}

/// gcd of the (g − 1)-minors of a Fox matrix, each minor by Bareiss.
pub fn fox_alexander(m: &LaurentMatrix) -> LaurentPoly {
    let k = m.cols() - 1;
    let mut acc = LaurentPoly::zero(m.nvars());
    let rows_all: Vec<usize> = (0..m.rows()).collect();
    for rows in combinations(&rows_all, k) {
        for drop in 0..m.cols() {
            let cols: Vec<usize> = (0..m.cols()).filter(|&j| j != drop).collect();
            acc = gcd(&acc, &m.select(&rows, &cols).determinant());
        }
    }
    acc.normalize_unit()
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> =
        combinations(&items[1..], k - 1).into_iter().map(|mut c| {
            c.insert(0, items[0]);
            c
        }).collect();
    out.extend(combinations(&items[1..], k));
    out
}

/// Integer determinant by cofactor expansion.
pub fn cofactor_det(m: &[Vec<LaurentPoly>], nv: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(nv);
    }
    let mut acc = LaurentPoly::zero(nv);
    for j in 0..n {
        let minor: Vec<Vec<LaurentPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &cofactor_det(&minor, nv);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Abelianised relator rows of a presentation.
pub fn abelian_rows(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators
        .iter()
        .map(|w| {
            let mut r = vec![0; p.n_gens];
            for &(g, s) in w {
                r[g] += s;
            }
            r
        })
        .collect()
}

/// A face cycle (crossing each face from the tetrahedron below to the one
/// above counted positively) written on the presentation's generators.
pub fn chain_on_generators(p: &Presentation, ts: &TautStructure, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.n_gens];
    for (f, &z) in chain.iter().enumerate() {
        if let Some(g) = p.gen_of_face[f] {
            out[g] += if ts.side0_below(f) { z } else { -z };
        }
    }
    out
}

/// (torsion divisors > 1, rank) of Z^n modulo the given rows.
pub fn quotient_group(rows: &[Vec<i64>], n: usize) -> (Vec<i64>, usize) {
    let snf = smith_normal_form(rows, n);
    let nonzero: Vec<i64> = snf.diagonal.iter().copied().filter(|&d| d != 0).map(i64::abs).collect();
    (nonzero.iter().copied().filter(|&d| d > 1).collect(), n - nonzero.len())
}

/// Basis of the integer functionals on Z^n vanishing on all rows.
pub fn integer_annihilator(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(rows, n);
    (snf.rank()..n).map(|i| (0..n).map(|k| snf.v[k][i]).collect()).collect()
}

/// Whether `target` is a GF(2) combination of `vectors`.
pub fn in_span_mod2(vectors: &[Vec<i64>], target: &[i64]) -> bool {
    let n = target.len();
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let reduce = |v: &mut Vec<u8>, basis: &[Vec<u8>], pivots: &[usize]| {
        for (b, &p) in basis.iter().zip(pivots) {
            if v[p] == 1 {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
    };
    for v in vectors {
        let mut v: Vec<u8> = v.iter().map(|x| x.rem_euclid(2) as u8).collect();
        reduce(&mut v, &basis, &pivots);
        if let Some(p) = (0..n).find(|&k| v[k] == 1) {
            for b in basis.iter_mut() {
                if b[p] == 1 {
                    b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                }
            }
            basis.push(v);
            pivots.push(p);
        }
    }
    let mut t: Vec<u8> = target.iter().map(|x| x.rem_euclid(2) as u8).collect();
    reduce(&mut t, &basis, &pivots);
    t.iter().all(|&x| x == 0)
}

/// ω on the presentation's generators, from a Z/2 face cocycle β carried
/// along the presentation's own spanning tree.
pub fn omega_on_generators(p: &Presentation, table: &GluingTable, beta: &[u8]) -> Vec<i64> {
    let mut pot = vec![0u8; table.n_tet()];
    for &t in &p.order[1..] {
        let (par, f, _) = p.parent[t].unwrap();
        pot[t] = pot[par] ^ beta[f];
    }
    let mut out = vec![0; p.n_gens];
    for f in 0..table.n_faces() {
        if let Some(g) = p.gen_of_face[f] {
            let [s0, s1] = table.face(f).sides;
            out[g] = i64::from(pot[s0.tet] ^ beta[f] ^ pot[s1.tet]);
        }
    }
    out
}

/// Parses a polynomial written like `a^7b - 2a^5b^2 + b^5` in the two
/// variables `a` and `b`.
pub fn parse_ab(text: &str) -> LaurentPoly {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '\\' && *c != '&').collect();
    let mut terms = Vec::new();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => -1,
            _ => 1,
        };
        rest = rest.trim_start_matches(['+', '-']);
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coef: i64 = if digits == 0 { 1 } else { term[..digits].parse().unwrap() };
        let mut exp = vec![0i64; 2];
        let mut vars = term[digits..].chars().peekable();
        while let Some(v) = vars.next() {
            let k = match v {
                'a' => 0,
                'b' => 1,
                other => panic!("unexpected {other:?} in {term:?}"),
            };
            let mut e = 1;
            if vars.peek() == Some(&'^') {
                vars.next();
                let mut s = String::new();
                while let Some(d) = vars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(*d);
                    vars.next();
                }
                e = s.parse().unwrap();
            }
            exp[k] += e;
        }
        terms.push((exp, sign * coef));
    }
    LaurentPoly::from_terms(2, terms)
}

/// Matrix taking H_M coordinates of `from` to those of `to`, for the same
/// manifold triangulated by `to_ts` with faces relabelled by `tet_map`
/// (old tetrahedron → new tetrahedron, face numbers unchanged).
pub fn basis_change(
    from_ts: &TautStructure,
    from: &H1Data,
    to_ts: &TautStructure,
    to: &H1Data,
    tet_map: &[usize],
) -> Vec<Vec<i64>> {
    let t = from.torsion().len();
    let r = from.rank();
    assert_eq!(to.rank(), r);
    let cols: Vec<Vec<i64>> = from.generators()[t..]
        .iter()
        .map(|g| {
            let mut chain = vec![0i64; to_ts.n_faces()];
            for (f, &z) in g.iter().enumerate() {
                if z == 0 {
                    continue;
                }
                let b = from_ts.below(f);
                let mapped = veerpoly::census_io::Side { tet: tet_map[b.tet], face: b.face };
                let g2 = to_ts.table().face_id(mapped);
                chain[g2] += if to_ts.below(g2) == mapped { z } else { -z };
            }
            let class = to.class_of(&chain);
            class[to.torsion().len()..].to_vec()
        })
        .collect();
    (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// All r × r integer matrices with entries in `-bound..=bound` and determinant ±1.
pub fn unimodular_matrices(r: usize, bound: i64) -> Vec<Vec<Vec<i64>>> {
    let n = r * r;
    let width = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for code in 0..width.pow(n as u32) {
        let mut c = code;
        let flat: Vec<i64> = (0..n)
            .map(|_| {
                let x = (c % width) as i64 - bound;
                c /= width;
                x
            })
            .collect();
        let m: Vec<Vec<i64>> = flat.chunks(r).map(<[i64]>::to_vec).collect();
        if int_det(&m).abs() == 1 {
            out.push(m);
        }
    }
    out
}

/// Integer determinant by cofactor expansion.
pub fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let term = m[0][j] as i128 * int_det(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

/// A random Laurent polynomial with up to `terms` terms, exponents in
/// `-span..=span` and coefficients in `-coef..=coef`.
pub fn random_poly(rng: &mut impl rand::Rng, nvars: usize, terms: usize, span: i64, coef: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        nvars,
        (0..rng.gen_range(0..=terms)).map(|_| {
            let exp: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-span..=span)).collect();
            (exp, rng.gen_range(-coef..=coef))
        }),
    )
}

/// gcd of all maximal minors, each by cofactor expansion.
pub fn exhaustive_minor_gcd(m: &LaurentMatrix) -> LaurentPoly {
    let nv = m.nvars();
    let (r, c) = (m.rows(), m.cols());
    if r > c {
        return LaurentPoly::zero(nv);
    }
    let rows: Vec<Vec<LaurentPoly>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let all: Vec<usize> = (0..c).collect();
    let mut acc = LaurentPoly::zero(nv);
    for cols in combinations(&all, r) {
        let sub: Vec<Vec<LaurentPoly>> = rows.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        acc = gcd(&acc, &cofactor_det(&sub, nv));
    }
    acc.normalize_unit()
}

/// Whether `u · a · v == d`, multiplied out in big integers.
pub fn reconstructs(u: &[Vec<i64>], a: &[Vec<i64>], v: &[Vec<i64>], d: &[Vec<i64>]) -> bool {
    use num_bigint::BigInt;
    let big = |m: &[Vec<i64>]| -> Vec<Vec<BigInt>> { m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() };
    let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>], cols: usize| -> Vec<Vec<BigInt>> {
        x.iter()
            .map(|row| (0..cols).map(|j| row.iter().zip(y).map(|(p, yr)| p * &yr[j]).sum()).collect())
            .collect()
    };
    let n = v.len();
    mul(&mul(&big(u), &big(a), n), &big(v), n) == big(d)
}
