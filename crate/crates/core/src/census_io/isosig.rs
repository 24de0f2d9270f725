//! Decoding of 3-dimensional isomorphism signatures.

use super::ParseError;
use crate::perm::Perm4;

/// Raw gluings as read from a signature: `None` marks a boundary face.
pub(crate) type RawGluings = Vec<[Option<(usize, Perm4)>; 4]>;

fn sig_value(c: u8) -> Option<usize> {
    match c {
        b'a'..=b'z' => Some((c - b'a') as usize),
        b'A'..=b'Z' => Some((c - b'A') as usize + 26),
        b'0'..=b'9' => Some((c - b'0') as usize + 52),
        b'+' => Some(62),
        b'-' => Some(63),
        _ => None,
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self) -> Result<usize, ParseError> {
        let c = *self.bytes.get(self.pos).ok_or(ParseError::Truncated)?;
        let v = sig_value(c).ok_or(ParseError::InvalidChar { ch: c as char, pos: self.pos })?;
        self.pos += 1;
        Ok(v)
    }

    fn read_int(&mut self, n_chars: usize) -> Result<usize, ParseError> {
        let mut value = 0usize;
        for k in 0..n_chars {
            let v = self.next()?;
            value |= v.checked_shl(6 * k as u32).ok_or(ParseError::Truncated)?;
        }
        Ok(value)
    }
}

/// Decodes a single-component signature into raw (unoriented) gluings.
pub(crate) fn decode_raw(sig: &str) -> Result<RawGluings, ParseError> {
    let bytes = sig.as_bytes();
    if let Some(pos) = bytes.iter().position(|&c| sig_value(c).is_none()) {
        return Err(ParseError::InvalidChar { ch: sig[pos..].chars().next().unwrap_or('?'), pos });
    }
    let mut r = Reader { bytes, pos: 0 };
    let first = r.next()?;
    let (n, n_chars) = if first < 63 {
        (first, 1)
    } else {
        let n_chars = r.next()?;
        if n_chars == 0 {
            return Err(ParseError::Truncated);
        }
        (r.read_int(n_chars)?, n_chars)
    };
    if n == 0 {
        return Err(ParseError::Empty);
    }

    let total_facets = 4 * n;
    let mut actions = Vec::with_capacity(total_facets);
    let mut consumed = 0;
    let mut n_joins = 0;
    while consumed < total_facets {
        let v = r.next()?;
        for k in 0..3 {
            let trit = (v >> (2 * k)) & 3;
            if consumed >= total_facets {
                if trit != 0 {
                    return Err(ParseError::BadGluing("nonzero padding in facet actions".into()));
                }
                continue;
            }
            match trit {
                0 => consumed += 1,
                1 => consumed += 2,
                2 => {
                    consumed += 2;
                    n_joins += 1;
                }
                _ => return Err(ParseError::BadGluing("invalid facet action".into())),
            }
            actions.push(trit);
        }
    }
    if consumed != total_facets {
        return Err(ParseError::BadGluing("facet actions overrun the facet count".into()));
    }

    let mut dests = Vec::with_capacity(n_joins);
    for _ in 0..n_joins {
        dests.push(r.read_int(n_chars)?);
    }
    let mut perms = Vec::with_capacity(n_joins);
    for _ in 0..n_joins {
        let idx = r.next()?;
        if idx >= 24 {
            return Err(ParseError::BadGluing(format!("permutation index {idx} out of range")));
        }
        perms.push(Perm4::ordered_s4()[idx]);
    }
    if r.pos != bytes.len() {
        return Err(ParseError::BadGluing(format!("{} trailing characters", bytes.len() - r.pos)));
    }

    let mut gl: RawGluings = vec![[None; 4]; n];
    let mut next_unused = 1;
    let mut act = actions.iter();
    let mut dest = dests.iter();
    let mut perm = perms.iter();
    for pos in 0..n {
        for j in 0..4 {
            if gl[pos][j].is_some() {
                continue;
            }
            match act.next() {
                Some(0) => {}
                Some(1) => {
                    if next_unused >= n {
                        return Err(ParseError::BadGluing("too many new tetrahedra".into()));
                    }
                    let t = next_unused;
                    next_unused += 1;
                    gl[pos][j] = Some((t, Perm4::IDENTITY));
                    gl[t][j] = Some((pos, Perm4::IDENTITY));
                }
                Some(2) => {
                    let d = *dest.next().ok_or(ParseError::Truncated)?;
                    let p = *perm.next().ok_or(ParseError::Truncated)?;
                    if d >= next_unused {
                        return Err(ParseError::BadGluing(format!("join to unvisited tetrahedron {d}")));
                    }
                    let k = p.apply(j);
                    if gl[d][k].is_some() {
                        return Err(ParseError::BadGluing(format!("face {k} of tetrahedron {d} glued twice")));
                    }
                    if d == pos && k == j {
                        return Err(ParseError::BadGluing("face glued to itself".into()));
                    }
                    gl[pos][j] = Some((d, p));
                    gl[d][k] = Some((pos, p.inverse()));
                }
                _ => return Err(ParseError::Truncated),
            }
        }
    }
    if next_unused != n {
        return Err(ParseError::BadGluing("signature describes a disconnected triangulation".into()));
    }
    Ok(gl)
}

/// Reorients a decoded triangulation so that every gluing is odd.
///
/// Tetrahedra whose induced orientation disagrees with tetrahedron 0 are
/// relabelled by the transposition `swap(t)`.
pub(crate) fn orient(
    raw: &RawGluings,
    swap: impl Fn(usize) -> Perm4,
) -> Result<Vec<[(usize, Perm4); 4]>, ParseError> {
    let n = raw.len();
    let mut full = Vec::with_capacity(n);
    for row in raw {
        let mut out = [(0, Perm4::IDENTITY); 4];
        for (i, g) in row.iter().enumerate() {
            out[i] = g.ok_or(ParseError::OpenFace)?;
        }
        full.push(out);
    }

    let mut orientation = vec![0i32; n];
    orientation[0] = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for i in 0..4 {
            let (u, p) = full[t][i];
            let want = -p.sign() * orientation[t];
            if orientation[u] == 0 {
                orientation[u] = want;
                queue.push_back(u);
            } else if orientation[u] != want {
                return Err(ParseError::NonOrientable);
            }
        }
    }

    let relabel: Vec<Perm4> =
        (0..n).map(|t| if orientation[t] == 1 { Perm4::IDENTITY } else { swap(t) }).collect();
    let mut adj = vec![[(0, Perm4::IDENTITY); 4]; n];
    for t in 0..n {
        for i in 0..4 {
            let (u, p) = full[t][i];
            let new_p = relabel[u].compose(p).compose(relabel[t].inverse());
            adj[t][relabel[t].apply(i)] = (u, new_p);
        }
    }
    Ok(adj)
}
