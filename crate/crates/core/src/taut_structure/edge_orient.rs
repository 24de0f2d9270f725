//! Edge orientations, the mismatch cocycle β and the edge-orientation
//! homomorphism ω.

use std::collections::VecDeque;

use super::{build_tracks, TautStructure, TrackData};
use crate::census_io::EDGE_VERTS;
use crate::homology::H1Data;

/// Per-tetrahedron edge orientations: entry `e` is true when edge number `e`
/// points from `EDGE_VERTS[e].0` to `EDGE_VERTS[e].1`.
pub type TetOrientation = [bool; 6];

fn set(o: &mut TetOrientation, from: usize, to: usize) {
    let e = crate::census_io::edge_index(from, to);
    o[e] = EDGE_VERTS[e].0 == from;
}

fn points(o: &TetOrientation, from: usize, to: usize) -> bool {
    let e = crate::census_io::edge_index(from, to);
    o[e] == (EDGE_VERTS[e].0 == from)
}

/// The canonical edge orientation of every tetrahedron.
///
/// The bottom diagonal `u w` (with `u < w`) runs `u → w`, each bottom face
/// runs `u → apex → w`, and the top diagonal runs away from the small slot
/// of the upper track in the top face containing `u`. Every face is then
/// transitively oriented with its upper-large edge from source to sink.
pub fn tet_edge_orientations(ts: &TautStructure) -> Vec<TetOrientation> {
    let tracks = build_tracks(ts);
    orientations_with(ts, &tracks)
}

fn orientations_with(ts: &TautStructure, tracks: &TrackData) -> Vec<TetOrientation> {
    let table = ts.table();
    (0..ts.n_tet())
        .map(|t| {
            let (u, w) = ts.bottom_diagonal(t);
            let (p, q) = ts.top_diagonal(t);
            let mut o = [false; 6];
            set(&mut o, u, w);
            for v in [p, q] {
                set(&mut o, u, v);
                set(&mut o, v, w);
            }
            // face opposite w is a top face containing u
            let slot_w = tracks.upper_large[table.face_id(crate::census_io::Side { tet: t, face: w })];
            let slot_u = tracks.upper_large[table.face_id(crate::census_io::Side { tet: t, face: u })];
            assert!(slot_w == p || slot_w == q, "upper-large edge of a top face misses the bottom diagonal end");
            let head = if slot_w == p { q } else { p };
            set(&mut o, slot_w, head);
            assert_eq!(slot_u, head, "top faces of tetrahedron {t} disagree on the top diagonal");
            o
        })
        .collect()
}

/// Edge-orientability data of a taut structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrientationData {
    /// Per face: 1 when the tetrahedra below and above orient its edges oppositely.
    pub beta: Vec<u8>,
    /// ω on the H_1(M; Z) generators (torsion coordinates first).
    pub omega: Vec<u8>,
    pub is_edge_orientable: bool,
    /// σ on the H_M basis, present when ω kills torsion.
    pub sigma: Option<Vec<i8>>,
}

/// β from explicit per-tetrahedron orientations.
///
/// # Panics
/// If some face has mixed agreement.
pub fn mismatch_cocycle(ts: &TautStructure, orient: &[TetOrientation]) -> Vec<u8> {
    (0..ts.n_faces())
        .map(|f| {
            let b = ts.below(f);
            let a = ts.above(f);
            let p = ts.perm_up(f);
            let verts: Vec<usize> = (0..4).filter(|&k| k != b.face).collect();
            let mut agree = 0;
            for (i, &s) in verts.iter().enumerate() {
                for &r in &verts[i + 1..] {
                    if points(&orient[b.tet], s, r) == points(&orient[a.tet], p.apply(s), p.apply(r)) {
                        agree += 1;
                    }
                }
            }
            match agree {
                3 => 0,
                0 => 1,
                _ => panic!("face {f}: edge orientations agree on {agree} of 3 edges"),
            }
        })
        .collect()
}

/// Per-tetrahedron flips `s` with `s(below) + s(above) = β(f)` for every
/// face, if they exist.
pub fn trivialize(ts: &TautStructure, beta: &[u8]) -> Option<Vec<u8>> {
    let n = ts.n_tet();
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for (f, &bf) in beta.iter().enumerate() {
        let (b, a) = (ts.below(f).tet, ts.above(f).tet);
        adj[b].push((a, bf));
        adj[a].push((b, bf));
    }
    let mut pot: Vec<Option<u8>> = vec![None; n];
    for seed in 0..n {
        if pot[seed].is_some() {
            continue;
        }
        pot[seed] = Some(0);
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            let pt = pot[t].unwrap();
            for &(u, bf) in &adj[t] {
                let want = pt ^ bf;
                match pot[u] {
                    None => {
                        pot[u] = Some(want);
                        queue.push_back(u);
                    }
                    Some(x) if x != want => return None,
                    _ => {}
                }
            }
        }
    }
    pot.into_iter().collect()
}

/// Evaluates a face cochain mod 2 on a face chain.
pub fn pair_mod2(beta: &[u8], chain: &[i64]) -> u8 {
    (beta.iter().zip(chain).map(|(&b, &c)| b as i64 * c).sum::<i64>().rem_euclid(2)) as u8
}

/// ω and σ from β.
pub fn omega_from_beta(beta: Vec<u8>, h1: &H1Data) -> EdgeOrientationData {
    let omega: Vec<u8> = h1.generators().iter().map(|g| pair_mod2(&beta, g)).collect();
    let k = h1.torsion().len();
    let is_edge_orientable = omega.iter().all(|&w| w == 0);
    let sigma = omega[..k]
        .iter()
        .all(|&w| w == 0)
        .then(|| omega[k..].iter().map(|&w| if w == 0 { 1 } else { -1 }).collect());
    EdgeOrientationData { beta, omega, is_edge_orientable, sigma }
}

/// β, ω and σ for the upper-track orientation convention.
pub fn edge_orientation_data(ts: &TautStructure, h1: &H1Data) -> EdgeOrientationData {
    let beta = mismatch_cocycle(ts, &tet_edge_orientations(ts));
    omega_from_beta(beta, h1)
}
