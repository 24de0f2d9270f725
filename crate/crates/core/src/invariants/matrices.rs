//! Presentation matrices over Z[H]: the taut module and the Alexander module.

use crate::census_io::EdgeEmb;
use crate::homology::H1Data;
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::taut_structure::{TautStructure, TrackData};

/// How a single edge–face incidence contributes its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// +1 at the upper-large slot, −1 at the small slots.
    Taut,
    /// Orientation agreement between the face boundary and the edge.
    Alexander,
}

/// Choices made while lifting incidences to the universal free abelian
/// cover; the resulting Fitting invariants do not depend on them.
#[derive(Clone, Debug, Default)]
pub struct LiftChoices {
    /// Index into each edge cycle of the incidence labelled 0.
    pub start: Vec<usize>,
}

/// Builds an `|E| × |F|` presentation matrix with monomials taken from a
/// face cocycle with values in `Z^nvars`.
///
/// Walking around edge `e` from its canonical incidence, the lift of the
/// current tetrahedron moves by `±c(f)` at every face crossed; a face lift
/// met at offset `h` contributes `±x^{-h}` to entry `(e, f)`.
pub fn presentation_matrix(
    ts: &TautStructure,
    tracks: Option<&TrackData>,
    cocycle: &[Vec<i64>],
    nvars: usize,
    kind: Presentation,
    choices: &LiftChoices,
) -> LaurentMatrix {
    let table = ts.table();
    let mut m = LaurentMatrix::zeros(nvars, ts.n_edges(), ts.n_faces());
    for e in 0..ts.n_edges() {
        let cycle = table.edge_cycle(e);
        let len = cycle.len();
        let start = choices.start.get(e).copied().unwrap_or(0) % len;
        let mut g = vec![0i64; nvars];
        for k in 0..len {
            let emb: &EdgeEmb = &cycle[(start + k) % len];
            let exit = emb.exit_face();
            let f = table.face_id(exit);
            let upward = ts.below(f) == exit;
            let h: Vec<i64> = if upward { g.clone() } else { g.iter().zip(&cocycle[f]).map(|(x, c)| x - c).collect() };
            let coef = match kind {
                Presentation::Alexander => {
                    if upward {
                        1
                    } else {
                        -1
                    }
                }
                Presentation::Taut => {
                    let tracks = tracks.expect("taut presentation needs tracks");
                    let slot = if upward { emb.v[2] } else { ts.perm_up(f).inverse().apply(emb.v[2]) };
                    if slot == tracks.upper_large[f] {
                        1
                    } else {
                        -1
                    }
                }
            };
            let neg: Vec<i64> = h.iter().map(|x| -x).collect();
            m.add_to(e, f, &LaurentPoly::monomial(nvars, neg, coef));
            for (x, c) in g.iter_mut().zip(&cocycle[f]) {
                *x += if upward { *c } else { -*c };
            }
        }
        debug_assert!(g.iter().all(|&x| x == 0), "cocycle does not vanish around edge {e}");
    }
    m
}

/// The taut presentation `D` over Z[H_M].
pub fn build_taut_matrix(ts: &TautStructure, tracks: &TrackData, h1: &H1Data) -> LaurentMatrix {
    presentation_matrix(ts, Some(tracks), &h1.cocycle_table(), h1.rank(), Presentation::Taut, &LiftChoices::default())
}

/// The relative boundary map `Z[H_M]^F → Z[H_M]^E`.
pub fn build_alexander_matrix(ts: &TautStructure, h1: &H1Data) -> LaurentMatrix {
    presentation_matrix(ts, None, &h1.cocycle_table(), h1.rank(), Presentation::Alexander, &LiftChoices::default())
}

/// The boundary map `Z[H]^T → Z[H]^F`: top faces with `+1`, bottom faces
/// with `−x^{-c(f)}`.
pub fn tet_boundary_matrix(ts: &TautStructure, cocycle: &[Vec<i64>], nvars: usize) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(nvars, ts.n_faces(), ts.n_tet());
    for f in 0..ts.n_faces() {
        m.add_to(f, ts.below(f).tet, &LaurentPoly::one(nvars));
        let neg: Vec<i64> = cocycle[f].iter().map(|x| -x).collect();
        m.add_to(f, ts.above(f).tet, &LaurentPoly::monomial(nvars, neg, -1));
    }
    m
}
