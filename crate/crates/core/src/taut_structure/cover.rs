//! The edge-orientation double cover.

use super::{edge_orient, TautStructure};
use crate::census_io::GluingTable;
use crate::perm::Perm4;

/// Copies `(t, 0)` and `(t, 1)` of each tetrahedron, numbered `t` and `t + n`.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub ts: TautStructure,
    pub connected: bool,
    pub base_tets: usize,
    /// Base face under each cover face.
    pub face_proj: Vec<usize>,
}

impl DoubleCover {
    pub fn tet_proj(&self, t: usize) -> usize {
        t % self.base_tets
    }

    /// Pushes a cover face chain down to the base.
    pub fn project_chain(&self, chain: &[i64], base_faces: usize) -> Vec<i64> {
        let mut out = vec![0; base_faces];
        for (f, &c) in chain.iter().enumerate() {
            out[self.face_proj[f]] += c;
        }
        out
    }
}

/// Glues two copies of the triangulation, crossing between copies exactly
/// at the faces where β is 1.
pub fn build_double_cover(ts: &TautStructure) -> DoubleCover {
    let beta = edge_orient::mismatch_cocycle(ts, &edge_orient::tet_edge_orientations(ts));
    let n = ts.n_tet();
    let mut adj = vec![[(0usize, Perm4::IDENTITY); 4]; 2 * n];
    for (f, &bf) in beta.iter().enumerate() {
        let b = ts.below(f);
        let a = ts.above(f);
        let p = ts.perm_up(f);
        for eps in 0..2 {
            let lo = b.tet + n * eps;
            let hi = a.tet + n * (eps ^ bf as usize);
            adj[lo][b.face] = (hi, p);
            adj[hi][a.face] = (lo, p.inverse());
        }
    }
    let table = GluingTable::from_gluings(adj).expect("double cover gluings are valid");
    let mut angles = ts.angles().clone();
    angles.extend_from_slice(ts.angles());
    let face_proj: Vec<usize> = table
        .faces()
        .iter()
        .map(|face| {
            let s = face.sides[0];
            ts.table().face_id(crate::census_io::Side { tet: s.tet % n, face: s.face })
        })
        .collect();
    let side0_below: Vec<bool> = table
        .faces()
        .iter()
        .zip(&face_proj)
        .map(|(face, &f)| {
            let s = face.sides[0];
            ts.below(f).tet == s.tet % n && ts.below(f).face == s.face
        })
        .collect();
    let connected = table.is_connected();
    let cover = TautStructure::from_face_coorientation(table, angles, &side0_below)
        .expect("lifted coorientation is taut");
    debug_assert!(super::derive_coorientation(cover.table(), cover.angles()).is_ok_and(|d| d == cover || d.flipped() == cover));
    DoubleCover { ts: cover, connected, base_tets: n, face_proj }
}
