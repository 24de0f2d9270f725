//! Upper and lower tracks: which edge of each face meets the large branch.

use super::TautStructure;

/// Large slots of every face.
///
/// A slot is named by the face vertex opposite the edge, written in the
/// vertex labels of the tetrahedron below the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackData {
    /// Slot of the bottom diagonal of the tetrahedron above the face.
    pub upper_large: Vec<usize>,
    /// Slot of the top diagonal of the tetrahedron below the face.
    pub lower_large: Vec<usize>,
}

impl TrackData {
    /// Edge class of a slot of face `f`.
    pub fn slot_edge(ts: &TautStructure, f: usize, slot: usize) -> usize {
        let b = ts.below(f);
        let (x, y) = other_two(b.face, slot);
        ts.table().edge_id(b.tet, crate::census_io::edge_index(x, y))
    }
}

/// The two vertices of `{0,1,2,3}` other than `a` and `b`.
pub(crate) fn other_two(a: usize, b: usize) -> (usize, usize) {
    let v: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
    (v[0], v[1])
}

pub fn build_tracks(ts: &TautStructure) -> TrackData {
    let nf = ts.n_faces();
    let mut upper_large = Vec::with_capacity(nf);
    let mut lower_large = Vec::with_capacity(nf);
    for f in 0..nf {
        let b = ts.below(f);
        let a = ts.above(f);
        // In the tetrahedron above, the face is a bottom face and contains the
        // bottom diagonal; the remaining vertex is the other bottom face's label.
        let [k1, k2] = ts.bottom_faces(a.tet);
        let k = if k1 == a.face { k2 } else { k1 };
        upper_large.push(ts.perm_up(f).inverse().apply(k));
        let [i1, i2] = ts.top_faces(b.tet);
        let i = if i1 == b.face { i2 } else { i1 };
        lower_large.push(i);
        debug_assert_ne!(upper_large[f], lower_large[f]);
    }
    TrackData { upper_large, lower_large }
}
