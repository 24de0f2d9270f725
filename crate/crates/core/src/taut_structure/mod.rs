//! Transverse taut structures, upper and lower tracks, veering colourings,
//! edge-orientability and the edge-orientation double cover.

mod colouring;
mod cover;
mod edge_orient;
mod tracks;

use std::collections::VecDeque;

use thiserror::Error;

use crate::census_io::{edge_index, GluingTable, Side, TautAngleVector};
use crate::perm::Perm4;

pub use colouring::{derive_veering_colouring, equatorial_edges, is_veering_colouring, Colour, EdgeColouring};
pub use cover::{build_double_cover, DoubleCover};
pub use edge_orient::{
    edge_orientation_data, mismatch_cocycle, omega_from_beta, pair_mod2, tet_edge_orientations, trivialize, EdgeOrientationData,
    TetOrientation,
};
pub use tracks::{build_tracks, TrackData};
pub(crate) use tracks::other_two;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautError {
    #[error("coorientations cannot be made consistent: the angle structure is not transverse taut")]
    NotTransverse,
    #[error("invalid coorientation at tetrahedron {0}")]
    InvalidCoorientation(usize),
    #[error("no veering colouring exists")]
    NotVeering,
}

/// Face groups of a tetrahedron by π pair: faces `SPLIT[d][0..2]` share one
/// π edge and faces `SPLIT[d][2..4]` share the other.
const SPLIT: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// A transverse taut structure on an ideal triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautStructure {
    table: GluingTable,
    angles: TautAngleVector,
    is_top: Vec<[bool; 4]>,
    below: Vec<Side>,
    above: Vec<Side>,
}

impl TautStructure {
    /// Builds the structure from explicit per-face coorientations.
    ///
    /// `side0_below[f]` says the coorientation of face `f` points out of
    /// `sides[0]` into `sides[1]`.
    pub fn from_face_coorientation(
        table: GluingTable,
        angles: TautAngleVector,
        side0_below: &[bool],
    ) -> Result<TautStructure, TautError> {
        let n = table.n_tet();
        let mut is_top = vec![[false; 4]; n];
        let mut below = Vec::with_capacity(table.n_faces());
        let mut above = Vec::with_capacity(table.n_faces());
        for (f, face) in table.faces().iter().enumerate() {
            let (b, a) = if side0_below[f] { (face.sides[0], face.sides[1]) } else { (face.sides[1], face.sides[0]) };
            is_top[b.tet][b.face] = true;
            below.push(b);
            above.push(a);
        }
        for t in 0..n {
            let split = SPLIT[angles[t] as usize];
            let first = [is_top[t][split[0]], is_top[t][split[1]], is_top[t][split[2]], is_top[t][split[3]]];
            let ok = first == [true, true, false, false] || first == [false, false, true, true];
            if !ok {
                return Err(TautError::InvalidCoorientation(t));
            }
        }
        Ok(TautStructure { table, angles, is_top, below, above })
    }

    pub fn table(&self) -> &GluingTable {
        &self.table
    }

    pub fn angles(&self) -> &TautAngleVector {
        &self.angles
    }

    pub fn n_tet(&self) -> usize {
        self.table.n_tet()
    }

    pub fn n_faces(&self) -> usize {
        self.table.n_faces()
    }

    pub fn n_edges(&self) -> usize {
        self.table.n_edges()
    }

    /// Whether face `face` of `t` is a top face (coorientation points out of `t`).
    pub fn is_top(&self, t: usize, face: usize) -> bool {
        self.is_top[t][face]
    }

    /// The side of face `f` in the tetrahedron below it.
    pub fn below(&self, f: usize) -> Side {
        self.below[f]
    }

    /// The side of face `f` in the tetrahedron above it.
    pub fn above(&self, f: usize) -> Side {
        self.above[f]
    }

    /// Whether the coorientation of `f` points from `sides[0]` to `sides[1]`.
    pub fn side0_below(&self, f: usize) -> bool {
        self.table.face(f).sides[0] == self.below[f]
    }

    /// Vertex map from the tetrahedron below `f` to the one above.
    pub fn perm_up(&self, f: usize) -> Perm4 {
        let face = self.table.face(f);
        if self.side0_below(f) {
            face.perm
        } else {
            face.perm.inverse()
        }
    }

    pub fn top_faces(&self, t: usize) -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&i| self.is_top[t][i]).collect();
        [v[0], v[1]]
    }

    pub fn bottom_faces(&self, t: usize) -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&i| !self.is_top[t][i]).collect();
        [v[0], v[1]]
    }

    /// Vertex pair of the top diagonal (the common edge of the top faces).
    pub fn top_diagonal(&self, t: usize) -> (usize, usize) {
        let [a, b] = self.bottom_faces(t);
        (a, b)
    }

    /// Vertex pair of the bottom diagonal (the common edge of the bottom faces).
    pub fn bottom_diagonal(&self, t: usize) -> (usize, usize) {
        let [a, b] = self.top_faces(t);
        (a, b)
    }

    pub fn top_diagonal_class(&self, t: usize) -> usize {
        let (a, b) = self.top_diagonal(t);
        self.table.edge_id(t, edge_index(a, b))
    }

    pub fn bottom_diagonal_class(&self, t: usize) -> usize {
        let (a, b) = self.bottom_diagonal(t);
        self.table.edge_id(t, edge_index(a, b))
    }

    /// Equatorial edge numbers of `t` in cyclic order, starting at an
    /// edge leaving the first endpoint of the top diagonal.
    pub fn equatorial_cycle(&self, t: usize) -> [usize; 4] {
        let (p, q) = self.top_diagonal(t);
        let (u, w) = self.bottom_diagonal(t);
        [edge_index(p, u), edge_index(u, q), edge_index(q, w), edge_index(w, p)]
    }

    /// The same triangulation with every coorientation reversed.
    pub fn flipped(&self) -> TautStructure {
        TautStructure {
            table: self.table.clone(),
            angles: self.angles.clone(),
            is_top: self.is_top.iter().map(|row| row.map(|b| !b)).collect(),
            below: self.above.clone(),
            above: self.below.clone(),
        }
    }
}

/// Propagates coorientations across gluings by breadth-first search, one
/// seed per connected component (tetrahedron 0's first face group on top).
pub fn derive_coorientation(table: &GluingTable, angles: &TautAngleVector) -> Result<TautStructure, TautError> {
    let n = table.n_tet();
    let mut dir: Vec<i8> = vec![0; n];
    let top = |t: usize, d: i8, face: usize| {
        let split = SPLIT[angles[t] as usize];
        let in_first = face == split[0] || face == split[1];
        in_first == (d == 1)
    };
    for seed in 0..n {
        if dir[seed] != 0 {
            continue;
        }
        dir[seed] = 1;
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            for i in 0..4 {
                let (u, p) = table.gluing(t, i);
                let j = p.apply(i);
                let here_top = top(t, dir[t], i);
                // the neighbour must see this face with the opposite role
                let want = if top(u, 1, j) != here_top { 1 } else { -1 };
                if dir[u] == 0 {
                    dir[u] = want;
                    queue.push_back(u);
                } else if dir[u] != want {
                    return Err(TautError::NotTransverse);
                }
            }
        }
    }
    let side0_below: Vec<bool> = table
        .faces()
        .iter()
        .map(|face| {
            let s = face.sides[0];
            top(s.tet, dir[s.tet], s.face)
        })
        .collect();
    TautStructure::from_face_coorientation(table.clone(), angles.clone(), &side0_below)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census_io::parse_taut_sig;

    #[test]
    fn two_in_two_out() {
        let (table, angles) = parse_taut_sig("cPcbbbdxm_10").unwrap();
        let ts = derive_coorientation(&table, &angles).unwrap();
        for t in 0..ts.n_tet() {
            assert_eq!((0..4).filter(|&i| ts.is_top(t, i)).count(), 2);
            let (a, b) = ts.top_diagonal(t);
            let (c, d) = ts.bottom_diagonal(t);
            let d_pair = angles[t] as usize;
            assert_eq!(crate::census_io::edge_pair(edge_index(a, b)), d_pair);
            assert_eq!(crate::census_io::edge_pair(edge_index(c, d)), d_pair);
        }
        for f in 0..ts.n_faces() {
            let (b, a) = (ts.below(f), ts.above(f));
            assert!(ts.is_top(b.tet, b.face));
            assert!(!ts.is_top(a.tet, a.face));
        }
    }

    #[test]
    fn exactly_two_valid_assignments() {
        let (table, angles) = parse_taut_sig("cPcbbbdxm_10").unwrap();
        let nf = table.n_faces();
        let valid: Vec<Vec<bool>> = (0..1u32 << nf)
            .map(|mask| (0..nf).map(|f| mask >> f & 1 == 1).collect::<Vec<_>>())
            .filter(|bits| TautStructure::from_face_coorientation(table.clone(), angles.clone(), bits).is_ok())
            .collect();
        assert_eq!(valid.len(), 2);
        assert!(valid[0].iter().zip(&valid[1]).all(|(a, b)| a != b));
        let derived = derive_coorientation(&table, &angles).unwrap();
        let bits: Vec<bool> = (0..nf).map(|f| derived.side0_below(f)).collect();
        assert!(valid.contains(&bits));
    }
}
