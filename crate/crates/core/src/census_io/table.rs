//! Gluing tables of ideal triangulations and their derived cell structure.

use super::ParseError;
use crate::perm::Perm4;

/// Vertex pairs of the six edges of a tetrahedron.
pub const EDGE_VERTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge of a tetrahedron joining vertices `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {a} and {b}"),
    }
}

/// One side of a face: tetrahedron index and the vertex opposite the face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub tet: usize,
    pub face: usize,
}

/// A face of the triangulation viewed from its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub sides: [Side; 2],
    /// Vertex map from `sides[0]` to `sides[1]`.
    pub perm: Perm4,
}

/// A tetrahedron-edge slot on an edge cycle.
///
/// `v[0], v[1]` are the edge endpoints (in the edge's reference direction).
/// The cycle arrives through the face opposite `v[2]` and leaves through
/// the face opposite `v[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmb {
    pub tet: usize,
    pub v: [usize; 4],
}

impl EdgeEmb {
    pub fn exit_face(&self) -> Side {
        Side { tet: self.tet, face: self.v[3] }
    }

    pub fn entry_face(&self) -> Side {
        Side { tet: self.tet, face: self.v[2] }
    }

    pub fn edge_number(&self) -> usize {
        edge_index(self.v[0], self.v[1])
    }
}

/// A closed, oriented ideal triangulation.
///
/// Every gluing permutation is odd, so the vertex labelling of each
/// tetrahedron induces a global orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingTable {
    adj: Vec<[(usize, Perm4); 4]>,
    face_id: Vec<[usize; 4]>,
    faces: Vec<Face>,
    edge_id: Vec<[usize; 6]>,
    edge_cycles: Vec<Vec<EdgeEmb>>,
    vertex_id: Vec<[usize; 4]>,
    n_vertices: usize,
}

impl GluingTable {
    /// Validates a complete gluing table and derives faces, edges and vertices.
    ///
    /// `adj[t][i] = (t', p)` glues face `i` of `t` to face `p(i)` of `t'`,
    /// sending vertex `v` of `t` to vertex `p(v)` of `t'`.
    pub fn from_gluings(adj: Vec<[(usize, Perm4); 4]>) -> Result<GluingTable, ParseError> {
        let n = adj.len();
        if n == 0 {
            return Err(ParseError::Empty);
        }
        for t in 0..n {
            for i in 0..4 {
                let (u, p) = adj[t][i];
                if u >= n {
                    return Err(ParseError::BadGluing(format!("tetrahedron {t} face {i} glued to missing tetrahedron {u}")));
                }
                let j = p.apply(i);
                if u == t && j == i {
                    return Err(ParseError::BadGluing(format!("face {i} of tetrahedron {t} glued to itself")));
                }
                let (back_t, back_p) = adj[u][j];
                if back_t != t || back_p != p.inverse() {
                    return Err(ParseError::BadGluing(format!("gluing of tetrahedron {t} face {i} is not an involution")));
                }
                if p.sign() != -1 {
                    return Err(ParseError::NonOrientable);
                }
            }
        }

        let mut face_id = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::with_capacity(2 * n);
        for t in 0..n {
            for i in 0..4 {
                if face_id[t][i] != usize::MAX {
                    continue;
                }
                let (u, p) = adj[t][i];
                let j = p.apply(i);
                face_id[t][i] = faces.len();
                face_id[u][j] = faces.len();
                faces.push(Face { sides: [Side { tet: t, face: i }, Side { tet: u, face: j }], perm: p });
            }
        }

        let mut edge_id = vec![[usize::MAX; 6]; n];
        let mut edge_cycles: Vec<Vec<EdgeEmb>> = Vec::new();
        for t in 0..n {
            for (e, &(a, b)) in EDGE_VERTS.iter().enumerate() {
                if edge_id[t][e] != usize::MAX {
                    continue;
                }
                let id = edge_cycles.len();
                let others: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
                let start = EdgeEmb { tet: t, v: [a, b, others[0], others[1]] };
                let mut cycle = Vec::new();
                let mut cur = start;
                loop {
                    let slot = cur.edge_number();
                    if edge_id[cur.tet][slot] != usize::MAX {
                        return Err(ParseError::BadGluing(format!(
                            "edge of tetrahedron {} is identified with itself in reverse",
                            cur.tet
                        )));
                    }
                    edge_id[cur.tet][slot] = id;
                    cycle.push(cur);
                    let (u, p) = adj[cur.tet][cur.v[3]];
                    let v = cur.v;
                    cur = EdgeEmb { tet: u, v: [p.apply(v[0]), p.apply(v[1]), p.apply(v[3]), p.apply(v[2])] };
                    if cur.tet == start.tet && cur.edge_number() == start.edge_number() {
                        if cur != start {
                            return Err(ParseError::BadGluing(format!(
                                "edge of tetrahedron {} is identified with itself in reverse",
                                cur.tet
                            )));
                        }
                        break;
                    }
                }
                edge_cycles.push(cycle);
            }
        }

        let mut parent: Vec<usize> = (0..4 * n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for t in 0..n {
            for i in 0..4 {
                let (u, p) = adj[t][i];
                for v in (0..4).filter(|&v| v != i) {
                    let x = find(&mut parent, 4 * t + v);
                    let y = find(&mut parent, 4 * u + p.apply(v));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let mut vertex_id = vec![[0usize; 4]; n];
        let mut root_ids: Vec<usize> = vec![usize::MAX; 4 * n];
        let mut n_vertices = 0;
        for t in 0..n {
            for v in 0..4 {
                let r = find(&mut parent, 4 * t + v);
                if root_ids[r] == usize::MAX {
                    root_ids[r] = n_vertices;
                    n_vertices += 1;
                }
                vertex_id[t][v] = root_ids[r];
            }
        }

        let table = GluingTable { adj, face_id, faces, edge_id, edge_cycles, vertex_id, n_vertices };
        if table.n_edges() != n {
            return Err(ParseError::BadGluing(format!(
                "{} edge classes for {} tetrahedra; not an ideal triangulation of a cusped manifold",
                table.n_edges(),
                n
            )));
        }
        Ok(table)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_tet();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for i in 0..4 {
                let u = self.adj[t][i].0;
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn n_tet(&self) -> usize {
        self.adj.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_cycles.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// The gluing of face `i` of tetrahedron `t`.
    pub fn gluing(&self, t: usize, i: usize) -> (usize, Perm4) {
        self.adj[t][i]
    }

    pub fn gluings(&self) -> &[[(usize, Perm4); 4]] {
        &self.adj
    }

    pub fn face_id(&self, side: Side) -> usize {
        self.face_id[side.tet][side.face]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn edge_id(&self, t: usize, edge_number: usize) -> usize {
        self.edge_id[t][edge_number]
    }

    /// The cyclic sequence of tetrahedron slots around edge class `e`.
    pub fn edge_cycle(&self, e: usize) -> &[EdgeEmb] {
        &self.edge_cycles[e]
    }

    pub fn vertex_id(&self, t: usize, v: usize) -> usize {
        self.vertex_id[t][v]
    }

    /// Relabels tetrahedron `t` as `order[t]`, keeping vertex labels.
    pub fn permute_tetrahedra(&self, order: &[usize]) -> GluingTable {
        let n = self.n_tet();
        assert_eq!(order.len(), n);
        let mut adj = vec![[(0, Perm4::IDENTITY); 4]; n];
        for t in 0..n {
            for i in 0..4 {
                let (u, p) = self.adj[t][i];
                adj[order[t]][i] = (order[u], p);
            }
        }
        GluingTable::from_gluings(adj).expect("relabelling preserves validity")
    }
}
