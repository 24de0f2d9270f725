//! Cusp cross-sections (vertex links), their homology, and the map to
//! H_1 of the manifold.

use super::{CellComplex, H1Data, TreeStrategy};
use crate::census_io::Side;
use crate::perm::Perm4;
use crate::taut_structure::TautStructure;

/// One cusp: its triangulated torus cross-section and peripheral data.
#[derive(Clone, Debug)]
pub struct CuspData {
    pub index: usize,
    /// Corner triangles `(tet, vertex)` of the link; they index the nodes of `complex`.
    pub corners: Vec<(usize, usize)>,
    /// Link arcs as `(face, vertex of the face in the labels of the tetrahedron below)`.
    pub arcs: Vec<(usize, usize)>,
    /// Dual graph of the link with link vertices as 2-cells.
    pub complex: CellComplex,
    pub euler_characteristic: i64,
    /// Basis `(a, b)` of H_1 of the link as cycles on `arcs`, with `⟨a, b⟩ = 1`.
    pub basis: [Vec<i64>; 2],
    /// H_1(M; Z) classes of `a` and `b`.
    pub peripheral: [Vec<i64>; 2],
}

impl CuspData {
    /// Face cycle in the manifold traced by a link cycle.
    pub fn face_chain(&self, cycle: &[i64], n_faces: usize) -> Vec<i64> {
        let mut out = vec![0; n_faces];
        for (k, &z) in cycle.iter().enumerate() {
            out[self.arcs[k].0] += z;
        }
        out
    }

    /// H_1(M; Z) class of the slope `x·a + y·b`.
    pub fn slope_class(&self, x: i64, y: i64) -> Vec<i64> {
        self.peripheral[0].iter().zip(&self.peripheral[1]).map(|(p, q)| x * p + y * q).collect()
    }
}

/// Whether `x → y` follows the boundary orientation of the corner
/// triangle at vertex `v`.
fn ccw(v: usize, x: usize, y: usize) -> bool {
    let z = (0..4).find(|&k| k != v && k != x && k != y).unwrap();
    Perm4::new([v as u8, x as u8, y as u8, z as u8]).sign() == 1
}

fn sorted_others(v: usize) -> [usize; 3] {
    let o: Vec<usize> = (0..4).filter(|&k| k != v).collect();
    [o[0], o[1], o[2]]
}

struct LinkBuilder<'a> {
    ts: &'a TautStructure,
    /// Global link arc id by (face, below-label vertex).
    arc_id: Vec<[usize; 4]>,
}

impl LinkBuilder<'_> {
    /// The link edge in corner `(t, v)` lying in face `i`, directed `x → y`,
    /// as (global arc, sign relative to the arc's reference direction).
    fn primal_edge(&self, t: usize, v: usize, i: usize, x: usize, y: usize) -> (usize, i64) {
        let f = self.ts.table().face_id(Side { tet: t, face: i });
        let here = Side { tet: t, face: i };
        let s = if ccw(v, x, y) { 1 } else { -1 };
        if self.ts.below(f) == here {
            (self.arc_id[f][v], s)
        } else {
            let vb = self.ts.perm_up(f).inverse().apply(v);
            (self.arc_id[f][vb], -s)
        }
    }

    /// Primal path in corner `(t, v)` from its lowest vertex to an endpoint
    /// of the link edge with endpoints `{x, y}`; returns the path and endpoint.
    fn base_path(&self, t: usize, v: usize, x: usize, y: usize) -> (Option<(usize, i64)>, usize) {
        let [p0, p1, p2] = sorted_others(v);
        if p0 == x || p0 == y {
            (None, p0)
        } else {
            (Some(self.primal_edge(t, v, p2, p0, p1)), p1)
        }
    }

    /// Primal 1-chain homologous to the dual arc `(f, v)`, as signed arcs.
    fn primal_of_arc(&self, f: usize, v: usize) -> Vec<(usize, i64)> {
        let b = self.ts.below(f);
        let a = self.ts.above(f);
        let p = self.ts.perm_up(f);
        let mut out = Vec::new();
        let (x, y) = crate::taut_structure::other_two(b.face, v);
        let (path1, end1) = self.base_path(b.tet, v, x, y);
        let (path2, end2) = self.base_path(a.tet, p.apply(v), p.apply(x), p.apply(y));
        out.extend(path1);
        let end2_below = p.inverse().apply(end2);
        if end1 != end2_below {
            out.push(self.primal_edge(b.tet, v, b.face, end1, end2_below));
        }
        if let Some((arc, s)) = path2 {
            out.push((arc, -s));
        }
        out
    }
}

/// Builds the vertex links of every cusp.
///
/// # Panics
/// If a link is not a torus.
pub fn vertex_links(ts: &TautStructure, h1: &H1Data) -> Vec<CuspData> {
    let table = ts.table();
    let nf = ts.n_faces();
    let mut arc_id = vec![[usize::MAX; 4]; nf];
    let mut global_arcs: Vec<(usize, usize)> = Vec::new();
    for (f, ids) in arc_id.iter_mut().enumerate() {
        let b = ts.below(f);
        for v in (0..4).filter(|&v| v != b.face) {
            ids[v] = global_arcs.len();
            global_arcs.push((f, v));
        }
    }
    let builder = LinkBuilder { ts, arc_id: arc_id.clone() };
    let cusp_of_arc = |&(f, v): &(usize, usize)| table.vertex_id(ts.below(f).tet, v);

    (0..table.n_vertices())
        .map(|c| {
            let corners: Vec<(usize, usize)> =
                (0..ts.n_tet()).flat_map(|t| (0..4).map(move |v| (t, v))).filter(|&(t, v)| table.vertex_id(t, v) == c).collect();
            let mut node_of = vec![[usize::MAX; 4]; ts.n_tet()];
            for (k, &(t, v)) in corners.iter().enumerate() {
                node_of[t][v] = k;
            }
            let glob: Vec<usize> = (0..global_arcs.len()).filter(|&g| cusp_of_arc(&global_arcs[g]) == c).collect();
            let mut local = vec![usize::MAX; global_arcs.len()];
            for (k, &g) in glob.iter().enumerate() {
                local[g] = k;
            }
            let arcs: Vec<(usize, usize)> = glob.iter().map(|&g| global_arcs[g]).collect();
            let graph_arcs = arcs
                .iter()
                .map(|&(f, v)| {
                    let b = ts.below(f);
                    let a = ts.above(f);
                    (node_of[b.tet][v], node_of[a.tet][ts.perm_up(f).apply(v)])
                })
                .collect();

            let mut cells = Vec::new();
            for e in 0..ts.n_edges() {
                for end in 0..2 {
                    let cycle = table.edge_cycle(e);
                    if table.vertex_id(cycle[0].tet, cycle[0].v[end]) != c {
                        continue;
                    }
                    let cell = cycle
                        .iter()
                        .map(|emb| {
                            let f = table.face_id(emb.exit_face());
                            let x = emb.v[end];
                            if ts.below(f) == emb.exit_face() {
                                (local[arc_id[f][x]], 1)
                            } else {
                                (local[arc_id[f][ts.perm_up(f).inverse().apply(x)]], -1)
                            }
                        })
                        .collect();
                    cells.push(cell);
                }
            }
            let complex = CellComplex { n_nodes: corners.len(), arcs: graph_arcs, cells };
            let euler = complex.n_nodes as i64 - complex.arcs.len() as i64 + complex.cells.len() as i64;
            assert_eq!(euler, 0, "cusp {c} link has Euler characteristic {euler}");
            let hom = complex.homology(TreeStrategy::Bfs);
            assert!(hom.rank == 2 && hom.torsion.is_empty(), "cusp {c} link is not a torus");

            let primal = |z: &[i64]| {
                let mut out = vec![0i64; arcs.len()];
                for (k, &zk) in z.iter().enumerate() {
                    if zk != 0 {
                        let (f, v) = arcs[k];
                        for (g, s) in builder.primal_of_arc(f, v) {
                            out[local[g]] += zk * s;
                        }
                    }
                }
                out
            };
            let a = hom.generators[0].clone();
            let mut b = hom.generators[1].clone();
            let pb = primal(&b);
            let pairing: i64 = a.iter().zip(&pb).map(|(x, y)| x * y).sum();
            assert!(pairing.abs() == 1, "cusp {c}: basis intersection number {pairing}");
            if pairing < 0 {
                b.iter_mut().for_each(|x| *x = -*x);
            }
            let mut cusp = CuspData {
                index: c,
                corners,
                arcs,
                complex,
                euler_characteristic: euler,
                basis: [a, b],
                peripheral: [Vec::new(), Vec::new()],
            };
            for k in 0..2 {
                let chain = cusp.face_chain(&cusp.basis[k], nf);
                cusp.peripheral[k] = h1.class_of(&chain);
            }
            cusp
        })
        .collect()
}

/// Algebraic intersection number of two link cycles of one cusp.
pub fn intersection(ts: &TautStructure, cusp: &CuspData, z1: &[i64], z2: &[i64]) -> i64 {
    let nf = ts.n_faces();
    let mut arc_id = vec![[usize::MAX; 4]; nf];
    let mut local = std::collections::HashMap::new();
    for (k, &(f, v)) in cusp.arcs.iter().enumerate() {
        local.insert((f, v), k);
    }
    let mut count = 0;
    for (f, ids) in arc_id.iter_mut().enumerate() {
        let b = ts.below(f);
        for v in (0..4).filter(|&v| v != b.face) {
            ids[v] = count;
            count += 1;
        }
    }
    let mut global_to_local = vec![usize::MAX; count];
    for (f, ids) in arc_id.iter().enumerate() {
        for (v, &g) in ids.iter().enumerate() {
            if let Some(&k) = local.get(&(f, v)) {
                global_to_local[g] = k;
            }
        }
    }
    let builder = LinkBuilder { ts, arc_id };
    let mut primal = vec![0i64; cusp.arcs.len()];
    for (k, &zk) in z2.iter().enumerate() {
        if zk != 0 {
            let (f, v) = cusp.arcs[k];
            for (g, s) in builder.primal_of_arc(f, v) {
                primal[global_to_local[g]] += zk * s;
            }
        }
    }
    z1.iter().zip(&primal).map(|(x, y)| x * y).sum()
}
