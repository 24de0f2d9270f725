//! Integer homology of the manifold and of its cusp cross-sections.

mod complex;
mod cusps;
pub mod snf;

pub use complex::{is_cycle, CellComplex, GraphHomology, TreeStrategy};
pub use cusps::{intersection, vertex_links, CuspData};
pub use snf::{smith_normal_form, SnfResult};

use crate::taut_structure::TautStructure;

/// The dual 2-complex of a taut triangulation: tetrahedra are nodes, faces
/// are arcs directed upwards, and each edge class bounds a 2-cell.
///
/// Crossing a face along an edge cycle counts +1 when the crossing goes
/// with the face's coorientation.
pub fn dual_complex(ts: &TautStructure) -> CellComplex {
    let table = ts.table();
    let arcs = (0..ts.n_faces()).map(|f| (ts.below(f).tet, ts.above(f).tet)).collect();
    let cells = (0..ts.n_edges())
        .map(|e| {
            table
                .edge_cycle(e)
                .iter()
                .map(|emb| {
                    let f = table.face_id(emb.exit_face());
                    (f, if ts.is_top(emb.tet, emb.v[3]) { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    CellComplex { n_nodes: ts.n_tet(), arcs, cells }
}

/// Boundary maps of the dual spine: `Z^F → Z^T` (rows tetrahedra) and
/// `Z^E → Z^F` (rows faces).
pub fn build_chain_complex(ts: &TautStructure) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let c = dual_complex(ts);
    (c.arc_boundary(), c.cell_boundary())
}

/// H_1(M; Z) with its free quotient H_M and the face cocycle.
#[derive(Clone, Debug)]
pub struct H1Data {
    pub complex: CellComplex,
    pub homology: GraphHomology,
    pub strategy: TreeStrategy,
}

impl H1Data {
    /// b_1(M), the number of Laurent variables.
    pub fn rank(&self) -> usize {
        self.homology.rank
    }

    /// Torsion divisors greater than one.
    pub fn torsion(&self) -> &[i64] {
        &self.homology.torsion
    }

    pub fn torsion_order(&self) -> i64 {
        self.homology.torsion.iter().product()
    }

    /// The H_M class `c(f)`; zero on tree faces.
    pub fn cocycle(&self, f: usize) -> &[i64] {
        self.homology.free_part(&self.homology.arc_class[f])
    }

    /// All cocycle values, one per face.
    pub fn cocycle_table(&self) -> Vec<Vec<i64>> {
        (0..self.complex.arcs.len()).map(|f| self.cocycle(f).to_vec()).collect()
    }

    /// Full H_1(M;Z) class of a face cycle.
    pub fn class_of(&self, cycle: &[i64]) -> Vec<i64> {
        self.homology.class_of(cycle)
    }

    /// Face cycles representing the torsion then free generators.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.homology.generators
    }
}

/// Computes H_1 with the default spanning tree.
pub fn compute_h1(ts: &TautStructure) -> H1Data {
    compute_h1_with(ts, TreeStrategy::Bfs)
}

pub fn compute_h1_with(ts: &TautStructure, strategy: TreeStrategy) -> H1Data {
    let complex = dual_complex(ts);
    let homology = complex.homology(strategy);
    H1Data { complex, homology, strategy }
}

/// Parses a homology description such as `Z/4+Z+Z` into (torsion, rank).
pub fn parse_homology_string(s: &str) -> Option<(Vec<i64>, usize)> {
    let mut torsion = Vec::new();
    let mut rank = 0;
    for part in s.split('+') {
        if part == "Z" {
            rank += 1;
        } else if let Some(d) = part.strip_prefix("Z/") {
            torsion.push(d.parse().ok()?);
        } else if part == "0" {
            continue;
        } else {
            return None;
        }
    }
    Some((torsion, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census_io::parse_taut_sig;
    use crate::taut_structure::derive_coorientation;

    fn ts(sig: &str) -> TautStructure {
        let (t, a) = parse_taut_sig(sig).unwrap();
        derive_coorientation(&t, &a).unwrap()
    }

    #[test]
    fn chain_complex_composes_to_zero() {
        let (d1, d2) = build_chain_complex(&ts("cPcbbbdxm_10"));
        assert_eq!((d1.len(), d1[0].len(), d2.len(), d2[0].len()), (2, 4, 4, 2));
        let prod = snf::mat_mul(&d1, &d2, 2);
        assert!(prod.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn small_examples() {
        let h = compute_h1(&ts("cPcbbbdxm_10"));
        assert_eq!((h.rank(), h.torsion()), (1, &[5][..]));
        let h = compute_h1(&ts("cPcbbbiht_12"));
        assert_eq!((h.rank(), h.torsion()), (1, &[][..]));
        let h = compute_h1(&ts("oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj_12001112122200"));
        assert_eq!((h.rank(), h.torsion()), (2, &[4][..]));
    }

    #[test]
    fn cocycle_kills_edge_relations() {
        let t = ts("oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj_12001112122200");
        let h = compute_h1(&t);
        for cell in &h.complex.cells {
            let mut sum = vec![0i64; h.rank()];
            for &(f, s) in cell {
                sum.iter_mut().zip(h.cocycle(f)).for_each(|(a, &c)| *a += s * c);
            }
            assert!(sum.iter().all(|&x| x == 0));
        }
        for f in 0..t.n_faces() {
            if h.homology.in_tree[f] {
                assert!(h.cocycle(f).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn homology_strings() {
        assert_eq!(parse_homology_string("Z/4+Z+Z"), Some((vec![4], 2)));
        assert_eq!(parse_homology_string("Z"), Some((vec![], 1)));
    }
}
