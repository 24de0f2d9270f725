//! First homology of a 2-complex given as a graph plus 2-cells.
//!
//! The graph is contracted along a spanning tree; the remaining arcs
//! generate, the 2-cells relate, and the Smith normal form of the
//! relation matrix fixes coordinates on H_1.

use std::collections::VecDeque;

use super::snf::{smith_normal_form, SnfResult};

/// Nodes, directed arcs `(tail, head)`, and 2-cells whose boundaries are
/// signed sums of arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub n_nodes: usize,
    pub arcs: Vec<(usize, usize)>,
    pub cells: Vec<Vec<(usize, i64)>>,
}

/// How the spanning tree of the graph is grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeStrategy {
    #[default]
    Bfs,
    Dfs,
    /// Breadth-first from the last node, scanning arcs in reverse.
    BfsReversed,
}

/// H_1 of a connected [`CellComplex`] in Smith coordinates.
///
/// A class is a vector of length `torsion.len() + rank`: torsion
/// coordinates first (reduced mod their divisors), then free ones.
#[derive(Clone, Debug)]
pub struct GraphHomology {
    pub torsion: Vec<i64>,
    pub rank: usize,
    pub in_tree: Vec<bool>,
    /// Class of the loop made of each arc and tree paths (zero on tree arcs).
    pub arc_class: Vec<Vec<i64>>,
    /// A cycle in `Z^arcs` representing each generator.
    pub generators: Vec<Vec<i64>>,
    /// Smith data of the relation matrix, columns indexed by non-tree arcs.
    pub snf: SnfResult,
    pub non_tree: Vec<usize>,
}

impl CellComplex {
    /// Boundary of each arc as a signed sum of nodes: `head - tail`.
    pub fn arc_boundary(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.arcs.len()]; self.n_nodes];
        for (a, &(t, h)) in self.arcs.iter().enumerate() {
            m[h][a] += 1;
            m[t][a] -= 1;
        }
        m
    }

    /// Boundary of each 2-cell as a column over the arcs.
    pub fn cell_boundary(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cells.len()]; self.arcs.len()];
        for (c, cell) in self.cells.iter().enumerate() {
            for &(a, s) in cell {
                m[a][c] += s;
            }
        }
        m
    }

    fn spanning_tree(&self, strategy: TreeStrategy) -> (Vec<bool>, Vec<Option<(usize, usize, i64)>>) {
        let n = self.n_nodes;
        let mut incident: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
        for (a, &(t, h)) in self.arcs.iter().enumerate() {
            incident[t].push((a, h, 1));
            incident[h].push((a, t, -1));
        }
        if strategy == TreeStrategy::BfsReversed {
            incident.iter_mut().for_each(|v| v.reverse());
        }
        let root = if strategy == TreeStrategy::BfsReversed { n - 1 } else { 0 };
        let mut in_tree = vec![false; self.arcs.len()];
        // parent[v] = (arc, parent node, sign of the arc when walking parent -> v)
        let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        match strategy {
            TreeStrategy::Bfs | TreeStrategy::BfsReversed => {
                let mut queue = VecDeque::from([root]);
                while let Some(v) = queue.pop_front() {
                    for &(a, w, s) in &incident[v] {
                        if !seen[w] {
                            seen[w] = true;
                            in_tree[a] = true;
                            parent[w] = Some((a, v, s));
                            queue.push_back(w);
                        }
                    }
                }
            }
            TreeStrategy::Dfs => {
                let mut stack = vec![(root, 0usize)];
                while let Some((v, k)) = stack.pop() {
                    if k < incident[v].len() {
                        stack.push((v, k + 1));
                        let (a, w, s) = incident[v][k];
                        if !seen[w] {
                            seen[w] = true;
                            in_tree[a] = true;
                            parent[w] = Some((a, v, s));
                            stack.push((w, 0));
                        }
                    }
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "complex is disconnected");
        (in_tree, parent)
    }

    pub fn homology(&self, strategy: TreeStrategy) -> GraphHomology {
        let n_arcs = self.arcs.len();
        let (in_tree, parent) = self.spanning_tree(strategy);
        let non_tree: Vec<usize> = (0..n_arcs).filter(|&a| !in_tree[a]).collect();
        let mut col_of = vec![usize::MAX; n_arcs];
        for (j, &a) in non_tree.iter().enumerate() {
            col_of[a] = j;
        }
        let relations: Vec<Vec<i64>> = self
            .cells
            .iter()
            .map(|cell| {
                let mut row = vec![0; non_tree.len()];
                for &(a, s) in cell {
                    if !in_tree[a] {
                        row[col_of[a]] += s;
                    }
                }
                row
            })
            .collect();
        let snf = smith_normal_form(&relations, non_tree.len());

        let rank_rel = snf.rank();
        let torsion_idx: Vec<usize> = (0..rank_rel).filter(|&i| snf.diagonal[i] > 1).collect();
        let free_idx: Vec<usize> = (rank_rel..non_tree.len()).collect();
        let torsion: Vec<i64> = torsion_idx.iter().map(|&i| snf.diagonal[i]).collect();
        let coords: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();

        let mut arc_class = vec![vec![0; coords.len()]; n_arcs];
        for (j, &a) in non_tree.iter().enumerate() {
            for (k, &i) in coords.iter().enumerate() {
                let x = snf.v[j][i];
                arc_class[a][k] = if k < torsion.len() { x.rem_euclid(torsion[k]) } else { x };
            }
        }

        // tree path from the root to each node, as a signed arc vector
        let path_to = |mut v: usize| {
            let mut path = vec![0i64; n_arcs];
            while let Some((a, p, s)) = parent[v] {
                path[a] += s;
                v = p;
            }
            path
        };
        let node_paths: Vec<Vec<i64>> = (0..self.n_nodes).map(path_to).collect();
        let loop_of = |a: usize| {
            let (t, h) = self.arcs[a];
            let mut z = vec![0i64; n_arcs];
            z[a] += 1;
            for k in 0..n_arcs {
                z[k] += node_paths[t][k] - node_paths[h][k];
            }
            z
        };
        let loops: Vec<Vec<i64>> = non_tree.iter().map(|&a| loop_of(a)).collect();
        let generators = coords
            .iter()
            .map(|&i| {
                let mut z = vec![0i64; n_arcs];
                for (j, lp) in loops.iter().enumerate() {
                    let x = snf.v_inv[i][j];
                    if x != 0 {
                        z.iter_mut().zip(lp).for_each(|(zk, &l)| *zk += x * l);
                    }
                }
                z
            })
            .collect();

        let mut h = GraphHomology { torsion, rank: free_idx.len(), in_tree, arc_class, generators, snf, non_tree };
        h.reduce_free_basis();
        h
    }
}

impl GraphHomology {
    /// Pairwise size reduction of the free coordinate functionals, viewed as
    /// vectors over the arcs. Generators are updated so that each still has
    /// a unit class.
    fn reduce_free_basis(&mut self) {
        let k0 = self.torsion.len();
        let r = self.rank;
        let column = |h: &GraphHomology, i: usize| -> Vec<i64> { h.arc_class.iter().map(|c| c[k0 + i]).collect() };
        let dot = |x: &[i64], y: &[i64]| -> i128 { x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum() };
        loop {
            let mut changed = false;
            for i in 0..r {
                for j in 0..r {
                    if i == j {
                        continue;
                    }
                    let (ci, cj) = (column(self, i), column(self, j));
                    let nj = dot(&cj, &cj);
                    if nj == 0 {
                        continue;
                    }
                    // nearest integer to <ci,cj>/<cj,cj>
                    let num = dot(&ci, &cj);
                    let k = (2 * num + nj).div_euclid(2 * nj) as i64;
                    if k == 0 {
                        continue;
                    }
                    let reduced: Vec<i64> = ci.iter().zip(&cj).map(|(a, b)| a - k * b).collect();
                    if dot(&reduced, &reduced) >= dot(&ci, &ci) {
                        continue;
                    }
                    for c in self.arc_class.iter_mut() {
                        c[k0 + i] -= k * c[k0 + j];
                    }
                    let gi = self.generators[k0 + i].clone();
                    for (x, y) in self.generators[k0 + j].iter_mut().zip(&gi) {
                        *x += k * y;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn n_coords(&self) -> usize {
        self.torsion.len() + self.rank
    }

    /// Class of a 1-chain (meaningful for cycles), torsion coordinates reduced.
    pub fn class_of(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.n_coords()];
        for (a, &z) in chain.iter().enumerate() {
            if z != 0 {
                for (k, &c) in self.arc_class[a].iter().enumerate() {
                    out[k] += z * c;
                }
            }
        }
        self.reduce(&mut out);
        out
    }

    pub fn reduce(&self, class: &mut [i64]) {
        for (k, &d) in self.torsion.iter().enumerate() {
            class[k] = class[k].rem_euclid(d);
        }
    }

    /// Free part of a class.
    pub fn free_part<'a>(&self, class: &'a [i64]) -> &'a [i64] {
        &class[self.torsion.len()..]
    }
}

/// Whether a chain on the arcs is a cycle.
pub fn is_cycle(complex: &CellComplex, chain: &[i64]) -> bool {
    let mut b = vec![0i64; complex.n_nodes];
    for (a, &z) in chain.iter().enumerate() {
        let (t, h) = complex.arcs[a];
        b[h] += z;
        b[t] -= z;
    }
    b.iter().all(|&x| x == 0)
}
