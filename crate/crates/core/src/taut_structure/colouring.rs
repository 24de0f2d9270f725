//! Red/blue veering colourings.

use super::{TautError, TautStructure};
use crate::census_io::edge_pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

pub type EdgeColouring = Vec<Colour>;

/// Colours forced on the two equatorial pairs of `t` when the pair
/// following the π pair (cyclically) has colour `lead`.
fn tet_pattern(ts: &TautStructure, t: usize, lead: Colour) -> [(usize, Colour); 4] {
    let d = ts.angles()[t] as usize;
    let p1 = (d + 1) % 3;
    let p2 = (d + 2) % 3;
    let class = |e: usize| ts.table().edge_id(t, e);
    [(class(p1), lead), (class(5 - p1), lead), (class(p2), lead.other()), (class(5 - p2), lead.other())]
}

fn colour_with(ts: &TautStructure, lead: Colour) -> Option<EdgeColouring> {
    let mut colour: Vec<Option<Colour>> = vec![None; ts.n_edges()];
    for t in 0..ts.n_tet() {
        for (e, c) in tet_pattern(ts, t, lead) {
            match colour[e] {
                None => colour[e] = Some(c),
                Some(old) if old != c => return None,
                _ => {}
            }
        }
    }
    colour.into_iter().collect()
}

/// Finds a veering colouring; the chirality is fixed by the orientation,
/// and the colour names are fixed by trying the census convention first.
pub fn derive_veering_colouring(ts: &TautStructure) -> Result<EdgeColouring, TautError> {
    colour_with(ts, Colour::Blue).or_else(|| colour_with(ts, Colour::Red)).ok_or(TautError::NotVeering)
}

/// Whether `colouring` has the veering pattern in every tetrahedron, with
/// one chirality throughout.
pub fn is_veering_colouring(ts: &TautStructure, colouring: &[Colour]) -> bool {
    [Colour::Blue, Colour::Red]
        .into_iter()
        .any(|lead| (0..ts.n_tet()).all(|t| tet_pattern(ts, t, lead).iter().all(|&(e, c)| colouring[e] == c)))
}

/// Equatorial edge numbers of a tetrahedron, i.e. those outside its π pair.
pub fn equatorial_edges(ts: &TautStructure, t: usize) -> impl Iterator<Item = usize> + '_ {
    (0..6).filter(move |&e| edge_pair(e) != ts.angles()[t] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census_io::parse_taut_sig;
    use crate::taut_structure::{build_tracks, derive_coorientation};

    #[test]
    fn two_tetrahedron_colouring() {
        let (table, angles) = parse_taut_sig("cPcbbbdxm_10").unwrap();
        let ts = derive_coorientation(&table, &angles).unwrap();
        let c = derive_veering_colouring(&ts).unwrap();
        assert_eq!(c.len(), 2);
        assert_ne!(c[0], c[1]);
        assert!(is_veering_colouring(&ts, &c));
        let swapped: Vec<Colour> = c.iter().map(|x| x.other()).collect();
        assert!(is_veering_colouring(&ts, &swapped));
        let broken = vec![c[0], c[0]];
        assert!(!is_veering_colouring(&ts, &broken));
    }

    #[test]
    fn upper_large_edges_of_top_faces_share_top_diagonal_colour() {
        for sig in ["cPcbbbdxm_10", "cPcbbbiht_12", "oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj_12001112122200"] {
            let (table, angles) = parse_taut_sig(sig).unwrap();
            let ts = derive_coorientation(&table, &angles).unwrap();
            let tracks = build_tracks(&ts);
            let colour = derive_veering_colouring(&ts).unwrap();
            for t in 0..ts.n_tet() {
                let top_colour = colour[ts.top_diagonal_class(t)];
                let mut same: Vec<usize> = equatorial_edges(&ts, t)
                    .filter(|&e| colour[ts.table().edge_id(t, e)] == top_colour)
                    .collect();
                same.sort();
                let mut large: Vec<usize> = ts
                    .top_faces(t)
                    .iter()
                    .map(|&i| {
                        let f = ts.table().face_id(crate::census_io::Side { tet: t, face: i });
                        assert_eq!(ts.below(f).tet, t);
                        let (x, y) = crate::taut_structure::tracks::other_two(i, tracks.upper_large[f]);
                        crate::census_io::edge_index(x, y)
                    })
                    .collect();
                large.sort();
                assert_eq!(same, large, "{sig} tetrahedron {t}");
            }
        }
    }
}
