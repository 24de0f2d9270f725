//! Reading Veering Census strings: isoSig decoding, taut angle digits and
//! census files.

mod isosig;
mod table;

use std::path::Path;

use thiserror::Error;

use crate::perm::Perm4;
pub use table::{edge_index, EdgeEmb, Face, GluingTable, Side, EDGE_VERTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidChar { ch: char, pos: usize },
    #[error("signature is truncated")]
    Truncated,
    #[error("signature describes an empty triangulation")]
    Empty,
    #[error("triangulation has an unglued face")]
    OpenFace,
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("invalid gluing: {0}")]
    BadGluing(String),
    #[error("missing '_' between isoSig and angle digits")]
    MissingUnderscore,
    #[error("expected {expected} angle digits, found {found}")]
    DigitCount { expected: usize, found: usize },
    #[error("angle digit {0:?} is not 0, 1 or 2")]
    BadDigit(char),
    #[error("edge class {edge} carries {count} pi angles instead of 2")]
    AngleSum { edge: usize, count: usize },
}

/// Per tetrahedron, which pair of opposite edges carries angle π:
/// 0 ↦ (01, 23), 1 ↦ (02, 13), 2 ↦ (03, 12).
pub type TautAngleVector = Vec<u8>;

/// Edge pair index (0, 1 or 2) of the edge with number `e`.
pub fn edge_pair(e: usize) -> usize {
    e.min(5 - e)
}

/// Decodes an isoSig into an oriented gluing table.
///
/// Tetrahedra are reoriented where needed by exchanging vertices 0 and 1.
pub fn decode_isosig(sig: &str) -> Result<GluingTable, ParseError> {
    let raw = isosig::decode_raw(sig)?;
    GluingTable::from_gluings(isosig::orient(&raw, |_| Perm4::swap(0, 1))?)
}

/// Parses `<isosig>_<digits>`; anything after the first whitespace is ignored.
///
/// Reoriented tetrahedra are relabelled by a transposition fixing their
/// π pair, so the digits keep their meaning.
pub fn parse_taut_sig(line: &str) -> Result<(GluingTable, TautAngleVector), ParseError> {
    let token = line.split_whitespace().next().unwrap_or("");
    let (sig, digits) = token.rsplit_once('_').ok_or(ParseError::MissingUnderscore)?;
    let raw = isosig::decode_raw(sig)?;
    if digits.len() != raw.len() {
        return Err(ParseError::DigitCount { expected: raw.len(), found: digits.chars().count() });
    }
    let angles: TautAngleVector = digits
        .chars()
        .map(|c| match c {
            '0'..='2' => Ok(c as u8 - b'0'),
            _ => Err(ParseError::BadDigit(c)),
        })
        .collect::<Result<_, _>>()?;
    let adj = isosig::orient(&raw, |t| match angles[t] {
        0 => Perm4::swap(0, 1),
        1 => Perm4::swap(0, 2),
        _ => Perm4::swap(0, 3),
    })?;
    let table = GluingTable::from_gluings(adj)?;
    check_angle_sums(&table, &angles)?;
    Ok((table, angles))
}

/// Checks that every edge class has exactly two π slots.
pub fn check_angle_sums(table: &GluingTable, angles: &[u8]) -> Result<(), ParseError> {
    if angles.len() != table.n_tet() {
        return Err(ParseError::DigitCount { expected: table.n_tet(), found: angles.len() });
    }
    for e in 0..table.n_edges() {
        let count = table
            .edge_cycle(e)
            .iter()
            .filter(|emb| edge_pair(emb.edge_number()) == angles[emb.tet] as usize)
            .count();
        if count != 2 {
            return Err(ParseError::AngleSum { edge: e, count });
        }
    }
    Ok(())
}

/// One data line of a census file.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    /// 1-based line number in the file.
    pub line: usize,
    pub sig: String,
    /// Whitespace-separated columns after the signature.
    pub metadata: Vec<String>,
    pub parsed: Result<(GluingTable, TautAngleVector), ParseError>,
}

/// Parses census text; blank lines and `#` comments are skipped.
pub fn parse_census(text: &str) -> Vec<CensusEntry> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let mut words = line.split_whitespace();
            let token = words.next()?;
            if token.starts_with('#') {
                return None;
            }
            Some(CensusEntry {
                line: i + 1,
                sig: token.to_string(),
                metadata: words.map(str::to_string).collect(),
                parsed: parse_taut_sig(token),
            })
        })
        .collect()
}

/// Reads and parses a census file.
pub fn load_census(path: impl AsRef<Path>) -> std::io::Result<Vec<CensusEntry>> {
    Ok(parse_census(&std::fs::read_to_string(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_tetrahedron_example() {
        let t = decode_isosig("cPcbbbdxm").unwrap();
        assert_eq!((t.n_tet(), t.n_faces(), t.n_edges()), (2, 4, 2));
        let (t, a) = parse_taut_sig("cPcbbbdxm_10").unwrap();
        assert_eq!(a, vec![1, 0]);
        assert_eq!(t.n_vertices(), 1);
    }

    #[test]
    fn fourteen_tetrahedra() {
        let t = decode_isosig("oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj").unwrap();
        assert_eq!((t.n_tet(), t.n_faces(), t.n_edges()), (14, 28, 14));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(decode_isosig("!!bad"), Err(ParseError::InvalidChar { .. })));
        assert!(matches!(decode_isosig("cPcbbbdx"), Err(ParseError::Truncated)));
        assert!(matches!(parse_taut_sig("cPcbbbdxm"), Err(ParseError::MissingUnderscore)));
        assert!(matches!(parse_taut_sig("cPcbbbdxm_1"), Err(ParseError::DigitCount { .. })));
        assert!(matches!(parse_taut_sig("cPcbbbdxm_13"), Err(ParseError::BadDigit('3'))));
        assert!(matches!(parse_taut_sig("cPcbbbdxm_11"), Err(ParseError::AngleSum { .. })));
    }

    #[test]
    fn census_text_skips_comments() {
        let text = "# header\ncPcbbbdxm_10 extra columns\n\n  \ncPcbbbiht_12\n";
        let entries = parse_census(text);
        assert_eq!(entries.len(), 2);
        assert_eq!((entries[0].line, entries[1].line), (2, 5));
        assert_eq!(entries[1].sig, "cPcbbbiht_12");
        assert!(entries.iter().all(|e| e.parsed.is_ok()));
    }
}
