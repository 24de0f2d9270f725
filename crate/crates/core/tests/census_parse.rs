use veerpoly::census_io::load_census;

fn census_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/veering_census_with_data.txt")
}

#[test]
fn every_census_line_parses_with_matching_cusp_count() {
    let text = std::fs::read_to_string(census_path()).unwrap();
    let entries = load_census(census_path()).unwrap();
    assert_eq!(entries.len(), 87047);
    for (entry, line) in entries.iter().zip(text.lines()) {
        let (table, angles) = entry.parsed.as_ref().unwrap_or_else(|e| panic!("{}: {e}", entry.sig));
        assert_eq!(angles.len(), table.n_tet());
        assert_eq!(table.n_faces(), 2 * table.n_tet());
        assert_eq!(table.n_edges(), table.n_tet());
        let cusps: usize = line.split_whitespace().nth(2).unwrap().parse().unwrap();
        assert_eq!(table.n_vertices(), cusps, "{}", entry.sig);
    }
}
