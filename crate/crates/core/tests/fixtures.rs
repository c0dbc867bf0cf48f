use tgnn_logic::tgraph::{fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, parse_json, serialize_json};

#[test]
fn shipped_fixture_files_match_builders() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let (f2a, f2b) = fixture_figure2_pair();
    let (f4a, f4b) = fixture_figure4_pair();
    for (name, p) in [("fig1", fixture_figure1()), ("fig2a", f2a), ("fig2b", f2b), ("fig4a", f4a), ("fig4b", f4b)] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        let parsed = parse_json(&text).unwrap();
        assert!(parsed.is_discrete() && parsed.is_coloured(), "{name}");
        assert_eq!(parsed, p.graph, "{name}");
        assert_eq!(text, serialize_json(&p.graph), "{name}");
    }
}
