//! Writes the worked-example graphs as JSON into a directory (default `fixtures/`).

use tgnn_logic::tgraph::{fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, serialize_json};

fn main() -> std::io::Result<()> {
    let dir = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let (f2a, f2b) = fixture_figure2_pair();
    let (f4a, f4b) = fixture_figure4_pair();
    for (name, p) in [
        ("fig1", fixture_figure1()),
        ("fig2a", f2a),
        ("fig2b", f2b),
        ("fig4a", f4a),
        ("fig4b", f4b),
    ] {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serialize_json(&p.graph))?;
        println!("{}: pointed at node {} time {}", path.display(), p.graph.names()[p.node], p.time_index + 1);
    }
    Ok(())
}
