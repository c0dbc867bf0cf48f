//! Compiles one formula for every architecture that accepts it and prints
//! the artifact sidecars.

use tgnn_logic::logic::parse_formula;
use tgnn_logic::verify::Arch;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "c1 & <>c2".into());
    let phi = parse_formula(&text).expect("formula");
    for arch in [Arch::Recursive, Arch::TandG, Arch::Global] {
        match arch.compile(&phi, phi.max_colour().max(1)) {
            Ok(art) => println!("{}\n{}", arch.name(), serde_json::to_string_pretty(&art.sidecar_json()).unwrap()),
            Err(e) => println!("{}: {e}", arch.name()),
        }
    }
}
