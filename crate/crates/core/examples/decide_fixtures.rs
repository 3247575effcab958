//! Decides every instance in `examples/fixtures/` and prints the verdicts.
//!
//! ```text
//! cargo run --example decide_fixtures
//! ```

use std::fs;
use std::path::Path;

use bounded_freeness::decider::decide;
use bounded_freeness::io::parse_instance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fixtures");
    let mut paths: Vec<_> = fs::read_dir(&dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let text = fs::read_to_string(&path)?;
        if !text.contains("\"z\"") {
            continue;
        }
        let name = path.file_stem().unwrap().to_string_lossy();
        match parse_instance(&text).map_err(|e| e.to_string()).and_then(|i| decide(&i).map_err(|e| e.to_string())) {
            Ok(v) => {
                let witness = v.witness.map(|w| format!("  {w}")).unwrap_or_default();
                println!("{name:<22} injective={:<5} {:<20}{witness}", v.injective, v.branch.as_str());
            }
            Err(e) => println!("{name:<22} rejected: {e}"),
        }
    }
    Ok(())
}
