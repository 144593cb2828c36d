//! Reads a JSON input document, emits one level as DOT and as JSON, and
//! re-parses the JSON emission.

use zptower::input::parse_document;
use zptower::report::{level_from_json, level_to_dot, level_to_json};
use zptower::tower::build_level;

const DOCUMENT: &str = include_str!("../data/dumbbell_p3_branched.json");

fn main() -> Result<(), zptower::Error> {
    let doc = parse_document(DOCUMENT)?;
    println!("input document: dumbbell over p = 3, second vertex ramified");
    println!();

    let level = build_level(&doc.vg, 1)?;
    println!("--- level 1 as DOT ---");
    print!("{}", level_to_dot(&level, &doc));
    println!();

    let value = level_to_json(&level, &doc);
    println!("--- level 1 as JSON (first vertices) ---");
    println!(
        "{}",
        serde_json::to_string_pretty(&value["vertices"]).unwrap()
    );
    println!();

    let parsed = level_from_json(&value)?;
    println!(
        "re-parsed: level {}, {} vertices, {} geometric edges, axioms ok: {}",
        parsed.level,
        parsed.graph.num_vertices(),
        parsed.graph.num_undirected_edges(),
        parsed.graph.validate().is_empty()
    );
    assert_eq!(parsed.graph.edges(), level.graph().edges());
    println!("edge structure identical to the original: true");
    Ok(())
}
