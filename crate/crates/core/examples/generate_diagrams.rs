//! Generates covering diagrams, seeded and unseeded, and round-trips their documents.
//!
//! cargo run --example generate_diagrams [seed]

use std::collections::HashMap;

use pathword::{decode_diagram, encode_diagram, generate_diagram, validate_diagram, Alphabet};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(7);

    let hex = Alphabet::builtin("hex").unwrap();
    let diagram = generate_diagram(&hex, 6, 6, Some(seed)).unwrap();
    let again = generate_diagram(&hex, 6, 6, Some(seed)).unwrap();
    assert_eq!(encode_diagram(&diagram), encode_diagram(&again));

    let text = encode_diagram(&diagram);
    print!("{text}");
    assert_eq!(decode_diagram(&text).unwrap(), diagram);
    println!("{}", serde_json::to_string(&diagram.to_json()).unwrap());

    let coverage = validate_diagram(&hex, &diagram.grid().index_rows()).unwrap();
    println!(
        "covered: {}, letter counts: {:?}",
        coverage.covered, coverage.letter_frequencies
    );

    // 100 cells, 100 letters: every diagram is a permutation of 00..99.
    let pairs = Alphabet::builtin("digit-pairs").unwrap();
    let fresh = generate_diagram(&pairs, 10, 10, None).unwrap();
    println!("{}", fresh.render(&HashMap::new()).unwrap());
    println!("id {}", fresh.id());
    println!("distinct letters: {}", fresh.grid().distinct_letters());

    // Too few cells for the alphabet.
    let err = generate_diagram(&hex, 3, 5, Some(seed)).unwrap_err();
    println!("3x5 over hex: {err}");
}
