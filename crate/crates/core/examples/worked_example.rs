//! Reads the password off the worked 6x6 example and draws the path on the grid.
//!
//! cargo run --example worked_example

use pathword::{derive, fixtures, render_path_overlay};

fn main() {
    let diagram = fixtures::example_diagram();
    let path = fixtures::example_path();

    println!("path: {path}");
    println!(
        "{}",
        render_path_overlay(&diagram, &path).expect("path fits the grid")
    );

    let password = derive(&path, &diagram).expect("path fits the grid");
    println!("password: {}", password.text());
    assert_eq!(password.text(), fixtures::EXAMPLE_PASSWORD);

    // Same cells over the full hex alphabet: still derivable, but `0` never occurs.
    let hex = fixtures::example_hex_grid();
    let coverage = hex.coverage();
    println!(
        "over hex: covered={} missing={:?}",
        coverage.covered, coverage.missing_letters
    );
    assert_eq!(derive(&path, &hex).unwrap().text(), password.text());
}
