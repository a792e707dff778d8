//! Brute-force count of every path on small grids, checked against the closed forms.
//!
//! cargo run --example oracle

use pathword::oracle::DEFAULT_BUDGET;
use pathword::{
    enumerate_oracle, fixtures, generate_diagram, injective_sequence_count, Alphabet, Grid,
};

fn main() {
    let two = Alphabet::from_letters(["0", "1"]).unwrap();
    let four = Alphabet::from_letters(["0", "1", "2", "3"]).unwrap();
    let cases = [
        (
            "2x2 over {0,1}",
            Grid::new(two, &[vec![0, 1], vec![1, 0]]).unwrap(),
            2,
        ),
        (
            "2x2 over {0..3}",
            Grid::new(four, &[vec![0, 1], vec![2, 3]]).unwrap(),
            2,
        ),
    ];
    for (name, grid, n) in cases {
        let report = enumerate_oracle(&grid, n, DEFAULT_BUDGET).unwrap();
        println!("{name}, n={n}\n{report}");
    }

    let ternary = Alphabet::from_letters(["x", "y", "z"]).unwrap();
    let diagram = generate_diagram(&ternary, 3, 3, Some(1)).unwrap();
    for n in 1..=4 {
        let report = enumerate_oracle(diagram.grid(), n, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.sequence_count, injective_sequence_count(9, n));
        println!(
            "3x3 over {{x,y,z}} n={n}: {} sequences, {} passwords, bound {} holds={}",
            report.sequence_count,
            report.distinct_passwords,
            report.lower_bound,
            report.bound_holds()
        );
    }

    // The 6x6 example with 16 steps would need 36!/20! sequences.
    let err = enumerate_oracle(fixtures::example_diagram().grid(), 16, DEFAULT_BUDGET).unwrap_err();
    println!("example grid, n=16: {err}");
}
