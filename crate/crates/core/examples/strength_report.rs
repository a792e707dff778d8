//! Strength figures: plain random strings against non-repeating path passwords.
//!
//! cargo run --example strength_report

use pathword::strength::{power_bound, ratio};
use pathword::{analyze, bits_of_strength, compensation_length, entropy_comparison, AttackerModel};

fn main() {
    let model = AttackerModel::one_year_at_a_million();

    // How long must a random bit string be to outlast a year at 10^6 guesses/s?
    let binary = analyze(2, 46, &model).unwrap();
    println!("{binary}");

    // 100-letter alphabet, 10-step path: the recommended service configuration.
    let report = analyze(100, 10, &model).unwrap();
    println!("{report}");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    for (a, n) in [(128, 7), (16, 12)] {
        let r = analyze(a, n, &model).unwrap();
        println!(
            "|A|={a:<4} n={n:<3} bits={:.1} adequate={} min length={}",
            r.bits, r.adequate, r.min_adequate_length
        );
    }

    println!("\n|A|   n   r           power bound  bits(all)  bits(paths)  compensate");
    for (a, n) in [(100, 10), (100, 9), (256, 16), (1000, 20), (16, 16)] {
        let r = ratio(a, n).unwrap();
        println!(
            "{a:<5} {n:<3} {:<11.6} {:<12.6} {:<10.2} {:<12.2} {}",
            r.value(),
            power_bound(a, n),
            bits_of_strength(a, n, false).unwrap(),
            bits_of_strength(a, n, true).unwrap(),
            compensation_length(a, n).map_or("none".into(), |m| m.to_string()),
        );
    }

    let e = entropy_comparison(10);
    println!(
        "\n10 characters: English {:.0} bits, typical password {:.0} bits, random ASCII {:.0} bits",
        e.english_bits, e.typical_password_bits, e.ascii_bits
    );
}
