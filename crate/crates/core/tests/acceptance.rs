//! Acceptance checks. Prints one PASS/FAIL line per criterion (with indented
//! sub-checks) and exits nonzero if any criterion fails.
//!
//! Expected values come from oracles written here: factorials by plain
//! products, a naive path enumerator, and exact rational comparisons.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use chrono::{Duration, Utc};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use pathword::oracle::DEFAULT_BUDGET;
use pathword::service::client::Client;
use pathword::service::http;
use pathword::service::seal::MasterKey;
use pathword::service::{GridParams, ManualClock, Outcome, Service, ServiceConfig};
use pathword::strength::{exp_approx, k_form_bound, power_bound};
use pathword::{
    adequacy, analyze, bits_of_strength, compensation_length, derive, enumerate_oracle, fixtures,
    generate_diagram, random_path, ratio, validate_diagram, Alphabet, AttackerModel, Grid,
};

// Tolerances and sweep ranges.
const GOLDEN_PASSWORD: &str = "ac43a172e1cb879d";
const PERCENT_ROUNDING: f64 = 0.005;
const SWEEP_MAX_ALPHABET: usize = 1000;
const SWEEP_MAX_LENGTH: usize = 64;
const K_FORM_REL_TOL: f64 = 1e-12;
const EXP_APPROX_ALPHABET_FACTOR: usize = 50;
const EXP_APPROX_ABS_TOL: f64 = 0.02;
const WORST_CASE_SLACK: f64 = 0.01;
const ORACLE_MAX_ALPHABET: usize = 5;
const ORACLE_MAX_SIDE: usize = 3;
const ORACLE_MAX_LENGTH: usize = 4;
const ORACLE_RANDOM_SEEDS: u64 = 100;
/// Exhaustive labelling is done for shapes with at most this many labellings.
const ORACLE_EXHAUSTIVE_CAP: usize = 1024;
const GENERATOR_SEEDS: u64 = 1000;
const LOGINS: usize = 100;

struct Criterion {
    name: &'static str,
    checks: Vec<(bool, String)>,
    started: Instant,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            checks: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(ok, _)| *ok)
    }

    fn print(&self) {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        println!(
            "{}  {} ({:.2?})",
            mark(self.passed()),
            self.name,
            self.started.elapsed()
        );
        for (ok, what) in &self.checks {
            println!("      {}  {what}", mark(*ok));
        }
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, f| acc * BigUint::from(f))
}

/// `pool! / (pool - n)!`, or zero when `n > pool`.
fn falling_by_factorials(pool: usize, n: usize) -> BigUint {
    if n > pool {
        return BigUint::zero();
    }
    factorial(pool) / factorial(pool - n)
}

fn big_pow(base: usize, exp: usize) -> BigUint {
    (0..exp).fold(BigUint::one(), |acc, _| acc * BigUint::from(base))
}

fn rational(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn golden_derivation() -> Criterion {
    let mut c = Criterion::new("golden derivation on the worked 6x6 example");
    let path = fixtures::example_path();
    let over_letters = derive(&path, &fixtures::example_diagram()).map(|p| p.text().to_string());
    c.check(
        over_letters.as_deref() == Ok(GOLDEN_PASSWORD),
        format!(
            "derive(example diagram, example path) = {over_letters:?}, want {GOLDEN_PASSWORD:?}"
        ),
    );
    let over_hex = derive(&path, &fixtures::example_hex_grid()).map(|p| p.text().to_string());
    c.check(
        over_hex.as_deref() == Ok(GOLDEN_PASSWORD),
        format!("same cells over the hex alphabet = {over_hex:?}"),
    );
    let upper = "AC43 A172 E1CB 879D";
    let canonical = fixtures::example_diagram().alphabet().canonicalize(upper);
    c.check(
        canonical == GOLDEN_PASSWORD,
        format!("grouped upper-case form {upper:?} canonicalizes to {canonical:?}"),
    );
    c
}

fn ratio_reproduction() -> Criterion {
    let mut c = Criterion::new("ratio for |A|=100, n=10");
    let expected_count: BigUint = "62815650955529472000".parse().unwrap();
    let oracle_count = falling_by_factorials(100, 10);
    c.check(
        oracle_count == expected_count,
        format!("factorial oracle 100!/90! = {oracle_count}"),
    );
    let denominator = big_pow(10, 20);
    let oracle = rational(oracle_count, denominator);
    match ratio(100, 10) {
        Ok(r) => {
            c.check(
                r.exact == oracle,
                format!("exact ratio {} equals 62815650955529472000/10^20", r.exact),
            );
            // First 11 decimals: floor(r * 10^11).
            let scaled =
                (&r.exact * BigRational::from_integer(BigInt::from(10u64).pow(11))).floor();
            c.check(
                scaled.to_integer() == BigInt::from(62_815_650_955u64),
                format!("decimal expansion 0.{}...", scaled.to_integer()),
            );
            let value = r.exact.to_f64().unwrap_or(f64::NAN);
            c.check(
                (value - 0.63).abs() <= PERCENT_ROUNDING,
                format!("{value:.6} rounds to 63% (|r - 0.63| <= {PERCENT_ROUNDING})"),
            );
        }
        Err(e) => c.check(false, format!("ratio(100, 10) failed: {e}")),
    }
    c
}

fn adequacy_reproduction() -> Criterion {
    let mut c = Criterion::new("adequacy at 10^6 guesses/s over 365 days");
    let model = AttackerModel::new(1e6, 3600.0 * 24.0 * 365.0).unwrap();
    let year_of_guesses = BigUint::from(1_000_000u64) * BigUint::from(3600u64 * 24 * 365);

    match analyze(2, 46, &model) {
        Ok(report) => {
            c.check(
                report.min_adequate_length == 46,
                format!(
                    "min adequate binary length = {}",
                    report.min_adequate_length
                ),
            );
            c.check(report.adequate, "46 random bits are adequate");
            let half = big_pow(2, 45);
            c.check(
                report.expected_guesses == half,
                format!("expected guesses {} = 2^45", report.expected_guesses),
            );
            c.check(
                report.expected_guesses > year_of_guesses
                    && report.guesses_in_time_frame == 31_536_000_000_000.0,
                format!(
                    "2^45 = {} > 10^6*3600*24*365 = {} (report: {:e})",
                    report.expected_guesses, year_of_guesses, report.guesses_in_time_frame
                ),
            );
            let short = big_pow(2, 44);
            c.check(
                short < year_of_guesses,
                format!("2^44 = {short} does not exceed one year of guesses"),
            );
        }
        Err(e) => c.check(false, format!("analyze(2, 46) failed: {e}")),
    }
    let ascii = adequacy(128, 7, &model).unwrap();
    c.check(
        ascii.adequate,
        format!(
            "7 letters over 128 ASCII: adequate={} ({:.1} bits)",
            ascii.adequate,
            bits_of_strength(128, 7, false).unwrap()
        ),
    );
    let hex = adequacy(16, 12, &model).unwrap();
    let hex_bits = bits_of_strength(16, 12, false).unwrap();
    c.check(
        hex.adequate && hex_bits == 48.0,
        format!("12 hex letters: adequate={} bits={hex_bits}", hex.adequate),
    );
    let one = adequacy(2, 1, &model).unwrap();
    c.check(
        !one.adequate && one.expected_time_seconds == 1e-6,
        format!(
            "1 bit: adequate={} expected time {:e} s",
            one.adequate, one.expected_time_seconds
        ),
    );
    c
}

fn bound_chain() -> Criterion {
    let mut c = Criterion::new("bound chain sweep, 2 <= |A| <= 1000, 1 <= n <= min(|A|, 64)");
    let mut points = 0usize;
    let mut power_violations = Vec::new();
    let mut k_form_violations = Vec::new();
    let mut approx_points = 0usize;
    let mut approx_violations = Vec::new();
    let mut approx_worst = (0.0f64, 0usize, 0usize);
    let mut floor_points = 0usize;
    let mut floor_violations = Vec::new();
    let mut floor_min = (f64::INFINITY, 0usize, 0usize);
    let floor = (-1.0f64).exp() - WORST_CASE_SLACK;

    for a in 2..=SWEEP_MAX_ALPHABET {
        let mut injective = BigUint::one();
        let mut total = BigUint::one();
        for n in 1..=a.min(SWEEP_MAX_LENGTH) {
            points += 1;
            injective *= BigUint::from(a - (n - 1));
            total *= BigUint::from(a);
            let r = match ratio(a, n) {
                Ok(r) => r,
                Err(e) => {
                    power_violations.push(format!("({a},{n}): {e}"));
                    continue;
                }
            };
            if r.exact != rational(injective.clone(), total.clone()) {
                power_violations.push(format!(
                    "({a},{n}): exact ratio differs from product oracle"
                ));
            }
            // (1 - (n-1)/|A|)^n as an exact rational.
            let power_exact = rational(big_pow(a - (n - 1), n), big_pow(a, n));
            if r.exact < power_exact {
                power_violations.push(format!("({a},{n})"));
            }

            let power = power_bound(a, n);
            let k_form = k_form_bound(a, n);
            let rel = if power == 0.0 {
                k_form.abs()
            } else {
                ((k_form - power) / power).abs()
            };
            if rel > K_FORM_REL_TOL {
                k_form_violations.push(format!("({a},{n}) rel {rel:.2e}"));
            }

            let value = r.exact.to_f64().unwrap();
            if a >= EXP_APPROX_ALPHABET_FACTOR * n {
                approx_points += 1;
                let gap = (value - exp_approx(a, n)).abs();
                if gap > approx_worst.0 {
                    approx_worst = (gap, a, n);
                }
                if gap > EXP_APPROX_ABS_TOL {
                    approx_violations.push((a, n, gap));
                }
            }
            if ((n - 1) * (n - 1)) <= a {
                floor_points += 1;
                if value < floor_min.0 {
                    floor_min = (value, a, n);
                }
                if value < floor {
                    floor_violations.push(format!("({a},{n}) r={value:.4}"));
                }
            }
        }
    }

    c.check(
        power_violations.is_empty(),
        format!(
            "r >= (1-(n-1)/|A|)^n exactly at all {points} points ({} violations{})",
            power_violations.len(),
            first(&power_violations)
        ),
    );
    c.check(
        k_form_violations.is_empty(),
        format!(
            "k-form (1-1/k)^(1+|A|/k), k=|A|/(n-1), equals the power bound within {K_FORM_REL_TOL:e} relative ({} violations{})",
            k_form_violations.len(),
            first(&k_form_violations)
        ),
    );
    let first_approx = approx_violations
        .first()
        .map(|(a, n, g)| format!("; first at |A|={a}, n={n}, gap {g:.4}"))
        .unwrap_or_default();
    c.check(
        approx_violations.is_empty(),
        format!(
            "|r - e^(-(n-1)^2/|A|)| <= {EXP_APPROX_ABS_TOL} where |A| >= {EXP_APPROX_ALPHABET_FACTOR}n: {} of {approx_points} points exceed it{first_approx}; worst gap {:.4} at |A|={}, n={}",
            approx_violations.len(),
            approx_worst.0,
            approx_worst.1,
            approx_worst.2
        ),
    );
    c.check(
        floor_violations.is_empty(),
        format!(
            "r >= e^-1 - {WORST_CASE_SLACK} = {floor:.4} where (n-1)^2 <= |A|: {floor_points} points, minimum r {:.4} at |A|={}, n={}{}",
            floor_min.0,
            floor_min.1,
            floor_min.2,
            first(&floor_violations)
        ),
    );
    c
}

fn first(items: &[String]) -> String {
    items
        .first()
        .map(|s| format!("; first {s}"))
        .unwrap_or_default()
}

fn compensation() -> Criterion {
    let mut c = Criterion::new("compensation length stays within n+1 for large alphabets");
    let mut bad = Vec::new();
    let mut checked = 0;
    for a in (50..=500).step_by(50) {
        for n in 1..=10 {
            checked += 1;
            let got = compensation_length(a, n);
            // Oracle: smallest m with m-step path count >= |A|^n, by factorial quotients.
            let target = big_pow(a, n);
            let oracle = (0..=a).find(|&m| falling_by_factorials(a, m) >= target);
            if got != oracle || got.is_none_or(|m| m > n + 1) {
                bad.push(format!("({a},{n}): got {got:?}, oracle {oracle:?}"));
            }
        }
    }
    c.check(
        bad.is_empty(),
        format!(
            "|A| in 50..=500 step 50, n in 1..=10: {checked} cases agree with the factorial oracle and are <= n+1{}",
            first(&bad)
        ),
    );
    let small = compensation_length(16, 12);
    c.check(
        small.is_none() && factorial(16) < big_pow(16, 12),
        format!(
            "|A|=16, n=12: {small:?} (16! = {} < 16^12 = {})",
            factorial(16),
            big_pow(16, 12)
        ),
    );
    let hundred = compensation_length(100, 10);
    c.check(hundred == Some(11), format!("|A|=100, n=10: {hundred:?}"));
    c
}

/// Distinct passwords over all injective length-`n` paths, by recursion over
/// unused cells, independent of the library enumerator.
fn naive_distinct(cells: &[usize], n: usize) -> (usize, usize) {
    fn walk(
        cells: &[usize],
        n: usize,
        used: &mut Vec<bool>,
        word: &mut Vec<usize>,
        seen: &mut HashSet<Vec<usize>>,
        count: &mut usize,
    ) {
        if word.len() == n {
            *count += 1;
            seen.insert(word.clone());
            return;
        }
        for i in 0..cells.len() {
            if !used[i] {
                used[i] = true;
                word.push(cells[i]);
                walk(cells, n, used, word, seen, count);
                word.pop();
                used[i] = false;
            }
        }
    }
    let mut seen = HashSet::new();
    let mut count = 0;
    walk(
        cells,
        n,
        &mut vec![false; cells.len()],
        &mut Vec::new(),
        &mut seen,
        &mut count,
    );
    (count, seen.len())
}

fn letters(k: usize) -> Alphabet {
    Alphabet::from_letters((0..k).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

fn oracle_equivalence() -> Criterion {
    let mut c = Criterion::new("oracle equivalence on grids up to 3x3, alphabets up to 5, n <= 4");
    let mut exhaustive_grids = 0usize;
    let mut seeded_grids = 0usize;
    let mut runs = 0usize;
    let mut bound_checked = 0usize;
    let mut count_failures = Vec::new();
    let mut bound_failures = Vec::new();
    let mut naive_failures = Vec::new();

    let mut check_grid = |grid: &Grid, naive: bool| {
        let cells = grid.cell_count();
        let present = grid.distinct_letters();
        let covered = grid.coverage().covered;
        for n in 1..=ORACLE_MAX_LENGTH {
            runs += 1;
            let report = match enumerate_oracle(grid, n, DEFAULT_BUDGET) {
                Ok(r) => r,
                Err(e) => {
                    count_failures.push(format!("{grid:?} n={n}: {e}"));
                    continue;
                }
            };
            if report.sequence_count != falling_by_factorials(cells, n) {
                count_failures.push(format!(
                    "{grid:?} n={n}: {} sequences",
                    report.sequence_count
                ));
            }
            if covered && n <= present {
                bound_checked += 1;
                let bound = falling_by_factorials(present, n);
                if report.lower_bound != bound || report.distinct_passwords < bound {
                    bound_failures.push(format!(
                        "{grid:?} n={n}: {} passwords, bound {bound}",
                        report.distinct_passwords
                    ));
                }
            }
            if naive {
                let (count, distinct) = naive_distinct(grid.cells(), n);
                if BigUint::from(count) != report.sequence_count
                    || BigUint::from(distinct) != report.distinct_passwords
                {
                    naive_failures.push(format!("{grid:?} n={n}: naive {count}/{distinct}"));
                }
            }
        }
    };

    for rows in 1..=ORACLE_MAX_SIDE {
        for cols in 1..=ORACLE_MAX_SIDE {
            let cells = rows * cols;
            for k in 2..=ORACLE_MAX_ALPHABET {
                let alphabet = letters(k);
                let labellings = k.checked_pow(cells as u32).unwrap_or(usize::MAX);
                if labellings <= ORACLE_EXHAUSTIVE_CAP {
                    for code in 0..labellings {
                        let mut rest = code;
                        let flat: Vec<usize> = (0..cells)
                            .map(|_| {
                                let d = rest % k;
                                rest /= k;
                                d
                            })
                            .collect();
                        let grid =
                            Grid::from_row_major(alphabet.clone(), rows, cols, flat).unwrap();
                        exhaustive_grids += 1;
                        check_grid(&grid, false);
                    }
                }
                if cells >= k {
                    for seed in 0..ORACLE_RANDOM_SEEDS {
                        let diagram = generate_diagram(&alphabet, rows, cols, Some(seed)).unwrap();
                        seeded_grids += 1;
                        check_grid(diagram.grid(), true);
                    }
                }
            }
        }
    }

    c.check(
        count_failures.is_empty(),
        format!(
            "sequence_count = cells!/(cells-n)! for {runs} runs over {exhaustive_grids} exhaustive and {seeded_grids} seeded grids{}",
            first(&count_failures)
        ),
    );
    c.check(
        bound_failures.is_empty(),
        format!(
            "distinct passwords >= prod(|A'|-(j-1)) in all {bound_checked} covered cases with n <= |A'|{}",
            first(&bound_failures)
        ),
    );
    c.check(
        naive_failures.is_empty(),
        format!(
            "seeded grids agree with an independent naive enumerator{}",
            first(&naive_failures)
        ),
    );

    let two = Grid::new(letters(2), &[vec![0, 1], vec![1, 0]]).unwrap();
    let r = enumerate_oracle(&two, 2, DEFAULT_BUDGET).unwrap();
    c.check(
        r.sequence_count == BigUint::from(12u32)
            && r.distinct_passwords == BigUint::from(4u32)
            && r.lower_bound == BigUint::from(2u32),
        format!(
            "2x2 [[a,b],[b,a]] n=2: {} sequences, {} passwords, bound {}",
            r.sequence_count, r.distinct_passwords, r.lower_bound
        ),
    );
    let four = Grid::new(letters(4), &[vec![0, 1], vec![2, 3]]).unwrap();
    let r = enumerate_oracle(&four, 2, DEFAULT_BUDGET).unwrap();
    c.check(
        r.sequence_count == BigUint::from(12u32)
            && r.distinct_passwords == BigUint::from(12u32)
            && r.lower_bound == BigUint::from(12u32),
        format!(
            "2x2 [[a,b],[c,d]] n=2: {} sequences, {} passwords, bound {}",
            r.sequence_count, r.distinct_passwords, r.lower_bound
        ),
    );
    c
}

fn generator_coverage() -> Criterion {
    let mut c = Criterion::new("seeded generator coverage, hex 6x6 and digit-pairs 10x10");
    let mut ids = HashSet::new();
    let all_pairs: Vec<usize> = (0..100).collect();
    for (name, alphabet, side) in [
        ("hex 6x6", Alphabet::builtin("hex").unwrap(), 6),
        (
            "digit-pairs 10x10",
            Alphabet::builtin("digit-pairs").unwrap(),
            10,
        ),
    ] {
        let mut uncovered = 0;
        let mut not_permutation = 0;
        for seed in 0..GENERATOR_SEEDS {
            let diagram = generate_diagram(&alphabet, side, side, Some(seed)).unwrap();
            let report = validate_diagram(&alphabet, &diagram.grid().index_rows()).unwrap();
            if !report.covered || !report.missing_letters.is_empty() {
                uncovered += 1;
            }
            if side == 10 {
                let mut cells = diagram.grid().cells().to_vec();
                cells.sort_unstable();
                if cells != all_pairs {
                    not_permutation += 1;
                }
            }
            ids.insert(diagram.id());
        }
        c.check(
            uncovered == 0,
            format!("{name}: {GENERATOR_SEEDS} seeds, {uncovered} fail validation"),
        );
        if side == 10 {
            c.check(
                not_permutation == 0,
                format!("{name}: {not_permutation} are not a permutation of 00..99"),
            );
        }
    }
    let total = 2 * GENERATOR_SEEDS as usize;
    c.check(
        ids.len() == total,
        format!("{} distinct ids among {total} diagrams", ids.len()),
    );
    c
}

fn service_round_trip() -> Criterion {
    let mut c = Criterion::new("service round trip against a local HTTP instance");
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let key = MasterKey::generate();
    let clock = Arc::new(ManualClock::new(Utc::now()));
    let config = || ServiceConfig::new(dir.path(), key.clone()).with_clock(clock.clone() as Arc<_>);
    let path = random_path(10, 10, 10, None).unwrap();

    let (pending_id, pending_password) = rt.block_on(async {
        let service = Arc::new(Service::open(config()).unwrap());
        let server = http::spawn(service.clone(), "127.0.0.1:0".parse().unwrap())
            .await
            .unwrap();
        let client = Client::new(&server.url()).unwrap();

        let enrolled = client.enroll("alice", "high", &path, None).await;
        c.check(
            enrolled.is_ok(),
            match &enrolled {
                Ok(r) => format!(
                    "enroll alice/high on {}x{} digit-pairs, path length {}",
                    r.rows, r.cols, r.path_length
                ),
                Err(e) => format!("enroll alice/high failed: {e}"),
            },
        );

        let ch = client.challenge("alice", "high").await.unwrap();
        let pw = derive(&path, &ch.diagram).unwrap();
        let first = client
            .verify(&ch.challenge_id, pw.text())
            .await
            .unwrap()
            .outcome;
        c.check(
            first == Outcome::Accepted,
            format!("challenge, derive, verify: {first}"),
        );
        let replay = client
            .verify(&ch.challenge_id, pw.text())
            .await
            .unwrap()
            .outcome;
        c.check(
            replay == Outcome::Replayed,
            format!("same answer again: {replay}"),
        );

        let ch = client.challenge("alice", "high").await.unwrap();
        let pw = derive(&path, &ch.diagram).unwrap();
        clock.advance(service.ttl() + Duration::seconds(1));
        let late = client
            .verify(&ch.challenge_id, pw.text())
            .await
            .unwrap()
            .outcome;
        c.check(
            late == Outcome::Expired,
            format!("answer after the TTL: {late}"),
        );

        let mut passwords = HashSet::new();
        let mut accepted = 0;
        for _ in 0..LOGINS {
            let ch = client.challenge("alice", "high").await.unwrap();
            let pw = derive(&path, &ch.diagram).unwrap().text().to_string();
            if client.verify(&ch.challenge_id, &pw).await.unwrap().outcome == Outcome::Accepted {
                accepted += 1;
            }
            passwords.insert(pw);
        }
        c.check(
            accepted == LOGINS && passwords.len() == LOGINS,
            format!(
                "{LOGINS} logins: {accepted} accepted, {} distinct passwords",
                passwords.len()
            ),
        );

        client
            .enroll(
                "alice",
                "low",
                &fixtures::example_path(),
                Some(GridParams {
                    alphabet: Alphabet::builtin("hex").unwrap(),
                    rows: 6,
                    cols: 6,
                }),
            )
            .await
            .unwrap();
        let pending = client.challenge("alice", "low").await.unwrap();
        let answer = derive(&fixtures::example_path(), &pending.diagram)
            .unwrap()
            .text()
            .to_string();
        server.stop().await.unwrap();
        (pending.challenge_id, answer)
    });

    // Reopen the same directory as after a crash.
    let reopened = Service::open(config()).unwrap();
    let high = reopened.enrollment("alice", "high");
    let low = reopened.enrollment("alice", "low");
    c.check(
        high.as_ref().is_ok_and(|r| r.path == path) && low.is_ok(),
        "after reload both enrollments are intact",
    );
    let outcome = reopened
        .verify(&pending_id, &pending_password)
        .map(|r| r.outcome);
    c.check(
        outcome.as_ref().is_ok_and(|o| *o == Outcome::Accepted),
        format!("unconsumed challenge issued before the reload verifies: {outcome:?}"),
    );
    c
}

fn main() -> ExitCode {
    let criteria = [
        golden_derivation as fn() -> Criterion,
        ratio_reproduction,
        adequacy_reproduction,
        bound_chain,
        compensation,
        oracle_equivalence,
        generator_coverage,
        service_round_trip,
    ];
    let mut failed = 0;
    for run in criteria {
        let criterion = run();
        criterion.print();
        if !criterion.passed() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
