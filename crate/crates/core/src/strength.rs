//! Strength of pathword-derived passwords.
//!
//! All counts are exact big integers and the ratio of injective sequences to
//! all strings is an exact rational. Floating-point fields exist for display
//! and for the closed-form bounds, which are real-valued by nature.
//!
//! Conventions:
//! - Brute force needs `|A|^n / 2` guesses on average.
//! - A password is adequate when `(|A|^n / 2) / rate > T`, strictly.
//! - A timeframe year is 365 days.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigfmt;

pub const SECONDS_PER_YEAR: f64 = 365.0 * 24.0 * 3600.0;

/// Literature estimate of entropy per character of English text.
pub const ENGLISH_BITS_PER_CHAR: f64 = 1.3;
/// Literature estimate of entropy per character of user-chosen passwords.
pub const TYPICAL_PASSWORD_BITS_PER_CHAR: f64 = 4.0;
/// Entropy of a uniformly random 8-bit ASCII character.
pub const ASCII_BITS_PER_CHAR: f64 = 8.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrengthError {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),
    #[error(
        "length {n} exceeds alphabet size {alphabet_size}; injective paths cannot be that long"
    )]
    LengthExceedsAlphabet { n: usize, alphabet_size: usize },
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("attacker model needs a positive finite {field}, got {value}")]
    InvalidModel { field: &'static str, value: f64 },
    #[error("enumeration needs {needed} sequences, budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
}

/// Offline attacker: a guessing rate and the time frame T a password must survive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AttackerModelDoc")]
pub struct AttackerModel {
    guesses_per_second: f64,
    time_frame_seconds: f64,
}

#[derive(Deserialize)]
struct AttackerModelDoc {
    guesses_per_second: f64,
    time_frame_seconds: f64,
}

impl TryFrom<AttackerModelDoc> for AttackerModel {
    type Error = StrengthError;

    fn try_from(doc: AttackerModelDoc) -> Result<Self, StrengthError> {
        AttackerModel::new(doc.guesses_per_second, doc.time_frame_seconds)
    }
}

impl AttackerModel {
    pub fn new(guesses_per_second: f64, time_frame_seconds: f64) -> Result<Self, StrengthError> {
        for (field, value) in [
            ("guesses_per_second", guesses_per_second),
            ("time_frame_seconds", time_frame_seconds),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(StrengthError::InvalidModel { field, value });
            }
        }
        Ok(AttackerModel {
            guesses_per_second,
            time_frame_seconds,
        })
    }

    /// 10^6 guesses per second for one 365-day year.
    pub fn one_year_at_a_million() -> Self {
        AttackerModel::new(1e6, SECONDS_PER_YEAR).expect("constant model")
    }

    pub fn guesses_per_second(&self) -> f64 {
        self.guesses_per_second
    }

    pub fn time_frame_seconds(&self) -> f64 {
        self.time_frame_seconds
    }

    /// Guesses the attacker completes within the time frame, as a real number.
    pub fn guesses_in_time_frame(&self) -> f64 {
        self.guesses_per_second * self.time_frame_seconds
    }

    /// `rate * T` as an exact rational of the two stored floats.
    fn exact_guess_budget(&self) -> BigRational {
        let rate = BigRational::from_float(self.guesses_per_second).expect("finite");
        let frame = BigRational::from_float(self.time_frame_seconds).expect("finite");
        rate * frame
    }
}

fn check_alphabet(alphabet_size: usize) -> Result<(), StrengthError> {
    if alphabet_size < 2 {
        return Err(StrengthError::AlphabetTooSmall(alphabet_size));
    }
    Ok(())
}

fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `|A|^n`, the number of strings of length `n`.
pub fn total_strings(alphabet_size: usize, n: usize) -> Result<BigUint, StrengthError> {
    check_alphabet(alphabet_size)?;
    Ok(pow(alphabet_size, n))
}

/// Falling factorial `pool * (pool-1) * ... * (pool-n+1)`; zero when `n > pool`.
pub fn injective_sequence_count(pool_size: usize, n: usize) -> BigUint {
    if n > pool_size {
        return BigUint::zero();
    }
    (pool_size - n + 1..=pool_size).fold(BigUint::one(), |acc, f| acc * f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ratio {
    /// `injective_sequence_count(|A|, n) / |A|^n`, in lowest terms.
    pub exact: BigRational,
    /// `(1 - (n-1)/|A|)^n`.
    pub power_bound: f64,
    /// `e^{-(n-1)^2/|A|}`, an approximation meant for `|A| >> n`.
    pub exp_approx: f64,
}

impl Ratio {
    pub fn value(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_length(alphabet_size: usize, n: usize) -> Result<(), StrengthError> {
    check_alphabet(alphabet_size)?;
    if n == 0 {
        return Err(StrengthError::ZeroLength);
    }
    if n > alphabet_size {
        return Err(StrengthError::LengthExceedsAlphabet { n, alphabet_size });
    }
    Ok(())
}

/// Share of all `|A|^n` strings reachable by non-repeating paths, with its bounds.
pub fn ratio(alphabet_size: usize, n: usize) -> Result<Ratio, StrengthError> {
    check_length(alphabet_size, n)?;
    let exact = BigRational::new(
        BigInt::from(injective_sequence_count(alphabet_size, n)),
        BigInt::from(pow(alphabet_size, n)),
    );
    Ok(Ratio {
        exact,
        power_bound: power_bound(alphabet_size, n),
        exp_approx: exp_approx(alphabet_size, n),
    })
}

pub fn power_bound(alphabet_size: usize, n: usize) -> f64 {
    let a = alphabet_size as f64;
    (1.0 - (n as f64 - 1.0) / a).powi(n as i32)
}

/// The bound rewritten with `k = |A|/(n-1)`: `(1 - 1/k)^{1 + |A|/k}`.
///
/// Since `|A|/k = n - 1` this is the power bound in another form. For `n = 1`,
/// `k` is unbounded and the value is 1.
pub fn k_form_bound(alphabet_size: usize, n: usize) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let a = alphabet_size as f64;
    let k = a / (n as f64 - 1.0);
    (1.0 - 1.0 / k).powf(1.0 + a / k)
}

pub fn exp_approx(alphabet_size: usize, n: usize) -> f64 {
    let d = n as f64 - 1.0;
    (-(d * d) / alphabet_size as f64).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adequacy {
    pub adequate: bool,
    pub expected_time_seconds: f64,
    pub min_adequate_length: usize,
}

/// Whether a random length-`n` password outlasts the attacker's time frame on average.
///
/// The comparison `|A|^n / 2 > rate * T` is done exactly on the stored floats;
/// `min_adequate_length` is the smallest `m >= 1` that passes it.
pub fn adequacy(
    alphabet_size: usize,
    n: usize,
    model: &AttackerModel,
) -> Result<Adequacy, StrengthError> {
    check_alphabet(alphabet_size)?;
    if n == 0 {
        return Err(StrengthError::ZeroLength);
    }
    let threshold = model.exact_guess_budget() * BigInt::from(2);
    let beats = |strings: &BigUint| BigRational::from(BigInt::from(strings.clone())) > threshold;

    let strings = pow(alphabet_size, n);
    let adequate = beats(&strings);
    let expected_time_seconds = bigfmt::to_f64(&strings) / 2.0 / model.guesses_per_second();

    let mut m = 1;
    let mut power = BigUint::from(alphabet_size);
    while !beats(&power) {
        m += 1;
        power *= alphabet_size;
    }
    Ok(Adequacy {
        adequate,
        expected_time_seconds,
        min_adequate_length: m,
    })
}

/// `log2` of the full string count, or of the injective sequence count.
pub fn bits_of_strength(
    alphabet_size: usize,
    n: usize,
    injective: bool,
) -> Result<f64, StrengthError> {
    check_alphabet(alphabet_size)?;
    if injective {
        if n > alphabet_size {
            return Err(StrengthError::LengthExceedsAlphabet { n, alphabet_size });
        }
        Ok(bigfmt::log2(&injective_sequence_count(alphabet_size, n)))
    } else {
        Ok(n as f64 * (alphabet_size as f64).log2())
    }
}

/// Shortest non-repeating path length `m <= |A|` whose sequence count reaches `|A|^n`.
///
/// `None` when even `m = |A|` falls short, which happens once `n` is no
/// longer small against `|A|`.
pub fn compensation_length(alphabet_size: usize, n: usize) -> Option<usize> {
    let target = pow(alphabet_size, n);
    let mut count = BigUint::one();
    for m in 0..=alphabet_size {
        if count >= target {
            return Some(m);
        }
        count *= alphabet_size - m;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyComparison {
    pub english_bits: f64,
    pub typical_password_bits: f64,
    pub ascii_bits: f64,
}

/// Reference entropies for `n` characters of English, of typical passwords
/// and of random ASCII, from published per-character estimates.
pub fn entropy_comparison(n: usize) -> EntropyComparison {
    let n = n as f64;
    EntropyComparison {
        english_bits: ENGLISH_BITS_PER_CHAR * n,
        typical_password_bits: TYPICAL_PASSWORD_BITS_PER_CHAR * n,
        ascii_bits: ASCII_BITS_PER_CHAR * n,
    }
}

/// Strength figures for length-`n` passwords over `|A|` letters.
///
/// The ratio, its bounds and `injective_bits` describe non-repeating paths and
/// are `None` when `n > |A|`, where no such path exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthReport {
    pub alphabet_size: usize,
    pub length: usize,
    #[serde(with = "bigfmt::biguint")]
    pub total_strings: BigUint,
    /// `ceil(|A|^n / 2)`.
    #[serde(with = "bigfmt::biguint")]
    pub expected_guesses: BigUint,
    #[serde(with = "bigfmt::biguint")]
    pub injective_sequences: BigUint,
    #[serde(with = "bigfmt::rational_opt")]
    pub ratio_exact: Option<BigRational>,
    pub ratio: Option<f64>,
    pub bound_power: Option<f64>,
    pub bound_k_form: Option<f64>,
    pub bound_exp_approx: Option<f64>,
    pub bits: f64,
    pub injective_bits: Option<f64>,
    pub guesses_per_second: f64,
    pub time_frame_seconds: f64,
    pub guesses_in_time_frame: f64,
    pub expected_time_seconds: f64,
    pub adequate: bool,
    pub min_adequate_length: usize,
    pub compensation_length: Option<usize>,
}

/// Full report for alphabet size `|A|` and length `n >= 1` against `model`.
pub fn analyze(
    alphabet_size: usize,
    n: usize,
    model: &AttackerModel,
) -> Result<StrengthReport, StrengthError> {
    let adequacy = adequacy(alphabet_size, n, model)?;
    let r = match ratio(alphabet_size, n) {
        Ok(r) => Some(r),
        Err(StrengthError::LengthExceedsAlphabet { .. }) => None,
        Err(e) => return Err(e),
    };
    let total = total_strings(alphabet_size, n)?;
    let expected_guesses = (&total + 1u32) / 2u32;
    let injective = injective_sequence_count(alphabet_size, n);
    Ok(StrengthReport {
        alphabet_size,
        length: n,
        ratio: r.as_ref().map(Ratio::value),
        bound_power: r.as_ref().map(|r| r.power_bound),
        bound_k_form: r.as_ref().map(|_| k_form_bound(alphabet_size, n)),
        bound_exp_approx: r.as_ref().map(|r| r.exp_approx),
        ratio_exact: r.map(|r| r.exact),
        bits: bits_of_strength(alphabet_size, n, false)?,
        injective_bits: (n <= alphabet_size).then(|| bigfmt::log2(&injective)),
        total_strings: total,
        expected_guesses,
        injective_sequences: injective,
        guesses_per_second: model.guesses_per_second(),
        time_frame_seconds: model.time_frame_seconds(),
        guesses_in_time_frame: model.guesses_in_time_frame(),
        expected_time_seconds: adequacy.expected_time_seconds,
        adequate: adequacy.adequate,
        min_adequate_length: adequacy.min_adequate_length,
        compensation_length: compensation_length(alphabet_size, n),
    })
}

impl fmt::Display for StrengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, k: &str, v: String| writeln!(f, "{k:<24}{v}");
        row(f, "alphabet size", self.alphabet_size.to_string())?;
        row(f, "length", self.length.to_string())?;
        row(f, "total strings", self.total_strings.to_string())?;
        row(f, "expected guesses", self.expected_guesses.to_string())?;
        row(
            f,
            "injective sequences",
            self.injective_sequences.to_string(),
        )?;
        match (
            &self.ratio_exact,
            self.ratio,
            self.bound_power,
            self.bound_k_form,
            self.bound_exp_approx,
        ) {
            (Some(exact), Some(r), Some(power), Some(k_form), Some(exp)) => {
                row(f, "ratio r (exact)", bigfmt::rational_string(exact))?;
                row(f, "ratio r", format!("{r:.6}"))?;
                row(
                    f,
                    "bound chain",
                    format!(
                        "r {r:.6} >= (1-(n-1)/|A|)^n {power:.6} = k-form {k_form:.6}; e^(-(n-1)^2/|A|) {exp:.6}"
                    ),
                )?;
            }
            _ => row(f, "ratio r", "n/a (n > |A|)".to_string())?,
        }
        row(f, "bits (all strings)", format!("{:.2}", self.bits))?;
        row(
            f,
            "bits (injective)",
            self.injective_bits
                .map_or_else(|| "n/a".to_string(), |b| format!("{b:.2}")),
        )?;
        row(
            f,
            "guesses per second",
            format!("{:e}", self.guesses_per_second),
        )?;
        row(f, "time frame (s)", format!("{}", self.time_frame_seconds))?;
        row(
            f,
            "guesses in time frame",
            format!("{:e}", self.guesses_in_time_frame),
        )?;
        row(
            f,
            "expected time (s)",
            format!("{:e}", self.expected_time_seconds),
        )?;
        row(f, "adequate", self.adequate.to_string())?;
        row(
            f,
            "min adequate length",
            self.min_adequate_length.to_string(),
        )?;
        row(
            f,
            "compensation length",
            self.compensation_length
                .map_or_else(|| "none".to_string(), |m| m.to_string()),
        )
    }
}
