//! The `pathword` command line.
//!
//! Every subcommand is a thin wrapper over a library call. Output is plain
//! text by default and JSON with `--format json`. Exit status is 0 on
//! success, 1 when the operation itself fails (a diagram that cannot cover
//! its alphabet, a repeated coordinate, a rejected login) and 2 when the
//! command line is malformed. Failures print one line to stderr.
//!
//! Path specs are either the text form `6x6 : (1,1) (1,2) ...` or the JSON
//! form `{"rows":6,"cols":6,"steps":[[1,1],[1,2]]}`. They can come from
//! `--path`, or from `--path-file`, where `-` means standard input, to keep
//! them out of shell history.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alphabet::{Alphabet, AlphabetSpec};
use crate::diagram::{generate_diagram, Diagram};
use crate::oracle::{enumerate_oracle, DEFAULT_BUDGET};
use crate::path::{derive, random_path, render_path_overlay, Path};
use crate::service::client::Client;
use crate::service::http::{self, ServerConfig};
use crate::service::seal::MasterKey;
use crate::service::{GridParams, Outcome};
use crate::strength::{analyze, AttackerModel, SECONDS_PER_YEAR};

pub const DEFAULT_SERVER: &str = "http://127.0.0.1:8080";

#[derive(Debug, Parser)]
#[command(
    name = "pathword",
    version,
    about = "Passwords read off letter grids along a secret path"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random diagram that contains every letter of the alphabet.
    GenDiagram {
        /// `hex`, `digit-pairs`, `binary`, or a comma-separated letter list.
        #[arg(long, default_value = "hex")]
        alphabet: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Deterministic output for a given seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the password a path reads off a diagram.
    Derive {
        /// Diagram document (text or JSON); `-` for stdin.
        #[arg(long)]
        diagram: PathBuf,
        #[command(flatten)]
        path: PathArg,
    },
    /// Strength report for passwords of length n over |A| letters.
    Analyze {
        /// Alphabet size |A|.
        #[arg(short = 'A', long = "alphabet-size")]
        alphabet_size: usize,
        /// Password length.
        #[arg(short = 'n', long = "length")]
        n: usize,
        /// Attacker guesses per second.
        #[arg(long, default_value_t = 1e6)]
        rate: f64,
        /// Time frame: a number with unit s, h, d or y (365 days), e.g. `1y`.
        #[arg(long, default_value = "1y", value_parser = parse_timeframe)]
        timeframe: f64,
    },
    /// Enumerate every length-n path on a small diagram.
    Oracle {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(short = 'n', long = "length")]
        n: usize,
        /// Refuse to run if more sequences than this would be enumerated.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Draw a random non-repeating path.
    RandomPath {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(short = 'n', long = "length")]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw a diagram as a table, optionally marking a path's visit order.
    Render {
        #[arg(long)]
        diagram: PathBuf,
        #[command(flatten)]
        path: OptionalPathArg,
    },
    /// Run the authentication service. The master key is read from PATHWORD_MASTER_KEY.
    Serve {
        /// TOML file with `listen`, `data_dir`, `ttl_seconds`.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        listen: Option<SocketAddr>,
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// Challenge lifetime in seconds.
        #[arg(long)]
        ttl: Option<i64>,
    },
    /// Enroll a path with a running service.
    Enroll {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        path: PathArg,
        #[arg(long, default_value = "digit-pairs")]
        alphabet: String,
        #[arg(long, default_value_t = 10)]
        rows: usize,
        #[arg(long, default_value_t = 10)]
        cols: usize,
    },
    /// Ask a running service for a login challenge.
    Challenge {
        #[command(flatten)]
        target: Target,
        /// Also write the challenge diagram document here.
        #[arg(long)]
        diagram_out: Option<PathBuf>,
    },
    /// Answer a challenge. Exits 1 unless the outcome is `accepted`.
    Verify {
        #[arg(long, default_value = DEFAULT_SERVER)]
        server: String,
        #[arg(long)]
        challenge: String,
        /// The password; `-` reads it from stdin.
        #[arg(long)]
        password: String,
    },
    /// Remove an enrollment and its pending challenges.
    Revoke {
        #[command(flatten)]
        target: Target,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PathArg {
    /// Path spec, e.g. `6x6 : (1,1) (1,2)`.
    #[arg(long)]
    path: Option<String>,
    /// File holding the path spec; `-` for stdin.
    #[arg(long)]
    path_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalPathArg {
    #[arg(long)]
    path: Option<String>,
    #[arg(long)]
    path_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Target {
    #[arg(long, default_value = DEFAULT_SERVER)]
    server: String,
    #[arg(long)]
    user: String,
    #[arg(long)]
    label: String,
}

/// A failed command: exit status and a one-line message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: 1,
        message: e.to_string(),
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: 2,
        message: e.to_string(),
    }
}

/// Parses `30`, `30s`, `2h`, `7d`, `1y` into seconds. A year is 365 days.
pub fn parse_timeframe(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (number, unit) = match s.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => (&s[..i], c),
        _ => (s, 's'),
    };
    let scale = match unit {
        's' => 1.0,
        'h' => 3600.0,
        'd' => 86400.0,
        'y' => SECONDS_PER_YEAR,
        other => return Err(format!("unknown time unit `{other}` (use s, h, d or y)")),
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a time frame like 1y or 3600s"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err("time frame must be positive".into());
    }
    Ok(value * scale)
}

/// Parses a path spec in either text or JSON form.
pub fn parse_path_spec(spec: &str) -> Result<Path, crate::path::PathError> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        serde_json::from_str(spec).map_err(|e| crate::path::PathError::Syntax(e.to_string()))
    } else {
        Path::from_str(spec)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stdin_used: bool,
}

impl Io<'_> {
    fn read_input(&mut self, file: &std::path::Path) -> Result<String, CliError> {
        if file.as_os_str() == "-" {
            if self.stdin_used {
                return Err(usage("standard input can only be read once"));
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(failed)?;
            Ok(text)
        } else {
            std::fs::read_to_string(file)
                .map_err(|e| failed(format!("reading {}: {e}", file.display())))
        }
    }

    fn read_path(
        &mut self,
        spec: Option<&str>,
        file: Option<&std::path::Path>,
    ) -> Result<Option<Path>, CliError> {
        let text = match (spec, file) {
            (Some(s), _) => s.to_string(),
            (None, Some(f)) => self.read_input(f)?,
            (None, None) => return Ok(None),
        };
        parse_path_spec(&text).map(Some).map_err(failed)
    }

    fn read_diagram(&mut self, file: &std::path::Path) -> Result<Diagram, CliError> {
        let text = self.read_input(file)?;
        Diagram::decode(&text).map_err(failed)
    }

    fn emit(&mut self, text: &str) -> Result<(), CliError> {
        self.stdout.write_all(text.as_bytes()).map_err(failed)
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(failed)?;
        text.push('\n');
        self.emit(&text)
    }
}

fn alphabet(spec: &str) -> Result<Alphabet, CliError> {
    Alphabet::new(&AlphabetSpec::parse(spec)).map_err(usage)
}

fn runtime() -> Result<tokio::runtime::Runtime, CliError> {
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(failed)
}

fn client(server: &str) -> Result<Client, CliError> {
    Client::new(server).map_err(usage)
}

fn diagram_document(diagram: &Diagram, format: Format) -> String {
    match format {
        Format::Text => diagram.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&diagram.to_json()).expect("json value");
            s.push('\n');
            s
        }
    }
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::GenDiagram {
            alphabet: spec,
            rows,
            cols,
            seed,
            out,
        } => {
            let alphabet = alphabet(&spec)?;
            let diagram = generate_diagram(&alphabet, rows, cols, seed).map_err(failed)?;
            let doc = diagram_document(&diagram, format);
            match out {
                Some(file) => std::fs::write(&file, doc)
                    .map_err(|e| failed(format!("writing {}: {e}", file.display()))),
                None => io.emit(&doc),
            }
        }
        Command::Derive { diagram, path } => {
            if diagram.as_os_str() == "-"
                && path
                    .path_file
                    .as_deref()
                    .is_some_and(|f| f.as_os_str() == "-")
            {
                return Err(usage("--diagram and --path-file cannot both read stdin"));
            }
            let diagram = io.read_diagram(&diagram)?;
            let path = io
                .read_path(path.path.as_deref(), path.path_file.as_deref())?
                .expect("clap requires a path");
            let password = derive(&path, &diagram).map_err(failed)?;
            match format {
                Format::Text => io.emit(&format!("{}\n", password.text())),
                Format::Json => io.emit_json(&serde_json::json!({
                    "password": password.text(),
                    "letters": password.letters(),
                    "diagram_id": diagram.id(),
                })),
            }
        }
        Command::Analyze {
            alphabet_size,
            n,
            rate,
            timeframe,
        } => {
            let model = AttackerModel::new(rate, timeframe).map_err(usage)?;
            let report = analyze(alphabet_size, n, &model).map_err(failed)?;
            match format {
                Format::Text => io.emit(&report.to_string()),
                Format::Json => io.emit_json(&report),
            }
        }
        Command::Oracle { diagram, n, budget } => {
            let diagram = io.read_diagram(&diagram)?;
            let report = enumerate_oracle(diagram.grid(), n, budget).map_err(failed)?;
            match format {
                Format::Text => io.emit(&report.to_string()),
                Format::Json => io.emit_json(&report),
            }
        }
        Command::RandomPath {
            rows,
            cols,
            n,
            seed,
        } => {
            let path = random_path(rows, cols, n, seed).map_err(failed)?;
            match format {
                Format::Text => io.emit(&format!("{path}\n")),
                Format::Json => io.emit_json(&path),
            }
        }
        Command::Render { diagram, path } => {
            let diagram = io.read_diagram(&diagram)?;
            let table = match io.read_path(path.path.as_deref(), path.path_file.as_deref())? {
                Some(path) => render_path_overlay(&diagram, &path).map_err(failed)?,
                None => diagram.render(&HashMap::new()).map_err(failed)?,
            };
            match format {
                Format::Text => io.emit(&table),
                Format::Json => io.emit_json(&serde_json::json!({
                    "diagram_id": diagram.id(),
                    "table": table,
                })),
            }
        }
        Command::Serve {
            config,
            listen,
            data_dir,
            ttl,
        } => {
            let mut cfg = match (&config, data_dir) {
                (Some(file), dir) => {
                    let mut cfg = ServerConfig::load(file).map_err(usage)?;
                    if let Some(dir) = dir {
                        cfg.data_dir = dir;
                    }
                    cfg
                }
                (None, Some(dir)) => ServerConfig::new(dir),
                (None, None) => return Err(usage("serve needs --config or --data-dir")),
            };
            if let Some(listen) = listen {
                cfg.listen = listen;
            }
            if let Some(ttl) = ttl {
                cfg.ttl_seconds = ttl;
            }
            let key = MasterKey::from_env().map_err(usage)?;
            cfg.service_config(key.clone()).map_err(usage)?;
            runtime()?.block_on(http::serve(&cfg, key)).map_err(failed)
        }
        Command::Enroll {
            target,
            path,
            alphabet: spec,
            rows,
            cols,
        } => {
            let grid = GridParams {
                alphabet: alphabet(&spec)?,
                rows,
                cols,
            };
            let client = client(&target.server)?;
            let path = io
                .read_path(path.path.as_deref(), path.path_file.as_deref())?
                .expect("clap requires a path");
            let resp = runtime()?
                .block_on(client.enroll(&target.user, &target.label, &path, Some(grid)))
                .map_err(failed)?;
            match format {
                Format::Text => io.emit(&format!(
                    "enrolled {}/{}: {}-step path on {}x{}\n",
                    resp.user, resp.label, resp.path_length, resp.rows, resp.cols
                )),
                Format::Json => io.emit_json(&resp),
            }
        }
        Command::Challenge {
            target,
            diagram_out,
        } => {
            let client = client(&target.server)?;
            let resp = runtime()?
                .block_on(client.challenge(&target.user, &target.label))
                .map_err(failed)?;
            if let Some(file) = diagram_out {
                std::fs::write(&file, diagram_document(&resp.diagram, format))
                    .map_err(|e| failed(format!("writing {}: {e}", file.display())))?;
            }
            match format {
                Format::Text => {
                    let table = resp.diagram.render(&HashMap::new()).map_err(failed)?;
                    io.emit(&format!(
                        "challenge_id: {}\nexpires_at: {}\n{}",
                        resp.challenge_id,
                        resp.expires_at.to_rfc3339(),
                        table
                    ))
                }
                Format::Json => io.emit_json(&resp),
            }
        }
        Command::Verify {
            server,
            challenge,
            password,
        } => {
            let client = client(&server)?;
            let password = if password == "-" {
                io.read_input(std::path::Path::new("-"))?
            } else {
                password
            };
            let result = runtime()?
                .block_on(client.verify(&challenge, password.trim()))
                .map_err(failed)?;
            match format {
                Format::Text => io.emit(&format!("{}\n", result.outcome))?,
                Format::Json => io.emit_json(&result)?,
            }
            if result.outcome == Outcome::Accepted {
                Ok(())
            } else {
                Err(failed(format!("login {}", result.outcome)))
            }
        }
        Command::Revoke { target } => {
            let client = client(&target.server)?;
            runtime()?
                .block_on(client.revoke(&target.user, &target.label))
                .map_err(failed)?;
            match format {
                Format::Text => io.emit(&format!("revoked {}/{}\n", target.user, target.label)),
                Format::Json => io.emit_json(&serde_json::json!({
                    "revoked": true,
                    "user": target.user,
                    "label": target.label,
                })),
            }
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stdin_used: false,
    };
    match execute(cli, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message.replace('\n', " "));
            e.code
        }
    }
}

/// Entry point for the binary: real argv and standard streams.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
