//! `ellsurj` command-line front end.
//!
//! Settings come from three layers, lowest precedence first: per-command
//! defaults, a `key = value` file given by `--config`, and explicit flags.
//! Every artifact embeds the resolved settings except `threads`, `output`,
//! `format` and `config`, which never affect the result.

pub mod commands;
pub mod config;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::{Arg, ArgMatches, Command};

pub use config::{ConfigError, RunConfig};
pub use output::{Artifact, Envelope, Format};

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Compute(ellsurj_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<ellsurj_core::Error> for CliError {
    fn from(e: ellsurj_core::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

pub fn command() -> Command {
    let global = |id: &'static str, help: &'static str| {
        Arg::new(id).long(id).global(true).value_name(id.to_uppercase()).help(help)
    };
    let mut cmd = Command::new("ellsurj")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Mod-ell surjectivity certificates for products of elliptic curves")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(global("config", "key = value settings file; flags override it"))
        .arg(global("output", "write the artifact here instead of stdout"))
        .arg(global("format", "json or csv"))
        .arg(global("threads", "worker threads (0 = all cores)"));
    for spec in commands::COMMANDS {
        let mut sub = Command::new(spec.name).about(spec.about);
        for &(key, help) in spec.settings {
            let mut arg = Arg::new(key).help(help);
            if spec.positional != Some(key) {
                arg = arg.long(flag_name(key)).value_name(key.to_uppercase());
            } else {
                sub = sub.arg(Arg::new(format!("{key}_flag")).long(flag_name(key)).hide(true).conflicts_with(key));
            }
            sub = sub.arg(arg);
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

/// Flags given on the command line, by setting name.
fn explicit_flags(m: &ArgMatches) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for id in m.ids() {
        let id = id.as_str();
        if m.value_source(id) != Some(ValueSource::CommandLine) {
            continue;
        }
        if let Some(v) = m.get_one::<String>(id) {
            out.insert(id.trim_end_matches("_flag").to_string(), v.clone());
        }
    }
    out
}

/// Resolves settings from parsed arguments.
pub fn resolve(m: &ArgMatches) -> Result<RunConfig, ConfigError> {
    let (name, sub) = m.subcommand().ok_or_else(|| ConfigError::new("command", "missing"))?;
    let spec = commands::spec(name).ok_or_else(|| ConfigError::new("command", format!("unknown {name:?}")))?;
    let flags = explicit_flags(sub);
    let file = flags.get("config").map(PathBuf::from);
    let allowed: Vec<&str> = spec.settings.iter().map(|(k, _)| *k).collect();
    RunConfig::resolve(name, &allowed, spec.defaults, file.as_deref(), flags)
}

fn output_format(cfg: &RunConfig, artifact: &Artifact) -> Result<Format, ConfigError> {
    match cfg.get("format") {
        None => Ok(artifact.default_format),
        Some("json") => Ok(Format::Json),
        Some("csv") if artifact.csv.is_some() => Ok(Format::Csv),
        Some("csv") => Err(ConfigError::new("format", format!("`{}` has no CSV form", cfg.command))),
        Some(other) => Err(ConfigError::new("format", format!("expected json or csv, got {other:?}"))),
    }
}

/// Runs the command on a pool of `threads` workers and returns the
/// rendered artifact.
pub fn render(cfg: &RunConfig) -> Result<String, CliError> {
    let threads = match cfg.get("threads") {
        Some(_) => cfg.u64("threads")? as usize,
        None => 0,
    };
    if let Some(f) = cfg.get("format") {
        if f != "json" && f != "csv" {
            return Err(ConfigError::new("format", format!("expected json or csv, got {f:?}")).into());
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ConfigError::new("threads", e.to_string()))?;
    let artifact = pool.install(|| commands::execute(cfg))?;
    Ok(match output_format(cfg, &artifact)? {
        Format::Json => output::render_json(cfg, &artifact),
        Format::Csv => output::render_csv(cfg, artifact.csv.as_deref().expect("checked above")),
    })
}

/// Full run: parse, compute, write to `output` or stdout.
pub fn run<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let m = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => e.exit(),
    };
    let cfg = resolve(&m)?;
    let text = render(&cfg)?;
    match cfg.get("output") {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
