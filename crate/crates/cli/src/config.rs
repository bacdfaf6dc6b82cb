use std::env;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cobweb::FSequence;

use crate::Cli;

/// Directory searched for sequence definition files named by `--seq`.
pub const SEQ_DIR_VAR: &str = "COBWEB_SEQ_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cobweb::Error),
    #[error("cannot write {0}: {1}")]
    Io(String, #[source] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(..) => 1,
        }
    }
}

#[derive(Debug)]
pub struct CommandConfig {
    pub seq: FSequence,
    pub levels: Option<usize>,
    pub format: Format,
    pub cap: Option<u64>,
    pub out: Option<PathBuf>,
}

impl CommandConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        if cli.cap == Some(0) {
            return Err(CliError::Usage("--cap must be positive".into()));
        }
        Ok(Self {
            seq: resolve_sequence(&cli.seq, cli.q, env::var_os(SEQ_DIR_VAR).map(PathBuf::from).as_deref())?,
            levels: cli.levels,
            format: cli.format,
            cap: cli.cap,
            out: cli.out.clone(),
        })
    }

    /// The level count from the positional argument, else `--levels`.
    pub fn levels_or(&self, positional: Option<usize>) -> Result<usize, CliError> {
        positional
            .or(self.levels)
            .ok_or_else(|| CliError::Usage("give the number of levels as an argument or with --levels".into()))
    }

    pub fn cap_or(&self, default: u64) -> u64 {
        self.cap.unwrap_or(default)
    }

    pub fn require(&self, allowed: &[Format]) -> Result<(), CliError> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            Err(CliError::Usage(format!("format {:?} is not available for this command", self.format).to_lowercase()))
        }
    }
}

/// Built-in name first, then a file path, then a file in the sequence directory.
pub fn resolve_sequence(selector: &str, q: Option<u64>, seq_dir: Option<&Path>) -> Result<FSequence, CliError> {
    if let Ok(f) = FSequence::from_name(selector, q) {
        return Ok(f);
    }
    let direct = Path::new(selector);
    let mut candidates = vec![direct.to_path_buf()];
    if let Some(dir) = seq_dir {
        for suffix in ["", ".txt", ".json"] {
            candidates.push(dir.join(format!("{selector}{suffix}")));
        }
    }
    let path = candidates
        .into_iter()
        .find(|p| p.is_file())
        .ok_or_else(|| CliError::Usage(format!("unknown sequence `{selector}`")))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(selector);
    Ok(FSequence::from_definition(name, &text)?)
}
