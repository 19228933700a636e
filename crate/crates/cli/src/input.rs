use std::fmt;
use std::path::Path;

use posetcode::search::SearchError;
use posetcode::{Error, LinearCode, Poset};

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    kind: Kind,
    message: String,
    /// Printed on stdout before exiting: partial results or counterexamples.
    dump: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Validation,
    Budget,
    Violation,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            kind: Kind::Validation,
            message: message.into(),
            dump: None,
        }
    }

    pub fn budget(message: impl Into<String>, dump: Option<String>) -> Self {
        CliError {
            kind: Kind::Budget,
            message: message.into(),
            dump,
        }
    }

    pub fn violation(message: impl Into<String>, dump: String) -> Self {
        CliError {
            kind: Kind::Violation,
            message: message.into(),
            dump: Some(dump),
        }
    }

    pub fn code(&self) -> u8 {
        match self.kind {
            Kind::Validation => 1,
            Kind::Budget => 2,
            Kind::Violation => 3,
        }
    }

    pub fn dump(&self) -> Option<&str> {
        self.dump.as_deref()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            CliError::budget(e.to_string(), None)
        } else {
            CliError::validation(e.to_string())
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Invalid(e) => e.into(),
            e @ SearchError::Budget { .. } => CliError::budget(e.to_string(), None),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

/// `chain:N`, `antichain:N` or `hierarchical:T1,T2,..`; anything else is a
/// file path.
pub fn poset(spec: &str) -> CliResult<Poset> {
    let bad = || CliError::validation(format!("bad family spec `{spec}`"));
    let size = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some(n) = spec.strip_prefix("chain:") {
        return Ok(Poset::chain(size(n)?)?);
    }
    if let Some(n) = spec.strip_prefix("antichain:") {
        return Ok(Poset::antichain(size(n)?)?);
    }
    if let Some(t) = spec.strip_prefix("hierarchical:") {
        let sizes = t.split(',').map(size).collect::<CliResult<Vec<_>>>()?;
        return Ok(Poset::hierarchical(&sizes)?);
    }
    parse_json(Path::new(spec))
}

pub fn code(path: &Path) -> CliResult<LinearCode> {
    parse_json(path)
}

pub fn table(path: &Path) -> CliResult<posetcode::decoder::SyndromeTable> {
    parse_json(path)
}
