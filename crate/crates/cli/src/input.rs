use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use evoalg::graph::{generate, parse_edge_list, GraphSpec, Truncation};
use evoalg::io::{parse_morphism, parse_vector, parse_weights};
use evoalg::algebra::Weights;
use evoalg::morphism::Morphism;
use evoalg::{Error, GraphHandle, SparseVector};

/// Failure before any computation: exit code 2.
#[derive(Debug)]
pub enum InputError {
    Io { path: String, message: String },
    Core(Error),
    Usage(String),
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Io { .. } => "io",
            InputError::Core(e) => e.kind(),
            InputError::Usage(_) => "usage",
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "{path}: {message}"),
            InputError::Core(e) => write!(f, "{e}"),
            InputError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Core(e)
    }
}

pub struct LoadedGraph {
    pub handle: GraphHandle,
    pub radius: Option<usize>,
    /// Finite window of a lazy graph.
    pub truncation: Option<Truncation>,
}

/// Accumulates every input byte into the report digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn record(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }

    fn read(&mut self, label: &str, path: &Path) -> Result<String, InputError> {
        let text = fs::read_to_string(path).map_err(|e| InputError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.record(label, text.as_bytes());
        Ok(text)
    }

    /// An edge-list file if `arg` names an existing file, otherwise a
    /// generator spec. `--radius` fills in or must agree with `@r=`.
    pub fn graph(&mut self, arg: &str, radius: Option<usize>) -> Result<LoadedGraph, InputError> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = self.read("graph", path)?;
            let g = parse_edge_list(&text)?;
            return Ok(LoadedGraph {
                handle: g.into(),
                radius: None,
                truncation: None,
            });
        }
        self.record("graph", arg.as_bytes());
        let spec: GraphSpec = arg.parse()?;
        let radius = match (spec.radius, radius) {
            (Some(a), Some(b)) if a != b => {
                return Err(InputError::Usage(format!(
                    "radius {b} conflicts with @r={a} in the graph spec"
                )))
            }
            (a, b) => a.or(b),
        };
        let handle = generate(&spec.generator)?;
        let truncation = match (&handle, radius) {
            (GraphHandle::Lazy(l), Some(r)) => Some(l.truncate(r)?),
            _ => None,
        };
        if let Some(r) = radius {
            self.record("radius", &(r as u64).to_le_bytes());
        }
        Ok(LoadedGraph {
            handle,
            radius: if truncation.is_some() { radius } else { None },
            truncation,
        })
    }

    pub fn vector(&mut self, path: &Path) -> Result<SparseVector, InputError> {
        let text = self.read("vector", path)?;
        Ok(parse_vector(&text)?)
    }

    pub fn morphism(&mut self, path: &Path) -> Result<Morphism, InputError> {
        let text = self.read("morphism", path)?;
        Ok(parse_morphism(&text)?)
    }

    pub fn weights(&mut self, path: &Path) -> Result<Weights, InputError> {
        let text = self.read("weights", path)?;
        Ok(parse_weights(&text)?)
    }
}
