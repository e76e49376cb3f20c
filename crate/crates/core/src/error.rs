//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by corpus handling, metrics, judge orchestration and
/// the evaluation pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    // ---- corpus ----
    #[error("line {line}: malformed instance: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("line {line}: unknown category {value:?} (expected Material, Social, Linguistic, Religious or Ecological)")]
    UnknownCategory { line: usize, value: String },

    #[error("instance {id}: {field} [{start},{end}) out of bounds for text of {len} chars")]
    SpanOutOfBounds {
        id: String,
        field: &'static str,
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("instance {id}: {field} is empty")]
    EmptyField { id: String, field: &'static str },

    #[error("duplicate id {id:?} on lines {first_line} and {second_line}")]
    DuplicateId {
        id: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("corpus is empty")]
    EmptyCorpus,

    // ---- metrics ----
    #[error("empty reference set")]
    EmptyReferences,

    #[error("empty input: {what}")]
    EmptyInput { what: &'static str },

    #[error("scorer descriptor {descriptor:?} is not valid: {message}")]
    BadScorerDescriptor { descriptor: String, message: String },

    // ---- judge ----
    #[error("template {template}: placeholder {{{{{name}}}}} has no binding")]
    MissingPlaceholder { template: String, name: String },

    #[error("unknown template id {0:?}")]
    UnknownTemplate(String),

    #[error("judge backend {backend}: {message}")]
    Backend { backend: String, message: String },

    #[error("judge backend {backend}: retries exhausted after {attempts} attempts: {message}")]
    RetriesExhausted {
        backend: String,
        attempts: u32,
        message: String,
    },

    #[error("judge backend {backend}: malformed payload: {message}")]
    MalformedPayload { backend: String, message: String },

    #[error("unparseable judge response for template {template}: {message}")]
    Unparseable { template: String, message: String },

    #[error("judge request asks for non-deterministic decoding; only deterministic decoding is supported")]
    NonDeterministicDecode,

    // ---- acre / runner ----
    #[error("weights alpha={alpha} beta={beta} do not sum to 1")]
    BadWeights { alpha: f64, beta: f64 },

    #[error("missing hypotheses for instances: {}", ids.join(", "))]
    MissingHypotheses { ids: Vec<String> },

    #[error("duplicate hypothesis for instance {instance_id}, system {system_id}, mode {mode}")]
    DuplicateHypothesis {
        instance_id: String,
        system_id: String,
        mode: String,
    },

    #[error("one-shot demo id {id:?} overlaps the evaluated corpus")]
    DemoOverlapsCorpus { id: String },

    #[error("one-shot mode requires a demo pair")]
    MissingDemo,

    // ---- taxonomy ----
    #[error("unknown error category {0:?}")]
    UnknownErrorCategory(String),

    #[error("unknown system id {0:?}")]
    UnknownSystemId(String),

    // ---- meta ----
    #[error("length mismatch: {xs} vs {ys}")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("need at least 2 paired samples, got {0}")]
    TooFewSamples(usize),

    #[error("zero variance in {which} vector")]
    ZeroVariance { which: &'static str },

    #[error("coverage mismatch, missing keys: {}", keys.join(", "))]
    CoverageMismatch { keys: Vec<String> },

    #[error("instance {id}: hypothesis does not realize the cultural span")]
    SpanNotRealized { id: String },

    #[error("instance {id}: no substitution entry for {error_type} in the perturbation table")]
    MissingSubstitution { id: String, error_type: String },

    // ---- mining ----
    #[error("no explication for term {term:?} in the sidecar file")]
    MissingExplication { term: String },

    #[error("mining response invalid after repair: {0}")]
    MiningUnparseable(String),

    #[error("{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
