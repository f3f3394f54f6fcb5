//! Error types shared across the engine.

use thiserror::Error;

/// Errors raised while loading or assembling models and fixtures from data.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("model {model}: {message}")]
    Model { model: String, message: String },
    #[error("model {model} failed validation: {message}")]
    Validation { model: String, message: String },
    #[error("map {map}: {message}")]
    Map { map: String, message: String },
    #[error("family {family}: {message}")]
    Family { family: String, message: String },
    #[error("complex {complex}: {message}")]
    Complex { complex: String, message: String },
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: {message}")]
    File { file: String, message: String },
}

/// Errors raised by engine operations on already-loaded data.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown divisor component {component:?}")]
    UnknownComponent { component: String },
    #[error("component {component:?} is not horizontal in this family")]
    NotHorizontal { component: String },
    #[error("bundles live over different ambient data: {message}")]
    AmbientMismatch { message: String },
    #[error("component map disagrees with the ring map on {component:?}: {message}")]
    ComponentMapMismatch { component: String, message: String },
    #[error("precondition failed: {message}")]
    Precondition { message: String },
    #[error("unknown scenario {name:?}")]
    UnknownScenario { name: String },
    #[error("invalid parameter {key}={value}: {message}")]
    BadParameter {
        key: String,
        value: String,
        message: String,
    },
    #[error(transparent)]
    Load(#[from] LoadError),
}
