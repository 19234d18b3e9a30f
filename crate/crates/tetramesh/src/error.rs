//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("field evaluation failed at ({x}, {y}, {z}): {message}")]
    FieldEval { x: f64, y: f64, z: f64, message: String },

    #[error("vanishing gradient at ({x}, {y}, {z}) (|grad| = {magnitude:.3e}); point is near a critical point of f")]
    VanishingGradient { x: f64, y: f64, z: f64, magnitude: f64 },

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("degenerate triangle from source {source_id}: vertices {i} and {j} share lattice key ({kx}, {ky}, {kz})")]
    DegenerateTriangle {
        source_id: u64,
        i: usize,
        j: usize,
        kx: i64,
        ky: i64,
        kz: i64,
    },

    #[error("mesh is not manifold: {0}")]
    NonManifold(String),

    #[error("vanishing gradient at mesh vertex {vertex} ({x}, {y}, {z})")]
    VanishingGradientAtVertex { vertex: usize, x: f64, y: f64, z: f64 },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Error {
        Error::Io { context: context.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
