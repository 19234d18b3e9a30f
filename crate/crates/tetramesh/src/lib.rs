//! Triangle meshing of implicit surfaces with guaranteed angle quality.
//!
//! The meshers intersect the zero set of a scalar field with a space-filling
//! tetrahedral tiling and emit the pieces as an indexed triangle mesh:
//!
//! - [`midnormal`]: disks through edge midpoints; angle bounds hold at any scale.
//! - [`refine`]: edge-interpolated variant, valence-4 collapse, and gradient
//!   projection for a piecewise-C1 approximation.
//! - [`pyramid`]: the all-equilateral cube-based mesh, with its documented
//!   limitations.
//! - [`quality`]: measures every guaranteed property and emits JSON reports.
//! - [`theory`]: closed-form angle profiles and the numerical optimizations
//!   behind the guarantees.

pub mod error;
pub(crate) mod exec;
pub mod geom;
pub mod field;
pub mod mesh;
pub mod tiling;
pub mod midnormal;
pub mod refine;
pub mod pyramid;
pub mod quality;
pub mod theory;

pub use error::{Error, Result};
