//! Casimir-Lifshitz pressures and energies between planar, anisotropic,
//! magnetodielectric media, and Casimir-Polder potentials of atoms near them.
//!
//! All quantities are SI. Frequencies are angular (rad/s) and response
//! functions are evaluated on the imaginary axis `omega = i xi`.

pub mod constants;
pub mod error;
pub mod lifshitz;
pub mod material_models;
pub mod quadrature;
pub mod reflection;

pub use error::{LifshitzError, ModelError, QuadratureError, ReflectionError};
