//! Error type shared by every module.
//!
//! Variants are split by what the caller can do about them: fix the input
//! (`Domain`, `Config`), relax the request (`Accuracy`), move away from a
//! structural singularity (`Singular`, `Pole`, `DivergentTerm`), or accept
//! that the feature is out of scope (`Unsupported`).

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical or physical domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// Inconsistent or unusable configuration (mismatched parameters,
    /// contradictory options).
    #[error("config: {0}")]
    Config(String),

    /// An integrand evaluated to a non-finite value, or the requested point
    /// sits on a structural singularity. Carries the offending abscissa.
    #[error("singular integrand at {abscissa:e}: {context}")]
    Singular { abscissa: f64, context: String },

    /// Refinement stopped before reaching the requested relative tolerance.
    /// `value` is the best estimate so far, `achieved` the last observed
    /// relative change.
    #[error(
        "tolerance {target:e} not reached after {refinements} refinements \
         (achieved {achieved:e}): {context}"
    )]
    Accuracy {
        target: f64,
        achieved: f64,
        refinements: u32,
        value: f64,
        context: String,
    },

    /// A series term with nonvanishing angular weight has a divergent radial
    /// integral, so the expansion breaks down for these states.
    #[error("divergent term at order {order}: {context}")]
    DivergentTerm { order: u32, context: String },

    /// A perturbative denominator vanishes; the result would be resonant, not
    /// merely inaccurate. Carries the offending ratio of quiver amplitude to
    /// Bohr radius.
    #[error("resonant denominator near quiver/Bohr ratio {ratio:.6}")]
    Pole { ratio: f64 },

    /// Valid physics, but outside what this crate implements.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
