use std::path::PathBuf;

use thiserror::Error;

/// Errors shared by the solver and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidSpec(String),

    /// |E| <= m: the outer region does not propagate.
    #[error("energy E = {e} is at or below the scattering threshold m = {m}")]
    Threshold { e: f64, m: f64 },

    /// xi = 0 or eta = 0 exactly; the amplitude formulas lose rank there.
    #[error("degenerate kinematics: {0}")]
    DegenerateKinematics(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation too close to a singularity of the tan-form condition.
    #[error("near a pole of the quantization condition: {0}")]
    NearPole(String),

    #[error("integration step {step} exceeds the maximum {max}")]
    StepSize { step: f64, max: f64 },

    #[error("energy E = {0} lies in the bound regime; use the shooting solver")]
    BoundRegime(f64),

    #[error("ill-conditioned amplitude projection: {0}")]
    IllConditionedProjection(String),

    #[error("singular interface system (degenerate kinematics)")]
    SingularSystem,

    /// The potential has no pointwise value at the discontinuities.
    #[error("potential is undefined pointwise at the border x = {0}")]
    BorderEvaluation(f64),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
