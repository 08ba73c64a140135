use thiserror::Error;

/// Errors surfaced by the library.
///
/// All physics operations are total on their documented domains; errors are
/// reserved for domain violations and for quadrature that genuinely failed to
/// reach the requested tolerance (which is reported, never silently accepted).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid mode index: {reason}")]
    InvalidModeIndex { reason: String },

    #[error("invalid geometry: {reason}")]
    InvalidGeometry { reason: String },

    #[error("invalid detector configuration: {reason}")]
    InvalidDetector { reason: String },

    #[error("invalid trajectory: {reason}")]
    InvalidTrajectory { reason: String },

    #[error("position (r={r}, z={z}) outside cavity (radius {radius}, length {length})")]
    OutsideCavity {
        r: f64,
        z: f64,
        radius: f64,
        length: f64,
    },

    #[error("proper time {tau} outside crossing interval [0, {t_exit}]")]
    TauOutOfRange { tau: f64, t_exit: f64 },

    #[error("erf argument {re}+{im}i outside documented domain (|Re z|, |Im z| <= {limit})")]
    ErfDomain { re: f64, im: f64, limit: f64 },

    #[error(
        "oscillatory quadrature did not converge within the panel budget \
         (achieved relative error estimate {achieved:.3e}, requested {requested:.3e}){context}"
    )]
    QuadratureNoConvergence {
        achieved: f64,
        requested: f64,
        context: String,
    },

    #[error(
        "inner-product quadrature resolution {resolution} too low: \
         refinement changed the result by {delta:.3e} (tolerance {tol:.3e})"
    )]
    ResolutionTooLow {
        resolution: usize,
        delta: f64,
        tol: f64,
    },

    #[error("empty mode sum: total probability vanished for {context}")]
    EmptyModeSum { context: String },
}

impl Error {
    pub(crate) fn with_cell(self, l: u32, n: u32) -> Self {
        match self {
            Error::QuadratureNoConvergence {
                achieved,
                requested,
                ..
            } => Error::QuadratureNoConvergence {
                achieved,
                requested,
                context: format!(" at mode cell (l={l}, n={n})"),
            },
            other => other,
        }
    }
}
