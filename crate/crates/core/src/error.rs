use num_complex::Complex64;
use thiserror::Error;

use crate::quat::Quaternion;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("the zero quaternion has no inverse")]
    ZeroInverse,

    #[error("a real quaternion has no imaginary axis")]
    RealAxis,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial degree {got} is below the required minimum {min}")]
    DegreeTooLow { got: usize, min: usize },

    #[error("root finding needs a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("root finder did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence {
        iterations: u32,
        residual: f64,
        /// Best iterate found before giving up.
        best: Vec<Complex64>,
    },

    #[error("normal polynomial left an imaginary residue {residue:.3e} above {threshold:.3e}")]
    NormalResidue { residue: f64, threshold: f64 },

    #[error(
        "no left root validated on the sphere (re={re}, rad={rad}): candidate {candidate} has residual {residual:.3e}"
    )]
    SphereValidation {
        re: f64,
        rad: f64,
        candidate: Quaternion,
        residual: f64,
    },

    #[error("two distinct isolated roots landed on the sphere (re={re}, rad={rad})")]
    DuplicateSphereRoot { re: f64, rad: f64 },

    #[error("the radius bound is only defined for monic polynomials")]
    NonMonic,

    #[error("a monomial X^{degree}·a has no positive Cauchy radius")]
    Monomial { degree: usize },

    #[error(
        "bound chain violated: max root norm {max_root_norm} vs rho {rho} vs C {c_of_p} (library bug)"
    )]
    BoundViolation {
        max_root_norm: f64,
        rho: f64,
        c_of_p: f64,
    },

    #[error("critical point {point} escapes the snail by distance {distance:.3e} (library bug)")]
    TheoremViolation { point: Quaternion, distance: f64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
