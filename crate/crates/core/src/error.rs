use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({0}, {1}) is not in the upper half-plane")]
    NotInUpperHalfPlane(f64, f64),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("singular cuff: distinguished cuff length {0} is below 1e-12")]
    SingularCuff(f64),
    #[error("configuration is not realizable: {0}")]
    NonRealizable(&'static str),
    #[error("word is not hyperbolic (|trace| = {0})")]
    NonHyperbolic(f64),
    #[error("outside the regime of validity: {0}")]
    OutOfRegime(&'static str),
    #[error("geodesics intersect or share an ideal endpoint")]
    NotUltraparallel,
    #[error("geodesic does not separate the two triangles with the first on its left")]
    NotSeparating,
    #[error("geodesic endpoints are not vertices of the triangles")]
    Incidence,
    #[error("stretch specifications do not match: {0}")]
    SpecMismatch(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
