use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its truncation criterion within the term cap.
    #[error("series not converged after {terms} terms (last term magnitude {last_term:e})")]
    Truncation { terms: usize, last_term: f64 },

    #[error("quadrature needs {required} nodes, budget is {budget}")]
    Resource { required: usize, budget: usize },

    /// The integrand returned a non-finite value.
    #[error("non-finite integrand value {value} at node {index}")]
    Evaluation { index: usize, value: f64 },

    #[error("degree {requested} exceeds evaluator maximum {max}")]
    Degree { requested: usize, max: usize },

    #[error(
        "projection of degree {degree} amplifies quadrature noise by {amplification:e} \
         (cap {cap:e}); use a larger radius or a smaller maximum degree"
    )]
    Conditioning {
        degree: usize,
        amplification: f64,
        cap: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}
