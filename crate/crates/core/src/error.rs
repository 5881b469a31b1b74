use thiserror::Error;

pub type Result<T> = std::result::Result<T, GwigError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GwigError {
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("shape mismatch in {context}: expected {expected}, got {actual}")]
    Shape {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("map is not invertible: {0}")]
    NonInvertible(String),

    #[error("singular linear system ({0})")]
    Singular(String),

    #[error("grid has {nodes} nodes, need at least {min}")]
    GridTooSmall { nodes: usize, min: usize },

    #[error("dilation field varies in time (max |Δλ| = {max_change:e}); stationary λ required")]
    NonStationary { max_change: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub(crate) fn check_len(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(GwigError::Shape {
            context,
            expected,
            actual,
        })
    }
}
