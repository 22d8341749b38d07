//! Error type shared by all modules.

use crate::geom::Complex;

/// Errors produced by domain operations.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// that the CLI surfaces in its JSON error objects.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The three vertices are collinear.
    #[error("degenerate triangle: vertices are collinear")]
    DegenerateTriangle,

    /// The vertex cycle (a, b, c) is clockwise. Orientation is part of the
    /// data and is validated, never repaired.
    #[error("triangle is clockwise: the labels (a, b, c) must run counter-clockwise")]
    NotCounterClockwise,

    /// A shape parameter must lie in the open upper half-plane.
    #[error("shape parameter {0} is not in the upper half-plane")]
    NotUpperHalfPlane(Complex),

    /// The operation requires an acute shape.
    #[error("shape {0} is not acute")]
    NotAcute(Complex),

    /// The operation requires the shape to be acute, right or obtuse at the
    /// given vertex.
    #[error("shape {z} is not acute, right or obtuse at vertex {vertex}")]
    OutsideVertexDomain { z: Complex, vertex: char },

    /// The second shape must lie in the closed acute region.
    #[error("shape {0} is not in the closed acute region")]
    NotClosedAcute(Complex),

    /// No pencil or backward pencil of the first shape contains the second.
    #[error("no classification: {w} lies in no pencil or backward pencil of {z}")]
    NoClassification { z: Complex, w: Complex },

    /// Stretch parameters must satisfy k1, k2 in [0, 1], not both zero.
    #[error("invalid stretch parameters (k1, k2) = ({0}, {1})")]
    InvalidStretchParameters(f64, f64),

    /// The target shape does not lie in the required backward pencil.
    #[error("{w} is not in the backward pencil of {z}")]
    NotInBackwardPencil { z: Complex, w: Complex },

    /// Only transpositions induce single-piece congruences.
    #[error("permutation {0} is not a transposition")]
    NotTransposition(String),

    /// A tangent vector argument must be non-zero.
    #[error("tangent vector must be non-zero")]
    ZeroTangent,

    /// A scalar argument is outside its admissible range.
    #[error("parameter {name} = {value} out of range: {expected}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A piecewise-linear map must have at least one piece.
    #[error("piecewise-linear map has no pieces")]
    EmptyMap,

    /// A point falls outside the domain of a piecewise-linear map.
    #[error("point {0} is outside the domain of the map")]
    OutsideDomain(Complex),

    /// A piecewise-linear map with a singular piece cannot be composed
    /// against a multi-piece outer map.
    #[error("cannot compose: inner piece is singular")]
    SingularComposition,

    /// Malformed input encountered while decoding a wire format.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateTriangle => "degenerate_triangle",
            Error::NotCounterClockwise => "not_counter_clockwise",
            Error::NotUpperHalfPlane(_) => "not_upper_half_plane",
            Error::NotAcute(_) => "not_acute",
            Error::OutsideVertexDomain { .. } => "outside_vertex_domain",
            Error::NotClosedAcute(_) => "not_closed_acute",
            Error::NoClassification { .. } => "no_classification",
            Error::InvalidStretchParameters(_, _) => "invalid_stretch_parameters",
            Error::NotInBackwardPencil { .. } => "not_in_backward_pencil",
            Error::NotTransposition(_) => "not_transposition",
            Error::ZeroTangent => "zero_tangent",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::EmptyMap => "empty_map",
            Error::OutsideDomain(_) => "outside_domain",
            Error::SingularComposition => "singular_composition",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
