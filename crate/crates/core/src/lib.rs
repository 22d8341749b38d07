//! Thurston's Lipschitz metric on the moduli space of unit-area labelled
//! Euclidean triangles.
//!
//! A labelled triangle of unit area is encoded by a point `z` of the upper
//! half-plane: the triangle is similar to the one with vertices `(z, 0, 1)`,
//! where the vertices carry the labels `a`, `b`, `c` in counter-clockwise
//! order. On this moduli space the Lipschitz metric — the log of the smallest
//! Lipschitz constant of a label-preserving homeomorphism between two marked
//! triangles — admits closed forms, an explicit Finsler norm whose unit ball
//! is a hexagon, and explicit extremal piecewise-linear maps.
//!
//! The crate provides:
//!
//! * [`triangle`] — concrete triangle geometry and the moduli parameter,
//! * [`moduli`] — the half-plane model: label symmetries, pencils and
//!   backward pencils, tangent sectors,
//! * [`metric`] — closed-form distances, the Finsler norm and its unit-ball
//!   hexagon, geodesic polylines,
//! * [`maps`] — piecewise-linear maps: stretch maps, contractions, and their
//!   exact Lipschitz constants,
//! * [`oracle`] — an independent convex-minimax certification of the closed
//!   forms over piecewise-linear maps on refined meshes,
//! * [`json`] — the wire formats used by the CLI.
//!
//! All operations are pure functions on immutable values and are safe for
//! unrestricted concurrent use.

pub mod error;
pub mod geom;
pub mod json;
pub mod maps;
pub mod metric;
pub mod moduli;
pub mod oracle;
pub mod triangle;

pub use error::Error;
pub use geom::{Complex, Mat2};
pub use maps::{PlMap, PlPiece};
pub use maps::{LocusKind, StretchLocus};
pub use metric::{GeodesicPath, Hexagon};
pub use moduli::{LabelPermutation, PairClass, PairKind, SectorTag};
pub use oracle::{BoundaryTag, OracleReport, SolverOptions, TriMesh};
pub use triangle::{LabeledTriangle, RegionTag, ShapePoint, Vertex};

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
