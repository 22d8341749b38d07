//! Piecewise-linear planar maps and their exact Lipschitz constants.
//!
//! A [`PlMap`] is a finite list of pieces, each an affine or anti-affine map
//! `zeta -> alpha zeta + beta conj(zeta) + tau` on a triangular source
//! region. The singular values of a piece are `|alpha| + |beta|` and
//! `||alpha| - |beta||`, so the Lipschitz constant of the whole map is exact
//! up to floating point. Pieces compose in closed form, which is how the
//! conjugated stretch maps and the two-fold contractions are built.

mod contraction;
mod stretch;

pub use contraction::{backward_extremal_map, contraction_c, contraction_g, extremal_map};
pub use stretch::{nonexistence_flag, stretch_locus, stretch_map, stretch_target};
pub use stretch::{FoliatedRegion, LocusKind, StretchLocus};

use crate::error::Error;
use crate::geom::{poly, signed_area2, Complex, Mat2};
use crate::Result;

/// One affine or anti-affine piece of a piecewise-linear map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlPiece {
    tri: [Complex; 3],
    alpha: Complex,
    beta: Complex,
    tau: Complex,
}

impl PlPiece {
    /// Piece `zeta -> alpha zeta + beta conj(zeta) + tau` on the triangle
    /// `tri`. The vertex order of the source is normalised to
    /// counter-clockwise.
    pub fn new(tri: [Complex; 3], alpha: Complex, beta: Complex, tau: Complex) -> PlPiece {
        let tri = ccw(tri);
        PlPiece {
            tri,
            alpha,
            beta,
            tau,
        }
    }

    /// Orientation-preserving piece `zeta -> alpha zeta + tau`.
    pub fn new_affine(tri: [Complex; 3], alpha: Complex, tau: Complex) -> PlPiece {
        Self::new(tri, alpha, Complex::new(0.0, 0.0), tau)
    }

    /// Anti-affine piece `zeta -> mu conj(zeta) + nu`.
    pub fn new_anti(tri: [Complex; 3], mu: Complex, nu: Complex) -> PlPiece {
        Self::new(tri, Complex::new(0.0, 0.0), mu, nu)
    }

    pub fn identity(tri: [Complex; 3]) -> PlPiece {
        Self::new_affine(tri, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
    }

    #[inline]
    pub fn tri(&self) -> &[Complex; 3] {
        &self.tri
    }

    #[inline]
    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> Complex {
        self.beta
    }

    #[inline]
    pub fn tau(&self) -> Complex {
        self.tau
    }

    #[inline]
    pub fn eval(&self, p: Complex) -> Complex {
        self.alpha * p + self.beta * p.conj() + self.tau
    }

    /// The real Jacobian of the piece.
    pub fn jacobian(&self) -> Mat2 {
        let (a, b) = (self.alpha, self.beta);
        Mat2([a.re + b.re, b.im - a.im, a.im + b.im, a.re - b.re])
    }

    /// Determinant of the Jacobian; negative for orientation-reversing
    /// pieces.
    #[inline]
    pub fn det(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Singular values `(sigma_max, sigma_min) = (|alpha| + |beta|,
    /// ||alpha| - |beta||)`.
    pub fn singular_values(&self) -> (f64, f64) {
        let (a, b) = (self.alpha.norm(), self.beta.norm());
        (a + b, (a - b).abs())
    }

    /// A unit direction along which the piece stretches by `sigma_max`.
    /// Conformal pieces stretch every direction equally.
    pub fn max_stretch_direction(&self) -> Complex {
        if self.beta.norm_sqr() == 0.0 {
            return Complex::new(1.0, 0.0);
        }
        let phi = 0.5 * (self.beta.arg() - self.alpha.arg());
        Complex::new(phi.cos(), phi.sin())
    }

    /// Solves `eval(x) = q`; requires the piece to be non-singular.
    pub fn invert_point(&self, q: Complex) -> Result<Complex> {
        let d = self.det();
        if d.abs() <= f64::EPSILON * self.alpha.norm_sqr().max(self.beta.norm_sqr()).max(1.0) {
            return Err(Error::SingularComposition);
        }
        let rhs = q - self.tau;
        Ok((self.alpha.conj() * rhs - self.beta * rhs.conj()) / d)
    }

    /// Coefficients of `self` after `inner`, i.e. the piece computing
    /// `self(inner(zeta))` (source bookkeeping is left to the caller).
    fn compose_coeffs(&self, inner: &PlPiece) -> (Complex, Complex, Complex) {
        let alpha = self.alpha * inner.alpha + self.beta * inner.beta.conj();
        let beta = self.alpha * inner.beta + self.beta * inner.alpha.conj();
        let tau = self.alpha * inner.tau + self.beta * inner.tau.conj() + self.tau;
        (alpha, beta, tau)
    }

    fn contains(&self, p: Complex, tol: f64) -> bool {
        poly::triangle_contains(&self.tri, p, tol)
    }

    fn source_area(&self) -> f64 {
        0.5 * signed_area2(self.tri[0], self.tri[1], self.tri[2]).abs()
    }
}

fn ccw(mut tri: [Complex; 3]) -> [Complex; 3] {
    if signed_area2(tri[0], tri[1], tri[2]) < 0.0 {
        tri.swap(1, 2);
    }
    tri
}

/// A piecewise-linear map: pieces with disjoint interiors tiling its domain,
/// continuous across shared edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PlMap {
    pieces: Vec<PlPiece>,
}

impl PlMap {
    pub fn new(pieces: Vec<PlPiece>) -> Result<PlMap> {
        if pieces.is_empty() {
            return Err(Error::EmptyMap);
        }
        Ok(PlMap { pieces })
    }

    pub fn single(piece: PlPiece) -> PlMap {
        PlMap {
            pieces: vec![piece],
        }
    }

    pub fn pieces(&self) -> &[PlPiece] {
        &self.pieces
    }

    /// The exact Lipschitz constant: the largest top singular value over
    /// the pieces.
    pub fn lipschitz_constant(&self) -> Result<f64> {
        if self.pieces.is_empty() {
            return Err(Error::EmptyMap);
        }
        Ok(self
            .pieces
            .iter()
            .map(|p| p.singular_values().0)
            .fold(0.0, f64::max))
    }

    /// Evaluates the map; the first piece containing the point (within a
    /// small barycentric slack) wins.
    pub fn eval(&self, p: Complex) -> Result<Complex> {
        for piece in &self.pieces {
            if piece.contains(p, 1e-9) {
                return Ok(piece.eval(p));
            }
        }
        Err(Error::OutsideDomain(p))
    }

    /// Composition `outer . self`, with sources refined so every resulting
    /// piece is affine. Requires the inner pieces to be invertible whenever
    /// the outer map has more than one piece, except for singular pieces
    /// whose segment image lies inside a single outer piece.
    pub fn then(&self, outer: &PlMap) -> Result<PlMap> {
        let mut pieces = Vec::new();
        for inner in &self.pieces {
            if outer.pieces.len() == 1 {
                let (alpha, beta, tau) = outer.pieces[0].compose_coeffs(inner);
                pieces.push(PlPiece::new(inner.tri, alpha, beta, tau));
                continue;
            }
            let d = inner.det();
            let scale = inner.alpha.norm_sqr().max(inner.beta.norm_sqr()).max(1.0);
            if d.abs() <= 1e-14 * scale {
                // Rank-deficient piece: its image is a segment. Compose it
                // with any outer piece containing that segment.
                let img: Vec<Complex> = inner.tri.iter().map(|&v| inner.eval(v)).collect();
                let host = outer
                    .pieces
                    .iter()
                    .find(|op| img.iter().all(|&q| op.contains(q, 1e-9)))
                    .ok_or(Error::SingularComposition)?;
                let (alpha, beta, tau) = host.compose_coeffs(inner);
                pieces.push(PlPiece::new(inner.tri, alpha, beta, tau));
                continue;
            }
            let min_area = 1e-12 * inner.source_area();
            for op in &outer.pieces {
                // Preimage of the outer source triangle under the inner piece.
                let pre = [
                    inner.invert_point(op.tri[0])?,
                    inner.invert_point(op.tri[1])?,
                    inner.invert_point(op.tri[2])?,
                ];
                let clip = ccw(pre);
                let region = poly::intersect_convex(&inner.tri, &clip);
                let (alpha, beta, tau) = op.compose_coeffs(inner);
                for tri in poly::triangulate(&region, min_area) {
                    pieces.push(PlPiece::new(tri, alpha, beta, tau));
                }
            }
        }
        PlMap::new(pieces)
    }

    /// Largest mismatch of the piece maps across shared source edges, each
    /// sampled at `samples` interior points.
    pub fn continuity_defect(&self, samples: usize) -> f64 {
        let mut worst = 0.0f64;
        let n = self.pieces.len();
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(shared_edge_mismatch(
                    &self.pieces[i],
                    &self.pieces[j],
                    samples,
                ));
            }
        }
        worst
    }

    /// Total area of the source pieces.
    pub fn domain_area(&self) -> f64 {
        self.pieces.iter().map(|p| p.source_area()).sum()
    }
}

/// Maximum image mismatch over the overlap of any pair of collinear edges.
fn shared_edge_mismatch(a: &PlPiece, b: &PlPiece, samples: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        let (p0, p1) = (a.tri[i], a.tri[(i + 1) % 3]);
        let d = p1 - p0;
        let len = d.norm();
        if len == 0.0 {
            continue;
        }
        for j in 0..3 {
            let (q0, q1) = (b.tri[j], b.tri[(j + 1) % 3]);
            // Collinearity of the two edges.
            let off0 = crate::geom::cross(d, q0 - p0).abs() / len;
            let off1 = crate::geom::cross(d, q1 - p0).abs() / len;
            if off0 > 1e-9 * len.max(1.0) || off1 > 1e-9 * len.max(1.0) {
                continue;
            }
            let t0 = crate::geom::dot(q0 - p0, d) / (len * len);
            let t1 = crate::geom::dot(q1 - p0, d) / (len * len);
            let lo = t0.min(t1).max(0.0);
            let hi = t0.max(t1).min(1.0);
            if hi - lo <= 1e-12 {
                continue;
            }
            for k in 0..samples {
                let t = lo + (hi - lo) * (k as f64 + 0.5) / samples as f64;
                let x = p0 + d * t;
                worst = worst.max((a.eval(x) - b.eval(x)).norm());
            }
        }
    }
    worst
}

/// Exact Lipschitz constant of a piecewise-affine map: the maximum over
/// pieces of the largest singular value of the linear part.
pub fn pl_lipschitz_constant(m: &PlMap) -> Result<f64> {
    m.lipschitz_constant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn unit_tri() -> [Complex; 3] {
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]
    }

    #[test]
    fn identity_has_constant_one() {
        let m = PlMap::single(PlPiece::identity(unit_tri()));
        assert_eq!(m.lipschitz_constant().unwrap(), 1.0);
    }

    #[test]
    fn anti_affine_jacobian_and_singular_values() {
        // zeta -> 2 conj(zeta): singular values both 2, det < 0.
        let p = PlPiece::new_anti(unit_tri(), c(2.0, 0.0), c(0.0, 0.0));
        let (smax, smin) = p.singular_values();
        assert_eq!((smax, smin), (2.0, 2.0));
        assert!(p.det() < 0.0);
        let j = p.jacobian();
        assert!((j.apply(c(0.3, 0.4)) - c(0.6, -0.8)).norm() < 1e-15);
    }

    #[test]
    fn composition_against_single_piece() {
        let inner = PlMap::single(PlPiece::new_affine(unit_tri(), c(0.0, 2.0), c(1.0, 0.0)));
        let outer = PlMap::single(PlPiece::new_anti(unit_tri(), c(1.0, 0.0), c(0.0, -1.0)));
        let m = inner.then(&outer).unwrap();
        let p = c(0.2, 0.3);
        let want = (c(0.0, 2.0) * p + c(1.0, 0.0)).conj() + c(0.0, -1.0);
        assert!((m.pieces()[0].eval(p) - want).norm() < 1e-15);
    }

    #[test]
    fn composition_splits_sources() {
        // Inner: identity on the unit square's lower-left triangle.
        // Outer: two pieces split at x = 0.25 with matching boundary maps.
        let inner = PlMap::single(PlPiece::identity(unit_tri()));
        let left = PlPiece::new_affine(
            [c(0.0, 0.0), c(0.25, 0.0), c(0.0, 1.0)],
            c(2.0, 0.0),
            c(0.0, 0.0),
        );
        let right = PlPiece::new(
            [c(0.25, 0.0), c(1.0, 0.0), c(0.0, 1.0)],
            c(1.5, 0.0),
            c(0.5, 0.0),
            c(0.0, 0.0),
        );
        // Continuity on the dividing line Re = 0.25: 2x vs 1.5x + 0.5 conj(x).
        let outer = PlMap::new(vec![left, right]).unwrap();
        let m = inner.then(&outer).unwrap();
        assert!((m.domain_area() - 0.5).abs() < 1e-12);
        assert!(m.continuity_defect(16) < 1e-12);
        assert!((m.eval(c(0.1, 0.2)).unwrap() - c(0.2, 0.4)).norm() < 1e-12);
    }

    #[test]
    fn eval_outside_domain_errors() {
        let m = PlMap::single(PlPiece::identity(unit_tri()));
        assert!(matches!(
            m.eval(c(2.0, 2.0)),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn empty_map_rejected() {
        assert!(matches!(PlMap::new(vec![]), Err(Error::EmptyMap)));
    }
}
