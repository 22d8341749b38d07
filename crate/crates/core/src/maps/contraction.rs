//! Contractions folding a triangle onto a backward-pencil target, and the
//! extremal maps they compose to.
//!
//! The `b`-contraction on the triangle with vertices `(z0, 0, 1)` is the
//! identity on the half cut off by the perpendicular from the `b`-vertex
//! `0` to the `ac`-side, with foot `zeta0 = i Im(z0) / (1 - conj z0)`; on
//! the half containing the `a`-vertex it is
//!
//! ```text
//! zeta -> ((1 + k) / 2) zeta + ((1 - k) / 2) (zeta0 / conj zeta0) conj(zeta),
//! ```
//!
//! which fixes the line through `0` and `zeta0` and scales the transverse
//! direction by `k = |zeta1 - zeta0| / |z0 - zeta0|`, where `zeta1` is the
//! point where the ray from `0` through `z1` meets the `ac`-side. It moves
//! the `a`-vertex to `zeta1`. The `c`-contraction is its mirror image in
//! the vertical line through `1/2`. Following one with the other lands on
//! the target triangle; scaling to unit area gives the extremal map, with
//! Lipschitz constant `sqrt(Im z0 / Im z1)`.

use crate::error::Error;
use crate::geom::Complex;
use crate::moduli::{
    backward_pencil_membership, classify_pair, congruence_map, LabelPermutation, PairKind,
};
use crate::triangle::{ShapePoint, Vertex};
use crate::Result;

use super::{PlMap, PlPiece};

/// Foot of the perpendicular from the `b`-vertex `0` of the triangle
/// `(z0, 0, 1)` to its `ac`-side.
fn perpendicular_foot_b(z0: Complex) -> Complex {
    Complex::new(0.0, z0.im) / (1.0 - z0.conj())
}

/// Intersection of the ray from `0` through `z1` with the `ac`-side of the
/// triangle `(z0, 0, 1)`.
fn ray_side_intersection(z0: Complex, z1: Complex) -> Complex {
    z1 * (z0.im / (z1 * (1.0 - z0.conj())).im)
}

/// Reflection in the vertical line through `1/2`, as a single-piece map on
/// the triangle `(z0, 0, 1)`.
fn mirror_piece(z0: Complex) -> PlMap {
    let tri = [z0, Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)];
    PlMap::single(PlPiece::new_anti(
        tri,
        Complex::new(-1.0, 0.0),
        Complex::new(1.0, 0.0),
    ))
}

/// The `b`-contraction on the triangle `(z0, 0, 1)`, without membership
/// validation; returns the map and the image `zeta1` of the `a`-vertex.
fn contraction_b_raw(z0: Complex, z1: Complex) -> (PlMap, Complex) {
    let zeta0 = perpendicular_foot_b(z0);
    let zeta1 = ray_side_intersection(z0, z1);
    let k = ((zeta1 - zeta0).norm() / (z0 - zeta0).norm()).min(1.0);
    let origin = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let fixed = PlPiece::identity([origin, one, zeta0]);
    let moving = PlPiece::new(
        [origin, zeta0, z0],
        Complex::new(0.5 * (1.0 + k), 0.0),
        zeta0 / zeta0.conj() * (0.5 * (1.0 - k)),
        origin,
    );
    (
        PlMap::new(vec![fixed, moving]).expect("two pieces"),
        zeta1,
    )
}

/// The `c`-contraction: the mirror conjugate of the `b`-contraction.
fn contraction_c_raw(z0: Complex, z1: Complex) -> Result<(PlMap, Complex)> {
    let rz0 = 1.0 - z0.conj();
    let rz1 = 1.0 - z1.conj();
    let (core, zeta1_m) = contraction_b_raw(rz0, rz1);
    let m = mirror_piece(z0).then(&core)?.then(&mirror_piece(zeta1_m))?;
    Ok((m, 1.0 - zeta1_m.conj()))
}

fn require_backward(z0: ShapePoint, z1: ShapePoint) -> Result<()> {
    if !backward_pencil_membership(z0, z1, Vertex::A)? {
        return Err(Error::NotInBackwardPencil {
            z: z0.get(),
            w: z1.get(),
        });
    }
    Ok(())
}

fn require_fold_vertex(x: Vertex) -> Result<()> {
    if x == Vertex::A {
        return Err(Error::InvalidInput(
            "contractions fold at the b- or c-vertex".into(),
        ));
    }
    Ok(())
}

/// The contraction associated with the `x`-vertex (`x` in `{b, c}`) on the
/// triangle `(z0, 0, 1)`, for a target `z1` in the `a`-backward pencil.
pub fn contraction_c_map(z0: ShapePoint, z1: ShapePoint, x: Vertex) -> Result<PlMap> {
    require_fold_vertex(x)?;
    require_backward(z0, z1)?;
    match x {
        Vertex::B => Ok(contraction_b_raw(z0.get(), z1.get()).0),
        Vertex::C => Ok(contraction_c_raw(z0.get(), z1.get())?.0),
        Vertex::A => unreachable!(),
    }
}

/// Intermediate geometry of the `x`-contraction: `(zeta0, zeta1, k)`.
pub fn contraction_data(z0: ShapePoint, z1: ShapePoint, x: Vertex) -> Result<(Complex, Complex, f64)> {
    require_fold_vertex(x)?;
    require_backward(z0, z1)?;
    let (z0, z1) = (z0.get(), z1.get());
    let (zeta0, zeta1) = match x {
        Vertex::B => (perpendicular_foot_b(z0), ray_side_intersection(z0, z1)),
        Vertex::C => {
            let rz0 = 1.0 - z0.conj();
            let rz1 = 1.0 - z1.conj();
            (
                1.0 - perpendicular_foot_b(rz0).conj(),
                1.0 - ray_side_intersection(rz0, rz1).conj(),
            )
        }
        Vertex::A => unreachable!(),
    };
    let k = ((zeta1 - zeta0).norm() / (z0 - zeta0).norm()).min(1.0);
    Ok((zeta0, zeta1, k))
}

/// The 1-Lipschitz two-fold contraction `G^x` from the triangle `(z0, 0, 1)`
/// onto `(z1, 0, 1)`.
pub fn contraction_g(z0: ShapePoint, z1: ShapePoint, x: Vertex) -> Result<PlMap> {
    require_fold_vertex(x)?;
    require_backward(z0, z1)?;
    contraction_g_raw(z0.get(), z1.get(), x)
}

fn contraction_g_raw(z0: Complex, z1: Complex, x: Vertex) -> Result<PlMap> {
    match x {
        Vertex::B => {
            let (first, zeta1) = contraction_b_raw(z0, z1);
            let (second, _) = contraction_c_raw(zeta1, z1)?;
            first.then(&second)
        }
        Vertex::C => {
            let (first, zeta1) = contraction_c_raw(z0, z1)?;
            let (second, _) = contraction_b_raw(zeta1, z1);
            first.then(&second)
        }
        Vertex::A => unreachable!(),
    }
}

/// The extremal map for a backward-pencil pair, from the normalised
/// triangle of `z0` onto the normalised triangle of `z1`: the contraction
/// `G^x` bracketed by the unit-area scalings. Its Lipschitz constant is
/// `sqrt(Im z0 / Im z1)`.
pub fn backward_extremal_map(z0: ShapePoint, z1: ShapePoint, x: Vertex) -> Result<PlMap> {
    require_fold_vertex(x)?;
    require_backward(z0, z1)?;
    let pre = PlMap::single(PlPiece::new_affine(
        z0.normalized_triangle().vertices(),
        Complex::new((z0.im() / 2.0).sqrt(), 0.0),
        Complex::new(0.0, 0.0),
    ));
    let core = contraction_g_raw(z0.get(), z1.get(), x)?;
    let post = PlMap::single(PlPiece::new_affine(
        z1.tilde_triangle().vertices(),
        Complex::new((2.0 / z1.im()).sqrt(), 0.0),
        Complex::new(0.0, 0.0),
    ));
    pre.then(&core)?.then(&post)
}

/// The extremal map between two classified shapes: a stretch map for a
/// pencil pair, a contraction composite for a backward pair (folding first
/// at the `b`-vertex of the conjugated picture).
pub fn extremal_map(z: ShapePoint, w: ShapePoint) -> Result<PlMap> {
    let class = classify_pair(z, w)?;
    match class.kind {
        PairKind::Pencil => {
            let (k1, k2) = class.witness.expect("pencil class carries a witness");
            super::stretch_map(z, class.vertex, k1, k2)
        }
        PairKind::BackwardPencil => {
            if class.vertex == Vertex::A {
                return backward_extremal_map(z, w, Vertex::B);
            }
            let sigma = LabelPermutation::conjugator_to_a(class.vertex);
            let zc = sigma.apply(z);
            let wc = sigma.apply(w);
            let inner = congruence_map(z, &sigma)?;
            let core = backward_extremal_map(zc, wc, Vertex::B)?;
            let outer = congruence_map(wc, &sigma)?;
            inner.then(&core)?.then(&outer)
        }
    }
}
