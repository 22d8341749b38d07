//! The half-plane model of the moduli space: the label action of the
//! symmetric group, pencil and backward-pencil membership, tangent sectors,
//! and hypercycle utilities.
//!
//! Relabelling by the symmetric group on `{a, b, c}` acts on the half-plane
//! through the maps generated by
//!
//! ```text
//! omega_ab(z) = conj(z) / (conj(z) - 1),   omega_ac(z) = 1 / conj(z),
//! ```
//!
//! with `omega_bc(z) = 1 - conj(z)`. The `b`- and `c`-vertex cases of every
//! operation below are implemented by conjugation with `omega_ab` and
//! `omega_ac`; no separate formulas exist in code.

use crate::error::Error;
use crate::geom::{cross, Complex};
use crate::maps::{PlMap, PlPiece};
use crate::triangle::{ShapePoint, Vertex};
use crate::Result;

/// Slack used by region-membership predicates. The closed forms are
/// continuous across the region boundaries, so widening the windows by this
/// amount never changes a reported distance by more than the same order.
pub const MEMBERSHIP_EPS: f64 = 1e-9;

/// A permutation of the labels `{a, b, c}`, stored as the image triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelPermutation {
    images: [Vertex; 3],
}

impl LabelPermutation {
    pub const IDENTITY: LabelPermutation = LabelPermutation {
        images: [Vertex::A, Vertex::B, Vertex::C],
    };

    /// The transposition swapping `u` and `v`.
    pub fn transposition(u: Vertex, v: Vertex) -> Result<LabelPermutation> {
        if u == v {
            return Err(Error::NotTransposition(format!("{u}{v}")));
        }
        let mut images = [Vertex::A, Vertex::B, Vertex::C];
        images.swap(u.index(), v.index());
        Ok(LabelPermutation { images })
    }

    /// Parses one of `"id"`, `"ab"`, `"ac"`, `"bc"`, `"abc"`, `"acb"`.
    pub fn from_name(name: &str) -> Result<LabelPermutation> {
        let images = match name {
            "id" => [Vertex::A, Vertex::B, Vertex::C],
            "ab" => [Vertex::B, Vertex::A, Vertex::C],
            "ac" => [Vertex::C, Vertex::B, Vertex::A],
            "bc" => [Vertex::A, Vertex::C, Vertex::B],
            // a -> b -> c -> a
            "abc" => [Vertex::B, Vertex::C, Vertex::A],
            // a -> c -> b -> a
            "acb" => [Vertex::C, Vertex::A, Vertex::B],
            _ => return Err(Error::InvalidInput(format!("unknown permutation {name:?}"))),
        };
        Ok(LabelPermutation { images })
    }

    pub fn name(&self) -> &'static str {
        match self.images {
            [Vertex::A, Vertex::B, Vertex::C] => "id",
            [Vertex::B, Vertex::A, Vertex::C] => "ab",
            [Vertex::C, Vertex::B, Vertex::A] => "ac",
            [Vertex::A, Vertex::C, Vertex::B] => "bc",
            [Vertex::B, Vertex::C, Vertex::A] => "abc",
            [Vertex::C, Vertex::A, Vertex::B] => "acb",
            _ => unreachable!("images always form a permutation"),
        }
    }

    pub const ALL_NAMES: [&'static str; 6] = ["id", "ab", "ac", "bc", "abc", "acb"];

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        self.images[v.index()]
    }

    /// Composition `self * rhs`, acting as `self(rhs(v))`.
    pub fn compose(&self, rhs: &LabelPermutation) -> LabelPermutation {
        let mut images = [Vertex::A; 3];
        for v in Vertex::ALL {
            images[v.index()] = self.apply_vertex(rhs.apply_vertex(v));
        }
        LabelPermutation { images }
    }

    pub fn inverse(&self) -> LabelPermutation {
        let mut images = [Vertex::A; 3];
        for v in Vertex::ALL {
            images[self.images[v.index()].index()] = v;
        }
        LabelPermutation { images }
    }

    pub fn is_transposition(&self) -> bool {
        matches!(self.name(), "ab" | "ac" | "bc")
    }

    /// The half-plane action realising this relabelling. Odd permutations
    /// act anti-holomorphically, even ones holomorphically; the assignment
    /// satisfies `apply(compose(s, t), z) = apply(s, apply(t, z))`.
    pub fn apply(&self, z: ShapePoint) -> ShapePoint {
        let z = z.get();
        let w = match self.name() {
            "id" => z,
            "ab" => z.conj() / (z.conj() - 1.0),
            "ac" => 1.0 / z.conj(),
            "bc" => 1.0 - z.conj(),
            "abc" => (z - 1.0) / z,
            "acb" => 1.0 / (1.0 - z),
            _ => unreachable!(),
        };
        ShapePoint::new(w).expect("the label action preserves the upper half-plane")
    }

    /// The transposition carrying `v` to `a` (the identity when `v = a`).
    pub fn conjugator_to_a(v: Vertex) -> LabelPermutation {
        match v {
            Vertex::A => LabelPermutation::IDENTITY,
            Vertex::B => LabelPermutation::from_name("ab").unwrap(),
            Vertex::C => LabelPermutation::from_name("ac").unwrap(),
        }
    }
}

impl std::fmt::Display for LabelPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The planar congruence realising a transposition on normalised triangles.
///
/// The returned single-piece map is an orientation-reversing isometry
/// carrying the normalised triangle of `z` onto the normalised triangle of
/// `sigma(z)`, sending the vertex labelled `v` to the vertex labelled
/// `sigma(v)`.
pub fn congruence_map(z: ShapePoint, sigma: &LabelPermutation) -> Result<PlMap> {
    if !sigma.is_transposition() {
        return Err(Error::NotTransposition(sigma.name().to_string()));
    }
    let source = z.normalized_triangle();
    let target = sigma.apply(z).normalized_triangle();
    // Anti-affine isometry zeta -> mu conj(zeta) + nu fixed by the images of
    // the b- and c-vertices; v_b = 0 pins nu directly.
    let qb = target.vertex(sigma.apply_vertex(Vertex::B));
    let qc = target.vertex(sigma.apply_vertex(Vertex::C));
    let nu = qb;
    let mu = (qc - nu) / source.vc().conj();
    let piece = PlPiece::new_anti(source.vertices(), mu, nu);
    debug_assert!(
        (piece.eval(source.va()) - target.vertex(sigma.apply_vertex(Vertex::A))).norm() < 1e-9,
        "congruence must map the a-vertex consistently"
    );
    Ok(PlMap::single(piece))
}

/// Classification of an ordered pair of shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairClass {
    pub vertex: Vertex,
    pub kind: PairKind,
    /// Stretch parameters `(k1, k2)` of the conjugated `a`-vertex pencil;
    /// present exactly when `kind` is `Pencil`.
    pub witness: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Pencil,
    BackwardPencil,
}

/// Pencil witness in the `a`-vertex case, without domain validation.
fn pencil_witness_a(z: Complex, w: Complex) -> Option<(f64, f64)> {
    let k1 = w.re * z.im / (z.re * w.im);
    let k2 = (1.0 - w.re) * z.im / ((1.0 - z.re) * w.im);
    let ok = |k: f64| (-MEMBERSHIP_EPS..=1.0 + MEMBERSHIP_EPS).contains(&k);
    if ok(k1) && ok(k2) {
        Some((k1.clamp(0.0, 1.0), k2.clamp(0.0, 1.0)))
    } else {
        None
    }
}

/// Backward-pencil predicate in the `a`-vertex case: `w` in the closed
/// acute region with `arg(w) <= arg(z)` and `arg(w - 1) >= arg(z - 1)`.
fn backward_a(z: Complex, w: Complex) -> bool {
    if !ShapePoint::new(w).map_or(false, |s| s.is_closed_acute(MEMBERSHIP_EPS)) {
        return false;
    }
    let one = Complex::new(1.0, 0.0);
    cross(z, w) <= MEMBERSHIP_EPS * z.norm() * w.norm()
        && cross(z - one, w - one) >= -MEMBERSHIP_EPS * (z - one).norm() * (w - one).norm()
}

/// Membership of `w` in the `v`-pencil of `z`, reported through the stretch
/// parameters `(k1, k2)` of the conjugated `a`-case.
///
/// Requires `z` acute, right at `v`, or obtuse at `v`.
pub fn pencil_membership(
    z: ShapePoint,
    w: ShapePoint,
    v: Vertex,
) -> Result<Option<(f64, f64)>> {
    if !in_vertex_domain_snapped(z, v) {
        return Err(Error::OutsideVertexDomain {
            z: z.get(),
            vertex: v.letter(),
        });
    }
    let sigma = LabelPermutation::conjugator_to_a(v);
    let zc = sigma.apply(z);
    let wc = sigma.apply(w);
    Ok(pencil_witness_a(zc.get(), wc.get()))
}

fn in_vertex_domain_snapped(z: ShapePoint, v: Vertex) -> bool {
    match z.classify_snapped(MEMBERSHIP_EPS) {
        crate::triangle::RegionTag::Acute => true,
        crate::triangle::RegionTag::RightAt(u) | crate::triangle::RegionTag::ObtuseAt(u) => u == v,
    }
}

/// Membership of `w` in the `v`-backward pencil of `z`. Requires `z` acute.
pub fn backward_pencil_membership(z: ShapePoint, w: ShapePoint, v: Vertex) -> Result<bool> {
    if !z.is_acute() {
        return Err(Error::NotAcute(z.get()));
    }
    let sigma = LabelPermutation::conjugator_to_a(v);
    Ok(backward_a(sigma.apply(z).get(), sigma.apply(w).get()))
}

/// Classifies the ordered pair `(z, w)`: which vertex's pencil or backward
/// pencil contains `w`.
///
/// Requires `z` acute and `w` in the closed acute region. Scans in the
/// fixed order `a`-pencil, `a`-backward, `b`-pencil, `b`-backward,
/// `c`-pencil, `c`-backward; the closed forms agree wherever two classes
/// overlap, so the tie-break is observationally irrelevant.
pub fn classify_pair(z: ShapePoint, w: ShapePoint) -> Result<PairClass> {
    if !z.is_acute() {
        return Err(Error::NotAcute(z.get()));
    }
    if !w.is_closed_acute(MEMBERSHIP_EPS) {
        return Err(Error::NotClosedAcute(w.get()));
    }
    for v in Vertex::ALL {
        let sigma = LabelPermutation::conjugator_to_a(v);
        let zc = sigma.apply(z).get();
        let wc = sigma.apply(w).get();
        if let Some(witness) = pencil_witness_a(zc, wc) {
            return Ok(PairClass {
                vertex: v,
                kind: PairKind::Pencil,
                witness: Some(witness),
            });
        }
        if backward_a(zc, wc) {
            return Ok(PairClass {
                vertex: v,
                kind: PairKind::BackwardPencil,
                witness: None,
            });
        }
    }
    Err(Error::NoClassification {
        z: z.get(),
        w: w.get(),
    })
}

/// One of the six sectors of the tangent plane at an acute shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorTag {
    pub vertex: Vertex,
    pub backward: bool,
}

impl SectorTag {
    pub const fn pencil(vertex: Vertex) -> SectorTag {
        SectorTag {
            vertex,
            backward: false,
        }
    }

    pub const fn backward(vertex: Vertex) -> SectorTag {
        SectorTag {
            vertex,
            backward: true,
        }
    }

    /// The antipodal sector.
    pub fn opposite(self) -> SectorTag {
        SectorTag {
            vertex: self.vertex,
            backward: !self.backward,
        }
    }
}

impl std::fmt::Display for SectorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "S_{}{}",
            self.vertex,
            if self.backward { "^B" } else { "" }
        )
    }
}

/// Sector of the tangent vector `u` at the acute shape `z0`.
///
/// With `theta1 = arg z0` and `theta2 = arg(z0 - 1)`, the six sectors in
/// circular order starting at `theta1` are `S_a`, `S_b^B`, `S_c`, `S_a^B`,
/// `S_b`, `S_c^B`, separated by the rays at `theta1`, `theta2`,
/// `theta1 + theta2` and their antipodes. A separating ray belongs to the
/// sector that comes first in that circular list.
pub fn sector_of(z0: ShapePoint, u: Complex) -> Result<SectorTag> {
    if !z0.is_acute() {
        return Err(Error::NotAcute(z0.get()));
    }
    if u.norm_sqr() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let tau = std::f64::consts::TAU;
    let pi = std::f64::consts::PI;
    let theta1 = z0.get().arg();
    let theta2 = (z0.get() - 1.0).arg();
    let mut phi = u.arg();
    while phi < theta1 {
        phi += tau;
    }
    while phi >= theta1 + tau {
        phi -= tau;
    }
    // Each separating ray belongs to the sector listed first in the cyclic
    // list S_a, S_b^B, S_c, S_a^B, S_b, S_c^B starting at theta1.
    Ok(if phi <= theta2 {
        SectorTag::pencil(Vertex::A)
    } else if phi <= theta1 + theta2 {
        SectorTag::backward(Vertex::B)
    } else if phi <= theta1 + pi {
        SectorTag::pencil(Vertex::C)
    } else if phi <= theta2 + pi {
        SectorTag::backward(Vertex::A)
    } else if phi <= theta1 + theta2 + pi {
        SectorTag::pencil(Vertex::B)
    } else {
        SectorTag::backward(Vertex::C)
    })
}

/// Hyperbolic distance from the ray `arg = theta` to the imaginary axis:
/// `-log tan(theta / 2)` for `theta` in `(0, pi/2]`.
pub fn hypercycle_distance(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::ParameterOutOfRange {
            name: "theta",
            value: theta,
            expected: "in (0, pi/2]",
        });
    }
    Ok(-((theta * 0.5).tan().ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(re: f64, im: f64) -> ShapePoint {
        ShapePoint::from_parts(re, im).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn action_examples() {
        let z = shape(0.5, 1.0);
        let ab = LabelPermutation::from_name("ab").unwrap();
        let ac = LabelPermutation::from_name("ac").unwrap();
        let bc = LabelPermutation::from_name("bc").unwrap();
        assert!((ab.apply(z).get() - c(0.6, 0.8)).norm() < 1e-15);
        assert!((ac.apply(z).get() - c(0.4, 0.8)).norm() < 1e-15);
        // Isoceles shapes are fixed by the b-c swap.
        assert!((bc.apply(z).get() - c(0.5, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn action_respects_composition() {
        let z = shape(0.37, 1.21);
        for s in LabelPermutation::ALL_NAMES {
            for t in LabelPermutation::ALL_NAMES {
                let s = LabelPermutation::from_name(s).unwrap();
                let t = LabelPermutation::from_name(t).unwrap();
                let lhs = s.compose(&t).apply(z).get();
                let rhs = s.apply(t.apply(z)).get();
                assert!(
                    (lhs - rhs).norm() < 1e-12,
                    "composition mismatch for {s} after {t}"
                );
            }
        }
    }

    #[test]
    fn action_moves_obtuse_tags_with_labels() {
        // z obtuse at b must map to a shape obtuse at sigma(b).
        let z = shape(-0.2, 0.1);
        for name in LabelPermutation::ALL_NAMES {
            let s = LabelPermutation::from_name(name).unwrap();
            let img = s.apply(z);
            assert_eq!(
                img.classify(),
                crate::triangle::RegionTag::ObtuseAt(s.apply_vertex(Vertex::B)),
                "wrong region for {name}"
            );
        }
    }

    #[test]
    fn congruence_r_ac_example() {
        let z = shape(0.5, 1.0);
        let ac = LabelPermutation::from_name("ac").unwrap();
        let m = congruence_map(z, &ac).unwrap();
        assert!((m.lipschitz_constant().unwrap() - 1.0).abs() < 1e-12);
        let src = z.normalized_triangle();
        let dst = ac.apply(z).normalized_triangle();
        assert!((ac.apply(z).get() - c(0.4, 0.8)).norm() < 1e-15);
        // a -> c, b -> b, c -> a.
        assert!((m.pieces()[0].eval(src.va()) - dst.vc()).norm() < 1e-12);
        assert!((m.pieces()[0].eval(src.vb()) - dst.vb()).norm() < 1e-12);
        assert!((m.pieces()[0].eval(src.vc()) - dst.va()).norm() < 1e-12);
    }

    #[test]
    fn congruence_involution_returns_vertices() {
        let z = shape(0.31, 0.87);
        for name in ["ab", "ac", "bc"] {
            let s = LabelPermutation::from_name(name).unwrap();
            let fwd = congruence_map(z, &s).unwrap();
            let back = congruence_map(s.apply(z), &s).unwrap();
            let src = z.normalized_triangle();
            for p in src.vertices() {
                let q = back.pieces()[0].eval(fwd.pieces()[0].eval(p));
                assert!((q - p).norm() < 1e-12, "{name} congruence not involutive");
            }
        }
    }

    #[test]
    fn congruence_r_bc_fixes_isoceles() {
        // For an isoceles shape the b-c congruence maps the triangle onto
        // itself, fixing the apex.
        let z = shape(0.5, 1.0);
        let bc = LabelPermutation::from_name("bc").unwrap();
        let m = congruence_map(z, &bc).unwrap();
        let src = z.normalized_triangle();
        assert!((m.pieces()[0].eval(src.va()) - src.va()).norm() < 1e-12);
        assert!((m.pieces()[0].eval(src.vb()) - src.vc()).norm() < 1e-12);
    }

    #[test]
    fn congruence_rejects_non_transpositions() {
        let z = shape(0.5, 1.0);
        for name in ["id", "abc", "acb"] {
            let s = LabelPermutation::from_name(name).unwrap();
            assert!(matches!(
                congruence_map(z, &s),
                Err(Error::NotTransposition(_))
            ));
        }
    }

    #[test]
    fn pencil_membership_examples() {
        let z = shape(0.5, 1.0);
        let w = shape(0.5, 2.0);
        let (k1, k2) = pencil_membership(z, w, Vertex::A).unwrap().unwrap();
        assert!((k1 - 0.5).abs() < 1e-12 && (k2 - 0.5).abs() < 1e-12);

        let w = ShapePoint::from_parts(29.0 / 34.0, 10.0 / 17.0).unwrap();
        let (k1, k2) = pencil_membership(z, w, Vertex::B).unwrap().unwrap();
        assert!((k1 - 0.5).abs() < 1e-12 && (k2 - 0.5).abs() < 1e-12);

        // k1 = k2 = 10/9 > 1: not in the a-pencil.
        assert!(pencil_membership(z, shape(0.5, 0.9), Vertex::A)
            .unwrap()
            .is_none());
    }

    #[test]
    fn pencil_membership_validates_domain() {
        // z obtuse at b is outside the a-domain.
        assert!(matches!(
            pencil_membership(shape(-0.2, 0.5), shape(0.5, 1.0), Vertex::A),
            Err(Error::OutsideVertexDomain { .. })
        ));
    }

    #[test]
    fn backward_membership_examples() {
        let z = shape(0.5, 1.0);
        assert!(backward_pencil_membership(z, shape(0.5, 0.9), Vertex::A).unwrap());
        assert!(!backward_pencil_membership(z, shape(0.5, 2.0), Vertex::A).unwrap());
        for v in Vertex::ALL {
            assert!(backward_pencil_membership(z, z, v).unwrap());
        }
    }

    #[test]
    fn classify_pair_examples() {
        let z = shape(0.5, 1.0);
        let cls = classify_pair(z, shape(0.5, 2.0)).unwrap();
        assert_eq!(cls.vertex, Vertex::A);
        assert_eq!(cls.kind, PairKind::Pencil);
        let (k1, k2) = cls.witness.unwrap();
        assert!((k1 - 0.5).abs() < 1e-12 && (k2 - 0.5).abs() < 1e-12);

        let w = ShapePoint::from_parts(29.0 / 34.0, 10.0 / 17.0).unwrap();
        let cls = classify_pair(z, w).unwrap();
        assert_eq!(cls.vertex, Vertex::B);
        assert_eq!(cls.kind, PairKind::Pencil);

        let cls = classify_pair(z, shape(0.5, 0.9)).unwrap();
        assert_eq!(cls.vertex, Vertex::A);
        assert_eq!(cls.kind, PairKind::BackwardPencil);
    }

    #[test]
    fn sector_examples() {
        let z0 = shape(0.5, 1.0);
        assert_eq!(
            sector_of(z0, c(0.0, 1.0)).unwrap(),
            SectorTag::pencil(Vertex::A)
        );
        assert_eq!(
            sector_of(z0, c(0.0, -1.0)).unwrap(),
            SectorTag::backward(Vertex::A)
        );
        assert_eq!(
            sector_of(z0, c(0.9, -0.1)).unwrap(),
            SectorTag::pencil(Vertex::B)
        );
        assert!(matches!(
            sector_of(z0, c(0.0, 0.0)),
            Err(Error::ZeroTangent)
        ));
    }

    #[test]
    fn sector_boundary_rays_are_deterministic() {
        let z0 = shape(0.5, 1.0);
        // arg u = theta1: S_c^B / S_a boundary resolves to S_a.
        assert_eq!(
            sector_of(z0, z0.get()).unwrap(),
            SectorTag::pencil(Vertex::A)
        );
        // arg u = theta2: S_a / S_b^B boundary resolves to S_a.
        assert_eq!(
            sector_of(z0, z0.get() - 1.0).unwrap(),
            SectorTag::pencil(Vertex::A)
        );
        // arg u = theta1 + theta2 - pi: S_b / S_c^B boundary resolves to S_b.
        assert_eq!(
            sector_of(z0, c(2.5, 0.0)).unwrap(),
            SectorTag::pencil(Vertex::B)
        );
    }

    #[test]
    fn hypercycle_examples() {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};
        assert!(hypercycle_distance(FRAC_PI_2).unwrap().abs() < 1e-15);
        assert!((hypercycle_distance(FRAC_PI_3).unwrap() - 0.549306).abs() < 1e-6);
        assert!((hypercycle_distance(FRAC_PI_4).unwrap() - 0.881374).abs() < 1e-6);
        assert!(hypercycle_distance(0.0).is_err());
        assert!(hypercycle_distance(2.0).is_err());
    }
}
