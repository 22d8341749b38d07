//! Stretch maps for pencils and their stretching loci.
//!
//! The stretch map at the `a`-vertex splits the normalised triangle along
//! the altitude from `a` and applies, with `s = sqrt(k1 x0 + k2 (1 - x0))`,
//!
//! ```text
//! (xi, eta) -> ((k1 xi) / s, eta / s)                       left of the foot,
//! (xi, eta) -> ((k2 xi + (k1 - k2) xi0) / s, eta / s)       right of the foot,
//! ```
//!
//! sending the shape `z0 = x0 + i y0` to `(k1 x0 + i y0) / (k1 x0 + k2 (1 - x0))`
//! with Lipschitz constant `1 / s`, attained along the vertical foliation.
//! The `b`- and `c`-vertex maps are obtained by conjugating with the label
//! congruences.

use crate::error::Error;
use crate::geom::{poly, Complex};
use crate::moduli::{congruence_map, LabelPermutation};
use crate::triangle::{ShapePoint, Vertex};
use crate::Result;

use super::{PlMap, PlPiece};

fn validate_ks(k1: f64, k2: f64) -> Result<()> {
    let in_range = |k: f64| (0.0..=1.0).contains(&k);
    if !in_range(k1) || !in_range(k2) || (k1 == 0.0 && k2 == 0.0) {
        return Err(Error::InvalidStretchParameters(k1, k2));
    }
    Ok(())
}

fn validate_vertex_domain(z0: ShapePoint, v: Vertex) -> Result<()> {
    let ok = match z0.classify_snapped(crate::moduli::MEMBERSHIP_EPS) {
        crate::triangle::RegionTag::Acute => true,
        crate::triangle::RegionTag::RightAt(u) | crate::triangle::RegionTag::ObtuseAt(u) => u == v,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideVertexDomain {
            z: z0.get(),
            vertex: v.letter(),
        })
    }
}

/// The shape reached from `z0` by the stretch map at vertex `v` with
/// parameters `(k1, k2)`.
pub fn stretch_target(z0: ShapePoint, v: Vertex, k1: f64, k2: f64) -> Result<ShapePoint> {
    validate_ks(k1, k2)?;
    validate_vertex_domain(z0, v)?;
    let sigma = LabelPermutation::conjugator_to_a(v);
    let zc = sigma.apply(z0).get();
    let denom = k1 * zc.re + k2 * (1.0 - zc.re);
    let target = Complex::new(k1 * zc.re, zc.im) / denom;
    Ok(sigma.apply(ShapePoint::new(target)?))
}

/// The two-piece stretch map at vertex `v`, from the normalised triangle of
/// `z0` onto the normalised triangle of [`stretch_target`].
pub fn stretch_map(z0: ShapePoint, v: Vertex, k1: f64, k2: f64) -> Result<PlMap> {
    validate_ks(k1, k2)?;
    validate_vertex_domain(z0, v)?;
    if v == Vertex::A {
        return Ok(stretch_map_a(z0, k1, k2));
    }
    let sigma = LabelPermutation::conjugator_to_a(v);
    let zc = sigma.apply(z0);
    let inner = congruence_map(z0, &sigma)?;
    let core = stretch_map_a(zc, k1, k2);
    let wc = stretch_target(zc, Vertex::A, k1, k2)?;
    let outer = congruence_map(wc, &sigma)?;
    inner.then(&core)?.then(&outer)
}

fn stretch_map_a(z0: ShapePoint, k1: f64, k2: f64) -> PlMap {
    let (x0, y0) = (z0.re(), z0.im());
    let s = (k1 * x0 + k2 * (1.0 - x0)).sqrt();
    let t = z0.normalized_triangle();
    let apex = t.va();
    let foot = Complex::new(apex.re, 0.0);
    let re = |x: f64| Complex::new(x, 0.0);
    let left = PlPiece::new(
        [t.vb(), foot, apex],
        re((k1 + 1.0) / (2.0 * s)),
        re((k1 - 1.0) / (2.0 * s)),
        re(0.0),
    );
    let right = PlPiece::new(
        [foot, t.vc(), apex],
        re((k2 + 1.0) / (2.0 * s)),
        re((k2 - 1.0) / (2.0 * s)),
        re((k1 - k2) * apex.re / s),
    );
    PlMap::new(vec![left, right]).expect("two pieces")
}

/// True when the stretch target lands on a right-triangle boundary
/// geodesic, where no extremal label-preserving homeomorphism exists.
pub fn nonexistence_flag(z0: ShapePoint, k1: f64, k2: f64, v: Vertex) -> Result<bool> {
    validate_ks(k1, k2)?;
    validate_vertex_domain(z0, v)?;
    Ok(k1 == 0.0 || k2 == 0.0)
}

/// Which stretching locus to construct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocusKind {
    /// Two foliated right triangles split by the altitude from the vertex.
    G(Vertex),
    /// Expanding region plus two foliated triangles: the perpendicular is
    /// dropped from `vprime`, the angled segment from the remaining vertex
    /// makes angle `theta` with the side it lands on.
    F {
        v: Vertex,
        vprime: Vertex,
        theta: f64,
    },
}

/// A region foliated by parallel leaves realising the maximal stretch.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedRegion {
    /// Vertex list of the region polygon, counter-clockwise.
    pub region: Vec<Complex>,
    /// Unit leaf direction, normalised to the upper half-plane.
    pub leaf_dir: Complex,
    /// The triangle vertex this region contains.
    pub vertex: Vertex,
}

/// The decomposition of a triangle into maximal-stretching data.
#[derive(Debug, Clone, PartialEq)]
pub struct StretchLocus {
    pub kind: LocusKind,
    /// Expanding region polygon, absent for `G` loci.
    pub expanding: Option<Vec<Complex>>,
    pub foliated: [FoliatedRegion; 2],
    /// The part of the triangle covered by neither the expanding nor the
    /// foliated regions (the quadrilateral at the pencil vertex of an `F`
    /// locus); absent for `G` loci.
    pub residual: Option<Vec<Complex>>,
    /// Foot of the angled segment (`F`) or of the altitude (`G`).
    pub p: Complex,
    /// Intersection of the two cevians, `F` only.
    pub q: Option<Complex>,
    /// Foot of the perpendicular, `F` only.
    pub r: Option<Complex>,
}

impl StretchLocus {
    /// Areas of all stored regions; they tile the source triangle.
    pub fn region_areas(&self) -> Vec<f64> {
        let mut out = Vec::new();
        if let Some(e) = &self.expanding {
            out.push(poly::signed_area(e).abs());
        }
        for f in &self.foliated {
            out.push(poly::signed_area(&f.region).abs());
        }
        if let Some(r) = &self.residual {
            out.push(poly::signed_area(r).abs());
        }
        out
    }
}

fn upper_unit(d: Complex) -> Complex {
    let d = d / d.norm();
    if d.im < 0.0 || (d.im == 0.0 && d.re < 0.0) {
        -d
    } else {
        d
    }
}

/// Constructs a stretching locus on the normalised triangle of `z0`.
pub fn stretch_locus(z0: ShapePoint, kind: LocusKind) -> Result<StretchLocus> {
    if !z0.is_acute() {
        return Err(Error::NotAcute(z0.get()));
    }
    let t = z0.normalized_triangle();
    match kind {
        LocusKind::G(v) => {
            let apex = t.vertex(v);
            let foot = t.altitude_foot(v);
            let (v1, v2) = v.others();
            let leaf = upper_unit(apex - foot);
            let make = |u: Vertex| FoliatedRegion {
                region: vec![apex, foot, t.vertex(u)],
                leaf_dir: leaf,
                vertex: u,
            };
            Ok(StretchLocus {
                kind,
                expanding: None,
                foliated: [make(v1), make(v2)],
                residual: None,
                p: foot,
                q: None,
                r: None,
            })
        }
        LocusKind::F { v, vprime, theta } => {
            if v == vprime {
                return Err(Error::InvalidInput(
                    "the perpendicular vertex must differ from the pencil vertex".into(),
                ));
            }
            let theta_v = t.angles()[v.index()];
            if !(theta > theta_v && theta < std::f64::consts::FRAC_PI_2) {
                return Err(Error::ParameterOutOfRange {
                    name: "theta",
                    value: theta,
                    expected: "in (theta_v, pi/2)",
                });
            }
            let (o1, o2) = v.others();
            let vsecond = if vprime == o1 { o2 } else { o1 };
            let apex = t.vertex(v);
            let b = t.vertex(vprime);
            let c = t.vertex(vsecond);
            // Perpendicular from vprime to its opposite side [apex, vsecond].
            let r = t.altitude_foot(vprime);
            // Angled segment from vsecond to its opposite side [apex, vprime]
            // meeting it at angle theta: law of sines in the triangle
            // (vprime, p, vsecond).
            let theta_b = t.angles()[vprime.index()];
            let bp = (c - b).norm() * (theta + theta_b).sin() / theta.sin();
            let p = b + (apex - b) / (apex - b).norm() * bp;
            let q = intersect_lines(b, r, c, p)?;
            let leaf_b = upper_unit(b - r);
            let leaf_c = upper_unit(c - p);
            Ok(StretchLocus {
                kind,
                expanding: Some(vec![b, c, q]),
                foliated: [
                    FoliatedRegion {
                        region: vec![b, p, q],
                        leaf_dir: leaf_b,
                        vertex: vprime,
                    },
                    FoliatedRegion {
                        region: vec![c, q, r],
                        leaf_dir: leaf_c,
                        vertex: vsecond,
                    },
                ],
                residual: Some(vec![apex, p, q, r]),
                p,
                q: Some(q),
                r: Some(r),
            })
        }
    }
}

fn intersect_lines(p0: Complex, p1: Complex, q0: Complex, q1: Complex) -> Result<Complex> {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let den = crate::geom::cross(d1, d2);
    if den.abs() <= 1e-15 * d1.norm() * d2.norm() {
        return Err(Error::InvalidInput("parallel cevians".into()));
    }
    let t = crate::geom::cross(q0 - p0, d2) / den;
    Ok(p0 + d1 * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::lipschitz_distance;
    use crate::moduli::{classify_pair, pencil_membership, PairKind};
    use crate::triangle::RegionTag;

    fn shape(re: f64, im: f64) -> ShapePoint {
        ShapePoint::from_parts(re, im).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn target_examples() {
        let z0 = shape(0.5, 1.0);
        let id = stretch_target(z0, Vertex::A, 1.0, 1.0).unwrap();
        assert!((id.get() - z0.get()).norm() < 1e-15);

        let w = stretch_target(z0, Vertex::A, 0.5, 0.5).unwrap();
        assert!((w.get() - c(0.5, 2.0)).norm() < 1e-15);

        let w = stretch_target(z0, Vertex::A, 1.0, 0.0).unwrap();
        assert!((w.get() - c(1.0, 2.0)).norm() < 1e-15);
        assert_eq!(w.classify(), RegionTag::RightAt(Vertex::C));
    }

    #[test]
    fn target_round_trips_with_membership() {
        let z0 = shape(0.41, 0.93);
        for v in Vertex::ALL {
            for (k1, k2) in [(0.7, 0.3), (1.0, 0.4), (0.05, 0.95)] {
                let w = stretch_target(z0, v, k1, k2).unwrap();
                let (m1, m2) = pencil_membership(z0, w, v).unwrap().unwrap();
                assert!((m1 - k1).abs() < 1e-12 && (m2 - k2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        let z0 = shape(0.5, 1.0);
        assert!(stretch_target(z0, Vertex::A, 0.0, 0.0).is_err());
        assert!(stretch_target(z0, Vertex::A, 1.2, 0.5).is_err());
        assert!(stretch_target(z0, Vertex::A, -0.1, 0.5).is_err());
    }

    #[test]
    fn stretch_map_examples() {
        let z0 = shape(0.5, 1.0);
        let m = stretch_map(z0, Vertex::A, 0.5, 0.5).unwrap();
        let l = m.lipschitz_constant().unwrap();
        assert!((l - 2f64.sqrt()).abs() < 1e-12);
        // Vertical segments stretch by exactly sqrt(2).
        let p = c(0.3, 0.1);
        let q = c(0.3, 0.9);
        let ratio = (m.eval(q).unwrap() - m.eval(p).unwrap()).norm() / (q - p).norm();
        assert!((ratio - 2f64.sqrt()).abs() < 1e-12);

        let id = stretch_map(z0, Vertex::A, 1.0, 1.0).unwrap();
        assert!((id.lipschitz_constant().unwrap() - 1.0).abs() < 1e-15);
        let x = c(0.4, 0.7);
        assert!((id.eval(x).unwrap() - x).norm() < 1e-15);
    }

    #[test]
    fn stretch_map_collapses_on_zero_parameter() {
        let z0 = shape(0.5, 1.0);
        let m = stretch_map(z0, Vertex::A, 1.0, 0.0).unwrap();
        // The right piece is rank deficient: the b/c feet collapse.
        let right = m
            .pieces()
            .iter()
            .find(|p| p.singular_values().1 < 1e-12)
            .expect("a singular piece");
        let src = z0.normalized_triangle();
        let foot = c(src.va().re, 0.0);
        assert!((right.eval(src.vc()) - right.eval(foot)).norm() < 1e-12);
        // Image is the normalised right triangle of 1 + 2i.
        let dst = stretch_target(z0, Vertex::A, 1.0, 0.0)
            .unwrap()
            .normalized_triangle();
        assert!((m.eval(src.va()).unwrap() - dst.va()).norm() < 1e-12);
    }

    #[test]
    fn stretch_map_maps_vertices_and_edges() {
        for v in Vertex::ALL {
            let z0 = shape(0.37, 1.1);
            let (k1, k2) = (0.6, 0.85);
            let m = stretch_map(z0, v, k1, k2).unwrap();
            let src = z0.normalized_triangle();
            let dst = stretch_target(z0, v, k1, k2).unwrap().normalized_triangle();
            for u in Vertex::ALL {
                assert!(
                    (m.eval(src.vertex(u)).unwrap() - dst.vertex(u)).norm() < 1e-12,
                    "vertex {u} not preserved for pencil vertex {v}"
                );
            }
            assert!(m.continuity_defect(32) < 1e-12);
            // Extremality: constant equals exp(distance).
            let w = stretch_target(z0, v, k1, k2).unwrap();
            let d = lipschitz_distance(z0, w).unwrap();
            let l = m.lipschitz_constant().unwrap();
            assert!((l / d.exp() - 1.0).abs() < 1e-12);
            let cls = classify_pair(z0, w).unwrap();
            assert_eq!(cls.vertex, v);
            assert_eq!(cls.kind, PairKind::Pencil);
        }
    }

    #[test]
    fn nonexistence_examples() {
        let z0 = shape(0.5, 1.0);
        assert!(nonexistence_flag(z0, 1.0, 0.0, Vertex::A).unwrap());
        assert!(!nonexistence_flag(z0, 0.5, 0.5, Vertex::A).unwrap());
        assert!(nonexistence_flag(z0, 0.0, 1.0, Vertex::A).unwrap());
    }

    #[test]
    fn g_locus_example() {
        let z0 = shape(0.5, 1.0);
        let locus = stretch_locus(z0, LocusKind::G(Vertex::A)).unwrap();
        assert!((locus.p - c(0.5f64.sqrt(), 0.0)).norm() < 1e-9);
        for f in &locus.foliated {
            assert!((f.leaf_dir - c(0.0, 1.0)).norm() < 1e-12);
        }
        let total: f64 = locus.region_areas().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f_locus_regions_tile_with_residual() {
        let z0 = shape(0.5, 1.0);
        let locus = stretch_locus(
            z0,
            LocusKind::F {
                v: Vertex::A,
                vprime: Vertex::B,
                theta: 1.2,
            },
        )
        .unwrap();
        let total: f64 = locus.region_areas().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(locus.expanding.is_some() && locus.residual.is_some());
        // Leaves are parallel to the defining segments.
        let t = z0.normalized_triangle();
        let r = locus.r.unwrap();
        let dir = upper_unit(t.vb() - r);
        assert!((locus.foliated[0].leaf_dir - dir).norm() < 1e-12);
    }

    #[test]
    fn f_locus_limit_approaches_orthocenter() {
        // As theta -> pi/2 the cevian from the third vertex becomes its
        // altitude and q approaches the orthocenter, which lies on the
        // altitude from the pencil vertex.
        let z0 = shape(0.5, 1.0);
        let locus = stretch_locus(
            z0,
            LocusKind::F {
                v: Vertex::A,
                vprime: Vertex::B,
                theta: std::f64::consts::FRAC_PI_2 - 1e-7,
            },
        )
        .unwrap();
        let t = z0.normalized_triangle();
        let q = locus.q.unwrap();
        let axis = t.altitude_foot(Vertex::A) - t.va();
        let off = crate::geom::cross(axis, q - t.va()).abs() / axis.norm();
        assert!(off < 1e-5, "q = {q} should sit on the a-altitude");
    }

    #[test]
    fn f_locus_validates_theta() {
        let z0 = shape(0.5, 1.0);
        for theta in [0.1, std::f64::consts::FRAC_PI_2, 2.0] {
            assert!(stretch_locus(
                z0,
                LocusKind::F {
                    v: Vertex::A,
                    vprime: Vertex::B,
                    theta,
                }
            )
            .is_err());
        }
    }
}
