//! Concrete triangle geometry: labels, edges, angles, altitudes, area, the
//! moduli parameter `z`, and the two standard realisations of a shape point.
//!
//! A labelled triangle carries vertices `a`, `b`, `c` in counter-clockwise
//! order; the labelling is part of the data. The edge `e_v` is the edge
//! opposite the vertex `v`. For a unit-area triangle the moduli parameter is
//!
//! ```text
//! z(T) = (|e_c| / |e_a|) * exp(i * theta_b) = (v_a - v_b) / (v_c - v_b),
//! ```
//!
//! a point of the open upper half-plane. Acute shapes fill the ideal
//! triangle `0 < Re z < 1`, `|z - 1/2| > 1/2`; its three boundary geodesics
//! carry the right triangles and the three complementary regions the obtuse
//! ones.

use crate::error::Error;
use crate::geom::{signed_area2, Complex};
use crate::Result;

/// Vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Vertex {
        Vertex::ALL[i]
    }

    /// The two other vertices, in label order.
    pub fn others(self) -> (Vertex, Vertex) {
        match self {
            Vertex::A => (Vertex::B, Vertex::C),
            Vertex::B => (Vertex::A, Vertex::C),
            Vertex::C => (Vertex::A, Vertex::B),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Vertex::A => 'a',
            Vertex::B => 'b',
            Vertex::C => 'c',
        }
    }
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A planar triangle with labelled vertices `a`, `b`, `c` in
/// counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledTriangle {
    va: Complex,
    vb: Complex,
    vc: Complex,
}

impl LabeledTriangle {
    /// Validating constructor. Rejects collinear vertex triples and
    /// clockwise labellings; orientation is data, not a normalisation.
    pub fn new(va: Complex, vb: Complex, vc: Complex) -> Result<Self> {
        let s2 = signed_area2(va, vb, vc);
        let scale = (va.norm() + vb.norm() + vc.norm()).max(1.0);
        if s2.abs() <= f64::EPSILON * scale * scale {
            return Err(Error::DegenerateTriangle);
        }
        if s2 < 0.0 {
            return Err(Error::NotCounterClockwise);
        }
        Ok(LabeledTriangle { va, vb, vc })
    }

    #[inline]
    pub fn va(&self) -> Complex {
        self.va
    }

    #[inline]
    pub fn vb(&self) -> Complex {
        self.vb
    }

    #[inline]
    pub fn vc(&self) -> Complex {
        self.vc
    }

    /// Vertex position by label.
    pub fn vertex(&self, v: Vertex) -> Complex {
        match v {
            Vertex::A => self.va,
            Vertex::B => self.vb,
            Vertex::C => self.vc,
        }
    }

    pub fn vertices(&self) -> [Complex; 3] {
        [self.va, self.vb, self.vc]
    }

    /// Lengths `(|e_a|, |e_b|, |e_c|)` of the edges opposite each vertex.
    pub fn edge_lengths(&self) -> [f64; 3] {
        [
            (self.vb - self.vc).norm(),
            (self.vc - self.va).norm(),
            (self.va - self.vb).norm(),
        ]
    }

    /// Endpoints of the edge opposite `v`, ordered by label.
    pub fn edge(&self, v: Vertex) -> (Complex, Complex) {
        match v {
            Vertex::A => (self.vb, self.vc),
            Vertex::B => (self.va, self.vc),
            Vertex::C => (self.va, self.vb),
        }
    }

    /// Interior angles `(theta_a, theta_b, theta_c)` in radians.
    pub fn angles(&self) -> [f64; 3] {
        let at = |p: Complex, q: Complex, r: Complex| {
            let u = q - p;
            let v = r - p;
            crate::geom::cross(u, v).atan2(crate::geom::dot(u, v))
        };
        [
            at(self.va, self.vb, self.vc),
            at(self.vb, self.vc, self.va),
            at(self.vc, self.va, self.vb),
        ]
    }

    pub fn area(&self) -> f64 {
        0.5 * signed_area2(self.va, self.vb, self.vc)
    }

    /// Altitudes `(h_a, h_b, h_c)`, where `h_v = 2 area / |e_v|`.
    pub fn altitudes(&self) -> [f64; 3] {
        let a2 = 2.0 * self.area();
        let e = self.edge_lengths();
        [a2 / e[0], a2 / e[1], a2 / e[2]]
    }

    /// Foot of the perpendicular from vertex `v` onto the line of its
    /// opposite edge.
    pub fn altitude_foot(&self, v: Vertex) -> Complex {
        let apex = self.vertex(v);
        let (p, q) = self.edge(v);
        let d = q - p;
        let t = crate::geom::dot(apex - p, d) / crate::geom::dot(d, d);
        p + d * t
    }

    /// The moduli parameter `z(T) = (v_a - v_b) / (v_c - v_b)`, invariant
    /// under label-preserving similarity.
    pub fn shape(&self) -> ShapePoint {
        let z = (self.va - self.vb) / (self.vc - self.vb);
        // CCW orientation forces Im z > 0.
        ShapePoint(z)
    }

    /// Rescales by a positive similarity so the area becomes `area`.
    pub fn with_area(&self, area: f64) -> Result<LabeledTriangle> {
        if !(area > 0.0) || !area.is_finite() {
            return Err(Error::ParameterOutOfRange {
                name: "area",
                value: area,
                expected: "positive finite",
            });
        }
        let s = (area / self.area()).sqrt();
        Ok(LabeledTriangle {
            va: self.va * s,
            vb: self.vb * s,
            vc: self.vc * s,
        })
    }
}

/// A point of the moduli space: `z` in the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapePoint(Complex);

impl ShapePoint {
    pub fn new(z: Complex) -> Result<Self> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NotUpperHalfPlane(z));
        }
        Ok(ShapePoint(z))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }

    #[inline]
    pub fn get(&self) -> Complex {
        self.0
    }

    #[inline]
    pub fn re(&self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// The normalised position: the unit-area representative with vertices
    /// `((2/y)^(1/2) z, 0, (2/y)^(1/2))`.
    pub fn normalized_triangle(&self) -> LabeledTriangle {
        let s = (2.0 / self.im()).sqrt();
        LabeledTriangle {
            va: self.0 * s,
            vb: Complex::new(0.0, 0.0),
            vc: Complex::new(s, 0.0),
        }
    }

    /// The representative with vertices `(z, 0, 1)` (area `Im z / 2`).
    pub fn tilde_triangle(&self) -> LabeledTriangle {
        LabeledTriangle {
            va: self.0,
            vb: Complex::new(0.0, 0.0),
            vc: Complex::new(1.0, 0.0),
        }
    }

    /// Region classification with exact-zero boundary comparisons on the
    /// defining quantities `Re z`, `Re z - 1` and `|z|^2 - Re z`.
    pub fn classify(&self) -> RegionTag {
        self.classify_snapped(0.0)
    }

    /// Region classification that first snaps each defining quantity to zero
    /// when its magnitude is at most `eps`.
    pub fn classify_snapped(&self, eps: f64) -> RegionTag {
        let x = self.0.re;
        let snap = |q: f64| if q.abs() <= eps { 0.0 } else { q };
        let qb = snap(x);
        let qc = snap(x - 1.0);
        // |z - 1/2|^2 - 1/4 = |z|^2 - Re z.
        let qa = snap(self.0.norm_sqr() - x);
        if qb < 0.0 {
            RegionTag::ObtuseAt(Vertex::B)
        } else if qb == 0.0 {
            RegionTag::RightAt(Vertex::B)
        } else if qc > 0.0 {
            RegionTag::ObtuseAt(Vertex::C)
        } else if qc == 0.0 {
            RegionTag::RightAt(Vertex::C)
        } else if qa < 0.0 {
            RegionTag::ObtuseAt(Vertex::A)
        } else if qa == 0.0 {
            RegionTag::RightAt(Vertex::A)
        } else {
            RegionTag::Acute
        }
    }

    /// Whether the shape is strictly acute.
    pub fn is_acute(&self) -> bool {
        matches!(self.classify(), RegionTag::Acute)
    }

    /// Whether the shape lies in the closed acute region, with slack `tol`
    /// on the defining quantities.
    pub fn is_closed_acute(&self, tol: f64) -> bool {
        let x = self.0.re;
        x >= -tol && x - 1.0 <= tol && self.0.norm_sqr() - x >= -tol
    }

    /// Whether the shape is acute, right at `v`, or obtuse at `v`.
    pub fn in_vertex_domain(&self, v: Vertex) -> bool {
        match self.classify() {
            RegionTag::Acute => true,
            RegionTag::RightAt(u) | RegionTag::ObtuseAt(u) => u == v,
        }
    }
}

impl std::fmt::Display for ShapePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Where a shape point sits relative to the acute region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    Acute,
    RightAt(Vertex),
    ObtuseAt(Vertex),
}
