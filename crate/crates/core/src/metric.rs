//! The Lipschitz distance in closed form, the affine upper bound, the
//! edge/altitude max-ratio candidate, the Finsler norm with its hexagonal
//! unit ball, and geodesic polylines.
//!
//! For a classified pair the distance reduces, after conjugating the class
//! to the `a`-vertex, to half the absolute log of the ratio of imaginary
//! parts. Expanding the conjugations gives the three closed forms selected
//! by [`Formula`]. The same sector bookkeeping drives the Finsler norm; its
//! unit sphere at `z0` is the hexagon with vertices `2 z0`, `2 (z0 - 1)`,
//! `2 z0 (z0 - 1)` and their negatives.

use crate::error::Error;
use crate::geom::Complex;
use crate::moduli::{classify_pair, sector_of, LabelPermutation, PairClass, SectorTag};
use crate::triangle::{ShapePoint, Vertex};
use crate::Result;

/// Which closed form produced a distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    A,
    B,
    C,
}

impl Formula {
    pub fn letter(self) -> char {
        match self {
            Formula::A => 'a',
            Formula::B => 'b',
            Formula::C => 'c',
        }
    }

    fn for_vertex(v: Vertex) -> Formula {
        match v {
            Vertex::A => Formula::A,
            Vertex::B => Formula::B,
            Vertex::C => Formula::C,
        }
    }
}

/// Distance together with the classification that justified it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    pub d: f64,
    pub class: PairClass,
    pub formula: Formula,
}

/// Lipschitz constant of the label-preserving affine map between the
/// normalised triangles of `z1` and `z2`:
/// `(|z2 - conj z1| + |z2 - z1|) / (2 sqrt(Im z1 * Im z2))`.
pub fn affine_lipschitz_constant(z1: ShapePoint, z2: ShapePoint) -> f64 {
    let (a, b) = (z1.get(), z2.get());
    ((b - a.conj()).norm() + (b - a).norm()) / (2.0 * (a.im * b.im).sqrt())
}

/// The Lipschitz distance between two classified shapes.
pub fn lipschitz_distance(z: ShapePoint, w: ShapePoint) -> Result<f64> {
    lipschitz_distance_detailed(z, w).map(|r| r.d)
}

/// Distance evaluation keyed by the classification vertex:
///
/// * vertex `a`: `d = |log(Im w / Im z)| / 2`,
/// * vertex `b`: `d = |log((Im w / |w-1|^2) (|z-1|^2 / Im z))| / 2`,
/// * vertex `c`: `d = |log((Im w / |w|^2) (|z|^2 / Im z))| / 2`.
///
/// The `b` and `c` forms are the `a` form transported by `omega_ab` and
/// `omega_ac`, which multiply the imaginary part by `1/|z-1|^2` and
/// `1/|z|^2` respectively.
pub fn lipschitz_distance_detailed(z: ShapePoint, w: ShapePoint) -> Result<DistanceReport> {
    let class = classify_pair(z, w)?;
    let d = distance_for_vertex(z.get(), w.get(), class.vertex);
    Ok(DistanceReport {
        d,
        class,
        formula: Formula::for_vertex(class.vertex),
    })
}

fn distance_for_vertex(z: Complex, w: Complex, v: Vertex) -> f64 {
    let ratio = match v {
        Vertex::A => (w.im / z.im).ln(),
        Vertex::B => {
            let one = Complex::new(1.0, 0.0);
            ((w.im / (w - one).norm_sqr()) * ((z - one).norm_sqr() / z.im)).ln()
        }
        Vertex::C => ((w.im / w.norm_sqr()) * (z.norm_sqr() / z.im)).ln(),
    };
    0.5 * ratio.abs()
}

/// Log of the maximum over all six edge and altitude ratios of the two
/// unit-area shapes; a lower bound for the Lipschitz distance that is in
/// fact attained on every classified pair.
pub fn max_ratio_distance(z: ShapePoint, w: ShapePoint) -> f64 {
    let ez = z.normalized_triangle().edge_lengths();
    let ew = w.normalized_triangle().edge_lengths();
    let mut m: f64 = 1.0;
    for i in 0..3 {
        let rho = ew[i] / ez[i];
        // At unit area the altitude ratios are the reciprocal edge ratios.
        m = m.max(rho).max(1.0 / rho);
    }
    m.ln()
}

/// The Finsler norm at an acute shape `z0`.
///
/// Sector-selected closed forms, continuous across the sector boundaries:
/// `F = |Im u| / (2 Im z0)` on `S_a` and its antipode,
/// `F = |Im u / Im z0 - 2 Re(u / (z0 - 1))| / 2` on the `b` sectors,
/// `F = |Im u / Im z0 - 2 Re(u / z0)| / 2` on the `c` sectors.
pub fn finsler_norm(z0: ShapePoint, u: Complex) -> Result<f64> {
    if u.norm_sqr() == 0.0 {
        if !z0.is_acute() {
            return Err(Error::NotAcute(z0.get()));
        }
        return Ok(0.0);
    }
    let sector = sector_of(z0, u)?;
    Ok(finsler_norm_by_formula(
        z0.get(),
        u,
        Formula::for_vertex(sector.vertex),
    ))
}

/// The Finsler norm together with the sector that selected the formula.
pub fn finsler_norm_detailed(z0: ShapePoint, u: Complex) -> Result<(f64, SectorTag)> {
    let sector = sector_of(z0, u)?;
    let f = finsler_norm_by_formula(z0.get(), u, Formula::for_vertex(sector.vertex));
    Ok((f, sector))
}

/// Evaluates one of the three sector formulas directly.
pub fn finsler_norm_by_formula(z0: Complex, u: Complex, formula: Formula) -> f64 {
    match formula {
        Formula::A => 0.5 * u.im.abs() / z0.im,
        Formula::B => 0.5 * (u.im / z0.im - 2.0 * (u / (z0 - 1.0)).re).abs(),
        Formula::C => 0.5 * (u.im / z0.im - 2.0 * (u / z0).re).abs(),
    }
}

/// The Finsler unit sphere at an acute shape: a centrally symmetric convex
/// hexagon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hexagon {
    vertices: [Complex; 6],
}

impl Hexagon {
    /// Vertices in cyclic (counter-clockwise) order.
    pub fn vertices(&self) -> &[Complex; 6] {
        &self.vertices
    }

    /// Side lengths in cyclic order.
    pub fn side_lengths(&self) -> [f64; 6] {
        std::array::from_fn(|i| (self.vertices[(i + 1) % 6] - self.vertices[i]).norm())
    }

    /// Lengths of the three main diagonals.
    pub fn diagonal_lengths(&self) -> [f64; 3] {
        std::array::from_fn(|i| (self.vertices[i] - self.vertices[i + 3]).norm())
    }

    /// Points on the boundary, `per_side` per edge, excluding each edge's
    /// terminal vertex.
    pub fn boundary_samples(&self, per_side: usize) -> Vec<Complex> {
        let mut out = Vec::with_capacity(6 * per_side);
        for i in 0..6 {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % 6];
            for k in 0..per_side {
                let t = k as f64 / per_side as f64;
                out.push(p + (q - p) * t);
            }
        }
        out
    }

    /// The six triangles cut off by the three main diagonals, each spanned
    /// by the centre and one edge.
    pub fn diagonal_triangles(&self) -> [[Complex; 3]; 6] {
        std::array::from_fn(|i| {
            [
                Complex::new(0.0, 0.0),
                self.vertices[i],
                self.vertices[(i + 1) % 6],
            ]
        })
    }
}

/// The unit ball hexagon of the Finsler norm at `z0`: vertices `2 z0`,
/// `2 (z0 - 1)`, `2 z0 (z0 - 1)` and their negatives, in cyclic order.
pub fn unit_ball_hexagon(z0: ShapePoint) -> Result<Hexagon> {
    if !z0.is_acute() {
        return Err(Error::NotAcute(z0.get()));
    }
    let z = z0.get();
    let v1 = 2.0 * z;
    let v2 = 2.0 * (z - 1.0);
    let v3 = 2.0 * z * (z - 1.0);
    Ok(Hexagon {
        vertices: [v1, v2, v3, -v1, -v2, -v3],
    })
}

/// A sampled geodesic polyline between two classified shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    points: Vec<ShapePoint>,
    class: PairClass,
}

impl GeodesicPath {
    pub fn points(&self) -> &[ShapePoint] {
        &self.points
    }

    pub fn class(&self) -> PairClass {
        self.class
    }

    /// Distances accumulated along consecutive samples.
    pub fn partial_sums(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.points.len().saturating_sub(1));
        let mut acc = 0.0;
        for pair in self.points.windows(2) {
            acc += lipschitz_distance(pair[0], pair[1])?;
            out.push(acc);
        }
        Ok(out)
    }

    pub fn total_length(&self) -> Result<f64> {
        Ok(self.partial_sums()?.last().copied().unwrap_or(0.0))
    }
}

/// The straight-segment geodesic between `z` and `w`, sampled at `n + 1`
/// points.
///
/// The pair's class is conjugated to the `a`-vertex, the straight segment
/// is sampled there (its imaginary part is monotone, which makes it a
/// geodesic), and the samples are mapped back.
pub fn geodesic_path(z: ShapePoint, w: ShapePoint, n: u32) -> Result<GeodesicPath> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: 0.0,
            expected: "a positive sample count",
        });
    }
    let class = classify_pair(z, w)?;
    let sigma = LabelPermutation::conjugator_to_a(class.vertex);
    let zc = sigma.apply(z).get();
    let wc = sigma.apply(w).get();
    let mut points = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let t = j as f64 / n as f64;
        let p = ShapePoint::new(zc + (wc - zc) * t)?;
        points.push(sigma.apply(p));
    }
    Ok(GeodesicPath { points, class })
}
