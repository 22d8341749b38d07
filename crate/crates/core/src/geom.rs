//! Plane primitives shared by the whole crate.
//!
//! Points of the Euclidean plane are complex numbers. Linear parts of maps
//! are real 2x2 matrices with a closed-form singular value decomposition.

pub use num_complex::Complex64 as Complex;

/// Cross product of two plane vectors, `Im(conj(a) * b)`.
#[inline]
pub fn cross(a: Complex, b: Complex) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Dot product of two plane vectors.
#[inline]
pub fn dot(a: Complex, b: Complex) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Twice the signed area of the triangle `(p, q, r)`; positive when the
/// cycle runs counter-clockwise.
#[inline]
pub fn signed_area2(p: Complex, q: Complex, r: Complex) -> f64 {
    cross(q - p, r - p)
}

/// Real 2x2 matrix in row-major order `[m11, m12, m21, m22]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [f64; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1.0, 0.0, 0.0, 1.0]);

    /// Matrix sending `(x, y)` to `(x, -y)`.
    pub const CONJ: Mat2 = Mat2([1.0, 0.0, 0.0, -1.0]);

    #[inline]
    pub fn apply(&self, v: Complex) -> Complex {
        let m = &self.0;
        Complex::new(m[0] * v.re + m[1] * v.im, m[2] * v.re + m[3] * v.im)
    }

    #[inline]
    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0] * m[3] - m[1] * m[2]
    }

    #[inline]
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    /// Singular values `(sigma_max, sigma_min)` in closed form.
    pub fn singular_values(&self) -> (f64, f64) {
        let [a, b, c, d] = self.0;
        let e = 0.5 * (a + d);
        let f = 0.5 * (a - d);
        let g = 0.5 * (c + b);
        let h = 0.5 * (c - b);
        let q = (e * e + h * h).sqrt();
        let r = (f * f + g * g).sqrt();
        (q + r, (q - r).abs())
    }

    /// Top singular triple `(sigma_max, u, v)` with `M v = sigma_max u`,
    /// `|u| = |v| = 1`. Degenerate matrices return an arbitrary unit pair.
    pub fn top_singular_triple(&self) -> (f64, Complex, Complex) {
        let [a, b, c, d] = self.0;
        // Right singular vector: top eigenvector of M^T M.
        let p = a * a + c * c;
        let q = a * b + c * d;
        let r = b * b + d * d;
        let theta = 0.5 * (2.0 * q).atan2(p - r);
        let v = Complex::new(theta.cos(), theta.sin());
        let mv = self.apply(v);
        let s = mv.norm();
        let (smax, _) = self.singular_values();
        if s <= f64::EPSILON * (p + r).sqrt().max(1.0) {
            return (smax, Complex::new(1.0, 0.0), v);
        }
        // M^T M has eigenvalues sigma^2; theta may select the smaller one.
        if s * s + 1e-12 * (p + r) < 0.5 * (p + r) {
            let v2 = Complex::new(-v.im, v.re);
            let mv2 = self.apply(v2);
            let s2 = mv2.norm();
            if s2 > s {
                return (s2, mv2 / s2, v2);
            }
        }
        (s, mv / s, v)
    }
}

/// Convex polygon utilities used for piece bookkeeping.
pub mod poly {
    use super::{cross, Complex};

    /// Signed area of a simple polygon.
    pub fn signed_area(pts: &[Complex]) -> f64 {
        let n = pts.len();
        let mut s = 0.0;
        for i in 0..n {
            let p = pts[i];
            let q = pts[(i + 1) % n];
            s += cross(p, q);
        }
        0.5 * s
    }

    /// Clips a convex polygon against the half-plane on the left of the
    /// directed line `p -> q` (Sutherland-Hodgman step).
    pub fn clip_halfplane(pts: &[Complex], p: Complex, q: Complex) -> Vec<Complex> {
        let mut out = Vec::with_capacity(pts.len() + 2);
        let n = pts.len();
        if n == 0 {
            return out;
        }
        let side = |x: Complex| cross(q - p, x - p);
        for i in 0..n {
            let cur = pts[i];
            let nxt = pts[(i + 1) % n];
            let sc = side(cur);
            let sn = side(nxt);
            if sc >= 0.0 {
                out.push(cur);
            }
            if (sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0) {
                let t = sc / (sc - sn);
                out.push(cur + (nxt - cur) * t);
            }
        }
        out
    }

    /// Intersection of a convex polygon with a convex clip polygon (both
    /// counter-clockwise).
    pub fn intersect_convex(subject: &[Complex], clip: &[Complex]) -> Vec<Complex> {
        let mut cur: Vec<Complex> = subject.to_vec();
        let n = clip.len();
        for i in 0..n {
            if cur.is_empty() {
                break;
            }
            cur = clip_halfplane(&cur, clip[i], clip[(i + 1) % n]);
        }
        cur
    }

    /// Fan triangulation of a convex polygon; drops slivers below `min_area`.
    pub fn triangulate(pts: &[Complex], min_area: f64) -> Vec<[Complex; 3]> {
        let mut tris = Vec::new();
        if pts.len() < 3 {
            return tris;
        }
        for i in 1..pts.len() - 1 {
            let t = [pts[0], pts[i], pts[i + 1]];
            if 0.5 * super::signed_area2(t[0], t[1], t[2]).abs() > min_area {
                tris.push(t);
            }
        }
        tris
    }

    /// Barycentric coordinates of `x` with respect to triangle `t`.
    pub fn barycentric(t: &[Complex; 3], x: Complex) -> [f64; 3] {
        let d = super::signed_area2(t[0], t[1], t[2]);
        [
            super::signed_area2(x, t[1], t[2]) / d,
            super::signed_area2(t[0], x, t[2]) / d,
            super::signed_area2(t[0], t[1], x) / d,
        ]
    }

    /// Whether `x` lies in triangle `t`, with slack `tol` on the barycentric
    /// coordinates.
    pub fn triangle_contains(t: &[Complex; 3], x: Complex, tol: f64) -> bool {
        let b = barycentric(t, x);
        b.iter().all(|&w| w >= -tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal() {
        let (smax, smin) = Mat2([3.0, 0.0, 0.0, -2.0]).singular_values();
        assert!((smax - 3.0).abs() < 1e-15);
        assert!((smin - 2.0).abs() < 1e-15);
    }

    #[test]
    fn top_singular_triple_consistent() {
        let m = Mat2([1.2, 0.3, -0.7, 2.1]);
        let (s, u, v) = m.top_singular_triple();
        let (smax, _) = m.singular_values();
        assert!((s - smax).abs() < 1e-12);
        let mv = m.apply(v);
        assert!((mv - u * s).norm() < 1e-12);
    }

    #[test]
    fn clip_triangle_by_itself() {
        let t = [
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 1.0),
        ];
        let out = poly::intersect_convex(&t, &t);
        assert!((poly::signed_area(&out) - 0.5).abs() < 1e-15);
    }
}
