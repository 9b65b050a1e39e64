//! Small fixed-size linear algebra used throughout the crate.

use serde::{Deserialize, Serialize};

/// Default tolerance for "is this exactly zero" decisions on user data.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product, used for side-of-ray tests.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    pub fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }
}

/// Row-major 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Eigenvalue pair of a real 2x2 matrix: either two real values or a
/// complex-conjugate pair re ± im·i.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EigenPair {
    Real(f64, f64),
    Complex { re: f64, im: f64 },
}

impl Mat2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Mat2 { a, b: 0.0, c: 0.0, d }
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn norm(self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn eigenvalues(self) -> EigenPair {
        let t = self.trace();
        let d = self.det();
        let disc = t * t - 4.0 * d;
        if disc >= 0.0 {
            let s = disc.sqrt();
            EigenPair::Real((t + s) / 2.0, (t - s) / 2.0)
        } else {
            EigenPair::Complex { re: t / 2.0, im: (-disc).sqrt() / 2.0 }
        }
    }

    /// Eigenvector for a real eigenvalue, unit length.
    pub fn eigenvector(self, lambda: f64) -> Vec2 {
        // (a-λ)x + b y = 0 ; c x + (d-λ) y = 0 — take the better-conditioned row.
        let r1 = Vec2::new(self.a - lambda, self.b);
        let r2 = Vec2::new(self.c, self.d - lambda);
        let v = if r1.norm() >= r2.norm() {
            Vec2::new(-r1.y, r1.x)
        } else {
            Vec2::new(-r2.y, r2.x)
        };
        if v.norm() < 1e-300 {
            // Scalar matrix: any direction is an eigenvector.
            return Vec2::new(1.0, 0.0);
        }
        v.normalized()
    }

    /// Solve self * x = rhs by Cramer's rule. None when the determinant vanishes.
    pub fn solve(self, rhs: Vec2) -> Option<Vec2> {
        let det = self.det();
        if det == 0.0 {
            return None;
        }
        let d1 = rhs.x * self.d - self.b * rhs.y;
        let d2 = self.a * rhs.y - rhs.x * self.c;
        Some(Vec2::new(d1 / det, d2 / det))
    }
}

/// Three-valued sign with an explicit zero band of width `tol`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: f64, tol: f64) -> Sign {
        if v > tol {
            Sign::Pos
        } else if v < -tol {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_diagonal() {
        let m = Mat2::diag(2.0, -0.75);
        assert_eq!(m.eigenvalues(), EigenPair::Real(2.0, -0.75));
    }

    #[test]
    fn eigen_complex() {
        let m = Mat2::new(0.0, -1.0, 1.0, 0.0);
        assert_eq!(m.eigenvalues(), EigenPair::Complex { re: 0.0, im: 1.0 });
    }

    #[test]
    fn solve_cramer() {
        let m = Mat2::new(1.0, 2.0, 3.0, 4.0);
        let x = m.solve(Vec2::new(5.0, 6.0)).unwrap();
        let r = m.mul_vec(x);
        assert!((r.x - 5.0).abs() < 1e-12 && (r.y - 6.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvector_matches_eigenvalue() {
        let m = Mat2::new(1.0, 2.0, 0.5, -1.0);
        if let EigenPair::Real(l1, l2) = m.eigenvalues() {
            for l in [l1, l2] {
                let v = m.eigenvector(l);
                let mv = m.mul_vec(v);
                assert!((mv.x - l * v.x).abs() < 1e-10);
                assert!((mv.y - l * v.y).abs() < 1e-10);
            }
        } else {
            panic!("expected real eigenvalues");
        }
    }
}
