//! Small 3D vector / triangle utilities shared by every module.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn vec3(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3 { x, y, z }
}

impl Vec3 {
    pub const ZERO: Vec3 = vec3(0.0, 0.0, 0.0);

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        vec3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn normalized(self) -> Vec3 {
        self / self.norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Bit pattern of the three coordinates, used for exact-equality hashing.
    pub fn bits(self) -> [u64; 3] {
        [self.x.to_bits(), self.y.to_bits(), self.z.to_bits()]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        vec3(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        vec3(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        vec3(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        vec3(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        vec3(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        vec3(self.x / s, self.y / s, self.z / s)
    }
}

/// Axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn new(min: Vec3, max: Vec3) -> Aabb {
        Aabb { min, max }
    }

    pub fn unit_cube() -> Aabb {
        Aabb::new(Vec3::ZERO, vec3(1.0, 1.0, 1.0))
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn max_extent(&self) -> f64 {
        let d = self.max - self.min;
        d.x.max(d.y).max(d.z)
    }

    pub fn grown(&self, pad: f64) -> Aabb {
        Aabb::new(
            self.min - vec3(pad, pad, pad),
            self.max + vec3(pad, pad, pad),
        )
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }

    pub fn is_degenerate(&self) -> bool {
        self.min.x >= self.max.x || self.min.y >= self.max.y || self.min.z >= self.max.z
    }
}

/// Interior angles of a triangle, in degrees, in vertex order.
pub fn triangle_angles_deg(a: Vec3, b: Vec3, c: Vec3) -> [f64; 3] {
    [
        angle_at(a, b, c),
        angle_at(b, c, a),
        angle_at(c, a, b),
    ]
}

fn angle_at(v: Vec3, p: Vec3, q: Vec3) -> f64 {
    let u = p - v;
    let w = q - v;
    let denom = u.norm() * w.norm();
    if denom == 0.0 {
        return 0.0;
    }
    let c = (u.dot(w) / denom).clamp(-1.0, 1.0);
    c.acos().to_degrees()
}

/// Angle between two vectors in degrees.
pub fn angle_between_deg(u: Vec3, v: Vec3) -> f64 {
    let denom = u.norm() * v.norm();
    let c = (u.dot(v) / denom).clamp(-1.0, 1.0);
    c.acos().to_degrees()
}

pub fn triangle_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    (b - a).cross(c - a).norm() * 0.5
}

/// Squared distance from a point to a triangle (closest point on the solid triangle).
pub fn point_triangle_dist_sq(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> f64 {
    // Ericson, "Real-Time Collision Detection", closest-point-on-triangle.
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return ap.norm_squared();
    }
    let bp = p - b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= 0.0 && d4 <= d3 {
        return bp.norm_squared();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (ap - ab * v).norm_squared();
    }
    let cp = p - c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= 0.0 && d5 <= d6 {
        return cp.norm_squared();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (ap - ac * w).norm_squared();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (bp - (c - b) * w).norm_squared();
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    let closest = a + ab * v + ac * w;
    (p - closest).norm_squared()
}

/// Does point `p` lie inside (or on the boundary of) tetrahedron `t`, up to `tol`
/// on the barycentric coordinates?
pub fn point_in_tetrahedron(p: Vec3, t: &[Vec3; 4], tol: f64) -> bool {
    let m = [t[1] - t[0], t[2] - t[0], t[3] - t[0]];
    let det = m[0].dot(m[1].cross(m[2]));
    if det.abs() < 1e-300 {
        return false;
    }
    let rhs = p - t[0];
    // Cramer's rule.
    let b1 = rhs.dot(m[1].cross(m[2])) / det;
    let b2 = m[0].dot(rhs.cross(m[2])) / det;
    let b3 = m[0].dot(m[1].cross(rhs)) / det;
    let b0 = 1.0 - b1 - b2 - b3;
    b0 >= -tol && b1 >= -tol && b2 >= -tol && b3 >= -tol
}

pub fn tetrahedron_volume(t: &[Vec3; 4]) -> f64 {
    ((t[1] - t[0]).dot((t[2] - t[0]).cross(t[3] - t[0])) / 6.0).abs()
}

/// Eigenvalues of a symmetric 3x3 matrix (rows given), ascending.
/// Closed-form trigonometric method; good enough for curvature estimates.
pub fn symmetric_eigenvalues_3x3(m: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = m;
    for i in 0..3 {
        b[i][i] -= q;
    }
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det_b / (2.0 * p * p * p)).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let eig1 = q + 2.0 * p * phi.cos();
    let eig3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let eig2 = 3.0 * q - eig1 - eig3;
    let mut d = [eig1, eig2, eig3];
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn equilateral_angles() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(1.0, 0.0, 0.0);
        let c = vec3(0.5, 3f64.sqrt() / 2.0, 0.0);
        for ang in triangle_angles_deg(a, b, c) {
            assert_relative_eq!(ang, 60.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn point_triangle_distance_cases() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(1.0, 0.0, 0.0);
        let c = vec3(0.0, 1.0, 0.0);
        // Above interior.
        assert_relative_eq!(
            point_triangle_dist_sq(vec3(0.25, 0.25, 2.0), a, b, c),
            4.0
        );
        // Closest to vertex b.
        assert_relative_eq!(
            point_triangle_dist_sq(vec3(2.0, 0.0, 0.0), a, b, c),
            1.0
        );
        // Closest to edge ab.
        assert_relative_eq!(
            point_triangle_dist_sq(vec3(0.5, -1.0, 0.0), a, b, c),
            1.0
        );
    }

    #[test]
    fn tet_volume_and_containment() {
        let t = [
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
        ];
        assert_relative_eq!(tetrahedron_volume(&t), 1.0 / 6.0);
        assert!(point_in_tetrahedron(vec3(0.1, 0.1, 0.1), &t, 0.0));
        assert!(!point_in_tetrahedron(vec3(0.5, 0.5, 0.5), &t, 0.0));
    }

    #[test]
    fn symmetric_eigenvalues_diagonalizable() {
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]];
        let e = symmetric_eigenvalues_3x3(m);
        assert_relative_eq!(e[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(e[1], 3.0, epsilon = 1e-12);
        assert_relative_eq!(e[2], 5.0, epsilon = 1e-12);
    }
}
