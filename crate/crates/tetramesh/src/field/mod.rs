//! Implicit scalar fields f: R^3 -> R whose zero set is the surface to mesh.
//!
//! Built-in surfaces carry analytic gradients; parsed expression fields use
//! central finite differences with a step tied to the bounding-box diagonal.

pub mod expr;

use crate::error::{Error, Result};
use crate::geom::{vec3, Aabb, Vec3};
use expr::Expr;

/// Gradient magnitudes below this are treated as a critical point.
pub const GRADIENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum FieldKind {
    /// |p - c|^2 - r^2
    Sphere { radius: f64, center: Vec3 },
    /// (sqrt(x^2 + y^2) - R)^2 + z^2 - r^2, centered at `center`
    Torus { major: f64, minor: f64, center: Vec3 },
    /// ((X^2 + Y^2)^2 - X^2 + Y^2)^2 + Z^2 - level with (X,Y,Z) = (p - c) / scale.
    /// The raw level set spans roughly [-1.07, 1.07]; `scale` shrinks it so the
    /// surface fits inside a unit box.
    Genus2 { level: f64, scale: f64, center: Vec3 },
    /// Parsed arithmetic expression of x, y, z.
    Expression { ast: Expr, source: String },
}

#[derive(Debug, Clone)]
pub struct ScalarField {
    kind: FieldKind,
    /// Box the field is expected to be evaluated on; fixes the finite-difference step.
    bounds: Aabb,
}

impl ScalarField {
    pub fn sphere(radius: f64, center: Vec3) -> Result<ScalarField> {
        if !(radius > 0.0) {
            return Err(Error::InvalidField(format!("sphere radius must be > 0, got {radius}")));
        }
        Ok(ScalarField {
            kind: FieldKind::Sphere { radius, center },
            bounds: Aabb::unit_cube(),
        })
    }

    pub fn torus(major: f64, minor: f64, center: Vec3) -> Result<ScalarField> {
        if !(minor > 0.0) || !(major > minor) {
            return Err(Error::InvalidField(format!(
                "torus radii must satisfy R > r > 0, got R = {major}, r = {minor}"
            )));
        }
        Ok(ScalarField {
            kind: FieldKind::Torus { major, minor, center },
            bounds: Aabb::unit_cube(),
        })
    }

    pub fn genus2(level: f64, scale: f64, center: Vec3) -> Result<ScalarField> {
        if !(level > 0.0) || !(scale > 0.0) {
            return Err(Error::InvalidField(format!(
                "genus2 level and scale must be > 0, got level = {level}, scale = {scale}"
            )));
        }
        Ok(ScalarField {
            kind: FieldKind::Genus2 { level, scale, center },
            bounds: Aabb::unit_cube(),
        })
    }

    pub fn expression(text: &str) -> Result<ScalarField> {
        let ast = expr::parse(text)?;
        Ok(ScalarField {
            kind: FieldKind::Expression { ast, source: text.to_string() },
            bounds: Aabb::unit_cube(),
        })
    }

    pub fn with_bounds(mut self, bounds: Aabb) -> ScalarField {
        self.bounds = bounds;
        self
    }

    pub fn bounds(&self) -> Aabb {
        self.bounds
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// Short name for reports.
    pub fn name(&self) -> String {
        match &self.kind {
            FieldKind::Sphere { .. } => "sphere".into(),
            FieldKind::Torus { .. } => "torus".into(),
            FieldKind::Genus2 { .. } => "genus2".into(),
            FieldKind::Expression { source, .. } => format!("expr({source})"),
        }
    }

    pub fn eval(&self, p: Vec3) -> Result<f64> {
        let v = match &self.kind {
            FieldKind::Sphere { radius, center } => {
                (p - *center).norm_squared() - radius * radius
            }
            FieldKind::Torus { major, minor, center } => {
                let q = p - *center;
                let u = (q.x * q.x + q.y * q.y).sqrt();
                let d = u - major;
                d * d + q.z * q.z - minor * minor
            }
            FieldKind::Genus2 { level, scale, center } => {
                let q = (p - *center) / *scale;
                let g = (q.x * q.x + q.y * q.y).powi(2) - q.x * q.x + q.y * q.y;
                g * g + q.z * q.z - level
            }
            FieldKind::Expression { ast, .. } => ast.eval(p)?,
        };
        if !v.is_finite() {
            return Err(Error::FieldEval {
                x: p.x,
                y: p.y,
                z: p.z,
                message: format!("non-finite value {v}"),
            });
        }
        Ok(v)
    }

    /// Raw gradient: analytic for builtins, central differences for expressions.
    pub fn grad(&self, p: Vec3) -> Result<Vec3> {
        Ok(match &self.kind {
            FieldKind::Sphere { center, .. } => (p - *center) * 2.0,
            FieldKind::Torus { major, center, .. } => {
                let q = p - *center;
                let u = (q.x * q.x + q.y * q.y).sqrt();
                if u < 1e-300 {
                    // On the axis the radial term is not differentiable; only the
                    // z-component survives. The surface never comes near the axis.
                    vec3(0.0, 0.0, 2.0 * q.z)
                } else {
                    let s = 2.0 * (u - major) / u;
                    vec3(s * q.x, s * q.y, 2.0 * q.z)
                }
            }
            FieldKind::Genus2 { scale, center, .. } => {
                let q = (p - *center) / *scale;
                let r2 = q.x * q.x + q.y * q.y;
                let g = r2 * r2 - q.x * q.x + q.y * q.y;
                let gx = 4.0 * q.x * r2 - 2.0 * q.x;
                let gy = 4.0 * q.y * r2 + 2.0 * q.y;
                vec3(2.0 * g * gx, 2.0 * g * gy, 2.0 * q.z) / *scale
            }
            FieldKind::Expression { ast, .. } => {
                let h = 1e-6 * self.bounds.diagonal();
                let d = |dx: Vec3| -> Result<f64> {
                    Ok((ast.eval(p + dx)? - ast.eval(p - dx)?) / (2.0 * h))
                };
                vec3(
                    d(vec3(h, 0.0, 0.0))?,
                    d(vec3(0.0, h, 0.0))?,
                    d(vec3(0.0, 0.0, h))?,
                )
            }
        })
    }
}

/// Gradient that rejects (near-)critical points: callers about to project along
/// the gradient must not divide by a vanishing magnitude.
pub fn grad_of(field: &ScalarField, p: Vec3) -> Result<Vec3> {
    let g = field.grad(p)?;
    if g.norm() < GRADIENT_EPS {
        return Err(Error::VanishingGradient {
            x: p.x,
            y: p.y,
            z: p.z,
            magnitude: g.norm(),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn genus2_value_at_origin() {
        // Unscaled, centered at origin: the level-set formula evaluated directly.
        let f = ScalarField::genus2(0.028, 1.0, Vec3::ZERO).unwrap();
        assert_relative_eq!(f.eval(Vec3::ZERO).unwrap(), -0.028, epsilon = 1e-15);
    }

    #[test]
    fn sphere_gradient_analytic() {
        let f = ScalarField::sphere(1.0, Vec3::ZERO).unwrap();
        let g = grad_of(&f, vec3(1.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(g.x, 2.0);
        assert_relative_eq!(g.y, 0.0);
        assert_relative_eq!(g.z, 0.0);
    }

    #[test]
    fn torus_point_on_surface() {
        let f = ScalarField::torus(2.0, 1.0, Vec3::ZERO).unwrap();
        assert_relative_eq!(f.eval(vec3(2.0, 0.0, 1.0)).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sphere_center_is_critical_point() {
        let f = ScalarField::sphere(1.0, Vec3::ZERO).unwrap();
        assert!(matches!(
            grad_of(&f, Vec3::ZERO),
            Err(Error::VanishingGradient { .. })
        ));
    }

    #[test]
    fn expression_gradient_of_square() {
        let f = ScalarField::expression("x^2").unwrap();
        let g = grad_of(&f, vec3(1.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(g.x, 2.0, epsilon = 1e-6);
        assert_relative_eq!(g.y, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ScalarField::sphere(0.0, Vec3::ZERO).is_err());
        assert!(ScalarField::torus(1.0, 1.0, Vec3::ZERO).is_err());
        assert!(ScalarField::torus(1.0, -0.5, Vec3::ZERO).is_err());
    }

    /// Analytic gradients must match central finite differences at random
    /// non-critical points.
    #[test]
    fn builtin_gradients_match_finite_differences() {
        let fields = [
            ScalarField::sphere(0.4, vec3(0.5, 0.5, 0.5)).unwrap(),
            ScalarField::torus(0.3, 0.12, vec3(0.5, 0.5, 0.5)).unwrap(),
            ScalarField::genus2(0.028, 0.35, vec3(0.5, 0.5, 0.5)).unwrap(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for f in &fields {
            let mut checked = 0;
            while checked < 100 {
                let p = vec3(
                    rng.random_range(0.05..0.95),
                    rng.random_range(0.05..0.95),
                    rng.random_range(0.05..0.95),
                );
                let g = f.grad(p).unwrap();
                if g.norm() < 1e-3 {
                    continue; // skip near-critical points
                }
                let h = 1e-6;
                let fd = vec3(
                    (f.eval(p + vec3(h, 0.0, 0.0)).unwrap()
                        - f.eval(p - vec3(h, 0.0, 0.0)).unwrap())
                        / (2.0 * h),
                    (f.eval(p + vec3(0.0, h, 0.0)).unwrap()
                        - f.eval(p - vec3(0.0, h, 0.0)).unwrap())
                        / (2.0 * h),
                    (f.eval(p + vec3(0.0, 0.0, h)).unwrap()
                        - f.eval(p - vec3(0.0, 0.0, h)).unwrap())
                        / (2.0 * h),
                );
                let rel = (g - fd).norm() / g.norm();
                assert!(
                    rel < 1e-5,
                    "{}: gradient mismatch at {p:?}: analytic {g:?} vs fd {fd:?} (rel {rel:.2e})",
                    f.name()
                );
                checked += 1;
            }
        }
    }
}
