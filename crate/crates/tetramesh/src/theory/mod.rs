//! Closed-form angle functions of the tiling tetrahedron and the numerical
//! optimizations that pin down the guaranteed angle intervals: optimal shape
//! parameters, the five-parameter tetrahedron search, slide worst cases, and
//! the rotation-projection primitive.
//!
//! All optimizations run on fixed deterministic grids with a fixed-iteration
//! golden-section refinement, so results are bit-reproducible.

mod search;
mod slide;

pub use search::{shape_space_search, score_tetrahedron, ShapePoint, SearchObjective};
pub use slide::slid_worst_case;

use crate::error::{Error, Result};
use crate::geom::{angle_between_deg, vec3, Vec3};
use crate::tiling::{GoldbergShape, SQRT3};

/// Shape parameter where the KLPQ quadrilateral is a square; also the shape
/// used by the gradient-projected pipeline.
pub const A0: f64 = std::f64::consts::SQRT_2 / 4.0;
/// Minimizes the maximum mesh angle (LQ branch).
pub fn a1() -> f64 {
    0.25 * ((19.0 - 3.0 * 33.0f64.sqrt()) / 2.0).sqrt()
}
/// Maximizes the minimum mesh angle on the LQ branch.
pub fn a2() -> f64 {
    1.0 / 11.0f64.sqrt()
}
/// Maximizes the minimum mesh angle overall (KP branch).
pub fn a3() -> f64 {
    SQRT3 / 4.0
}
/// Minimizes the maximum mesh angle on the KP branch.
pub fn a4() -> f64 {
    ((3.0 * 17.0f64.sqrt() - 5.0) / 32.0).sqrt()
}

fn acos_deg(c: f64) -> f64 {
    c.clamp(-1.0, 1.0).acos().to_degrees()
}

/// Which diagonal splits the KLPQ quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalChoice {
    /// Diagonal KP (used for a > sqrt2/4).
    Kp,
    /// Diagonal LQ (used for a <= sqrt2/4).
    Lq,
}

impl DiagonalChoice {
    pub fn for_shape(a: f64) -> DiagonalChoice {
        if a <= A0 {
            DiagonalChoice::Lq
        } else {
            DiagonalChoice::Kp
        }
    }
}

/// The named angles of the elementary-disk triangles as closed-form functions
/// of the shape parameter, in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleProfile {
    pub a: f64,
    pub diagonal: DiagonalChoice,
    /// Triangle KLM (congruent to KNQ): apex angle at M and base angle at K = L.
    pub kml: f64,
    pub klm: f64,
    /// Triangle LNP (congruent to MPQ).
    pub lpn: f64,
    pub nlp: f64,
    pub lnp: f64,
    /// KLPQ piece: (KLP, LKP = LPK) for diagonal KP, (LKQ, KLQ = KQL) for LQ.
    pub quad_apex: f64,
    pub quad_base: f64,
}

impl AngleProfile {
    /// All distinct angle values occurring in a mesh built with this profile.
    pub fn all_angles(&self) -> [f64; 7] {
        [
            self.kml,
            self.klm,
            self.lpn,
            self.nlp,
            self.lnp,
            self.quad_apex,
            self.quad_base,
        ]
    }

    pub fn min_angle(&self) -> f64 {
        self.all_angles().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_angle(&self) -> f64 {
        self.all_angles().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Edge lengths present in the mesh (unit scale): 3a/2, b/2, c/2 and the
    /// chosen KLPQ diagonal.
    pub fn edge_lengths(&self) -> [f64; 4] {
        let a = self.a;
        let b = (a * a + 1.0).sqrt();
        let c = (4.0 * a * a + 1.0).sqrt();
        let diag = match self.diagonal {
            DiagonalChoice::Kp => SQRT3 / 2.0,
            DiagonalChoice::Lq => (4.0 * a * a + 0.25).sqrt(),
        };
        [1.5 * a, 0.5 * b, 0.5 * c, diag]
    }

    pub fn edge_ratio(&self) -> f64 {
        let e = self.edge_lengths();
        let min = e.into_iter().fold(f64::INFINITY, f64::min);
        let max = e.into_iter().fold(f64::NEG_INFINITY, f64::max);
        max / min
    }
}

/// Evaluate the closed-form angle profile at shape parameter `a`.
pub fn angle_profile(a: f64, diagonal: DiagonalChoice) -> AngleProfile {
    let a2 = a * a;
    let kml = acos_deg((1.0 - 2.0 * a2) / (2.0 * a2 + 2.0));
    let klm = acos_deg((4.0 * a2 + 1.0).sqrt() / (2.0 * (a2 + 1.0).sqrt()));
    let lpn = acos_deg((1.0 - 2.0 * a2) / ((a2 + 1.0).sqrt() * (4.0 * a2 + 1.0).sqrt()));
    let nlp = acos_deg(2.0 * a / (4.0 * a2 + 1.0).sqrt());
    let lnp = acos_deg(a / (a2 + 1.0).sqrt());
    let (quad_apex, quad_base) = match diagonal {
        DiagonalChoice::Kp => (
            acos_deg((8.0 * a2 - 1.0) / (8.0 * a2 + 2.0)),
            acos_deg(SQRT3 / (2.0 * (4.0 * a2 + 1.0).sqrt())),
        ),
        DiagonalChoice::Lq => (
            acos_deg((1.0 - 8.0 * a2) / (8.0 * a2 + 2.0)),
            acos_deg((16.0 * a2 + 1.0).sqrt() / (2.0 * (4.0 * a2 + 1.0).sqrt())),
        ),
    };
    AngleProfile { a, diagonal, kml, klm, lpn, nlp, lnp, quad_apex, quad_base }
}

/// Mesh angle interval guaranteed for shape parameter `a` with the default
/// diagonal rule.
pub fn midnormal_interval(a: f64) -> (f64, f64) {
    let p = angle_profile(a, DiagonalChoice::for_shape(a));
    (p.min_angle(), p.max_angle())
}

/// The six dihedral angles of the tiling tetrahedron, in degrees, keyed by
/// edge: AB, AC, AD, BC, BD, CD.
pub fn dihedral_profile(a: f64) -> [f64; 6] {
    let slant = acos_deg(3.0 * a / (3.0 + 12.0 * a * a).sqrt());
    let cd = acos_deg((1.0 - 2.0 * a * a) / (1.0 + 4.0 * a * a));
    [60.0, slant, 90.0, 90.0, slant, cd]
}

/// Dihedral angles computed numerically from face normals, same order as
/// [`dihedral_profile`]. Used as an independent oracle.
pub fn dihedral_from_normals(a: f64) -> [f64; 6] {
    let shape = GoldbergShape { a, e: 1.0 };
    let v = shape.canonical_vertices();
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut out = [0.0; 6];
    for (n, &(i, j)) in edges.iter().enumerate() {
        let others: Vec<usize> = (0..4).filter(|k| *k != i && *k != j).collect();
        let axis = (v[j] - v[i]).normalized();
        // Perpendiculars from the edge into each adjacent face.
        let mut dirs = [Vec3::ZERO; 2];
        for (s, &k) in others.iter().enumerate() {
            let u = v[k] - v[i];
            dirs[s] = u - axis * u.dot(axis);
        }
        out[n] = angle_between_deg(dirs[0], dirs[1]);
    }
    out
}

/// Is the tetrahedron non-obtuse (all dihedral angles <= 90 degrees)?
/// The CD dihedral crosses 90 degrees at a = sqrt2/2.
pub fn is_nonobtuse(a: f64) -> bool {
    dihedral_profile(a).into_iter().all(|d| d <= 90.0 + 1e-12)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Maximize the minimum mesh angle.
    MaximinAngle,
    /// Minimize the maximum mesh angle.
    MinimaxAngle,
}

/// Deterministic golden-section search for the maximum of `f` on [lo, hi],
/// with a fixed iteration count.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Optimize the shape parameter on one diagonal branch.
///
/// The angle envelope is scanned on a fixed grid to bracket the extremum of
/// the piecewise-smooth min/max envelope, then refined by golden section with
/// a fixed iteration count (80). Returns the optimal parameter and the angle
/// interval achieved there.
pub fn optimize_shape_param(
    objective: Objective,
    diagonal: DiagonalChoice,
) -> (f64, (f64, f64)) {
    // Branch domains where the triangulation stays acute-or-better.
    let (lo, hi) = match diagonal {
        DiagonalChoice::Kp => (A0, std::f64::consts::SQRT_2 / 2.0),
        DiagonalChoice::Lq => (1e-3, A0),
    };
    let score = |a: f64| -> f64 {
        let p = angle_profile(a, diagonal);
        match objective {
            Objective::MaximinAngle => p.min_angle(),
            Objective::MinimaxAngle => -p.max_angle(),
        }
    };
    const GRID: usize = 2000;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=GRID {
        let a = lo + (hi - lo) * i as f64 / GRID as f64;
        let s = score(a);
        if s > best {
            best = s;
            best_i = i;
        }
    }
    let bracket_lo = lo + (hi - lo) * best_i.saturating_sub(1) as f64 / GRID as f64;
    let bracket_hi = lo + (hi - lo) * (best_i + 1).min(GRID) as f64 / GRID as f64;
    let a_star = golden_section_max(score, bracket_lo, bracket_hi, 80);
    let p = angle_profile(a_star, diagonal);
    (a_star, (p.min_angle(), p.max_angle()))
}

/// Angle between `v = (v1, 1)` and `w` after rotating the plane around the
/// x-axis by `theta` and projecting back: the projected vectors are
/// (v1, cos theta) and (w1, w2 cos theta). Returns degrees.
pub fn projected_angle(v1: f64, w: [f64; 2], theta: f64) -> Result<f64> {
    if !(v1 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "v must lie in the open first quadrant: v1 = {v1}"
        )));
    }
    if w[0] == 0.0 && w[1] == 0.0 {
        return Err(Error::InvalidArgument("w must be nonzero".into()));
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta out of [0, pi/2]: {theta}")));
    }
    let ct = theta.cos();
    let vp = vec3(v1, ct, 0.0);
    let wp = vec3(w[0], w[1] * ct, 0.0);
    if wp.norm() < 1e-300 || vp.norm() < 1e-300 {
        return Err(Error::InvalidArgument(
            "projection degenerate: projected vector vanishes at theta = pi/2".into(),
        ));
    }
    Ok(angle_between_deg(vp, wp))
}

/// Derivative of cos(alpha(theta)) for `w` in the open first quadrant with
/// w2 normalized to 1 (the closed-form expression used to locate interior
/// critical points of the projected angle).
pub fn projected_angle_cos_derivative(v1: f64, w1: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let c2 = c * c;
    s * c * (v1 - w1).powi(2) * (v1 * w1 - c2)
        / ((v1 * v1 + c2).powf(1.5) * (w1 * w1 + c2).powf(1.5))
}

/// The two projected-angle cosines (as functions of the shape parameter) whose
/// crossing pins the best shape for the gradient-projected pipeline: the
/// projections of angle BCD and angle ACB onto the plane through A, C, D.
pub fn besta_cosines(a: f64) -> (f64, f64) {
    let a2 = a * a;
    let denom = ((a2 + 1.0) * (172.0 * a2 * a2 + (59.0 - 36.0 * (12.0 * a2 + 3.0).sqrt()) * a2 + 4.0)
        / (4.0 * a2 + 1.0))
        .sqrt();
    ((4.0 * a2 + 1.0) / denom, (2.0 - 4.0 * a2) / denom)
}

/// The two projected angles of [`besta_cosines`], in degrees.
pub fn besta_angles(a: f64) -> (f64, f64) {
    let (c1, c2) = besta_cosines(a);
    (acos_deg(c1), acos_deg(c2))
}

/// Locate the crossing of the two projected-angle functions by bisection on
/// their difference and return (a*, common angle in degrees).
pub fn besta_crossing() -> (f64, f64) {
    let diff = |a: f64| {
        let (c1, c2) = besta_cosines(a);
        c1 - c2
    };
    let (mut lo, mut hi) = (0.2, 0.5);
    debug_assert!(diff(lo) < 0.0 && diff(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if diff(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a_star = 0.5 * (lo + hi);
    let (c1, _) = besta_cosines(a_star);
    (a_star, acos_deg(c1))
}

/// The upper bound on the best achievable minimum angle for the
/// gradient-projected pipeline: arccos(4 / sqrt(75 - 36*sqrt2)).
pub fn besta_bound_deg() -> f64 {
    acos_deg(4.0 / (75.0 - 36.0 * std::f64::consts::SQRT_2).sqrt())
}

/// Positions of the six midpoints K, L, M, N, P, Q of the canonical
/// tetrahedron at unit scale, directly from the coordinate table.
pub fn canonical_midpoints(a: f64) -> [Vec3; 6] {
    [
        vec3(0.0, 0.0, 1.5 * a),
        vec3(0.5, 0.0, 0.5 * a),
        vec3(0.25, SQRT3 / 4.0, a),
        vec3(0.5, 0.0, 2.0 * a),
        vec3(0.75, SQRT3 / 4.0, 1.5 * a),
        vec3(0.25, SQRT3 / 4.0, 2.5 * a),
    ]
}

/// CSV rows of all named angles versus the shape parameter, for plotting the
/// angle-envelope curves. Columns: a, kml, klm, lpn, nlp, lnp, quad_apex,
/// quad_base.
pub fn angle_curve_csv(diagonal: DiagonalChoice, samples: usize) -> String {
    let (lo, hi) = match diagonal {
        DiagonalChoice::Kp => (A0, std::f64::consts::SQRT_2 / 2.0),
        DiagonalChoice::Lq => (0.01, A0),
    };
    let mut out = String::from("a,kml,klm,lpn,nlp,lnp,quad_apex,quad_base\n");
    for i in 0..=samples {
        let a = lo + (hi - lo) * i as f64 / samples as f64;
        let p = angle_profile(a, diagonal);
        out.push_str(&format!(
            "{a:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            p.kml, p.klm, p.lpn, p.nlp, p.lnp, p.quad_apex, p.quad_base
        ));
    }
    out
}

/// CSV rows of the two projected-angle functions versus the shape parameter.
pub fn projected_curve_csv(samples: usize) -> String {
    let (lo, hi) = (0.05, std::f64::consts::SQRT_2 / 2.0);
    let mut out = String::from("a,angle_bcd_proj,angle_acb_proj\n");
    for i in 0..=samples {
        let a = lo + (hi - lo) * i as f64 / samples as f64;
        let (g1, g2) = besta_angles(a);
        out.push_str(&format!("{a:.6},{g1:.6},{g2:.6}\n"));
    }
    out
}
