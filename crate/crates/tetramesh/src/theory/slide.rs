//! Worst-case angle envelopes when disk corners slide along tetrahedron edges.
//!
//! With corners at fractions (k, l, m, n, p, q) in [1/2 - t, 1/2 + t] of their
//! edges, the mesh angles are no longer fixed; this searches the parameter box
//! for the extreme angles over all elementary disks with the production
//! diagonal choices. Deterministic grid search with local refinement.

use super::DiagonalChoice;
use crate::geom::{triangle_angles_deg, Vec3};
use crate::tiling::{GoldbergShape, MID_EDGE};

/// The triangles present in a mesh at shape `a` with the default diagonal
/// rule, as (midpoint label, midpoint label, midpoint label) triples.
fn disk_triangles(a: f64) -> Vec<[usize; 3]> {
    // Labels: K=0, L=1, M=2, N=3, P=4, Q=5.
    let mut tris = vec![
        [0, 1, 2], // KLM
        [0, 3, 5], // KNQ
        [1, 3, 4], // LNP
        [2, 4, 5], // MPQ
        [2, 5, 3], // LMNQ diagonal MN: MQN
        [3, 1, 2], // NLM
        [2, 4, 3], // KMPN diagonal MN: MPN
        [3, 0, 2], // NKM
    ];
    match DiagonalChoice::for_shape(a) {
        DiagonalChoice::Lq => {
            tris.push([1, 4, 5]); // LPQ
            tris.push([5, 0, 1]); // QKL
        }
        DiagonalChoice::Kp => {
            tris.push([0, 1, 4]); // KLP
            tris.push([4, 5, 0]); // PQK
        }
    }
    tris
}

/// Corner position for slide fraction `s` on the edge of midpoint label `m`.
fn corner(verts: &[Vec3; 4], label: usize, s: f64) -> Vec3 {
    let (i, j) = MID_EDGE[label];
    verts[i] + (verts[j] - verts[i]) * s
}

/// Extremize (min or max) the angles of one disk triangle over the slide box.
fn optimize_triangle(
    verts: &[Vec3; 4],
    labels: [usize; 3],
    lo: f64,
    hi: f64,
    maximize: bool,
    density: usize,
    refine_steps: usize,
) -> f64 {
    let eval = |s: [f64; 3]| -> f64 {
        let t = [
            corner(verts, labels[0], s[0]),
            corner(verts, labels[1], s[1]),
            corner(verts, labels[2], s[2]),
        ];
        let angles = triangle_angles_deg(t[0], t[1], t[2]);
        if maximize {
            angles.into_iter().fold(f64::NEG_INFINITY, f64::max)
        } else {
            angles.into_iter().fold(f64::INFINITY, f64::min)
        }
    };

    let mut lo3 = [lo; 3];
    let mut hi3 = [hi; 3];
    let mut best_val = if maximize { f64::NEG_INFINITY } else { f64::INFINITY };
    let mut best_s = [0.5; 3];
    for _ in 0..=refine_steps {
        for i0 in 0..=density {
            for i1 in 0..=density {
                for i2 in 0..=density {
                    let s = [
                        lo3[0] + (hi3[0] - lo3[0]) * i0 as f64 / density as f64,
                        lo3[1] + (hi3[1] - lo3[1]) * i1 as f64 / density as f64,
                        lo3[2] + (hi3[2] - lo3[2]) * i2 as f64 / density as f64,
                    ];
                    let v = eval(s);
                    if (maximize && v > best_val) || (!maximize && v < best_val) {
                        best_val = v;
                        best_s = s;
                    }
                }
            }
        }
        // Shrink to 1.5 cells around the best point.
        for i in 0..3 {
            let span = 1.5 * (hi3[i] - lo3[i]) / density as f64;
            lo3[i] = (best_s[i] - span).max(lo);
            hi3[i] = (best_s[i] + span).min(hi);
        }
    }
    best_val
}

/// Worst-case (minimum, maximum) mesh angle in degrees over all slide
/// positions in [1/2 - t, 1/2 + t] on every edge, for shape parameter `a`.
pub fn slid_worst_case(a: f64, t: f64) -> (f64, f64) {
    let shape = GoldbergShape { a, e: 1.0 };
    let verts = shape.canonical_vertices();
    let lo = 0.5 - t;
    let hi = 0.5 + t;
    let mut min_angle = f64::INFINITY;
    let mut max_angle = f64::NEG_INFINITY;
    for labels in disk_triangles(a) {
        min_angle = min_angle.min(optimize_triangle(&verts, labels, lo, hi, false, 12, 6));
        max_angle = max_angle.max(optimize_triangle(&verts, labels, lo, hi, true, 12, 6));
    }
    (min_angle, max_angle)
}
