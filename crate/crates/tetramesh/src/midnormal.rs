//! Sign classification of tiling tetrahedra and emission of elementary
//! normal disks through edge midpoints.
//!
//! Each tetrahedron's four vertex signs select an elementary disk: a triangle
//! separating one vertex from three, or a quadrilateral separating two from
//! two, split into two triangles by a fixed diagonal. Disk corners sit at
//! edge midpoints, so the output mesh welds exactly on lattice keys.

use crate::error::{Error, Result};
use crate::exec::{map_chunks, resolve_workers};
use crate::field::ScalarField;
use crate::geom::{Aabb, Vec3};
use crate::mesh::{build_mesh, IndexedMesh, LatticeKey, RawTriangle};
use crate::tiling::{enumerate_ids, GoldbergShape, PlacedTetra, MID_EDGE};
use std::collections::HashMap;

/// Diagonal split rule for the KLPQ quadrilateral flips at this shape value,
/// where the quadrilateral is a square.
pub const KLPQ_DIAGONAL_SWITCH: f64 = std::f64::consts::SQRT_2 / 4.0;

/// Signs of f at the four tetrahedron vertices A, B, C, D; bit i set means
/// f < 0 at vertex i. Values that are exactly zero count as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern(pub u8);

impl SignPattern {
    pub fn negative_count(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_negative(&self, vertex: usize) -> bool {
        self.0 & (1 << vertex) != 0
    }

    pub fn flipped(&self) -> SignPattern {
        SignPattern(!self.0 & 0xF)
    }
}

/// Classify four samples of f. Zero is coerced to positive; NaN is an error.
pub fn classify(values: [f64; 4]) -> Result<SignPattern> {
    let mut mask = 0u8;
    for (i, v) in values.iter().enumerate() {
        if v.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "NaN field value at tetrahedron vertex {i}"
            )));
        }
        if *v < 0.0 {
            mask |= 1 << i;
        }
    }
    Ok(SignPattern(mask))
}

/// Midpoint label indices: K, L, M, N, P, Q.
pub const K: usize = 0;
pub const L: usize = 1;
pub const M: usize = 2;
pub const N: usize = 3;
pub const P: usize = 4;
pub const Q: usize = 5;

/// The elementary disk selected by a sign pattern, as triangles of midpoint
/// labels paired with their output slot (triangle disks 1..=4, quad pieces 5
/// and 6).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Disk {
    None,
    Triangle([usize; 3], u8),
    Quad([[usize; 3]; 2]),
}

impl Disk {
    pub fn pieces(&self) -> Vec<([usize; 3], u8)> {
        match self {
            Disk::None => vec![],
            Disk::Triangle(tri, slot) => vec![(*tri, *slot)],
            Disk::Quad([a, b]) => vec![(*a, 5), (*b, 6)],
        }
    }
}

/// The disk table. Patterns and their complements select the same disk; the
/// KLPQ quadrilateral splits along LQ for a <= sqrt2/4 and along KP otherwise.
pub fn disk_for(pattern: SignPattern, a: f64) -> Disk {
    let mask = pattern.0 & 0xF;
    let canonical = if mask.count_ones() <= 2 { mask } else { !mask & 0xF };
    match canonical {
        0b0000 => Disk::None,
        // One vertex separated from three.
        0b0001 => Disk::Triangle([K, L, M], 1), // A
        0b0010 => Disk::Triangle([K, N, Q], 2), // B
        0b0100 => Disk::Triangle([L, N, P], 3), // C
        0b1000 => Disk::Triangle([M, P, Q], 4), // D
        // {A,B} | {C,D}: quadrilateral L-M-Q-N, diagonal MN.
        0b0011 => Disk::Quad([[M, Q, N], [N, L, M]]),
        // {A,C} | {B,D}: quadrilateral K-M-P-N, diagonal MN.
        0b0101 => Disk::Quad([[M, P, N], [N, K, M]]),
        // {A,D} | {B,C}: quadrilateral K-L-P-Q, diagonal LQ or KP.
        0b1001 => {
            if a <= KLPQ_DIAGONAL_SWITCH {
                Disk::Quad([[L, P, Q], [Q, K, L]])
            } else {
                Disk::Quad([[K, L, P], [P, Q, K]])
            }
        }
        0b0110 => disk_for(SignPattern(0b1001), a),
        0b1010 => disk_for(SignPattern(0b0101), a),
        0b1100 => disk_for(SignPattern(0b0011), a),
        _ => unreachable!("canonical mask has at most two bits"),
    }
}

/// Where mesh vertices go on each cut edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexMode {
    /// Exact edge midpoints.
    Midpoint,
    /// Linear-interpolation root of f along the edge, clamped to move at most
    /// `t` of the edge length away from the midpoint.
    Slide { t: f64 },
}

pub(crate) struct NormalMesher<'a> {
    pub field: &'a ScalarField,
    pub shape: &'a GoldbergShape,
    pub mode: VertexMode,
}

impl NormalMesher<'_> {
    /// Emit raw triangles for one chunk of tetrahedron ids. `base` is the
    /// enumeration ordinal of the first id in the chunk.
    fn emit_chunk(
        &self,
        base: u64,
        ids: &[crate::tiling::TetraId],
    ) -> Result<Vec<RawTriangle>> {
        let mut cache: HashMap<LatticeKey, f64> = HashMap::new();
        let mut out = Vec::new();
        for (n, id) in ids.iter().enumerate() {
            let tet = PlacedTetra::new(*id);
            let vkeys = tet.vertex_keys();
            let vpos = vkeys.map(|k| self.shape.lattice_pos(k));
            let mut values = [0.0f64; 4];
            for i in 0..4 {
                values[i] = match cache.get(&vkeys[i]) {
                    Some(v) => *v,
                    None => {
                        let v = self.field.eval(vpos[i])?;
                        cache.insert(vkeys[i], v);
                        v
                    }
                };
            }
            let pattern = classify(values)?;
            let disk = disk_for(pattern, self.shape.a);
            for (labels, slot) in disk.pieces() {
                let mut keys = [None; 3];
                let mut mids = [Vec3::ZERO; 3];
                let mut positions = [Vec3::ZERO; 3];
                for (c, &label) in labels.iter().enumerate() {
                    let mid_key = tet.midpoint_key(label);
                    let mid = self.shape.lattice_pos(mid_key);
                    keys[c] = Some(mid_key);
                    mids[c] = mid;
                    positions[c] = match self.mode {
                        VertexMode::Midpoint => mid,
                        VertexMode::Slide { t } => {
                            let (i, j) = MID_EDGE[label];
                            // Canonical endpoint order so all tetrahedra sharing
                            // the edge compute bit-identical positions.
                            let (lo, hi) = if vkeys[i] <= vkeys[j] { (i, j) } else { (j, i) };
                            let (flo, fhi) = (values[lo], values[hi]);
                            let s = (flo / (flo - fhi)).clamp(0.5 - t, 0.5 + t);
                            mid + (vpos[hi] - vpos[lo]) * (s - 0.5)
                        }
                    };
                }
                // Orient so the right-hand normal points toward positive f:
                // the negative-side vertices must see the back of the triangle.
                let normal = (mids[1] - mids[0]).cross(mids[2] - mids[0]);
                let mut toward_negative = 0.0;
                for v in 0..4 {
                    if pattern.is_negative(v) {
                        toward_negative += normal.dot(vpos[v] - mids[0]);
                    }
                }
                let (mut keys, mut positions) = (keys, positions);
                if toward_negative > 0.0 {
                    keys.swap(1, 2);
                    positions.swap(1, 2);
                }
                out.push(RawTriangle { positions, keys, source: base + n as u64, slot });
            }
        }
        Ok(out)
    }

    pub fn run(&self, bbox: &Aabb, workers: usize) -> Result<IndexedMesh> {
        let ids = enumerate_ids(self.shape, bbox)?;
        let workers = resolve_workers(workers);
        let chunks: Vec<Result<Vec<RawTriangle>>> =
            map_chunks(&ids, workers, |base, slice| self.emit_chunk(base as u64, slice));
        let mut raw = Vec::new();
        for c in chunks {
            raw.extend(c?);
        }
        build_mesh(raw)
    }
}

/// Mesh the zero set of `field` with elementary disks through edge midpoints.
///
/// Triangles are wound so normals point toward increasing f. The result is a
/// closed manifold whenever the zero set is a closed surface strictly inside
/// `bbox` and the scale resolves its features; an empty mesh when the zero
/// set misses the box.
pub fn mid_normal(
    field: &ScalarField,
    shape: &GoldbergShape,
    bbox: &Aabb,
    workers: usize,
) -> Result<IndexedMesh> {
    NormalMesher { field, shape, mode: VertexMode::Midpoint }.run(bbox, workers)
}
