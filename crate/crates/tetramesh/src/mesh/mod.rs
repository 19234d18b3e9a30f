//! Indexed triangle mesh: deduplicated vertices, oriented triangles,
//! provenance, topology analysis, and OBJ/PLY output.

mod topology;
mod io;

pub use io::{fmt_g9, obj_string, ply_string, write_mesh, write_obj, write_ply, MeshFormat};
pub use topology::{analyze_topology, TopologyReport};

use crate::error::{Error, Result};
use crate::geom::Vec3;
use std::collections::HashMap;

/// Integer lattice coordinates in units of (e/4, sqrt3*e/4, a*e/2).
///
/// All tetrahedron vertices and edge midpoints of the tiling have exact
/// integer coordinates in these units, so welding by key (computed from
/// lattice indices, never from floats) is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeKey {
    pub ix: i64,
    pub iy: i64,
    pub iz: i64,
}

/// One input triangle for mesh assembly.
#[derive(Debug, Clone, Copy)]
pub struct RawTriangle {
    pub positions: [Vec3; 3],
    pub keys: [Option<LatticeKey>; 3],
    /// Originating tetrahedron (enumeration ordinal); drives output ordering.
    pub source: u64,
    /// Elementary-disk slot within the source tetrahedron (1..=6).
    pub slot: u8,
}

#[derive(Debug, Clone, Default)]
pub struct IndexedMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
    /// Per-vertex lattice key when the vertex came from the lattice.
    pub vertex_keys: Vec<Option<LatticeKey>>,
    /// Per-triangle (source tetrahedron id, disk slot).
    pub triangle_sources: Vec<(u64, u8)>,
}

impl IndexedMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_positions(&self, t: usize) -> [Vec3; 3] {
        let [i, j, k] = self.triangles[t];
        [
            self.vertices[i as usize],
            self.vertices[j as usize],
            self.vertices[k as usize],
        ]
    }

    /// Undirected edges with incident-triangle counts.
    pub fn edge_counts(&self) -> HashMap<(u32, u32), u32> {
        let mut edges = HashMap::new();
        for t in &self.triangles {
            for (i, j) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (i.min(j), i.max(j));
                *edges.entry(key).or_insert(0) += 1;
            }
        }
        edges
    }

    /// True when every edge with two incident triangles is traversed once in
    /// each direction.
    pub fn orientation_consistent(&self) -> bool {
        let mut directed: HashMap<(u32, u32), i32> = HashMap::new();
        for t in &self.triangles {
            for (i, j) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (i.min(j), i.max(j));
                *directed.entry(key).or_insert(0) += if i < j { 1 } else { -1 };
            }
        }
        directed.values().all(|net| net.abs() <= 1)
    }
}

/// Assemble an indexed mesh from raw triangles.
///
/// Vertices are deduplicated by lattice key when present, otherwise by exact
/// coordinate equality. Triangles are ordered by (source id, slot); vertex
/// indices are assigned in first-use order, so the result is deterministic
/// regardless of how the raw triangles were produced.
pub fn build_mesh(mut raw: Vec<RawTriangle>) -> Result<IndexedMesh> {
    raw.sort_by_key(|t| (t.source, t.slot));

    let mut mesh = IndexedMesh::default();
    let mut by_key: HashMap<LatticeKey, u32> = HashMap::new();
    let mut by_bits: HashMap<[u64; 3], u32> = HashMap::new();

    for tri in &raw {
        let mut idx = [0u32; 3];
        for v in 0..3 {
            let pos = tri.positions[v];
            if !pos.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite vertex position {pos:?} from source {}",
                    tri.source
                )));
            }
            idx[v] = match tri.keys[v] {
                Some(key) => *by_key.entry(key).or_insert_with(|| {
                    mesh.vertices.push(pos);
                    mesh.vertex_keys.push(Some(key));
                    (mesh.vertices.len() - 1) as u32
                }),
                None => *by_bits.entry(pos.bits()).or_insert_with(|| {
                    mesh.vertices.push(pos);
                    mesh.vertex_keys.push(None);
                    (mesh.vertices.len() - 1) as u32
                }),
            };
        }
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            if idx[i] == idx[j] {
                let k = tri.keys[i].unwrap_or(LatticeKey { ix: 0, iy: 0, iz: 0 });
                return Err(Error::DegenerateTriangle {
                    source_id: tri.source,
                    i,
                    j,
                    kx: k.ix,
                    ky: k.iy,
                    kz: k.iz,
                });
            }
        }
        mesh.triangles.push(idx);
        mesh.triangle_sources.push((tri.source, tri.slot));
    }
    Ok(mesh)
}
