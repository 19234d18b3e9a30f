//! Topology metrics: Euler characteristic, manifold checks, components.

use super::IndexedMesh;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TopologyReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub is_closed_manifold: bool,
    /// Edges with incident-triangle count != 2.
    pub bad_edges: Vec<(u32, u32)>,
    /// Vertices whose link is not a single cycle.
    pub bad_vertices: Vec<u32>,
    pub component_count: usize,
}

/// Walk the triangle fan around every vertex and count everything.
/// Defects are reported, never thrown.
pub fn analyze_topology(mesh: &IndexedMesh) -> TopologyReport {
    let v = mesh.vertex_count();
    let f = mesh.triangle_count();
    let edges = mesh.edge_counts();
    let e = edges.len();

    let mut bad_edges: Vec<(u32, u32)> = edges
        .iter()
        .filter(|(_, &count)| count != 2)
        .map(|(&edge, _)| edge)
        .collect();
    bad_edges.sort_unstable();

    // Per-vertex link edges: triangle (v, a, b) contributes link edge a-b.
    let mut link: Vec<Vec<(u32, u32)>> = vec![Vec::new(); v];
    for t in &mesh.triangles {
        link[t[0] as usize].push((t[1], t[2]));
        link[t[1] as usize].push((t[2], t[0]));
        link[t[2] as usize].push((t[0], t[1]));
    }
    let mut bad_vertices = Vec::new();
    for (vi, arcs) in link.iter().enumerate() {
        if !link_is_single_cycle(arcs) {
            bad_vertices.push(vi as u32);
        }
    }

    // Components of the vertex graph under mesh edges.
    let mut uf = UnionFind::new(v);
    for (&(i, j), _) in &edges {
        uf.union(i as usize, j as usize);
    }
    let mut roots: Vec<usize> = (0..v).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let component_count = roots.len();

    TopologyReport {
        vertex_count: v,
        edge_count: e,
        face_count: f,
        euler_characteristic: v as i64 - e as i64 + f as i64,
        is_closed_manifold: !mesh.is_empty() && bad_edges.is_empty() && bad_vertices.is_empty(),
        bad_edges,
        bad_vertices,
        component_count,
    }
}

/// The arcs (a, b) around a vertex form a single closed cycle iff every
/// endpoint has degree exactly 2 and the arcs are connected, with as many
/// arcs as distinct endpoints.
fn link_is_single_cycle(arcs: &[(u32, u32)]) -> bool {
    if arcs.is_empty() {
        return false;
    }
    let mut degree: HashMap<u32, u32> = HashMap::new();
    for &(a, b) in arcs {
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return false;
    }
    if degree.len() != arcs.len() {
        return false;
    }
    // Connectivity: walk from the first arc.
    let mut adjacency: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(a, b) in arcs {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let start = arcs[0].0;
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for &y in &adjacency[&x] {
            if !seen.contains(&y) {
                stack.push(y);
            }
        }
    }
    seen.len() == degree.len()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::vec3;
    use crate::mesh::{build_mesh, RawTriangle};

    /// Boundary of a single tetrahedron: V=4, E=6, F=4, closed, chi = 2.
    #[test]
    fn tetrahedron_boundary() {
        let p = [
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
        ];
        // Outward-oriented faces.
        let faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
        let raw: Vec<RawTriangle> = faces
            .iter()
            .enumerate()
            .map(|(n, f)| RawTriangle {
                positions: [p[f[0]], p[f[1]], p[f[2]]],
                keys: [None, None, None],
                source: n as u64,
                slot: 1,
            })
            .collect();
        let mesh = build_mesh(raw).unwrap();
        let report = analyze_topology(&mesh);
        assert_eq!(report.vertex_count, 4);
        assert_eq!(report.edge_count, 6);
        assert_eq!(report.face_count, 4);
        assert_eq!(report.euler_characteristic, 2);
        assert!(report.is_closed_manifold);
        assert_eq!(report.component_count, 1);
        assert!(mesh.orientation_consistent());
        // E = 3F/2 for closed triangle meshes.
        assert_eq!(2 * report.edge_count, 3 * report.face_count);
    }

    #[test]
    fn open_fan_reports_defects() {
        let raw = vec![
            RawTriangle {
                positions: [vec3(0.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0), vec3(0.0, 1.0, 0.0)],
                keys: [None, None, None],
                source: 0,
                slot: 1,
            },
        ];
        let mesh = build_mesh(raw).unwrap();
        let report = analyze_topology(&mesh);
        assert!(!report.is_closed_manifold);
        assert_eq!(report.bad_edges.len(), 3);
        assert_eq!(report.bad_vertices.len(), 3);
    }

    #[test]
    fn two_tetrahedra_two_components() {
        let mut raw = Vec::new();
        for (comp, offset) in [(0u64, 0.0), (1u64, 10.0)] {
            let p = [
                vec3(offset, 0.0, 0.0),
                vec3(offset + 1.0, 0.0, 0.0),
                vec3(offset, 1.0, 0.0),
                vec3(offset, 0.0, 1.0),
            ];
            for (n, f) in [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]].iter().enumerate() {
                raw.push(RawTriangle {
                    positions: [p[f[0]], p[f[1]], p[f[2]]],
                    keys: [None, None, None],
                    source: comp * 4 + n as u64,
                    slot: 1,
                });
            }
        }
        let mesh = build_mesh(raw).unwrap();
        let report = analyze_topology(&mesh);
        assert_eq!(report.component_count, 2);
        assert_eq!(report.euler_characteristic, 4);
        assert!(report.is_closed_manifold);
    }
}
