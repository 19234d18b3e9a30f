//! ASCII OBJ and PLY output. Both formats print coordinates with 9
//! significant digits in a fixed order, so identical meshes produce
//! byte-identical files.

use super::IndexedMesh;
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl std::str::FromStr for MeshFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<MeshFormat> {
        match s {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(Error::InvalidArgument(format!("unknown mesh format '{other}'"))),
        }
    }
}

/// Format with 9 significant digits, trimming trailing zeros (like "%.9g").
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    // Decimal exponent via the exact {:e} formatter (log10 rounds at powers of 10).
    let sci = format!("{x:e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let s = format!("{x:.8e}");
        let (mut mantissa, exponent) = s.split_at(s.find('e').unwrap());
        while mantissa.ends_with('0') {
            mantissa = &mantissa[..mantissa.len() - 1];
        }
        let mantissa = mantissa.strip_suffix('.').unwrap_or(mantissa);
        format!("{mantissa}{exponent}")
    }
}

pub fn obj_string(mesh: &IndexedMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", fmt_g9(v.x), fmt_g9(v.y), fmt_g9(v.z));
    }
    for t in &mesh.triangles {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    out
}

pub fn ply_string(mesh: &IndexedMesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ply");
    let _ = writeln!(out, "format ascii 1.0");
    let _ = writeln!(out, "element vertex {}", mesh.vertex_count());
    let _ = writeln!(out, "property float x");
    let _ = writeln!(out, "property float y");
    let _ = writeln!(out, "property float z");
    let _ = writeln!(out, "element face {}", mesh.triangle_count());
    let _ = writeln!(out, "property list uchar int vertex_indices");
    let _ = writeln!(out, "end_header");
    for v in &mesh.vertices {
        let _ = writeln!(out, "{} {} {}", fmt_g9(v.x), fmt_g9(v.y), fmt_g9(v.z));
    }
    for t in &mesh.triangles {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

pub fn write_obj(mesh: &IndexedMesh, path: &Path) -> Result<()> {
    std::fs::write(path, obj_string(mesh))
        .map_err(|e| Error::io(format!("writing OBJ to {}", path.display()), e))
}

pub fn write_ply(mesh: &IndexedMesh, path: &Path) -> Result<()> {
    std::fs::write(path, ply_string(mesh))
        .map_err(|e| Error::io(format!("writing PLY to {}", path.display()), e))
}

pub fn write_mesh(mesh: &IndexedMesh, format: MeshFormat, path: &Path) -> Result<()> {
    match format {
        MeshFormat::Obj => write_obj(mesh, path),
        MeshFormat::Ply => write_ply(mesh, path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::vec3;
    use crate::mesh::{build_mesh, RawTriangle};

    fn one_triangle() -> IndexedMesh {
        build_mesh(vec![RawTriangle {
            positions: [
                vec3(0.0, 0.0, 0.0),
                vec3(0.123456789123, 0.0, 0.0),
                vec3(0.0, 1.0, 2e-11),
            ],
            keys: [None, None, None],
            source: 0,
            slot: 1,
        }])
        .unwrap()
    }

    #[test]
    fn obj_has_three_vertices_one_face() {
        let s = obj_string(&one_triangle());
        let v_lines = s.lines().filter(|l| l.starts_with("v ")).count();
        let f_lines = s.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(v_lines, 3);
        assert_eq!(f_lines, 1);
        assert!(s.contains("f 1 2 3"));
    }

    #[test]
    fn writes_are_deterministic() {
        let mesh = one_triangle();
        assert_eq!(obj_string(&mesh), obj_string(&mesh));
        assert_eq!(ply_string(&mesh), ply_string(&mesh));
    }

    #[test]
    fn g9_formatting() {
        assert_eq!(fmt_g9(0.0), "0");
        assert_eq!(fmt_g9(1.0), "1");
        assert_eq!(fmt_g9(0.5), "0.5");
        assert_eq!(fmt_g9(-0.125), "-0.125");
        assert_eq!(fmt_g9(0.123456789123), "0.123456789");
        assert_eq!(fmt_g9(123456789.123), "123456789");
        assert_eq!(fmt_g9(2e-11), "2e-11");
        // Round-trip within 9 significant digits.
        let x = 0.4330127018922193;
        let parsed: f64 = fmt_g9(x).parse().unwrap();
        assert!((parsed - x).abs() < 1e-9);
    }

    #[test]
    fn ply_header_shape() {
        let s = ply_string(&one_triangle());
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("ply"));
        assert_eq!(lines.next(), Some("format ascii 1.0"));
        assert_eq!(lines.next(), Some("element vertex 3"));
        assert!(s.contains("element face 1"));
        assert!(s.contains("property list uchar int vertex_indices"));
        assert!(s.ends_with("3 0 1 2\n"));
    }
}
