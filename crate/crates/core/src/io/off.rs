//! OFF polygon-mesh export for 2D and 3D artifacts. Mesh viewers want
//! floats, so coordinates are float renderings of the exact values; 2D data
//! is embedded at z = 0. Each convex face is emitted in boundary order,
//! recovered by angle-sorting its vertices around the centroid. Dimensions
//! other than 2 and 3 are rejected; JSON is the only format there.

use crate::delone::{LSolid, LTiling};
use crate::geometry::{convex_hull_facets, Point};
use crate::lattice::VoronoiCell;
use crate::rational::{to_f64, Rational};

use super::{schema, IoError};

fn floats(coords: &[Rational]) -> Vec<f64> {
    coords.iter().map(to_f64).collect()
}

fn off_text(vertices: &[Vec<f64>], faces: &[Vec<usize>]) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", vertices.len(), faces.len()));
    for v in vertices {
        let z = v.get(2).copied().unwrap_or(0.0);
        out.push_str(&format!("{:?} {:?} {:?}\n", v[0], v[1], z));
    }
    for f in faces {
        out.push_str(&f.len().to_string());
        for &i in f {
            out.push(' ');
            out.push_str(&i.to_string());
        }
        out.push('\n');
    }
    out
}

fn centroid(ids: &[usize], pts: &[Vec<f64>]) -> Vec<f64> {
    let d = pts[ids[0]].len();
    let mut c = vec![0.0; d];
    for &i in ids {
        for k in 0..d {
            c[k] += pts[i][k];
        }
    }
    for x in &mut c {
        *x /= ids.len() as f64;
    }
    c
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Boundary order of a convex planar face: angle around the centroid, in an
/// in-plane frame. Floats are fine here; the face is already known to be a
/// convex polygon, only the cyclic order is being recovered.
fn angle_sorted(mut ids: Vec<usize>, pts: &[Vec<f64>]) -> Vec<usize> {
    if ids.len() <= 2 {
        return ids;
    }
    let c = centroid(&ids, pts);
    if c.len() == 2 {
        ids.sort_by(|&a, &b| {
            let ta = (pts[a][1] - c[1]).atan2(pts[a][0] - c[0]);
            let tb = (pts[b][1] - c[1]).atan2(pts[b][0] - c[0]);
            ta.total_cmp(&tb)
        });
        return ids;
    }
    // Frame: u along the first spoke, v ⟂ u in the face plane. The normal
    // comes from the spoke pair with the largest cross product, which keeps
    // the frame away from degeneracy.
    let u = sub(&pts[ids[0]], &c);
    let mut normal = vec![0.0; 3];
    let mut best = 0.0;
    for &i in &ids[1..] {
        let cr = cross(&u, &sub(&pts[i], &c));
        let len2 = dot(&cr, &cr);
        if len2 > best {
            best = len2;
            normal = cr;
        }
    }
    let v = cross(&normal, &u);
    ids.sort_by(|&a, &b| {
        let pa = sub(&pts[a], &c);
        let pb = sub(&pts[b], &c);
        let ta = dot(&pa, &v).atan2(dot(&pa, &u));
        let tb = dot(&pb, &v).atan2(dot(&pb, &u));
        ta.total_cmp(&tb)
    });
    ids
}

fn dim_guard(d: usize) -> Result<(), IoError> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(schema(format!("OFF export supports d = 2 or 3, got {d}")))
    }
}

/// In 2D the cells themselves are the polygons; in 3D each recorded facet
/// (interior walls included) appears once.
pub fn tiling_to_off(t: &LTiling) -> Result<String, IoError> {
    dim_guard(t.dim)?;
    let pts: Vec<Vec<f64>> = t.points.iter().map(|p| floats(&p.coords)).collect();
    let faces: Vec<Vec<usize>> = if t.dim == 2 {
        t.cells
            .iter()
            .map(|c| angle_sorted(c.vertex_indices.clone(), &pts))
            .collect()
    } else {
        t.adjacency
            .iter()
            .map(|f| angle_sorted(f.facet.clone(), &pts))
            .collect()
    };
    Ok(off_text(&pts, &faces))
}

pub fn voronoi_to_off(c: &VoronoiCell) -> Result<String, IoError> {
    dim_guard(c.dim)?;
    let pts: Vec<Vec<f64>> = c.vertices.iter().map(|v| floats(v)).collect();
    let faces: Vec<Vec<usize>> = if c.dim == 2 {
        vec![angle_sorted((0..pts.len()).collect(), &pts)]
    } else {
        c.facets
            .iter()
            .map(|f| angle_sorted(f.vertex_ids.clone(), &pts))
            .collect()
    };
    Ok(off_text(&pts, &faces))
}

/// A single grown cell: its own vertices only, hull facets as faces.
pub fn solid_to_off(points: &[Point], solid: &LSolid) -> Result<String, IoError> {
    if let Some(&bad) = solid
        .vertex_indices
        .iter()
        .find(|&&i| i >= points.len())
    {
        return Err(schema(format!("vertex index {bad} out of range")));
    }
    let coords: Vec<Vec<Rational>> = solid
        .vertex_indices
        .iter()
        .map(|&i| points[i].coords.clone())
        .collect();
    let dim = coords.first().map_or(0, Vec::len);
    dim_guard(dim)?;
    let pts: Vec<Vec<f64>> = coords.iter().map(|c| floats(c)).collect();
    let faces: Vec<Vec<usize>> = if dim == 2 {
        vec![angle_sorted((0..pts.len()).collect(), &pts)]
    } else {
        convex_hull_facets(&coords)
            .map_err(|e| schema(format!("solid is not a full-dimensional polytope: {e}")))?
            .into_iter()
            .map(|f| angle_sorted(f, &pts))
            .collect()
    };
    Ok(off_text(&pts, &faces))
}

#[cfg(test)]
mod tests {
    use crate::delone::build_l_tiling;
    use crate::geometry::Sphere;
    use crate::io::read::form_from_value;
    use crate::lattice::voronoi_cell;
    use crate::rational::Rational;
    use serde_json::json;

    use super::*;

    #[test]
    fn square_tiling_off_is_exact() {
        let points: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|c| Point::from_integers(c))
            .collect();
        let tiling = build_l_tiling(&points).unwrap();
        let off = tiling_to_off(&tiling).unwrap();
        // Points are stored sorted: (0,0),(0,1),(1,0),(1,1). The single
        // quadrilateral comes out in boundary order.
        assert_eq!(
            off,
            "OFF\n4 1 0\n0.0 0.0 0.0\n0.0 1.0 0.0\n1.0 0.0 0.0\n1.0 1.0 0.0\n4 0 2 3 1\n"
        );
    }

    #[test]
    fn cubic_voronoi_cell_is_a_cube_mesh() {
        let z3 = form_from_value(&json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        let cell = voronoi_cell(&z3).unwrap();
        let off = voronoi_to_off(&cell).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "8 6 0");
        assert_eq!(lines.len(), 2 + 8 + 6);
        for face in &lines[10..] {
            assert!(face.starts_with("4 "), "quadrilateral expected: {face}");
        }
    }

    #[test]
    fn solid_off_uses_hull_facets() {
        let points: Vec<Point> = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|c| Point::from_integers(c))
            .collect();
        let solid = LSolid {
            vertex_indices: vec![0, 1, 2, 3],
            sphere: Sphere::new(Point::from_integers(&[0, 0, 0]), Rational::from_integer(0.into())),
        };
        let off = solid_to_off(&points, &solid).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[1], "4 4 0");
        for face in &lines[6..] {
            assert!(face.starts_with("3 "));
        }
    }

    #[test]
    fn high_dimensions_are_rejected() {
        let t = LTiling {
            dim: 4,
            points: vec![],
            cells: vec![],
            adjacency: vec![],
        };
        let err = tiling_to_off(&t).unwrap_err();
        assert!(err.to_string().contains("d = 2 or 3"));
    }
}
