//! Wavefront-OBJ export of cylinder and prism side surfaces: vertex
//! rings swept along the fibre direction, quad faces counter-clockwise
//! viewed from outside.

use std::f64::consts::PI;

use anyhow::{ensure, Result};
use sl2r::cylinder::{quadric_residual, Cylinder};
use sl2r::model::Isometry;
use sl2r::tiling::{side_curve, TilingParams};

pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// 0-based quad indices.
    pub faces: Vec<[usize; 4]>,
}

impl Mesh {
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(self.vertices.len() * 48);
        for v in &self.vertices {
            out.push_str(&format!("v {:.12} {:.12} {:.12}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            out.push_str(&format!("f {} {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1));
        }
        out
    }
}

pub fn validate_resolution(angular: usize, axial: usize) -> Result<()> {
    ensure!(angular >= 8, "angular resolution {angular} below minimum 8");
    ensure!(axial >= 2, "axial resolution {axial} below minimum 2");
    Ok(())
}

/// Cylinder side surface: `angular` points of the base circle swept
/// through `axial + 1` fibre levels over [0, psi]. Every vertex lies on
/// the quadric of the infinite cylinder.
pub fn cylinder_mesh(radius: f64, psi: f64, angular: usize, axial: usize) -> Result<Mesh> {
    validate_resolution(angular, axial)?;
    let cyl = Cylinder::bounded(radius, psi)?;
    let b = radius.tanh();
    let mut vertices = Vec::with_capacity(angular * (axial + 1));
    for j in 0..=axial {
        let phi = psi * j as f64 / axial as f64;
        let lift = Isometry::fibre_translation(phi)?;
        for i in 0..angular {
            let chi = 2.0 * PI * i as f64 / angular as f64;
            let base = sl2r::ProjPoint::new(1.0, 0.0, b * chi.cos(), b * chi.sin())?;
            let ih = lift.apply(&base).inhom().expect("finite fibre sweep stays affine");
            debug_assert!(quadric_residual(&cyl, &ih).abs() < 1e-9);
            vertices.push([ih.x, ih.y, ih.z]);
        }
    }
    let mut faces = Vec::with_capacity(angular * axial);
    for j in 0..axial {
        for i in 0..angular {
            let i1 = (i + 1) % angular;
            faces.push([
                j * angular + i,
                j * angular + i1,
                (j + 1) * angular + i1,
                (j + 1) * angular + i,
            ]);
        }
    }
    Ok(Mesh { vertices, faces })
}

/// Prism side surface: p congruent sheets, each a side curve sampled at
/// `angular + 1` parameters and swept through `axial + 1` fibre levels
/// over [0, psi]. Sheet k is sheet 0 rotated by 2 pi k / p about the
/// origin fibre (a rotation of the (y, z) model plane).
pub fn prism_mesh(
    params: &TilingParams,
    psi: f64,
    angular: usize,
    axial: usize,
) -> Result<Mesh> {
    validate_resolution(angular, axial)?;
    let p = params.p() as usize;
    let ring = angular + 1;
    let mut vertices = Vec::with_capacity(p * ring * (axial + 1));
    let mut faces = Vec::with_capacity(p * angular * axial);
    for k in 0..p {
        let spin = Isometry::rotation_about_origin(2.0 * PI * k as f64 / p as f64)?;
        let sheet_base = vertices.len();
        for j in 0..=axial {
            let phi = psi * j as f64 / axial as f64;
            let lift = Isometry::fibre_translation(phi)?;
            for i in 0..ring {
                let t = i as f64 / angular as f64;
                let point = lift.apply(&spin.apply(&side_curve(params, t)?));
                let ih = point.inhom().expect("side sheets stay affine for bounded psi");
                vertices.push([ih.x, ih.y, ih.z]);
            }
        }
        for j in 0..axial {
            for i in 0..angular {
                faces.push([
                    sheet_base + j * ring + i,
                    sheet_base + j * ring + i + 1,
                    sheet_base + (j + 1) * ring + i + 1,
                    sheet_base + (j + 1) * ring + i,
                ]);
            }
        }
    }
    Ok(Mesh { vertices, faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_mesh_counts() {
        let mesh = cylinder_mesh(0.5, 1.0, 32, 8).unwrap();
        assert_eq!(mesh.vertices.len(), 32 * 9);
        assert_eq!(mesh.faces.len(), 32 * 8);
    }

    #[test]
    fn cylinder_vertices_on_quadric() {
        let mesh = cylinder_mesh(0.5, 1.0, 16, 4).unwrap();
        let cyl = Cylinder::infinite(0.5).unwrap();
        for v in &mesh.vertices {
            let ih = sl2r::InhomPoint::new(v[0], v[1], v[2]);
            assert!(quadric_residual(&cyl, &ih).abs() < 1e-12);
        }
    }

    #[test]
    fn cylinder_faces_wind_counter_clockwise_from_outside() {
        let mesh = cylinder_mesh(0.5, 1.0, 16, 4).unwrap();
        for f in &mesh.faces {
            let [a, b, _, d] = f.map(|i| mesh.vertices[i]);
            let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let e2 = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
            let normal = [
                e1[1] * e2[2] - e1[2] * e2[1],
                e1[2] * e2[0] - e1[0] * e2[2],
                e1[0] * e2[1] - e1[1] * e2[0],
            ];
            // Outward is radial in the (y, z) model plane.
            assert!(normal[1] * a[1] + normal[2] * a[2] > 0.0);
        }
    }

    #[test]
    fn resolution_minimums() {
        assert!(cylinder_mesh(0.5, 1.0, 7, 4).is_err());
        assert!(cylinder_mesh(0.5, 1.0, 8, 1).is_err());
    }

    #[test]
    fn prism_sheets_are_rotated_copies() {
        let params = TilingParams::new(4, 6).unwrap();
        let mesh = prism_mesh(&params, params.psi(), 8, 2).unwrap();
        let sheet = 9 * 3; // (angular+1) x (axial+1)
        assert_eq!(mesh.vertices.len(), 4 * sheet);
        let (s, c) = (PI / 2.0).sin_cos();
        for i in 0..sheet {
            let a = mesh.vertices[i];
            let b = mesh.vertices[sheet + i];
            // 90-degree rotation of (y, z), x fixed.
            assert!((b[0] - a[0]).abs() < 1e-12);
            assert!((b[1] - (a[1] * c - a[2] * s)).abs() < 1e-12);
            assert!((b[2] - (a[1] * s + a[2] * c)).abs() < 1e-12);
        }
    }
}
