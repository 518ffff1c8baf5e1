//! Closed-form curvature tables, written out component by component so they do not
//! share code with the connection-based computation.

use crate::curvature::Tensor4;

fn put(r: &mut Tensor4, a: usize, b: usize, c: usize, d: usize, v: f64, hb_ha: f64) {
    // R^a_{bcd} = v, antisymmetric in (c, d); R^b_{acd} = -h_aa h_bb v.
    r[a][b][c][d] = v;
    r[a][b][d][c] = -v;
    r[b][a][c][d] = -hb_ha * v;
    r[b][a][d][c] = hb_ha * v;
}

/// `R^a_{bcd}` of Schwarzschild in the static orthonormal frame at radius `r`.
pub fn schwarzschild_riemann(mass: f64, r: f64) -> Tensor4 {
    let k = mass / (r * r * r);
    let mut t = [[[[0.0; 4]; 4]; 4]; 4];
    // Lorentzian: h_00 h_ii = -1, h_ii h_jj = 1.
    put(&mut t, 0, 1, 0, 1, 2.0 * k, -1.0);
    put(&mut t, 0, 2, 0, 2, -k, -1.0);
    put(&mut t, 0, 3, 0, 3, -k, -1.0);
    put(&mut t, 1, 2, 1, 2, -k, 1.0);
    put(&mut t, 1, 3, 1, 3, -k, 1.0);
    put(&mut t, 2, 3, 2, 3, 2.0 * k, 1.0);
    t
}

/// `R^a_{bcd} = (delta^a_c delta_bd - delta^a_d delta_bc) / r^2` on the round 4-sphere.
pub fn sphere_riemann(radius: f64) -> Tensor4 {
    let k = 1.0 / (radius * radius);
    let mut t = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                t[a][b][a][b] = k;
                t[a][b][b][a] = -k;
            }
        }
    }
    t
}

/// Ricci scalar of the round 4-sphere, `12 / r^2`.
pub fn sphere_scalar(radius: f64) -> f64 {
    12.0 / (radius * radius)
}
