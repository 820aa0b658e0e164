//! Radial Fourier kernels.
//!
//! For an isotropic function on R^d the Fourier transform reduces to
//! `F(w) = S_d int_0^inf f(r) K_d(w r) r^(d-1) dr` with `K_2 = J_0`,
//! `K_3(z) = sin z / z` and `S_d` the sphere area.

use std::f64::consts::PI;

/// `K_d(z)` together with `K_d'(z)`, `K_d''(z)` and `K_d'(z)/z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValues {
    pub k: f64,
    pub dk: f64,
    pub d2k: f64,
    pub dk_over_z: f64,
}

pub fn sphere_area(d: usize) -> f64 {
    match d {
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => panic!("unsupported dimension {d}"),
    }
}

pub fn kernel(d: usize, z: f64) -> f64 {
    match d {
        2 => libm::j0(z),
        3 => {
            if z.abs() < 1e-4 {
                1.0 - z * z / 6.0
            } else {
                z.sin() / z
            }
        }
        _ => panic!("unsupported dimension {d}"),
    }
}

pub fn kernel_values(d: usize, z: f64) -> KernelValues {
    match d {
        2 => {
            let j0 = libm::j0(z);
            let j1_over_z = if z.abs() < 1e-8 { 0.5 - z * z / 16.0 } else { libm::j1(z) / z };
            KernelValues {
                k: j0,
                dk: -j1_over_z * z,
                d2k: -j0 + j1_over_z,
                dk_over_z: -j1_over_z,
            }
        }
        3 => {
            let z2 = z * z;
            if z.abs() < 2e-2 {
                KernelValues {
                    k: 1.0 - z2 / 6.0 + z2 * z2 / 120.0,
                    dk: -z / 3.0 + z * z2 / 30.0 - z * z2 * z2 / 840.0,
                    d2k: -1.0 / 3.0 + z2 / 10.0 - z2 * z2 / 168.0,
                    dk_over_z: -1.0 / 3.0 + z2 / 30.0 - z2 * z2 / 840.0,
                }
            } else {
                let (s, c) = z.sin_cos();
                let dk = (z * c - s) / z2;
                KernelValues {
                    k: s / z,
                    dk,
                    d2k: -s / z - 2.0 * c / z2 + 2.0 * s / (z2 * z),
                    dk_over_z: dk / z,
                }
            }
        }
        _ => panic!("unsupported dimension {d}"),
    }
}
