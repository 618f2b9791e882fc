//! Spherical-harmonic samples on a regular (θ, φ) grid, written as CSV.

use std::f64::consts::PI;
use std::io::Write;

use disentangle::{ylm, Complex64, Method};

use crate::format::g17;
use crate::CliError;

/// Distance kept from the poles by methods that are singular there.
pub const POLE_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub l: i64,
    pub m: i64,
    pub ntheta: usize,
    pub nphi: usize,
    pub method: Method,
}

impl GridSpec {
    /// θ nodes spread evenly over `[ε, π - ε]`; a single node sits at `ε`.
    pub fn thetas(&self) -> Vec<f64> {
        let eps = if self.method.has_endpoint_singularities() {
            POLE_GAP
        } else {
            0.0
        };
        if self.ntheta == 1 {
            return vec![eps];
        }
        let span = PI - 2.0 * eps;
        (0..self.ntheta)
            .map(|i| eps + span * i as f64 / (self.ntheta - 1) as f64)
            .collect()
    }

    pub fn phis(&self) -> Vec<f64> {
        (0..self.nphi)
            .map(|j| 2.0 * PI * j as f64 / self.nphi as f64)
            .collect()
    }

    /// Rows in θ-major order.
    pub fn rows(&self) -> Result<Vec<(f64, f64, Complex64)>, CliError> {
        if self.ntheta == 0 || self.nphi == 0 {
            return Err(CliError::Usage(
                "--ntheta and --nphi must be at least 1".into(),
            ));
        }
        let phis = self.phis();
        let mut rows = Vec::with_capacity(self.ntheta * self.nphi);
        for theta in self.thetas() {
            for &phi in &phis {
                // Adding zero folds -0.0 into 0.0.
                let y = ylm(self.l, self.m, theta, phi, self.method)?;
                rows.push((theta, phi, Complex64::new(y.re + 0.0, y.im + 0.0)));
            }
        }
        Ok(rows)
    }
}

pub fn write_csv<W: Write>(mut out: W, rows: &[(f64, f64, Complex64)]) -> std::io::Result<()> {
    out.write_all(b"theta,phi,re,im\n")?;
    for (theta, phi, y) in rows {
        writeln!(
            out,
            "{},{},{},{}",
            g17(*theta),
            g17(*phi),
            g17(y.re),
            g17(y.im)
        )?;
    }
    out.flush()
}
