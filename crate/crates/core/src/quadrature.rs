//! Product quadrature on the sphere: Gauss–Legendre in `cos θ`, uniform in `φ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonics::{ylm, Method};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes increasing. Exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let mut upper = Vec::with_capacity(n / 2 + 1);
    // Roots come in ± pairs; solve for the non-negative ones and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        if n % 2 == 1 && i == n / 2 {
            x = 0.0;
        } else {
            for _ in 0..NEWTON_MAX_ITER {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= NEWTON_TOL {
                    break;
                }
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        upper.push((x, w));
    }
    // `upper` runs from the largest root down to the smallest non-negative one.
    let mut nodes: Vec<(f64, f64)> = upper
        .iter()
        .filter(|(x, _)| *x > 0.0)
        .map(|&(x, w)| (-x, w))
        .collect();
    nodes.extend(upper.into_iter().rev());
    nodes
}

/// A tensor-product rule for integrals over the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub n_theta: usize,
    /// `(x = cos θ, weight)` pairs, `x` increasing.
    pub nodes: Vec<(f64, f64)>,
    pub n_phi: usize,
}

impl QuadratureRule {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::Domain(
                "quadrature rule needs at least one node per axis".into(),
            ));
        }
        Ok(QuadratureRule {
            n_theta,
            nodes: gauss_legendre_rule(n_theta),
            n_phi,
        })
    }

    /// The smallest rule that integrates products of harmonics with `l <= lmax` exactly.
    pub fn for_lmax(lmax: u32) -> Self {
        let lmax = lmax as usize;
        QuadratureRule::new(lmax + 1, 2 * lmax + 2).expect("non-empty rule")
    }

    pub fn supports(&self, lmax: u32) -> bool {
        self.n_theta > lmax as usize && self.n_phi >= 2 * lmax as usize + 2
    }

    fn check(&self, lmax: u32) -> Result<()> {
        if self.supports(lmax) {
            Ok(())
        } else {
            Err(Error::UndersizedRule {
                need_theta: lmax as usize + 1,
                need_phi: 2 * lmax as usize + 2,
                n_theta: self.n_theta,
                n_phi: self.n_phi,
            })
        }
    }

    pub fn phi_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_phi).map(move |j| 2.0 * PI * j as f64 / self.n_phi as f64)
    }

    /// Polar angles of the nodes, increasing in `x` (so decreasing in `θ`).
    pub fn theta_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.nodes.iter().map(|(x, _)| x.acos())
    }

    /// Weight of every grid point, in the same order as [`Self::sample`].
    fn weights(&self) -> Vec<f64> {
        let dphi = 2.0 * PI / self.n_phi as f64;
        self.nodes
            .iter()
            .flat_map(|&(_, w)| std::iter::repeat_n(w * dphi, self.n_phi))
            .collect()
    }

    /// Evaluates a harmonic on the grid, θ-outer.
    fn sample(&self, spec: &HarmonicSpec) -> Result<Vec<Complex64>> {
        let mut values = Vec::with_capacity(self.n_theta * self.n_phi);
        for theta in self.theta_nodes() {
            for phi in self.phi_nodes() {
                values.push(ylm(spec.l, spec.m, theta, phi, spec.method)?);
            }
        }
        Ok(values)
    }
}

/// A harmonic `Y_l^m` together with the route used to evaluate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicSpec {
    pub l: u32,
    pub m: i32,
    pub method: Method,
}

impl HarmonicSpec {
    pub fn new(l: u32, m: i32, method: Method) -> Self {
        HarmonicSpec { l, m, method }
    }
}

fn weighted_inner(weights: &[f64], f: &[Complex64], g: &[Complex64]) -> Complex64 {
    weights
        .iter()
        .zip(f.iter().zip(g))
        .map(|(&w, (a, b))| a.conj() * b * w)
        .sum()
}

/// `∫ conj(f) g dΩ` with a caller-supplied rule.
pub fn sphere_inner_with(
    f: &HarmonicSpec,
    g: &HarmonicSpec,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    rule.check(f.l.max(g.l))?;
    Ok(weighted_inner(
        &rule.weights(),
        &rule.sample(f)?,
        &rule.sample(g)?,
    ))
}

/// `∫ conj(f) g dΩ` with the minimal rule for harmonics up to `lmax`.
pub fn sphere_inner(f: &HarmonicSpec, g: &HarmonicSpec, lmax: u32) -> Result<Complex64> {
    let rule = QuadratureRule::for_lmax(lmax);
    sphere_inner_with(f, g, &rule)
}

/// Matrix of all pairwise inner products, `gram[i][j] = <specs[i], specs[j]>`.
pub fn gram_matrix(specs: &[HarmonicSpec], rule: &QuadratureRule) -> Result<Vec<Vec<Complex64>>> {
    let lmax = specs.iter().map(|s| s.l).max().unwrap_or(0);
    rule.check(lmax)?;
    let weights = rule.weights();
    let samples = specs
        .iter()
        .map(|s| rule.sample(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(samples
        .iter()
        .map(|f| {
            samples
                .iter()
                .map(|g| weighted_inner(&weights, f, g))
                .collect()
        })
        .collect())
}

/// Every `(l, m)` with `l <= lmax`, in order of increasing `l` then `m`.
pub fn all_harmonics(lmax: u32, method: Method) -> Vec<HarmonicSpec> {
    (0..=lmax)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| HarmonicSpec::new(l, m, method)))
        .collect()
}
