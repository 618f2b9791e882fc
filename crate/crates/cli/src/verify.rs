//! Seeded numerical checks of the rotation and harmonic identities.

use std::f64::consts::PI;
use std::fmt;

use disentangle::quadrature::{all_harmonics, gram_matrix};
use disentangle::{
    build_rep, d_row, d_row_form1, d_row_form2, disentangled_product, exact_term_series,
    exp_i_theta_ly, ylm, DisentanglingOrder, HalfInt, Method, QuadratureRule, SeriesForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Interior margin for samples fed to routes that are singular at the poles.
const INTERIOR: f64 = 1e-3;

/// Largest `l` for which the exact series is built.
const EXACT_LMAX: u32 = 30;

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub check: &'static str,
    pub l_range: String,
    pub samples: usize,
    pub max_dev: f64,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.max_dev <= self.tolerance
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub lmax: u32,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

/// Runs every check. Each check draws from its own stream so adding
/// samples to one does not shift the others.
pub fn run(opts: &VerifyOptions) -> Result<Vec<VerificationReport>, CliError> {
    if opts.tolerance.is_nan() || opts.tolerance < 0.0 {
        return Err(CliError::Usage(
            "--tolerance must be a nonnegative number".into(),
        ));
    }
    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(k);
        rng
    };
    let lmax = opts.lmax;
    let ints = format!("0-{lmax}");
    let report = |check, l_range: &str, samples, max_dev| VerificationReport {
        check,
        l_range: l_range.to_string(),
        samples,
        max_dev,
        tolerance: opts.tolerance,
    };

    let mut reports = Vec::new();
    let thetas = draw(&mut stream(0), opts.samples, 0.0, PI);
    for (k, order) in DisentanglingOrder::ALL.into_iter().enumerate() {
        let (dev, n) = disentangling(lmax, &thetas, order)?;
        let check = if k == 0 {
            "disentangling ldu"
        } else {
            "disentangling udl"
        };
        reports.push(report(check, &format!("0-{lmax} step 1/2"), n, dev));
    }

    let interior = draw(&mut stream(1), opts.samples, INTERIOR, PI - INTERIOR);
    let (dev, n) = route_agreement(lmax, &interior)?;
    reports.push(report("route agreement", &ints, n, dev));

    let mut rng = stream(2);
    let angles: Vec<(f64, f64)> = (0..opts.samples)
        .map(|_| (rng.random_range(0.0..=PI), rng.random_range(0.0..2.0 * PI)))
        .collect();
    let (dev, n) = conjugation(lmax, &angles)?;
    reports.push(report("conjugation", &ints, n, dev));
    let (dev, n) = parity(lmax, &angles)?;
    reports.push(report("parity", &ints, n, dev));

    let (dev, n) = orthonormality(lmax)?;
    reports.push(report("orthonormality", &ints, n, dev));

    let interior = draw(&mut stream(3), opts.samples, INTERIOR, PI - INTERIOR);
    let (dev, n) = vandermonde(lmax, &interior)?;
    reports.push(report("vandermonde", &ints, n, dev));

    let lx = lmax.min(EXACT_LMAX);
    let (dev, n) = exact_series(lx, &interior)?;
    reports.push(report("exact series", &format!("0-{lx}"), n, dev));
    Ok(reports)
}

fn draw(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

fn disentangling(
    lmax: u32,
    thetas: &[f64],
    order: DisentanglingOrder,
) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for twice in 0..=2 * lmax as i64 {
        let rep = build_rep(HalfInt::from_doubled(twice))?;
        for &theta in thetas {
            let d = disentangled_product(&rep, theta, order)?;
            worst = worst.max(d.max_abs_diff(&exp_i_theta_ly(&rep, theta))?);
            n += 1;
        }
    }
    Ok((worst, n))
}

fn route_agreement(lmax: u32, thetas: &[f64]) -> Result<(f64, usize), CliError> {
    let routes = [
        Method::Form1,
        Method::Form2,
        Method::Middle,
        Method::Operator,
    ];
    let mut worst = 0.0f64;
    let mut n = 0;
    for l in 0..=lmax {
        for m in -(l as i32)..=l as i32 {
            for &theta in thetas {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for route in routes {
                    let v = d_row(l, m, theta, route)?;
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                worst = worst.max(hi - lo);
                n += 1;
            }
        }
    }
    Ok((worst, n))
}

fn sign(k: i64) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn conjugation(lmax: u32, angles: &[(f64, f64)]) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for l in 0..=lmax as i64 {
        for m in -l..=l {
            for &(theta, phi) in angles {
                for method in Method::ALL {
                    if method.supports(m as i32, theta) && method.supports(-m as i32, theta) {
                        let lhs = ylm(l, -m, theta, phi, method)?;
                        let rhs = ylm(l, m, theta, phi, method)?.conj() * sign(m);
                        worst = worst.max((lhs - rhs).norm());
                        n += 1;
                    }
                }
            }
        }
    }
    Ok((worst, n))
}

fn parity(lmax: u32, angles: &[(f64, f64)]) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for l in 0..=lmax as i64 {
        for m in -l..=l {
            for &(theta, phi) in angles {
                for method in Method::ALL {
                    if method.supports(m as i32, theta) && method.supports(m as i32, PI - theta) {
                        let lhs = ylm(l, m, PI - theta, phi + PI, method)?;
                        let rhs = ylm(l, m, theta, phi, method)? * sign(l);
                        worst = worst.max((lhs - rhs).norm());
                        n += 1;
                    }
                }
            }
        }
    }
    Ok((worst, n))
}

/// Gram matrix against the identity under the smallest exact rule, for every method.
fn orthonormality(lmax: u32) -> Result<(f64, usize), CliError> {
    let rule = QuadratureRule::for_lmax(lmax);
    let mut worst = 0.0f64;
    let mut n = 0;
    for method in Method::ALL {
        let gram = gram_matrix(&all_harmonics(lmax, method), &rule)?;
        for (r, row) in gram.iter().enumerate() {
            for (c, g) in row.iter().enumerate() {
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((g - expect).norm());
                n += 1;
            }
        }
    }
    Ok((worst, n))
}

fn vandermonde(lmax: u32, thetas: &[f64]) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for l in 1..=lmax {
        for a in 1..=l as i32 {
            for &theta in thetas {
                let neg = d_row_form1(l, -a, theta)?;
                let pos = d_row_form1(l, a, theta)?;
                worst = worst.max((neg - sign(a as i64) * pos).abs());
                n += 1;
            }
        }
    }
    Ok((worst, n))
}

fn exact_series(lmax: u32, thetas: &[f64]) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for l in 0..=lmax {
        for m in -(l as i32)..=l as i32 {
            let first = exact_term_series(l, m, SeriesForm::First)?;
            let second = exact_term_series(l, m, SeriesForm::Second)?;
            for &theta in thetas {
                worst = worst.max((first.evaluate(theta)? - d_row_form1(l, m, theta)?).abs());
                worst = worst.max((second.evaluate(theta)? - d_row_form2(l, m, theta)?).abs());
                n += 2;
            }
        }
    }
    Ok((worst, n))
}

/// Aligned text table, one row per report.
pub struct Table<'a>(pub &'a [VerificationReport]);

impl fmt::Display for Table<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<18} {:<14} {:>8} {:>11} {:>9}  status",
            "check", "l range", "samples", "max_dev", "tolerance"
        )?;
        for r in self.0 {
            writeln!(
                f,
                "{:<18} {:<14} {:>8} {:>11.3e} {:>9.1e}  {}",
                r.check,
                r.l_range,
                r.samples,
                r.max_dev,
                r.tolerance,
                if r.passed() { "pass" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
