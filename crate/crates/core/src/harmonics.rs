//! Spherical harmonics from the `m' = 0` row of the rotation `exp(iθL_y)`.
//!
//! `Y_l^m(θ, φ) = √((2l+1)/4π) · e^{imφ} · <l,0| exp(iθL_y) |l,m>`, and the
//! matrix element is available by several independent routes:
//!
//! * [`Method::Form1`]: closed sum from the lowering-left disentangled form,
//!   a polynomial in `1 - cos θ` times `sin^m θ`.
//! * [`Method::Form2`]: the raising-left counterpart, times `sin^{-m} θ`.
//! * [`Method::Middle`]: the single sum in half-angle powers, regular at both
//!   poles.
//! * [`Method::Operator`]: the middle row of the disentangled product matrix.
//! * [`Method::Legendre`]: associated Legendre functions with the `m < 0`
//!   values obtained by conjugation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{build_rep, Rep};
use crate::error::{Error, Result};
use crate::exact::{eval_poly_exact, factorial_ratio, ratio_to_f64, ExactCoeff};
use crate::expm::{disentangled_product, exp_i_theta_ly, DisentanglingOrder};
use crate::matrix::CMatrix;
use crate::spin::HalfInt;

/// Largest `l` accepted by [`exact_term_series`].
pub const EXACT_L_CAP: u32 = 30;

/// Evaluation route for a spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Form1,
    Form2,
    Middle,
    Operator,
    Legendre,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Form1,
        Method::Form2,
        Method::Middle,
        Method::Operator,
        Method::Legendre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Form1 => "form1",
            Method::Form2 => "form2",
            Method::Middle => "middle",
            Method::Operator => "operator",
            Method::Legendre => "legendre",
        }
    }

    /// Whether some `m` make this route singular at `θ ∈ {0, π}`.
    pub fn has_endpoint_singularities(self) -> bool {
        matches!(self, Method::Form1 | Method::Form2)
    }

    /// Whether this route can evaluate `(m, θ)`.
    pub fn supports(self, m: i32, theta: f64) -> bool {
        let pole = theta <= 0.0 || theta >= PI;
        match self {
            Method::Form1 => !(pole && m < 0),
            Method::Form2 => !(pole && m > 0),
            _ => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        Err(Error::Domain(format!(
            "|m| = {} exceeds l = {l}",
            m.unsigned_abs()
        )))
    } else {
        Ok(())
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta = {theta} is outside [0, pi]")))
    }
}

fn singular(method: Method, m: i32, theta: f64) -> Error {
    Error::SingularEvaluation {
        method: method.name(),
        m: m as i64,
        theta,
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(-1/2)^k` for `k >= 0`.
fn minus_half_pow(k: u32) -> BigRational {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    BigRational::new(BigInt::from(sign), BigInt::from(2).pow(k))
}

/// `1 - cos θ`, computed without cancellation near θ = 0.
fn one_minus_cos(theta: f64) -> f64 {
    2.0 * (theta / 2.0).sin().powi(2)
}

/// `radical · sin^p θ · P(1 - cos θ)` with the polynomial summed exactly.
/// Negative powers go through logarithms so that a tiny `sin θ` cannot
/// overflow before it meets the equally tiny polynomial.
fn assemble(radical: f64, sin_power: i32, poly: &[BigRational], theta: f64) -> f64 {
    let p = eval_poly_exact(poly, one_minus_cos(theta));
    if p == 0.0 {
        return 0.0;
    }
    let s = theta.sin();
    if sin_power >= 0 {
        radical * s.powi(sin_power) * p
    } else {
        radical * p.signum() * (sin_power as f64 * s.ln() + p.abs().ln()).exp()
    }
}

/// Coefficients of the lowering-left closed sum as a polynomial in
/// `1 - cos θ`, without the common radical `√((l-m)!/(l+m)!)`.
fn form1_poly(l: u32, m: i32) -> Vec<BigRational> {
    let (l, m) = (l as i64, m as i64);
    let top = (l - m) as usize;
    let mut poly = vec![BigRational::zero(); top + 1];
    for n in (-m).max(0)..=(l - m) {
        let ratio = factorial_ratio(
            &[(l + m + n) as u32],
            &[(m + n) as u32, n as u32, (l - m - n) as u32],
        );
        poly[n as usize] = minus_half_pow((m + n) as u32) * ratio;
    }
    poly
}

/// Coefficients of the raising-left closed sum, sign `(-1)^m` included,
/// without the common radical `√((l+m)!/(l-m)!)`.
fn form2_poly(l: u32, m: i32) -> Vec<BigRational> {
    let (l, m) = (l as i64, m as i64);
    let top = (l + m) as usize;
    let phase = rational(if m.rem_euclid(2) == 0 { 1 } else { -1 });
    let mut poly = vec![BigRational::zero(); top + 1];
    for n in m.max(0)..=(l + m) {
        let ratio = factorial_ratio(
            &[(l - m + n) as u32],
            &[(n - m) as u32, n as u32, (l + m - n) as u32],
        );
        poly[n as usize] = &phase * minus_half_pow((n - m) as u32) * ratio;
    }
    poly
}

fn sqrt_factorial_ratio_f64(num: u32, den: u32) -> f64 {
    ratio_to_f64(&factorial_ratio(&[num], &[den])).sqrt()
}

/// `<l,0| exp(iθL_y) |l,m>` from the lowering-left closed sum.
///
/// Singular at the poles for `m < 0`, where the sum carries `sin^m θ`.
pub fn d_row_form1(l: u32, m: i32, theta: f64) -> Result<f64> {
    check_lm(l, m)?;
    check_theta(theta)?;
    if !Method::Form1.supports(m, theta) {
        return Err(singular(Method::Form1, m, theta));
    }
    let radical =
        sqrt_factorial_ratio_f64((l as i64 - m as i64) as u32, (l as i64 + m as i64) as u32);
    Ok(assemble(radical, m, &form1_poly(l, m), theta))
}

/// `<l,0| exp(iθL_y) |l,m>` from the raising-left closed sum.
///
/// Singular at the poles for `m > 0`.
pub fn d_row_form2(l: u32, m: i32, theta: f64) -> Result<f64> {
    check_lm(l, m)?;
    check_theta(theta)?;
    if !Method::Form2.supports(m, theta) {
        return Err(singular(Method::Form2, m, theta));
    }
    let radical =
        sqrt_factorial_ratio_f64((l as i64 + m as i64) as u32, (l as i64 - m as i64) as u32);
    Ok(assemble(radical, -m, &form2_poly(l, m), theta))
}

/// `<l,0| exp(iθL_y) |l,m>` from the single half-angle sum
///
/// ```text
/// Σ_k (-1)^k sin^{2k+|m|}(θ/2) cos^{2l-2k-|m|}(θ/2)
///     · l! √((l+|m|)!(l-|m|)!) / (k! (l-|m|-k)! (|m|+k)! (l-k)!)
/// ```
///
/// which is the `m = -|m|` element; positive `m` pick up `(-1)^m`.
pub fn d_row_middle(l: u32, m: i32, theta: f64) -> Result<f64> {
    check_lm(l, m)?;
    check_theta(theta)?;
    let a = m.unsigned_abs();
    let (s, c) = (theta / 2.0).sin_cos();
    let radical = ratio_to_f64(&factorial_ratio(&[l + a, l - a], &[])).sqrt();
    let mut sum = 0.0;
    for k in 0..=(l - a) {
        let coeff = ratio_to_f64(&factorial_ratio(&[l], &[k, l - a - k, a + k, l - k]));
        let term = coeff * s.powi((2 * k + a) as i32) * c.powi((2 * l - 2 * k - a) as i32);
        sum += if k % 2 == 0 { term } else { -term };
    }
    let sign = if m > 0 && a % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * radical * sum)
}

/// Rotation matrix `exp(iθL_y)` through the disentangled product, falling
/// back to the reference exponential at `θ = π` where the factors diverge.
fn rotation(rep: &Rep, theta: f64) -> Result<CMatrix> {
    if theta < PI {
        disentangled_product(rep, theta, DisentanglingOrder::Ldu)
    } else {
        Ok(exp_i_theta_ly(rep, theta))
    }
}

/// The `m' = 0` row of `exp(iθL_y)`, entries ordered `m = l, l-1, ..., -l`.
///
/// Only integer `l` has an `m' = 0` state.
pub fn ladder_matrix_element(rep: &Rep, theta: f64) -> Result<Vec<f64>> {
    let l = rep.l();
    if !l.is_integer() {
        return Err(Error::Domain(format!(
            "l = {l} is a half-integer: the multiplet has no m' = 0 state"
        )));
    }
    check_theta(theta)?;
    let row = rep.index_of(HalfInt::ZERO)?;
    let r = rotation(rep, theta)?;
    Ok(r.row(row).iter().map(|z| z.re).collect())
}

/// Associated Legendre function `P_l^m(cos θ)` for `m >= 0`, without the
/// Condon–Shortley phase:
///
/// `P_l^m = 2^{-m} sin^m θ Σ_n (-1)^n (l+m+n)! / ((l-m-n)! (m+n)! n!) · ((1 - cos θ)/2)^n`.
pub fn assoc_legendre(l: u32, m: i32, theta: f64) -> Result<f64> {
    if m < 0 {
        return Err(Error::Domain(format!(
            "associated Legendre route needs m >= 0, got {m}"
        )));
    }
    check_lm(l, m)?;
    check_theta(theta)?;
    let m = m as u32;
    let poly: Vec<BigRational> = (0..=(l - m))
        .map(|n| {
            let ratio = factorial_ratio(&[l + m + n], &[l - m - n, m + n, n]);
            if n % 2 == 0 {
                ratio
            } else {
                -ratio
            }
        })
        .collect();
    let half_one_minus_cos = (theta / 2.0).sin().powi(2);
    let sum = eval_poly_exact(&poly, half_one_minus_cos);
    Ok(sum * (theta.sin() / 2.0).powi(m as i32))
}

/// `√((2l+1)/4π)`, the value of `<θ=0,φ=0|l,0>`.
pub fn normalization(l: u32) -> f64 {
    ((2 * l + 1) as f64 / (4.0 * PI)).sqrt()
}

/// Resolves `(l, m)` to integers, rejecting half-integer and out-of-range values.
pub fn integer_lm(l: HalfInt, m: HalfInt) -> Result<(u32, i32)> {
    let li = l.as_integer().ok_or_else(|| {
        Error::Domain(format!(
            "l = {l} is a half-integer: spherical harmonics need an m' = 0 state"
        ))
    })?;
    if li < 0 {
        return Err(Error::Domain(format!("l = {l} is negative")));
    }
    let mi = m
        .as_integer()
        .ok_or_else(|| Error::Domain(format!("m = {m} is not an integer")))?;
    let (li, mi) = (
        u32::try_from(li).map_err(|_| Error::Domain(format!("l = {l} is too large")))?,
        i32::try_from(mi).map_err(|_| Error::Domain(format!("m = {m} is too large")))?,
    );
    check_lm(li, mi)?;
    Ok((li, mi))
}

/// The rotation matrix element `<l,0| exp(iθL_y) |l,m>` by the chosen route.
pub fn d_row(l: u32, m: i32, theta: f64, method: Method) -> Result<f64> {
    match method {
        Method::Form1 => d_row_form1(l, m, theta),
        Method::Form2 => d_row_form2(l, m, theta),
        Method::Middle => d_row_middle(l, m, theta),
        Method::Operator => {
            check_lm(l, m)?;
            let rep = build_rep(HalfInt::from(l))?;
            let row = ladder_matrix_element(&rep, theta)?;
            Ok(row[rep.index_of(HalfInt::from(m))?])
        }
        Method::Legendre => {
            check_lm(l, m)?;
            let a = m.unsigned_abs();
            let p = assoc_legendre(l, a as i32, theta)?;
            let value = sqrt_factorial_ratio_f64(l - a, l + a) * p;
            // Positive m carry (-1)^m; negative m pick up another (-1)^|m|
            // from conjugation, cancelling it.
            Ok(if m > 0 && a % 2 == 1 { -value } else { value })
        }
    }
}

/// `Y_l^m(θ, φ)`.
///
/// `l` and `m` may be given as any type convertible to [`HalfInt`]; half-integer
/// values are rejected with [`Error::Domain`].
pub fn ylm(
    l: impl Into<HalfInt>,
    m: impl Into<HalfInt>,
    theta: f64,
    phi: f64,
    method: Method,
) -> Result<Complex64> {
    let (l, m) = integer_lm(l.into(), m.into())?;
    if !phi.is_finite() {
        return Err(Error::Domain(format!("phi = {phi} is not finite")));
    }
    if method == Method::Legendre && m < 0 {
        let positive = ylm(l, -m, theta, phi, method)?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(positive.conj() * sign);
    }
    let d = match method {
        Method::Legendre => {
            let p = assoc_legendre(l, m, theta)?;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * sqrt_factorial_ratio_f64((l as i32 - m) as u32, (l as i32 + m) as u32) * p
        }
        _ => d_row(l, m, theta, method)?,
    };
    Ok(Complex64::from_polar(normalization(l) * d, m as f64 * phi))
}

/// Which closed sum a [`HarmonicTermSeries`] expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesForm {
    /// Lowering-left form; terms multiply `sin^m θ (1 - cos θ)^n`.
    First,
    /// Raising-left form; terms multiply `sin^{-m} θ (1 - cos θ)^n`.
    Second,
}

/// Exact coefficients of a closed-sum expansion of `<l,0| exp(iθL_y) |l,m>`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicTermSeries {
    pub l: u32,
    pub m: i32,
    pub form: SeriesForm,
    /// `(n, coefficient)` pairs in increasing `n`.
    pub terms: Vec<(u32, ExactCoeff)>,
}

impl HarmonicTermSeries {
    /// Power of `sin θ` shared by every term.
    pub fn sin_power(&self) -> i32 {
        match self.form {
            SeriesForm::First => self.m,
            SeriesForm::Second => -self.m,
        }
    }

    /// Evaluates the series at a double `θ`.
    ///
    /// Terms sharing a radical `√s` are summed as an exact polynomial in
    /// `1 - cos θ` and rounded once, so the alternating sum keeps full
    /// precision near `θ = π`.
    pub fn evaluate(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        let p = self.sin_power();
        if p < 0 && (theta <= 0.0 || theta >= PI) {
            let method = match self.form {
                SeriesForm::First => Method::Form1,
                SeriesForm::Second => Method::Form2,
            };
            return Err(singular(method, self.m, theta));
        }
        let mut groups: Vec<(&BigRational, Vec<BigRational>)> = Vec::new();
        for (n, c) in self.terms.iter().filter(|(_, c)| !c.is_zero()) {
            let at = match groups.iter().position(|(s, _)| *s == c.s()) {
                Some(at) => at,
                None => {
                    groups.push((c.s(), Vec::new()));
                    groups.len() - 1
                }
            };
            let poly = &mut groups[at].1;
            if poly.len() <= *n as usize {
                poly.resize(*n as usize + 1, BigRational::zero());
            }
            poly[*n as usize] += c.r();
        }
        Ok(groups
            .iter()
            .map(|(s, poly)| {
                let radical =
                    ExactCoeff::new(BigRational::one(), (*s).clone()).map_or(0.0, |c| c.to_f64());
                assemble(radical, p, poly, theta)
            })
            .sum())
    }
}

/// Expands a closed sum with exact coefficients `r·√s`.
pub fn exact_term_series(l: u32, m: i32, form: SeriesForm) -> Result<HarmonicTermSeries> {
    if l > EXACT_L_CAP {
        return Err(Error::ExactCapExceeded {
            l,
            cap: EXACT_L_CAP,
        });
    }
    check_lm(l, m)?;
    let (li, mi) = (l as i64, m as i64);
    let mut terms = Vec::new();
    match form {
        SeriesForm::First => {
            let radical =
                ExactCoeff::sqrt_factorial_ratio(&[(li - mi) as u32], &[(li + mi) as u32]);
            for n in (-mi).max(0)..=(li - mi) {
                let q = minus_half_pow((mi + n) as u32)
                    * factorial_ratio(
                        &[(li + mi + n) as u32],
                        &[(mi + n) as u32, n as u32, (li - mi - n) as u32],
                    );
                terms.push((n as u32, &radical * &q));
            }
        }
        SeriesForm::Second => {
            let radical =
                ExactCoeff::sqrt_factorial_ratio(&[(li + mi) as u32], &[(li - mi) as u32]);
            let phase = if mi.rem_euclid(2) == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            for n in mi.max(0)..=(li + mi) {
                let q = &phase
                    * minus_half_pow((n - mi) as u32)
                    * factorial_ratio(
                        &[(li - mi + n) as u32],
                        &[(n - mi) as u32, n as u32, (li + mi - n) as u32],
                    );
                terms.push((n as u32, &radical * &q));
            }
        }
    }
    Ok(HarmonicTermSeries { l, m, form, terms })
}

/// `<l,mp| exp(iθL_y) |l,m>` for any (half-)integer multiplet.
pub fn wigner_d(
    l: impl Into<HalfInt>,
    mp: impl Into<HalfInt>,
    m: impl Into<HalfInt>,
    theta: f64,
) -> Result<f64> {
    let (l, mp, m) = (l.into(), mp.into(), m.into());
    let rep = build_rep(l)?;
    let row = rep.index_of(mp)?;
    let col = rep.index_of(m)?;
    check_theta(theta)?;
    Ok(rotation(&rep, theta)?[(row, col)].re)
}

/// The full rotation matrix `exp(iθL_y)` for spin `l`.
pub fn wigner_d_matrix(l: impl Into<HalfInt>, theta: f64) -> Result<CMatrix> {
    let rep = build_rep(l.into())?;
    check_theta(theta)?;
    rotation(&rep, theta)
}
