//! Exponentials of angular-momentum generators and the disentangled
//! (Gauss-factored) form of a rotation about the y axis.
//!
//! The rotation `exp(iθL_y)` is factored in two orders,
//!
//! ```text
//! LDU: exp(ξ₋ L₋) · exp(λ L_z) · exp(ξ₊ L₊)
//! UDL: exp(ξ₊ L₊) · exp(λ L_z) · exp(ξ₋ L₋)
//! ```
//!
//! The coefficients are obtained by Gauss-factoring the 2x2 spin-1/2 rotation
//! and reading the factors back as exponentials of `L₋`, `L_z` and `L₊`.
//! The same coefficients are then valid in every representation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{build_rep, Ladder, Rep};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::spin::HalfInt;

/// Series terms below this (in the infinity norm) end the Taylor expansion.
const SERIES_TAIL: f64 = 1e-16;

/// Scaled norm at or below which the Taylor series is summed directly.
const SCALED_NORM: f64 = 0.5;

/// Factor ordering of a disentangled exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisentanglingOrder {
    /// Lowering factor leftmost, raising factor rightmost.
    Ldu,
    /// Raising factor leftmost, lowering factor rightmost.
    Udl,
}

impl DisentanglingOrder {
    pub const ALL: [DisentanglingOrder; 2] = [DisentanglingOrder::Ldu, DisentanglingOrder::Udl];

    pub fn name(self) -> &'static str {
        match self {
            DisentanglingOrder::Ldu => "ldu",
            DisentanglingOrder::Udl => "udl",
        }
    }
}

/// Scalars of a 2x2 Gauss factorization.
///
/// For [`DisentanglingOrder::Ldu`]: `M = [[1,0],[a,1]] · diag(b,c) · [[1,d],[0,1]]`.
/// For [`DisentanglingOrder::Udl`]: `M = [[1,a],[0,1]] · diag(b,c) · [[1,0],[d,1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussFactors {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl GaussFactors {
    /// Multiplies the three factors back together.
    pub fn reconstruct(&self, order: DisentanglingOrder) -> CMatrix {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let diag = CMatrix::from_diagonal(&[self.b, self.c]);
        let lower = |x| {
            CMatrix::from_fn(2, |i, j| {
                if i == j {
                    one
                } else if i == 1 && j == 0 {
                    x
                } else {
                    zero
                }
            })
        };
        let upper = |x| {
            CMatrix::from_fn(2, |i, j| {
                if i == j {
                    one
                } else if i == 0 && j == 1 {
                    x
                } else {
                    zero
                }
            })
        };
        match order {
            DisentanglingOrder::Ldu => &(&lower(self.a) * &diag) * &upper(self.d),
            DisentanglingOrder::Udl => &(&upper(self.a) * &diag) * &lower(self.d),
        }
    }
}

/// Gauss-factors a 2x2 matrix in the requested order.
pub fn gauss_decompose_2x2(m: &CMatrix, order: DisentanglingOrder) -> Result<GaussFactors> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: 2,
        });
    }
    let tiny = f64::EPSILON * m.norm_inf();
    match order {
        DisentanglingOrder::Ldu => {
            let b = m[(0, 0)];
            if b.norm() <= tiny {
                return Err(Error::SingularFactorization { pivot: "M[0,0]" });
            }
            let d = m[(0, 1)] / b;
            let a = m[(1, 0)] / b;
            let c = m[(1, 1)] - a * b * d;
            Ok(GaussFactors { a, b, c, d })
        }
        DisentanglingOrder::Udl => {
            let c = m[(1, 1)];
            if c.norm() <= tiny {
                return Err(Error::SingularFactorization { pivot: "M[1,1]" });
            }
            let a = m[(0, 1)] / c;
            let d = m[(1, 0)] / c;
            let b = m[(0, 0)] - a * c * d;
            Ok(GaussFactors { a, b, c, d })
        }
    }
}

/// Matrix exponential by scaling and squaring a Taylor series.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    let norm = a.norm_inf();
    let mut squarings = 0u32;
    if norm > SCALED_NORM {
        squarings = (norm / SCALED_NORM).log2().ceil() as u32;
    }
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1.. {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_inf() <= SERIES_TAIL {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(α L_±)`, summed exactly: `L_±` is nilpotent of order `2l+1`.
pub fn exp_ladder(alpha: f64, which: Ladder, rep: &Rep) -> CMatrix {
    let n = rep.dim();
    let gen = rep.ladder(which).scale_real(alpha);
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..n {
        term = (&term * &gen).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

/// `exp(β L_z)`, diagonal with entries `e^{βm}`.
pub fn exp_diag(beta: f64, rep: &Rep) -> CMatrix {
    let diag: Vec<Complex64> = (0..rep.dim())
        .map(|i| Complex64::new((beta * rep.m_at(i).value()).exp(), 0.0))
        .collect();
    CMatrix::from_diagonal(&diag)
}

/// Reference rotation `exp(iθL_y)` from the general series exponential.
///
/// `iL_y` is real and antisymmetric in this basis, so the result is real
/// orthogonal; the imaginary parts left by rounding are discarded.
pub fn exp_i_theta_ly(rep: &Rep, theta: f64) -> CMatrix {
    let gen = rep.ly().scale(Complex64::new(0.0, theta));
    let e = expm(&gen);
    CMatrix::from_fn(e.dim(), |i, j| Complex64::new(e[(i, j)].re, 0.0))
}

/// Coefficients of one disentangled form of `exp(iθL_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisentanglingParams {
    pub order: DisentanglingOrder,
    /// Coefficient of `L₋`.
    pub xi_minus: f64,
    /// Coefficient of `L_z`.
    pub lambda_z: f64,
    /// Coefficient of `L₊`.
    pub xi_plus: f64,
    pub theta: f64,
}

fn check_open_angle(theta: f64) -> Result<()> {
    if (0.0..PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::Range(format!(
            "disentangled form needs 0 <= theta < pi, got {theta}"
        )))
    }
}

/// Derives the disentangling coefficients at angle `theta` by Gauss-factoring
/// the spin-1/2 rotation.
pub fn disentangling_params(theta: f64, order: DisentanglingOrder) -> Result<DisentanglingParams> {
    check_open_angle(theta)?;
    let spinor = build_rep(HalfInt::HALF)?;
    let rotation = exp_i_theta_ly(&spinor, theta);
    let f = gauss_decompose_2x2(&rotation, order)?;

    // In the spin-1/2 representation exp(x L₋) = [[1,0],[x,1]],
    // exp(x L₊) = [[1,x],[0,1]] and exp(λ L_z) = diag(e^{λ/2}, e^{-λ/2}).
    let lambda_z = 2.0 * f.b.re.ln();
    let (xi_minus, xi_plus) = match order {
        DisentanglingOrder::Ldu => (f.a.re, f.d.re),
        DisentanglingOrder::Udl => (f.d.re, f.a.re),
    };
    Ok(DisentanglingParams {
        order,
        xi_minus,
        lambda_z,
        xi_plus,
        theta,
    })
}

/// Evaluates the disentangled form of `exp(iθL_y)` in `rep`.
///
/// The factor entries grow like `(1 + tan²(θ/2))^l` while the product stays
/// orthogonal, so a single product loses roughly that many digits. When the
/// growth would exceed 2 the factors are built at `θ/2^k` instead and the
/// product is squared `k` times. Small angles and low `l` take `k = 0`, which
/// is exactly [`params_product`].
pub fn disentangled_product(rep: &Rep, theta: f64, order: DisentanglingOrder) -> Result<CMatrix> {
    check_open_angle(theta)?;
    let halvings = halvings_needed(rep.l(), theta);
    let p = disentangling_params(theta / f64::from(1u32 << halvings), order)?;
    let mut m = params_product(rep, &p);
    for _ in 0..halvings {
        m = &m * &m;
    }
    Ok(m)
}

/// Number of angle halvings that keep `(1 + tan²(θ/2))^l <= 2`.
pub fn halvings_needed(l: HalfInt, theta: f64) -> u32 {
    if l.doubled() <= 0 {
        return 0;
    }
    let bound = 2f64.powf(1.0 / l.value()) - 1.0;
    let mut k = 0;
    let mut angle = theta;
    while (angle / 2.0).tan().powi(2) > bound && k < 30 {
        angle /= 2.0;
        k += 1;
    }
    k
}

/// The single three-factor product for already-derived coefficients.
pub fn params_product(rep: &Rep, p: &DisentanglingParams) -> CMatrix {
    let lower = exp_ladder(p.xi_minus, Ladder::Lower, rep);
    let diag = exp_diag(p.lambda_z, rep);
    let upper = exp_ladder(p.xi_plus, Ladder::Raise, rep);
    match p.order {
        DisentanglingOrder::Ldu => &(&lower * &diag) * &upper,
        DisentanglingOrder::Udl => &(&upper * &diag) * &lower,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rot2(theta: f64) -> CMatrix {
        let (s, co) = (theta / 2.0).sin_cos();
        CMatrix::from_real_rows(&[vec![co, s], vec![-s, co]])
    }

    #[test]
    fn gauss_ldu_quarter_turn() {
        let f = gauss_decompose_2x2(&rot2(FRAC_PI_2), DisentanglingOrder::Ldu).unwrap();
        let h = (PI / 4.0).cos();
        assert!((f.a - c(-1.0)).norm() < 1e-15);
        assert!((f.b - c(h)).norm() < 1e-15);
        assert!((f.c - c(1.0 / h)).norm() < 1e-15);
        assert!((f.d - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_udl_quarter_turn() {
        let f = gauss_decompose_2x2(&rot2(FRAC_PI_2), DisentanglingOrder::Udl).unwrap();
        let h = (PI / 4.0).cos();
        assert!((f.a - c(1.0)).norm() < 1e-15);
        assert!((f.b - c(1.0 / h)).norm() < 1e-15);
        assert!((f.c - c(h)).norm() < 1e-15);
        assert!((f.d - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_identity() {
        for order in DisentanglingOrder::ALL {
            let f = gauss_decompose_2x2(&CMatrix::identity(2), order).unwrap();
            assert_eq!((f.a, f.b, f.c, f.d), (c(0.0), c(1.0), c(1.0), c(0.0)));
        }
    }

    #[test]
    fn gauss_reconstructs_random_matrix() {
        let m = CMatrix::from_fn(2, |i, j| {
            Complex64::new(1.0 + i as f64 * 0.3, j as f64 - 0.7 * i as f64)
        });
        for order in DisentanglingOrder::ALL {
            let f = gauss_decompose_2x2(&m, order).unwrap();
            assert!(f.reconstruct(order).max_abs_diff(&m).unwrap() < 1e-14);
        }
    }

    #[test]
    fn gauss_singular_pivot() {
        let flip = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        for order in DisentanglingOrder::ALL {
            assert!(matches!(
                gauss_decompose_2x2(&flip, order),
                Err(Error::SingularFactorization { .. })
            ));
        }
        assert!(gauss_decompose_2x2(&CMatrix::identity(3), DisentanglingOrder::Ldu).is_err());
    }

    #[test]
    fn ladder_exponential_spin_half() {
        let rep = build_rep(HalfInt::HALF).unwrap();
        let e = exp_ladder(0.7, Ladder::Raise, &rep);
        assert_eq!(
            e,
            CMatrix::from_real_rows(&[vec![1.0, 0.7], vec![0.0, 1.0]])
        );
        let e = exp_ladder(0.7, Ladder::Lower, &rep);
        assert_eq!(
            e,
            CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.7, 1.0]])
        );
    }

    #[test]
    fn ladder_exponential_spin_one() {
        let rep = build_rep(HalfInt::ONE).unwrap();
        let theta: f64 = 1.1;
        let t = (theta / 2.0).tan();
        let r2 = 2f64.sqrt();
        let expected = CMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![-r2 * t, 1.0, 0.0],
            vec![t * t, -r2 * t, 1.0],
        ]);
        let e = exp_ladder(-t, Ladder::Lower, &rep);
        assert!(e.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn zero_exponents_give_identity() {
        for twice in 0..8 {
            let rep = build_rep(HalfInt::from_doubled(twice)).unwrap();
            let id = CMatrix::identity(rep.dim());
            assert_eq!(exp_ladder(0.0, Ladder::Raise, &rep), id);
            assert_eq!(exp_ladder(0.0, Ladder::Lower, &rep), id);
            assert_eq!(exp_diag(0.0, &rep), id);
            assert_eq!(exp_i_theta_ly(&rep, 0.0), id);
        }
    }

    #[test]
    fn diagonal_exponential() {
        let theta: f64 = 0.9;
        let h = (theta / 2.0).cos();
        let beta = (h * h).ln();

        let rep = build_rep(HalfInt::ONE).unwrap();
        let e = exp_diag(beta, &rep);
        let expected = CMatrix::from_diagonal(&[c(h * h), c(1.0), c(1.0 / (h * h))]);
        assert!(e.max_abs_diff(&expected).unwrap() < 1e-15);

        let rep = build_rep(HalfInt::HALF).unwrap();
        let e = exp_diag(beta, &rep);
        let expected = CMatrix::from_diagonal(&[c(h), c(1.0 / h)]);
        assert!(e.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn spin_half_rotation() {
        let rep = build_rep(HalfInt::HALF).unwrap();
        for k in 0..=16 {
            let theta = PI * k as f64 / 16.0;
            let e = exp_i_theta_ly(&rep, theta);
            assert!(
                e.max_abs_diff(&rot2(theta)).unwrap() < 1e-15,
                "theta = {theta}"
            );
        }
    }

    #[test]
    fn spin_one_rotation() {
        let rep = build_rep(HalfInt::ONE).unwrap();
        let theta: f64 = 2.3;
        let (s, co) = theta.sin_cos();
        let r2 = 2f64.sqrt();
        let expected = CMatrix::from_real_rows(&[
            vec![(1.0 + co) / 2.0, s / r2, (1.0 - co) / 2.0],
            vec![-s / r2, co, s / r2],
            vec![(1.0 - co) / 2.0, -s / r2, (1.0 + co) / 2.0],
        ]);
        assert!(exp_i_theta_ly(&rep, theta).max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn params_quarter_turn() {
        let p = disentangling_params(FRAC_PI_2, DisentanglingOrder::Ldu).unwrap();
        assert!((p.xi_minus + 1.0).abs() < 1e-15);
        assert!((p.lambda_z - 0.5f64.ln()).abs() < 1e-15);
        assert!((p.xi_plus - 1.0).abs() < 1e-15);

        let p = disentangling_params(FRAC_PI_2, DisentanglingOrder::Udl).unwrap();
        assert!((p.xi_plus - 1.0).abs() < 1e-15);
        assert!((p.lambda_z - 2f64.ln()).abs() < 1e-15);
        assert!((p.xi_minus + 1.0).abs() < 1e-15);
    }

    #[test]
    fn params_at_zero() {
        for order in DisentanglingOrder::ALL {
            let p = disentangling_params(0.0, order).unwrap();
            assert_eq!((p.xi_minus, p.lambda_z, p.xi_plus), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn params_reject_half_turn() {
        for order in DisentanglingOrder::ALL {
            assert!(matches!(
                disentangling_params(PI, order),
                Err(Error::Range(_))
            ));
            assert!(matches!(
                disentangling_params(-0.1, order),
                Err(Error::Range(_))
            ));
            let rep = build_rep(HalfInt::ONE).unwrap();
            assert!(matches!(
                disentangled_product(&rep, PI, order),
                Err(Error::Range(_))
            ));
        }
    }

    #[test]
    fn halving_schedule() {
        assert_eq!(halvings_needed(HalfInt::ZERO, 3.0), 0);
        assert_eq!(halvings_needed(HalfInt::ONE, FRAC_PI_2), 0);
        assert_eq!(halvings_needed(HalfInt::ONE, 2.0), 1);
        assert_eq!(halvings_needed(HalfInt::HALF, 2.0), 0);
        assert!(halvings_needed(HalfInt::from_int(10), 3.0) >= 3);
    }

    #[test]
    fn spin_half_udl_quarter_turn() {
        let rep = build_rep(HalfInt::HALF).unwrap();
        let h = 0.5f64.sqrt();
        let expected = CMatrix::from_real_rows(&[vec![h, h], vec![-h, h]]);
        let p = disentangled_product(&rep, FRAC_PI_2, DisentanglingOrder::Udl).unwrap();
        assert!(p.max_abs_diff(&expected).unwrap() < 1e-15);
    }
}
