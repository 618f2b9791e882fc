//! Spherical harmonics and rotation matrices from angular-momentum operator
//! algebra.
//!
//! The building blocks are the `(2l+1)`-dimensional matrices of `L_z`, `L_+`
//! and `L_-` ([`algebra`]), exact exponentials of those generators and the
//! disentangled factorization of `exp(iθL_y)` ([`expm`]). The `m' = 0` row of
//! that rotation gives `Y_l^m` up to normalization; [`harmonics`] evaluates it
//! along four independent routes plus an associated-Legendre reference, and
//! [`exact`] carries the factorial/radical coefficients in exact arithmetic.
//! [`quadrature`] checks orthonormality on the sphere.
//!
//! ```
//! use disentangle::{ylm, Method};
//!
//! let theta = 0.8;
//! let y = ylm(1, -1, theta, 0.3, Method::Form1).unwrap();
//! let expected = (3.0 / (8.0 * std::f64::consts::PI)).sqrt() * theta.sin();
//! assert!((y.norm() - expected).abs() < 1e-14);
//! ```

pub mod algebra;
pub mod error;
pub mod exact;
pub mod expm;
pub mod harmonics;
pub mod matrix;
pub mod quadrature;
pub mod spin;

pub use algebra::{build_rep, commutator, ladder_coeff, Ladder, Rep};
pub use error::{Error, Result};
pub use exact::ExactCoeff;
pub use expm::{
    disentangled_product, disentangling_params, exp_diag, exp_i_theta_ly, exp_ladder,
    gauss_decompose_2x2, DisentanglingOrder, DisentanglingParams, GaussFactors,
};
pub use harmonics::{
    assoc_legendre, d_row, d_row_form1, d_row_form2, d_row_middle, exact_term_series,
    ladder_matrix_element, wigner_d, ylm, HarmonicTermSeries, Method, SeriesForm,
};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use quadrature::{gauss_legendre_rule, sphere_inner, HarmonicSpec, QuadratureRule};
pub use spin::HalfInt;
