//! Finite-dimensional representations of the angular-momentum algebra.
//!
//! Units are chosen so that ħ = 1. Basis vectors are ordered by descending
//! magnetic quantum number: index 0 is `|l, l>`, index `2l` is `|l, -l>`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::spin::HalfInt;

/// Direction of a ladder operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// The `(2l+1)`-dimensional representation of `L_z`, `L_+` and `L_-`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rep {
    l: HalfInt,
    lz: CMatrix,
    lp: CMatrix,
    lm: CMatrix,
}

impl Rep {
    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.lz.dim()
    }

    pub fn lz(&self) -> &CMatrix {
        &self.lz
    }

    pub fn lp(&self) -> &CMatrix {
        &self.lp
    }

    pub fn lm(&self) -> &CMatrix {
        &self.lm
    }

    pub fn ladder(&self, which: Ladder) -> &CMatrix {
        match which {
            Ladder::Raise => &self.lp,
            Ladder::Lower => &self.lm,
        }
    }

    /// `(L_+ + L_-) / 2`
    pub fn lx(&self) -> CMatrix {
        (&self.lp + &self.lm).scale_real(0.5)
    }

    /// `(L_+ - L_-) / 2i`
    pub fn ly(&self) -> CMatrix {
        (&self.lp - &self.lm).scale(Complex64::new(0.0, -0.5))
    }

    /// `L_x² + L_y² + L_z²`
    pub fn casimir(&self) -> CMatrix {
        let lx = self.lx();
        let ly = self.ly();
        let sum = &(&lx * &lx) + &(&ly * &ly);
        &sum + &(&self.lz * &self.lz)
    }

    /// Basis index of `|l, m>`.
    pub fn index_of(&self, m: HalfInt) -> Result<usize> {
        check_projection(self.l, m)?;
        Ok(((self.l.doubled() - m.doubled()) / 2) as usize)
    }

    /// Magnetic quantum number at a basis index.
    pub fn m_at(&self, index: usize) -> HalfInt {
        HalfInt::from_doubled(self.l.doubled() - 2 * index as i64)
    }
}

fn check_projection(l: HalfInt, m: HalfInt) -> Result<()> {
    if l.doubled() < 0 {
        return Err(Error::Domain(format!("l = {l} is negative")));
    }
    if m.abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    if !(l - m).is_integer() {
        return Err(Error::Domain(format!(
            "l - m = {} is not an integer",
            l - m
        )));
    }
    Ok(())
}

/// Builds the spin-`l` representation.
pub fn build_rep(l: HalfInt) -> Result<Rep> {
    if l.doubled() < 0 {
        return Err(Error::Domain(format!("l = {l} is negative")));
    }
    let dim = (l.doubled() + 1) as usize;
    let lv = l.value();
    let m_of = |i: usize| lv - i as f64;

    let lz = CMatrix::from_diagonal(
        &(0..dim)
            .map(|i| Complex64::new(m_of(i), 0.0))
            .collect::<Vec<_>>(),
    );
    let mut lp = CMatrix::zeros(dim);
    // L_+ |m> lands on |m+1>, which is one index up.
    for col in 1..dim {
        let m = m_of(col);
        lp[(col - 1, col)] = Complex64::new(((lv - m) * (lv + m + 1.0)).sqrt(), 0.0);
    }
    let lm = lp.adjoint();
    Ok(Rep { l, lz, lp, lm })
}

/// Matrix element of `L_±` taking `|l, m>` to `|l, m±1>`.
pub fn ladder_coeff(l: HalfInt, m: HalfInt, dir: Ladder) -> Result<f64> {
    check_projection(l, m)?;
    let (l, m) = (l.value(), m.value());
    Ok(match dir {
        Ladder::Raise => ((l - m) * (l + m + 1.0)).sqrt(),
        Ladder::Lower => ((l + m) * (l - m + 1.0)).sqrt(),
    })
}

/// `AB - BA`
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}
