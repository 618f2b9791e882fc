//! Exact rational arithmetic for factorial ratios and radical coefficients.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial divisors tried when canonicalizing an arbitrary radicand.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∏ num! / ∏ den!` as an exact rational.
pub fn factorial_ratio(num: &[u32], den: &[u32]) -> BigRational {
    let top: BigInt = num.iter().map(|&n| factorial(n)).product();
    let bottom: BigInt = den.iter().map(|&n| factorial(n)).product();
    BigRational::new(top, bottom)
}

/// Correctly rounded conversion.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(if q.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// The exact value of a finite double.
pub fn f64_to_ratio(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite double")
}

/// Evaluates `Σ coeffs[n] · xⁿ` exactly at the double `x` and rounds once.
///
/// `x` is a dyadic rational `M·2^E`, so clearing the common denominator of the
/// coefficients and the power of two turns the whole sum into a single big
/// integer. Alternating sums with large binomial coefficients therefore lose
/// nothing to cancellation.
pub fn eval_poly_exact(coeffs: &[BigRational], x: f64) -> f64 {
    assert!(x.is_finite(), "polynomial argument must be finite");
    let Some(deg) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return 0.0;
    };
    let denom = coeffs[..=deg]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs[..=deg]
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();

    let (mantissa, exponent, sign) = x.integer_decode();
    let mut m = BigInt::from(mantissa);
    if sign < 0 {
        m = -m;
    }
    // x = m · 2^exponent. For exponent >= 0 fold the power into m; otherwise
    // scale by 2^(-exponent · deg) to keep everything integral.
    let (m, shift) = if exponent >= 0 {
        (m << exponent as usize, 0usize)
    } else {
        (m, (-exponent) as usize)
    };

    let mut acc = ints[deg].clone();
    for n in (0..deg).rev() {
        acc = acc * &m + (&ints[n] << (shift * (deg - n)));
    }
    let scale = denom << (shift * deg);
    ratio_to_f64(&BigRational::new_raw(acc, scale))
}

/// Exponent of the prime `p` in `n!`.
fn legendre_exponent(n: u32, p: u32) -> u32 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q;
        q /= p;
    }
    e
}

fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// Splits `n` into `(a, b)` with `n = a²·b` and `b` squarefree, as far as
/// trial division up to [`TRIAL_DIVISION_LIMIT`] can tell. A leftover cofactor
/// that is a perfect square is absorbed as well.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && BigUint::from(d * d) <= rest {
        let mut count = 0;
        while (&rest % d).is_zero() {
            rest /= d;
            count += 1;
        }
        for _ in 0..count / 2 {
            root *= d;
        }
        if count % 2 == 1 {
            free *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= s;
    } else {
        free *= rest;
    }
    (root, free)
}

/// A number `r·√s` with `r`, `s` rational and `s >= 0`.
///
/// Canonical form: `s = p/q` with `p`, `q` squarefree and coprime, all square
/// factors moved into `r`. Zero is stored as `0·√1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactCoeff {
    r: BigRational,
    s: BigRational,
}

impl ExactCoeff {
    pub fn new(r: BigRational, s: BigRational) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::Domain(format!("radicand {s} is negative")));
        }
        Ok(Self::canonical(r, s))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::canonical(r, BigRational::one())
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// `√(∏ num! / ∏ den!)`, canonicalized through prime exponents so that
    /// no large integer needs factoring.
    pub fn sqrt_factorial_ratio(num: &[u32], den: &[u32]) -> Self {
        let top = num.iter().chain(den).copied().max().unwrap_or(0);
        let mut r_num = BigInt::one();
        let mut r_den = BigInt::one();
        let mut s_num = BigInt::one();
        let mut s_den = BigInt::one();
        for p in primes_up_to(top) {
            let e: i64 = num
                .iter()
                .map(|&n| legendre_exponent(n, p) as i64)
                .sum::<i64>()
                - den
                    .iter()
                    .map(|&n| legendre_exponent(n, p) as i64)
                    .sum::<i64>();
            let (half, odd) = (e.abs() / 2, e.abs() % 2 == 1);
            let pow = BigInt::from(p).pow(half as u32);
            if e >= 0 {
                r_num *= pow;
                if odd {
                    s_num *= p;
                }
            } else {
                r_den *= pow;
                if odd {
                    s_den *= p;
                }
            }
        }
        ExactCoeff {
            r: BigRational::new(r_num, r_den),
            s: BigRational::new(s_num, s_den),
        }
    }

    fn canonical(r: BigRational, s: BigRational) -> Self {
        if r.is_zero() || s.is_zero() {
            return ExactCoeff {
                r: BigRational::zero(),
                s: BigRational::one(),
            };
        }
        let (num_root, num_free) = split_square(s.numer().magnitude());
        let (den_root, den_free) = split_square(s.denom().magnitude());
        let r = r * BigRational::new(BigInt::from(num_root), BigInt::from(den_root));
        let s = BigRational::new(BigInt::from(num_free), BigInt::from(den_free));
        ExactCoeff { r, s }
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    /// Nearest double to `r·√s` (within one ulp).
    pub fn to_f64(&self) -> f64 {
        if self.r.is_zero() {
            return 0.0;
        }
        if self.s.is_one() {
            return ratio_to_f64(&self.r);
        }
        // |r|·√s = √(r²s); take an integer square root with 64+ significant bits.
        let q = &self.r * &self.r * &self.s;
        let (num, den) = (q.numer().magnitude(), q.denom().magnitude());
        let bits = num.bits() as i64 - den.bits() as i64;
        let k = (70 - bits / 2).max(0) as usize;
        let root = ((num << (2 * k)) / den).sqrt();
        let value = root.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(k as i32));
        if self.r.is_negative() {
            -value
        } else {
            value
        }
    }
}

impl Mul for &ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: &ExactCoeff) -> ExactCoeff {
        ExactCoeff::canonical(&self.r * &rhs.r, &self.s * &rhs.s)
    }
}

impl Mul<&BigRational> for &ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: &BigRational) -> ExactCoeff {
        if rhs.is_zero() {
            return ExactCoeff::zero();
        }
        ExactCoeff {
            r: &self.r * rhs,
            s: self.s.clone(),
        }
    }
}

impl Neg for ExactCoeff {
    type Output = ExactCoeff;
    fn neg(self) -> ExactCoeff {
        ExactCoeff {
            r: -self.r,
            s: self.s,
        }
    }
}

impl fmt::Display for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_one() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{}·√({})", self.r, self.s)
        }
    }
}
