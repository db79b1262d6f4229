//! Exact complex rational numbers, the coefficient ring of every expression.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `re + i·im` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cx {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cx {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Cx::from_int(1)
    }

    pub fn i() -> Self {
        Cx::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Cx::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cx::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn from_real(re: BigRational) -> Self {
        Cx::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Cx::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact rational approximation of a finite `f64` (the binary value itself).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Cx::from_real)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Cx::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, rhs: &Cx) -> Cx {
        Cx::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, rhs: &Cx) -> Cx {
        Cx::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, rhs: &Cx) -> Cx {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Cx::from_real(&self.re * &rhs.re);
        }
        Cx::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Div for &Cx {
    type Output = Cx;
    fn div(self, rhs: &Cx) -> Cx {
        self * &rhs.inv().expect("division by exact zero")
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cx {
    /// Prints in the expression grammar: `3`, `-1/2`, `2*i`, `(1/2+3*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    fmt_rational(&self.im, f)?;
                    write!(f, "*i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.re, f)?;
                if self.im.is_positive() {
                    write!(f, "+")?;
                    fmt_rational(&self.im, f)?;
                } else {
                    write!(f, "-")?;
                    fmt_rational(&self.im.abs(), f)?;
                }
                write!(f, "*i)")
            }
        }
    }
}
