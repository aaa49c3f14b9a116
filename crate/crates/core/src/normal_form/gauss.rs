use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::numeric::BigRat;

/// `re + i*im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRat,
    pub im: BigRat,
}

impl GaussRat {
    pub fn new(re: BigRat, im: BigRat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRat) -> Self {
        GaussRat { re, im: BigRat::zero() }
    }

    pub fn i() -> Self {
        GaussRat::new(BigRat::zero(), BigRat::one())
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::real(BigRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        GaussRat::new(&self.re * c, &self.im * c)
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => -GaussRat::one(),
            _ => -GaussRat::i(),
        }
    }

    /// `self / other`; `None` for division by zero.
    pub fn checked_div(&self, other: &GaussRat) -> Option<GaussRat> {
        let norm = &other.re * &other.re + &other.im * &other.im;
        if norm.is_zero() {
            return None;
        }
        let p = self * &other.conj();
        Some(GaussRat::new(p.re / &norm, p.im / norm))
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "({} + {}*i)", self.re, self.im)
        }
    }
}
