use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, content, BigRat, NumericError};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[j]` is the coefficient of `s^j`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * s^degree`.
    pub fn monomial(c: BigRat, degree: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `s`.
    pub fn var() -> Self {
        Self::monomial(BigRat::one(), 1)
    }

    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(BigRat::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of `s^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> BigRat {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigRat::from_integer(BigInt::from(j)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), NumericError> {
        let dd = divisor.degree().ok_or(NumericError::DivisionByZero)?;
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRat::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, NumericError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(NumericError::DivisionByZero)
        }
    }

    /// Monic version (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Splits into `(c, p)` with `self = c * p`, `p` having coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRat, UniPoly) {
        if self.is_zero() {
            return (BigRat::zero(), Self::zero());
        }
        let (ints, scale) = self.integer_coeffs();
        let g = content(ints.iter());
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * &sign;
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRat::from_integer(g) / scale, Self::from_bigints(prim))
    }

    /// Integer coefficients `n_j` and factor `d` with `self = (Σ n_j s^j) / d`.
    pub fn integer_coeffs(&self) -> (Vec<BigInt>, BigRat) {
        let d = common_denominator(self.coeffs.iter());
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRat::from_integer(d.clone())).to_integer())
            .collect();
        (ints, BigRat::from_integer(d))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `p(c * s)`.
    pub fn compose_scale(&self, c: &BigRat) -> Self {
        let mut pw = BigRat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// Renders in the dataset expression grammar with `var` as the variable,
    /// highest degree first, e.g. `3260508*s**4 - 2668610*s**3 + 187`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match j {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}**{j}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.render("s"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("s"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn eval_examples() {
        let p = UniPoly::from_ints(&[1, 1]);
        assert_eq!(p.eval(&int(2)), int(3));
        assert_eq!(UniPoly::zero().eval(&rat(7, 3)), int(0));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = UniPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::new(vec![int(0)]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (s-1)^2 (s+2) and (s-1)(s+3)
        let a = UniPoly::from_ints(&[-1, 1]).pow(2) * UniPoly::from_ints(&[2, 1]);
        let b = UniPoly::from_ints(&[-1, 1]) * UniPoly::from_ints(&[3, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(a.div_rem(&UniPoly::zero()).is_err());
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        let p = UniPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        let (c, q) = p.primitive_part();
        assert_eq!(q, UniPoly::from_ints(&[-2, 3]));
        assert_eq!(q.scale(&c), p);
    }

    #[test]
    fn render_matches_grammar() {
        let q = UniPoly::from_ints(&[187, -13090, 312005, -2668610, 3260508]);
        assert_eq!(
            q.render("s"),
            "3260508*s**4 - 2668610*s**3 + 312005*s**2 - 13090*s + 187"
        );
        assert_eq!(UniPoly::from_ints(&[1, -1]).render("s"), "-s + 1");
    }
}
