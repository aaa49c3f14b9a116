use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, content, BigRat, NumericError, UniPoly};

/// Reduced quotient of two polynomials in canonical integer form.
///
/// `num` and `den` are coprime, both have integer coefficients, the combined
/// content of all their coefficients is 1 and `den` has a positive leading
/// coefficient. Two equal rational functions therefore always have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, NumericError> {
        if den.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Ok(Self::normalize_scaling(num, den))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::normalize_scaling(p, UniPoly::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    fn normalize_scaling(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RationalFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            };
        }
        let d = common_denominator(num.coeffs().iter().chain(den.coeffs()));
        let d = BigRat::from_integer(d);
        let (n, m) = (num.scale(&d), den.scale(&d));
        let ints: Vec<BigInt> = n
            .coeffs()
            .iter()
            .chain(m.coeffs())
            .map(|c| c.to_integer())
            .collect();
        let mut g = content(ints.iter());
        if m.leading().is_negative() {
            g = -g;
        }
        let g = BigRat::from_integer(g).recip();
        RationalFunc {
            num: n.scale(&g),
            den: m.scale(&g),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn mul(&self, other: &RationalFunc) -> RationalFunc {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn square(&self) -> RationalFunc {
        self.mul(self)
    }

    pub fn scale(&self, c: &BigRat) -> RationalFunc {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RationalFunc {
        self.scale(&-BigRat::one())
    }

    /// Numerator and denominator degrees, `(None, _)` for zero.
    pub fn degrees(&self) -> (Option<usize>, Option<usize>) {
        (self.num.degree(), self.den.degree())
    }

    pub fn render(&self, var: &str) -> String {
        if self.den == UniPoly::one() {
            return self.num.render(var);
        }
        format!("({})/({})", self.num.render(var), self.den.render(var))
    }

    /// Leading coefficient sign of the numerator (0 for the zero function).
    pub fn num_sign(&self) -> i32 {
        super::sign_of(&self.num.leading())
    }

    pub fn is_one(&self) -> bool {
        self.num == UniPoly::one() && self.den == UniPoly::one()
    }

    pub fn zero() -> Self {
        Self::constant(BigRat::zero())
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    #[cfg(test)]
    pub(crate) fn content_is_one(&self) -> bool {
        let ints: Vec<BigInt> = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(|c| c.to_integer())
            .collect();
        content(ints.iter()).is_one() || self.num.is_zero()
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({})", self.render("s"))
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("s"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn canonical_scaling_is_unique() {
        let s = UniPoly::var();
        let one = UniPoly::one();
        // (s+1)/(s-2) written three different ways
        let a = RationalFunc::new(&s + &one, &s - &UniPoly::constant(int(2))).unwrap();
        let b = RationalFunc::new(
            UniPoly::new(vec![rat(-1, 3), rat(-1, 3)]),
            UniPoly::new(vec![rat(2, 3), rat(-1, 3)]),
        )
        .unwrap();
        let c = RationalFunc::new(
            (&s + &one) * (&s - &UniPoly::constant(int(7))),
            (&s - &UniPoly::constant(int(2))) * (&s - &UniPoly::constant(int(7))),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.num(), &UniPoly::from_ints(&[1, 1]));
        assert_eq!(a.den(), &UniPoly::from_ints(&[-2, 1]));
        assert!(a.content_is_one());
    }

    #[test]
    fn monomial_denominator_scaling() {
        // (1/2 s - 3) / (5/4 s^2)  ->  (2 s - 12) / (5 s^2)
        let f = RationalFunc::new(
            UniPoly::new(vec![int(-3), rat(1, 2)]),
            UniPoly::monomial(rat(5, 4), 2),
        )
        .unwrap();
        assert_eq!(f.num(), &UniPoly::from_ints(&[-12, 2]));
        assert_eq!(f.den(), &UniPoly::monomial(int(5), 2));
    }

    #[test]
    fn eval_and_poles() {
        let f = RationalFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
        assert_eq!(f.eval(&int(2)), Some(rat(1, 2)));
        assert_eq!(f.eval(&int(0)), None);
        assert!(RationalFunc::new(UniPoly::one(), UniPoly::zero()).is_err());
    }
}
