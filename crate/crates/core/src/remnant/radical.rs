//! Square-root monomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use super::expr::{render_expr, ExprTree, Func};
use super::RemnantError;
use crate::numeric::factor::{power_free_split, squarefree_split};
use crate::numeric::BigRat;

/// `coeff * Π sqrt(d)^e` with every `d` a squarefree integer > 1 and `e = ±1`.
///
/// Radicands are kept separately as they come (`sqrt(19)**(-1)*sqrt(26)`
/// stays two radicals), so structural equality is finer than equality of
/// values; compare values with [`AlgebraicValue::value_eq`] or through
/// [`AlgebraicValue::reduced`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicValue {
    pub coeff: BigRat,
    pub radicals: BTreeMap<BigUint, i8>,
}

impl AlgebraicValue {
    pub fn rational(r: BigRat) -> Self {
        AlgebraicValue {
            coeff: r,
            radicals: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicals.is_empty()
    }

    pub fn as_rational(&self) -> Option<&BigRat> {
        self.is_rational().then_some(&self.coeff)
    }

    /// Sign of the value; radicals are positive reals.
    pub fn signum(&self) -> i32 {
        crate::numeric::sign_of(&self.coeff)
    }

    /// Canonical `sqrt(r)` for `r >= 0`: square content of the numerator and
    /// denominator moves into the coefficient, the squarefree remainders stay
    /// as `sqrt(p) * sqrt(q)^(-1)`.
    pub fn sqrt_of(r: &BigRat) -> Result<Self, RemnantError> {
        if r.is_negative() {
            return Err(RemnantError::NegativeRadicand(r.clone()));
        }
        if r.is_zero() {
            return Ok(Self::rational(BigRat::zero()));
        }
        let (na, nb) = squarefree_split(r.numer().magnitude());
        let (da, db) = squarefree_split(r.denom().magnitude());
        let mut v = Self::rational(BigRat::new(BigInt::from(na), BigInt::from(da)));
        v.mul_radical(nb, 1);
        v.mul_radical(db, -1);
        Ok(v)
    }

    /// Multiplies by `sqrt(d)^e` for squarefree `d`.
    fn mul_radical(&mut self, d: BigUint, e: i8) {
        if d.is_one() || e == 0 || self.coeff.is_zero() {
            return;
        }
        let total = self.radicals.get(&d).copied().unwrap_or(0) + e;
        match total {
            0 => {
                self.radicals.remove(&d);
            }
            2 => {
                self.radicals.remove(&d);
                self.coeff *= BigRat::from_integer(BigInt::from(d));
            }
            -2 => {
                self.radicals.remove(&d);
                self.coeff /= BigRat::from_integer(BigInt::from(d));
            }
            t => {
                self.radicals.insert(d, t);
            }
        }
    }

    pub fn mul(&self, other: &AlgebraicValue) -> AlgebraicValue {
        let mut out = AlgebraicValue::rational(&self.coeff * &other.coeff);
        if out.coeff.is_zero() {
            return out;
        }
        out.radicals = self.radicals.clone();
        for (d, e) in &other.radicals {
            out.mul_radical(d.clone(), *e);
        }
        out
    }

    pub fn inv(&self) -> Result<AlgebraicValue, RemnantError> {
        if self.is_zero() {
            return Err(RemnantError::DivisionByZero);
        }
        Ok(AlgebraicValue {
            coeff: self.coeff.recip(),
            radicals: self.radicals.iter().map(|(d, e)| (d.clone(), -e)).collect(),
        })
    }

    pub fn neg(&self) -> AlgebraicValue {
        AlgebraicValue {
            coeff: -&self.coeff,
            radicals: self.radicals.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<AlgebraicValue, RemnantError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = AlgebraicValue::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The exact rational `v^2`.
    pub fn square(&self) -> BigRat {
        let mut r = &self.coeff * &self.coeff;
        for (d, e) in &self.radicals {
            let d = BigRat::from_integer(BigInt::from(d.clone()));
            if *e > 0 {
                r *= d;
            } else {
                r /= d;
            }
        }
        r
    }

    /// Unique form `c * sqrt(D)` with `D` a squarefree positive integer
    /// (`D = 1` for rationals).
    pub fn reduced(&self) -> (BigRat, BigUint) {
        if self.radicals.is_empty() || self.is_zero() {
            return (self.coeff.clone(), BigUint::one());
        }
        // Π d^e = P / Q  ->  sqrt(P/Q) = sqrt(P Q) / Q
        let mut p = BigUint::one();
        let mut q = BigUint::one();
        for (d, e) in &self.radicals {
            if *e > 0 {
                p *= d;
            } else {
                q *= d;
            }
        }
        let (a, b) = squarefree_split(&(&p * &q));
        let c = &self.coeff * BigRat::new(BigInt::from(a), BigInt::from(q));
        (c, b)
    }

    /// The reduced form as a value of this type.
    pub fn normalized(&self) -> AlgebraicValue {
        let (c, d) = self.reduced();
        let mut v = AlgebraicValue::rational(c);
        v.mul_radical(d, 1);
        v
    }

    pub fn value_eq(&self, other: &AlgebraicValue) -> bool {
        self.reduced() == other.reduced()
    }

    /// Sum, defined when both reduce to the same radicand (or one is zero).
    pub fn add(&self, other: &AlgebraicValue) -> Result<AlgebraicValue, RemnantError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, d1) = self.reduced();
        let (b, d2) = other.reduced();
        if d1 != d2 {
            return Err(RemnantError::UnlikeRadicals);
        }
        let mut v = AlgebraicValue::rational(a + b);
        v.mul_radical(d1, 1);
        Ok(v)
    }

    /// Expression tree `coeff * sqrt(d1)**(±1) * ...`, radicands ascending,
    /// the numeral omitted when it is 1.
    pub fn to_tree(&self) -> ExprTree {
        let mut factors = Vec::new();
        if !self.coeff.is_one() || self.radicals.is_empty() {
            factors.push(ExprTree::Num(self.coeff.clone()));
        }
        for (d, e) in &self.radicals {
            let root = ExprTree::call(
                Func::Sqrt,
                ExprTree::Num(BigRat::from_integer(BigInt::from(d.clone()))),
            );
            factors.push(if *e > 0 { root } else { ExprTree::pow(root, -1) });
        }
        ExprTree::product(factors)
    }

    /// f64 approximation, for diagnostics only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mut v = self.coeff.to_f64().unwrap_or(f64::NAN);
        for (d, e) in &self.radicals {
            let s = d.to_f64().unwrap_or(f64::NAN).sqrt();
            v *= if *e > 0 { s } else { 1.0 / s };
        }
        v
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expr(&self.to_tree()))
    }
}

/// Canonical value of a radical monomial: numerals, `sqrt` of rational
/// arguments, products, integer powers and negation.
pub fn canonicalize_radical(t: &ExprTree) -> Result<AlgebraicValue, RemnantError> {
    match t {
        ExprTree::Num(r) => Ok(AlgebraicValue::rational(r.clone())),
        ExprTree::Call(Func::Sqrt, arg) => {
            let inner = canonicalize_radical(arg)?;
            match inner.as_rational() {
                Some(r) => AlgebraicValue::sqrt_of(r),
                None => Err(RemnantError::NotRadicalMonomial(render_expr(t))),
            }
        }
        ExprTree::Pow(b, e) => canonicalize_radical(b)?.pow(*e),
        ExprTree::Product(fs) => fs.iter().try_fold(AlgebraicValue::one(), |acc, f| {
            Ok(acc.mul(&canonicalize_radical(f)?))
        }),
        ExprTree::Neg(a) => Ok(canonicalize_radical(a)?.neg()),
        _ => Err(RemnantError::NotRadicalMonomial(render_expr(t))),
    }
}

pub fn is_radical_monomial(t: &ExprTree) -> bool {
    match t {
        ExprTree::Num(_) => true,
        ExprTree::Call(Func::Sqrt, a) => is_rational_numeric(a),
        ExprTree::Pow(b, _) | ExprTree::Neg(b) => is_radical_monomial(b),
        ExprTree::Product(fs) => fs.iter().all(is_radical_monomial),
        _ => false,
    }
}

fn is_rational_numeric(t: &ExprTree) -> bool {
    match t {
        ExprTree::Num(_) => true,
        ExprTree::Pow(b, _) | ExprTree::Neg(b) => is_rational_numeric(b),
        ExprTree::Product(fs) => fs.iter().all(is_rational_numeric),
        _ => false,
    }
}

/// Cube-root analogue of [`AlgebraicValue::sqrt_of`]: returns `(c, p, q)`
/// with `cbrt(r) = c * cbrt(p) / cbrt(q)`, `p` and `q` cube-free and coprime.
pub fn canonical_cbrt(r: &BigRat) -> (BigRat, BigUint, BigUint) {
    let sign = if r.is_negative() { Sign::Minus } else { Sign::Plus };
    let (na, nb) = power_free_split(r.numer().magnitude(), 3);
    let (da, db) = power_free_split(r.denom().magnitude(), 3);
    let c = BigRat::new(BigInt::from_biguint(sign, na), BigInt::from(da));
    (c, nb, db)
}
