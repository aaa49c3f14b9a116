//! Selecting one coefficient of a normal form, and the symbolic factor it
//! multiplies, for building datasets.

use std::str::FromStr;

use num_bigint::BigInt;

use super::normalize::{NormalFormReport, Trig};
use super::resonance::FrequencySpec;
use super::NormalFormError;
use crate::numeric::BigRat;
use crate::remnant::{AlgebraicValue, ExprTree, Func};

/// `c:2,0` selects `c_ℓ`; `A:1,-5:cos` (optionally `:0,1` for extra action
/// powers) selects a resonant coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    C(Vec<u32>),
    A { k: Vec<i64>, extra: Vec<u32>, trig: Trig },
}

impl FromStr for Quantity {
    type Err = NormalFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NormalFormError::BadQuantity(s.to_string());
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let ints = |p: &str| -> Result<Vec<i64>, NormalFormError> {
            p.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
        };
        match parts.as_slice() {
            [tag, ell] if tag.eq_ignore_ascii_case("c") => {
                let v = ints(ell)?;
                if v.iter().any(|x| *x < 0) {
                    return Err(bad());
                }
                Ok(Quantity::C(v.into_iter().map(|x| x as u32).collect()))
            }
            [tag, k, trig, rest @ ..] if tag.eq_ignore_ascii_case("a") && rest.len() <= 1 => {
                let k = ints(k)?;
                let trig = match trig.to_ascii_lowercase().as_str() {
                    "cos" => Trig::Cos,
                    "sin" => Trig::Sin,
                    _ => return Err(bad()),
                };
                let extra = match rest.first() {
                    Some(e) => {
                        let v = ints(e)?;
                        if v.len() != k.len() || v.iter().any(|x| *x < 0) {
                            return Err(bad());
                        }
                        v.into_iter().map(|x| x as u32).collect()
                    }
                    None => vec![0; k.len()],
                };
                Ok(Quantity::A { k, extra, trig })
            }
            _ => Err(bad()),
        }
    }
}

impl Quantity {
    pub fn dof(&self) -> usize {
        match self {
            Quantity::C(ell) => ell.len(),
            Quantity::A { k, .. } => k.len(),
        }
    }

    /// The selected coefficient (zero when the term is absent).
    pub fn value(&self, report: &NormalFormReport) -> AlgebraicValue {
        match self {
            Quantity::C(ell) => AlgebraicValue::rational(report.c_coeff(ell)),
            Quantity::A { k, extra, trig } => report.resonant(k, extra, *trig),
        }
    }

    /// The factor the coefficient multiplies, in `R(j)` and `FI(j)`:
    /// `R(1)**2` for `c:2,0`, `sqrt(R(1))*sqrt(R(2))*R(2)**2*cos(FI(1) - 5*FI(2))`
    /// for `A:1,-5:cos`.
    pub fn structure(&self, freq: &FrequencySpec) -> ExprTree {
        let r = |j: usize| ExprTree::indexed("R", j as u64 + 1);
        let mut factors = Vec::new();
        match self {
            Quantity::C(ell) => {
                for (j, e) in ell.iter().enumerate() {
                    if *e > 0 {
                        factors.push(ExprTree::pow(r(j), i64::from(*e)));
                    }
                }
            }
            Quantity::A { k, extra, trig } => {
                for (j, kj) in k.iter().enumerate() {
                    if kj % 2 != 0 {
                        factors.push(ExprTree::call(Func::Sqrt, r(j)));
                    }
                }
                for (j, kj) in k.iter().enumerate() {
                    let whole = kj.unsigned_abs() / 2 + u64::from(extra[j]);
                    if whole > 0 {
                        factors.push(ExprTree::pow(r(j), whole as i64));
                    }
                }
                let mut angle = Vec::new();
                for (j, kj) in k.iter().enumerate() {
                    let c = kj * i64::from(freq.sign(j));
                    if c == 0 {
                        continue;
                    }
                    let fi = ExprTree::indexed("FI", j as u64 + 1);
                    angle.push(if c == 1 {
                        fi
                    } else {
                        ExprTree::Product(vec![ExprTree::Num(BigRat::from_integer(BigInt::from(c))), fi])
                    });
                }
                let f = match trig {
                    Trig::Cos => Func::Cos,
                    Trig::Sin => Func::Sin,
                };
                factors.push(ExprTree::call(f, ExprTree::sum(angle)));
            }
        }
        ExprTree::product(factors)
    }
}
