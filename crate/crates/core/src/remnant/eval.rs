//! Exact evaluation of expressions whose value is a radical monomial.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::expr::{render_expr, ExprTree, Func};
use super::radical::{canonical_cbrt, AlgebraicValue};
use super::RemnantError;

/// Values for free symbols, keyed by their rendered name (`s`, `R(1)`).
pub type Bindings = BTreeMap<String, AlgebraicValue>;

/// Evaluates `tree` exactly.
///
/// Sums are only defined between terms that reduce to the same radical, and
/// `sqrt` needs a rational argument. Perfect-cube `cbrt` arguments evaluate;
/// `sin`, `cos` and `log` never do.
pub fn evaluate(tree: &ExprTree, env: &Bindings) -> Result<AlgebraicValue, RemnantError> {
    match tree {
        ExprTree::Num(r) => Ok(AlgebraicValue::rational(r.clone())),
        ExprTree::Sym { .. } => {
            let key = render_expr(tree);
            env.get(&key).cloned().ok_or(RemnantError::UnboundSymbol(key))
        }
        ExprTree::Call(f, arg) => {
            let v = evaluate(arg, env)?;
            let Some(r) = v.as_rational() else {
                return Err(RemnantError::Unsupported(render_expr(tree)));
            };
            match f {
                Func::Sqrt => AlgebraicValue::sqrt_of(r),
                Func::Cbrt => {
                    let (c, p, q) = canonical_cbrt(r);
                    if p == BigUint::one() && q == BigUint::one() {
                        Ok(AlgebraicValue::rational(c))
                    } else {
                        Err(RemnantError::Unsupported(render_expr(tree)))
                    }
                }
                Func::Sin | Func::Cos | Func::Log => Err(RemnantError::Unsupported(render_expr(tree))),
            }
        }
        ExprTree::Pow(b, e) => evaluate(b, env)?.pow(*e),
        ExprTree::Product(fs) => fs.iter().try_fold(AlgebraicValue::one(), |acc, f| {
            Ok(acc.mul(&evaluate(f, env)?))
        }),
        ExprTree::Sum(ts) => ts
            .iter()
            .try_fold(AlgebraicValue::rational(Default::default()), |acc, t| {
                acc.add(&evaluate(t, env)?)
            }),
        ExprTree::Neg(a) => Ok(evaluate(a, env)?.neg()),
        ExprTree::Slot(k) => Err(RemnantError::Unsupported(format!("slot [{k}]"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::remnant::parse_expr;

    fn at_s(text: &str, s: crate::numeric::BigRat) -> Result<AlgebraicValue, RemnantError> {
        let env = Bindings::from([("s".to_string(), AlgebraicValue::rational(s))]);
        evaluate(&parse_expr(text).unwrap(), &env)
    }

    #[test]
    fn polynomial_and_radicals() {
        assert_eq!(at_s("s**2 - 3*s + 1", int(2)).unwrap(), AlgebraicValue::rational(int(-1)));
        let v = at_s("sqrt(1 - s)/(2*sqrt(s))", rat(1, 5)).unwrap();
        // sqrt(4/5) / (2 sqrt(1/5)) = 1
        assert!(v.value_eq(&AlgebraicValue::one()));
    }

    #[test]
    fn unlike_sum_is_rejected() {
        assert_eq!(at_s("sqrt(2) + sqrt(3)", int(0)), Err(RemnantError::UnlikeRadicals));
        assert!(at_s("sqrt(8) + sqrt(2)", int(0)).unwrap().value_eq(&at_s("3*sqrt(2)", int(0)).unwrap()));
    }

    #[test]
    fn unsupported_and_unbound() {
        assert!(matches!(at_s("sin(1)", int(0)), Err(RemnantError::Unsupported(_))));
        assert!(matches!(at_s("t + 1", int(0)), Err(RemnantError::UnboundSymbol(ref n)) if n == "t"));
        assert_eq!(at_s("cbrt(27/8)", int(0)).unwrap(), AlgebraicValue::rational(rat(3, 2)));
        assert_eq!(at_s("1/(s - 1)", int(1)), Err(RemnantError::DivisionByZero));
    }
}
