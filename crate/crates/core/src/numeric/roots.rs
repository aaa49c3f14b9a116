use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::divisors;
use super::squarefree::squarefree_decompose;
use super::{BigRat, UniPoly};

/// Rational roots of `p`, repeated by multiplicity, in descending order.
///
/// Works part by part on the squarefree decomposition and applies the
/// rational-root criterion to each primitive integer part: a root `a/b` in
/// lowest terms has `a | p(0)` and `b | lead(p)`. Candidates are pruned with
/// `(b - a) | p(1)` and `(b + a) | p(-1)` before exact evaluation.
pub fn rational_roots(p: &UniPoly) -> Vec<BigRat> {
    let Ok(dec) = squarefree_decompose(p) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (part, mult) in &dec.parts {
        for r in simple_rational_roots(part) {
            out.extend(std::iter::repeat_n(r, *mult as usize));
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Rational roots of a squarefree primitive integer polynomial.
fn simple_rational_roots(part: &UniPoly) -> Vec<BigRat> {
    let mut roots = Vec::new();
    let mut poly = part.clone();
    if poly.valuation().is_some_and(|v| v > 0) {
        roots.push(BigRat::zero());
        poly = poly.exact_div(&UniPoly::var()).expect("s divides");
    }
    if poly.is_constant() {
        return roots;
    }
    let (ints, _) = poly.integer_coeffs();
    let a0 = ints[0].magnitude().clone();
    let lead = ints.last().unwrap().magnitude().clone();
    let at_one = poly.eval(&BigRat::from_integer(1.into())).to_integer();
    let at_minus_one = poly.eval(&BigRat::from_integer((-1).into())).to_integer();
    let num_divs = divisors(&a0);
    let den_divs = divisors(&lead);
    for b in &den_divs {
        for a in &num_divs {
            if !a.gcd(b).is_one() {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let num = BigInt::from_biguint(sign, a.clone());
                let den = BigInt::from_biguint(Sign::Plus, b.clone());
                if !divides(&(&den - &num), &at_one) || !divides(&(&den + &num), &at_minus_one) {
                    continue;
                }
                let r = BigRat::new(num, den);
                if poly.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d.abs()).is_zero()
    }
}
