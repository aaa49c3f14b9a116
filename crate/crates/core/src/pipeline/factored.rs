//! Rational-root factorization for display: `c * Π (b s - a)^m * rest`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numeric::{rational_roots, BigRat, RationalFunc, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub constant: BigRat,
    /// Distinct rational roots with multiplicities, descending.
    pub roots: Vec<(BigRat, u32)>,
    /// Primitive integer part without rational roots.
    pub rest: UniPoly,
}

impl FactoredPoly {
    pub fn of(p: &UniPoly) -> Self {
        if p.is_constant() {
            return FactoredPoly {
                constant: p.coeff(0),
                roots: Vec::new(),
                rest: UniPoly::one(),
            };
        }
        let mut counts: BTreeMap<BigRat, u32> = BTreeMap::new();
        for r in rational_roots(p) {
            *counts.entry(r).or_default() += 1;
        }
        let mut rest = p.clone();
        for (r, m) in &counts {
            let lin = linear(r);
            for _ in 0..*m {
                rest = rest.exact_div(&lin).expect("root divides");
            }
        }
        let (c, prim) = rest.primitive_part();
        let (prim, c) = if prim.leading().is_negative() { (prim.scale(&-BigRat::one()), -c) } else { (prim, c) };
        FactoredPoly {
            constant: c,
            roots: counts.into_iter().rev().collect(),
            rest: prim,
        }
    }
}

/// `b s - a` for the root `a/b`.
fn linear(r: &BigRat) -> UniPoly {
    UniPoly::new(vec![-BigRat::from_integer(r.numer().clone()), BigRat::from_integer(r.denom().clone())])
}

fn linear_text(r: &BigRat, var: &str, flipped: bool) -> String {
    let (a, b) = (r.numer(), r.denom());
    let bs = if b.is_one() { var.to_string() } else { format!("{b}*{var}") };
    if a.is_zero() {
        return var.to_string();
    }
    match (flipped, a.is_negative()) {
        (false, false) => format!("({bs} - {a})"),
        (false, true) => format!("({bs} + {})", a.abs()),
        (true, false) => format!("({a} - {bs})"),
        (true, true) => format!("(-{} - {bs})", a.abs()),
    }
}

fn power(base: String, m: u32) -> String {
    if m == 1 {
        base
    } else {
        format!("{base}**{m}")
    }
}

/// Factored text for `num`, with sign flipping into a linear factor to avoid
/// a leading minus when possible. Returns (constant, factor texts).
fn factor_texts(f: &FactoredPoly, var: &str) -> (BigRat, Vec<String>) {
    let mut c = f.constant.clone();
    let flip = if c.is_negative() {
        f.roots.iter().position(|(r, m)| r.is_positive() && m % 2 == 1)
    } else {
        None
    };
    if flip.is_some() {
        c = -c;
    }
    let mut out = Vec::new();
    for (j, (r, m)) in f.roots.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        out.push(power(linear_text(r, var, flip == Some(j)), *m));
    }
    if !f.rest.is_constant() {
        let t = f.rest.render(var);
        out.push(if f.rest.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({t})") } else { t });
    }
    if let Some((_, m)) = f.roots.iter().find(|(r, _)| r.is_zero()) {
        out.push(power(var.to_string(), *m));
    }
    (c, out)
}

/// `f` as a product of rational-root factors over a product of
/// rational-root factors, in a form `parse_expr` reads back.
pub fn render_factored(f: &RationalFunc, var: &str) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let (cn, mut num) = factor_texts(&FactoredPoly::of(f.num()), var);
    let (cd, den) = factor_texts(&FactoredPoly::of(f.den()), var);
    let c = cn / cd;
    let neg = c.is_negative();
    let c = c.abs();
    let top: BigInt = c.numer().clone();
    let bottom: BigInt = c.denom().clone();
    if !top.is_one() || num.is_empty() {
        num.insert(0, top.to_string());
    }
    let mut den_parts = Vec::new();
    if !bottom.is_one() {
        den_parts.push(bottom.to_string());
    }
    den_parts.extend(den);
    if !neg && den_parts.is_empty() && num.len() == 1 && num[0].starts_with('(') && num[0].ends_with(')') {
        return num[0][1..num[0].len() - 1].to_string();
    }
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&num.join("*"));
    match den_parts.len() {
        0 => {}
        1 => {
            s.push('/');
            s.push_str(&den_parts[0]);
        }
        _ => {
            s.push_str("/(");
            s.push_str(&den_parts.join("*"));
            s.push(')');
        }
    }
    s
}
