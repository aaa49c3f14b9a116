//! Common structure of a set of evaluations.
//!
//! Subtrees equal at every point are kept verbatim. Positions where every
//! point holds a radical monomial become slots. Products are split into their
//! numeric and symbolic factors, symbolic factors and sum terms are matched up
//! by shape, so `2*x` lines up with `x` (slot values 2 and 1) and factor order
//! may differ between points.

use super::expr::ExprTree;
use super::radical::{canonicalize_radical, is_radical_monomial, AlgebraicValue};
use super::RemnantError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub tree: ExprTree,
    pub slot_count: usize,
}

impl Skeleton {
    /// The skeleton with `Slot(k)` replaced by `values[k]`.
    pub fn substitute(&self, values: &[AlgebraicValue]) -> ExprTree {
        self.tree.map_slots(&|k| values[k].to_tree())
    }
}

/// Skeleton of `points` and, for every point, the values of its slots.
pub fn extract_skeleton(
    points: &[ExprTree],
) -> Result<(Skeleton, Vec<Vec<AlgebraicValue>>), RemnantError> {
    if points.len() < 2 {
        return Err(RemnantError::TooFewPoints(points.len()));
    }
    let mut st = State {
        values: vec![Vec::new(); points.len()],
    };
    let refs: Vec<&ExprTree> = points.iter().collect();
    let tree = st.align(&refs)?;
    let slot_count = st.values[0].len();
    Ok((Skeleton { tree, slot_count }, st.values))
}

/// One-slot skeleton of a single expression: its numeric factor becomes
/// `Slot(0)`, returned alongside.
pub fn numeric_slot(t: &ExprTree) -> Result<(Skeleton, AlgebraicValue), RemnantError> {
    let (num, neg, sym) = split_factors(t);
    let v = num
        .iter()
        .try_fold(AlgebraicValue::one(), |acc, f| Ok::<_, RemnantError>(acc.mul(&canonicalize_radical(f)?)))?;
    let v = if neg { v.neg() } else { v };
    let mut factors = vec![ExprTree::Slot(0)];
    factors.extend(sym.into_iter().cloned());
    Ok((
        Skeleton {
            tree: ExprTree::product(factors),
            slot_count: 1,
        },
        v,
    ))
}

struct State {
    values: Vec<Vec<AlgebraicValue>>,
}

impl State {
    fn new_slot(&mut self, vals: Vec<AlgebraicValue>) -> ExprTree {
        let k = self.values[0].len();
        for (slot, v) in self.values.iter_mut().zip(vals) {
            slot.push(v);
        }
        ExprTree::Slot(k)
    }

    fn align(&mut self, ts: &[&ExprTree]) -> Result<ExprTree, RemnantError> {
        let first = ts[0];
        if ts.iter().all(|t| *t == first) {
            return Ok(first.clone());
        }
        if ts.iter().all(|t| is_radical_monomial(t)) {
            let vals = ts
                .iter()
                .map(|t| canonicalize_radical(t))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(self.new_slot(vals));
        }
        if ts.iter().any(|t| matches!(t, ExprTree::Product(_) | ExprTree::Neg(_)))
            || ts.iter().any(|t| is_radical_monomial(t))
        {
            return self.align_products(ts);
        }
        match first {
            ExprTree::Sum(terms) => {
                let lists = ts
                    .iter()
                    .map(|t| match t {
                        ExprTree::Sum(v) if v.len() == terms.len() => Ok(v.iter().collect::<Vec<_>>()),
                        _ => Err(mismatch(first, t)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let columns = match_by_shape(&lists)?;
                let aligned = columns
                    .iter()
                    .map(|col| self.align(col))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExprTree::Sum(aligned))
            }
            ExprTree::Call(f, _) => {
                let args = ts
                    .iter()
                    .map(|t| match t {
                        ExprTree::Call(g, a) if g == f => Ok(&**a),
                        _ => Err(mismatch(first, t)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExprTree::call(*f, self.align(&args)?))
            }
            ExprTree::Pow(_, e) => {
                let bases = ts
                    .iter()
                    .map(|t| match t {
                        ExprTree::Pow(b, e2) if e2 == e => Ok(&**b),
                        _ => Err(mismatch(first, t)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExprTree::pow(self.align(&bases)?, *e))
            }
            _ => Err(mismatch(first, ts.iter().find(|t| **t != first).unwrap())),
        }
    }

    /// Products (and bare factors, treated as one-factor products): the numeric
    /// part becomes one slot unless it is the same everywhere.
    fn align_products(&mut self, ts: &[&ExprTree]) -> Result<ExprTree, RemnantError> {
        let split: Vec<(Vec<&ExprTree>, bool, Vec<&ExprTree>)> = ts.iter().map(|t| split_factors(t)).collect();
        let symbolic: Vec<Vec<&ExprTree>> = split.iter().map(|(_, _, s)| s.clone()).collect();
        let n0 = symbolic[0].len();
        if let Some(i) = symbolic.iter().position(|s| s.len() != n0) {
            return Err(mismatch(ts[0], ts[i]));
        }
        let columns = match_by_shape(&symbolic)?;

        let mut factors = Vec::new();
        let same_numeric = split.iter().all(|(n, neg, _)| *n == split[0].0 && *neg == split[0].1);
        if same_numeric {
            if split[0].1 {
                factors.push(ExprTree::Num(crate::numeric::int(-1)));
            }
            factors.extend(split[0].0.iter().map(|f| (*f).clone()));
        } else {
            let vals = split
                .iter()
                .map(|(n, neg, _)| {
                    let v = n.iter().try_fold(AlgebraicValue::one(), |acc, f| {
                        Ok::<_, RemnantError>(acc.mul(&canonicalize_radical(f)?))
                    })?;
                    Ok(if *neg { v.neg() } else { v })
                })
                .collect::<Result<Vec<_>, RemnantError>>()?;
            factors.push(self.new_slot(vals));
        }
        for col in &columns {
            factors.push(self.align(col)?);
        }
        Ok(ExprTree::product(factors))
    }
}

/// (numeric factors, sign flipped by a negation, symbolic factors).
fn split_factors(t: &ExprTree) -> (Vec<&ExprTree>, bool, Vec<&ExprTree>) {
    let mut num = Vec::new();
    let mut sym = Vec::new();
    let mut neg = false;
    fn walk<'a>(t: &'a ExprTree, num: &mut Vec<&'a ExprTree>, sym: &mut Vec<&'a ExprTree>, neg: &mut bool) {
        match t {
            ExprTree::Product(fs) => fs.iter().for_each(|f| walk(f, num, sym, neg)),
            ExprTree::Neg(a) => {
                *neg = !*neg;
                walk(a, num, sym, neg);
            }
            f if is_radical_monomial(f) => num.push(f),
            f => sym.push(f),
        }
    }
    walk(t, &mut num, &mut sym, &mut neg);
    (num, neg, sym)
}

/// Shape of a tree for matching: numeric parts erased.
fn shape(t: &ExprTree) -> ExprTree {
    if is_radical_monomial(t) {
        return ExprTree::Slot(0);
    }
    match t {
        ExprTree::Product(_) | ExprTree::Neg(_) => {
            let (_, _, sym) = split_factors(t);
            let mut shapes: Vec<ExprTree> = sym.into_iter().map(shape).collect();
            shapes.sort();
            ExprTree::product(shapes)
        }
        ExprTree::Sum(v) => {
            let mut shapes: Vec<ExprTree> = v.iter().map(shape).collect();
            shapes.sort();
            ExprTree::Sum(shapes)
        }
        ExprTree::Call(f, a) => ExprTree::call(*f, shape(a)),
        ExprTree::Pow(b, e) => ExprTree::Pow(Box::new(shape(b)), *e),
        other => other.clone(),
    }
}

/// Regroups equally long lists into columns, in the first list's order, by
/// pairing each element with the first unused element of the same shape.
fn match_by_shape<'a>(lists: &[Vec<&'a ExprTree>]) -> Result<Vec<Vec<&'a ExprTree>>, RemnantError> {
    let order: Vec<ExprTree> = lists[0].iter().map(|t| shape(t)).collect();
    let mut columns: Vec<Vec<&ExprTree>> = lists[0].iter().map(|t| vec![*t]).collect();
    for list in &lists[1..] {
        let shapes: Vec<ExprTree> = list.iter().map(|t| shape(t)).collect();
        let mut used = vec![false; list.len()];
        for (col, want) in columns.iter_mut().zip(&order) {
            let Some(j) = (0..list.len()).find(|&j| !used[j] && shapes[j] == *want) else {
                return Err(RemnantError::StructuralMismatch(format!(
                    "no counterpart for `{}`",
                    col[0]
                )));
            };
            used[j] = true;
            col.push(list[j]);
        }
    }
    Ok(columns)
}

fn mismatch(a: &ExprTree, b: &ExprTree) -> RemnantError {
    RemnantError::StructuralMismatch(format!("`{a}` vs `{b}`"))
}

/// Normal form for comparing trees up to factor and term order and up to the
/// representation of radical coefficients.
pub fn canonical_form(t: &ExprTree) -> ExprTree {
    if is_radical_monomial(t) {
        if let Ok(v) = canonicalize_radical(t) {
            return v.normalized().to_tree();
        }
    }
    match t {
        ExprTree::Product(_) | ExprTree::Neg(_) => {
            let (num, neg, sym) = split_factors(t);
            let mut v = AlgebraicValue::one();
            for f in num {
                match canonicalize_radical(f) {
                    Ok(x) => v = v.mul(&x),
                    Err(_) => return t.clone(),
                }
            }
            if neg {
                v = v.neg();
            }
            if v.is_zero() {
                return ExprTree::Num(Default::default());
            }
            let mut rest: Vec<ExprTree> = sym.into_iter().map(canonical_form).collect();
            rest.sort();
            let mut factors = Vec::new();
            let v = v.normalized();
            if v != AlgebraicValue::one() {
                factors.push(v.to_tree());
            }
            factors.extend(rest);
            ExprTree::product(factors)
        }
        ExprTree::Sum(v) => {
            let mut terms: Vec<ExprTree> = v.iter().map(canonical_form).collect();
            terms.sort();
            ExprTree::Sum(terms)
        }
        ExprTree::Call(f, a) => ExprTree::call(*f, canonical_form(a)),
        ExprTree::Pow(b, e) => ExprTree::pow(canonical_form(b), *e),
        other => other.clone(),
    }
}
