//! Producing datasets: evaluators, parameter points and the parallel driver.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::dataset::{DataPoint, DataSet};
use super::PipelineError;
use crate::normal_form::{HamiltonianSpec, NormalFormError, Quantity};
use crate::numeric::BigRat;
use crate::remnant::{evaluate, parse_expr, render_expr, AlgebraicValue, Bindings, ExprTree};

/// How a parameter value `t` is written as `x(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XMode {
    /// `x = sqrt(t)`, so that squaring recovers `t`.
    Sqrt,
    /// `x = t`.
    Value,
}

impl XMode {
    fn x_of(self, t: &BigRat) -> Result<AlgebraicValue, String> {
        match self {
            XMode::Sqrt => AlgebraicValue::sqrt_of(t).map_err(|e| e.to_string()),
            XMode::Value => Ok(AlgebraicValue::rational(t.clone())),
        }
    }
}

/// A pure map from one parameter value to one data point.
pub trait Evaluator: Sync {
    fn eval_point(&self, t: &BigRat) -> Result<DataPoint, String>;

    fn describe(&self) -> String;
}

/// An expression in the parameter variable and in symbols such as `R(1)`,
/// `FI(2)`. Factors free of other symbols are evaluated exactly; the rest
/// is kept as written.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub expr: ExprTree,
    pub var: String,
    pub x: XMode,
}

impl ClosedForm {
    pub fn parse(text: &str, var: &str, x: XMode) -> Result<Self, PipelineError> {
        let expr = parse_expr(text).map_err(|e| PipelineError::Config(format!("expression: {e}")))?;
        Ok(ClosedForm {
            expr,
            var: var.to_string(),
            x,
        })
    }
}

fn mentions(t: &ExprTree, pred: &dyn Fn(&str, Option<u64>) -> bool) -> bool {
    match t {
        ExprTree::Sym { name, index } => pred(name, *index),
        ExprTree::Num(_) | ExprTree::Slot(_) => false,
        ExprTree::Call(_, a) | ExprTree::Pow(a, _) | ExprTree::Neg(a) => mentions(a, pred),
        ExprTree::Product(v) | ExprTree::Sum(v) => v.iter().any(|c| mentions(c, pred)),
    }
}

fn flatten<'a>(t: &'a ExprTree, out: &mut Vec<&'a ExprTree>, neg: &mut bool) {
    match t {
        ExprTree::Product(fs) => fs.iter().for_each(|f| flatten(f, out, neg)),
        ExprTree::Neg(a) => {
            *neg = !*neg;
            flatten(a, out, neg);
        }
        f => out.push(f),
    }
}

/// `value * symbolic`, re-parsed so that the tree is what a dataset file
/// would give back.
fn numeric_times(value: AlgebraicValue, symbolic: Vec<ExprTree>) -> Result<ExprTree, String> {
    let tree = if value.is_zero() {
        ExprTree::Num(BigRat::zero())
    } else {
        let mut factors = Vec::new();
        if !value.is_rational() || !value.as_rational().is_some_and(One::is_one) || symbolic.is_empty() {
            match value.to_tree() {
                ExprTree::Product(fs) => factors.extend(fs),
                t => factors.push(t),
            }
        }
        factors.extend(symbolic);
        ExprTree::product(factors)
    };
    parse_expr(&render_expr(&tree)).map_err(|e| e.to_string())
}

impl Evaluator for ClosedForm {
    fn eval_point(&self, t: &BigRat) -> Result<DataPoint, String> {
        let var = self.var.as_str();
        let mut env = Bindings::new();
        env.insert(var.to_string(), AlgebraicValue::rational(t.clone()));
        let mut factors = Vec::new();
        let mut neg = false;
        flatten(&self.expr, &mut factors, &mut neg);
        let mut value = AlgebraicValue::one();
        let mut symbolic = Vec::new();
        for f in factors {
            let is_var = |n: &str, i: Option<u64>| n == var && i.is_none();
            if mentions(f, &|n, i| !is_var(n, i)) {
                if mentions(f, &is_var) {
                    return Err(format!("`{}` mixes {var} with other symbols", render_expr(f)));
                }
                symbolic.push(f.clone());
            } else {
                value = value.mul(&evaluate(f, &env).map_err(|e| e.to_string())?);
            }
        }
        if neg {
            value = value.neg();
        }
        Ok(DataPoint {
            x: self.x.x_of(t)?,
            y: numeric_times(value, symbolic)?,
        })
    }

    fn describe(&self) -> String {
        format!("closed form {} in {}", render_expr(&self.expr), self.var)
    }
}

/// One normal-form coefficient of a parametric Hamiltonian, times the
/// action-angle factor it multiplies.
#[derive(Debug, Clone)]
pub struct NormalFormEvaluator {
    pub spec: HamiltonianSpec,
    pub quantity: Quantity,
    pub x: XMode,
}

impl NormalFormEvaluator {
    pub fn new(spec: HamiltonianSpec, quantity: Quantity, x: XMode) -> Result<Self, PipelineError> {
        if quantity.dof() != spec.dof {
            return Err(PipelineError::Config(format!(
                "quantity has {} entries, Hamiltonian has {} degrees of freedom",
                quantity.dof(),
                spec.dof
            )));
        }
        if spec.parameter.is_none() {
            return Err(PipelineError::NormalForm(NormalFormError::File {
                line: 0,
                msg: "the Hamiltonian declares no parameter".into(),
            }));
        }
        Ok(NormalFormEvaluator { spec, quantity, x })
    }
}

impl Evaluator for NormalFormEvaluator {
    fn eval_point(&self, t: &BigRat) -> Result<DataPoint, String> {
        let inst = self.spec.instantiate(Some(t)).map_err(|e| e.to_string())?;
        let rep = inst.normalize().map_err(|e| e.to_string())?;
        let v = self.quantity.value(&rep);
        let structure = self.quantity.structure(&inst.freq);
        Ok(DataPoint {
            x: self.x.x_of(t)?,
            y: numeric_times(v, vec![structure])?,
        })
    }

    fn describe(&self) -> String {
        format!("normal form, order {}", self.spec.order)
    }
}

/// Evaluates every parameter value on a pool of `workers` threads. The
/// result is ordered by point and does not depend on scheduling; per-point
/// wall times come back alongside.
pub fn evaluate_parallel(
    params: &[BigRat],
    evaluator: &dyn Evaluator,
    workers: usize,
) -> Result<(DataSet, Vec<Duration>), PipelineError> {
    if params.is_empty() {
        return Err(PipelineError::Config("no parameter values".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| PipelineError::Internal(e.to_string()))?;
    let results: Vec<(Duration, Result<DataPoint, String>)> = pool.install(|| {
        params
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let r = evaluator.eval_point(t);
                (start.elapsed(), r)
            })
            .collect()
    });
    let mut points = Vec::with_capacity(results.len());
    let mut times = Vec::with_capacity(results.len());
    for (i, (dt, r)) in results.into_iter().enumerate() {
        let p = r.map_err(|msg| PipelineError::Evaluation { index: i + 1, msg })?;
        points.push(p);
        times.push(dt);
    }
    Ok((
        DataSet {
            label: Some(evaluator.describe()),
            points,
        },
        times,
    ))
}

/// `count` exact rationals strictly inside `(lo, hi)`, smallest
/// denominators first, distinct after squaring when `squared` is set.
pub fn parameter_points(lo: &BigRat, hi: &BigRat, count: usize, squared: bool) -> Result<Vec<BigRat>, PipelineError> {
    if lo >= hi {
        return Err(PipelineError::Config(format!("empty interval ({lo}, {hi})")));
    }
    let mut out: Vec<BigRat> = Vec::new();
    let mut den = BigInt::one();
    while out.len() < count {
        let d = BigRat::from_integer(den.clone());
        let first: BigInt = (lo * &d).floor().to_integer() + 1;
        let mut num = first;
        loop {
            let t = BigRat::new(num.clone(), den.clone());
            if &t >= hi {
                break;
            }
            let fresh = *t.denom() == den
                && !out.iter().any(|u| if squared { u.abs() == t.abs() } else { *u == t });
            if fresh {
                out.push(t);
                if out.len() == count {
                    break;
                }
            }
            num += 1;
        }
        den += 1;
        if den > BigInt::from(1_000_000) {
            return Err(PipelineError::Internal("parameter search did not terminate".into()));
        }
    }
    Ok(out)
}
