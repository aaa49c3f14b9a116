//! Text format for Hamiltonians.
//!
//! ```text
//! # comment
//! dof: 2
//! parameter: t                 (optional)
//! frequencies: 5*t, t
//! signs: +1, +1                (optional, default all +1)
//! order: 6
//! resonances: auto             (optional: auto | none | 1,-5; 2,-10)
//! hamiltonian:
//! 1/3*q(1)*q(2)**2
//! t*p(1)^2*q(2)^2 - q(2)**4/5
//! ```
//!
//! Every line after `hamiltonian:` is a polynomial in `q(j)`, `p(j)` with
//! coefficients built from numerals and the parameter; the lines are summed.
//! `^` is accepted for `**`. Without any quadratic terms the diagonal part
//! `Σ λ_j (q_j² + p_j²)/2` is added; quadratic terms that are given must be
//! exactly that. `auto` declares every resonance up to the order.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::gauss::GaussRat;
use super::resonance::{resonance_vectors, FrequencySpec, ResonanceVector};
use super::series::PolySeries;
use super::{normalize, NormalFormError, NormalFormReport};
use crate::numeric::BigRat;
use crate::remnant::{evaluate, parse_expr, AlgebraicValue, Bindings, ExprTree, Func};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResonanceDecl {
    Auto,
    Listed(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianSpec {
    pub dof: usize,
    pub parameter: Option<String>,
    pub frequencies: Vec<ExprTree>,
    pub signs: Vec<i8>,
    pub order: u32,
    pub resonances: ResonanceDecl,
    pub body: Vec<ExprTree>,
}

/// A Hamiltonian at one parameter value, ready for [`normalize`].
#[derive(Debug, Clone)]
pub struct Instance {
    pub freq: FrequencySpec,
    pub order: u32,
    /// In complex coordinates.
    pub h: PolySeries,
    pub resonances: Vec<ResonanceVector>,
}

impl Instance {
    pub fn normalize(&self) -> Result<NormalFormReport, NormalFormError> {
        normalize(&self.h, &self.freq, self.order, &self.resonances)
    }
}

fn file_err(line: usize, msg: impl Into<String>) -> NormalFormError {
    NormalFormError::File { line, msg: msg.into() }
}

impl HamiltonianSpec {
    pub fn parse(text: &str) -> Result<Self, NormalFormError> {
        let mut header: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut body = Vec::new();
        let mut in_body = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if in_body {
                let tree = parse_expr(&line.replace('^', "**")).map_err(|e| file_err(lineno, e.to_string()))?;
                body.push(tree);
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(file_err(lineno, "expected `key: value`"));
            };
            let key = key.trim().to_ascii_lowercase();
            if key == "hamiltonian" {
                in_body = true;
                if !value.trim().is_empty() {
                    let tree = parse_expr(&value.replace('^', "**")).map_err(|e| file_err(lineno, e.to_string()))?;
                    body.push(tree);
                }
                continue;
            }
            if header.insert(key.clone(), (lineno, value.trim().to_string())).is_some() {
                return Err(file_err(lineno, format!("duplicate key `{key}`")));
            }
        }
        let get = |k: &str| header.get(k).cloned();
        let (dline, dof) = get("dof").ok_or_else(|| file_err(0, "missing `dof`"))?;
        let dof: usize = dof.parse().map_err(|_| file_err(dline, "dof must be a positive integer"))?;
        if dof == 0 {
            return Err(file_err(dline, "dof must be a positive integer"));
        }
        let (fline, freqs) = get("frequencies").ok_or_else(|| file_err(0, "missing `frequencies`"))?;
        let frequencies = freqs
            .split(',')
            .map(|f| parse_expr(f).map_err(|e| file_err(fline, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if frequencies.len() != dof {
            return Err(file_err(fline, format!("expected {dof} frequencies")));
        }
        let signs = match get("signs") {
            None => vec![1; dof],
            Some((sline, s)) => {
                let v = s
                    .split(',')
                    .map(|x| match x.trim() {
                        "1" | "+1" => Ok(1),
                        "-1" => Ok(-1),
                        other => Err(file_err(sline, format!("bad sign `{other}`"))),
                    })
                    .collect::<Result<Vec<i8>, _>>()?;
                if v.len() != dof {
                    return Err(file_err(sline, format!("expected {dof} signs")));
                }
                v
            }
        };
        let (oline, order) = get("order").ok_or_else(|| file_err(0, "missing `order`"))?;
        let order: u32 = order.parse().map_err(|_| file_err(oline, "order must be an integer"))?;
        let resonances = match get("resonances") {
            None => ResonanceDecl::Auto,
            Some((_, v)) if v.eq_ignore_ascii_case("auto") => ResonanceDecl::Auto,
            Some((_, v)) if v.eq_ignore_ascii_case("none") => ResonanceDecl::Listed(Vec::new()),
            Some((rline, v)) => ResonanceDecl::Listed(
                v.split(';')
                    .map(|k| {
                        k.split(',')
                            .map(|x| x.trim().parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| file_err(rline, format!("bad resonance `{k}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let parameter = get("parameter").map(|(_, p)| p);
        for key in header.keys() {
            if !["dof", "frequencies", "signs", "order", "resonances", "parameter"].contains(&key.as_str()) {
                return Err(file_err(header[key].0, format!("unknown key `{key}`")));
            }
        }
        Ok(HamiltonianSpec {
            dof,
            parameter,
            frequencies,
            signs,
            order,
            resonances,
            body,
        })
    }

    /// The Hamiltonian with the parameter set to `value`.
    pub fn instantiate(&self, value: Option<&BigRat>) -> Result<Instance, NormalFormError> {
        let mut env = Bindings::new();
        match (&self.parameter, value) {
            (Some(name), Some(v)) => {
                env.insert(name.clone(), AlgebraicValue::rational(v.clone()));
            }
            (Some(name), None) => return Err(file_err(0, format!("a value for `{name}` is required"))),
            (None, Some(_)) => return Err(file_err(0, "the Hamiltonian has no parameter")),
            (None, None) => {}
        }
        let omegas = self
            .frequencies
            .iter()
            .map(|f| rational_value(f, &env))
            .collect::<Result<Vec<_>, _>>()?;
        let freq = FrequencySpec::new(omegas, self.signs.clone())?;
        let n = self.dof;
        let mut qp = PolySeries::zero(n, self.order);
        for t in &self.body {
            qp = qp.add(&to_series(t, n, self.order, &env)?);
        }
        if qp.degree_part(2).is_zero() {
            let half = BigRat::new(1.into(), 2.into());
            for j in 0..n {
                for v in [j, n + j] {
                    let mut e = vec![0; 2 * n];
                    e[v] = 2;
                    qp.add_term(e, GaussRat::real(freq.lambda(j) * &half));
                }
            }
        }
        let resonances = match &self.resonances {
            ResonanceDecl::Auto => resonance_vectors(&freq, self.order),
            ResonanceDecl::Listed(v) => v
                .iter()
                .map(|k| ResonanceVector::new(k.clone(), &freq))
                .collect::<Result<Vec<_>, _>>()?,
        };
        Ok(Instance {
            freq,
            order: self.order,
            h: PolySeries::from_qp(&qp),
            resonances,
        })
    }
}

fn rational_value(t: &ExprTree, env: &Bindings) -> Result<BigRat, NormalFormError> {
    let v = evaluate(t, env)?;
    v.as_rational()
        .cloned()
        .ok_or_else(|| file_err(0, format!("`{t}` is not rational")))
}

/// Polynomial in `q(j)`, `p(j)` (layout `[q.., p..]`).
fn to_series(t: &ExprTree, n: usize, trunc: u32, env: &Bindings) -> Result<PolySeries, NormalFormError> {
    let constant = |c: BigRat| PolySeries::constant(n, trunc, GaussRat::real(c));
    match t {
        ExprTree::Sym { name, index: Some(j) } if name == "q" || name == "p" => {
            let j = *j as usize;
            if j == 0 || j > n {
                return Err(file_err(0, format!("{name}({j}) outside 1..={n}")));
            }
            let v = if name == "q" { j - 1 } else { n + j - 1 };
            Ok(PolySeries::variable(n, trunc, v))
        }
        ExprTree::Sum(ts) => ts
            .iter()
            .try_fold(PolySeries::zero(n, trunc), |acc, t| Ok(acc.add(&to_series(t, n, trunc, env)?))),
        ExprTree::Product(fs) => fs.iter().try_fold(constant(BigRat::from_integer(1.into())), |acc, f| {
            Ok(acc.mul(&to_series(f, n, trunc, env)?))
        }),
        ExprTree::Neg(a) => Ok(to_series(a, n, trunc, env)?.scale_rat(&BigRat::from_integer((-1).into()))),
        ExprTree::Pow(b, e) if *e > 0 => Ok(to_series(b, n, trunc, env)?.pow(*e as u32)),
        ExprTree::Call(Func::Sqrt, _) | ExprTree::Pow(..) | ExprTree::Num(_) | ExprTree::Sym { .. } => {
            let c = rational_value(t, env)?;
            if c.is_zero() {
                Ok(PolySeries::zero(n, trunc))
            } else {
                Ok(constant(c))
            }
        }
        other => Err(file_err(0, format!("`{other}` is not a polynomial term"))),
    }
}
