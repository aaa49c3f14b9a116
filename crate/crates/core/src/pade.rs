//! Rational interpolation by undetermined coefficients.
//!
//! For a window `(k, l, m, n)` the unknowns are `a_k..a_l` and `b_m..b_n` and
//! every point `(x, v)` contributes the equation
//! `Σ a_j x^j - v Σ b_j x^j = 0`. The nullspace of that system, reduced and
//! canonically scaled, is the restored function.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::factor::squarefree_split;
use crate::numeric::{solve_homogeneous, squarefree_decompose, BigRat, RationalFunc, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub n: usize,
}

impl DegreeWindow {
    pub fn new(k: usize, l: usize, m: usize, n: usize) -> Result<Self, PadeError> {
        if k > l || m > n {
            return Err(PadeError::BadWindow { k, l, m, n });
        }
        Ok(DegreeWindow { k, l, m, n })
    }

    fn unknowns(&self) -> usize {
        self.l - self.k + 1 + self.n - self.m + 1
    }
}

impl std::fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.l, self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadeError {
    #[error("invalid degree window ({k},{l},{m},{n})")]
    BadWindow { k: usize, l: usize, m: usize, n: usize },
    #[error("data are insufficient: window needs {needed} points, got {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("no rational function of this window fits the data")]
    NoSolution,
    #[error("the data do not determine a unique function in this window")]
    Ambiguous,
    #[error("denominator vanishes at node {index}")]
    PoleAtNode { index: usize },
    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },
    #[error("more points needed: next window requires {needed}, have {have}")]
    DataExhausted { needed: usize, have: usize },
    #[error("no stable function up to the window cap {cap}")]
    NoStabilization { cap: usize },
}

/// Points a window needs: `l - k + n - m + 1`.
pub fn required_points(w: &DegreeWindow) -> usize {
    w.l - w.k + w.n - w.m + 1
}

/// Fits a function of window `w` through all of `points`.
pub fn restore_fixed(points: &[(BigRat, BigRat)], w: &DegreeWindow) -> Result<RationalFunc, PadeError> {
    let needed = required_points(w);
    if points.len() < needed {
        return Err(PadeError::InsufficientData {
            needed,
            have: points.len(),
        });
    }
    check_distinct(points)?;
    let rows: Vec<Vec<BigRat>> = points.iter().map(|(x, v)| equation(x, v, w)).collect();
    let basis = solve_homogeneous(&rows);
    let func = match basis.len() {
        0 => return Err(PadeError::NoSolution),
        1 => to_func(&basis[0], w).ok_or(PadeError::NoSolution)?,
        _ => {
            let mut funcs = basis.iter().map(|v| to_func(v, w));
            let first = funcs.next().flatten().ok_or(PadeError::Ambiguous)?;
            for f in funcs {
                if f.as_ref() != Some(&first) {
                    return Err(PadeError::Ambiguous);
                }
            }
            first
        }
    };
    for (index, (x, v)) in points.iter().enumerate() {
        if func.eval(x).as_ref() != Some(v) {
            return Err(PadeError::PoleAtNode { index });
        }
    }
    Ok(func)
}

fn check_distinct(points: &[(BigRat, BigRat)]) -> Result<(), PadeError> {
    let mut seen = std::collections::HashMap::new();
    for (i, (x, _)) in points.iter().enumerate() {
        if let Some(&first) = seen.get(x) {
            return Err(PadeError::DuplicateNode { first, second: i });
        }
        seen.insert(x.clone(), i);
    }
    Ok(())
}

fn equation(x: &BigRat, v: &BigRat, w: &DegreeWindow) -> Vec<BigRat> {
    let top = w.l.max(w.n);
    let mut powers = Vec::with_capacity(top + 1);
    let mut p = BigRat::one();
    for _ in 0..=top {
        powers.push(p.clone());
        p *= x;
    }
    let mut row = Vec::with_capacity(w.unknowns());
    row.extend(powers[w.k..=w.l].iter().cloned());
    row.extend(powers[w.m..=w.n].iter().map(|p| -(v * p)));
    row
}

fn to_func(v: &[BigRat], w: &DegreeWindow) -> Option<RationalFunc> {
    let split = w.l - w.k + 1;
    let mut num = vec![BigRat::zero(); w.k];
    num.extend(v[..split].iter().cloned());
    let mut den = vec![BigRat::zero(); w.m];
    den.extend(v[split..].iter().cloned());
    RationalFunc::new(UniPoly::new(num), UniPoly::new(den)).ok()
}

/// How `restore_adaptive` walks through windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthPolicy {
    /// Keep `m = n`, i.e. look for a monomial denominator `b s^n`.
    pub monomial_denominator: bool,
    /// Largest `l` and `n` tried.
    pub cap: usize,
}

impl Default for GrowthPolicy {
    fn default() -> Self {
        GrowthPolicy {
            monomial_denominator: false,
            cap: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestoreResult {
    pub func: RationalFunc,
    pub window: DegreeWindow,
    /// The solve used `points[..points_used]`.
    pub points_used: usize,
    pub holdout_verified: bool,
    pub holdout_count: usize,
}

/// Grows the window, `n` and `l` alternately, until two consecutive windows
/// give the same function and that function also fits every point the
/// solves did not use. Each window is solved on its first `n_sum` points.
pub fn restore_adaptive(
    points: &[(BigRat, BigRat)],
    initial: DegreeWindow,
    policy: GrowthPolicy,
) -> Result<RestoreResult, PadeError> {
    check_distinct(points)?;
    let mut w = initial;
    if policy.monomial_denominator {
        w.m = w.n;
    }
    let mut grow_n = true;
    let mut previous: Option<(RationalFunc, DegreeWindow, usize)> = None;
    loop {
        if w.l > policy.cap || w.n > policy.cap {
            return Err(PadeError::NoStabilization { cap: policy.cap });
        }
        let needed = required_points(&w);
        if needed > points.len() {
            return Err(PadeError::DataExhausted {
                needed,
                have: points.len(),
            });
        }
        let current = restore_fixed(&points[..needed], &w).ok();
        match (&previous, current) {
            (Some((f, pw, used)), Some(g)) if *f == g && verify_holdout(&g, &points[*used..]) => {
                return Ok(RestoreResult {
                    func: g,
                    window: *pw,
                    points_used: *used,
                    holdout_verified: true,
                    holdout_count: points.len() - used,
                });
            }
            (_, Some(g)) => previous = Some((g, w, needed)),
            (_, None) => previous = None,
        }
        if grow_n {
            w.n += 1;
            if policy.monomial_denominator {
                w.m = w.n;
            }
        } else {
            w.l += 1;
        }
        grow_n = !grow_n;
    }
}

/// True iff `f(x) = v` exactly at every extra point.
pub fn verify_holdout(f: &RationalFunc, extra: &[(BigRat, BigRat)]) -> bool {
    extra.iter().all(|(x, v)| f.eval(x).as_ref() == Some(v))
}

/// Splits `f = R^2 * r` with `r` having squarefree coprime numerator and
/// denominator, so that `sqrt(f) = R * sqrt(r)` up to sign.
pub fn sqrt_extract(f: &RationalFunc) -> (RationalFunc, RationalFunc) {
    if f.is_zero() {
        return (f.clone(), RationalFunc::constant(BigRat::one()));
    }
    let dn = squarefree_decompose(f.num()).expect("nonzero numerator");
    let dd = squarefree_decompose(f.den()).expect("nonzero denominator");
    let c = &dn.unit / &dd.unit;
    let (a1, a2) = squarefree_split(c.numer().magnitude());
    let (b1, b2) = squarefree_split(c.denom().magnitude());
    let (odd_n, half_n) = dn.split_square();
    let (odd_d, half_d) = dd.split_square();
    let outer = BigRat::new(a1.into(), b1.into());
    let inner = BigRat::new(a2.into(), b2.into());
    let inner = if c.is_negative() { -inner } else { inner };
    let rational = RationalFunc::new(half_n.scale(&outer), half_d).expect("nonzero");
    let radical = RationalFunc::new(odd_n.scale(&inner), odd_d).expect("nonzero");
    (rational, radical)
}
