//! Order-by-order normalization with one Lie generator per degree.
//!
//! Conventions: `x_j = q_j + i p_j`, `y_j = q_j - i p_j`, bracket as in
//! [`PolySeries::bracket`] (so `{q, p} = 1`), and
//! `H2 = Σ λ_j (q_j² + p_j²)/2 = Σ λ_j x_j y_j / 2`. A monomial
//! `x^a y^b` is an eigenvector of `{H2, ·}` with eigenvalue `i μ`,
//! `μ = Σ λ_j (a_j - b_j)`. At degree `d` the generator
//! `W_d = Σ i h_m / μ_m x^a y^b` over the removable monomials turns
//! `H` into `exp(L_W) H`, `L_W f = {f, W}`, which has no removable terms of
//! degree `d` left.
//!
//! Polar variables: `q = sqrt(2r) sin φ`, `p = sqrt(2r) cos φ`, hence
//! `x = i sqrt(2r) e^{-iφ}` and `y = -i sqrt(2r) e^{iφ}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::gauss::GaussRat;
use super::resonance::{FrequencySpec, ResonanceVector};
use super::series::{exponent, total_degree, Exponent, PolySeries};
use super::NormalFormError;
use crate::numeric::BigRat;
use crate::remnant::AlgebraicValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    pub fn name(self) -> &'static str {
        match self {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        }
    }
}

/// `coeff * Π r_j^(|k_j|/2 + extra_j) * trig(Σ δ_j k_j φ_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonantTerm {
    pub k: Vec<i64>,
    pub extra: Vec<u32>,
    pub coeff: AlgebraicValue,
    pub trig: Trig,
}

/// Normalized Hamiltonian `K` in polar form:
/// `Σ λ_j r_j + Σ_ℓ c_ℓ r^ℓ + Σ resonant terms`.
#[derive(Debug, Clone)]
pub struct NormalFormReport {
    pub freq: FrequencySpec,
    pub order: u32,
    pub linear: Vec<BigRat>,
    /// Action-polynomial coefficients for `|ℓ| >= 2`.
    pub c: BTreeMap<Vec<u32>, BigRat>,
    pub resonant_terms: Vec<ResonantTerm>,
    /// `W_3 ..= W_M`, in the order they were applied.
    pub generators: Vec<PolySeries>,
    /// `K` in complex coordinates.
    pub k: PolySeries,
}

impl NormalFormReport {
    pub fn c_coeff(&self, ell: &[u32]) -> BigRat {
        self.c.get(ell).cloned().unwrap_or_default()
    }

    pub fn resonant(&self, k: &[i64], extra: &[u32], trig: Trig) -> AlgebraicValue {
        self.resonant_terms
            .iter()
            .find(|t| t.k == k && t.extra == extra && t.trig == trig)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| AlgebraicValue::rational(BigRat::zero()))
    }

    /// Polar form evaluated in floating point, for diagnostics and oracles.
    pub fn eval_polar(&self, r: &[f64], phi: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        let mut v: f64 = self
            .linear
            .iter()
            .zip(r)
            .map(|(l, r)| l.to_f64().unwrap() * r)
            .sum();
        for (ell, c) in &self.c {
            let m: f64 = ell.iter().zip(r).map(|(e, r)| r.powi(*e as i32)).product();
            v += c.to_f64().unwrap() * m;
        }
        for t in &self.resonant_terms {
            let mut m = t.coeff.approx();
            let mut angle = 0.0;
            for j in 0..r.len() {
                m *= r[j].powf(t.k[j].unsigned_abs() as f64 / 2.0 + t.extra[j] as f64);
                angle += f64::from(self.freq.sign(j)) * t.k[j] as f64 * phi[j];
            }
            v += m * match t.trig {
                Trig::Cos => angle.cos(),
                Trig::Sin => angle.sin(),
            };
        }
        v
    }
}

/// `Σ λ_j x_j y_j / 2`.
pub fn quadratic_part(freq: &FrequencySpec, trunc: u32) -> PolySeries {
    let n = freq.dof();
    let mut h2 = PolySeries::zero(n, trunc);
    for j in 0..n {
        let mut a = vec![0; n];
        a[j] = 1;
        h2.add_term(exponent(&a, &a), GaussRat::real(freq.lambda(j) / BigRat::from_integer(2.into())));
    }
    h2
}

fn split(e: &Exponent, n: usize) -> (&[u32], &[u32]) {
    (&e[..n], &e[n..])
}

fn eigen(freq: &FrequencySpec, e: &Exponent) -> (BigRat, Vec<i64>) {
    let n = freq.dof();
    let (a, b) = split(e, n);
    let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| i64::from(*x) - i64::from(*y)).collect();
    let mu = d
        .iter()
        .enumerate()
        .map(|(j, dj)| freq.lambda(j) * BigRat::from_integer((*dj).into()))
        .sum();
    (mu, d)
}

/// `δ ∘ d`, the angle vector of a monomial.
fn angle_vector(freq: &FrequencySpec, d: &[i64]) -> Vec<i64> {
    d.iter().enumerate().map(|(j, x)| i64::from(freq.sign(j)) * x).collect()
}

fn render_monomial(e: &Exponent, n: usize) -> String {
    let (a, b) = split(e, n);
    let mut parts = Vec::new();
    for (j, p) in a.iter().enumerate() {
        if *p > 0 {
            parts.push(format!("x{}^{}", j + 1, p));
        }
    }
    for (j, p) in b.iter().enumerate() {
        if *p > 0 {
            parts.push(format!("y{}^{}", j + 1, p));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Whether `x^a y^b` stays in the normal form: `a = b`, or its angle vector
/// is parallel to a declared resonance. A zero eigenvalue otherwise is a
/// small-divisor failure.
fn in_kernel(freq: &FrequencySpec, resonances: &[ResonanceVector], e: &Exponent) -> Result<Option<BigRat>, NormalFormError> {
    let (mu, d) = eigen(freq, e);
    if !mu.is_zero() {
        return Ok(Some(mu));
    }
    if d.iter().all(|x| *x == 0) {
        return Ok(None);
    }
    let k = angle_vector(freq, &d);
    if resonances.iter().any(|r| r.is_parallel(&k)) {
        Ok(None)
    } else {
        Err(NormalFormError::SmallDivisorZero {
            monomial: render_monomial(e, freq.dof()),
        })
    }
}

/// Normalizes `h` (complex coordinates) through degree `order`.
pub fn normalize(
    h: &PolySeries,
    freq: &FrequencySpec,
    order: u32,
    resonances: &[ResonanceVector],
) -> Result<NormalFormReport, NormalFormError> {
    let n = freq.dof();
    if h.dof() != n {
        return Err(NormalFormError::DofMismatch {
            series: h.dof(),
            frequencies: n,
        });
    }
    if order < 3 {
        return Err(NormalFormError::OrderTooLow(order));
    }
    let mut cur = h.with_trunc(order);
    if !cur.degree_part(1).is_zero() {
        return Err(NormalFormError::LinearTerms);
    }
    if cur.degree_part(2) != quadratic_part(freq, order) {
        return Err(NormalFormError::NonDiagonalQuadraticPart);
    }
    let mut generators = Vec::new();
    for d in 3..=order {
        let mut w = PolySeries::zero(n, order);
        for (e, c) in cur.degree_part(d).terms() {
            if let Some(mu) = in_kernel(freq, resonances, e)? {
                // {H2, w} = i μ w = -h
                w.add_term(e.clone(), (&GaussRat::i() * c).scale(&mu.recip()));
            }
        }
        if !w.is_zero() {
            cur = cur.lie_transform(&w);
        }
        generators.push(w);
    }
    let (linear, c, resonant_terms) = polar_form(&cur, freq, resonances)?;
    Ok(NormalFormReport {
        freq: freq.clone(),
        order,
        linear,
        c,
        resonant_terms,
        generators,
        k: cur,
    })
}

/// One kernel monomial (together with its conjugate) in polar variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarTerm {
    /// `coeff * r^ell`.
    Action { ell: Vec<u32>, coeff: BigRat },
    /// `cos * P cos θ + sin * P sin θ` with
    /// `P = Π r_j^(|k_j|/2 + extra_j)`, `θ = Σ δ_j k_j φ_j`.
    Resonant {
        k: Vec<i64>,
        extra: Vec<u32>,
        cos: AlgebraicValue,
        sin: AlgebraicValue,
    },
}

/// Polar form of `c x^a y^b + conj`, or of `c x^a y^a` alone. The monomial
/// must be in the kernel; for an angle-dependent one, `e` must be the
/// representative whose angle vector has a positive first entry.
pub fn to_polar(
    e: &Exponent,
    c: &GaussRat,
    freq: &FrequencySpec,
    resonances: &[ResonanceVector],
) -> Result<PolarTerm, NormalFormError> {
    let n = freq.dof();
    if in_kernel(freq, resonances, e)?.is_some() {
        return Err(NormalFormError::NotInKernel {
            monomial: render_monomial(e, n),
        });
    }
    let (a, b) = split(e, n);
    if a == b {
        if !c.is_real() {
            return Err(NormalFormError::NonReal {
                monomial: render_monomial(e, n),
            });
        }
        let deg: u32 = a.iter().sum();
        let coeff = &c.re * BigRat::from_integer(BigInt::from(2u32).pow(deg));
        return Ok(PolarTerm::Action { ell: a.to_vec(), coeff });
    }
    let (_, d) = eigen(freq, e);
    let k = angle_vector(freq, &d);
    if k.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        return Err(NormalFormError::NotRepresentative {
            monomial: render_monomial(e, n),
        });
    }
    let extra: Vec<u32> = a.iter().zip(b).map(|(x, y)| *x.min(y)).collect();
    let ord: u32 = k.iter().map(|x| x.unsigned_abs() as u32).sum();
    let abs_a: u32 = a.iter().sum();
    let abs_b: u32 = b.iter().sum();
    // u = i^|a| (-i)^|b|
    let u = GaussRat::i_pow(abs_a + 3 * abs_b);
    let cu = c * &u;
    let two_pow = BigInt::from(2u32).pow(ord / 2 + extra.iter().sum::<u32>() + 1);
    let mut base = AlgebraicValue::rational(BigRat::from_integer(two_pow));
    if ord % 2 == 1 {
        base = base.mul(&AlgebraicValue::sqrt_of(&BigRat::from_integer(2.into())).expect("positive"));
    }
    let cos = base.mul(&AlgebraicValue::rational(cu.re.clone()));
    let sin = base.mul(&AlgebraicValue::rational(cu.im.clone()));
    Ok(PolarTerm::Resonant { k, extra, cos, sin })
}

type PolarParts = (Vec<BigRat>, BTreeMap<Vec<u32>, BigRat>, Vec<ResonantTerm>);

fn polar_form(k: &PolySeries, freq: &FrequencySpec, resonances: &[ResonanceVector]) -> Result<PolarParts, NormalFormError> {
    let n = freq.dof();
    let mut linear = vec![BigRat::zero(); n];
    let mut c = BTreeMap::new();
    let mut grouped: BTreeMap<(Vec<i64>, Vec<u32>), (AlgebraicValue, AlgebraicValue)> = BTreeMap::new();
    for (e, coeff) in k.terms() {
        if total_degree(e) == 0 {
            continue;
        }
        let (_, d) = eigen(freq, e);
        let k_vec = angle_vector(freq, &d);
        if k_vec.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            // the conjugate partner carries this term; check it is there
            let (a, b) = split(e, n);
            let partner = exponent(b, a);
            if k.coeff(&partner) != coeff.conj() {
                return Err(NormalFormError::NonReal {
                    monomial: render_monomial(e, n),
                });
            }
            continue;
        }
        match to_polar(e, coeff, freq, resonances)? {
            PolarTerm::Action { ell, coeff } => {
                if total_degree(e) == 2 {
                    let j = ell.iter().position(|x| *x == 1).unwrap();
                    linear[j] = coeff;
                } else {
                    c.insert(ell, coeff);
                }
            }
            PolarTerm::Resonant { k: kv, extra, cos, sin } => {
                let slot = grouped
                    .entry((kv, extra))
                    .or_insert_with(|| (AlgebraicValue::rational(BigRat::zero()), AlgebraicValue::rational(BigRat::zero())));
                slot.0 = slot.0.add(&cos).map_err(|_| NormalFormError::Internal("mixed radicals".into()))?;
                slot.1 = slot.1.add(&sin).map_err(|_| NormalFormError::Internal("mixed radicals".into()))?;
            }
        }
    }
    let mut terms = Vec::new();
    for ((kv, extra), (cos, sin)) in grouped {
        for (v, trig) in [(cos, Trig::Cos), (sin, Trig::Sin)] {
            if !v.is_zero() {
                terms.push(ResonantTerm {
                    k: kv.clone(),
                    extra: extra.clone(),
                    coeff: v,
                    trig,
                });
            }
        }
    }
    Ok((linear, c, terms))
}

/// Images `Z_v` of the coordinates under the composed transformation,
/// truncated. `exp(L_W) f = f(exp(L_W) x, exp(L_W) y)`, so applying the
/// generators to each coordinate in turn gives `Z` with `K = H(Z)`.
pub fn coordinate_map(generators: &[PolySeries], dof: usize, trunc: u32) -> Vec<PolySeries> {
    (0..2 * dof)
        .map(|v| {
            generators
                .iter()
                .filter(|w| !w.is_zero())
                .fold(PolySeries::variable(dof, trunc, v), |z, w| z.lie_transform(&w.with_trunc(trunc)))
        })
        .collect()
}
