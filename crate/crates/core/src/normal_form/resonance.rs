use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::NormalFormError;
use crate::numeric::BigRat;

/// Frequencies `ω_j > 0` and signs `δ_j`, with `λ_j = δ_j ω_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySpec {
    omegas: Vec<BigRat>,
    signs: Vec<i8>,
}

impl FrequencySpec {
    pub fn new(omegas: Vec<BigRat>, signs: Vec<i8>) -> Result<Self, NormalFormError> {
        if omegas.is_empty() || omegas.len() != signs.len() {
            return Err(NormalFormError::BadFrequencies("need one sign per frequency".into()));
        }
        if let Some(w) = omegas.iter().find(|w| !w.is_positive()) {
            return Err(NormalFormError::BadFrequencies(format!("frequency {w} is not positive")));
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(NormalFormError::BadFrequencies("signs must be +1 or -1".into()));
        }
        Ok(FrequencySpec { omegas, signs })
    }

    /// All signs `+1`.
    pub fn positive(omegas: Vec<BigRat>) -> Result<Self, NormalFormError> {
        let signs = vec![1; omegas.len()];
        Self::new(omegas, signs)
    }

    pub fn dof(&self) -> usize {
        self.omegas.len()
    }

    pub fn omega(&self, j: usize) -> &BigRat {
        &self.omegas[j]
    }

    pub fn sign(&self, j: usize) -> i8 {
        self.signs[j]
    }

    pub fn lambda(&self, j: usize) -> BigRat {
        if self.signs[j] > 0 {
            self.omegas[j].clone()
        } else {
            -&self.omegas[j]
        }
    }
}

/// Integer `k` with `Σ k_j ω_j = 0`, first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResonanceVector {
    pub k: Vec<i64>,
    pub order: u32,
    pub primitive: bool,
}

impl ResonanceVector {
    pub fn new(k: Vec<i64>, freq: &FrequencySpec) -> Result<Self, NormalFormError> {
        if k.len() != freq.dof() {
            return Err(NormalFormError::BadResonance(k));
        }
        let sum: BigRat = k.iter().enumerate().map(|(j, kj)| freq.omega(j) * BigRat::from_integer((*kj).into())).sum();
        let first = k.iter().find(|x| **x != 0).copied();
        if !sum.is_zero() || first.is_none_or(|f| f < 0) {
            return Err(NormalFormError::BadResonance(k));
        }
        let order = k.iter().map(|x| x.unsigned_abs() as u32).sum();
        let primitive = k.iter().fold(0i64, |g, x| g.gcd(x)) == 1;
        Ok(ResonanceVector { k, order, primitive })
    }

    /// Whether `v` is a rational multiple of `k`.
    pub fn is_parallel(&self, v: &[i64]) -> bool {
        let Some(j) = self.k.iter().position(|x| *x != 0) else {
            return false;
        };
        // v = (v_j / k_j) k  <=>  v_i k_j = v_j k_i for all i
        v.iter().zip(&self.k).all(|(vi, ki)| vi * self.k[j] == v[j] * ki)
    }
}

/// Every resonance vector of order `1..=kmax`, by exhaustive enumeration.
pub fn resonance_vectors(freq: &FrequencySpec, kmax: u32) -> Vec<ResonanceVector> {
    let n = freq.dof();
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    enumerate(0, kmax as i64, &mut k, freq, &mut out);
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| b.k.cmp(&a.k)));
    out
}

fn enumerate(j: usize, budget: i64, k: &mut Vec<i64>, freq: &FrequencySpec, out: &mut Vec<ResonanceVector>) {
    if j == k.len() {
        if let Ok(r) = ResonanceVector::new(k.clone(), freq) {
            out.push(r);
        }
        return;
    }
    for v in -budget..=budget {
        k[j] = v;
        enumerate(j + 1, budget - v.abs(), k, freq, out);
    }
    k[j] = 0;
}
