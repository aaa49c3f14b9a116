//! How often a `sqrt` or `cbrt` of a random argument simplifies.
//!
//! A prefix form is distorted when canonicalization changes it: it
//! disappears (`sqrt(4/9) = 2/3`) or a factor drifts out from under it
//! (`sqrt(5/9) = 1/3*sqrt(5)`). Integer arguments are `1..=B`; rational
//! arguments are coprime pairs `p/q` with `1 <= p, q <= B`, uniformly.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::numeric::BigRat;
use crate::remnant::{canonical_cbrt, canonicalize_radical, AlgebraicValue, ExprTree, Func};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefix {
    Sqrt,
    Cbrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    Integer,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { size: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistortionSpec {
    pub prefix: Prefix,
    pub kind: ArgKind,
    pub bound: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistortionError {
    #[error("argument {0} is not positive")]
    NonPositive(BigRat),
    #[error("{0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub distorted: u64,
    pub total: u64,
    pub exact: bool,
}

impl Estimate {
    pub fn fraction(&self) -> BigRat {
        BigRat::new(self.distorted.into(), self.total.into())
    }

    pub fn value(&self) -> f64 {
        self.distorted as f64 / self.total as f64
    }
}

/// Whether canonicalizing `prefix(arg)` changes the form.
pub fn is_distorted(prefix: Prefix, arg: &BigRat) -> Result<bool, DistortionError> {
    if !arg.is_positive() {
        return Err(DistortionError::NonPositive(arg.clone()));
    }
    let p = arg.numer().magnitude().clone();
    let q = arg.denom().magnitude().clone();
    Ok(match prefix {
        Prefix::Sqrt => {
            let v = canonicalize_radical(&ExprTree::call(Func::Sqrt, ExprTree::Num(arg.clone())))
                .expect("positive rational radicand");
            let mut raw = BTreeMap::new();
            if !p.is_one() {
                raw.insert(p, 1i8);
            }
            if !q.is_one() {
                raw.insert(q, -1i8);
            }
            v.is_rational() || v != AlgebraicValue { coeff: BigRat::one(), radicals: raw }
        }
        Prefix::Cbrt => {
            let (c, cp, cq) = canonical_cbrt(arg);
            (cp.is_one() && cq.is_one()) || !c.is_one() || cp != p || cq != q
        }
    })
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn power(prefix: Prefix) -> u32 {
    match prefix {
        Prefix::Sqrt => 2,
        Prefix::Cbrt => 3,
    }
}

/// Marks the integers in `lo..hi` divisible by some `p^k`.
fn free_mask(lo: u64, hi: u64, k: u32, primes: &[u64]) -> Vec<bool> {
    let mut free = vec![true; (hi - lo) as usize];
    for &p in primes {
        let pk = p.pow(k);
        if pk >= hi {
            break;
        }
        let mut m = lo.div_ceil(pk) * pk;
        while m < hi {
            free[(m - lo) as usize] = false;
            m += pk;
        }
    }
    free
}

fn integer_root(b: u64, k: u32) -> u64 {
    let mut r = (b as f64).powf(1.0 / f64::from(k)) as u64 + 1;
    while r.pow(k) > b {
        r -= 1;
    }
    r
}

/// Exhaustive count over `1..=bound`, in chunks of `chunk` handled in
/// parallel; the result does not depend on `chunk`.
pub fn count_integers(prefix: Prefix, bound: u64, chunk: u64) -> u64 {
    let k = power(prefix);
    let primes = primes_up_to(integer_root(bound, k));
    let starts: Vec<u64> = (1..=bound).step_by(chunk.max(1) as usize).collect();
    let not_free: u64 = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + chunk).min(bound + 1);
            free_mask(lo, hi, k, &primes).iter().filter(|f| !**f).count() as u64
        })
        .sum();
    // 1 is free of powers but its root disappears
    not_free + 1
}

/// Exhaustive count over coprime pairs; returns `(distorted, pairs)`.
pub fn count_rationals(prefix: Prefix, bound: u64) -> (u64, u64) {
    let k = power(prefix);
    let primes = primes_up_to(integer_root(bound, k));
    let free = free_mask(1, bound + 1, k, &primes);
    let is_free = |n: u64| free[(n - 1) as usize];
    (1..=bound)
        .into_par_iter()
        .map(|p| {
            let mut distorted = 0u64;
            let mut pairs = 0u64;
            for q in 1..=bound {
                if p.gcd(&q) != 1 {
                    continue;
                }
                pairs += 1;
                if (p == 1 && q == 1) || !is_free(p) || !is_free(q) {
                    distorted += 1;
                }
            }
            (distorted, pairs)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

pub fn estimate(spec: &DistortionSpec) -> Result<Estimate, DistortionError> {
    if spec.bound < 2 {
        return Err(DistortionError::BadSpec("bound must be at least 2".into()));
    }
    match spec.mode {
        Mode::Exhaustive => Ok(match spec.kind {
            ArgKind::Integer => Estimate {
                distorted: count_integers(spec.prefix, spec.bound, 1 << 16),
                total: spec.bound,
                exact: true,
            },
            ArgKind::Rational => {
                let (distorted, total) = count_rationals(spec.prefix, spec.bound);
                Estimate { distorted, total, exact: true }
            }
        }),
        Mode::Sample { size, seed } => {
            if size == 0 {
                return Err(DistortionError::BadSpec("sample size must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut distorted = 0;
            for _ in 0..size {
                let arg = match spec.kind {
                    ArgKind::Integer => BigRat::from_integer(rng.random_range(1..=spec.bound).into()),
                    ArgKind::Rational => loop {
                        let p: u64 = rng.random_range(1..=spec.bound);
                        let q: u64 = rng.random_range(1..=spec.bound);
                        if p.gcd(&q) == 1 {
                            break BigRat::new(p.into(), q.into());
                        }
                    },
                };
                if is_distorted(spec.prefix, &arg)? {
                    distorted += 1;
                }
            }
            Ok(Estimate { distorted, total: size, exact: false })
        }
    }
}

/// `1 - 1/ζ(k)`, the density of integers divisible by some `p^k`.
pub fn asymptotic_density(prefix: Prefix) -> f64 {
    let k = f64::from(power(prefix));
    let zeta: f64 = (1..200_000u32).map(|n| f64::from(n).powf(-k)).sum();
    1.0 - 1.0 / zeta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn printed_examples() {
        assert!(is_distorted(Prefix::Sqrt, &rat(4, 9)).unwrap());
        assert!(is_distorted(Prefix::Sqrt, &rat(5, 9)).unwrap());
        assert!(!is_distorted(Prefix::Sqrt, &int(6)).unwrap());
        assert!(!is_distorted(Prefix::Sqrt, &rat(2, 3)).unwrap());
        assert!(is_distorted(Prefix::Sqrt, &int(1)).unwrap());
        assert!(is_distorted(Prefix::Cbrt, &int(16)).unwrap());
        assert!(!is_distorted(Prefix::Cbrt, &rat(4, 9)).unwrap());
        assert!(is_distorted(Prefix::Cbrt, &rat(1, 27)).unwrap());
        assert_eq!(is_distorted(Prefix::Sqrt, &int(0)), Err(DistortionError::NonPositive(int(0))));
        assert!(is_distorted(Prefix::Cbrt, &int(-8)).is_err());
    }

    #[test]
    fn tiny_exhaustive() {
        let spec = DistortionSpec {
            prefix: Prefix::Sqrt,
            kind: ArgKind::Integer,
            bound: 4,
            mode: Mode::Exhaustive,
        };
        let e = estimate(&spec).unwrap();
        assert_eq!((e.distorted, e.total), (2, 4));
        assert_eq!(e.fraction(), rat(1, 2));
        assert!(estimate(&DistortionSpec { bound: 1, ..spec }).is_err());
        assert!(estimate(&DistortionSpec { mode: Mode::Sample { size: 0, seed: 1 }, ..spec }).is_err());
    }

    #[test]
    fn sieve_agrees_with_canonical_forms() {
        for prefix in [Prefix::Sqrt, Prefix::Cbrt] {
            for b in [2u64, 10, 97, 500] {
                let direct = (1..=b).filter(|n| is_distorted(prefix, &int(*n as i64)).unwrap()).count() as u64;
                assert_eq!(count_integers(prefix, b, 7), direct, "{prefix:?} {b}");
            }
            let b = 60u64;
            let mut direct = (0, 0);
            for p in 1..=b {
                for q in 1..=b {
                    if p.gcd(&q) == 1 {
                        direct.1 += 1;
                        if is_distorted(prefix, &rat(p as i64, q as i64)).unwrap() {
                            direct.0 += 1;
                        }
                    }
                }
            }
            assert_eq!(count_rationals(prefix, b), direct);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let spec = DistortionSpec {
            prefix: Prefix::Sqrt,
            kind: ArgKind::Rational,
            bound: 1000,
            mode: Mode::Sample { size: 2000, seed: 7 },
        };
        let a = estimate(&spec).unwrap();
        assert_eq!(a, estimate(&spec).unwrap());
        assert!(!a.exact);
        let exact = estimate(&DistortionSpec { mode: Mode::Exhaustive, ..spec }).unwrap();
        // binomial standard error at n = 2000 is about 0.011
        assert!((a.value() - exact.value()).abs() < 0.04, "{} vs {}", a.value(), exact.value());
    }

    #[test]
    fn convergence_towards_the_density() {
        let limit = 1.0 - 6.0 / std::f64::consts::PI.powi(2);
        assert!((asymptotic_density(Prefix::Sqrt) - limit).abs() < 1e-5);
        let errs: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|b| (count_integers(Prefix::Sqrt, *b, 4096) as f64 / *b as f64 - limit).abs())
            .collect();
        assert!(errs[2] < errs[0] && errs[2] < 1e-3);
    }

    proptest! {
        #[test]
        fn chunking_does_not_matter(b in 2u64..3000, c in 1u64..500) {
            prop_assert_eq!(count_integers(Prefix::Sqrt, b, c), count_integers(Prefix::Sqrt, b, 1 << 12));
            prop_assert_eq!(count_integers(Prefix::Cbrt, b, c), count_integers(Prefix::Cbrt, b, 1 << 12));
        }
    }
}
