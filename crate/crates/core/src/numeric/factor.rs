//! Integer factorization for radicand canonicalization and rational-root
//! candidate enumeration.
//!
//! Trial division by small primes, then Miller-Rabin and Brent's variant of
//! Pollard rho for whatever cofactor is left. Radicands met in practice are
//! below 10^12, where trial division alone finishes; rho only matters for the
//! large leading coefficients of restored polynomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 10_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorization `n = Π p^e`, primes ascending. `factorize(1)` is empty.
/// Panics on zero.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut primes: Vec<BigUint> = Vec::new();
    let mut m = n.clone();
    if let Some(small) = m.to_u64() {
        let mut x = small;
        let mut d = 2u64;
        while d <= TRIAL_LIMIT && d * d <= x {
            while x % d == 0 {
                primes.push(BigUint::from(d));
                x /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        m = BigUint::from(x);
    } else {
        let mut d = 2u64;
        while d <= TRIAL_LIMIT {
            let bd = BigUint::from(d);
            while (&m % &bd).is_zero() {
                primes.push(bd.clone());
                m /= &bd;
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }
    if !m.is_one() {
        split_large(m, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(m: BigUint, primes: &mut Vec<BigUint>) {
    // every prime factor of m exceeds TRIAL_LIMIT here
    if m.is_one() {
        return;
    }
    let lim = BigUint::from(TRIAL_LIMIT);
    if m <= &lim * &lim || is_probable_prime(&m) {
        primes.push(m);
        return;
    }
    let r = m.sqrt();
    if &r * &r == m {
        split_large(r.clone(), primes);
        split_large(r, primes);
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = brent_rho(&m, c) {
            break d;
        }
        c += 1;
    };
    let other = &m / &d;
    split_large(d, primes);
    split_large(other, primes);
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let bb = BigUint::from(b);
        if *n == bb {
            return true;
        }
        if (n % &bb).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn brent_rho(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BLOCK: u64 = 64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BLOCK.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BLOCK;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// `n = root^k * rest` with `rest` free of k-th powers.
pub fn power_free_split(n: &BigUint, k: u32) -> (BigUint, BigUint) {
    let mut root = BigUint::one();
    let mut rest = BigUint::one();
    for (p, e) in factorize(n) {
        root *= p.pow(e / k);
        rest *= p.pow(e % k);
    }
    (root, rest)
}

/// `n = a^2 * b` with `b` squarefree.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    power_free_split(n, 2)
}

pub fn is_squarefree(n: &BigUint) -> bool {
    factorize(n).iter().all(|(_, e)| *e == 1)
}

/// All positive divisors, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let base = out.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}
