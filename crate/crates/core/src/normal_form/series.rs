//! Truncated polynomials in `2N` variables with Gaussian-rational coefficients.
//!
//! In the normal-form engine the variables are the complex pairs
//! `x_j = q_j + i p_j`, `y_j = q_j - i p_j`, and an exponent vector is laid
//! out as `[a_1..a_N, b_1..b_N]` for `Π x_j^a_j y_j^b_j`. The same type also
//! holds polynomials in `(q, p)` with layout `[q exponents, p exponents]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::gauss::GaussRat;
use crate::numeric::BigRat;

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeries {
    dof: usize,
    trunc: u32,
    terms: BTreeMap<Exponent, GaussRat>,
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl PolySeries {
    pub fn zero(dof: usize, trunc: u32) -> Self {
        PolySeries {
            dof,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dof: usize, trunc: u32, c: GaussRat) -> Self {
        let mut s = Self::zero(dof, trunc);
        s.add_term(vec![0; 2 * dof], c);
        s
    }

    /// The single variable with index `v` (`0..2N`).
    pub fn variable(dof: usize, trunc: u32, v: usize) -> Self {
        let mut e = vec![0; 2 * dof];
        e[v] = 1;
        let mut s = Self::zero(dof, trunc);
        s.add_term(e, GaussRat::one());
        s
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn with_trunc(&self, trunc: u32) -> Self {
        let mut s = Self::zero(self.dof, trunc);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> GaussRat {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Adds `c * monomial(e)`, dropping it above the truncation degree.
    pub fn add_term(&mut self, e: Exponent, c: GaussRat) {
        debug_assert_eq!(e.len(), 2 * self.dof);
        if c.is_zero() || total_degree(&e) > self.trunc {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree_part(&self, d: u32) -> Self {
        let mut s = Self::zero(self.dof, self.trunc);
        for (e, c) in &self.terms {
            if total_degree(e) == d {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    /// Part of degree at most `d`.
    pub fn up_to_degree(&self, d: u32) -> Self {
        let mut s = Self::zero(self.dof, self.trunc);
        for (e, c) in &self.terms {
            if total_degree(e) <= d {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    pub fn add(&self, o: &PolySeries) -> Self {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &PolySeries) -> Self {
        self.add(&o.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, k: &GaussRat) -> Self {
        let mut s = Self::zero(self.dof, self.trunc);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c * k);
        }
        s
    }

    pub fn scale_rat(&self, k: &BigRat) -> Self {
        self.scale(&GaussRat::real(k.clone()))
    }

    pub fn mul(&self, o: &PolySeries) -> Self {
        let mut s = Self::zero(self.dof, self.trunc.min(o.trunc));
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &o.terms {
                if d1 + total_degree(e2) > s.trunc {
                    continue;
                }
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(e, c1 * c2);
            }
        }
        s
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.dof, self.trunc, GaussRat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `{f, g} = -2i Σ_j (∂f/∂x_j ∂g/∂y_j - ∂f/∂y_j ∂g/∂x_j)`, the bracket for
    /// which `{q, p} = 1`. Terms above the truncation are never formed.
    pub fn bracket(&self, o: &PolySeries) -> Self {
        let n = self.dof;
        let trunc = self.trunc.min(o.trunc);
        let mut s = Self::zero(n, trunc);
        let minus_two_i = GaussRat::new(BigRat::zero(), BigRat::from_integer((-2).into()));
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &o.terms {
                let d2 = total_degree(e2);
                if d1 + d2 < 2 || d1 + d2 - 2 > trunc {
                    continue;
                }
                let c = &minus_two_i * &(c1 * c2);
                for j in 0..n {
                    // x^a y^b : d/dx_j brings a_j, d/dy_j brings b_j; both
                    // products land on the same exponent.
                    let w = i64::from(e1[j]) * i64::from(e2[n + j]) - i64::from(e1[n + j]) * i64::from(e2[j]);
                    if w == 0 {
                        continue;
                    }
                    let mut e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    e[j] -= 1;
                    e[n + j] -= 1;
                    s.add_term(e, c.scale(&BigRat::from_integer(w.into())));
                }
            }
        }
        s
    }

    /// `exp(L_w) f = f + {f, w} + {{f, w}, w}/2 + ...`, truncated.
    pub fn lie_transform(&self, w: &PolySeries) -> Self {
        let mut out = self.clone();
        let mut term = self.clone();
        let mut k = 1i64;
        loop {
            term = term.bracket(w).scale_rat(&BigRat::new(1.into(), k.into()));
            if term.is_zero() {
                return out;
            }
            out = out.add(&term);
            k += 1;
        }
    }

    /// Substitutes `coords[v]` for variable `v`; the result lives in the
    /// variables (and truncation) of the coordinate series.
    pub fn substitute(&self, coords: &[PolySeries]) -> Self {
        assert_eq!(coords.len(), 2 * self.dof);
        let dof = coords[0].dof;
        let trunc = coords[0].trunc;
        let mut cache: Vec<Vec<PolySeries>> = coords
            .iter()
            .map(|c| vec![PolySeries::constant(dof, trunc, GaussRat::one()), c.clone()])
            .collect();
        let mut out = PolySeries::zero(dof, trunc);
        for (e, c) in &self.terms {
            let mut m = PolySeries::constant(dof, trunc, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[v].len() <= k as usize {
                    let next = cache[v].last().unwrap().mul(&coords[v]);
                    cache[v].push(next);
                }
                m = m.mul(&cache[v][k as usize]);
                if m.is_zero() {
                    break;
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// Series in `(x, y)` from one in `(q, p)`: `q = (x + y)/2`,
    /// `p = -i (x - y)/2`.
    pub fn from_qp(qp: &PolySeries) -> Self {
        let n = qp.dof;
        let half = BigRat::new(1.into(), 2.into());
        let mut coords = Vec::with_capacity(2 * n);
        for j in 0..n {
            let x = PolySeries::variable(n, qp.trunc, j);
            let y = PolySeries::variable(n, qp.trunc, n + j);
            coords.push(x.add(&y).scale_rat(&half));
        }
        for j in 0..n {
            let x = PolySeries::variable(n, qp.trunc, j);
            let y = PolySeries::variable(n, qp.trunc, n + j);
            coords.push(x.sub(&y).scale(&GaussRat::new(BigRat::zero(), -half.clone())));
        }
        qp.substitute(&coords)
    }

    /// Series in `(q, p)` from one in `(x, y)`: `x = q + i p`, `y = q - i p`.
    pub fn to_qp(&self) -> Self {
        let n = self.dof;
        let mut coords = Vec::with_capacity(2 * n);
        for sign in [1i64, -1] {
            for j in 0..n {
                let q = PolySeries::variable(n, self.trunc, j);
                let p = PolySeries::variable(n, self.trunc, n + j);
                coords.push(q.add(&p.scale(&GaussRat::new(BigRat::zero(), BigRat::from_integer(sign.into())))));
            }
        }
        self.substitute(&coords)
    }

    /// Complex conjugate in `(x, y)` form: swap `a` and `b`, conjugate the
    /// coefficient. Fixed points are exactly the real functions of `(q, p)`.
    pub fn conjugate(&self) -> Self {
        let n = self.dof;
        let mut s = Self::zero(n, self.trunc);
        for (e, c) in &self.terms {
            let mut f = e[n..].to_vec();
            f.extend_from_slice(&e[..n]);
            s.add_term(f, c.conj());
        }
        s
    }

    /// All coefficients real.
    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| total_degree(e)).max().unwrap_or(0)
    }
}

/// Exponent vector helper: `[a..., b...]`.
pub fn exponent(a: &[u32], b: &[u32]) -> Exponent {
    let mut e = a.to_vec();
    e.extend_from_slice(b);
    e
}

pub fn is_one(c: &GaussRat) -> bool {
    c.im.is_zero() && c.re.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn qp_var(n: usize, v: usize) -> PolySeries {
        PolySeries::variable(n, 10, v)
    }

    #[test]
    fn canonical_pair_bracket_is_one() {
        let q = PolySeries::from_qp(&qp_var(1, 0));
        let p = PolySeries::from_qp(&qp_var(1, 1));
        assert_eq!(q.bracket(&p), PolySeries::constant(1, 10, GaussRat::one()));
        assert_eq!(p.bracket(&q), PolySeries::constant(1, 10, -GaussRat::one()));
    }

    #[test]
    fn eigenvalue_of_the_quadratic_part() {
        // H2 = λ x y / 2 and the monomial x: {H2, x} = i λ x
        let lam = rat(3, 2);
        let mut h2 = PolySeries::zero(1, 10);
        h2.add_term(vec![1, 1], GaussRat::real(&lam / int(2)));
        let mut x = PolySeries::zero(1, 10);
        x.add_term(vec![1, 0], GaussRat::one());
        assert_eq!(h2.bracket(&x), x.scale(&GaussRat::new(int(0), lam.clone())));
        // general monomial x^3 y
        let mut m = PolySeries::zero(1, 10);
        m.add_term(vec![3, 1], GaussRat::one());
        assert_eq!(h2.bracket(&m), m.scale(&GaussRat::new(int(0), lam * int(2))));
    }

    #[test]
    fn coordinate_round_trip() {
        let mut qp = PolySeries::zero(2, 6);
        qp.add_term(vec![2, 0, 1, 0], GaussRat::real(rat(1, 3)));
        qp.add_term(vec![0, 1, 0, 3], GaussRat::real(int(-2)));
        let xy = PolySeries::from_qp(&qp);
        assert_eq!(xy.to_qp(), qp);
        assert_eq!(xy.conjugate(), xy);
    }

    #[test]
    fn truncation_drops_high_terms() {
        let x = PolySeries::variable(1, 3, 0);
        assert!(x.pow(4).is_zero());
        assert_eq!(x.pow(3).len(), 1);
    }

    fn arb_series(dof: usize) -> impl Strategy<Value = PolySeries> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 2 * dof), -3i64..4, -3i64..4),
            0..6,
        )
        .prop_map(move |terms| {
            let mut s = PolySeries::zero(dof, 8);
            for (e, re, im) in terms {
                s.add_term(e, GaussRat::new(int(re), int(im)));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric(f in arb_series(2), g in arb_series(2)) {
            prop_assert!(f.bracket(&f).is_zero());
            prop_assert_eq!(f.bracket(&g), g.bracket(&f).scale(&-GaussRat::one()));
        }

        #[test]
        fn bracket_obeys_leibniz(f in arb_series(1), g in arb_series(1), h in arb_series(1)) {
            let f = f.with_trunc(20);
            let g = g.with_trunc(20);
            let h = h.with_trunc(20);
            let lhs = f.bracket(&g.mul(&h));
            let rhs = f.bracket(&g).mul(&h).add(&g.mul(&f.bracket(&h)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
