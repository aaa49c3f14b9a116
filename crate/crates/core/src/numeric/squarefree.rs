use super::{BigRat, NumericError, UniPoly};

/// `unit * Π poly_i ^ mult_i`, with each `poly_i` squarefree, primitive with
/// integer coefficients and a positive leading coefficient, and the parts
/// pairwise coprime. Parts are listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: BigRat,
    pub parts: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> UniPoly {
        self.parts
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (p, m)| {
                &acc * &p.pow(*m)
            })
    }

    /// Product of the parts with odd multiplicity, and of `part^(mult/2)`.
    pub fn split_square(&self) -> (UniPoly, UniPoly) {
        let mut odd = UniPoly::one();
        let mut half = UniPoly::one();
        for (p, m) in &self.parts {
            if m % 2 == 1 {
                odd = &odd * p;
            }
            half = &half * &p.pow(m / 2);
        }
        (odd, half)
    }
}

/// Yun's algorithm: repeated gcds with the derivative.
pub fn squarefree_decompose(p: &UniPoly) -> Result<SquarefreeDecomposition, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let unit_lead = p.leading();
    let f = p.monic();
    let mut parts_monic: Vec<(UniPoly, u32)> = Vec::new();
    if !f.is_constant() {
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                parts_monic.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
    }
    // switch each monic part to its primitive integer form, folding the scale
    // factors into the unit
    let mut unit = unit_lead;
    let mut parts = Vec::with_capacity(parts_monic.len());
    for (q, m) in parts_monic {
        let (c, prim) = q.primitive_part();
        // q = c * prim  =>  q^m = c^m prim^m
        unit *= num_traits::pow(c, m as usize);
        parts.push((prim, m));
    }
    Ok(SquarefreeDecomposition { unit, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use proptest::prelude::*;

    #[test]
    fn square_of_variable() {
        let d = squarefree_decompose(&UniPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(d.unit, int(1));
        assert_eq!(d.parts, vec![(UniPoly::var(), 2)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let p = UniPoly::from_ints(&[-1, 1]).pow(2) * UniPoly::from_ints(&[2, 1]);
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(
            d.parts,
            vec![(UniPoly::from_ints(&[2, 1]), 1), (UniPoly::from_ints(&[-1, 1]), 2)]
        );
        assert_eq!(d.reconstruct(), p);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            squarefree_decompose(&UniPoly::zero()),
            Err(NumericError::ZeroPolynomial)
        );
    }

    #[test]
    fn constant_has_no_parts() {
        let d = squarefree_decompose(&UniPoly::constant(int(-6))).unwrap();
        assert_eq!(d.unit, int(-6));
        assert!(d.parts.is_empty());
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-3i64..4, 1..4).prop_map(|c| UniPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn decomposition_round_trips(
            factors in proptest::collection::vec((small_poly(), 1u32..4), 1..4),
            unit in 1i64..9,
        ) {
            let mut p = UniPoly::constant(int(unit));
            for (f, m) in &factors {
                p = &p * &f.pow(*m);
            }
            prop_assume!(!p.is_zero());
            let d = squarefree_decompose(&p).unwrap();
            prop_assert_eq!(d.reconstruct(), p);
            for (i, (a, _)) in d.parts.iter().enumerate() {
                prop_assert!(a.gcd(&a.derivative()).is_constant());
                for (b, _) in d.parts.iter().skip(i + 1) {
                    prop_assert!(a.gcd(b).is_constant());
                }
            }
        }
    }
}
