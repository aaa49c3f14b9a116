#![allow(dead_code)]

use deduce::numeric::{rat, BigRat, RationalFunc, UniPoly};
use deduce::pipeline::{evaluate_parallel, parameter_points, ClosedForm, DataSet, XMode};

/// The resonant coefficient as a closed form in `s`, times its angle factor.
pub const A15: &str = "sqrt((1-s)*(25*s-1))*(21*s-1)*(3260508*s**4-2668610*s**3+312005*s**2-13090*s+187)\
/(73156608*sqrt(5)*s**6*sqrt(s))*sqrt(R(1))*sqrt(R(2))*R(2)**2*cos(5*FI(2)-FI(1))";

/// Printed first and last points of the 23-point dataset.
pub const PRINTED_ENDS: &str = "npoints:=2;
x(1):=19/104*sqrt(19)**( - 1)*sqrt(26);
y(1):=901287283/454115447307648*sqrt(5)*sqrt(19)**( - 1)*sqrt(26)**( - 1)*sqrt(6726)*
   sqrt(45258)*sqrt(R(1))*sqrt(R(2))*R(2)**2*cos(5*FI(2) - FI(1));
x(2):=83/104*sqrt(13)*sqrt(83)**( - 1);
y(2):= - 10727690489953879/41357946769086552192*sqrt(5)*sqrt(13)**( - 1)*sqrt(83)**( - 1)*
   sqrt(373002)*sqrt(619014)*sqrt(R(1))*sqrt(R(2))*R(2)**2*cos(5*FI(2) - FI(1));
end;
";

/// Numerator coefficients of the printed `f`, highest power first, over
/// `26759446470328320*s**13`.
pub const F_NUMER: [i64; 13] = [
    -117205809409155600,
    324914084622543024,
    -335312660614677372,
    161733011003713812,
    -39226577139649249,
    5576587050768892,
    -508513621896676,
    31144123897436,
    -1302165401582,
    36818043284,
    -675424552,
    7273552,
    -34969,
];
pub const F_DENOM: i64 = 26759446470328320;

pub fn printed_f() -> RationalFunc {
    let mut low_first: Vec<i64> = F_NUMER.to_vec();
    low_first.reverse();
    RationalFunc::new(UniPoly::from_ints(&low_first), UniPoly::monomial(BigRat::from_integer(F_DENOM.into()), 13))
        .unwrap()
}

/// `s` values: the two printed endpoints around 21 small rationals in (1/25, 1).
pub fn a15_params() -> Vec<BigRat> {
    let mut s = vec![rat(19, 416)];
    s.extend(parameter_points(&rat(1, 25), &rat(1, 1), 21, false).unwrap());
    s.push(rat(83, 832));
    s
}

pub fn a15_dataset() -> DataSet {
    let eval = ClosedForm::parse(A15, "s", XMode::Sqrt).unwrap();
    evaluate_parallel(&a15_params(), &eval, 4).unwrap().0
}
