use std::fmt;

use num_traits::{One, Signed};

use crate::numeric::BigRat;

/// Functions recognised by the expression grammar (names are case-insensitive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sqrt,
    Cbrt,
    Sin,
    Cos,
    Log,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        match name.to_ascii_lowercase().as_str() {
            "sqrt" => Some(Func::Sqrt),
            "cbrt" => Some(Func::Cbrt),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "log" => Some(Func::Log),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Cbrt => "cbrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Log => "log",
        }
    }
}

/// Parsed symbolic expression.
///
/// Products and sums always have at least two children and exponents are
/// nonzero integers. `Slot` only occurs in skeletons. The derived ordering is
/// the fixed total order used wherever trees need sorting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExprTree {
    Num(BigRat),
    Sym { name: String, index: Option<u64> },
    Call(Func, Box<ExprTree>),
    Pow(Box<ExprTree>, i64),
    Product(Vec<ExprTree>),
    Sum(Vec<ExprTree>),
    Neg(Box<ExprTree>),
    Slot(usize),
}

impl ExprTree {
    pub fn num(r: BigRat) -> Self {
        ExprTree::Num(r)
    }

    pub fn sym(name: &str) -> Self {
        ExprTree::Sym {
            name: name.to_string(),
            index: None,
        }
    }

    pub fn indexed(name: &str, index: u64) -> Self {
        ExprTree::Sym {
            name: name.to_string(),
            index: Some(index),
        }
    }

    pub fn call(f: Func, arg: ExprTree) -> Self {
        ExprTree::Call(f, Box::new(arg))
    }

    /// `base**exp`, collapsing `exp == 1` and nested integer powers.
    pub fn pow(base: ExprTree, exp: i64) -> Self {
        assert!(exp != 0, "zero exponent");
        match base {
            _ if exp == 1 => base,
            ExprTree::Pow(b, e) => ExprTree::pow(*b, e * exp),
            b => ExprTree::Pow(Box::new(b), exp),
        }
    }

    /// Product of `factors`; a single factor is returned as is, none gives 1.
    pub fn product(mut factors: Vec<ExprTree>) -> Self {
        match factors.len() {
            0 => ExprTree::Num(BigRat::one()),
            1 => factors.pop().unwrap(),
            _ => ExprTree::Product(factors),
        }
    }

    pub fn sum(mut terms: Vec<ExprTree>) -> Self {
        match terms.len() {
            0 => ExprTree::Num(BigRat::default()),
            1 => terms.pop().unwrap(),
            _ => ExprTree::Sum(terms),
        }
    }

    /// Negation with numerals folded: `-(3)` is the numeral `-3` and
    /// `-(2*x)` is `(-2)*x`.
    pub fn negate(t: ExprTree) -> Self {
        match t {
            ExprTree::Num(r) => ExprTree::Num(-r),
            ExprTree::Product(mut fs) if matches!(fs[0], ExprTree::Num(_)) => {
                if let ExprTree::Num(r) = &mut fs[0] {
                    *r = -r.clone();
                }
                ExprTree::Product(fs)
            }
            ExprTree::Neg(inner) => *inner,
            other => ExprTree::Neg(Box::new(other)),
        }
    }

    pub fn contains_slot(&self) -> bool {
        match self {
            ExprTree::Slot(_) => true,
            ExprTree::Num(_) | ExprTree::Sym { .. } => false,
            ExprTree::Call(_, a) | ExprTree::Pow(a, _) | ExprTree::Neg(a) => a.contains_slot(),
            ExprTree::Product(v) | ExprTree::Sum(v) => v.iter().any(ExprTree::contains_slot),
        }
    }

    pub fn contains_symbol(&self) -> bool {
        match self {
            ExprTree::Sym { .. } => true,
            ExprTree::Num(_) | ExprTree::Slot(_) => false,
            ExprTree::Call(_, a) | ExprTree::Pow(a, _) | ExprTree::Neg(a) => a.contains_symbol(),
            ExprTree::Product(v) | ExprTree::Sum(v) => v.iter().any(ExprTree::contains_symbol),
        }
    }

    /// Replaces every `Slot(k)` by `fill(k)`; a product filled into a
    /// product is spliced in.
    pub fn map_slots(&self, fill: &dyn Fn(usize) -> ExprTree) -> ExprTree {
        match self {
            ExprTree::Slot(k) => fill(*k),
            ExprTree::Num(_) | ExprTree::Sym { .. } => self.clone(),
            ExprTree::Call(f, a) => ExprTree::call(*f, a.map_slots(fill)),
            ExprTree::Pow(a, e) => ExprTree::pow(a.map_slots(fill), *e),
            ExprTree::Neg(a) => ExprTree::negate(a.map_slots(fill)),
            ExprTree::Product(v) => {
                let mut out = Vec::with_capacity(v.len());
                for t in v {
                    match (t, t.map_slots(fill)) {
                        (ExprTree::Slot(_), ExprTree::Product(inner)) => out.extend(inner),
                        (_, m) => out.push(m),
                    }
                }
                ExprTree::Product(out)
            }
            ExprTree::Sum(v) => ExprTree::Sum(v.iter().map(|t| t.map_slots(fill)).collect()),
        }
    }
}

/// Text form in the dataset grammar. Re-parsing the output yields the same
/// tree for every tree the parser can produce.
pub fn render_expr(tree: &ExprTree) -> String {
    let mut out = String::new();
    write_expr(tree, &mut out);
    out
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expr(self))
    }
}

fn write_expr(t: &ExprTree, out: &mut String) {
    match t {
        ExprTree::Sum(terms) => {
            for (i, term) in terms.iter().enumerate() {
                if i == 0 {
                    write_term(term, out);
                } else {
                    let (op, body) = match negated_view(term) {
                        Some(abs) => (" - ", abs),
                        None => (" + ", term.clone()),
                    };
                    out.push_str(op);
                    let mut text = String::new();
                    write_term(&body, &mut text);
                    if text.starts_with('-') {
                        out.push('(');
                        out.push_str(&text);
                        out.push(')');
                    } else {
                        out.push_str(&text);
                    }
                }
            }
        }
        other => write_term(other, out),
    }
}

/// For terms printed after a binary minus: the tree whose negation `t` is.
fn negated_view(t: &ExprTree) -> Option<ExprTree> {
    match t {
        ExprTree::Neg(inner) => Some((**inner).clone()),
        ExprTree::Num(r) if r.is_negative() => Some(ExprTree::Num(-r)),
        ExprTree::Product(fs) => match &fs[0] {
            ExprTree::Num(r) if r.is_negative() => {
                let mut fs = fs.clone();
                fs[0] = ExprTree::Num(-r);
                Some(ExprTree::Product(fs))
            }
            _ => None,
        },
        _ => None,
    }
}

/// A summand: anything except a bare sum.
fn write_term(t: &ExprTree, out: &mut String) {
    match t {
        ExprTree::Sum(_) => {
            out.push('(');
            write_expr(t, out);
            out.push(')');
        }
        ExprTree::Neg(inner) => {
            out.push('-');
            let mut body = String::new();
            write_term(inner, &mut body);
            if matches!(**inner, ExprTree::Sum(_)) || body.starts_with('-') {
                out.push('(');
                out.push_str(&body);
                out.push(')');
            } else {
                out.push_str(&body);
            }
        }
        ExprTree::Product(fs) => {
            for (i, f) in fs.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                let bare = match f {
                    ExprTree::Num(r) => i == 0 || !r.is_negative(),
                    ExprTree::Sum(_) | ExprTree::Product(_) | ExprTree::Neg(_) => false,
                    _ => true,
                };
                if bare {
                    write_term(f, out);
                } else {
                    out.push('(');
                    write_expr(f, out);
                    out.push(')');
                }
            }
        }
        other => write_atom_or_power(other, out),
    }
}

fn write_atom_or_power(t: &ExprTree, out: &mut String) {
    match t {
        ExprTree::Num(r) => out.push_str(&r.to_string()),
        ExprTree::Sym { name, index } => {
            out.push_str(name);
            if let Some(i) = index {
                out.push_str(&format!("({i})"));
            }
        }
        ExprTree::Call(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(arg, out);
            out.push(')');
        }
        ExprTree::Pow(base, e) => {
            let bare = match &**base {
                ExprTree::Num(r) => r.is_integer() && !r.is_negative(),
                ExprTree::Sym { .. } | ExprTree::Call(..) | ExprTree::Slot(_) => true,
                _ => false,
            };
            if bare {
                write_atom_or_power(base, out);
            } else {
                out.push('(');
                write_expr(base, out);
                out.push(')');
            }
            if *e > 0 {
                out.push_str(&format!("**{e}"));
            } else {
                out.push_str(&format!("**( - {})", -e));
            }
        }
        ExprTree::Slot(k) => out.push_str(&format!("[{k}]")),
        other => {
            out.push('(');
            write_expr(other, out);
            out.push(')');
        }
    }
}
