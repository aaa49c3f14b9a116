//! The dataset file: `npoints:=N;`, then `x(i):=...;` and `y(i):=...;` for
//! every `i`, closed by `end;`. Whitespace and line breaks are insignificant;
//! `%` starts a comment, and a leading `% source: ...` comment is kept as the
//! label.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::PipelineError;
use crate::remnant::{canonicalize_radical, parse_expr, render_expr, AlgebraicValue, ExprTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPoint {
    pub x: AlgebraicValue,
    pub y: ExprTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSet {
    pub label: Option<String>,
    pub points: Vec<DataPoint>,
}

pub fn load_dataset(path: &Path) -> Result<DataSet, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::Io(format!("{}: {e}", path.display())))?;
    DataSet::parse(&text)
}

fn err(line: usize, msg: impl Into<String>) -> PipelineError {
    PipelineError::Dataset { line, msg: msg.into() }
}

type Stmt = (usize, String);

/// `(line of first character, statement text)`, comments removed.
fn statements(text: &str) -> (Option<String>, Vec<Stmt>, Option<Stmt>) {
    let mut label = None;
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = None;
    for (i, raw) in text.lines().enumerate() {
        let (code, comment) = match raw.find('%') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if label.is_none() && out.is_empty() && start.is_none() {
                if let Some(l) = c.trim().strip_prefix("source:") {
                    label = Some(l.trim().to_string());
                }
            }
        }
        for ch in code.chars() {
            if ch == ';' {
                out.push((start.take().unwrap_or(i + 1), std::mem::take(&mut cur)));
            } else {
                if start.is_none() && !ch.is_whitespace() {
                    start = Some(i + 1);
                }
                cur.push(ch);
            }
        }
        cur.push(' ');
    }
    let rest = start.map(|l| (l, cur.trim().to_string()));
    (label, out, rest)
}

/// `name(i)` on the left of `:=`.
fn indexed_target(lhs: &str) -> Option<(char, usize)> {
    let lhs: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
    let name = lhs.chars().next()?;
    let idx = lhs.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some((name, idx.parse().ok()?))
}

impl DataSet {
    pub fn npoints(&self) -> usize {
        self.points.len()
    }

    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let (label, stmts, rest) = statements(text);
        if let Some((line, t)) = rest {
            return Err(err(line, format!("statement `{t}` is not terminated by `;`")));
        }
        let mut it = stmts.into_iter().filter(|(_, s)| !s.trim().is_empty());
        let Some((line, first)) = it.next() else {
            return Err(err(1, "empty dataset"));
        };
        let npoints = match first.split_once(":=") {
            Some((lhs, rhs)) if lhs.trim().eq_ignore_ascii_case("npoints") => rhs
                .trim()
                .parse::<usize>()
                .map_err(|_| err(line, "npoints must be a nonnegative integer"))?,
            _ => return Err(err(line, "expected `npoints:=<int>;`")),
        };
        let mut xs: BTreeMap<usize, AlgebraicValue> = BTreeMap::new();
        let mut ys: BTreeMap<usize, ExprTree> = BTreeMap::new();
        let mut ended = false;
        let mut last_line = line;
        for (line, stmt) in it {
            last_line = line;
            if ended {
                return Err(err(line, "text after `end;`"));
            }
            if stmt.trim().eq_ignore_ascii_case("end") {
                ended = true;
                continue;
            }
            let Some((lhs, rhs)) = stmt.split_once(":=") else {
                return Err(err(line, format!("expected an assignment, found `{}`", stmt.trim())));
            };
            let Some((name, i)) = indexed_target(lhs) else {
                return Err(err(line, format!("bad assignment target `{}`", lhs.trim())));
            };
            if i == 0 || i > npoints {
                return Err(err(line, format!("index {i} outside 1..={npoints}")));
            }
            let tree = parse_expr(rhs).map_err(|e| err(line, e.to_string()))?;
            match name {
                'x' => {
                    let v = canonicalize_radical(&tree).map_err(|e| err(line, format!("x({i}): {e}")))?;
                    if xs.insert(i, v).is_some() {
                        return Err(err(line, format!("duplicate x({i})")));
                    }
                }
                'y' => {
                    if ys.insert(i, tree).is_some() {
                        return Err(err(line, format!("duplicate y({i})")));
                    }
                }
                other => return Err(err(line, format!("unknown variable `{other}`"))),
            }
        }
        if !ended {
            return Err(err(last_line, "missing `end;`"));
        }
        if xs.len() != npoints || ys.len() != npoints {
            return Err(err(
                last_line,
                format!("npoints is {npoints} but {} x and {} y values are given", xs.len(), ys.len()),
            ));
        }
        let points = xs
            .into_values()
            .zip(ys.into_values())
            .map(|(x, y)| DataPoint { x, y })
            .collect();
        Ok(DataSet { label, points })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(s, "% source: {l}");
        }
        let _ = writeln!(s, "npoints:={};", self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(s, "x({}):={};", i + 1, render_expr(&p.x.to_tree()));
            let _ = writeln!(s, "y({}):={};", i + 1, render_expr(&p.y));
        }
        s.push_str("end;\n");
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), PipelineError> {
        std::fs::write(path, self.to_text()).map_err(|e| PipelineError::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    pub(crate) const EXTRACT: &str = "npoints:=2;
x(1):=19/104*sqrt(19)**( - 1)*
   sqrt(26);
y(1):=901287283/454115447307648*
   sqrt(5)*sqrt(19)**( - 1)*
   sqrt(26)**( - 1)*sqrt(6726)*
   sqrt(45258)*sqrt(R(1))*
   sqrt(R(2))*
   R(2)**2*cos(5*FI(2) -
   FI(1));
x(2):=83/104*sqrt(13)*
   sqrt(83)**( - 1);
y(2):= - 10727690489953879/
   41357946769086552192*sqrt(5)*
   sqrt(13)**( - 1)*sqrt(83)**( - 1)*
   sqrt(373002)*sqrt(619014)*sqrt
   (R(1))*
   sqrt(R(2))*R(2)**2*
   cos(5*FI(2) - FI(1));
end;
";

    #[test]
    fn printed_extract() {
        let d = DataSet::parse(EXTRACT).unwrap();
        assert_eq!(d.npoints(), 2);
        assert_eq!(d.points[0].x.square(), rat(247, 5408));
        assert_eq!(d.points[1].x.square(), rat(1079, 10816));
        assert_eq!(render_expr(&d.points[0].x.to_tree()), "19/104*sqrt(19)**( - 1)*sqrt(26)");
    }

    #[test]
    fn round_trip() {
        let mut d = DataSet::parse(EXTRACT).unwrap();
        d.label = Some("printed extract".into());
        let back = DataSet::parse(&d.to_text()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn errors() {
        let e = |t: &str| match DataSet::parse(t) {
            Err(PipelineError::Dataset { line, msg }) => (line, msg),
            other => panic!("{other:?}"),
        };
        assert_eq!(e("").1, "empty dataset");
        assert_eq!(e("  \n % nothing\n").1, "empty dataset");
        let (line, msg) = e("npoints:=2;\nx(1):=1;\ny(1):=2;\nend;\n");
        assert_eq!(line, 4);
        assert!(msg.contains("npoints is 2"));
        assert_eq!(e("npoints:=1;\nx(1):=1;\nx(1):=2;\ny(1):=3;\nend;").0, 3);
        assert_eq!(e("npoints:=1;\nx(1):=1;\n\ny(1):=(3;\nend;").0, 4);
        assert_eq!(e("npoints:=1;\nx(3):=1;\nend;").0, 2);
        assert!(e("npoints:=1;\nx(1):=1;\ny(1):=1;\n").1.contains("end"));
        assert!(e("npoints:=1;\nx(1):=R(1);\ny(1):=1;\nend;").1.contains("x(1)"));
        assert_eq!(e("npoints:=1;\nx(1):=1;\ny(1):=1;\nend;\nx(2):=1;").0, 5);
        assert_eq!(e("npoints:=1;\nx(1):=1;\ny(1):=1\nend;").0, 3);
    }

    #[test]
    fn comments_and_label() {
        let d = DataSet::parse("% source: test\nnpoints:=1; % one point\nx(1):=1/2;y(1):=3;end;").unwrap();
        assert_eq!(d.label.as_deref(), Some("test"));
        assert_eq!(d.points[0].x, AlgebraicValue::rational(rat(1, 2)));
    }
}
