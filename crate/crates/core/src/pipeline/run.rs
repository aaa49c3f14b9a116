//! One deduction run over a dataset.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::Zero;

use super::dataset::DataSet;
use super::factored::render_factored;
use super::PipelineError;
use crate::numeric::{BigRat, RationalFunc};
use crate::pade::{required_points, restore_adaptive, restore_fixed, sqrt_extract, DegreeWindow, GrowthPolicy};
use crate::remnant::{
    evaluate, extract_skeleton, numeric_slot, parse_expr, render_expr, AlgebraicValue, Bindings, ExprTree, Skeleton,
};

/// What is done to `x(i)` and to the slot values before interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// Use both as they are; both must be rational.
    None,
    /// Square both; the restored function is in `s = x²` and its square
    /// root is taken at the end.
    Square,
    /// Square the values only; `x` must be rational.
    SquareValues,
}

impl Transform {
    fn squares_values(self) -> bool {
        !matches!(self, Transform::None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestoreMode {
    Fixed(DegreeWindow),
    Adaptive(GrowthPolicy),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub transform: Transform,
    pub restore: RestoreMode,
    /// Points kept out of the linear system and used for verification only;
    /// default `ceil(npoints / 3)`.
    pub holdout: Option<usize>,
    /// Name of the restoration variable; default `s` when squaring `x`,
    /// `x` otherwise.
    pub variable: Option<String>,
}

impl PipelineConfig {
    pub fn new(transform: Transform, restore: RestoreMode) -> Self {
        PipelineConfig {
            transform,
            restore,
            holdout: None,
            variable: None,
        }
    }

    pub fn with_holdout(mut self, h: usize) -> Self {
        self.holdout = Some(h);
        self
    }

    fn variable(&self) -> String {
        self.variable.clone().unwrap_or_else(|| match self.transform {
            Transform::Square => "s".into(),
            _ => "x".into(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SlotReport {
    /// The interpolated function (of the squared values when squaring).
    pub f: RationalFunc,
    pub window: DegreeWindow,
    /// 1-based indices of the points that entered the linear system.
    pub system_points: Vec<usize>,
    /// Fit points outside the system that the adaptive loop checked.
    pub implicit_holdout: usize,
    /// `f = rational_part² * radical_content` (with the sign fixed against
    /// the data); `f` itself and 1 without squaring.
    pub rational_part: RationalFunc,
    pub radical_content: RationalFunc,
    pub rendered: String,
    pub tree: ExprTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageMemory {
    pub stage: &'static str,
    /// Process peak resident set so far, where the OS reports it.
    pub peak_rss_kib: Option<u64>,
    /// Bytes of numerals held by the stage's main data.
    pub working_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub variable: String,
    pub skeleton: Skeleton,
    pub slots: Vec<SlotReport>,
    /// The skeleton with every slot replaced by its restored expression.
    pub expression: ExprTree,
    pub rendered: String,
    pub holdout_points: Vec<usize>,
    pub timings: Vec<(&'static str, Duration)>,
    pub memory: Vec<StageMemory>,
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn rat_bytes(r: &BigRat) -> usize {
    ((r.numer().bits() + r.denom().bits()) as usize).div_ceil(8)
}

/// Size of the numerals in the interpolation matrix of window `w`.
fn system_bytes(points: &[(BigRat, BigRat)], w: &DegreeWindow) -> usize {
    points
        .iter()
        .map(|(x, v)| {
            let pw = |j: usize| crate::numeric::pow_rat(x, j as i64).expect("nonzero or positive power");
            let a: usize = (w.k..=w.l).map(|j| rat_bytes(&pw(j))).sum();
            let b: usize = (w.m..=w.n).map(|j| rat_bytes(&(v * pw(j)))).sum();
            a + b
        })
        .sum()
}

struct Stages {
    timings: Vec<(&'static str, Duration)>,
    memory: Vec<StageMemory>,
    start: Instant,
}

impl Stages {
    fn new() -> Self {
        Stages {
            timings: Vec::new(),
            memory: Vec::new(),
            start: Instant::now(),
        }
    }

    fn done(&mut self, stage: &'static str, working_bytes: usize) {
        self.timings.push((stage, self.start.elapsed()));
        self.memory.push(StageMemory {
            stage,
            peak_rss_kib: peak_rss_kib(),
            working_bytes,
        });
        self.start = Instant::now();
    }
}

pub fn run(data: &DataSet, config: &PipelineConfig) -> Result<Report, PipelineError> {
    let n = data.npoints();
    if n == 0 {
        return Err(PipelineError::Config("dataset has no points".into()));
    }
    let holdout = config.holdout.unwrap_or(n.div_ceil(3));
    if holdout >= n {
        return Err(PipelineError::Config(format!("holdout {holdout} must be below npoints {n}")));
    }
    let var = config.variable();
    let mut stages = Stages::new();

    let ys: Vec<ExprTree> = data.points.iter().map(|p| p.y.clone()).collect();
    let (mut skeleton, mut values) = if n >= 2 {
        extract_skeleton(&ys)?
    } else {
        let (sk, v) = numeric_slot(&ys[0])?;
        (sk, vec![vec![v]])
    };
    if skeleton.slot_count == 0 {
        let (sk, v) = numeric_slot(&ys[0])?;
        skeleton = sk;
        values = vec![vec![v]; n];
    }
    let data_bytes: usize = values.iter().flatten().map(|v| rat_bytes(&v.square())).sum();
    stages.done("skeleton", data_bytes);

    let xs: Vec<BigRat> = data
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| match config.transform {
            Transform::Square => Ok(p.x.square()),
            _ => p.x.as_rational().cloned().ok_or(PipelineError::NotRational { index: i + 1, what: "x" }),
        })
        .collect::<Result<_, _>>()?;
    let fit = n - holdout;
    let holdout_points: Vec<usize> = (fit + 1..=n).collect();

    let mut slots = Vec::with_capacity(skeleton.slot_count);
    let mut restore_bytes = 0;
    for k in 0..skeleton.slot_count {
        let vs: Vec<BigRat> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if config.transform.squares_values() {
                    Ok(v[k].square())
                } else {
                    v[k].as_rational().cloned().ok_or(PipelineError::NotRational { index: i + 1, what: "slot value" })
                }
            })
            .collect::<Result<_, _>>()?;
        let pts: Vec<(BigRat, BigRat)> = xs.iter().cloned().zip(vs).collect();
        let err = |source| PipelineError::Restore { slot: k, source };
        let (f, window, used) = match config.restore {
            RestoreMode::Fixed(w) => (restore_fixed(&pts[..fit], &w).map_err(err)?, w, fit),
            RestoreMode::Adaptive(policy) => {
                let r = restore_adaptive(&pts[..fit], DegreeWindow::new(0, 0, 0, 0).expect("valid"), policy)
                    .map_err(err)?;
                (r.func, r.window, r.points_used)
            }
        };
        debug_assert!(used >= required_points(&window));
        restore_bytes = restore_bytes.max(system_bytes(&pts[..used], &window));
        let failed: Vec<usize> = (fit..n).filter(|&i| f.eval(&pts[i].0).as_ref() != Some(&pts[i].1)).map(|i| i + 1).collect();
        if !failed.is_empty() {
            return Err(PipelineError::Unverified { slot: k, failed });
        }
        slots.push((f, window, used, pts));
    }
    stages.done("restore", restore_bytes);

    let mut reports = Vec::with_capacity(slots.len());
    for (k, (f, window, used, pts)) in slots.into_iter().enumerate() {
        let slot_values: Vec<&AlgebraicValue> = values.iter().map(|v| &v[k]).collect();
        let (rational_part, radical_content) = if config.transform.squares_values() {
            let (r, rad) = sqrt_extract(&f);
            fix_sign(r, rad, &pts, &slot_values).ok_or_else(|| {
                PipelineError::Internal(format!("slot {k}: no sign of the square root matches the data"))
            })?
        } else {
            (f.clone(), RationalFunc::one())
        };
        let rendered = render_slot(&rational_part, &radical_content, &var);
        let tree = parse_expr(&rendered).map_err(|e| PipelineError::Internal(format!("rendered `{rendered}`: {e}")))?;
        for (i, ((x, _), want)) in pts.iter().zip(&slot_values).enumerate() {
            let mut env = Bindings::new();
            env.insert(var.clone(), AlgebraicValue::rational(x.clone()));
            let got = evaluate(&tree, &env).map_err(|e| PipelineError::Internal(format!("point {}: {e}", i + 1)))?;
            if !got.value_eq(want) {
                return Err(PipelineError::Internal(format!("point {}: rendered expression disagrees", i + 1)));
            }
        }
        reports.push(SlotReport {
            implicit_holdout: pts.len() - holdout - used,
            system_points: (1..=used).collect(),
            f,
            window,
            rational_part,
            radical_content,
            rendered,
            tree,
        });
    }
    let expression = skeleton.tree.map_slots(&|k| reports[k].tree.clone());
    let rendered = render_expr(&expression);
    stages.done("render", rendered.len());

    Ok(Report {
        variable: var,
        skeleton,
        slots: reports,
        expression,
        rendered,
        holdout_points,
        timings: stages.timings,
        memory: stages.memory,
    })
}

/// `(±R, r)` such that `±R(x) sqrt(r(x))` is the slot value at every point.
fn fix_sign(
    r: RationalFunc,
    rad: RationalFunc,
    pts: &[(BigRat, BigRat)],
    values: &[&AlgebraicValue],
) -> Option<(RationalFunc, RationalFunc)> {
    let at = |x: &BigRat| -> Option<AlgebraicValue> {
        let a = r.eval(x)?;
        let b = rad.eval(x)?;
        if b.is_zero() || a.is_zero() {
            return Some(AlgebraicValue::rational(BigRat::zero()));
        }
        Some(AlgebraicValue::rational(a).mul(&AlgebraicValue::sqrt_of(&b).ok()?))
    };
    let computed: Vec<AlgebraicValue> = pts.iter().map(|(x, _)| at(x)).collect::<Option<_>>()?;
    for sign in [1, -1] {
        let ok = computed
            .iter()
            .zip(values)
            .all(|(c, v)| if sign == 1 { c.value_eq(v) } else { c.neg().value_eq(v) });
        if ok {
            let r = if sign == 1 { r } else { r.neg() };
            return Some((r, rad));
        }
    }
    None
}

fn render_slot(r: &RationalFunc, rad: &RationalFunc, var: &str) -> String {
    if rad.is_one() || r.is_zero() {
        return render_factored(r, var);
    }
    let root = format!("sqrt({})", render_factored(rad, var));
    if r.is_one() {
        return root;
    }
    if r.neg().is_one() {
        return format!("-{root}");
    }
    let rt = render_factored(r, var);
    // keep `a/b*sqrt(..)` unambiguous: the quotient goes in parentheses
    if rt.contains('/') {
        format!("({rt})*{root}")
    } else {
        format!("{rt}*{root}")
    }
}

impl Report {
    /// Plain-text report for the command line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "skeleton: {}", render_expr(&self.skeleton.tree));
        for (k, slot) in self.slots.iter().enumerate() {
            let _ = writeln!(s, "slot [{k}]:");
            let _ = writeln!(s, "  window: {}", slot.window);
            let _ = writeln!(
                s,
                "  points in system: {}, implicit holdout: {}",
                slot.system_points.len(),
                slot.implicit_holdout
            );
            let _ = writeln!(s, "  f = {}", slot.f.render(&self.variable));
            if !slot.radical_content.is_one() {
                let _ = writeln!(s, "  rational part = {}", render_factored(&slot.rational_part, &self.variable));
                let _ = writeln!(s, "  radical content = {}", render_factored(&slot.radical_content, &self.variable));
            }
            let _ = writeln!(s, "  [{k}] = {}", slot.rendered);
        }
        let _ = writeln!(s, "held-out points verified: {:?}", self.holdout_points);
        let _ = writeln!(s, "result: {}", self.rendered);
        for ((stage, t), m) in self.timings.iter().zip(&self.memory) {
            let rss = m.peak_rss_kib.map_or("n/a".to_string(), |k| format!("{k} KiB"));
            let _ = writeln!(s, "stage {stage}: {:.3} s, peak RSS {rss}, numerals {} B", t.as_secs_f64(), m.working_bytes);
        }
        s
    }
}
