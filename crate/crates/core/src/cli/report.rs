//! JSON reports. Every optional section is always present (as `null` when it
//! does not apply), so a subcommand emits the same keys for every input.

use serde::{Serialize, Serializer};

use crate::analysis::{FrameBounds, TightnessReport};
use crate::closed_form::ScalingResult;
use crate::linalg::{Frame, SymMatrix2};
use crate::oracle::{OracleOutcome, VerificationReport};
use crate::scalability::{direction_mod_pi, ScalabilityVerdict, WitnessKind};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A float that serializes non-finite values as the strings `"inf"`,
/// `"-inf"` and `"nan"`. Finite values use the shortest decimal form that
/// reads back to the same double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_infinite() && self.0 > 0.0 {
            f.write_str("inf")
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub input: String,
    pub options: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameSummary {
    pub m: usize,
    pub vectors: Vec<[Num; 2]>,
    pub norms: Vec<Num>,
    pub directions: Vec<Num>,
}

impl FrameSummary {
    pub fn new(frame: &Frame) -> Self {
        Self {
            m: frame.len(),
            vectors: frame.vectors().iter().map(|v| [Num(v.x), Num(v.y)]).collect(),
            norms: nums(&frame.norms()),
            directions: frame.vectors().iter().map(|v| Num(direction_mod_pi(v.x, v.y))).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorEntries {
    pub s11: Num,
    pub s12: Num,
    pub s22: Num,
}

impl From<&SymMatrix2> for OperatorEntries {
    fn from(s: &SymMatrix2) -> Self {
        Self { s11: Num(s.s11), s12: Num(s.s12), s22: Num(s.s22) }
    }
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct BoundsEntry {
    pub A: Num,
    pub B: Num,
    pub cond: Num,
}

impl From<&FrameBounds> for BoundsEntry {
    fn from(b: &FrameBounds) -> Self {
        Self { A: Num(b.lower), B: Num(b.upper), cond: Num(b.cond) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TightnessEntry {
    pub is_tight: bool,
    pub sum_a2: Num,
    pub sum_b2: Num,
    pub sum_ab: Num,
    pub tight_constant: Num,
}

impl From<&TightnessReport> for TightnessEntry {
    fn from(t: &TightnessReport) -> Self {
        Self {
            is_tight: t.is_tight,
            sum_a2: Num(t.sum_a2),
            sum_b2: Num(t.sum_b2),
            sum_ab: Num(t.sum_ab),
            tight_constant: Num(t.tight_constant),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    pub scalable: bool,
    pub spread: Num,
    pub arc_start: Num,
    pub witness_kind: Option<WitnessKind>,
    pub witness: Option<Vec<Num>>,
}

impl From<&ScalabilityVerdict> for VerdictEntry {
    fn from(v: &ScalabilityVerdict) -> Self {
        Self {
            scalable: v.scalable,
            spread: Num(v.spread),
            arc_start: Num(v.arc_start),
            witness_kind: v.witness_kind,
            witness: v.witness.as_ref().map(|w| nums(w.weights())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingEntry {
    pub method: &'static str,
    pub weights: Vec<Num>,
    pub pair: Option<(usize, usize)>,
    pub epsilon: Option<Num>,
    pub bounds: BoundsEntry,
    pub tightness: TightnessEntry,
}

impl ScalingEntry {
    pub fn new(result: &ScalingResult, epsilon: Option<f64>, tightness: &TightnessReport) -> Self {
        Self {
            method: result.method.as_str(),
            weights: nums(result.weights()),
            pair: result.pair,
            epsilon: epsilon.map(Num),
            bounds: (&result.bounds).into(),
            tightness: tightness.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub levels: usize,
    pub lo: Num,
    pub hi: Num,
    pub refine: bool,
    pub evaluated: u128,
    pub skipped: u128,
    pub grid_cond: Num,
    pub cond: Num,
    /// Condition number of the matching closed form, when it applies.
    pub closed_form_method: Option<&'static str>,
    pub closed_form_cond: Option<Num>,
    /// `closed_form_cond - cond`; positive means the search found better.
    pub gap: Option<Num>,
}

impl OracleEntry {
    pub fn new(
        outcome: &OracleOutcome,
        levels: usize,
        (lo, hi): (f64, f64),
        refine: bool,
        closed_form: Option<&ScalingResult>,
    ) -> Self {
        let cond = outcome.result.cond();
        Self {
            levels,
            lo: Num(lo),
            hi: Num(hi),
            refine,
            evaluated: outcome.evaluated,
            skipped: outcome.skipped,
            grid_cond: Num(outcome.grid_cond),
            cond: Num(cond),
            closed_form_method: closed_form.map(|r| r.method.as_str()),
            closed_form_cond: closed_form.map(|r| Num(r.cond())),
            gap: closed_form.map(|r| Num(r.cond() - cond)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct VerificationEntry {
    pub passed: bool,
    pub claimed_cond: Option<Num>,
    pub tol: Num,
    pub cond: Num,
    pub A: Num,
    pub B: Num,
    pub strict: bool,
    pub tightness: TightnessEntry,
}

impl VerificationEntry {
    pub fn new(report: &VerificationReport, claimed: Option<f64>, tol: f64) -> Self {
        Self {
            passed: report.passed,
            claimed_cond: claimed.map(Num),
            tol: Num(tol),
            cond: Num(report.cond),
            A: Num(report.lower),
            B: Num(report.upper),
            strict: report.strict,
            tightness: (&report.tightness).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    pub tool_version: &'static str,
    pub frame: FrameSummary,
    pub frame_operator: OperatorEntries,
    pub bounds: BoundsEntry,
    pub tightness: TightnessEntry,
    pub verdict: Option<VerdictEntry>,
    pub scaling: Option<ScalingEntry>,
    pub oracle: Option<OracleEntry>,
    pub verification: Option<VerificationEntry>,
    pub plot: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering, one `key  value` row per line.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        let mut row = |k: &str, v: String| rows.push((k.to_string(), v));
        let list = |xs: &[Num]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");

        row("command", self.command.name.clone());
        row("input", self.command.input.clone());
        row("m", self.frame.m.to_string());
        for (i, v) in self.frame.vectors.iter().enumerate() {
            row(
                &format!("vector[{i}]"),
                format!("({}, {})  norm {}  dir {}", v[0], v[1], self.frame.norms[i], self.frame.directions[i]),
            );
        }
        let s = &self.frame_operator;
        row("frame operator", format!("[[{}, {}], [{}, {}]]", s.s11, s.s12, s.s12, s.s22));
        row("A", self.bounds.A.to_string());
        row("B", self.bounds.B.to_string());
        row("cond", self.bounds.cond.to_string());
        row("tight", self.tightness.is_tight.to_string());

        if let Some(v) = &self.verdict {
            row("scalable", v.scalable.to_string());
            row("spread", v.spread.to_string());
            row("arc start", v.arc_start.to_string());
            if let Some(kind) = &v.witness_kind {
                let kind = match kind {
                    WitnessKind::OrthogonalPair { i, j } => format!("orthogonal pair ({i}, {j})"),
                    WitnessKind::Triple { i, j, k } => format!("triple ({i}, {j}, {k})"),
                };
                row("witness kind", kind);
            }
            if let Some(w) = &v.witness {
                row("witness", list(w));
            }
        }
        if let Some(sc) = &self.scaling {
            row("method", sc.method.to_string());
            row("weights", list(&sc.weights));
            if let Some((i, j)) = sc.pair {
                row("pair", format!("({i}, {j})"));
            }
            if let Some(e) = sc.epsilon {
                row("epsilon", e.to_string());
            }
            row("scaled A", sc.bounds.A.to_string());
            row("scaled B", sc.bounds.B.to_string());
            row("scaled cond", sc.bounds.cond.to_string());
            row("scaled tight", sc.tightness.is_tight.to_string());
        }
        if let Some(o) = &self.oracle {
            row("grid", format!("{} levels on [{}, {}]", o.levels, o.lo, o.hi));
            row("evaluated", o.evaluated.to_string());
            row("skipped", o.skipped.to_string());
            row("grid cond", o.grid_cond.to_string());
            row("oracle cond", o.cond.to_string());
            if let (Some(m), Some(c), Some(g)) = (o.closed_form_method, o.closed_form_cond, o.gap) {
                row("closed form", format!("{m}, cond {c}, gap {g}"));
            }
        }
        if let Some(v) = &self.verification {
            row("verified", if v.passed { "PASS" } else { "FAIL" }.to_string());
            if let Some(c) = v.claimed_cond {
                row("claimed cond", format!("{c} (tol {})", v.tol));
            }
            row("scaled cond", v.cond.to_string());
            row("scaled A", v.A.to_string());
            row("scaled B", v.B.to_string());
            row("strict", v.strict.to_string());
            row("scaled tight", v.tightness.is_tight.to_string());
        }
        if let Some(p) = &self.plot {
            row("plot", p.clone());
        }

        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}
