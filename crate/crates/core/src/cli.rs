//! Command-line surface: one command per analysis, text or JSON output,
//! and an exit code per outcome class.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Sector, ValidatedAlgebra, Violation};
use crate::connections::{complete_depth, connection_classes, oracle_partition, ConnectionClass, SupportGraph};
use crate::corpus;
use crate::decomposition::{
    teo2_decompose, teo4_pipeline, DecompositionError, Piece, StructureComponent, StructureReport,
    Teo2Decomposition, VerdictKind,
};
use crate::group::GroupElement;
use crate::ideals::{hypothesis_report, is_gr_simple, ClosureTrace, GrSimplicity, Hypothesis, HypothesisReport, NotSimpleWitness};
use crate::io::parse_document;
use crate::subspace::GradedSubspace;

pub const EXIT_OK: i32 = 0;
/// I/O, usage and parse errors.
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESES: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Support,
    Connections,
    Ideals,
    Decompose,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Builtin(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub format: Format,
    pub oracle_depth: Option<usize>,
}

/// Exact structure analysis of group-graded Lie superalgebras.
#[derive(Debug, Parser)]
#[command(name = "supergrade", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "builtin"])))]
pub struct Args {
    /// Analysis to run.
    #[arg(long, value_enum)]
    pub command: Command,
    /// Algebra document to read.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Builtin example (ex1, ex2, ex3, ex5, ex6, ex2-ex1, case2, case4).
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Chain length bound for the connection oracle; defaults to |Σ|+1.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub oracle_depth: Option<u32>,
}

impl Args {
    pub fn into_config(self) -> RunConfig {
        let source = match (self.input, self.builtin) {
            (Some(p), _) => Source::Path(p),
            (None, Some(b)) => Source::Builtin(b),
            (None, None) => unreachable!("clap enforces one source"),
        };
        RunConfig {
            command: self.command,
            source,
            format: self.format,
            oracle_depth: self.oracle_depth.map(|d| d as usize),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: msg.into() + "\n",
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let (label, text) = match &config.source {
        Source::Path(p) => match std::fs::read_to_string(p) {
            Ok(t) => (p.display().to_string(), t),
            Err(e) => return Outcome::error(format!("cannot read {}: {e}", p.display())),
        },
        Source::Builtin(name) => match corpus::document(name) {
            Ok(t) => (name.to_ascii_lowercase(), t.to_string()),
            Err(e) => return Outcome::error(e.to_string()),
        },
    };
    run_text(config, &label, &text)
}

/// Runs a command on document text; `label` names the input in messages.
pub fn run_text(config: &RunConfig, label: &str, text: &str) -> Outcome {
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return Outcome::error(format!("{label}: {e}")),
    };
    let name = doc.name.clone().unwrap_or_else(|| label.to_string());
    let alg = match ValidatedAlgebra::new(doc.algebra) {
        Ok(a) => a,
        Err(invalid) => {
            let body = render_violations(&invalid.algebra, &invalid.report.violations, config.format, &name);
            return Outcome {
                code: EXIT_INVALID,
                stdout: body,
                stderr: format!("{name}: {} axiom violation(s)\n", invalid.report.violations.len()),
            };
        }
    };
    let mut out = Output::new(config.format, &name, &alg);
    let code = match config.command {
        Command::Validate => out.validate(),
        Command::Support => out.support(),
        Command::Connections => out.connections(config.oracle_depth),
        Command::Ideals => out.ideals(),
        Command::Decompose => out.decompose(),
        Command::Report => {
            let codes = [
                out.validate(),
                out.support(),
                out.connections(config.oracle_depth),
                out.hypotheses(),
                out.simplicity(),
                out.ideals(),
                out.decompose(),
            ];
            codes.into_iter().find(|&c| c != EXIT_OK).unwrap_or(EXIT_OK)
        }
    };
    out.finish(code)
}

const MAX_LISTED_VIOLATIONS: usize = 25;

fn render_violations(
    alg: &crate::algebra::GradedSuperalgebra,
    violations: &[Violation],
    format: Format,
    name: &str,
) -> String {
    match format {
        Format::Text => {
            let mut s = format!("{name}: INVALID ({} violation(s))\n", violations.len());
            for v in violations.iter().take(MAX_LISTED_VIOLATIONS) {
                let _ = writeln!(s, "  {}", v.describe(alg));
            }
            if violations.len() > MAX_LISTED_VIOLATIONS {
                let _ = writeln!(s, "  ... {} more", violations.len() - MAX_LISTED_VIOLATIONS);
            }
            s
        }
        Format::Structured => {
            let list: Vec<Value> = violations.iter().map(|v| violation_json(alg, v)).collect();
            pretty(&json!({"algebra": name, "validate": {"valid": false, "violations": list}}))
        }
    }
}

fn violation_json(alg: &crate::algebra::GradedSuperalgebra, v: &Violation) -> Value {
    let n = |i: &usize| alg.basis()[*i].name.clone();
    let (kind, names): (&str, Vec<String>) = match v {
        Violation::Grading { left, right, result } => ("grading", vec![n(left), n(right), n(result)]),
        Violation::Parity { left, right, result } => ("parity", vec![n(left), n(right), n(result)]),
        Violation::SkewSupersymmetry { left, right } => ("skew_supersymmetry", vec![n(left), n(right)]),
        Violation::EvenDiagonal { index } => ("even_diagonal", vec![n(index)]),
        Violation::Jacobi { x, y, z, .. } => ("jacobi", vec![n(x), n(y), n(z)]),
    };
    json!({"kind": kind, "witness": names, "message": v.describe(alg)})
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn coords(g: &GroupElement) -> Value {
    json!(g.coords())
}

fn sector_json(s: &Sector) -> Value {
    json!({"degree": coords(&s.degree), "parity": s.parity.bit()})
}

fn trace_json(s: &Sector, t: &ClosureTrace) -> Value {
    json!({"generator": sector_json(s), "generator_dim": t.generator_dim, "rounds": t.rounds, "final_dim": t.final_dim})
}

fn trace_text(s: &Sector, t: &ClosureTrace) -> String {
    let mut dims = vec![t.generator_dim.to_string()];
    dims.extend(t.rounds.iter().map(usize::to_string));
    format!("closure of L_{}: {}", s, dims.join(" -> "))
}

fn hypothesis_names(hs: &[Hypothesis]) -> Vec<&'static str> {
    hs.iter().map(|h| h.name()).collect()
}

struct Output<'a> {
    format: Format,
    name: String,
    alg: &'a ValidatedAlgebra,
    text: String,
    sections: serde_json::Map<String, Value>,
}

impl<'a> Output<'a> {
    fn new(format: Format, name: &str, alg: &'a ValidatedAlgebra) -> Self {
        let mut text = String::new();
        if format == Format::Text {
            let _ = writeln!(text, "algebra {name}: dimension {}, group {}", alg.dim(), alg.group());
        }
        Output {
            format,
            name: name.to_string(),
            alg,
            text,
            sections: serde_json::Map::new(),
        }
    }

    fn finish(self, code: i32) -> Outcome {
        let stdout = match self.format {
            Format::Text => self.text,
            Format::Structured => {
                let mut top = serde_json::Map::new();
                top.insert("algebra".into(), json!(self.name));
                top.insert("dimension".into(), json!(self.alg.dim()));
                top.insert("group".into(), json!(self.alg.group().to_string()));
                top.insert("exit_code".into(), json!(code));
                top.extend(self.sections);
                pretty(&Value::Object(top))
            }
        };
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn section(&mut self, key: &str, v: Value) {
        self.sections.insert(key.into(), v);
    }

    fn subspace_json(&self, s: &GradedSubspace) -> Value {
        let items: Vec<Value> = s
            .basis()
            .iter()
            .map(|(sec, v)| json!({"degree": coords(&sec.degree), "parity": sec.parity.bit(), "vector": self.alg.render_vector(v)}))
            .collect();
        json!({"dim": s.dim(), "basis": items})
    }

    fn subspace_text(&self, s: &GradedSubspace) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let names: Vec<String> = s.basis_vectors().iter().map(|v| self.alg.render_vector(v)).collect();
        format!("span{{{}}}", names.join(", "))
    }

    fn validate(&mut self) -> i32 {
        match self.format {
            Format::Text => self.line("validate: valid (grading, parity, skew-supersymmetry, super Jacobi)"),
            Format::Structured => self.section("validate", json!({"valid": true, "violations": []})),
        }
        EXIT_OK
    }

    fn support(&mut self) -> i32 {
        let sup = self.alg.support();
        let list = |set: &std::collections::BTreeSet<GroupElement>| set.iter().map(coords).collect::<Vec<_>>();
        let sectors: Vec<Value> = self
            .alg
            .sector_indices()
            .iter()
            .map(|(s, idx)| {
                let names: Vec<&str> = idx.iter().map(|&i| self.alg.basis()[i].name.as_str()).collect();
                json!({"degree": coords(&s.degree), "parity": s.parity.bit(), "dim": idx.len(), "basis": names})
            })
            .collect();
        match self.format {
            Format::Text => {
                let show = |set: &std::collections::BTreeSet<GroupElement>| {
                    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                };
                self.line(format!("support: {{{}}}", show(&sup.sigma)));
                self.line(format!("  even part: {{{}}}", show(&sup.even)));
                self.line(format!("  odd part: {{{}}}", show(&sup.odd)));
                self.line(format!("  symmetric: {}", yes(sup.symmetric)));
                for (s, idx) in self.alg.sector_indices() {
                    let names: Vec<&str> = idx.iter().map(|&i| self.alg.basis()[i].name.as_str()).collect();
                    self.line(format!("  L_{s}: dim {} [{}]", idx.len(), names.join(", ")));
                }
            }
            Format::Structured => self.section(
                "support",
                json!({"sigma": list(&sup.sigma), "even": list(&sup.even), "odd": list(&sup.odd),
                       "symmetric": sup.symmetric, "sectors": sectors}),
            ),
        }
        EXIT_OK
    }

    fn connections(&mut self, depth: Option<usize>) -> i32 {
        let sg = SupportGraph::of_algebra(self.alg);
        let classes = match connection_classes(&sg) {
            Ok(c) => c,
            Err(e) => return self.failure("connections", EXIT_HYPOTHESES, &e.to_string()),
        };
        let depth = depth.unwrap_or_else(|| complete_depth(&sg));
        let oracle = match oracle_partition(&sg, depth) {
            Ok(o) => o,
            Err(e) => return self.failure("connections", EXIT_ERROR, &e.to_string()),
        };
        let members: Vec<_> = classes.iter().map(|c| c.members.clone()).collect();
        let agrees = members == oracle;
        let complete = depth >= complete_depth(&sg);
        let class_list = |cs: &[ConnectionClass]| -> Vec<Value> {
            cs.iter().map(|c| json!(c.members.iter().map(coords).collect::<Vec<_>>())).collect()
        };
        match self.format {
            Format::Text => {
                self.line(format!("connections: {} class(es)", classes.len()));
                for c in &classes {
                    let m: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                    self.line(format!("  [{}] = {{{}}}", c.representative, m.join(" ")));
                }
                self.line(format!(
                    "  oracle (depth {depth}{}): {}",
                    if complete { ", complete" } else { "" },
                    if agrees { "agrees" } else { "differs" }
                ));
            }
            Format::Structured => {
                let oracle_list: Vec<Value> = oracle
                    .iter()
                    .map(|b| json!(b.iter().map(coords).collect::<Vec<_>>()))
                    .collect();
                self.section(
                    "connections",
                    json!({"classes": class_list(&classes), "oracle": {"depth": depth, "complete": complete,
                           "partition": oracle_list, "agrees": agrees}}),
                )
            }
        }
        if complete && !agrees {
            EXIT_VERIFICATION
        } else {
            EXIT_OK
        }
    }

    fn failure(&mut self, key: &str, code: i32, msg: &str) -> i32 {
        match self.format {
            Format::Text => self.line(format!("{key}: FAILED: {msg}")),
            Format::Structured => self.section(key, json!({"error": msg})),
        }
        code
    }

    fn hypotheses(&mut self) -> i32 {
        let r = hypothesis_report(self.alg);
        match self.format {
            Format::Text => {
                self.line("hypotheses:");
                self.hypothesis_lines(&r);
            }
            Format::Structured => {
                let v = self.hypothesis_json(&r);
                self.section("hypotheses", v)
            }
        }
        EXIT_OK
    }

    fn hypothesis_lines(&mut self, r: &HypothesisReport) {
        for h in Hypothesis::ALL {
            let mut l = format!("  {}: {}", h.name(), yes(r.holds(h)));
            if let Some(w) = r.witness(h) {
                let _ = write!(l, " ({})", w.describe(self.alg));
            }
            self.line(l);
        }
    }

    fn hypothesis_json(&self, r: &HypothesisReport) -> Value {
        let mut flags = serde_json::Map::new();
        for h in Hypothesis::ALL {
            flags.insert(h.name().into(), json!(r.holds(h)));
        }
        let witnesses: Vec<Value> = r
            .witnesses
            .iter()
            .map(|w| json!({"hypothesis": w.hypothesis().name(), "witness": w.describe(self.alg)}))
            .collect();
        json!({"flags": flags, "witnesses": witnesses})
    }

    fn simplicity(&mut self) -> i32 {
        let v = is_gr_simple(self.alg);
        let (verdict, detail): (&str, Value) = match &v {
            GrSimplicity::Simple { closures } => (
                "simple",
                json!(closures.iter().map(|(s, t)| trace_json(s, t)).collect::<Vec<_>>()),
            ),
            GrSimplicity::NotSimple(NotSimpleWitness::Abelian) => ("not_simple", json!("abelian")),
            GrSimplicity::NotSimple(NotSimpleWitness::ProperIdeal { generator, closure }) => (
                "not_simple",
                json!({"closure": trace_json(generator, &closure.trace), "ideal": self.subspace_json(&closure.ideal)}),
            ),
            GrSimplicity::Inapplicable(h) => ("inapplicable", json!(hypothesis_names(h))),
        };
        match self.format {
            Format::Text => {
                let msg = match &v {
                    GrSimplicity::Simple { .. } => "gr-simple".to_string(),
                    GrSimplicity::NotSimple(NotSimpleWitness::Abelian) => "not gr-simple ([L, L] = 0)".into(),
                    GrSimplicity::NotSimple(NotSimpleWitness::ProperIdeal { generator, closure }) => format!(
                        "not gr-simple: {} generates the proper ideal {}",
                        generator,
                        self.subspace_text(&closure.ideal)
                    ),
                    GrSimplicity::Inapplicable(h) => {
                        format!("undecided (requires {})", hypothesis_names(h).join(", "))
                    }
                };
                self.line(format!("gr-simplicity: {msg}"));
            }
            Format::Structured => self.section("gr_simplicity", json!({"verdict": verdict, "detail": detail})),
        }
        EXIT_OK
    }

    fn ideals(&mut self) -> i32 {
        let t = match teo2_decompose(self.alg) {
            Ok(t) => t,
            Err(e) => return self.decomposition_failure("ideals", &e),
        };
        match self.format {
            Format::Text => self.ideals_text(&t),
            Format::Structured => {
                let ideals: Vec<Value> = t
                    .ideals
                    .iter()
                    .map(|i| {
                        json!({"class": i.class.members.iter().map(coords).collect::<Vec<_>>(),
                               "one_part": self.subspace_json(&i.one_part),
                               "outer_part": self.subspace_json(&i.outer_part),
                               "total": self.subspace_json(&i.total)})
                    })
                    .collect();
                let v = json!({"bracket_span": self.subspace_json(&t.bracket_span),
                               "complement": self.subspace_json(&t.u_complement), "ideals": ideals});
                self.section("ideals", v)
            }
        }
        EXIT_OK
    }

    fn ideals_text(&mut self, t: &Teo2Decomposition) {
        self.line(format!(
            "ideals: L = U + sum of {} class ideal(s)",
            t.ideals.len()
        ));
        self.line(format!("  brackets of opposite degrees: {}", self.subspace_text(&t.bracket_span)));
        self.line(format!("  U = {}", self.subspace_text(&t.u_complement)));
        for i in &t.ideals {
            self.line(format!(
                "  I[{}]: dim {} = {} + {}",
                i.class.representative,
                i.total.dim(),
                self.subspace_text(&i.one_part),
                self.subspace_text(&i.outer_part)
            ));
        }
    }

    fn decomposition_failure(&mut self, key: &str, e: &DecompositionError) -> i32 {
        let code = match e {
            DecompositionError::HypothesesNotMet { .. } | DecompositionError::Connection(_) => EXIT_HYPOTHESES,
            DecompositionError::Precondition(_) => EXIT_HYPOTHESES,
            DecompositionError::DirectSumFailure(_) | DecompositionError::VerificationFailure(_) => EXIT_VERIFICATION,
            DecompositionError::Ideal(_) | DecompositionError::NotClosed(_) => EXIT_VERIFICATION,
        };
        match (self.format, e) {
            (Format::Text, DecompositionError::HypothesesNotMet { missing, report }) => {
                self.line(format!("{key}: hypotheses not met: {}", hypothesis_names(missing).join(", ")));
                for h in missing {
                    if let Some(w) = report.witness(*h) {
                        let d = w.describe(self.alg);
                        self.line(format!("  {}: {d}", h.name()));
                    }
                }
            }
            (Format::Structured, DecompositionError::HypothesesNotMet { missing, report }) => {
                let witnesses: Vec<Value> = missing
                    .iter()
                    .filter_map(|h| report.witness(*h).map(|w| (h, w)))
                    .map(|(h, w)| json!({"hypothesis": h.name(), "witness": w.describe(self.alg)}))
                    .collect();
                self.section(
                    key,
                    json!({"error": "hypotheses_not_met", "missing": hypothesis_names(missing), "witnesses": witnesses}),
                )
            }
            (Format::Text, e) => self.line(format!("{key}: FAILED: {e}")),
            (Format::Structured, e) => self.section(key, json!({"error": e.to_string()})),
        }
        code
    }

    fn decompose(&mut self) -> i32 {
        match teo4_pipeline(self.alg) {
            Ok(r) => {
                match self.format {
                    Format::Text => self.structure_text(&r),
                    Format::Structured => {
                        let v = self.structure_json(&r);
                        self.section("decompose", v)
                    }
                }
                EXIT_OK
            }
            Err(e) => self.decomposition_failure("decompose", &e),
        }
    }

    fn component_json(&self, c: &StructureComponent) -> Value {
        let e = &c.verdict.evidence;
        let mut v = json!({
            "kind": c.verdict.kind.name(),
            "class": c.class.members.iter().map(coords).collect::<Vec<_>>(),
            "piece": piece_name(c.piece),
            "dim": c.dim(),
            "support": c.support.iter().map(coords).collect::<Vec<_>>(),
            "basis": self.subspace_json(&c.subspace)["basis"].clone(),
            "closures": e.closures.iter().map(|(s, t)| trace_json(s, t)).collect::<Vec<_>>(),
        });
        if let Some(p) = &e.proper_ideal {
            v["proper_ideal"] = json!({"closure": trace_json(&p.generator, &p.trace), "dim": p.ideal.dim()});
        }
        v
    }

    fn structure_json(&self, r: &StructureReport) -> Value {
        json!({
            "simple_components": r.simple_components.iter().map(|c| self.component_json(c)).collect::<Vec<_>>(),
            "small_components": r.small_components.iter().map(|c| self.component_json(c)).collect::<Vec<_>>(),
            "hypotheses": self.hypothesis_json(&r.hypothesis),
            "direct_sum_checked": r.direct_sum_checked,
            "dimension_sum": r.simple_components.iter().chain(&r.small_components).map(|c| c.dim()).sum::<usize>(),
        })
    }

    fn structure_text(&mut self, r: &StructureReport) {
        self.line(format!(
            "decompose: {} gr-simple component(s), {} small component(s)",
            r.simple_components.len(),
            r.small_components.len()
        ));
        for (tag, list) in [("K", &r.simple_components), ("Q", &r.small_components)] {
            for (k, c) in list.iter().enumerate() {
                let sup: Vec<String> = c.support.iter().map(ToString::to_string).collect();
                let piece = match c.piece {
                    Piece::Whole => String::new(),
                    p => format!(", {} of a split", piece_name(p)),
                };
                self.line(format!(
                    "  {tag}{} {}: dim {}, support {{{}}}{piece}",
                    k + 1,
                    c.verdict.kind.name(),
                    c.dim(),
                    sup.join(" ")
                ));
                self.line(format!("    basis {}", self.subspace_text(&c.subspace)));
                for (s, t) in &c.verdict.evidence.closures {
                    self.line(format!("    {}", trace_text(s, t)));
                }
                if let Some(p) = &c.verdict.evidence.proper_ideal {
                    self.line(format!("    proper ideal: {} (dim {})", trace_text(&p.generator, &p.trace), p.ideal.dim()));
                }
                if let VerdictKind::Split(p) = &c.verdict.kind {
                    self.line(format!("    split dims {} + {}", p.i.dim(), p.j.dim()));
                }
            }
        }
        let total: usize = r.simple_components.iter().chain(&r.small_components).map(|c| c.dim()).sum();
        self.line(format!(
            "  dimensions sum to {total} = dim L; direct sum verified: {}",
            yes(r.direct_sum_checked)
        ));
    }
}

fn piece_name(p: Piece) -> &'static str {
    match p {
        Piece::Whole => "whole",
        Piece::SplitFirst => "first half",
        Piece::SplitSecond => "second half",
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
