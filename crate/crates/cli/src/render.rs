//! Text and structured renderings of a [`RunReport`].

use std::fmt::Write as _;
use std::io;

use phib_core::report::Binding;
use phib_core::{CheckReport, Verdict};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::config::Format;
use crate::run::RunReport;
use crate::CliError;

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Structured => render_structured(report),
    }
}

/// Pretty JSON in which every float carries 17 significant digits.
pub fn render_structured(report: &RunReport) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17(PrettyFormatter::new()));
    report.serialize(&mut ser).expect("reports always serialize");
    let mut text = String::from_utf8(out).expect("serde_json writes UTF-8");
    text.push('\n');
    text
}

/// Reads a report written by [`render_structured`].
pub fn parse_report(text: &str) -> Result<RunReport, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
}

struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    }
}

/// One line per check, with the witness and both sides under failing ones.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    let norm = &report.config.norm;
    let _ = writeln!(
        out,
        "{} {}  seed {}  verdict {}",
        report.tool,
        report.version,
        report.seed,
        verdict_word(report.verdict)
    );
    let _ = writeln!(
        out,
        "norm {} on {} in dimension {}: K = {}, phi = {}, t-norm {} ({})",
        report.norm,
        norm.base.name(),
        norm.dim,
        norm.k.unwrap_or(1.0),
        norm.phi.map(|p| phi_text(&p)).unwrap_or_default(),
        norm.tnorm.map(tnorm_text).unwrap_or_default(),
        classification_text(report),
    );
    for suite in &report.suites {
        let _ = writeln!(out, "\n[{}] {}", suite.kind.as_str(), verdict_word(suite.verdict));
        for check in &suite.checks {
            check_lines(&mut out, check);
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "\nwarning: {w}");
    }
    out
}

fn check_lines(out: &mut String, check: &CheckReport) {
    let _ = writeln!(
        out,
        "  {}  {:<18} worst margin {:+.6e}  samples {}",
        verdict_word(check.verdict),
        check.check.as_str(),
        check.worst_margin,
        check.samples_run
    );
    if let Some(w) = check.counterexample.as_ref().filter(|_| !check.passed()) {
        let vars: Vec<String> = w
            .vars
            .iter()
            .map(|v| match &v.value {
                Binding::Scalar(s) => format!("{} = {s}", v.name),
                Binding::Vector(x) => format!("{} = {:?}", v.name, x.coords()),
            })
            .collect();
        let _ = writeln!(out, "        witness ({}): {}", w.clause, vars.join(", "));
        let _ = writeln!(out, "        lhs {} {} rhs {}", w.lhs, w.relation.symbol(), w.rhs);
    }
    for note in &check.notes {
        let _ = writeln!(out, "        note: {note}");
    }
}

fn phi_text(p: &crate::config::PhiConfig) -> String {
    use crate::config::PhiConfig;
    match p {
        PhiConfig::Abs => "abs".into(),
        PhiConfig::AbsPower(q) => format!("abs-power({q})"),
        PhiConfig::RationalEven(n) => format!("rational-even({n})"),
    }
}

fn tnorm_text(t: crate::config::TNormConfig) -> &'static str {
    use crate::config::TNormConfig;
    match t {
        TNormConfig::Minimum => "standard-intersection",
        TNormConfig::Product => "algebraic-product",
        TNormConfig::Lukasiewicz => "bounded-difference",
    }
}

fn classification_text(report: &RunReport) -> &'static str {
    use phib_core::fuzzynorm::Classification;
    match report.classification {
        Classification::BsFuzzyNorm => "reduces to a fuzzy norm",
        Classification::StrictPhiBNorm => "strict phi-b-norm",
    }
}
