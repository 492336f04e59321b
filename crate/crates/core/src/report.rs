//! Outcome records shared by every quantified check.

use serde::{Deserialize, Serialize};

use crate::fuzzynorm::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "bN1")]
    Bn1,
    #[serde(rename = "bN2")]
    Bn2,
    #[serde(rename = "bN3")]
    Bn3,
    #[serde(rename = "bN4")]
    Bn4,
    #[serde(rename = "bN5-monotone")]
    Bn5Monotone,
    #[serde(rename = "bN5-limit")]
    Bn5Limit,
    #[serde(rename = "tnorm-axioms")]
    TnormAxioms,
    #[serde(rename = "tnorm-continuity")]
    TnormContinuity,
    #[serde(rename = "phi-axioms")]
    PhiAxioms,
    #[serde(rename = "power-inequality")]
    PowerInequality,
    #[serde(rename = "openness")]
    Openness,
    #[serde(rename = "lemma1-certificate")]
    Lemma1Certificate,
    #[serde(rename = "completeness")]
    Completeness,
    #[serde(rename = "compactness")]
    Compactness,
    #[serde(rename = "convergence")]
    Convergence,
    #[serde(rename = "boundedness")]
    Boundedness,
}

impl CheckId {
    /// The six norm axioms in the order the full suite runs them.
    pub const NORM_AXIOMS: [CheckId; 6] = [
        CheckId::Bn1,
        CheckId::Bn2,
        CheckId::Bn3,
        CheckId::Bn4,
        CheckId::Bn5Monotone,
        CheckId::Bn5Limit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Bn1 => "bN1",
            CheckId::Bn2 => "bN2",
            CheckId::Bn3 => "bN3",
            CheckId::Bn4 => "bN4",
            CheckId::Bn5Monotone => "bN5-monotone",
            CheckId::Bn5Limit => "bN5-limit",
            CheckId::TnormAxioms => "tnorm-axioms",
            CheckId::TnormContinuity => "tnorm-continuity",
            CheckId::PhiAxioms => "phi-axioms",
            CheckId::PowerInequality => "power-inequality",
            CheckId::Openness => "openness",
            CheckId::Lemma1Certificate => "lemma1-certificate",
            CheckId::Completeness => "completeness",
            CheckId::Compactness => "compactness",
            CheckId::Convergence => "convergence",
            CheckId::Boundedness => "boundedness",
        }
    }

    pub fn parse(name: &str) -> Option<CheckId> {
        use CheckId::*;
        [
            Bn1,
            Bn2,
            Bn3,
            Bn4,
            Bn5Monotone,
            Bn5Limit,
            TnormAxioms,
            TnormContinuity,
            PhiAxioms,
            PowerInequality,
            Openness,
            Lemma1Certificate,
            Completeness,
            Compactness,
            Convergence,
            Boundedness,
        ]
        .into_iter()
        .find(|id| id.as_str() == name)
    }
}

impl std::fmt::Display for CheckId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// The relation a witness is supposed to satisfy between its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `lhs ≥ rhs`
    AtLeast,
    /// `lhs = rhs`
    Equal,
    /// `lhs > rhs`
    Greater,
    /// `lhs < rhs`
    Less,
}

impl Relation {
    /// How far `lhs`/`rhs` are from satisfying the relation; `≤ 0` means satisfied.
    ///
    /// Strict relations have no graded notion of "slightly violated": a failure
    /// scores at least one unit.
    pub fn violation(self, lhs: f64, rhs: f64) -> f64 {
        let v = match self {
            Relation::AtLeast => rhs - lhs,
            Relation::Equal => (lhs - rhs).abs(),
            Relation::Greater => {
                if lhs > rhs {
                    rhs - lhs
                } else {
                    1.0 + (rhs - lhs)
                }
            }
            Relation::Less => {
                if lhs < rhs {
                    lhs - rhs
                } else {
                    1.0 + (lhs - rhs)
                }
            }
        };
        if v.is_nan() {
            1.0
        } else {
            v
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::Equal => "=",
            Relation::Greater => ">",
            Relation::Less => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Binding {
    Scalar(f64),
    Vector(Vector),
}

/// A named variable bound by a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub value: Binding,
}

/// Concrete values of the quantified variables at which a property failed,
/// together with both sides of the failed relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterExample {
    /// Which clause of the check failed (for checks that bundle several).
    pub clause: String,
    pub vars: Vec<Var>,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
}

impl CounterExample {
    pub fn new(clause: impl Into<String>, relation: Relation, lhs: f64, rhs: f64) -> Self {
        CounterExample {
            clause: clause.into(),
            vars: Vec::new(),
            relation,
            lhs,
            rhs,
        }
    }

    pub fn with_scalar(mut self, name: &str, value: f64) -> Self {
        self.vars.push(Var {
            name: name.to_string(),
            value: Binding::Scalar(value),
        });
        self
    }

    pub fn with_vector(mut self, name: &str, value: Vector) -> Self {
        self.vars.push(Var {
            name: name.to_string(),
            value: Binding::Vector(value),
        });
        self
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.vars.iter().find(|v| v.name == name).and_then(|v| match v.value {
            Binding::Scalar(s) => Some(s),
            Binding::Vector(_) => None,
        })
    }

    pub fn vector(&self, name: &str) -> Option<&Vector> {
        self.vars.iter().find(|v| v.name == name).and_then(|v| match &v.value {
            Binding::Vector(x) => Some(x),
            Binding::Scalar(_) => None,
        })
    }

    pub fn violation(&self) -> f64 {
        self.relation.violation(self.lhs, self.rhs)
    }
}

/// Outcome of a quantified property check.
///
/// `verdict` is `Fail` exactly when `worst_margin < -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub verdict: Verdict,
    pub samples_run: u64,
    /// Minimum over all samples of `-violation`; negative values are violations.
    pub worst_margin: f64,
    pub tolerance: f64,
    pub counterexample: Option<CounterExample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(
        check: CheckId,
        samples_run: u64,
        worst_margin: f64,
        tolerance: f64,
        counterexample: Option<CounterExample>,
    ) -> Self {
        // -0.0 renders badly and compares equal anyway
        let worst_margin = worst_margin + 0.0;
        let verdict = if worst_margin < -tolerance {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        CheckReport {
            check,
            verdict,
            samples_run,
            worst_margin,
            tolerance,
            counterexample,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Running minimum of margins that remembers the sample that produced it.
///
/// Ties keep the lowest sample index, so merging partial results in any order
/// gives the same answer.
#[derive(Debug, Clone)]
pub(crate) struct Worst {
    pub margin: f64,
    pub index: u64,
    pub witness: Option<CounterExample>,
}

impl Worst {
    pub fn empty() -> Self {
        Worst {
            margin: f64::INFINITY,
            index: u64::MAX,
            witness: None,
        }
    }

    /// Records a sample; the witness is built only when it becomes the new minimum.
    pub fn consider(
        &mut self,
        index: u64,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        witness: impl FnOnce() -> CounterExample,
    ) {
        let margin = -relation.violation(lhs, rhs);
        if margin < self.margin || (margin == self.margin && index < self.index) {
            self.margin = margin;
            self.index = index;
            self.witness = Some(witness());
        }
    }

    pub fn merge(mut self, other: Worst) -> Worst {
        if other.margin < self.margin || (other.margin == self.margin && other.index < self.index) {
            self.margin = other.margin;
            self.index = other.index;
            self.witness = other.witness;
        }
        self
    }

    /// Finalizes into a report; the witness is kept only when it is a violation.
    pub fn into_report(self, check: CheckId, samples_run: u64, tolerance: f64) -> CheckReport {
        let margin = if self.margin.is_finite() { self.margin } else { 0.0 };
        let witness = if margin < -tolerance { self.witness } else { None };
        CheckReport::new(check, samples_run, margin, tolerance, witness)
    }
}
