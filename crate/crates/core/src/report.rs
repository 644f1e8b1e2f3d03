//! Uniform pass/fail container returned by every validator and theorem check.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Flag(bool),
    Index(usize),
    Number(f64),
    Indices(Vec<usize>),
    Text(String),
}

impl From<bool> for WitnessValue {
    fn from(v: bool) -> Self {
        WitnessValue::Flag(v)
    }
}

impl From<usize> for WitnessValue {
    fn from(v: usize) -> Self {
        WitnessValue::Index(v)
    }
}

impl From<f64> for WitnessValue {
    fn from(v: f64) -> Self {
        WitnessValue::Number(v)
    }
}

impl From<Vec<usize>> for WitnessValue {
    fn from(v: Vec<usize>) -> Self {
        WitnessValue::Indices(v)
    }
}

impl From<&str> for WitnessValue {
    fn from(v: &str) -> Self {
        WitnessValue::Text(v.to_owned())
    }
}

impl From<String> for WitnessValue {
    fn from(v: String) -> Self {
        WitnessValue::Text(v)
    }
}

impl WitnessValue {
    pub fn as_number(&self) -> Option<f64> {
        match *self {
            WitnessValue::Number(v) => Some(v),
            WitnessValue::Index(i) => Some(i as f64),
            _ => None,
        }
    }

    pub fn as_index(&self) -> Option<usize> {
        match *self {
            WitnessValue::Index(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_indices(&self) -> Option<&[usize]> {
        match self {
            WitnessValue::Indices(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            WitnessValue::Text(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: WitnessValue,
}

/// A named numeric series, e.g. the d_L trace of a sequence against its limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub name: String,
    pub values: Vec<f64>,
}

/// How a report should be counted in summaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    VacuousPass,
    Fail,
}

/// Result of a check.
///
/// A failing report always carries at least one witness, and a report whose
/// hypothesis was not met is a pass that names the unmet hypothesis. Both
/// properties are guaranteed by the constructors; the fields are private.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    name: String,
    passed: bool,
    hypothesis_met: bool,
    witnesses: Vec<Witness>,
    diagnostics: Vec<Trace>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    parts: Vec<CheckReport>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            hypothesis_met: true,
            witnesses: Vec::new(),
            diagnostics: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn fail(
        name: impl Into<String>,
        label: impl Into<String>,
        value: impl Into<WitnessValue>,
    ) -> Self {
        let mut report = CheckReport::pass(name);
        report.passed = false;
        report.witnesses.push(Witness {
            label: label.into(),
            value: value.into(),
        });
        report
    }

    /// Pass without evidential content: the hypothesis named by `unmet` failed.
    pub fn vacuous(name: impl Into<String>, unmet: impl Into<String>) -> Self {
        let mut report = CheckReport::pass(name);
        report.hypothesis_met = false;
        report.witnesses.push(Witness {
            label: "unmet_hypothesis".into(),
            value: WitnessValue::Text(unmet.into()),
        });
        report
    }

    /// Evaluates `hypothesis ⇒ conclusion`. `unmet` names the failed
    /// hypothesis when there is one; `violation` is the witness used when the
    /// hypothesis holds but the conclusion does not.
    pub fn implication(
        name: impl Into<String>,
        unmet: Option<String>,
        conclusion: bool,
        violation: (&str, WitnessValue),
    ) -> Self {
        match unmet {
            Some(h) => CheckReport::vacuous(name, h),
            None if conclusion => CheckReport::pass(name),
            None => CheckReport::fail(name, violation.0, violation.1),
        }
    }

    pub fn with_witness(mut self, label: impl Into<String>, value: impl Into<WitnessValue>) -> Self {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.into(),
        });
        self
    }

    pub fn with_trace(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.diagnostics.push(Trace {
            name: name.into(),
            values,
        });
        self
    }

    /// Replaces the name, e.g. to tell apart two parts produced by the same check.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_part(mut self, part: CheckReport) -> Self {
        self.parts.push(part);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn hypothesis_met(&self) -> bool {
        self.hypothesis_met
    }

    pub fn is_vacuous(&self) -> bool {
        self.passed && !self.hypothesis_met
    }

    pub fn outcome(&self) -> Outcome {
        match (self.passed, self.hypothesis_met) {
            (false, _) => Outcome::Fail,
            (true, true) => Outcome::Pass,
            (true, false) => Outcome::VacuousPass,
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn witness(&self, label: &str) -> Option<&WitnessValue> {
        self.witnesses
            .iter()
            .find(|w| w.label == label)
            .map(|w| &w.value)
    }

    pub fn diagnostics(&self) -> &[Trace] {
        &self.diagnostics
    }

    pub fn trace(&self, name: &str) -> Option<&[f64]> {
        self.diagnostics
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.values.as_slice())
    }

    pub fn parts(&self) -> &[CheckReport] {
        &self.parts
    }

    pub fn part(&self, name: &str) -> Option<&CheckReport> {
        self.parts.iter().find(|p| p.name == name)
    }
}
