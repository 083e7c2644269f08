use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use torvanish_core::homology::{EntrySummary, TorProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Checked,
    AssumedByConstruction,
    Unsupported,
}

/// `Required` hypotheses decide vacuity; `Gate` entries only switch parts of
/// the conclusion on or off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Required,
    Gate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub method: Method,
    pub role: Role,
    pub detail: String,
}

impl HypothesisCheck {
    pub fn checked(id: &str, statement: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            status: if holds { Status::Holds } else { Status::Fails },
            method: Method::Checked,
            role: Role::Required,
            detail: detail.into(),
        }
    }

    pub fn assumed(id: &str, statement: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            status: Status::Holds,
            method: Method::AssumedByConstruction,
            role: Role::Required,
            detail: detail.into(),
        }
    }

    pub fn unsupported(id: &str, statement: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            status: Status::Unknown,
            method: Method::Unsupported,
            role: Role::Required,
            detail: detail.into(),
        }
    }

    pub fn gate(mut self) -> Self {
        self.role = Role::Gate;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportVerdict {
    Verified,
    Vacuous,
    Violated,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub ring: String,
    /// Presentations of every input module, keyed by role.
    pub inputs: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, Value>,
    pub bound: usize,
    /// The `i >> 0` window `[ceil(B/2), B]`.
    pub window: (usize, usize),
    pub hypotheses: Vec<HypothesisCheck>,
    pub verdict: ReportVerdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// `Tor_i` lengths for `0 <= i <= B`, `"inf"` when infinite.
    pub tor_lengths: Vec<Value>,
    /// Full profile, attached to violated reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tor_profile: Option<Vec<EntrySummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

pub fn length_values(t: &TorProfile) -> Vec<Value> {
    t.lengths()
        .into_iter()
        .map(|l| match l {
            Some(v) => Value::from(v),
            None => Value::from("inf"),
        })
        .collect()
}

/// Outcome of evaluating the conclusion of a non-vacuous instance.
pub enum Conclusion {
    Holds(String),
    Fails(String),
    Undecided(String),
    /// Hypotheses held but no implication had a true antecedent.
    Vacuous(String),
}

/// `[ceil(B/2), B]`.
pub fn tail_window(bound: usize) -> (usize, usize) {
    (bound.div_ceil(2).max(1), bound)
}

pub struct Draft {
    pub theorem: &'static str,
    pub instance: String,
    pub ring: String,
    pub inputs: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, Value>,
    pub bound: usize,
    pub hypotheses: Vec<HypothesisCheck>,
    pub tor: Option<std::sync::Arc<TorProfile>>,
    pub notes: Vec<String>,
}

impl Draft {
    pub fn new(theorem: &'static str, instance: &str, ring: String, bound: usize) -> Self {
        Self {
            theorem,
            instance: instance.into(),
            ring,
            inputs: BTreeMap::new(),
            parameters: BTreeMap::new(),
            bound,
            hypotheses: Vec::new(),
            tor: None,
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, role: &str, text: impl ToString) -> &mut Self {
        self.inputs.insert(role.into(), text.to_string());
        self
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.into(), v.into());
        self
    }

    pub fn push(&mut self, h: HypothesisCheck) -> &mut Self {
        self.hypotheses.push(h);
        self
    }

    /// Id-ordered failed and uncertified required hypotheses.
    fn blockers(&self) -> (Vec<&str>, Vec<&str>) {
        let req = self.hypotheses.iter().filter(|h| h.role == Role::Required);
        let failed = req.clone().filter(|h| h.status == Status::Fails).map(|h| h.id.as_str()).collect();
        let unknown = req.filter(|h| h.status == Status::Unknown).map(|h| h.id.as_str()).collect();
        (failed, unknown)
    }

    /// Whether every required hypothesis is certified.
    pub fn all_hold(&self) -> bool {
        let (f, u) = self.blockers();
        f.is_empty() && u.is_empty()
    }

    /// Vacuous if a required hypothesis fails, unsupported if one is not
    /// certified, otherwise the conclusion decides.
    pub fn finish(self, conclusion: impl FnOnce() -> Conclusion) -> TheoremReport {
        let (failed, unknown) = self.blockers();
        let (verdict, detail) = if !failed.is_empty() {
            (ReportVerdict::Vacuous, format!("vacuous: {} violated", plural(&failed)))
        } else if !unknown.is_empty() {
            (ReportVerdict::Unsupported, format!("unsupported: {} not certified", plural(&unknown)))
        } else {
            match conclusion() {
                Conclusion::Holds(d) => (ReportVerdict::Verified, format!("verified to bound {}: {d}", self.bound)),
                Conclusion::Fails(d) => (ReportVerdict::Violated, d),
                Conclusion::Undecided(d) => (ReportVerdict::Unsupported, d),
                Conclusion::Vacuous(d) => (ReportVerdict::Vacuous, d),
            }
        };
        self.finish_with(verdict, detail)
    }

    pub fn finish_with(self, verdict: ReportVerdict, detail: String) -> TheoremReport {
        let tor_lengths = self.tor.as_deref().map(length_values).unwrap_or_default();
        let tor_profile = match (verdict, &self.tor) {
            (ReportVerdict::Violated, Some(t)) => Some(t.summaries()),
            _ => None,
        };
        TheoremReport {
            theorem: self.theorem.into(),
            instance: self.instance,
            ring: self.ring,
            inputs: self.inputs,
            parameters: self.parameters,
            bound: self.bound,
            window: tail_window(self.bound),
            hypotheses: self.hypotheses,
            verdict,
            detail,
            notes: self.notes,
            tor_lengths,
            tor_profile,
            elapsed_ms: None,
        }
    }
}

fn plural(ids: &[&str]) -> String {
    if ids.len() == 1 {
        format!("hypothesis {}", ids[0])
    } else {
        format!("hypotheses {}", ids.join(", "))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub verified: usize,
    pub vacuous: usize,
    pub violated: usize,
    pub unsupported: usize,
    /// Instances whose hypotheses all held, so the conclusion was tested.
    pub non_vacuous: usize,
}

impl Counts {
    pub fn add(&mut self, r: &TheoremReport) {
        match r.verdict {
            ReportVerdict::Verified => self.verified += 1,
            ReportVerdict::Vacuous => self.vacuous += 1,
            ReportVerdict::Violated => self.violated += 1,
            ReportVerdict::Unsupported => self.unsupported += 1,
        }
        if matches!(r.verdict, ReportVerdict::Verified | ReportVerdict::Violated) {
            self.non_vacuous += 1;
        }
    }

    pub fn total(&self) -> usize {
        self.verified + self.vacuous + self.violated + self.unsupported
    }
}
