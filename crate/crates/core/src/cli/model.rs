//! JSON model files.
//!
//! ```json
//! {
//!   "structure": "classical-rational",
//!   "outcomes": ["h", "t"],
//!   "weights": {"h": "1/2", "t": 0.5},
//!   "algebra": [["h"]],
//!   "events": {"heads": ["h"]},
//!   "variables": {"X": {"h": 1, "t": 0}}
//! }
//! ```
//!
//! `algebra` lists generator events and defaults to the power set. Outcome
//! weights are summed with ⊕ into atom weights. Variables are per-outcome
//! tables, given either as a label map or as an array in outcome order.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::Failure;
use crate::algebra::{fold_add, Structure};
use crate::error::Error;
use crate::measure::{Measure, ProbabilityMeasure};
use crate::randvar::RandomVariable;
use crate::space::{Event, SampleSpace, SigmaAlgebra};

/// A scalar as written in a model file.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Number(serde_json::Number),
    Bool(bool),
}

impl Literal {
    pub fn text(&self) -> String {
        match self {
            Literal::Text(s) => s.trim().to_string(),
            Literal::Number(n) => n.to_string(),
            Literal::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ValueTable {
    ByLabel(BTreeMap<String, Literal>),
    InOrder(Vec<Literal>),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub structure: String,
    pub outcomes: Vec<String>,
    pub weights: BTreeMap<String, Literal>,
    #[serde(default)]
    pub algebra: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub variables: BTreeMap<String, ValueTable>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("malformed model: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// A model resolved against a structure. The measure is not yet known to be
/// normalized; see [`Model::probability`].
#[derive(Clone, Debug)]
pub struct Model<S: Structure> {
    pub measure: Measure<S>,
    pub events: BTreeMap<String, Event>,
    pub variables: BTreeMap<String, RandomVariable<S::Value>>,
}

pub(crate) fn parse_value<S: Structure>(s: &S, lit: &str, what: &str) -> Result<S::Value, Failure> {
    s.parse(lit)
        .ok_or_else(|| Failure::Usage(format!("{what}: `{lit}` is not a {} value", s.name())))
}

fn labels_event(space: &SampleSpace, labels: &[String], what: &str) -> Result<Event, Failure> {
    space.event_from_labels(labels).map_err(|e| match e {
        Error::UnknownOutcome(l) => Failure::Usage(format!("{what}: unknown outcome `{l}`")),
        other => Failure::Usage(format!("{what}: {other}")),
    })
}

impl<S: Structure> Model<S> {
    /// Parse problems (unknown labels, bad literals, missing weights) are
    /// usage failures; measure and measurability violations are domain
    /// failures.
    pub fn build(s: S, file: &ModelFile) -> Result<Self, Failure> {
        let space = SampleSpace::new(file.outcomes.iter())
            .map_err(|e| Failure::Usage(format!("outcomes: {e}")))?;

        for label in file.weights.keys() {
            if space.index_of(label).is_none() {
                return Err(Failure::Usage(format!(
                    "weights: unknown outcome `{label}`"
                )));
            }
        }
        let outcome_weights = space
            .labels()
            .iter()
            .map(|l| {
                let lit = file
                    .weights
                    .get(l)
                    .ok_or_else(|| Failure::Usage(format!("weights: no weight for `{l}`")))?;
                parse_value(&s, &lit.text(), &format!("weight of `{l}`"))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let algebra = match &file.algebra {
            None => SigmaAlgebra::power_set(&space),
            Some(generators) => {
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| labels_event(&space, g, &format!("algebra generator {i}")))
                    .collect::<Result<Vec<_>, _>>()?;
                SigmaAlgebra::generate(&space, &gens)?
            }
        };
        let atom_weights = algebra
            .atoms()
            .iter()
            .map(|atom| fold_add(&s, atom.indices().map(|i| &outcome_weights[i])))
            .collect();
        let measure = Measure::new(s.clone(), algebra.clone(), atom_weights)?;

        let mut events = BTreeMap::new();
        for (name, labels) in &file.events {
            let e = labels_event(&space, labels, &format!("event `{name}`"))?;
            if !algebra.is_measurable(&e) {
                return Err(Error::NotMeasurable(format!("{e} (event `{name}`)")).into());
            }
            events.insert(name.clone(), e);
        }

        let mut variables = BTreeMap::new();
        for (name, table) in &file.variables {
            let what = format!("variable `{name}`");
            let lits: Vec<String> = match table {
                ValueTable::InOrder(v) => {
                    if v.len() != space.len() {
                        return Err(Failure::Usage(format!(
                            "{what}: expected {} values, got {}",
                            space.len(),
                            v.len()
                        )));
                    }
                    v.iter().map(Literal::text).collect()
                }
                ValueTable::ByLabel(m) => {
                    if let Some(l) = m.keys().find(|l| space.index_of(l).is_none()) {
                        return Err(Failure::Usage(format!("{what}: unknown outcome `{l}`")));
                    }
                    space
                        .labels()
                        .iter()
                        .map(|l| {
                            m.get(l).map(Literal::text).ok_or_else(|| {
                                Failure::Usage(format!("{what}: no value for `{l}`"))
                            })
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            let values = lits
                .iter()
                .map(|l| parse_value(&s, l, &what))
                .collect::<Result<Vec<_>, _>>()?;
            let rv =
                RandomVariable::from_outcomes(&s, algebra.clone(), &values).map_err(
                    |e| match e {
                        Error::NotMeasurable(m) => Error::NotMeasurable(format!("{m} ({what})")),
                        other => other,
                    },
                )?;
            variables.insert(name.clone(), rv);
        }

        Ok(Model {
            measure,
            events,
            variables,
        })
    }

    pub fn probability(&self) -> Result<ProbabilityMeasure<S>, Failure> {
        Ok(ProbabilityMeasure::from_measure(self.measure.clone())?)
    }
}
