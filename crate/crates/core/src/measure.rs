//! Abstract measures and probability measures on finite measurable spaces.
//!
//! A measure stores one weight per atom of its σ-algebra; the measure of an
//! event is the ⊕-fold of the weights of the atoms it contains. Additivity
//! over disjoint events then holds by construction, and the empty event gets
//! the empty fold, `zero`.

use std::ops::Deref;

use crate::algebra::{fold_add, Structure};
use crate::error::{Error, Result};
use crate::space::{Event, SampleSpace, SigmaAlgebra};

#[derive(Clone, Debug)]
pub struct Measure<S: Structure> {
    structure: S,
    algebra: SigmaAlgebra,
    weights: Vec<S::Value>,
}

impl<S: Structure> Measure<S> {
    /// Validates non-negativity of every atom weight.
    pub fn new(structure: S, algebra: SigmaAlgebra, weights: Vec<S::Value>) -> Result<Self> {
        if weights.len() != algebra.atom_count() {
            return Err(Error::WeightCount {
                expected: algebra.atom_count(),
                got: weights.len(),
            });
        }
        let zero = structure.zero();
        for (k, w) in weights.iter().enumerate() {
            if !structure.geq(w, &zero) {
                return Err(Error::NegativeWeight {
                    atom: algebra.atoms()[k].to_string(),
                    value: structure.render(w),
                });
            }
        }
        Ok(Measure {
            structure,
            algebra,
            weights,
        })
    }

    pub fn structure(&self) -> &S {
        &self.structure
    }

    pub fn algebra(&self) -> &SigmaAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &SampleSpace {
        self.algebra.space()
    }

    pub fn atom_weights(&self) -> &[S::Value] {
        &self.weights
    }

    pub fn atom_weight(&self, atom: usize) -> &S::Value {
        &self.weights[atom]
    }

    /// μ(A) for a measurable event.
    pub fn measure(&self, event: &Event) -> Result<S::Value> {
        let atoms = self.algebra.atoms_in(event)?;
        Ok(fold_add(
            &self.structure,
            atoms.iter().map(|&k| &self.weights[k]),
        ))
    }

    pub fn total(&self) -> S::Value {
        fold_add(&self.structure, &self.weights)
    }
}

/// A measure whose total mass is `one`.
#[derive(Clone, Debug)]
pub struct ProbabilityMeasure<S: Structure>(Measure<S>);

impl<S: Structure> ProbabilityMeasure<S> {
    /// Validates non-negativity and normalization under the structure's
    /// equality.
    pub fn new(structure: S, algebra: SigmaAlgebra, weights: Vec<S::Value>) -> Result<Self> {
        Self::from_measure(Measure::new(structure, algebra, weights)?)
    }

    pub fn from_measure(measure: Measure<S>) -> Result<Self> {
        let s = &measure.structure;
        let total = measure.total();
        if !s.equal(&total, &s.one()) {
            return Err(Error::NotNormalized {
                total: s.render(&total),
            });
        }
        Ok(ProbabilityMeasure(measure))
    }

    pub fn as_measure(&self) -> &Measure<S> {
        &self.0
    }

    pub fn into_measure(self) -> Measure<S> {
        self.0
    }

    pub fn prob(&self, event: &Event) -> Result<S::Value> {
        self.0.measure(event)
    }

    /// Whether `P(A ∩ B) = P(A) ⊗ P(B)`. Only defined for events that
    /// intersect; disjoint pairs give [`Error::EmptyIntersection`].
    pub fn is_independent(&self, a: &Event, b: &Event) -> Result<bool> {
        let ab = a.intersection(b)?;
        if ab.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let s = self.structure();
        let joint = self.prob(&ab)?;
        let product = s.mul(&self.prob(a)?, &self.prob(b)?);
        Ok(s.equal(&joint, &product))
    }
}

impl<S: Structure> Deref for ProbabilityMeasure<S> {
    type Target = Measure<S>;

    fn deref(&self) -> &Measure<S> {
        &self.0
    }
}

pub fn make_measure<S: Structure>(
    structure: S,
    algebra: SigmaAlgebra,
    weights: Vec<S::Value>,
) -> Result<Measure<S>> {
    Measure::new(structure, algebra, weights)
}

pub fn make_probability<S: Structure>(
    structure: S,
    algebra: SigmaAlgebra,
    weights: Vec<S::Value>,
) -> Result<ProbabilityMeasure<S>> {
    ProbabilityMeasure::new(structure, algebra, weights)
}
