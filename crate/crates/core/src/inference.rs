//! Conditioning, Bayes' rule, total probability and the subtractive
//! identities for complements, differences and unions.
//!
//! On structures whose ⊗ has inverses the conditional `P(A | B)` is the
//! unique solution `P(A ∩ B) ⊘ P(B)`. Otherwise, when the structure offers
//! residuation, it is the ⪰-greatest `x` with `x ⊗ P(B) ⪯ P(A ∩ B)`, reported
//! together with whether that `x` actually solves `x ⊗ P(B) = P(A ∩ B)`.

use crate::algebra::{div, fold_add, sub, Structure};
use crate::error::{Error, Result};
use crate::measure::ProbabilityMeasure;
use crate::space::Event;

#[derive(Clone, Debug, PartialEq)]
pub enum ConditioningResult<V> {
    /// The unique solution, via ⊗-division.
    Unique(V),
    /// The greatest residual; `verified` says whether it solves the
    /// conditioning equation exactly.
    Residuated {
        value: V,
        verified: bool,
    },
    Unconditionable(String),
}

impl<V> ConditioningResult<V> {
    /// The conditional value when it satisfies `x ⊗ P(B) = P(A ∩ B)`.
    pub fn resolved(&self) -> Option<&V> {
        match self {
            ConditioningResult::Unique(v) => Some(v),
            ConditioningResult::Residuated {
                value,
                verified: true,
            } => Some(value),
            _ => None,
        }
    }

    /// The computed value, verified or not.
    pub fn value(&self) -> Option<&V> {
        match self {
            ConditioningResult::Unique(v) | ConditioningResult::Residuated { value: v, .. } => {
                Some(v)
            }
            ConditioningResult::Unconditionable(_) => None,
        }
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> ConditioningResult<W> {
        match self {
            ConditioningResult::Unique(v) => ConditioningResult::Unique(f(v)),
            ConditioningResult::Residuated { value, verified } => ConditioningResult::Residuated {
                value: f(value),
                verified,
            },
            ConditioningResult::Unconditionable(r) => ConditioningResult::Unconditionable(r),
        }
    }
}

/// Solves `x ⊗ given = joint` for `x`.
pub fn condition_values<S: Structure>(
    s: &S,
    joint: &S::Value,
    given: &S::Value,
) -> Result<ConditioningResult<S::Value>> {
    let caps = s.capabilities();
    if caps.multiplicative_group {
        if s.is_zero(given) {
            return Err(Error::ZeroCondition);
        }
        return Ok(ConditioningResult::Unique(div(s, joint, given)?));
    }
    if caps.residuation {
        if let Some(x) = s.residuate(joint, given) {
            let verified = s.equal(&s.mul(&x, given), joint);
            return Ok(ConditioningResult::Residuated { value: x, verified });
        }
    }
    Ok(ConditioningResult::Unconditionable(format!(
        "structure `{}` has neither multiplicative inverses nor residuation",
        s.name()
    )))
}

/// `P(A | B)`, defined for events with a non-empty intersection.
pub fn conditional<S: Structure>(
    p: &ProbabilityMeasure<S>,
    a: &Event,
    b: &Event,
) -> Result<ConditioningResult<S::Value>> {
    let ab = a.intersection(b)?;
    p.prob(a)?;
    if ab.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let joint = p.prob(&ab)?;
    let given = p.prob(b)?;
    condition_values(p.structure(), &joint, &given)
}

/// `P(B | A)` by Bayes' rule.
///
/// With ⊗-inverses this is `(P(A | B) ⊗ P(B)) ⊘ P(A)`. Otherwise `P(B | A)` is
/// conditioned directly, and the result counts as verified only when both
/// conditionals resolve and `P(B | A) ⊗ P(A) = P(A | B) ⊗ P(B)`.
pub fn bayes<S: Structure>(
    p: &ProbabilityMeasure<S>,
    a: &Event,
    b: &Event,
) -> Result<ConditioningResult<S::Value>> {
    let s = p.structure();
    if a.intersection(b)?.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let pa = p.prob(a)?;
    let pb = p.prob(b)?;
    if s.capabilities().multiplicative_group {
        if s.is_zero(&pa) {
            return Err(Error::ZeroCondition);
        }
        let a_given_b = match conditional(p, a, b)? {
            ConditioningResult::Unique(v) => v,
            other => unreachable!("group conditioning is unique, got {other:?}"),
        };
        let value = div(s, &s.mul(&a_given_b, &pb), &pa)?;
        return Ok(ConditioningResult::Unique(value));
    }
    let b_given_a = conditional(p, b, a)?;
    let a_given_b = conditional(p, a, b)?;
    Ok(match (b_given_a, a_given_b.resolved()) {
        (ConditioningResult::Residuated { value, verified }, Some(y)) => {
            let symmetric = s.equal(&s.mul(&value, &pa), &s.mul(y, &pb));
            ConditioningResult::Residuated {
                verified: verified && symmetric,
                value,
            }
        }
        (ConditioningResult::Residuated { value, .. }, None) => ConditioningResult::Residuated {
            value,
            verified: false,
        },
        (other, _) => other,
    })
}

/// Checks that `cells` are measurable, pairwise disjoint and cover the space.
fn check_partition<S: Structure>(p: &ProbabilityMeasure<S>, cells: &[Event]) -> Result<()> {
    if cells.is_empty() {
        return Err(Error::NotAPartition("no cells".into()));
    }
    let mut covered = p.space().empty_event();
    for (i, h) in cells.iter().enumerate() {
        if !p.algebra().is_measurable(h) {
            return Err(Error::NotAPartition(format!(
                "cell {i} {h} is not measurable"
            )));
        }
        if !covered.is_disjoint(h)? {
            return Err(Error::NotAPartition(format!(
                "cell {i} {h} overlaps an earlier cell"
            )));
        }
        covered = covered.union(h)?;
    }
    if !covered.is_full() {
        let missing = covered.complement();
        return Err(Error::NotAPartition(format!("cells miss {missing}")));
    }
    Ok(())
}

/// `⊕ᵢ P(Hᵢ) ⊗ P(A | Hᵢ)` over a partition `H`.
///
/// A cell disjoint from `A` contributes `P(A ∩ Hᵢ) = zero`. A cell of zero
/// probability contributes zero as well, since every `x` solves
/// `x ⊗ zero = zero`.
pub fn total_probability<S: Structure>(
    p: &ProbabilityMeasure<S>,
    a: &Event,
    cells: &[Event],
) -> Result<S::Value> {
    let s = p.structure();
    p.prob(a)?;
    check_partition(p, cells)?;
    let mut terms = Vec::with_capacity(cells.len());
    for (i, h) in cells.iter().enumerate() {
        let ah = a.intersection(h)?;
        if ah.is_empty() {
            terms.push(p.prob(&ah)?);
            continue;
        }
        let ph = p.prob(h)?;
        if s.is_zero(&ph) {
            terms.push(s.mul(&ph, &s.one()));
            continue;
        }
        let cond = conditional(p, a, h)?;
        match cond.resolved() {
            Some(x) => terms.push(s.mul(&ph, x)),
            None => {
                let reason = match &cond {
                    ConditioningResult::Unconditionable(r) => r.clone(),
                    _ => "residual does not solve the conditioning equation".to_string(),
                };
                return Err(Error::UnresolvableTerm { cell: i, reason });
            }
        }
    }
    Ok(fold_add(s, &terms))
}

/// `one ⊖ P(A)`
pub fn complement_prob<S: Structure>(p: &ProbabilityMeasure<S>, a: &Event) -> Result<S::Value> {
    let s = p.structure();
    sub(s, &s.one(), &p.prob(a)?)
}

/// `P(A) ⊕ P(B) ⊖ P(A ∩ B)`
pub fn union_prob<S: Structure>(
    p: &ProbabilityMeasure<S>,
    a: &Event,
    b: &Event,
) -> Result<S::Value> {
    let s = p.structure();
    let ab = a.intersection(b)?;
    let sum = s.add(&p.prob(a)?, &p.prob(b)?);
    sub(s, &sum, &p.prob(&ab)?)
}

/// `P(B) ⊖ P(A)` for `A ⊆ B`, which equals `P(B ∖ A)`.
pub fn difference_prob<S: Structure>(
    p: &ProbabilityMeasure<S>,
    b: &Event,
    a: &Event,
) -> Result<S::Value> {
    let s = p.structure();
    sub(s, &p.prob(b)?, &p.prob(a)?)
}
