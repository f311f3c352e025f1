//! The abstract Lebesgue integral: indicators, simple functions,
//! non-negative and signed measurable functions, and the expected value.
//!
//! Functions on a finite space are atom-constant, so the supremum over
//! dominated simple functions is attained by the function's own atom-level
//! simple form; integration always goes through that canonical form.

use crate::algebra::{fold_add, negate, sub, Structure};
use crate::error::{Error, Result};
use crate::measure::{Measure, ProbabilityMeasure};
use crate::randvar::RandomVariable;
use crate::space::{Event, SigmaAlgebra};

/// `⊕ᵢ aᵢ ⊗ χ_{Aᵢ}` with pairwise disjoint measurable `Aᵢ`.
#[derive(Clone, Debug)]
pub struct SimpleFunction<V> {
    terms: Vec<(V, Event)>,
}

impl<V: Clone> SimpleFunction<V> {
    /// Disjointness is checked when the function is integrated.
    pub fn new(terms: Vec<(V, Event)>) -> Self {
        SimpleFunction { terms }
    }

    pub fn terms(&self) -> &[(V, Event)] {
        &self.terms
    }

    /// Value at an outcome.
    pub fn eval<S: Structure<Value = V>>(&self, s: &S, outcome: usize) -> V {
        let (zero, one) = (s.zero(), s.one());
        let parts: Vec<V> = self
            .terms
            .iter()
            .map(|(a, e)| s.mul(a, if e.contains(outcome) { &one } else { &zero }))
            .collect();
        fold_add(s, &parts)
    }

    fn validate(&self, algebra: &SigmaAlgebra) -> Result<()> {
        for (i, (_, e)) in self.terms.iter().enumerate() {
            if !algebra.is_measurable(e) {
                return Err(if e.space().same_as(algebra.space()) {
                    Error::NotMeasurable(e.to_string())
                } else {
                    Error::SpaceMismatch
                });
            }
            for (j, (_, other)) in self.terms.iter().enumerate().skip(i + 1) {
                if !e.is_disjoint(other)? {
                    return Err(Error::OverlappingTerms(i, j));
                }
            }
        }
        Ok(())
    }

    /// The atom-level form on `algebra`: one value per atom.
    pub fn canonical<S: Structure<Value = V>>(
        &self,
        s: &S,
        algebra: &SigmaAlgebra,
    ) -> Result<RandomVariable<V>> {
        self.validate(algebra)?;
        let values = algebra
            .atoms()
            .iter()
            .map(|atom| {
                let w = atom.indices().next().expect("atoms are non-empty");
                self.eval(s, w)
            })
            .collect();
        RandomVariable::new(algebra.clone(), values)
    }
}

/// `χ_A`
pub fn indicator<S: Structure>(s: &S, event: &Event) -> SimpleFunction<S::Value> {
    SimpleFunction::new(vec![(s.one(), event.clone())])
}

/// Integral of a simple function, computed on its canonical atom form.
pub fn integrate_simple<S: Structure>(
    mu: &Measure<S>,
    f: &SimpleFunction<S::Value>,
) -> Result<S::Value> {
    let s = mu.structure();
    let canonical = f.canonical(s, mu.algebra())?;
    Ok(atom_sum(mu, canonical.atom_values()))
}

/// `⊕ᵢ aᵢ ⊗ μ(Aᵢ)` on the representation as given. Matches
/// [`integrate_simple`] whenever ⊗ distributes over ⊕.
pub fn integrate_simple_as_given<S: Structure>(
    mu: &Measure<S>,
    f: &SimpleFunction<S::Value>,
) -> Result<S::Value> {
    f.validate(mu.algebra())?;
    let s = mu.structure();
    let parts = f
        .terms()
        .iter()
        .map(|(a, e)| Ok(s.mul(a, &mu.measure(e)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(fold_add(s, &parts))
}

fn atom_sum<S: Structure>(mu: &Measure<S>, values: &[S::Value]) -> S::Value {
    let s = mu.structure();
    let parts: Vec<S::Value> = values
        .iter()
        .zip(mu.atom_weights())
        .map(|(v, w)| s.mul(v, w))
        .collect();
    fold_add(s, &parts)
}

fn aligned<S: Structure>(
    mu: &Measure<S>,
    f: &RandomVariable<S::Value>,
) -> Result<RandomVariable<S::Value>> {
    if f.algebra() == mu.algebra() && f.algebra().atoms() == mu.algebra().atoms() {
        Ok(f.clone())
    } else {
        f.on_algebra(mu.structure(), mu.algebra())
    }
}

/// Integral of a function with every value ⪰ zero.
pub fn integrate_nonneg<S: Structure>(
    mu: &Measure<S>,
    f: &RandomVariable<S::Value>,
) -> Result<S::Value> {
    let s = mu.structure();
    let f = aligned(mu, f)?;
    let zero = s.zero();
    for (k, v) in f.atom_values().iter().enumerate() {
        if !s.geq(v, &zero) {
            return Err(Error::NegativeValue {
                atom: mu.algebra().atoms()[k].to_string(),
                value: s.render(v),
            });
        }
    }
    Ok(atom_sum(mu, f.atom_values()))
}

/// `f = f⊕ ⊖ f⊖` with both parts non-negative.
#[derive(Clone, Debug)]
pub struct SignedParts<V> {
    pub positive: RandomVariable<V>,
    pub negative: RandomVariable<V>,
}

pub fn signed_parts<S: Structure>(
    s: &S,
    f: &RandomVariable<S::Value>,
) -> Result<SignedParts<S::Value>> {
    let zero = s.zero();
    let mut pos = Vec::with_capacity(f.atom_values().len());
    let mut neg = Vec::with_capacity(f.atom_values().len());
    for v in f.atom_values() {
        if s.geq(v, &zero) {
            pos.push(v.clone());
            neg.push(zero.clone());
        } else {
            pos.push(zero.clone());
            neg.push(negate(s, v)?);
        }
    }
    // A structure without inverses still fails when f is non-negative.
    if !s.capabilities().additive_group {
        negate(s, &zero)?;
    }
    Ok(SignedParts {
        positive: RandomVariable::new(f.algebra().clone(), pos)?,
        negative: RandomVariable::new(f.algebra().clone(), neg)?,
    })
}

/// `∫ f⊕ dμ ⊖ ∫ f⊖ dμ`
pub fn integrate_signed<S: Structure>(
    mu: &Measure<S>,
    f: &RandomVariable<S::Value>,
) -> Result<S::Value> {
    let s = mu.structure();
    let parts = signed_parts(s, f)?;
    let pos = integrate_nonneg(mu, &parts.positive)?;
    let neg = integrate_nonneg(mu, &parts.negative)?;
    sub(s, &pos, &neg)
}

/// Non-negative functions integrate directly; anything else needs an
/// additive group.
pub fn integrate<S: Structure>(mu: &Measure<S>, f: &RandomVariable<S::Value>) -> Result<S::Value> {
    let s = mu.structure();
    let zero = s.zero();
    if f.atom_values().iter().all(|v| s.geq(v, &zero)) || !s.capabilities().additive_group {
        integrate_nonneg(mu, f)
    } else {
        integrate_signed(mu, f)
    }
}

/// `∫_A f dμ = ∫ f ⊗ χ_A dμ`, with the product taken atom-wise.
pub fn integrate_over<S: Structure>(
    mu: &Measure<S>,
    f: &RandomVariable<S::Value>,
    event: &Event,
) -> Result<S::Value> {
    let s = mu.structure();
    let inside = mu.algebra().atoms_in(event)?;
    let f = aligned(mu, f)?;
    let (zero, one) = (s.zero(), s.one());
    let values = f
        .atom_values()
        .iter()
        .enumerate()
        .map(|(k, v)| s.mul(v, if inside.contains(&k) { &one } else { &zero }))
        .collect();
    integrate(mu, &RandomVariable::new(mu.algebra().clone(), values)?)
}

/// `E[X] = ∫ X dP`
pub fn expected_value<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
) -> Result<S::Value> {
    integrate(p.as_measure(), x)
}
