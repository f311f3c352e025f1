//! Carrier-valued random variables and their distributions.
//!
//! A random variable is stored as one value per atom of its σ-algebra, which
//! is exactly the measurable functions on a finite space. Value sets live in
//! the power set of the variable's (finite) range.

use crate::algebra::Structure;
use crate::error::{Error, Result};
use crate::inference::{condition_values, conditional, ConditioningResult};
use crate::measure::{make_probability, ProbabilityMeasure};
use crate::space::{Event, SampleSpace, SigmaAlgebra};

#[derive(Clone, Debug)]
pub struct RandomVariable<V> {
    algebra: SigmaAlgebra,
    values: Vec<V>,
}

impl<V: Clone> RandomVariable<V> {
    /// One value per atom.
    pub fn new(algebra: SigmaAlgebra, values: Vec<V>) -> Result<Self> {
        if values.len() != algebra.atom_count() {
            return Err(Error::ValueCount {
                expected: algebra.atom_count(),
                got: values.len(),
            });
        }
        Ok(RandomVariable { algebra, values })
    }

    pub fn constant(algebra: SigmaAlgebra, value: V) -> Self {
        let values = vec![value; algebra.atom_count()];
        RandomVariable { algebra, values }
    }

    /// Builds from one value per outcome; fails unless the table is constant
    /// on every atom.
    pub fn from_outcomes<S>(s: &S, algebra: SigmaAlgebra, outcome_values: &[V]) -> Result<Self>
    where
        S: Structure<Value = V>,
    {
        let space = algebra.space();
        if outcome_values.len() != space.len() {
            return Err(Error::ValueCount {
                expected: space.len(),
                got: outcome_values.len(),
            });
        }
        let mut values = Vec::with_capacity(algebra.atom_count());
        for atom in algebra.atoms() {
            let mut members = atom.indices();
            let first = &outcome_values[members.next().expect("atoms are non-empty")];
            if members.any(|w| !s.equal(&outcome_values[w], first)) {
                return Err(Error::NotMeasurable(format!(
                    "function is not constant on atom {atom}"
                )));
            }
            values.push(first.clone());
        }
        Ok(RandomVariable { algebra, values })
    }

    pub fn algebra(&self) -> &SigmaAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &SampleSpace {
        self.algebra.space()
    }

    pub fn atom_values(&self) -> &[V] {
        &self.values
    }

    pub fn value_at(&self, outcome: usize) -> &V {
        &self.values[self.algebra.atom_of(outcome)]
    }

    /// Per-outcome values.
    pub fn outcome_values(&self) -> Vec<V> {
        (0..self.space().len())
            .map(|w| self.value_at(w).clone())
            .collect()
    }

    pub fn map<W: Clone>(&self, f: impl FnMut(&V) -> W) -> RandomVariable<W> {
        RandomVariable {
            algebra: self.algebra.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Re-expresses the variable on another algebra over the same space.
    /// Fails when it is not constant on some target atom.
    pub fn on_algebra<S>(&self, s: &S, target: &SigmaAlgebra) -> Result<Self>
    where
        S: Structure<Value = V>,
    {
        if !target.space().same_as(self.space()) {
            return Err(Error::SpaceMismatch);
        }
        Self::from_outcomes(s, target.clone(), &self.outcome_values())
    }

    /// The distinct values taken.
    pub fn range<S>(&self, s: &S) -> ValueSet<V>
    where
        S: Structure<Value = V>,
    {
        ValueSet::new(s, self.values.iter().cloned())
    }

    /// `{ω : X(ω) ∈ A}`
    pub fn preimage<S>(&self, s: &S, set: &ValueSet<V>) -> Event
    where
        S: Structure<Value = V>,
    {
        self.algebra.event_from_atoms(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| set.contains(s, v))
                .map(|(k, _)| k),
        )
    }
}

/// A finite set of carrier values, distinct under the structure's equality.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueSet<V> {
    values: Vec<V>,
}

impl<V: Clone> ValueSet<V> {
    pub fn new<S, I>(s: &S, values: I) -> Self
    where
        S: Structure<Value = V>,
        I: IntoIterator<Item = V>,
    {
        let mut out: Vec<V> = vec![];
        for v in values {
            if !out.iter().any(|u| s.equal(u, &v)) {
                out.push(v);
            }
        }
        ValueSet { values: out }
    }

    pub fn empty() -> Self {
        ValueSet { values: vec![] }
    }

    pub fn contains<S>(&self, s: &S, v: &V) -> bool
    where
        S: Structure<Value = V>,
    {
        self.values.iter().any(|u| s.equal(u, v))
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_space<S: Structure, V: Clone>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<V>,
) -> Result<()> {
    if p.space().same_as(x.space()) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// `P(X ∈ A)`
pub fn pushforward<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
    set: &ValueSet<S::Value>,
) -> Result<S::Value> {
    check_space(p, x)?;
    p.prob(&x.preimage(p.structure(), set))
}

/// `P({X ∈ A} ∩ {Y ∈ B})`
pub fn joint<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
    y: &RandomVariable<S::Value>,
    a: &ValueSet<S::Value>,
    b: &ValueSet<S::Value>,
) -> Result<S::Value> {
    check_space(p, x)?;
    check_space(p, y)?;
    let s = p.structure();
    p.prob(&x.preimage(s, a).intersection(&y.preimage(s, b))?)
}

/// Whether `P({X ∈ A} ∩ {Y ∈ B}) = P(X ∈ A) ⊗ P(Y ∈ B)`; only defined when
/// the two events intersect.
pub fn rv_independent<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
    y: &RandomVariable<S::Value>,
    a: &ValueSet<S::Value>,
    b: &ValueSet<S::Value>,
) -> Result<bool> {
    check_space(p, x)?;
    check_space(p, y)?;
    let s = p.structure();
    p.is_independent(&x.preimage(s, a), &y.preimage(s, b))
}

/// `P(X ∈ A | Y ∈ B)`: conditions the event `{X ∈ A}` on `{Y ∈ B}`.
pub fn conditional_distribution<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
    a: &ValueSet<S::Value>,
    y: &RandomVariable<S::Value>,
    b: &ValueSet<S::Value>,
) -> Result<ConditioningResult<S::Value>> {
    check_space(p, x)?;
    check_space(p, y)?;
    let s = p.structure();
    conditional(p, &x.preimage(s, a), &y.preimage(s, b))
}

/// The alternative reading that solves `joint = P(X ∈ A) ⊗ x`, i.e. divides
/// the joint by the `X`-marginal rather than by `P(Y ∈ B)`. It agrees with
/// [`conditional_distribution`] only when `P(X ∈ A) = P(Y ∈ B)`.
pub fn conditional_distribution_by_marginal<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
    a: &ValueSet<S::Value>,
    y: &RandomVariable<S::Value>,
    b: &ValueSet<S::Value>,
) -> Result<ConditioningResult<S::Value>> {
    check_space(p, x)?;
    check_space(p, y)?;
    let s = p.structure();
    let xa = x.preimage(s, a);
    let yb = y.preimage(s, b);
    if xa.intersection(&yb)?.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let j = joint(p, x, y, a, b)?;
    condition_values(s, &j, &p.prob(&xa)?)
}

/// The distribution of `X` as a probability measure on its range, one
/// outcome per distinct value (labelled by the rendered value).
pub fn induced_distribution<S: Structure>(
    p: &ProbabilityMeasure<S>,
    x: &RandomVariable<S::Value>,
) -> Result<(ValueSet<S::Value>, ProbabilityMeasure<S>)> {
    check_space(p, x)?;
    let s = p.structure();
    let range = x.range(s);
    let labels: Vec<String> = range
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{i}:{}", s.render(v)))
        .collect();
    let space = SampleSpace::new(labels)?;
    let weights = range
        .values()
        .iter()
        .map(|v| pushforward(p, x, &ValueSet::new(s, [v.clone()])))
        .collect::<Result<Vec<_>>>()?;
    let measure = make_probability(s.clone(), SigmaAlgebra::power_set(&space), weights)?;
    Ok((range, measure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Possibility, Viterbi};
    use crate::{testkit, ClassicalRational};
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn set(vals: &[BigRational]) -> ValueSet<BigRational> {
        ValueSet::new(&ClassicalRational::new(), vals.iter().cloned())
    }

    /// Two fair-ish bits with product weights P(b1) = 1/3, P(b2) = 1/4.
    fn two_bits() -> (
        ProbabilityMeasure<ClassicalRational>,
        RandomVariable<BigRational>,
        RandomVariable<BigRational>,
    ) {
        let s = ClassicalRational::new();
        let space = SampleSpace::new(["00", "01", "10", "11"]).unwrap();
        let f = SigmaAlgebra::power_set(&space);
        let (p1, p2) = (q(1, 3), q(1, 4));
        let one = q(1, 1);
        let w = |b1: bool, b2: bool| {
            let a = if b1 { p1.clone() } else { &one - &p1 };
            let b = if b2 { p2.clone() } else { &one - &p2 };
            a * b
        };
        let weights = vec![
            w(false, false),
            w(false, true),
            w(true, false),
            w(true, true),
        ];
        let p = make_probability(s.clone(), f.clone(), weights).unwrap();
        let bit = |i: usize| {
            let vals: Vec<BigRational> = space
                .labels()
                .iter()
                .map(|l| q((l.as_bytes()[i] - b'0') as i64, 1))
                .collect();
            RandomVariable::from_outcomes(&s, f.clone(), &vals).unwrap()
        };
        (p, bit(0), bit(1))
    }

    #[test]
    fn pushforward_examples() {
        let s = ClassicalRational::new();
        let space = SampleSpace::new(["x", "y"]).unwrap();
        let f = SigmaAlgebra::power_set(&space);
        let p = make_probability(s.clone(), f.clone(), vec![q(1, 4), q(3, 4)]).unwrap();
        let x = RandomVariable::new(f, vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(pushforward(&p, &x, &set(&[q(1, 1)])).unwrap(), q(3, 4));
        assert_eq!(pushforward(&p, &x, &x.range(&s)).unwrap(), q(1, 1));
        assert_eq!(pushforward(&p, &x, &ValueSet::empty()).unwrap(), q(0, 1));
    }

    #[test]
    fn joint_examples() {
        let s = ClassicalRational::new();
        let (p, x, y) = two_bits();
        let one = set(&[q(1, 1)]);
        let zero = set(&[q(0, 1)]);
        assert_eq!(
            joint(&p, &x, &y, &one, &y.range(&s)).unwrap(),
            pushforward(&p, &x, &one).unwrap()
        );
        assert_eq!(joint(&p, &x, &x, &one, &zero).unwrap(), q(0, 1));
        // Brute-force joint over outcomes vs product of marginals.
        for a in [&zero, &one] {
            for b in [&zero, &one] {
                let brute: BigRational = (0..4)
                    .filter(|&w| a.contains(&s, x.value_at(w)) && b.contains(&s, y.value_at(w)))
                    .map(|w| p.atom_weight(w).clone())
                    .sum();
                let j = joint(&p, &x, &y, a, b).unwrap();
                assert_eq!(j, brute);
                assert_eq!(
                    j,
                    pushforward(&p, &x, a).unwrap() * pushforward(&p, &y, b).unwrap()
                );
                assert!(rv_independent(&p, &x, &y, a, b).unwrap());
            }
        }
    }

    #[test]
    fn independence_edges() {
        let s = ClassicalRational::new();
        let (p, x, y) = two_bits();
        assert!(rv_independent(&p, &x, &y, &x.range(&s), &set(&[q(1, 1)])).unwrap());
        assert_eq!(
            rv_independent(&p, &x, &x, &set(&[q(0, 1)]), &set(&[q(1, 1)])),
            Err(Error::EmptyIntersection)
        );
    }

    #[test]
    fn conditional_distribution_examples() {
        let (p, x, y) = two_bits();
        let one = set(&[q(1, 1)]);
        let c = RandomVariable::constant(p.algebra().clone(), q(1, 2));
        let r = conditional_distribution(&p, &x, &one, &c, &set(&[q(1, 2)])).unwrap();
        assert_eq!(
            r,
            ConditioningResult::Unique(pushforward(&p, &x, &one).unwrap())
        );
        let r = conditional_distribution(&p, &x, &one, &y, &one).unwrap();
        assert_eq!(r, ConditioningResult::Unique(q(1, 3)));
        let r = conditional_distribution(&p, &x, &one, &x, &one).unwrap();
        assert_eq!(r, ConditioningResult::Unique(q(1, 1)));
        // Dividing by the X-marginal instead gives P(Y=1) here.
        let lit = conditional_distribution_by_marginal(&p, &x, &one, &y, &one).unwrap();
        assert_eq!(lit, ConditioningResult::Unique(q(1, 4)));
    }

    #[test]
    fn measurability_of_variables() {
        let s = ClassicalRational::new();
        let space = SampleSpace::indexed(3).unwrap();
        let f = SigmaAlgebra::generate(&space, &[space.singleton(0).unwrap()]).unwrap();
        let ok = RandomVariable::from_outcomes(&s, f.clone(), &[q(1, 1), q(2, 1), q(2, 1)]);
        assert_eq!(ok.unwrap().atom_values(), &[q(1, 1), q(2, 1)]);
        let bad = RandomVariable::from_outcomes(&s, f.clone(), &[q(1, 1), q(2, 1), q(3, 1)]);
        assert!(matches!(bad, Err(Error::NotMeasurable(_))));
        assert!(matches!(
            RandomVariable::new(f, vec![q(1, 1)]),
            Err(Error::ValueCount { .. })
        ));
    }

    fn distribution_laws<S: Structure>(s: S, seed: u64) -> std::result::Result<(), TestCaseError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = testkit::random_probability(&s, &mut rng, 8);
        let grid: Vec<S::Value> = (0..3).map(|_| s.sample(&mut rng)).collect();
        let x = testkit::random_grid_variable(p.algebra(), &grid, &mut rng);
        let y = testkit::random_grid_variable(p.algebra(), &grid, &mut rng);

        let (range, induced) = induced_distribution(&p, &x).unwrap();
        prop_assert!(s.equal(&induced.total(), &s.one()));

        let pick = |rng: &mut ChaCha8Rng, r: &ValueSet<S::Value>| {
            ValueSet::new(&s, r.values().iter().filter(|_| rng.gen_bool(0.5)).cloned())
        };
        for _ in 0..6 {
            let a = pick(&mut rng, &range);
            let a2 = pick(&mut rng, &range);
            let b = pick(&mut rng, &y.range(&s));
            // additivity over disjoint value sets
            let a2_only = ValueSet::new(
                &s,
                a2.values().iter().filter(|v| !a.contains(&s, v)).cloned(),
            );
            let both = ValueSet::new(&s, a.values().iter().chain(a2_only.values()).cloned());
            let lhs = pushforward(&p, &x, &both).unwrap();
            let rhs = s.add(
                &pushforward(&p, &x, &a).unwrap(),
                &pushforward(&p, &x, &a2_only).unwrap(),
            );
            prop_assert!(s.equal(&lhs, &rhs));

            let j = joint(&p, &x, &y, &a, &y.range(&s)).unwrap();
            prop_assert!(s.equal(&j, &pushforward(&p, &x, &a).unwrap()));
            let j = joint(&p, &x, &y, &range, &b).unwrap();
            prop_assert!(s.equal(&j, &pushforward(&p, &y, &b).unwrap()));

            match conditional_distribution(&p, &x, &a, &y, &b) {
                Ok(r) => {
                    if let Some(c) = r.resolved() {
                        let j = joint(&p, &x, &y, &a, &b).unwrap();
                        let pb = pushforward(&p, &y, &b).unwrap();
                        prop_assert!(s.equal(&j, &s.mul(&pb, c)));
                    }
                }
                Err(Error::EmptyIntersection) | Err(Error::ZeroCondition) => {}
                Err(e) => panic!("{e}"),
            }
        }
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn classical_distribution_laws(seed in any::<u64>()) {
            distribution_laws(ClassicalRational::new(), seed)?;
        }

        #[test]
        fn possibility_distribution_laws(seed in any::<u64>()) {
            distribution_laws(Possibility::<f64>::new(), seed)?;
        }

        #[test]
        fn viterbi_distribution_laws(seed in any::<u64>()) {
            distribution_laws(Viterbi::<f64>::new(), seed)?;
        }
    }
}
