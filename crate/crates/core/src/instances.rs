//! Concrete structures: classical `(+, ·)`, possibility `(max, min)`,
//! Viterbi `(max, ·)` and Boolean `(or, and)`, plus the string-id registry.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, RngCore};

use crate::algebra::{Capabilities, Structure};
use crate::scalar::Scalar;

fn tolerant_cmp<T: Scalar>(tol: &T, a: &T, b: &T) -> Ordering {
    if (a.clone() - b.clone()).abs() <= *tol {
        Ordering::Equal
    } else {
        a.partial_cmp(b).unwrap_or(Ordering::Equal)
    }
}

fn max_of<T: Scalar>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn min_of<T: Scalar>(a: &T, b: &T) -> T {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

macro_rules! scalar_structure {
    ($(#[$meta:meta])* $name:ident, $label:expr) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name<T: Scalar> {
            tolerance: T,
        }

        impl<T: Scalar> $name<T> {
            pub fn new() -> Self {
                Self { tolerance: T::default_tolerance() }
            }

            /// Absolute tolerance for equality. Ignored (kept at zero) for
            /// exact scalars.
            pub fn with_tolerance(tolerance: T) -> Self {
                let tolerance = if T::EXACT { T::zero() } else { tolerance.abs() };
                Self { tolerance }
            }

            pub fn tolerance(&self) -> &T {
                &self.tolerance
            }

            pub const ID: &'static str = $label;
        }

        impl<T: Scalar> Default for $name<T> {
            fn default() -> Self {
                Self::new()
            }
        }
    };
}

scalar_structure!(
    /// Ordinary arithmetic on a numeric scalar: the Kolmogorov case.
    Classical,
    "classical"
);
scalar_structure!(
    /// `⊕ = max`, `⊗ = min` on `[0, 1]`: possibility measures.
    Possibility,
    "possibility"
);
scalar_structure!(
    /// `⊕ = max`, `⊗ = ·` on `[0, 1]`: most-probable-path semantics.
    Viterbi,
    "viterbi"
);

impl<T: Scalar> Structure for Classical<T> {
    type Value = T;

    fn name(&self) -> &str {
        if T::EXACT {
            "classical-rational"
        } else {
            "classical-float"
        }
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn compare(&self, a: &T, b: &T) -> Ordering {
        tolerant_cmp(&self.tolerance, a, b)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            additive_group: true,
            multiplicative_group: true,
            distributive: true,
            residuation: false,
        }
    }

    fn neg(&self, a: &T) -> Option<T> {
        Some(-a.clone())
    }

    fn recip(&self, a: &T) -> Option<T> {
        (!a.is_zero()).then(|| T::one() / a.clone())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> T {
        T::sample_unit(rng)
    }

    fn render(&self, v: &T) -> String {
        v.render()
    }

    fn parse(&self, s: &str) -> Option<T> {
        T::parse_literal(s)
    }
}

impl<T: Scalar> Structure for Possibility<T> {
    type Value = T;

    fn name(&self) -> &str {
        "possibility"
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        max_of(a, b)
    }

    fn mul(&self, a: &T, b: &T) -> T {
        min_of(a, b)
    }

    fn compare(&self, a: &T, b: &T) -> Ordering {
        tolerant_cmp(&self.tolerance, a, b)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            additive_group: false,
            multiplicative_group: false,
            distributive: true,
            residuation: true,
        }
    }

    /// Gödel implication: `1` when `b ⪯ a`, otherwise `a`.
    fn residuate(&self, a: &T, b: &T) -> Option<T> {
        Some(if self.compare(b, a) != Ordering::Greater {
            T::one()
        } else {
            a.clone()
        })
    }

    fn sample(&self, rng: &mut dyn RngCore) -> T {
        T::sample_unit(rng)
    }

    fn render(&self, v: &T) -> String {
        v.render()
    }

    fn parse(&self, s: &str) -> Option<T> {
        T::parse_literal(s)
    }
}

impl<T: Scalar> Structure for Viterbi<T> {
    type Value = T;

    fn name(&self) -> &str {
        "viterbi"
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        max_of(a, b)
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn compare(&self, a: &T, b: &T) -> Ordering {
        tolerant_cmp(&self.tolerance, a, b)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            additive_group: false,
            multiplicative_group: true,
            distributive: true,
            residuation: true,
        }
    }

    fn recip(&self, a: &T) -> Option<T> {
        (!a.is_zero()).then(|| T::one() / a.clone())
    }

    /// Goguen implication, capped at one: `min(1, a / b)`, and `1` for `b = 0`.
    fn residuate(&self, a: &T, b: &T) -> Option<T> {
        if b.is_zero() {
            return Some(T::one());
        }
        Some(min_of(&(a.clone() / b.clone()), &T::one()))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> T {
        T::sample_unit(rng)
    }

    fn render(&self, v: &T) -> String {
        v.render()
    }

    fn parse(&self, s: &str) -> Option<T> {
        T::parse_literal(s)
    }
}

/// `({0, 1}, or, and)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Boolean;

impl Structure for Boolean {
    type Value = bool;

    fn name(&self) -> &str {
        "boolean"
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn compare(&self, a: &bool, b: &bool) -> Ordering {
        a.cmp(b)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            additive_group: false,
            multiplicative_group: false,
            distributive: true,
            residuation: true,
        }
    }

    /// Material implication `b → a`.
    fn residuate(&self, a: &bool, b: &bool) -> Option<bool> {
        Some(!*b || *a)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> bool {
        rng.gen()
    }

    fn render(&self, v: &bool) -> String {
        if *v { "1" } else { "0" }.to_string()
    }

    fn parse(&self, s: &str) -> Option<bool> {
        match s.trim() {
            "1" | "true" | "1.0" => Some(true),
            "0" | "false" | "0.0" => Some(false),
            _ => None,
        }
    }
}

/// Registered instance identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceId {
    ClassicalRational,
    ClassicalFloat,
    Possibility,
    Viterbi,
    Boolean,
}

impl InstanceId {
    pub const ALL: [InstanceId; 5] = [
        InstanceId::ClassicalRational,
        InstanceId::ClassicalFloat,
        InstanceId::Possibility,
        InstanceId::Viterbi,
        InstanceId::Boolean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceId::ClassicalRational => "classical-rational",
            InstanceId::ClassicalFloat => "classical-float",
            InstanceId::Possibility => "possibility",
            InstanceId::Viterbi => "viterbi",
            InstanceId::Boolean => "boolean",
        }
    }

    /// Whether the instance carries a floating-point comparison tolerance.
    pub fn is_float(self) -> bool {
        matches!(
            self,
            InstanceId::ClassicalFloat | InstanceId::Possibility | InstanceId::Viterbi
        )
    }

    /// Builds the instance and hands it to `visitor`. `tolerance` overrides
    /// the default for float instances and is ignored otherwise.
    pub fn visit<V: InstanceVisitor>(self, tolerance: Option<f64>, visitor: V) -> V::Output {
        let tol = tolerance.unwrap_or_else(f64::default_tolerance);
        match self {
            InstanceId::ClassicalRational => visitor.visit(Classical::<BigRational>::new()),
            InstanceId::ClassicalFloat => visitor.visit(Classical::<f64>::with_tolerance(tol)),
            InstanceId::Possibility => visitor.visit(Possibility::<f64>::with_tolerance(tol)),
            InstanceId::Viterbi => visitor.visit(Viterbi::<f64>::with_tolerance(tol)),
            InstanceId::Boolean => visitor.visit(Boolean),
        }
    }
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown structure instance `{0}`")]
pub struct UnknownInstance(pub String);

impl FromStr for InstanceId {
    type Err = UnknownInstance;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InstanceId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownInstance(s.to_string()))
    }
}

/// Runs generic code against a registry instance chosen at runtime.
pub trait InstanceVisitor {
    type Output;

    fn visit<S: Structure + 'static>(self, structure: S) -> Self::Output;
}
