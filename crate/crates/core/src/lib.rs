//! Probability measures, conditioning, random variables and integration over
//! ordered algebraic structures.
//!
//! Everything is generic over a [`Structure`]: a carrier with `⊕`, `⊗`, a
//! total order and a capability set. The classical, possibilistic, Viterbi
//! and Boolean instances live in [`instances`]; the aliases below pin their
//! scalar type.
//!
//! ```
//! use genprob::{
//!     conditional, expected_value, BigRational, ClassicalRational, PossibilityF64,
//!     ProbabilityMeasure, RandomVariable, SampleSpace, SigmaAlgebra,
//! };
//!
//! let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
//! let die = SampleSpace::new(["1", "2", "3", "4", "5", "6"]).unwrap();
//! let f = SigmaAlgebra::power_set(&die);
//! let p = ProbabilityMeasure::new(ClassicalRational::new(), f.clone(), vec![q(1, 6); 6]).unwrap();
//!
//! let even = die.event_from_labels(["2", "4", "6"]).unwrap();
//! let two = die.event_from_labels(["2"]).unwrap();
//! assert_eq!(p.prob(&even).unwrap(), q(1, 2));
//! assert_eq!(conditional(&p, &two, &even).unwrap().resolved(), Some(&q(1, 3)));
//!
//! let x = RandomVariable::new(f, (1..=6).map(|i| q(i, 10)).collect()).unwrap();
//! assert_eq!(expected_value(&p, &x).unwrap(), q(7, 20));
//!
//! // The same questions under max/min.
//! let abc = SampleSpace::new(["a", "b", "c"]).unwrap();
//! let g = SigmaAlgebra::power_set(&abc);
//! let pi = ProbabilityMeasure::new(PossibilityF64::new(), g.clone(), vec![1.0, 0.7, 0.3]).unwrap();
//! let x = RandomVariable::new(g, vec![0.2, 0.9, 0.5]).unwrap();
//! assert_eq!(expected_value(&pi, &x).unwrap(), 0.7);
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod inference;
pub mod instances;
pub mod integral;
pub mod measure;
pub mod randvar;
pub mod scalar;
pub mod space;
pub mod testkit;

pub use algebra::{check_laws, Axiom, Capabilities, LawReport, Structure};
pub use error::{Error, Result};
pub use inference::{bayes, conditional, total_probability, ConditioningResult};
pub use instances::{Boolean, Classical, InstanceId, Possibility, Viterbi};
pub use integral::{
    expected_value, indicator, integrate, integrate_nonneg, integrate_over, integrate_signed,
    integrate_simple, SimpleFunction,
};
pub use measure::{Measure, ProbabilityMeasure};
pub use randvar::{joint, pushforward, RandomVariable, ValueSet};
pub use scalar::Scalar;
pub use space::{Event, SampleSpace, SigmaAlgebra};

pub use num_rational::BigRational;

pub type ClassicalRational = Classical<BigRational>;
pub type ClassicalFloat = Classical<f64>;
pub type PossibilityF64 = Possibility<f64>;
pub type ViterbiF64 = Viterbi<f64>;
pub type ViterbiRational = Viterbi<BigRational>;
