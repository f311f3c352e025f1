//! Random finite probability spaces, events, partitions and random variables
//! for property tests and the acceptance suite.

use rand::Rng;

use crate::algebra::{div, fold_add, Structure};
use crate::measure::{make_probability, Measure, ProbabilityMeasure};
use crate::randvar::RandomVariable;
use crate::space::{Event, SampleSpace, SigmaAlgebra};

/// A σ-algebra on `1..=max_outcomes` outcomes, generated by up to three
/// random events.
pub fn random_algebra<R: Rng>(rng: &mut R, max_outcomes: usize) -> SigmaAlgebra {
    let n = rng.gen_range(1..=max_outcomes);
    let space = SampleSpace::indexed(n).expect("non-empty");
    let generators: Vec<Event> = (0..rng.gen_range(0..=3))
        .map(|_| {
            space
                .event_from_indices((0..n).filter(|_| rng.gen_bool(0.5)))
                .expect("in range")
        })
        .collect();
    SigmaAlgebra::generate(&space, &generators).expect("same space")
}

/// Random normalized atom weights. Structures with ⊗-inverses are normalized
/// by dividing through the total; others get one atom raised to `one`.
pub fn random_weights<S: Structure, R: Rng>(s: &S, rng: &mut R, atoms: usize) -> Vec<S::Value> {
    let mut weights: Vec<S::Value> = (0..atoms).map(|_| s.sample(rng)).collect();
    let total = fold_add(s, &weights);
    if s.capabilities().multiplicative_group && !s.is_zero(&total) {
        weights = weights
            .iter()
            .map(|w| div(s, w, &total).expect("non-zero total"))
            .collect();
    } else {
        let k = rng.gen_range(0..atoms);
        weights[k] = s.one();
        if !s.equal(&fold_add(s, &weights), &s.one()) {
            for (i, w) in weights.iter_mut().enumerate() {
                if i != k {
                    *w = s.zero();
                }
            }
        }
    }
    weights
}

pub fn random_probability<S: Structure, R: Rng>(
    s: &S,
    rng: &mut R,
    max_outcomes: usize,
) -> ProbabilityMeasure<S> {
    let algebra = random_algebra(rng, max_outcomes);
    let weights = random_weights(s, rng, algebra.atom_count());
    make_probability(s.clone(), algebra, weights).expect("normalized by construction")
}

/// A uniformly random measurable event.
pub fn random_event<R: Rng>(algebra: &SigmaAlgebra, rng: &mut R) -> Event {
    algebra.event_from_atoms((0..algebra.atom_count()).filter(|_| rng.gen_bool(0.5)))
}

/// A random measurable partition of the space into non-empty cells.
pub fn random_partition<R: Rng>(algebra: &SigmaAlgebra, rng: &mut R) -> Vec<Event> {
    let k = algebra.atom_count();
    let cells = rng.gen_range(1..=k);
    let labels: Vec<usize> = (0..k).map(|_| rng.gen_range(0..cells)).collect();
    (0..cells)
        .map(|c| algebra.event_from_atoms((0..k).filter(|&a| labels[a] == c)))
        .filter(|e| !e.is_empty())
        .collect()
}

/// A random variable with values in `[zero, one]`.
pub fn random_variable<S: Structure, R: Rng>(
    s: &S,
    algebra: &SigmaAlgebra,
    rng: &mut R,
) -> RandomVariable<S::Value> {
    let values = (0..algebra.atom_count()).map(|_| s.sample(rng)).collect();
    RandomVariable::new(algebra.clone(), values).expect("one value per atom")
}

/// Brute-force supremum of `⊕ aᵢ ⊗ μ(Aᵢ)` over every simple function whose
/// cells are unions of atoms and whose coefficients come from `grid` and sit
/// below `f` on their cell. Returns the supremum and the number of simple
/// functions enumerated. Intended for a handful of atoms.
pub fn dominated_supremum<S: Structure>(
    s: &S,
    mu: &Measure<S>,
    f: &RandomVariable<S::Value>,
    grid: &[S::Value],
) -> (S::Value, usize) {
    let k = mu.algebra().atom_count();
    let mut best = s.zero();
    let mut count = 0usize;
    let mut labels = vec![0usize; k];
    loop {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let cells: Vec<Vec<usize>> = (0..blocks)
            .map(|b| (0..k).filter(|&a| labels[a] == b).collect())
            .collect();
        let masses: Vec<S::Value> = cells
            .iter()
            .map(|c| fold_add(s, c.iter().map(|&a| &mu.atom_weights()[a])))
            .collect();
        let allowed: Vec<Vec<&S::Value>> = cells
            .iter()
            .map(|c| {
                grid.iter()
                    .filter(|g| c.iter().all(|&a| s.geq(&f.atom_values()[a], g)))
                    .collect()
            })
            .collect();
        if allowed.iter().all(|a| !a.is_empty()) {
            let mut pick = vec![0usize; blocks];
            loop {
                let parts: Vec<S::Value> = (0..blocks)
                    .map(|b| s.mul(allowed[b][pick[b]], &masses[b]))
                    .collect();
                let v = fold_add(s, &parts);
                if s.gt(&v, &best) {
                    best = v;
                }
                count += 1;
                let mut i = 0;
                while i < blocks {
                    pick[i] += 1;
                    if pick[i] < allowed[i].len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == blocks {
                    break;
                }
            }
        }
        if !next_restricted_growth(&mut labels) {
            break;
        }
    }
    (best, count)
}

/// Advances a restricted growth string; false once every set partition has
/// been produced.
fn next_restricted_growth(labels: &mut [usize]) -> bool {
    for i in (1..labels.len()).rev() {
        let cap = labels[..i].iter().copied().max().unwrap_or(0) + 1;
        if labels[i] < cap {
            labels[i] += 1;
            for l in &mut labels[i + 1..] {
                *l = 0;
            }
            return true;
        }
    }
    false
}

/// A random variable whose values are drawn from a small fixed set, so
/// preimages of value sets are non-trivial.
pub fn random_grid_variable<V: Clone, R: Rng>(
    algebra: &SigmaAlgebra,
    grid: &[V],
    rng: &mut R,
) -> RandomVariable<V> {
    let values = (0..algebra.atom_count())
        .map(|_| grid[rng.gen_range(0..grid.len())].clone())
        .collect();
    RandomVariable::new(algebra.clone(), values).expect("one value per atom")
}
