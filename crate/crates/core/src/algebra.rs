//! Ordered algebraic structures: the ⊕ monoid/group and the ⊗ monoid/group
//! over a totally ordered carrier, the operations derived from them, and a
//! sample-based law checker.

use std::cmp::Ordering;
use std::fmt::{self, Debug};

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Optional structure beyond the two monoids every instance must provide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Capabilities {
    /// ⊕ has inverses (μ-group).
    pub additive_group: bool,
    /// ⊗ has inverses off zero (ν-group).
    pub multiplicative_group: bool,
    /// ⊗ distributes over ⊕.
    pub distributive: bool,
    /// `residuate` is available.
    pub residuation: bool,
}

impl Capabilities {
    pub const MONOIDS: Capabilities = Capabilities {
        additive_group: false,
        multiplicative_group: false,
        distributive: false,
        residuation: false,
    };

    pub const ALL: Capabilities = Capabilities {
        additive_group: true,
        multiplicative_group: true,
        distributive: true,
        residuation: true,
    };
}

impl fmt::Display for Capabilities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flags = vec![];
        if self.additive_group {
            flags.push("additive-group");
        }
        if self.multiplicative_group {
            flags.push("multiplicative-group");
        }
        if self.distributive {
            flags.push("distributive");
        }
        if self.residuation {
            flags.push("residuation");
        }
        if flags.is_empty() {
            f.write_str("monoids")
        } else {
            f.write_str(&flags.join(","))
        }
    }
}

/// A totally ordered carrier with ⊕ (identity `zero`) and ⊗ (identity `one`,
/// annihilator `zero`).
///
/// Implementations must be pure: every method is a function of its
/// arguments, and the descriptor itself is immutable.
pub trait Structure: Clone + Debug + Send + Sync {
    type Value: Clone + Debug + Send + Sync;

    fn name(&self) -> &str;

    fn zero(&self) -> Self::Value;

    fn one(&self) -> Self::Value;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// The total order ⪰, including the structure's equality policy.
    fn compare(&self, a: &Self::Value, b: &Self::Value) -> Ordering;

    fn capabilities(&self) -> Capabilities;

    /// Additive inverse ⊖a.
    fn neg(&self, _a: &Self::Value) -> Option<Self::Value> {
        None
    }

    /// Multiplicative inverse 1 ⊘ a; `None` for zero.
    fn recip(&self, _a: &Self::Value) -> Option<Self::Value> {
        None
    }

    /// Greatest `x` with `x ⊗ b ⪯ a`.
    fn residuate(&self, _a: &Self::Value, _b: &Self::Value) -> Option<Self::Value> {
        None
    }

    /// Random carrier value in `[zero, one]`.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Value;

    fn render(&self, v: &Self::Value) -> String;

    fn parse(&self, s: &str) -> Option<Self::Value>;

    fn equal(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.compare(a, b) == Ordering::Equal
    }

    fn is_zero(&self, a: &Self::Value) -> bool {
        self.equal(a, &self.zero())
    }

    /// `a ⪰ b`
    fn geq(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.compare(a, b) != Ordering::Less
    }

    /// `a ≻ b`
    fn gt(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.compare(a, b) == Ordering::Greater
    }
}

fn missing<S: Structure>(s: &S, capability: &'static str) -> Error {
    Error::CapabilityMissing {
        structure: s.name().to_string(),
        capability,
    }
}

pub fn add<S: Structure>(s: &S, a: &S::Value, b: &S::Value) -> S::Value {
    s.add(a, b)
}

pub fn mul<S: Structure>(s: &S, a: &S::Value, b: &S::Value) -> S::Value {
    s.mul(a, b)
}

/// ⊖a; requires an additive group.
pub fn negate<S: Structure>(s: &S, a: &S::Value) -> Result<S::Value> {
    if !s.capabilities().additive_group {
        return Err(missing(s, "additive-group"));
    }
    s.neg(a).ok_or_else(|| missing(s, "additive-group"))
}

/// `a ⊖ b = a ⊕ (⊖b)`
pub fn sub<S: Structure>(s: &S, a: &S::Value, b: &S::Value) -> Result<S::Value> {
    Ok(s.add(a, &negate(s, b)?))
}

/// `a ⊘ b = a ⊗ (1 ⊘ b)`
pub fn div<S: Structure>(s: &S, a: &S::Value, b: &S::Value) -> Result<S::Value> {
    if !s.capabilities().multiplicative_group {
        return Err(missing(s, "multiplicative-group"));
    }
    if s.is_zero(b) {
        return Err(Error::DivisionByZero);
    }
    let inv = s.recip(b).ok_or(Error::DivisionByZero)?;
    Ok(s.mul(a, &inv))
}

/// ⊕-fold starting at zero. Empty input gives zero.
pub fn fold_add<'a, S, I>(s: &S, xs: I) -> S::Value
where
    S: Structure,
    S::Value: 'a,
    I: IntoIterator<Item = &'a S::Value>,
{
    xs.into_iter().fold(s.zero(), |acc, x| s.add(&acc, x))
}

/// ⊗-fold starting at one.
pub fn fold_mul<'a, S, I>(s: &S, xs: I) -> S::Value
where
    S: Structure,
    S::Value: 'a,
    I: IntoIterator<Item = &'a S::Value>,
{
    xs.into_iter().fold(s.one(), |acc, x| s.mul(&acc, x))
}

/// ⪰-maximum of two values, preferring `a` on ties.
pub fn max_of<S: Structure>(s: &S, a: S::Value, b: S::Value) -> S::Value {
    if s.geq(&a, &b) {
        a
    } else {
        b
    }
}

/// Axiom identifiers checked by [`check_laws`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Mmp1,
    Mmp2,
    Mmp3,
    Mmp4,
    Nmp1,
    Nmp2,
    Nmp3,
    Nmp4,
    Nmp5,
    Mgp1,
    Mgp2,
    Mgp3,
    Mgp4,
    Mgp5,
    Ngp1,
    Ngp2,
    Ngp3,
    Ngp4,
    Ngp5,
    Ngp6,
    /// ⊗ distributes over ⊕ (not part of the monoid/group definitions).
    Dist,
    /// `residuate(a, b)` is the greatest `x` with `x ⊗ b ⪯ a`.
    Res,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        use Axiom::*;
        match self {
            Mmp1 => "MMP1",
            Mmp2 => "MMP2",
            Mmp3 => "MMP3",
            Mmp4 => "MMP4",
            Nmp1 => "NMP1",
            Nmp2 => "NMP2",
            Nmp3 => "NMP3",
            Nmp4 => "NMP4",
            Nmp5 => "NMP5",
            Mgp1 => "MGP1",
            Mgp2 => "MGP2",
            Mgp3 => "MGP3",
            Mgp4 => "MGP4",
            Mgp5 => "MGP5",
            Ngp1 => "NGP1",
            Ngp2 => "NGP2",
            Ngp3 => "NGP3",
            Ngp4 => "NGP4",
            Ngp5 => "NGP5",
            Ngp6 => "NGP6",
            Dist => "DIST",
            Res => "RES",
        }
    }

    pub fn description(self) -> &'static str {
        use Axiom::*;
        match self {
            Mmp1 | Mgp1 => "commutativity of addition",
            Mmp2 | Mgp2 => "associativity of addition",
            Mmp3 | Mgp3 => "additive identity",
            Mmp4 | Mgp5 => "monotonicity of addition",
            Nmp1 | Ngp1 => "commutativity of multiplication",
            Nmp2 | Ngp2 => "associativity of multiplication",
            Nmp3 | Ngp3 => "multiplicative identity",
            Nmp4 => "annihilation biconditional",
            Ngp4 => "annihilating element",
            Nmp5 | Ngp6 => "monotonicity of multiplication",
            Mgp4 => "additive inverse",
            Ngp5 => "multiplicative inverse",
            Dist => "distributivity",
            Res => "residuation",
        }
    }

    /// Axioms implied by a capability set, in report order.
    pub fn for_capabilities(caps: Capabilities) -> Vec<Axiom> {
        use Axiom::*;
        let mut out = vec![Mmp1, Mmp2, Mmp3, Mmp4, Nmp1, Nmp2, Nmp3, Nmp4, Nmp5];
        if caps.additive_group {
            out.extend([Mgp1, Mgp2, Mgp3, Mgp4, Mgp5]);
        }
        if caps.multiplicative_group {
            out.extend([Ngp1, Ngp2, Ngp3, Ngp4, Ngp5, Ngp6]);
        }
        if caps.distributive {
            out.push(Dist);
        }
        if caps.residuation {
            out.push(Res);
        }
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Concrete values witnessing a violated axiom. Their meaning depends on the
/// axiom; [`reproduces`] re-evaluates them.
#[derive(Clone, Debug)]
pub struct Counterexample<V> {
    pub values: Vec<V>,
}

#[derive(Clone, Debug)]
pub struct LawEntry<V> {
    pub axiom: Axiom,
    pub counterexample: Option<Counterexample<V>>,
}

impl<V> LawEntry<V> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct LawReport<V> {
    pub structure: String,
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<LawEntry<V>>,
}

impl<V> LawReport<V> {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(LawEntry::passed)
    }

    pub fn entry(&self, axiom: Axiom) -> Option<&LawEntry<V>> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry<V>> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

pub const DEFAULT_LAW_SAMPLES: usize = 500;

/// Largest candidate pool used when searching for inverses and residuals.
const POOL_LIMIT: usize = 64;

/// Checks every axiom implied by `claimed` on `samples` random triples.
/// Deterministic in `seed`. Failures are reported, never raised.
pub fn check_laws<S: Structure>(
    s: &S,
    claimed: Capabilities,
    samples: usize,
    seed: u64,
) -> LawReport<S::Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[S::Value; 3]> = (0..samples)
        .map(|_| [s.sample(&mut rng), s.sample(&mut rng), s.sample(&mut rng)])
        .collect();

    let mut pool = vec![s.zero(), s.one()];
    for v in triples.iter().flatten() {
        if pool.len() >= POOL_LIMIT {
            break;
        }
        if !pool.iter().any(|p| s.equal(p, v)) {
            pool.push(v.clone());
        }
    }

    let entries = Axiom::for_capabilities(claimed)
        .into_iter()
        .map(|axiom| {
            let counterexample = triples
                .iter()
                .find_map(|[a, b, c]| violation(s, axiom, a, b, c, &pool));
            LawEntry {
                axiom,
                counterexample,
            }
        })
        .collect();

    LawReport {
        structure: s.name().to_string(),
        samples,
        seed,
        entries,
    }
}

/// Re-evaluates a counterexample; true when it still violates `axiom`.
pub fn reproduces<S: Structure>(s: &S, axiom: Axiom, ce: &Counterexample<S::Value>) -> bool {
    let v = &ce.values;
    let get = |i: usize| v.get(i).cloned().unwrap_or_else(|| s.zero());
    let (a, b, c) = (get(0), get(1), get(2));
    match axiom {
        // Inverse searches store the closest candidate as the pool.
        Axiom::Mgp4 | Axiom::Ngp5 if v.len() == 2 => {
            violation(s, axiom, &a, &a, &a, std::slice::from_ref(&b)).is_some()
        }
        Axiom::Res => violation(s, axiom, &a, &b, &a, std::slice::from_ref(&c)).is_some(),
        _ => violation(s, axiom, &a, &b, &c, &[]).is_some(),
    }
}

fn violation<S: Structure>(
    s: &S,
    axiom: Axiom,
    a: &S::Value,
    b: &S::Value,
    c: &S::Value,
    pool: &[S::Value],
) -> Option<Counterexample<S::Value>> {
    use Axiom::*;
    let ce = |vals: &[&S::Value]| {
        Some(Counterexample {
            values: vals.iter().map(|v| (*v).clone()).collect(),
        })
    };
    let zero = s.zero();
    let one = s.one();
    match axiom {
        Mmp1 | Mgp1 => (!s.equal(&s.add(a, b), &s.add(b, a)))
            .then(|| ce(&[a, b]))
            .flatten(),
        Mmp2 | Mgp2 => {
            let left = s.add(a, &s.add(b, c));
            let right = s.add(&s.add(a, b), c);
            (!s.equal(&left, &right)).then(|| ce(&[a, b, c])).flatten()
        }
        Mmp3 | Mgp3 => {
            let ok = s.equal(&s.add(a, &zero), a) && s.equal(&s.add(&zero, a), a);
            (!ok).then(|| ce(&[a])).flatten()
        }
        Mmp4 | Mgp5 => {
            let (hi, lo) = if s.geq(b, c) { (b, c) } else { (c, b) };
            (!s.geq(&s.add(a, hi), &s.add(a, lo)))
                .then(|| ce(&[a, hi, lo]))
                .flatten()
        }
        Nmp1 | Ngp1 => (!s.equal(&s.mul(a, b), &s.mul(b, a)))
            .then(|| ce(&[a, b]))
            .flatten(),
        Nmp2 | Ngp2 => {
            let left = s.mul(a, &s.mul(b, c));
            let right = s.mul(&s.mul(a, b), c);
            (!s.equal(&left, &right)).then(|| ce(&[a, b, c])).flatten()
        }
        Nmp3 | Ngp3 => {
            let ok = s.equal(&s.mul(a, &one), a) && s.equal(&s.mul(&one, a), a);
            (!ok).then(|| ce(&[a])).flatten()
        }
        Nmp4 => {
            let product_zero = s.is_zero(&s.mul(a, b));
            let factor_zero = s.is_zero(a) || s.is_zero(b);
            (product_zero != factor_zero).then(|| ce(&[a, b])).flatten()
        }
        Ngp4 => {
            let ok = s.is_zero(&s.mul(a, &zero)) && s.is_zero(&s.mul(&zero, a));
            (!ok).then(|| ce(&[a])).flatten()
        }
        Nmp5 | Ngp6 => {
            if !(s.geq(a, &zero) && s.geq(b, &zero) && s.geq(c, &zero)) {
                return None;
            }
            let (hi, lo) = if s.geq(b, c) { (b, c) } else { (c, b) };
            (!s.geq(&s.mul(a, hi), &s.mul(a, lo)))
                .then(|| ce(&[a, hi, lo]))
                .flatten()
        }
        Mgp4 => match s.neg(a) {
            Some(inv) => {
                let ok = s.is_zero(&s.add(a, &inv)) && s.is_zero(&s.add(&inv, a));
                (!ok).then(|| ce(&[a])).flatten()
            }
            None => inverse_search(s, a, pool, &zero, |x, y| s.add(x, y)),
        },
        Ngp5 => {
            if s.is_zero(a) {
                return None;
            }
            match s.recip(a) {
                Some(inv) => {
                    let ok = s.equal(&s.mul(a, &inv), &one) && s.equal(&s.mul(&inv, a), &one);
                    (!ok).then(|| ce(&[a])).flatten()
                }
                None => inverse_search(s, a, pool, &one, |x, y| s.mul(x, y)),
            }
        }
        Dist => {
            let left = s.mul(a, &s.add(b, c));
            let right = s.add(&s.mul(a, b), &s.mul(a, c));
            (!s.equal(&left, &right)).then(|| ce(&[a, b, c])).flatten()
        }
        Res => {
            let Some(x) = s.residuate(a, b) else {
                return ce(&[a, b]);
            };
            if !s.geq(a, &s.mul(&x, b)) {
                return ce(&[a, b, &x]);
            }
            // Candidates above x must overshoot; candidates below must not.
            pool.iter().find_map(|y| {
                let within = s.geq(a, &s.mul(y, b));
                let above = s.gt(y, &x);
                (within == above).then(|| ce(&[a, b, y])).flatten()
            })
        }
    }
}

/// Looks for `y` in `pool` with `op(a, y) = target`. A violation carries `a`
/// and the candidate whose result came closest in order.
fn inverse_search<S: Structure>(
    s: &S,
    a: &S::Value,
    pool: &[S::Value],
    target: &S::Value,
    op: impl Fn(&S::Value, &S::Value) -> S::Value,
) -> Option<Counterexample<S::Value>> {
    if pool.is_empty() {
        return Some(Counterexample {
            values: vec![a.clone()],
        });
    }
    let mut best: Option<(&S::Value, S::Value)> = None;
    for y in pool {
        let r = op(a, y);
        if s.equal(&r, target) {
            return None;
        }
        let closer = match &best {
            None => true,
            Some((_, br)) => distance_order(s, &r, br, target) == Ordering::Less,
        };
        if closer {
            best = Some((y, r));
        }
    }
    best.map(|(y, _)| Counterexample {
        values: vec![a.clone(), y.clone()],
    })
}

/// Orders two results by how near they sit to `target`, using only the
/// carrier order: results on the same side compare directly.
fn distance_order<S: Structure>(
    s: &S,
    r: &S::Value,
    other: &S::Value,
    target: &S::Value,
) -> Ordering {
    let r_above = s.gt(r, target);
    let o_above = s.gt(other, target);
    match (r_above, o_above) {
        (true, true) => s.compare(r, other),
        (false, false) => s.compare(other, r),
        _ => Ordering::Equal,
    }
}
