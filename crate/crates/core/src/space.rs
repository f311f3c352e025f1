//! Finite measurable spaces.
//!
//! Every σ-algebra on a finite sample space is generated by its atoms, so a
//! [`SigmaAlgebra`] is stored as a partition of the outcomes. An [`Event`] is a
//! bitset over outcome indices tied to the space it came from.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A non-empty ordered set of distinct outcome labels. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct SampleSpace(Arc<SpaceInner>);

impl SampleSpace {
    pub fn new<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace("no outcomes".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate outcome `{l}`")));
            }
        }
        Ok(SampleSpace(Arc::new(SpaceInner { labels, index })))
    }

    /// Outcomes labelled `0..n`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn same_as(&self, other: &SampleSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    pub fn empty_event(&self) -> Event {
        Event {
            space: self.clone(),
            bits: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full_event(&self) -> Event {
        let mut e = self.empty_event();
        e.bits.insert_range(..);
        e
    }

    pub fn event_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<Event> {
        let mut e = self.empty_event();
        for i in indices {
            if i >= self.len() {
                return Err(Error::OutcomeOutOfRange {
                    index: i,
                    size: self.len(),
                });
            }
            e.bits.insert(i);
        }
        Ok(e)
    }

    pub fn event_from_labels<I, L>(&self, labels: I) -> Result<Event>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let mut e = self.empty_event();
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownOutcome(l.to_string()))?;
            e.bits.insert(i);
        }
        Ok(e)
    }

    pub fn singleton(&self, i: usize) -> Result<Event> {
        self.event_from_indices([i])
    }
}

impl PartialEq for SampleSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for SampleSpace {}

/// A subset of a sample space.
#[derive(Clone)]
pub struct Event {
    space: SampleSpace,
    bits: FixedBitSet,
}

impl Event {
    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.bits.contains(outcome)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.len()
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Member labels sorted lexicographically, the serialized form.
    pub fn sorted_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .indices()
            .map(|i| self.space.label(i).to_string())
            .collect();
        out.sort();
        out
    }

    fn check_space(&self, other: &Event) -> Result<()> {
        if self.space.same_as(&other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn complement(&self) -> Event {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Event {
            space: self.space.clone(),
            bits,
        }
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        self.check_space(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(Event {
            space: self.space.clone(),
            bits,
        })
    }

    pub fn intersection(&self, other: &Event) -> Result<Event> {
        self.check_space(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(Event {
            space: self.space.clone(),
            bits,
        })
    }

    /// `self ∖ other`
    pub fn difference(&self, other: &Event) -> Result<Event> {
        self.check_space(other)?;
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Ok(Event {
            space: self.space.clone(),
            bits,
        })
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        self.check_space(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn is_disjoint(&self, other: &Event) -> Result<bool> {
        self.check_space(other)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.bits == other.bits
    }
}

impl Eq for Event {}

impl std::hash::Hash for Event {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sorted_labels().join(","))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A σ-algebra on a finite space, represented by its atoms.
#[derive(Clone, Debug)]
pub struct SigmaAlgebra {
    space: SampleSpace,
    atoms: Vec<Event>,
    atom_of: Vec<usize>,
}

impl SigmaAlgebra {
    /// Every subset is measurable; atoms are the singletons.
    pub fn power_set(space: &SampleSpace) -> Self {
        let atoms = (0..space.len())
            .map(|i| space.singleton(i).expect("index in range"))
            .collect();
        SigmaAlgebra {
            space: space.clone(),
            atoms,
            atom_of: (0..space.len()).collect(),
        }
    }

    /// `{∅, Ω}`
    pub fn trivial(space: &SampleSpace) -> Self {
        SigmaAlgebra {
            space: space.clone(),
            atoms: vec![space.full_event()],
            atom_of: vec![0; space.len()],
        }
    }

    /// The smallest σ-algebra containing every generator. Outcomes sharing a
    /// generator-membership signature land in the same atom; atoms are
    /// ordered by their smallest outcome.
    pub fn generate(space: &SampleSpace, generators: &[Event]) -> Result<Self> {
        for g in generators {
            if !g.space.same_as(space) {
                return Err(Error::SpaceMismatch);
            }
        }
        let mut by_signature: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut atoms: Vec<Event> = vec![];
        let mut atom_of = Vec::with_capacity(space.len());
        for w in 0..space.len() {
            let sig: Vec<bool> = generators.iter().map(|g| g.contains(w)).collect();
            let next = atoms.len();
            let k = *by_signature.entry(sig).or_insert(next);
            if k == next {
                atoms.push(space.empty_event());
            }
            atoms[k].bits.insert(w);
            atom_of.push(k);
        }
        let algebra = SigmaAlgebra {
            space: space.clone(),
            atoms,
            atom_of,
        };
        debug_assert!(generators.iter().all(|g| algebra.is_measurable(g)));
        Ok(algebra)
    }

    /// Builds an algebra from an explicit partition.
    pub fn from_atoms(space: &SampleSpace, atoms: Vec<Event>) -> Result<Self> {
        let mut atom_of = vec![usize::MAX; space.len()];
        for (k, a) in atoms.iter().enumerate() {
            if !a.space.same_as(space) {
                return Err(Error::SpaceMismatch);
            }
            if a.is_empty() {
                return Err(Error::InvalidPartition(format!("atom {k} is empty")));
            }
            for w in a.indices() {
                if atom_of[w] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "outcome `{}` lies in atoms {} and {k}",
                        space.label(w),
                        atom_of[w]
                    )));
                }
                atom_of[w] = k;
            }
        }
        if let Some(w) = atom_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "outcome `{}` is not covered",
                space.label(w)
            )));
        }
        Ok(SigmaAlgebra {
            space: space.clone(),
            atoms,
            atom_of,
        })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn atoms(&self) -> &[Event] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Index of the atom containing `outcome`.
    pub fn atom_of(&self, outcome: usize) -> usize {
        self.atom_of[outcome]
    }

    /// True iff `event` is a union of atoms.
    pub fn is_measurable(&self, event: &Event) -> bool {
        event.space.same_as(&self.space)
            && self.atoms.iter().all(|atom| {
                let inside = atom.bits.is_subset(&event.bits);
                inside || atom.bits.is_disjoint(&event.bits)
            })
    }

    /// Indices of the atoms making up a measurable event.
    pub fn atoms_in(&self, event: &Event) -> Result<Vec<usize>> {
        if !event.space.same_as(&self.space) {
            return Err(Error::SpaceMismatch);
        }
        if !self.is_measurable(event) {
            return Err(Error::NotMeasurable(event.to_string()));
        }
        Ok(self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.bits.is_subset(&event.bits) && !a.is_empty())
            .map(|(k, _)| k)
            .collect())
    }

    /// The union of the atoms with the given indices.
    pub fn event_from_atoms<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Event {
        let mut e = self.space.empty_event();
        for k in atoms {
            e.bits.union_with(&self.atoms[k].bits);
        }
        e
    }

    /// Number of measurable events, `2^atoms`.
    pub fn event_count(&self) -> u128 {
        1u128 << self.atoms.len()
    }

    /// All measurable events, indexed by atom-subset bitmask. Only sensible
    /// for small algebras.
    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        assert!(self.atoms.len() < 32, "too many atoms to enumerate");
        (0u32..(1 << self.atoms.len())).map(move |mask| {
            self.event_from_atoms((0..self.atoms.len()).filter(|k| mask & (1 << k) != 0))
        })
    }
}

impl PartialEq for SigmaAlgebra {
    /// Same space and same partition, regardless of atom order.
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space)
            && self.atoms.len() == other.atoms.len()
            && self.atoms.iter().all(|a| other.is_measurable(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(n: usize) -> SampleSpace {
        SampleSpace::indexed(n).unwrap()
    }

    #[test]
    fn power_set_counts() {
        let f = SigmaAlgebra::power_set(&space(3));
        assert_eq!(f.atom_count(), 3);
        assert_eq!(f.event_count(), 8);
        assert_eq!(f.events().count(), 8);
        let f = SigmaAlgebra::power_set(&space(1));
        assert_eq!(f.atoms(), &[space(1).full_event()]);
        assert_eq!(f.event_count(), 2);
        assert_eq!(SigmaAlgebra::power_set(&space(6)).event_count(), 64);
    }

    #[test]
    fn generate_single_generator() {
        let s = space(4);
        let a = s.event_from_indices([0, 1]).unwrap();
        let f = SigmaAlgebra::generate(&s, std::slice::from_ref(&a)).unwrap();
        assert_eq!(f.atoms(), &[a.clone(), a.complement()]);
        let events: Vec<Event> = f.events().collect();
        assert_eq!(events.len(), 4);
        for e in [s.empty_event(), a.clone(), a.complement(), s.full_event()] {
            assert!(events.contains(&e));
        }
    }

    #[test]
    fn generate_no_generators_is_trivial() {
        let s = space(5);
        let f = SigmaAlgebra::generate(&s, &[]).unwrap();
        assert_eq!(f, SigmaAlgebra::trivial(&s));
        assert_eq!(f.event_count(), 2);
    }

    #[test]
    fn generate_two_singletons_on_three() {
        let s = space(3);
        let gens = [s.singleton(0).unwrap(), s.singleton(1).unwrap()];
        let f = SigmaAlgebra::generate(&s, &gens).unwrap();
        let expected: Vec<Event> = (0..3).map(|i| s.singleton(i).unwrap()).collect();
        assert_eq!(f.atoms(), expected.as_slice());
        assert_eq!(f.event_count(), 8);
    }

    #[test]
    fn measurability() {
        let s = space(3);
        let f = SigmaAlgebra::from_atoms(
            &s,
            vec![
                s.event_from_indices([0, 1]).unwrap(),
                s.singleton(2).unwrap(),
            ],
        )
        .unwrap();
        assert!(f.is_measurable(&s.empty_event()));
        assert!(f.is_measurable(&s.full_event()));
        assert!(!f.is_measurable(&s.singleton(0).unwrap()));
        assert!(matches!(
            f.atoms_in(&s.singleton(0).unwrap()),
            Err(Error::NotMeasurable(_))
        ));
    }

    #[test]
    fn bad_partitions_rejected() {
        let s = space(3);
        let overlap = vec![
            s.event_from_indices([0, 1]).unwrap(),
            s.event_from_indices([1, 2]).unwrap(),
        ];
        assert!(matches!(
            SigmaAlgebra::from_atoms(&s, overlap),
            Err(Error::InvalidPartition(_))
        ));
        let gap = vec![s.singleton(0).unwrap()];
        assert!(SigmaAlgebra::from_atoms(&s, gap).is_err());
        let empty = vec![s.empty_event(), s.full_event()];
        assert!(SigmaAlgebra::from_atoms(&s, empty).is_err());
    }

    #[test]
    fn event_algebra() {
        let s = space(3);
        let a = s.event_from_indices([0, 1]).unwrap();
        let b = s.event_from_indices([1, 2]).unwrap();
        assert_eq!(a.union(&a.complement()).unwrap(), s.full_event());
        assert_eq!(a.intersection(&s.empty_event()).unwrap(), s.empty_event());
        let ab = a.intersection(&b).unwrap();
        assert_eq!(a.difference(&ab).unwrap(), s.singleton(0).unwrap());
    }

    #[test]
    fn space_mismatch() {
        let a = space(3).full_event();
        let b = SampleSpace::new(["x", "y", "z"]).unwrap().full_event();
        assert_eq!(a.union(&b), Err(Error::SpaceMismatch));
        assert_eq!(a.intersection(&b), Err(Error::SpaceMismatch));
        assert_eq!(a.difference(&b), Err(Error::SpaceMismatch));
    }

    #[test]
    fn labels_and_spaces() {
        assert!(SampleSpace::new(Vec::<String>::new()).is_err());
        assert!(SampleSpace::new(["a", "a"]).is_err());
        let s = SampleSpace::new(["b", "a", "c"]).unwrap();
        let e = s.event_from_labels(["c", "b"]).unwrap();
        assert_eq!(e.sorted_labels(), vec!["b", "c"]);
        assert_eq!(e.to_string(), "{b,c}");
        assert_eq!(
            s.event_from_labels(["q"]),
            Err(Error::UnknownOutcome("q".into()))
        );
    }

    /// Closure oracle: repeatedly close a set family under complement and
    /// pairwise union until nothing changes.
    fn closure(space: &SampleSpace, generators: &[Event]) -> Vec<u32> {
        let n = space.len();
        let full = (1u32 << n) - 1;
        let mut family: std::collections::BTreeSet<u32> = [0, full].into();
        for g in generators {
            family.insert(g.indices().fold(0, |m, i| m | (1 << i)));
        }
        loop {
            let snapshot: Vec<u32> = family.iter().copied().collect();
            let before = family.len();
            for &x in &snapshot {
                family.insert(full & !x);
                for &y in &snapshot {
                    family.insert(x | y);
                }
            }
            if family.len() == before {
                return family.into_iter().collect();
            }
        }
    }

    fn mask(e: &Event) -> u32 {
        e.indices().fold(0, |m, i| m | (1 << i))
    }

    fn arb_generators() -> impl Strategy<Value = (usize, Vec<u32>)> {
        (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(0u32..(1 << n), 0..4)))
    }

    proptest! {
        #[test]
        fn generated_algebra_matches_closure((n, gens) in arb_generators()) {
            let s = space(n);
            let gens: Vec<Event> = gens
                .iter()
                .map(|m| s.event_from_indices((0..n).filter(|i| m & (1 << i) != 0)).unwrap())
                .collect();
            let f = SigmaAlgebra::generate(&s, &gens).unwrap();

            // partition property
            let mut seen = 0u32;
            for a in f.atoms() {
                prop_assert!(!a.is_empty());
                prop_assert_eq!(seen & mask(a), 0);
                seen |= mask(a);
            }
            prop_assert_eq!(seen, (1u32 << n) - 1);

            let mut ours: Vec<u32> = f.events().map(|e| mask(&e)).collect();
            ours.sort();
            prop_assert_eq!(&ours, &closure(&s, &gens));

            // closed under complement and union
            let set: std::collections::HashSet<u32> = ours.iter().copied().collect();
            for &x in &ours {
                prop_assert!(set.contains(&(((1u32 << n) - 1) & !x)));
                for &y in &ours {
                    prop_assert!(set.contains(&(x | y)));
                }
            }

            // is_measurable agrees with the closure on every subset
            for m in 0u32..(1 << n) {
                let e = s.event_from_indices((0..n).filter(|i| m & (1 << i) != 0)).unwrap();
                prop_assert_eq!(f.is_measurable(&e), set.contains(&m));
            }

            // generator signatures are constant on atoms
            for a in f.atoms() {
                for g in &gens {
                    let inside = a.indices().map(|w| g.contains(w)).collect::<Vec<_>>();
                    prop_assert!(inside.windows(2).all(|p| p[0] == p[1]));
                }
            }
        }

        #[test]
        fn de_morgan(n in 1usize..=10, a in any::<u16>(), b in any::<u16>()) {
            let s = space(n);
            let ev = |m: u16| s.event_from_indices((0..n).filter(|i| m & (1 << i) != 0)).unwrap();
            let (a, b) = (ev(a), ev(b));
            prop_assert_eq!(
                a.union(&b).unwrap().complement(),
                a.complement().intersection(&b.complement()).unwrap()
            );
            prop_assert_eq!(
                a.intersection(&b).unwrap().complement(),
                a.complement().union(&b.complement()).unwrap()
            );
            prop_assert_eq!(a.difference(&b).unwrap(), a.intersection(&b.complement()).unwrap());
        }
    }
}
