use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::ElemId;

/// A subgroup of a [`FiniteGroup`](super::FiniteGroup), stored as a member
/// set over the parent's canonical element order.
///
/// Equality and hashing look only at the member set; ordering compares the
/// sorted element lists lexicographically (the canonical key).
#[derive(Clone)]
pub struct Subgroup {
    pub(crate) owner: u64,
    pub(crate) members: FixedBitSet,
    pub(crate) order: usize,
    pub(crate) gens: Vec<ElemId>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.members.ones().map(|i| i as ElemId)
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.gens
    }

    /// Sorted element ids; two subgroups are equal iff their keys are.
    pub fn canonical_key(&self) -> Vec<ElemId> {
        self.elements().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.owner == other.owner && self.members.is_subset(&other.members)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order < other.order && self.is_subgroup_of(other)
    }

    pub fn owner(&self) -> u64 {
        self.owner
    }

    pub(crate) fn members(&self) -> &FixedBitSet {
        &self.members
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.owner.hash(state);
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.owner
            .cmp(&other.owner)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.gens)
    }
}
