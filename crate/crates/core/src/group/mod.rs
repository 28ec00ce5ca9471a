//! Finite permutation groups with fully enumerated, canonically ordered
//! element sets.
//!
//! Elements are addressed by [`ElemId`], their index in the sorted element
//! list, so the identity is always id 0. Subgroups are member sets over these
//! ids. Small groups get a full multiplication table on first use.

mod products;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use products::{DirectProduct, Embedding, Quotient, SemidirectProduct};
pub use subgroup::Subgroup;

pub type ElemId = u32;

pub const IDENTITY: ElemId = 0;

const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
const TABLE_LIMIT: usize = 4096;

static ELEMENT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ELEMENT_CAP);
static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// Largest group that [`FiniteGroup::from_generators`] will enumerate.
pub fn element_cap() -> usize {
    ELEMENT_CAP.load(Ordering::Relaxed)
}

pub fn set_element_cap(cap: usize) {
    ELEMENT_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Default)]
pub(crate) struct LatticeMemo {
    pub(crate) all_subgroups: OnceLock<Arc<Vec<Subgroup>>>,
    pub(crate) normal_subgroups: OnceLock<Arc<Vec<Subgroup>>>,
}

struct Inner {
    uid: u64,
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    gen_ids: Vec<ElemId>,
    inverse: Vec<ElemId>,
    // right_gen[x * k + j] = x * gen_j
    right_gen: Vec<ElemId>,
    table: OnceLock<Option<Box<[u16]>>>,
    orders: OnceLock<Vec<u32>>,
    classes: OnceLock<Arc<Vec<Vec<ElemId>>>>,
    lattice: LatticeMemo,
}

/// A permutation group together with its full element list.
///
/// Cloning is cheap; clones share caches.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl FiniteGroup {
    /// Enumerates the closure of `gens` by breadth-first search.
    pub fn from_generators(
        degree: usize,
        gens: &[Permutation],
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::from_generators_with_cap(degree, gens, label, element_cap())
    }

    pub fn from_generators_with_cap(
        degree: usize,
        gens: &[Permutation],
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = x.compose(s);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            elements.push(x);
        }
        drop(seen);
        Ok(Self::from_closed_set(
            degree,
            gens.to_vec(),
            elements,
            label.into(),
        ))
    }

    /// Builds a group from a list already known to be closed; `elements`
    /// need not be sorted.
    pub(crate) fn from_closed_set(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
        label: String,
    ) -> Self {
        elements.sort_unstable();
        let index: HashMap<Permutation, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as ElemId))
            .collect();
        let gen_ids: Vec<ElemId> = generators.iter().map(|g| index[g]).collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let k = generators.len();
        let mut right_gen = Vec::with_capacity(elements.len() * k);
        for p in &elements {
            for g in &generators {
                right_gen.push(index[&p.compose(g)]);
            }
        }
        FiniteGroup {
            inner: Arc::new(Inner {
                uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
                label,
                degree,
                generators,
                elements,
                index,
                gen_ids,
                inverse,
                right_gen,
                table: OnceLock::new(),
                orders: OnceLock::new(),
                classes: OnceLock::new(),
                lattice: LatticeMemo::default(),
            }),
        }
    }

    pub fn uid(&self) -> u64 {
        self.inner.uid
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Same group and caches under a different label.
    pub fn relabeled(&self, label: impl Into<String>) -> FiniteGroup {
        let i = &self.inner;
        FiniteGroup::from_closed_set(
            i.degree,
            i.generators.clone(),
            i.elements.clone(),
            label.into(),
        )
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.inner.gen_ids
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, x: ElemId) -> &Permutation {
        &self.inner.elements[x as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.inner.index.get(p).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub(crate) fn lattice_memo(&self) -> &LatticeMemo {
        &self.inner.lattice
    }

    fn table(&self) -> Option<&[u16]> {
        self.inner
            .table
            .get_or_init(|| (self.order() <= TABLE_LIMIT).then(|| self.build_table()))
            .as_deref()
    }

    // Row a of the table is filled along a spanning tree of the Cayley graph:
    // a * (b s) = (a * b) s, and right multiplication by a generator is known.
    fn build_table(&self) -> Box<[u16]> {
        let n = self.order();
        let k = self.inner.gen_ids.len();
        let mut tree: Vec<(ElemId, usize, ElemId)> = Vec::with_capacity(n);
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for j in 0..k {
                let y = self.inner.right_gen[x as usize * k + j];
                if !seen.put(y as usize) {
                    tree.push((x, j, y));
                    queue.push_back(y);
                }
            }
        }
        let mut table = vec![0u16; n * n].into_boxed_slice();
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u16;
            for &(parent, j, b) in &tree {
                let ab = row[parent as usize] as usize;
                row[b as usize] = self.inner.right_gen[ab * k + j] as u16;
            }
        }
        table
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        if let Some(t) = self.table() {
            return t[a as usize * self.order() + b as usize] as ElemId;
        }
        let p = self.element(a).compose(self.element(b));
        self.inner.index[&p]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inner.inverse[a as usize]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: ElemId, y: ElemId) -> ElemId {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn pow(&self, x: ElemId, e: u64) -> ElemId {
        let mut acc = IDENTITY;
        let mut sq = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: ElemId) -> u64 {
        self.inner
            .orders
            .get_or_init(|| self.elements().iter().map(|p| p.order() as u32).collect())[x as usize]
            as u64
    }

    pub fn is_p_element(&self, x: ElemId, p: u64) -> bool {
        let mut o = self.element_order(x);
        while o % p == 0 {
            o /= p;
        }
        o == 1
    }

    // ---- subgroup constructors ----

    fn bits(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = self.bits();
        members.insert(0);
        Subgroup {
            owner: self.uid(),
            members,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = self.bits();
        members.insert_range(..);
        let mut gens: Vec<ElemId> = self
            .inner
            .gen_ids
            .iter()
            .copied()
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup {
            owner: self.uid(),
            members,
            order: self.order(),
            gens,
        }
    }

    /// `<gens>`.
    pub fn closure(&self, gens: &[ElemId]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), gens)
    }

    /// `<base, extra>`.
    pub fn extend(&self, base: &Subgroup, extra: &[ElemId]) -> Subgroup {
        self.check(base);
        let mut gens = base.gens.clone();
        let mut added = false;
        for &x in extra {
            if !base.contains(x) && !gens.contains(&x) {
                gens.push(x);
                added = true;
            }
        }
        if !added {
            return base.clone();
        }
        let mut members = base.members.clone();
        let mut queue: Vec<ElemId> = base.elements().collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !members.put(y as usize) {
                    queue.push(y);
                }
            }
        }
        Subgroup {
            owner: self.uid(),
            order: queue.len(),
            members,
            gens,
        }
    }

    /// Wraps a member set known to be a subgroup, choosing generators
    /// greedily in id order.
    pub(crate) fn subgroup_from_set(&self, set: FixedBitSet) -> Subgroup {
        let target = set.count_ones(..);
        let mut h = self.trivial_subgroup();
        for x in set.ones() {
            if h.order == target {
                break;
            }
            if !h.contains(x as ElemId) {
                h = self.extend(&h, &[x as ElemId]);
            }
        }
        debug_assert_eq!(h.members, set);
        h
    }

    /// Subgroup generated by the given permutations, which must be elements.
    pub fn subgroup_from_generators(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let ids = gens
            .iter()
            .map(|p| {
                self.id_of(p)
                    .ok_or_else(|| Error::NotAnElement(p.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&ids))
    }

    pub fn generator_permutations(&self, h: &Subgroup) -> Vec<Permutation> {
        h.gens.iter().map(|&g| self.element(g).clone()).collect()
    }

    fn check(&self, h: &Subgroup) {
        assert_eq!(h.owner, self.uid(), "{}", Error::ForeignSubgroup);
    }

    // ---- lattice-free subgroup operations ----

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.check(a);
        self.check(b);
        if a.is_subgroup_of(b) {
            return a.clone();
        }
        if b.is_subgroup_of(a) {
            return b.clone();
        }
        let mut m = a.members.clone();
        m.intersect_with(&b.members);
        self.subgroup_from_set(m)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.extend(a, &b.gens)
    }

    /// `H^g = g^-1 H g`.
    pub fn conjugate(&self, h: &Subgroup, g: ElemId) -> Subgroup {
        self.check(h);
        let mut members = self.bits();
        for x in h.elements() {
            members.insert(self.conj(x, g) as usize);
        }
        Subgroup {
            owner: self.uid(),
            members,
            order: h.order,
            gens: h.gens.iter().map(|&x| self.conj(x, g)).collect(),
        }
    }

    pub fn is_normalized_by(&self, h: &Subgroup, g: ElemId) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(x, g)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.check(h);
        self.inner
            .gen_ids
            .iter()
            .all(|&g| self.is_normalized_by(h, g))
    }

    /// `h` normal in `k` (and contained in it).
    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subgroup_of(k) && k.gens.iter().all(|&g| self.is_normalized_by(h, g))
    }

    /// `C_K(H)`.
    pub fn centralizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        self.check(k);
        self.check(h);
        let mut m = self.bits();
        for x in k.elements() {
            if h.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)) {
                m.insert(x as usize);
            }
        }
        self.subgroup_from_set(m)
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(&self.whole(), h)
    }

    /// `N_K(H)`.
    pub fn normalizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        self.check(k);
        self.check(h);
        let mut m = self.bits();
        for x in k.elements() {
            if self.is_normalized_by(h, x) {
                m.insert(x as usize);
            }
        }
        self.subgroup_from_set(m)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), h)
    }

    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    pub fn center(&self) -> Subgroup {
        self.center_of(&self.whole())
    }

    /// Smallest subgroup of `k` containing `xs` and normalized by `k`.
    pub fn normal_closure_in(&self, k: &Subgroup, xs: &[ElemId]) -> Subgroup {
        let mut n = self.closure(xs);
        'grow: loop {
            for &x in &n.gens {
                for &s in &k.gens {
                    let y = self.conj(x, s);
                    if !n.contains(y) {
                        n = self.extend(&n, &[y]);
                        continue 'grow;
                    }
                }
            }
            return n;
        }
    }

    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &x) in h.gens.iter().enumerate() {
            for &y in &h.gens[i + 1..] {
                let c = self.commutator(x, y);
                if c != IDENTITY {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_in(h, &comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.derived_subgroup_of(&self.whole())
    }

    /// Largest normal subgroup of G inside `h`.
    pub fn normal_core(&self, h: &Subgroup) -> Subgroup {
        let mut core = h.clone();
        loop {
            let mut changed = false;
            for &g in &self.inner.gen_ids {
                if !self.is_normalized_by(&core, g) {
                    let c = self.conjugate(&core, g);
                    core = self.intersection(&core, &c);
                    changed = true;
                }
            }
            if !changed {
                return core;
            }
        }
    }

    /// `|HK|` computed as `|H||K|/|H∩K|`.
    pub fn product_size(&self, h: &Subgroup, k: &Subgroup) -> usize {
        h.order * k.order / self.intersection(h, k).order
    }

    // ---- orbits ----

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Arc<Vec<Vec<ElemId>>> {
        self.inner
            .classes
            .get_or_init(|| {
                let n = self.order();
                let mut seen = self.bits();
                let mut out = Vec::new();
                for x in 0..n as ElemId {
                    if seen.put(x as usize) {
                        continue;
                    }
                    let mut class = vec![x];
                    let mut i = 0;
                    while i < class.len() {
                        let y = class[i];
                        i += 1;
                        for &g in &self.inner.gen_ids {
                            let z = self.conj(y, g);
                            if !seen.put(z as usize) {
                                class.push(z);
                            }
                        }
                    }
                    class.sort_unstable();
                    out.push(class);
                }
                Arc::new(out)
            })
            .clone()
    }

    /// Index into [`conjugacy_classes`](Self::conjugacy_classes) for every element.
    pub fn class_index(&self) -> Vec<u32> {
        let mut idx = vec![0u32; self.order()];
        for (c, class) in self.conjugacy_classes().iter().enumerate() {
            for &x in class {
                idx[x as usize] = c as u32;
            }
        }
        idx
    }

    /// `{H^g : g ∈ G}`, sorted by canonical key.
    pub fn subgroup_conjugates(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.conjugates_under(h, &self.inner.gen_ids)
    }

    /// Orbit of `h` under conjugation by the group generated by `by`.
    pub fn conjugates_under(&self, h: &Subgroup, by: &[ElemId]) -> Vec<Subgroup> {
        let mut orbit = vec![h.clone()];
        let mut seen: std::collections::HashSet<Subgroup> = [h.clone()].into();
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i].clone();
            i += 1;
            for &g in by {
                if self.is_normalized_by(&cur, g) {
                    continue;
                }
                let c = self.conjugate(&cur, g);
                if seen.insert(c.clone()) {
                    orbit.push(c);
                }
            }
        }
        orbit.sort();
        orbit
    }

    /// Orbit of `h` under conjugation, each member paired with one
    /// conjugator taking `h` to it. Starts with `(h, 1)`.
    pub fn conjugates_with_elements(&self, h: &Subgroup) -> Vec<(Subgroup, ElemId)> {
        let mut out = vec![(h.clone(), IDENTITY)];
        let mut seen: std::collections::HashSet<Subgroup> = [h.clone()].into();
        let mut i = 0;
        while i < out.len() {
            let (cur, x) = out[i].clone();
            i += 1;
            for &s in &self.inner.gen_ids {
                if self.is_normalized_by(&cur, s) {
                    continue;
                }
                let c = self.conjugate(&cur, s);
                if seen.insert(c.clone()) {
                    out.push((c, self.mul(x, s)));
                }
            }
        }
        out
    }

    /// Some `g` with `a^g = b`, if one exists.
    pub fn conjugating_element(&self, a: &Subgroup, b: &Subgroup) -> Option<ElemId> {
        if a.order != b.order {
            return None;
        }
        self.ids()
            .find(|&g| a.gens.iter().all(|&x| b.contains(self.conj(x, g))))
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        h.gens.iter().enumerate().all(|(i, &x)| {
            h.gens[i + 1..]
                .iter()
                .all(|&y| self.mul(x, y) == self.mul(y, x))
        })
    }

    /// Order of `x` modulo the normal subgroup `n` of some overgroup.
    pub fn order_modulo(&self, x: ElemId, n: &Subgroup) -> u64 {
        let mut y = x;
        let mut k = 1;
        while !n.contains(y) {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup({:?}, degree {}, order {})",
            self.label(),
            self.degree(),
            self.order()
        )
    }
}
