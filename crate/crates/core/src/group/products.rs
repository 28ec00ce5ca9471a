use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{ElemId, FiniteGroup, Subgroup, IDENTITY};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `G/N` realized by the regular action on right cosets `Nx`.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FiniteGroup,
    kernel: Subgroup,
    projection: Vec<ElemId>,
    lift: Vec<ElemId>,
}

impl Quotient {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn project(&self, x: ElemId) -> ElemId {
        self.projection[x as usize]
    }

    /// Smallest element of the coset `y`.
    pub fn lift(&self, y: ElemId) -> ElemId {
        self.lift[y as usize]
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<ElemId> = h.gens.iter().map(|&x| self.project(x)).collect();
        self.group.closure(&gens)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<ElemId> = h.gens.iter().map(|&y| self.lift(y)).collect();
        parent.extend(&self.kernel, &gens)
    }
}

/// `A × B` acting on the disjoint union of the two point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    group: FiniteGroup,
    left: FiniteGroup,
    right: FiniteGroup,
    left_factor: Subgroup,
    right_factor: Subgroup,
}

impl DirectProduct {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn left_factor(&self) -> &Subgroup {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &Subgroup {
        &self.right_factor
    }

    pub fn embed_left(&self, x: ElemId) -> ElemId {
        let p = self.left.element(x).extend_to(self.group.degree());
        self.group.id_of(&p).expect("factor element")
    }

    pub fn embed_right(&self, y: ElemId) -> ElemId {
        let p = self
            .right
            .element(y)
            .shifted(self.left.degree(), self.group.degree());
        self.group.id_of(&p).expect("factor element")
    }

    pub fn project_left(&self, z: ElemId) -> ElemId {
        let raw = self.group.element(z).raw()[..self.left.degree()].to_vec();
        self.left
            .id_of(&Permutation::from_zero_based_unchecked(raw))
            .expect("coordinate in factor")
    }

    pub fn project_right(&self, z: ElemId) -> ElemId {
        let off = self.left.degree() as u32;
        let raw = self.group.element(z).raw()[off as usize..]
            .iter()
            .map(|&v| v - off)
            .collect();
        self.right
            .id_of(&Permutation::from_zero_based_unchecked(raw))
            .expect("coordinate in factor")
    }
}

/// `N ⋊ A` for a group `A` of automorphisms of `N`, acting on the elements
/// of `N`: `n` acts by right multiplication and `α` by `x ↦ α(x)`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    group: FiniteGroup,
    normal: Subgroup,
    complement: Subgroup,
    n: FiniteGroup,
    a: FiniteGroup,
}

impl SemidirectProduct {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn complement(&self) -> &Subgroup {
        &self.complement
    }

    pub fn embed_normal(&self, x: ElemId) -> ElemId {
        self.group
            .id_of(&right_regular(&self.n, x))
            .expect("normal factor element")
    }

    pub fn embed_complement(&self, a: ElemId) -> ElemId {
        self.group
            .id_of(self.a.element(a))
            .expect("complement element")
    }

    /// `α(x)` for `α ∈ A`, `x ∈ N`, both given as ids of their own groups.
    pub fn apply(&self, a: ElemId, x: ElemId) -> ElemId {
        self.a.element(a).raw()[x as usize]
    }
}

/// A subgroup viewed as a group in its own right.
///
/// Element ids of the new group follow the parent's order, so `to_parent`
/// is increasing.
#[derive(Clone, Debug)]
pub struct Embedding {
    group: FiniteGroup,
    parent_uid: u64,
    parent_order: usize,
    to_parent: Vec<ElemId>,
}

impl Embedding {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn to_parent(&self, x: ElemId) -> ElemId {
        self.to_parent[x as usize]
    }

    pub fn from_parent(&self, x: ElemId) -> Option<ElemId> {
        self.to_parent.binary_search(&x).ok().map(|i| i as ElemId)
    }

    pub fn lift(&self, h: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.parent_order);
        for x in h.elements() {
            members.insert(self.to_parent(x) as usize);
        }
        Subgroup {
            owner: self.parent_uid,
            members,
            order: h.order,
            gens: h.gens.iter().map(|&x| self.to_parent(x)).collect(),
        }
    }

    /// Pulls a subgroup of the parent that lies inside the embedded one.
    pub fn restrict(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.owner != self.parent_uid {
            return Err(Error::ForeignSubgroup);
        }
        let gens = h
            .gens
            .iter()
            .map(|&x| {
                self.from_parent(x)
                    .ok_or_else(|| Error::NotAnElement(format!("id {x} outside the subgroup")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.group.closure(&gens))
    }
}

fn right_regular(n: &FiniteGroup, x: ElemId) -> Permutation {
    Permutation::from_zero_based_unchecked(n.ids().map(|y| n.mul(y, x)).collect())
}

impl FiniteGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        self.check(n);
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} in {}",
                n.order(),
                self.label()
            )));
        }
        let size = self.order();
        let mut coset_of = vec![u32::MAX; size];
        let mut reps = Vec::new();
        for x in self.ids() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for k in n.elements() {
                coset_of[self.mul(k, x) as usize] = c;
            }
        }
        let m = reps.len();
        let gens: Vec<Permutation> = self
            .generator_ids()
            .iter()
            .map(|&g| {
                Permutation::from_zero_based_unchecked(
                    reps.iter()
                        .map(|&r| coset_of[self.mul(r, g) as usize])
                        .collect(),
                )
            })
            .collect();
        let label = format!("{}/N{}", self.label(), n.order());
        let q = FiniteGroup::from_generators(m, &gens, label)?;
        let qgens: Vec<ElemId> = gens.iter().map(|p| q.id_of(p).unwrap()).collect();

        let k = self.inner.gen_ids.len();
        let mut projection = vec![u32::MAX; size];
        projection[0] = IDENTITY;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for (j, &qg) in qgens.iter().enumerate() {
                let y = self.inner.right_gen[x as usize * k + j];
                if projection[y as usize] == u32::MAX {
                    projection[y as usize] = q.mul(projection[x as usize], qg);
                    queue.push_back(y);
                }
            }
        }
        let mut lift = vec![u32::MAX; q.order()];
        for x in self.ids() {
            let y = projection[x as usize] as usize;
            if lift[y] == u32::MAX {
                lift[y] = x;
            }
        }
        Ok(Quotient {
            group: q,
            kernel: n.clone(),
            projection,
            lift,
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<DirectProduct> {
        let deg = a.degree() + b.degree();
        let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.extend_to(deg)).collect();
        gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), deg)));
        let label = format!("{} x {}", a.label(), b.label());
        let group = FiniteGroup::from_generators(deg, &gens, label)?;
        let split = a.generators().len();
        let ids: Vec<ElemId> = gens.iter().map(|p| group.id_of(p).unwrap()).collect();
        let left_factor = group.closure(&ids[..split]);
        let right_factor = group.closure(&ids[split..]);
        Ok(DirectProduct {
            group,
            left: a.clone(),
            right: b.clone(),
            left_factor,
            right_factor,
        })
    }

    /// `N ⋊ A`, where `A` permutes the points `1..=|N|` standing for the
    /// elements of `N` in canonical order.
    pub fn outer_semidirect_product(n: &FiniteGroup, a: &FiniteGroup) -> Result<SemidirectProduct> {
        if a.degree() != n.order() {
            return Err(Error::DegreeMismatch {
                expected: n.order(),
                found: a.degree(),
            });
        }
        for alpha in a.generators() {
            let img = alpha.raw();
            for x in n.ids() {
                for &s in n.generator_ids() {
                    if img[n.mul(x, s) as usize] != n.mul(img[x as usize], img[s as usize]) {
                        return Err(Error::NotAutomorphism(alpha.to_string()));
                    }
                }
            }
        }
        let deg = n.order();
        let mut gens: Vec<Permutation> = n
            .generator_ids()
            .iter()
            .map(|&s| right_regular(n, s))
            .collect();
        gens.extend(a.generators().iter().cloned());
        let label = format!("{} : {}", n.label(), a.label());
        let group = FiniteGroup::from_generators(deg, &gens, label)?;
        let ids: Vec<ElemId> = gens.iter().map(|p| group.id_of(p).unwrap()).collect();
        let split = n.generator_ids().len();
        let normal = group.closure(&ids[..split]);
        let complement = group.closure(&ids[split..]);
        let sd = SemidirectProduct {
            group,
            normal,
            complement,
            n: n.clone(),
            a: a.clone(),
        };
        debug_assert_eq!(sd.group.order(), n.order() * a.order());
        debug_assert!(sd
            .group
            .intersection(&sd.normal, &sd.complement)
            .is_trivial());
        for &alpha in a.generator_ids() {
            let ga = sd.embed_complement(alpha);
            for &x in n.generator_ids() {
                let lhs = sd.group.conj(sd.embed_normal(x), ga);
                if lhs != sd.embed_normal(sd.apply(alpha, x)) {
                    return Err(Error::NotAutomorphism(a.element(alpha).to_string()));
                }
            }
        }
        Ok(sd)
    }

    pub fn subgroup_as_group(&self, h: &Subgroup, label: impl Into<String>) -> Embedding {
        self.check(h);
        let to_parent: Vec<ElemId> = h.elements().collect();
        let elements = to_parent.iter().map(|&x| self.element(x).clone()).collect();
        let group = FiniteGroup::from_closed_set(
            self.degree(),
            self.generator_permutations(h),
            elements,
            label.into(),
        );
        Embedding {
            group,
            parent_uid: self.uid(),
            parent_order: self.order(),
            to_parent,
        }
    }

    /// The permutation of `q`'s elements (in id order) induced by `x ↦ x^g`.
    pub fn induced_permutation(&self, q: &Subgroup, g: ElemId) -> Permutation {
        let elems: Vec<ElemId> = q.elements().collect();
        let images = elems
            .iter()
            .map(|&x| {
                elems
                    .binary_search(&self.conj(x, g))
                    .expect("g normalizes q") as u32
            })
            .collect();
        Permutation::from_zero_based_unchecked(images)
    }

    /// Group of automorphisms of `q` induced by conjugation with `by`, each of
    /// which must normalize `q`.
    pub fn induced_automorphisms(
        &self,
        q: &Subgroup,
        by: &[ElemId],
        label: impl Into<String>,
    ) -> Result<FiniteGroup> {
        let gens: Vec<Permutation> = by
            .iter()
            .map(|&g| self.induced_permutation(q, g))
            .filter(|p| !p.is_identity())
            .collect();
        FiniteGroup::from_generators(q.order(), &gens, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 2]])], "S4").unwrap()
    }

    #[test]
    fn quotient_by_klein_four() {
        let g = s4();
        let v = g
            .subgroup_from_generators(&[p(4, &[&[1, 2], &[3, 4]]), p(4, &[&[1, 3], &[2, 4]])])
            .unwrap();
        let q = g.quotient(&v).unwrap();
        assert_eq!(q.group().order(), 6);
        assert!(!q.group().is_abelian_subgroup(&q.group().whole()));
        for a in g.ids() {
            for b in g.ids() {
                assert_eq!(
                    q.project(g.mul(a, b)),
                    q.group().mul(q.project(a), q.project(b))
                );
            }
        }
        let top = q.preimage(&g, &q.group().whole());
        assert_eq!(top, g.whole());
    }

    #[test]
    fn trivial_quotients() {
        let g = s4();
        assert_eq!(g.quotient(&g.whole()).unwrap().group().order(), 1);
        assert_eq!(
            g.quotient(&g.trivial_subgroup()).unwrap().group().order(),
            24
        );
        let t = g.subgroup_from_generators(&[p(4, &[&[1, 2]])]).unwrap();
        assert!(matches!(g.quotient(&t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn direct_product_factors() {
        let c5 = FiniteGroup::from_generators(5, &[p(5, &[&[1, 2, 3, 4, 5]])], "C5").unwrap();
        let d = FiniteGroup::direct_product(&c5, &c5).unwrap();
        let g = d.group();
        assert_eq!(g.order(), 25);
        assert!(g.is_abelian_subgroup(&g.whole()));
        assert!(g
            .intersection(d.left_factor(), d.right_factor())
            .is_trivial());
        for x in c5.ids() {
            assert_eq!(d.project_left(d.embed_left(x)), x);
            assert_eq!(d.project_right(d.embed_right(x)), x);
            assert_eq!(d.project_left(d.embed_right(x)), IDENTITY);
        }
        let triv = FiniteGroup::from_generators(1, &[], "1").unwrap();
        assert_eq!(
            FiniteGroup::direct_product(&s4(), &triv)
                .unwrap()
                .group()
                .order(),
            24
        );
    }

    #[test]
    fn semidirect_q8_by_c3() {
        // Q8 in its regular representation on 8 points
        let i = p(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let j = p(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]);
        let q8 = FiniteGroup::from_generators(8, &[i.clone(), j.clone()], "Q8").unwrap();
        assert_eq!(q8.order(), 8);
        let (ii, jj) = (q8.id_of(&i).unwrap(), q8.id_of(&j).unwrap());
        let kk = q8.mul(ii, jj);
        // i -> j -> k -> i, extended multiplicatively
        let mut images = vec![u32::MAX; 8];
        let words: Vec<(ElemId, ElemId)> = q8
            .ids()
            .map(|x| {
                let (a, b) = (0..4u64)
                    .flat_map(|a| (0..4u64).map(move |b| (a, b)))
                    .find(|&(a, b)| q8.mul(q8.pow(ii, a), q8.pow(jj, b)) == x)
                    .unwrap();
                (q8.mul(q8.pow(jj, a), q8.pow(kk, b)), x)
            })
            .collect();
        for (img, x) in words {
            images[x as usize] = img;
        }
        let alpha = Permutation::from_zero_based_unchecked(images);
        let a = FiniteGroup::from_generators(8, &[alpha], "C3").unwrap();
        assert_eq!(a.order(), 3);
        let sd = FiniteGroup::outer_semidirect_product(&q8, &a).unwrap();
        assert_eq!(sd.group().order(), 24);
        assert!(sd.group().is_normal(sd.normal()));
        for al in a.ids() {
            for x in q8.ids() {
                let lhs = sd.group().conj(sd.embed_normal(x), sd.embed_complement(al));
                assert_eq!(lhs, sd.embed_normal(sd.apply(al, x)));
            }
        }
    }

    #[test]
    fn semidirect_rejects_non_automorphisms() {
        let c3 = FiniteGroup::from_generators(3, &[p(3, &[&[1, 2, 3]])], "C3").unwrap();
        // swaps the identity with another element
        let bad = FiniteGroup::from_generators(3, &[p(3, &[&[1, 2]])], "bad").unwrap();
        assert!(matches!(
            FiniteGroup::outer_semidirect_product(&c3, &bad),
            Err(Error::NotAutomorphism(_))
        ));
        let triv = FiniteGroup::from_generators(3, &[], "1").unwrap();
        assert_eq!(
            FiniteGroup::outer_semidirect_product(&c3, &triv)
                .unwrap()
                .group()
                .order(),
            3
        );
    }

    #[test]
    fn embedding_round_trip() {
        let g = s4();
        let d8 = g
            .subgroup_from_generators(&[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])])
            .unwrap();
        let e = g.subgroup_as_group(&d8, "D8");
        assert_eq!(e.group().order(), 8);
        let z = e.group().center();
        let lifted = e.lift(&z);
        assert_eq!(lifted, g.center_of(&d8));
        assert_eq!(e.restrict(&lifted).unwrap(), z);
        for x in e.group().ids() {
            for y in e.group().ids() {
                assert_eq!(
                    e.to_parent(e.group().mul(x, y)),
                    g.mul(e.to_parent(x), e.to_parent(y))
                );
            }
        }
    }
}
