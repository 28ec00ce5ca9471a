//! Sylow fusion systems `F_S(G)`.
//!
//! A [`FusionSystem`] is a cheap handle around the ambient group, the prime
//! and a Sylow subgroup, plus write-once caches. Subgroups passed to its
//! methods are subgroups of the ambient group lying inside `S`; passing one
//! outside `S` panics.

mod essential;
mod quotient;
mod report;
mod supersolvable;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::{ElemId, Embedding, FiniteGroup, Subgroup};
use crate::lattice::{is_p_power, is_prime, p_part, subgroups_of, sylow_subgroup};

pub use essential::{has_strongly_p_embedded, EssentialReport};
pub use quotient::QuotientFusionSystem;
pub use report::{FusionReport, SubgroupVerdict};
pub use supersolvable::{ClosureSystem, SupersolvabilityCertificate};

type Conjugates = Arc<Vec<(Subgroup, ElemId)>>;

#[derive(Clone)]
pub struct FusionSystem {
    inner: Arc<Inner>,
}

struct Inner {
    group: FiniteGroup,
    p: u64,
    sylow: Subgroup,
    class_in_s: OnceLock<Vec<Vec<ElemId>>>,
    in_s: Mutex<HashMap<Subgroup, Conjugates>>,
    s_subgroups: OnceLock<Arc<Vec<Subgroup>>>,
    strongly_closed: OnceLock<Arc<Vec<Subgroup>>>,
    essentials: OnceLock<Arc<Vec<EssentialReport>>>,
}

/// `Hom_F(P, S)`: one conjugator per distinct map, tagged with its image.
#[derive(Clone, Debug)]
pub struct FusionMorphismSet {
    pub source: Subgroup,
    pub representatives: Vec<(ElemId, Subgroup)>,
}

impl FusionMorphismSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// `N_F(Q)` as the fusion system of `N_G(Q)` over `N_S(Q)`.
#[derive(Clone)]
pub struct Subsystem {
    pub system: FusionSystem,
    pub embedding: Embedding,
}

/// `F_S(G)` with `S` the Sylow subgroup chosen by [`sylow_subgroup`].
pub fn fusion_system(g: &FiniteGroup, p: u64) -> Result<FusionSystem> {
    let s = sylow_subgroup(g, p)?;
    FusionSystem::with_sylow(g, p, s)
}

impl FusionSystem {
    pub fn with_sylow(g: &FiniteGroup, p: u64, s: Subgroup) -> Result<FusionSystem> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s.owner() != g.uid() {
            return Err(Error::ForeignSubgroup);
        }
        if !is_p_power(s.order(), p) || s.order() != p_part(g.order(), p) {
            return Err(Error::Precondition(format!(
                "subgroup of order {} is not a Sylow {p}-subgroup of a group of order {}",
                s.order(),
                g.order()
            )));
        }
        Ok(FusionSystem {
            inner: Arc::new(Inner {
                group: g.clone(),
                p,
                sylow: s,
                class_in_s: OnceLock::new(),
                in_s: Mutex::new(HashMap::new()),
                s_subgroups: OnceLock::new(),
                strongly_closed: OnceLock::new(),
                essentials: OnceLock::new(),
            }),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.inner.group
    }

    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.inner.sylow
    }

    fn check(&self, q: &Subgroup) {
        assert!(
            q.is_subgroup_of(&self.inner.sylow),
            "subgroup is not contained in the Sylow subgroup"
        );
    }

    /// All subgroups of `S`, sorted by canonical key.
    pub fn subgroups_of_s(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.inner.s_subgroups.get() {
            return Ok(v.clone());
        }
        let v = Arc::new(subgroups_of(self.group(), self.sylow())?);
        Ok(self.inner.s_subgroups.get_or_init(|| v).clone())
    }

    /// One subgroup per `S`-conjugacy class, the smallest canonical key of
    /// each class.
    pub fn s_class_representatives(&self) -> Result<Vec<Subgroup>> {
        let g = self.group();
        let sgens = self.sylow().generators().to_vec();
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for q in self.subgroups_of_s()?.iter() {
            if seen.contains(q) {
                continue;
            }
            seen.extend(g.conjugates_under(q, &sgens));
            reps.push(q.clone());
        }
        Ok(reps)
    }

    /// The `G`-conjugates of `q` lying in `S`, each with a conjugator, sorted.
    pub fn conjugates_in_s(&self, q: &Subgroup) -> Conjugates {
        self.check(q);
        if let Some(v) = self.inner.in_s.lock().expect("cache lock").get(q) {
            return v.clone();
        }
        let s = self.sylow();
        let mut v: Vec<(Subgroup, ElemId)> = self
            .group()
            .conjugates_with_elements(q)
            .into_iter()
            .filter(|(c, _)| c.is_subgroup_of(s))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let v = Arc::new(v);
        self.inner
            .in_s
            .lock()
            .expect("cache lock")
            .entry(q.clone())
            .or_insert(v)
            .clone()
    }

    /// `{Q^g : g ∈ G, Q^g ≤ S}`, sorted.
    pub fn f_conjugates(&self, q: &Subgroup) -> Vec<Subgroup> {
        self.conjugates_in_s(q)
            .iter()
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn is_weakly_closed(&self, q: &Subgroup) -> bool {
        self.conjugates_in_s(q).len() == 1
    }

    fn class_in_s(&self) -> &Vec<Vec<ElemId>> {
        self.inner.class_in_s.get_or_init(|| {
            let s = self.sylow();
            self.group()
                .conjugacy_classes()
                .iter()
                .map(|c| c.iter().copied().filter(|&x| s.contains(x)).collect())
                .collect()
        })
    }

    /// Every `G`-class meeting `Q` meets `S` only inside `Q`. Equivalent to
    /// the definition since a map on `P ≤ Q` lands in `S` exactly when it
    /// does so on each cyclic subgroup of `P`.
    pub fn is_strongly_closed(&self, q: &Subgroup) -> bool {
        self.check(q);
        let classes = self.class_in_s();
        let index = self.group().class_index();
        let mut done = HashSet::new();
        q.elements().all(|x| {
            let c = index[x as usize];
            !done.insert(c) || classes[c as usize].iter().all(|&y| q.contains(y))
        })
    }

    /// The definition verbatim: for every `P ≤ Q` and `g ∈ G` with
    /// `P^g ≤ S`, also `P^g ≤ Q`.
    pub fn is_strongly_closed_brute(&self, q: &Subgroup) -> Result<bool> {
        self.check(q);
        let g = self.group();
        let s = self.sylow();
        for p in subgroups_of(g, q)? {
            for x in g.ids() {
                let c = g.conjugate(&p, x);
                if c.is_subgroup_of(s) && !c.is_subgroup_of(q) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Element-wise sweep over all of `G`, independent of the class cache.
    pub(crate) fn is_strongly_closed_sweep(&self, q: &Subgroup) -> bool {
        let g = self.group();
        let s = self.sylow();
        q.elements().all(|x| {
            g.ids().all(|y| {
                let c = g.conj(x, y);
                !s.contains(c) || q.contains(c)
            })
        })
    }

    /// Strongly closed subgroups, sorted by canonical key. Only normal
    /// subgroups of `S` can qualify.
    pub fn strongly_closed_subgroups(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.inner.strongly_closed.get() {
            return Ok(v.clone());
        }
        let g = self.group();
        let s = self.sylow();
        let v: Vec<Subgroup> = self
            .subgroups_of_s()?
            .iter()
            .filter(|q| g.is_normal_in(q, s) && self.is_strongly_closed(q))
            .cloned()
            .collect();
        let v = Arc::new(v);
        Ok(self.inner.strongly_closed.get_or_init(|| v).clone())
    }

    pub fn is_fully_normalized(&self, q: &Subgroup) -> bool {
        let g = self.group();
        let s = self.sylow();
        let own = g.normalizer_in(s, q).order();
        self.f_conjugates(q)
            .iter()
            .all(|c| g.normalizer_in(s, c).order() <= own)
    }

    pub fn is_f_centric(&self, q: &Subgroup) -> bool {
        let g = self.group();
        let s = self.sylow();
        self.f_conjugates(q)
            .iter()
            .all(|c| g.centralizer_in(s, c).is_subgroup_of(c))
    }

    /// `Aut_F(Q)`, acting on the elements of `Q` in id order.
    pub fn aut_f(&self, q: &Subgroup) -> FiniteGroup {
        self.check(q);
        let g = self.group();
        let n = g.normalizer(q);
        g.induced_automorphisms(q, n.generators(), format!("Aut_F(Q{})", q.order()))
            .expect("automorphism group of a small subgroup")
    }

    /// `Inn(Q)` inside `aut`, which must be `aut_f(q)`.
    fn inner_automorphisms(&self, q: &Subgroup, aut: &FiniteGroup) -> Subgroup {
        let g = self.group();
        let ids: Vec<ElemId> = q
            .generators()
            .iter()
            .map(|&x| {
                aut.id_of(&g.induced_permutation(q, x))
                    .expect("inner map in Aut_F")
            })
            .collect();
        aut.closure(&ids)
    }

    /// `Out_F(Q) = Aut_F(Q)/Inn(Q)` in its regular action on cosets.
    pub fn out_f(&self, q: &Subgroup) -> FiniteGroup {
        let aut = self.aut_f(q);
        let inn = self.inner_automorphisms(q, &aut);
        aut.quotient(&inn)
            .expect("Inn(Q) is normal in Aut_F(Q)")
            .group()
            .relabeled(format!("Out_F(Q{})", q.order()))
    }

    /// `O_p(Out_F(Q)) = 1`.
    pub fn is_radical(&self, q: &Subgroup) -> bool {
        let out = self.out_f(q);
        crate::classify::o_p(&out, self.prime())
            .expect("prime checked at construction")
            .is_trivial()
    }

    /// `Hom_F(P, S)`, deduplicated modulo `C_G(P)`.
    pub fn hom_set(&self, p: &Subgroup) -> FusionMorphismSet {
        let g = self.group();
        let n = g.normalizer(p);
        let c = g.centralizer(p);
        // right transversal of C_G(P) in N_G(P)
        let mut covered = HashSet::new();
        let mut transversal = Vec::new();
        for t in n.elements() {
            if covered.contains(&t) {
                continue;
            }
            covered.extend(c.elements().map(|x| g.mul(x, t)));
            transversal.push(t);
        }
        let mut representatives = Vec::new();
        for (image, x) in self.conjugates_in_s(p).iter() {
            for &t in &transversal {
                representatives.push((g.mul(t, *x), image.clone()));
            }
        }
        FusionMorphismSet {
            source: p.clone(),
            representatives,
        }
    }

    /// Every morphism is induced by `S`: `|Hom_F(P,S)| = |S : C_S(P)|` for
    /// one `P` per `S`-class.
    pub fn is_nilpotent(&self) -> Result<bool> {
        let g = self.group();
        let s = self.sylow();
        for p in self.s_class_representatives()? {
            let by_s = s.order() / g.centralizer_in(s, &p).order();
            if self.hom_set(&p).len() != by_s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Q ⊴ F`: `Q ≤ R` and `Q` is `Aut_F(R)`-invariant for all `R ∈ E*`.
    pub fn is_normal_in_f(&self, q: &Subgroup) -> Result<bool> {
        self.check(q);
        let g = self.group();
        for r in self.e_star()? {
            if !q.is_subgroup_of(&r) {
                return Ok(false);
            }
            let n = g.normalizer(&r);
            if !n.generators().iter().all(|&x| g.is_normalized_by(q, x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Q ⊴ F` from the definition: every morphism `P → S` extends to one on
    /// `PQ` that maps `Q` to itself.
    pub fn is_normal_in_f_direct(&self, q: &Subgroup) -> Result<bool> {
        self.check(q);
        let g = self.group();
        let s = self.sylow();
        for p in self.subgroups_of_s()?.iter() {
            let pq = g.join(p, q);
            let c = g.centralizer(p);
            for x in g.ids() {
                if !g.conjugate(p, x).is_subgroup_of(s) {
                    continue;
                }
                let extends = c.elements().any(|y| {
                    let h = g.mul(y, x);
                    g.is_normalized_by(q, h) && g.conjugate(&pq, h).is_subgroup_of(s)
                });
                if !extends {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `O_p(F)`, the join of all subgroups normal in `F`.
    pub fn o_p_fusion(&self) -> Result<Subgroup> {
        let g = self.group();
        let s = self.sylow();
        let mut normal = Vec::new();
        for q in self.subgroups_of_s()?.iter() {
            if g.is_normal_in(q, s) && self.is_normal_in_f(q)? {
                normal.push(q.clone());
            }
        }
        let join = normal
            .iter()
            .fold(g.trivial_subgroup(), |acc, q| g.join(&acc, q));
        assert!(
            normal.contains(&join),
            "subgroups normal in F are not closed under joins"
        );
        Ok(join)
    }

    /// `N_F(Q)` for fully normalized `Q`.
    pub fn normalizer_fusion_system(&self, q: &Subgroup) -> Result<Subsystem> {
        self.check(q);
        if !self.is_fully_normalized(q) {
            return Err(Error::NotFullyNormalized);
        }
        let g = self.group();
        let n = g.normalizer(q);
        let embedding = g.subgroup_as_group(&n, format!("N_G(Q{})", q.order()));
        let ns = embedding.restrict(&g.normalizer_in(self.sylow(), q))?;
        let system = FusionSystem::with_sylow(embedding.group(), self.prime(), ns)?;
        Ok(Subsystem { system, embedding })
    }

    /// `F/Q` for strongly closed `Q`.
    pub fn quotient_fusion_system(&self, q: &Subgroup) -> Result<QuotientFusionSystem> {
        self.check(q);
        if !self.is_strongly_closed(q) {
            return Err(Error::NotStronglyClosed);
        }
        Ok(QuotientFusionSystem::new(self.clone(), q.clone()))
    }
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "F_S({}) at p = {} with |S| = {}",
            self.group().label(),
            self.prime(),
            self.sylow().order()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        affine_model, alternating, cyclic, dihedral, extraspecial_p3_exponent_p, symmetric, HSpec,
    };
    use crate::perm::Permutation;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s4_system() -> FusionSystem {
        fusion_system(&symmetric(4).unwrap(), 2).unwrap()
    }

    fn sub(f: &FusionSystem, gens: &[Permutation]) -> Subgroup {
        f.group().subgroup_from_generators(gens).unwrap()
    }

    fn klein(f: &FusionSystem) -> Subgroup {
        sub(
            f,
            &[perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])],
        )
    }

    fn centre(f: &FusionSystem) -> Subgroup {
        f.group().center_of(f.sylow())
    }

    #[test]
    fn sylow_choice() {
        let f = s4_system();
        assert_eq!(f.sylow().order(), 8);
        let f = fusion_system(&cyclic(6).unwrap(), 5).unwrap();
        assert!(f.sylow().is_trivial());
        let t = f.sylow().clone();
        assert!(f.is_weakly_closed(&t) && f.is_strongly_closed(&t));
        assert!(f.is_nilpotent().unwrap());
        assert!(fusion_system(&cyclic(6).unwrap(), 4).is_err());
    }

    #[test]
    fn conjugates_and_closure() {
        let f = s4_system();
        let z = centre(&f);
        assert_eq!(f.f_conjugates(&z).len(), 3);
        assert!(!f.is_weakly_closed(&z));
        let s = f.sylow().clone();
        assert_eq!(f.f_conjugates(&s), vec![s.clone()]);
        assert!(f.is_weakly_closed(&s));
        let v = klein(&f);
        assert_eq!(f.f_conjugates(&v), vec![v.clone()]);
        assert!(f.is_strongly_closed(&v));
        assert!(!f.is_strongly_closed(&z));
        assert!(f.is_strongly_closed(&f.group().trivial_subgroup()));
    }

    #[test]
    fn strong_closure_matches_brute_force() {
        for f in [
            s4_system(),
            fusion_system(&alternating(5).unwrap(), 2).unwrap(),
            fusion_system(&symmetric(5).unwrap(), 2).unwrap(),
        ] {
            for q in f.subgroups_of_s().unwrap().iter() {
                let fast = f.is_strongly_closed(q);
                assert_eq!(fast, f.is_strongly_closed_brute(q).unwrap());
                assert_eq!(fast, f.is_strongly_closed_sweep(q));
                if fast {
                    assert!(f.is_weakly_closed(q));
                    assert!(f.group().is_normal_in(q, f.sylow()));
                }
            }
        }
    }

    #[test]
    fn affine_model_s1_not_weakly_closed() {
        let m = affine_model(3, HSpec::SL2).unwrap();
        let f = FusionSystem::with_sylow(&m.group, 3, m.sylow.clone()).unwrap();
        assert!(!f.is_weakly_closed(&m.s1));
    }

    #[test]
    fn centric_and_normalized() {
        let f = s4_system();
        let s = f.sylow().clone();
        assert!(f.is_fully_normalized(&s) && f.is_f_centric(&s));
        assert!(f.is_f_centric(&klein(&f)));
        assert!(!f.is_f_centric(&centre(&f)));
        assert!(f.is_fully_normalized(&centre(&f)));
    }

    #[test]
    fn automorphism_groups() {
        let f = s4_system();
        let v = klein(&f);
        assert_eq!(f.aut_f(&v).order(), 6);
        assert_eq!(f.out_f(&v).order(), 6);
        let s = f.sylow().clone();
        assert_eq!(f.aut_f(&s).order(), 4);
        assert_eq!(f.out_f(&s).order(), 1);
        assert!(f.is_radical(&v));
        assert!(f.is_radical(&centre(&f)));
        let other = f
            .subgroups_of_s()
            .unwrap()
            .iter()
            .find(|q| {
                q.order() == 4
                    && **q != v
                    && f.group().is_abelian_subgroup(q)
                    && !crate::classify::is_cyclic_subgroup(f.group(), q)
            })
            .cloned()
            .unwrap();
        assert_eq!(f.out_f(&other).order(), 2);
        assert!(!f.is_radical(&other));
    }

    #[test]
    fn morphism_sets() {
        let f = s4_system();
        let v = klein(&f);
        let h = f.hom_set(&v);
        assert_eq!(h.len(), 6);
        let z = centre(&f);
        // three targets, each reached by a single map
        assert_eq!(f.hom_set(&z).len(), 3);
        assert!(!f.is_nilpotent().unwrap());
        for s in [
            dihedral(8).unwrap(),
            cyclic(9).unwrap(),
            extraspecial_p3_exponent_p(3).unwrap(),
        ] {
            let p = if s.order() == 8 { 2 } else { 3 };
            assert!(fusion_system(&s, p).unwrap().is_nilpotent().unwrap());
        }
    }

    #[test]
    fn normal_in_f() {
        let f = s4_system();
        assert_eq!(f.o_p_fusion().unwrap(), klein(&f));
        for q in f.subgroups_of_s().unwrap().iter() {
            assert_eq!(
                f.is_normal_in_f(q).unwrap(),
                f.is_normal_in_f_direct(q).unwrap()
            );
        }
        let d = dihedral(8).unwrap();
        let fd = fusion_system(&d, 2).unwrap();
        assert_eq!(fd.o_p_fusion().unwrap(), d.whole());
    }

    #[test]
    fn normalizer_subsystems() {
        let f = s4_system();
        let n = f.normalizer_fusion_system(&klein(&f)).unwrap();
        assert_eq!(n.system.group().order(), 24);
        let n = f.normalizer_fusion_system(&centre(&f)).unwrap();
        assert_eq!(n.system.group().order(), 8);
        assert!(n.system.is_nilpotent().unwrap());
        let s = f.sylow().clone();
        let n = f.normalizer_fusion_system(&s).unwrap();
        assert_eq!(n.system.sylow().order(), 8);
        for q in f.subgroups_of_s().unwrap().iter() {
            if !f.is_fully_normalized(q) {
                assert!(matches!(
                    f.normalizer_fusion_system(q),
                    Err(Error::NotFullyNormalized)
                ));
            }
        }
    }
}
