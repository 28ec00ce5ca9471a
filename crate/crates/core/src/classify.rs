//! Group-theoretic predicates and characteristic subgroups.
//!
//! Whole-group predicates take a [`FiniteGroup`]; to apply one to a
//! subgroup, view it through [`FiniteGroup::subgroup_as_group`].

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, Subgroup, IDENTITY};
use crate::lattice::{
    all_subgroups, chief_series, chief_series_through, frattini_p_group, is_p_power, is_prime,
    maximal_subgroups, normal_subgroups, p_part, prime_divisors, sylow_subgroup, sylow_subgroup_of,
};
use crate::perm::lcm;

pub fn is_abelian(g: &FiniteGroup) -> bool {
    g.is_abelian_subgroup(&g.whole())
}

pub fn is_cyclic_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.elements().any(|x| g.element_order(x) == h.order() as u64)
}

pub fn is_cyclic(g: &FiniteGroup) -> bool {
    is_cyclic_subgroup(g, &g.whole())
}

pub fn exponent_of(g: &FiniteGroup, h: &Subgroup) -> u64 {
    h.elements().fold(1, |acc, x| lcm(acc, g.element_order(x)))
}

pub fn exponent(g: &FiniteGroup) -> u64 {
    exponent_of(g, &g.whole())
}

pub fn is_elementary_abelian_subgroup(g: &FiniteGroup, h: &Subgroup, p: u64) -> bool {
    g.is_abelian_subgroup(h)
        && h.elements()
            .all(|x| x == IDENTITY || g.element_order(x) == p)
}

pub fn is_elementary_abelian(g: &FiniteGroup, p: u64) -> bool {
    is_elementary_abelian_subgroup(g, &g.whole(), p)
}

/// Some cyclic normal `N` with `G/N` cyclic.
pub fn is_metacyclic(g: &FiniteGroup) -> Result<bool> {
    let n = g.order();
    for k in normal_subgroups(g)?.iter() {
        if !is_cyclic_subgroup(g, k) {
            continue;
        }
        let index = (n / k.order()) as u64;
        if g.ids().any(|x| g.order_modulo(x, k) == index) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn require_p_group(h: &Subgroup, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_p_power(h.order(), p) {
        return Err(Error::NotPGroup {
            p,
            order: h.order(),
        });
    }
    Ok(())
}

/// `Z(S) = S' = Φ(S)` of order `p`.
pub fn is_extraspecial(g: &FiniteGroup, s: &Subgroup, p: u64) -> Result<bool> {
    require_p_group(s, p)?;
    let z = g.center_of(s);
    if z.order() as u64 != p {
        return Ok(false);
    }
    Ok(g.derived_subgroup_of(s) == z && frattini_p_group(g, s, p) == z)
}

pub fn is_p_closed_subgroup(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<bool> {
    let s = sylow_subgroup_of(g, h, p)?;
    Ok(g.is_normal_in(&s, h))
}

pub fn is_p_closed(g: &FiniteGroup, p: u64) -> Result<bool> {
    Ok(g.is_normal(&sylow_subgroup(g, p)?))
}

/// Has a normal p-complement.
pub fn is_p_nilpotent(g: &FiniteGroup, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = g.order() / p_part(g.order(), p);
    Ok(normal_subgroups(g)?.iter().any(|n| n.order() == target))
}

pub fn is_nilpotent_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    for p in prime_divisors(h.order()) {
        if !is_p_closed_subgroup(g, h, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_nilpotent(g: &FiniteGroup) -> Result<bool> {
    is_nilpotent_subgroup(g, &g.whole())
}

pub fn chief_factor_orders(g: &FiniteGroup) -> Result<Vec<usize>> {
    Ok(chief_series(g)?.factor_orders)
}

pub fn is_solvable(g: &FiniteGroup) -> Result<bool> {
    Ok(chief_factor_orders(g)?
        .iter()
        .all(|&f| prime_divisors(f).len() == 1))
}

/// Every chief factor is a p-group or a p'-group.
pub fn is_p_solvable(g: &FiniteGroup, p: u64) -> Result<bool> {
    Ok(chief_factor_orders(g)?
        .iter()
        .all(|&f| is_p_power(f, p) || f % p as usize != 0))
}

/// Every chief factor of order divisible by `p` has order `p`, which also
/// makes `G` p-solvable.
pub fn is_p_supersolvable(g: &FiniteGroup, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(chief_factor_orders(g)?
        .iter()
        .all(|&f| f % p as usize != 0 || f == p as usize))
}

pub fn is_supersolvable_group(g: &FiniteGroup) -> Result<bool> {
    Ok(chief_factor_orders(g)?.iter().all(|&f| is_prime(f as u64)))
}

pub fn is_minimal_nonnilpotent(g: &FiniteGroup) -> Result<bool> {
    if is_nilpotent(g)? {
        return Ok(false);
    }
    for h in all_subgroups(g)?.iter() {
        if h.order() < g.order() && !is_nilpotent_subgroup(g, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalSense {
    /// All proper subgroups p-closed.
    SubgroupsOnly,
    /// Additionally all proper quotients p-closed.
    SubgroupsAndQuotients,
}

pub fn is_minimal_non_p_closed(g: &FiniteGroup, p: u64, sense: MinimalSense) -> Result<bool> {
    let s = sylow_subgroup(g, p)?;
    if g.is_normal(&s) {
        return Ok(false);
    }
    for h in all_subgroups(g)?.iter() {
        if h.order() < g.order() && !is_p_closed_subgroup(g, h, p)? {
            return Ok(false);
        }
    }
    if sense == MinimalSense::SubgroupsAndQuotients {
        // G/N is p-closed iff SN is normal in G
        for n in normal_subgroups(g)?.iter() {
            if !n.is_trivial() && !g.is_normal(&g.join(&s, n)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn abelian_maximal_subgroups(g: &FiniteGroup, s: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(maximal_subgroups(g, s)?
        .into_iter()
        .filter(|m| g.is_abelian_subgroup(m))
        .collect())
}

/// A nonabelian maximal subgroup exists and every subgroup of index `p^2`
/// is abelian.
pub fn is_a2_group(g: &FiniteGroup, s: &Subgroup, p: u64) -> Result<bool> {
    require_p_group(s, p)?;
    if s.order() < (p * p) as usize {
        return Ok(false);
    }
    let maxes = maximal_subgroups(g, s)?;
    if maxes.iter().all(|m| g.is_abelian_subgroup(m)) {
        return Ok(false);
    }
    for m in &maxes {
        if g.is_abelian_subgroup(m) {
            continue;
        }
        // an abelian maximal subgroup has only abelian subgroups
        for k in maximal_subgroups(g, m)? {
            if !g.is_abelian_subgroup(&k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evidence for pronormality: for each conjugate `H^g` (one `g` per coset of
/// `N_G(H)`), an element `c ∈ <H, H^g>` with `H^c = H^g`.
#[derive(Clone, Debug)]
pub struct PronormalityWitness {
    pub subject: Subgroup,
    pub supplement: Option<Subgroup>,
    pub table: Vec<(ElemId, ElemId)>,
    /// First conjugator for which no element of `<H, H^g>` works.
    pub failure: Option<ElemId>,
}

impl PronormalityWitness {
    pub fn is_pronormal(&self) -> bool {
        self.failure.is_none()
    }

    /// Re-checks every table entry.
    pub fn validate(&self, g: &FiniteGroup) -> bool {
        let h = &self.subject;
        self.table.iter().all(|&(x, c)| {
            let target = g.conjugate(h, x);
            g.join(h, &target).contains(c) && g.conjugate(h, c) == target
        })
    }
}

pub fn is_pronormal(g: &FiniteGroup, h: &Subgroup) -> PronormalityWitness {
    let mut table = Vec::new();
    let mut failure = None;
    for (target, x) in g.conjugates_with_elements(h) {
        if target == *h {
            table.push((x, IDENTITY));
            continue;
        }
        let j = g.join(h, &target);
        let found = j.elements().find(|&c| g.conjugate(h, c) == target);
        match found {
            Some(c) => table.push((x, c)),
            None => {
                failure = Some(x);
                break;
            }
        }
    }
    PronormalityWitness {
        subject: h.clone(),
        supplement: None,
        table,
        failure,
    }
}

/// `G = HK` with `H ∩ K` pronormal. Returns the supplement `K` found, or
/// `None` when the search proves there is none. A supplied witness that
/// does not work is an error.
pub fn is_weakly_pronormal(
    g: &FiniteGroup,
    h: &Subgroup,
    witness: Option<&Subgroup>,
) -> Result<Option<Subgroup>> {
    if let Some(k) = witness {
        if g.product_size(h, k) != g.order() {
            return Err(Error::WitnessFails(format!(
                "|HK| = {} but |G| = {}",
                g.product_size(h, k),
                g.order()
            )));
        }
        if !is_pronormal(g, &g.intersection(h, k)).is_pronormal() {
            return Err(Error::WitnessFails("H ∩ K is not pronormal".into()));
        }
        return Ok(Some(k.clone()));
    }
    if is_pronormal(g, h).is_pronormal() {
        return Ok(Some(g.whole()));
    }
    let mut cands: Vec<Subgroup> = all_subgroups(g)?
        .iter()
        .filter(|k| k.order() * h.order() >= g.order())
        .cloned()
        .collect();
    cands.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    for k in cands {
        if g.product_size(h, &k) == g.order()
            && is_pronormal(g, &g.intersection(h, &k)).is_pronormal()
        {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `G = UK` with `U ∩ K ≤ Core_G(U)`; returns such a `K`.
pub fn is_c_supplemented(g: &FiniteGroup, u: &Subgroup) -> Result<Option<Subgroup>> {
    if g.is_normal(u) {
        return Ok(Some(g.whole()));
    }
    let core = g.normal_core(u);
    let mut cands: Vec<Subgroup> = all_subgroups(g)?
        .iter()
        .filter(|k| k.order() * u.order() >= g.order())
        .cloned()
        .collect();
    cands.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(cands
        .into_iter()
        .find(|k| g.product_size(u, k) == g.order() && g.intersection(u, k).is_subgroup_of(&core)))
}

/// Largest normal subgroup all of whose chief factors below it are cyclic.
pub fn supersolvable_hypercentre(g: &FiniteGroup) -> Result<Subgroup> {
    let mut good = Vec::new();
    for n in normal_subgroups(g)?.iter() {
        let cs = chief_series_through(g, std::slice::from_ref(n))?;
        let pos = cs
            .members
            .iter()
            .position(|m| m == n)
            .expect("anchor in series");
        if cs.factor_orders[..pos].iter().all(|&f| is_prime(f as u64)) {
            good.push(n.clone());
        }
    }
    let top = good
        .iter()
        .max_by_key(|n| n.order())
        .expect("the trivial subgroup qualifies")
        .clone();
    assert!(
        good.iter().all(|n| n.is_subgroup_of(&top)),
        "hypercentre candidates are not closed under joins"
    );
    Ok(top)
}

/// Largest normal p-subgroup.
pub fn o_p(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    Ok(g.normal_core(&sylow_subgroup(g, p)?))
}

/// Largest normal p'-subgroup.
pub fn o_p_prime(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    Ok(normal_subgroups(g)?
        .iter()
        .filter(|n| n.order() % p as usize != 0)
        .max_by_key(|n| n.order())
        .expect("trivial subgroup")
        .clone())
}

/// `O^{p'}(G)`, generated by the p-elements.
pub fn o_p_prime_residual(g: &FiniteGroup, p: u64) -> Subgroup {
    let mut h = g.trivial_subgroup();
    for x in g.ids() {
        if !h.contains(x) && g.is_p_element(x, p) {
            h = g.extend(&h, &[x]);
        }
    }
    h
}

/// Outcome of the decomposition `A = A_1 × A_2` with `A_1 = C_A(H)` and
/// `A_2 = [H, A]` for `H = O^{p'}(G)`.
#[derive(Clone, Debug)]
pub struct OliverDecomposition {
    pub a1: Subgroup,
    pub a2: Subgroup,
    pub residual_order: usize,
    pub invariant: bool,
    pub direct: bool,
    pub a2_is_cp_squared: bool,
}

impl OliverDecomposition {
    pub fn conclusion_holds(&self) -> bool {
        self.invariant && self.direct && self.a2_is_cp_squared
    }
}

/// `A` is an abelian p-group and `aut` a group of automorphisms of `A`
/// permuting the points `1..=|A|` that stand for the elements of `A`.
pub fn oliver_decomposition(
    a: &FiniteGroup,
    aut: &FiniteGroup,
    p: u64,
) -> Result<OliverDecomposition> {
    let fail = |m: String| Err(Error::HypothesisViolated(m));
    if !is_abelian(a) || !is_p_power(a.order(), p) {
        return fail("A is not an abelian p-group".into());
    }
    if aut.degree() != a.order() {
        return Err(Error::DegreeMismatch {
            expected: a.order(),
            found: aut.degree(),
        });
    }
    for alpha in aut.generators() {
        let img = alpha.raw();
        for x in a.ids() {
            for &s in a.generator_ids() {
                if img[a.mul(x, s) as usize] != a.mul(img[x as usize], img[s as usize]) {
                    return Err(Error::NotAutomorphism(alpha.to_string()));
                }
            }
        }
    }
    let apply = |alpha: ElemId, x: ElemId| aut.element(alpha).raw()[x as usize];
    // [x, A] is the image of a ↦ a^-1 α(a)
    let commutator_with_a = |alpha: ElemId, hs: &[ElemId]| {
        let mut gens = Vec::new();
        for &h in hs.iter().chain(std::iter::once(&alpha)) {
            for &s in a.generator_ids() {
                gens.push(a.mul(a.inv(s), apply(h, s)));
            }
        }
        gens
    };
    let sp = sylow_subgroup(aut, p)?;
    if sp.order() as u64 != p {
        return fail(format!(
            "Sylow {p}-subgroups of G have order {}",
            sp.order()
        ));
    }
    if aut.is_normal(&sp) {
        return fail(format!("Sylow {p}-subgroups of G are normal"));
    }
    for x in aut.ids() {
        if aut.element_order(x) == p {
            let c = a.closure(&commutator_with_a(x, &[]));
            if c.order() as u64 != p {
                return fail(format!(
                    "|[x, A]| = {} for an element of order {p}",
                    c.order()
                ));
            }
        }
    }
    let h = o_p_prime_residual(aut, p);
    let h_elems: Vec<ElemId> = h.elements().collect();
    let a1 = {
        let mut fixed = fixedbitset::FixedBitSet::with_capacity(a.order());
        for x in a.ids() {
            if h.generators().iter().all(|&al| apply(al, x) == x) {
                fixed.insert(x as usize);
            }
        }
        a.subgroup_from_set(fixed)
    };
    let a2 = {
        let mut gens = Vec::new();
        for &al in &h_elems {
            gens.extend(commutator_with_a(al, &[]));
        }
        gens.retain(|&x| x != IDENTITY);
        a.closure(&gens)
    };
    let stable = |k: &Subgroup| {
        aut.generator_ids()
            .iter()
            .all(|&al| k.generators().iter().all(|&x| k.contains(apply(al, x))))
    };
    let a2_is_cp_squared = a2.order() as u64 == p * p
        && is_elementary_abelian_subgroup(a, &a2, p)
        && !is_cyclic_subgroup(a, &a2);
    Ok(OliverDecomposition {
        invariant: stable(&a1) && stable(&a2),
        direct: a.intersection(&a1, &a2).is_trivial() && a1.order() * a2.order() == a.order(),
        a2_is_cp_squared,
        residual_order: h.order(),
        a1,
        a2,
    })
}
