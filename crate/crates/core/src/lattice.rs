//! Subgroup lattices: full enumeration, normal subgroups, chief series,
//! maximal and Frattini subgroups, Sylow subgroups.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, Subgroup};

const DEFAULT_ENUMERATION_BOUND: usize = 2000;
const NORMAL_SUBGROUP_GUARD: usize = 20_000;

static ENUMERATION_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_ENUMERATION_BOUND);

/// Largest order whose complete subgroup lattice will be enumerated.
pub fn enumeration_bound() -> usize {
    ENUMERATION_BOUND.load(Ordering::Relaxed)
}

pub fn set_enumeration_bound(bound: usize) {
    ENUMERATION_BOUND.store(bound, Ordering::Relaxed);
}

/// An ascending chain of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupChain {
    pub members: Vec<Subgroup>,
    pub factor_orders: Vec<usize>,
    pub chief: bool,
}

impl SubgroupChain {
    pub fn new(members: Vec<Subgroup>, chief: bool) -> Self {
        let factor_orders = members
            .windows(2)
            .map(|w| w[1].order() / w[0].order())
            .collect();
        SubgroupChain {
            members,
            factor_orders,
            chief,
        }
    }

    /// `members[i+1] / members[i]` as a permutation group.
    pub fn factor_group(&self, g: &FiniteGroup, i: usize) -> Result<FiniteGroup> {
        let top = g.subgroup_as_group(&self.members[i + 1], "factor");
        let bottom = top.restrict(&self.members[i])?;
        Ok(top.group().quotient(&bottom)?.group().clone())
    }
}

pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut q = 1;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn is_p_power(n: usize, p: u64) -> bool {
    p_part(n, p) == n
}

fn check_bound(h: &Subgroup, what: &str) -> Result<()> {
    let bound = enumeration_bound();
    if h.order() > bound {
        return Err(Error::EnumerationBoundExceeded {
            what: what.to_string(),
            order: h.order(),
            bound,
        });
    }
    Ok(())
}

/// One generator per cyclic subgroup of `h`, in id order of the smallest
/// generator.
fn cyclic_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<ElemId> {
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut out = Vec::new();
    for x in h.elements() {
        if covered.contains(x as usize) || x == 0 {
            continue;
        }
        out.push(x);
        let ord = g.element_order(x);
        for k in 1..ord {
            if crate::perm::gcd(k, ord) == 1 {
                covered.insert(g.pow(x, k) as usize);
            }
        }
    }
    out
}

/// Every subgroup of `h`, sorted by canonical key.
///
/// Layered cyclic extension over conjugacy-class representatives: each
/// subgroup `L` arises as `<M, x>` from a maximal subgroup `M`, so extending
/// one representative per class by every cyclic generator is exhaustive.
pub fn subgroups_of(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    check_bound(h, "subgroup lattice")?;
    let gens = cyclic_generators(g, h);
    let triv = g.trivial_subgroup();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    seen.insert(triv.clone());
    let mut frontier = vec![triv];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for base in &frontier {
            let mut covered = base.members().clone();
            for &x in &gens {
                if covered.contains(x as usize) {
                    continue;
                }
                let k = g.extend(base, &[x]);
                // at prime index every y in k outside base gives k again
                if is_prime((k.order() / base.order()) as u64) {
                    covered.union_with(k.members());
                }
                if seen.contains(&k) {
                    continue;
                }
                for c in g.conjugates_under(&k, h.generators()) {
                    seen.insert(c);
                }
                next.push(k);
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

pub fn all_subgroups(g: &FiniteGroup) -> Result<Arc<Vec<Subgroup>>> {
    let memo = &g.lattice_memo().all_subgroups;
    if let Some(v) = memo.get() {
        return Ok(v.clone());
    }
    let v = Arc::new(subgroups_of(g, &g.whole())?);
    Ok(memo.get_or_init(|| v).clone())
}

/// Subgroups of `h` of order exactly `k`.
pub fn subgroups_of_order(g: &FiniteGroup, h: &Subgroup, k: usize) -> Result<Vec<Subgroup>> {
    if h.order() % k != 0 {
        return Err(Error::Precondition(format!(
            "{k} does not divide {}",
            h.order()
        )));
    }
    let all = if h.order() == g.order() {
        all_subgroups(g)?.as_ref().clone()
    } else {
        subgroups_of(g, h)?
    };
    Ok(all.into_iter().filter(|s| s.order() == k).collect())
}

fn p_of(h: &Subgroup) -> Option<u64> {
    match prime_divisors(h.order()).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

fn require_p_group(h: &Subgroup, p: Option<u64>) -> Result<u64> {
    if h.is_trivial() {
        return p.ok_or(Error::NotPGroup { p: 0, order: 1 });
    }
    match (p_of(h), p) {
        (Some(q), None) => Ok(q),
        (Some(q), Some(p)) if q == p => Ok(q),
        (_, p) => Err(Error::NotPGroup {
            p: p.unwrap_or(0),
            order: h.order(),
        }),
    }
}

/// `<[S,S], S^p>`, the Frattini subgroup of a p-group.
pub fn frattini_p_group(g: &FiniteGroup, s: &Subgroup, p: u64) -> Subgroup {
    let mut xs: Vec<ElemId> = s.generators().iter().map(|&x| g.pow(x, p)).collect();
    for (i, &x) in s.generators().iter().enumerate() {
        for &y in &s.generators()[i + 1..] {
            xs.push(g.commutator(x, y));
        }
    }
    xs.retain(|&x| x != 0);
    g.normal_closure_in(s, &xs)
}

/// Index-p subgroups of the p-group `s`, sorted.
pub fn maximal_subgroups(g: &FiniteGroup, s: &Subgroup) -> Result<Vec<Subgroup>> {
    if s.is_trivial() {
        return Ok(Vec::new());
    }
    let p = require_p_group(s, None)?;
    let phi = frattini_p_group(g, s, p);
    let target = s.order() / p as usize;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut out = Vec::new();
    let mut frontier = vec![phi];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for base in &frontier {
            if base.order() == target {
                out.push(base.clone());
                continue;
            }
            let mut covered = base.members().clone();
            for x in s.elements() {
                if covered.contains(x as usize) {
                    continue;
                }
                let k = g.extend(base, &[x]);
                covered.union_with(k.members());
                if k.order() < s.order() && seen.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    if out.is_empty() {
        // s/Φ cyclic of order p
        out.push(frattini_p_group(g, s, p));
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len() as u64 % p, 1);
    Ok(out)
}

/// Maximal subgroups of an arbitrary `h`, from the full lattice.
pub fn maximal_subgroups_general(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let all = subgroups_of(g, h)?;
    let proper: Vec<&Subgroup> = all.iter().filter(|k| k.order() < h.order()).collect();
    Ok(proper
        .iter()
        .filter(|k| !proper.iter().any(|m| k.is_proper_subgroup_of(m)))
        .map(|k| (*k).clone())
        .collect())
}

/// Intersection of all maximal subgroups of `h`. For p-groups the
/// commutator/power description is used and, when the lattice is small
/// enough, checked against the definition.
pub fn frattini_subgroup_of(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    if h.is_trivial() {
        return Ok(h.clone());
    }
    let by_definition = |g: &FiniteGroup| -> Result<Subgroup> {
        let maxes = maximal_subgroups_general(g, h)?;
        Ok(maxes
            .iter()
            .skip(1)
            .fold(maxes[0].clone(), |acc, m| g.intersection(&acc, m)))
    };
    match p_of(h) {
        Some(p) => {
            let fast = frattini_p_group(g, h, p);
            if h.order() <= enumeration_bound().min(256) {
                let slow = by_definition(g)?;
                assert_eq!(fast, slow, "Frattini paths disagree");
            }
            Ok(fast)
        }
        None => by_definition(g),
    }
}

pub fn frattini_subgroup(g: &FiniteGroup) -> Result<Subgroup> {
    frattini_subgroup_of(g, &g.whole())
}

/// Normal subgroups of G: every one is a join of normal closures of single
/// conjugacy classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Result<Arc<Vec<Subgroup>>> {
    let memo = &g.lattice_memo().normal_subgroups;
    if let Some(v) = memo.get() {
        return Ok(v.clone());
    }
    let whole = g.whole();
    let mut principal: Vec<Subgroup> = Vec::new();
    for class in g.conjugacy_classes().iter().skip(1) {
        let n = g.normal_closure_in(&whole, &class[..1]);
        if !principal.contains(&n) {
            principal.push(n);
        }
    }
    let mut found: HashSet<Subgroup> = HashSet::new();
    found.insert(g.trivial_subgroup());
    let mut list = vec![g.trivial_subgroup()];
    for p in &principal {
        let snapshot = list.clone();
        for n in &snapshot {
            if p.is_subgroup_of(n) {
                continue;
            }
            let j = g.join(n, p);
            if found.insert(j.clone()) {
                list.push(j);
                if list.len() > NORMAL_SUBGROUP_GUARD {
                    return Err(Error::EnumerationBoundExceeded {
                        what: "normal subgroups".into(),
                        order: g.order(),
                        bound: NORMAL_SUBGROUP_GUARD,
                    });
                }
            }
        }
    }
    list.sort();
    let v = Arc::new(list);
    Ok(memo.get_or_init(|| v).clone())
}

pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let all = normal_subgroups(g)?;
    let nontrivial: Vec<&Subgroup> = all.iter().filter(|n| !n.is_trivial()).collect();
    Ok(nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.is_proper_subgroup_of(n)))
        .map(|n| (*n).clone())
        .collect())
}

pub fn chief_series(g: &FiniteGroup) -> Result<SubgroupChain> {
    chief_series_through(g, &[])
}

/// A chief series containing every anchor. At each step the smallest
/// (by canonical key) minimal normal subgroup above the current member and
/// below the next anchor is taken.
pub fn chief_series_through(g: &FiniteGroup, anchors: &[Subgroup]) -> Result<SubgroupChain> {
    if anchors.iter().any(|a| !g.is_normal(a)) {
        return Err(Error::AnchorsNotNormal);
    }
    let mut stops: Vec<Subgroup> = anchors.to_vec();
    stops.sort_by_key(|a| a.order());
    for w in stops.windows(2) {
        if !w[0].is_subgroup_of(&w[1]) {
            return Err(Error::AnchorsNotChain);
        }
    }
    stops.push(g.whole());
    let normals = normal_subgroups(g)?;
    let mut members = vec![g.trivial_subgroup()];
    for stop in &stops {
        loop {
            let cur = members.last().unwrap().clone();
            if cur == *stop {
                break;
            }
            let cands: Vec<&Subgroup> = normals
                .iter()
                .filter(|m| cur.is_proper_subgroup_of(m) && m.is_subgroup_of(stop))
                .collect();
            let next = cands
                .iter()
                .filter(|m| !cands.iter().any(|k| k.is_proper_subgroup_of(m)))
                .min()
                .expect("stop itself is a candidate");
            members.push((*next).clone());
        }
    }
    Ok(SubgroupChain::new(members, true))
}

/// Sylow p-subgroup of `h`, grown one p-element of the normalizer at a time.
pub fn sylow_subgroup_of(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(h.order(), p);
    let mut s = g.trivial_subgroup();
    while s.order() < target {
        let n = g.normalizer_in(h, &s);
        let x = n
            .elements()
            .find(|&x| !s.contains(x) && g.is_p_element(x, p))
            .expect("a p-subgroup below Sylow order grows inside its normalizer");
        s = g.extend(&s, &[x]);
    }
    Ok(s)
}

pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    sylow_subgroup_of(g, &g.whole(), p)
}
