use std::collections::HashSet;

use crate::error::Result;
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::lattice::SubgroupChain;

use super::FusionSystem;

/// What the chain search needs from a fusion system: the group that owns
/// the subgroups of `S`, `S` itself, and strong closure.
pub trait ClosureSystem {
    fn owner(&self) -> &FiniteGroup;
    fn top(&self) -> Subgroup;
    /// Strongly closed subgroups sorted by canonical key.
    fn closed_subgroups(&self) -> Result<Vec<Subgroup>>;
    /// Strong closure re-derived from the definition, without caches.
    fn is_strongly_closed_from_scratch(&self, q: &Subgroup) -> bool;

    /// A chain `1 = S_0 < .. < S_m = S` of strongly closed subgroups with
    /// cyclic factors, passing through `forced` when given. `None` means no
    /// such chain exists.
    fn supersolvability_certificate(
        &self,
        forced: Option<&Subgroup>,
    ) -> Result<Option<SupersolvabilityCertificate>> {
        let g = self.owner();
        let closed = self.closed_subgroups()?;
        let bottom = g.trivial_subgroup();
        let top = self.top();
        let mut failed = HashSet::new();
        let members = match forced {
            Some(q) if !closed.contains(q) => return Ok(None),
            Some(q) => {
                let Some(mut lower) = search(g, &closed, &bottom, q, &mut failed) else {
                    return Ok(None);
                };
                failed.clear();
                let Some(upper) = search(g, &closed, q, &top, &mut failed) else {
                    return Ok(None);
                };
                lower.extend(upper.into_iter().skip(1));
                lower
            }
            None => match search(g, &closed, &bottom, &top, &mut failed) {
                Some(v) => v,
                None => return Ok(None),
            },
        };
        let step_generators = members
            .windows(2)
            .map(|w| cyclic_witness(g, &w[0], &w[1]).expect("search only takes cyclic steps"))
            .collect();
        Ok(Some(SupersolvabilityCertificate {
            strongly_closed: vec![true; members.len()],
            chain: SubgroupChain::new(members, false),
            step_generators,
        }))
    }

    /// A chain `1 = Q_0 < .. < Q_n = q` of strongly closed subgroups with
    /// cyclic factors.
    fn cyclic_chain_below(&self, q: &Subgroup) -> Result<Option<Vec<Subgroup>>> {
        let closed = self.closed_subgroups()?;
        if !closed.contains(q) {
            return Ok(None);
        }
        let g = self.owner();
        let mut failed = HashSet::new();
        Ok(search(g, &closed, &g.trivial_subgroup(), q, &mut failed))
    }

    /// Re-checks a certificate from scratch.
    fn validate_certificate(&self, cert: &SupersolvabilityCertificate) -> bool {
        let g = self.owner();
        let m = &cert.chain.members;
        if m.is_empty()
            || !m[0].is_trivial()
            || m[m.len() - 1] != self.top()
            || cert.step_generators.len() + 1 != m.len()
        {
            return false;
        }
        let steps_ok = m.windows(2).zip(&cert.step_generators).all(|(w, &x)| {
            w[0].is_proper_subgroup_of(&w[1])
                && g.is_normal_in(&w[0], &w[1])
                && w[1].contains(x)
                && g.order_modulo(x, &w[0]) as usize == w[1].order() / w[0].order()
        });
        steps_ok && m.iter().all(|q| self.is_strongly_closed_from_scratch(q))
    }
}

/// Chain of strongly closed subgroups with cyclic factors, plus per step an
/// element generating the factor.
#[derive(Clone, Debug)]
pub struct SupersolvabilityCertificate {
    pub chain: SubgroupChain,
    pub strongly_closed: Vec<bool>,
    pub step_generators: Vec<ElemId>,
}

fn cyclic_witness(g: &FiniteGroup, lower: &Subgroup, upper: &Subgroup) -> Option<ElemId> {
    let index = (upper.order() / lower.order()) as u64;
    upper
        .elements()
        .find(|&x| g.order_modulo(x, lower) == index)
}

/// Depth-first, smallest canonical key first, remembering dead ends.
fn search(
    g: &FiniteGroup,
    closed: &[Subgroup],
    from: &Subgroup,
    to: &Subgroup,
    failed: &mut HashSet<Subgroup>,
) -> Option<Vec<Subgroup>> {
    if from == to {
        return Some(vec![to.clone()]);
    }
    if failed.contains(from) {
        return None;
    }
    for c in closed {
        if !from.is_proper_subgroup_of(c) || !c.is_subgroup_of(to) {
            continue;
        }
        if cyclic_witness(g, from, c).is_none() {
            continue;
        }
        if let Some(mut rest) = search(g, closed, c, to, failed) {
            rest.insert(0, from.clone());
            return Some(rest);
        }
    }
    failed.insert(from.clone());
    None
}

impl ClosureSystem for FusionSystem {
    fn owner(&self) -> &FiniteGroup {
        self.group()
    }

    fn top(&self) -> Subgroup {
        self.sylow().clone()
    }

    fn closed_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self.strongly_closed_subgroups()?.to_vec())
    }

    fn is_strongly_closed_from_scratch(&self, q: &Subgroup) -> bool {
        q.is_subgroup_of(self.sylow()) && self.is_strongly_closed_sweep(q)
    }
}

impl FusionSystem {
    pub fn is_supersolvable(&self) -> Result<Option<SupersolvabilityCertificate>> {
        self.supersolvability_certificate(None)
    }
}
