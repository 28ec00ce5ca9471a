use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup, Quotient, Subgroup};
use crate::lattice::subgroups_of;

use super::supersolvable::ClosureSystem;
use super::FusionSystem;

/// `F/Q` on `S/Q` for strongly closed `Q`. Its morphisms are the maps
/// `P/Q → S/Q` induced by morphisms `P → S` of `F` with `Q ≤ P`.
#[derive(Clone)]
pub struct QuotientFusionSystem {
    parent: FusionSystem,
    kernel: Subgroup,
    s_group: Embedding,
    quotient: Quotient,
}

impl QuotientFusionSystem {
    pub(super) fn new(parent: FusionSystem, kernel: Subgroup) -> Self {
        let g = parent.group();
        let s_group = g.subgroup_as_group(parent.sylow(), "S");
        let q = s_group.restrict(&kernel).expect("Q lies in S");
        let quotient = s_group
            .group()
            .quotient(&q)
            .expect("a strongly closed subgroup is normal in S");
        QuotientFusionSystem {
            parent,
            kernel,
            s_group,
            quotient,
        }
    }

    pub fn parent(&self) -> &FusionSystem {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `S/Q` as a group in its own right.
    pub fn group(&self) -> &FiniteGroup {
        self.quotient.group()
    }

    /// Full preimage in the ambient group.
    pub fn preimage(&self, r: &Subgroup) -> Subgroup {
        let inside = self.quotient.preimage(self.s_group.group(), r);
        self.s_group.lift(&inside)
    }

    /// Image of `Q ≤ R ≤ S`.
    pub fn image(&self, r: &Subgroup) -> Subgroup {
        let inside = self.s_group.restrict(r).expect("subgroup of S");
        self.quotient.image(&inside)
    }

    pub fn f_conjugates(&self, r: &Subgroup) -> Vec<Subgroup> {
        let mut v: Vec<Subgroup> = self
            .parent
            .f_conjugates(&self.preimage(r))
            .iter()
            .map(|c| self.image(c))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_weakly_closed(&self, r: &Subgroup) -> bool {
        self.parent.is_weakly_closed(&self.preimage(r))
    }

    /// Checked on `P = <x>Q` for `x` in the preimage, which suffices since
    /// `P/Q` is cyclic in the quotient.
    pub fn is_strongly_closed(&self, r: &Subgroup) -> bool {
        let g = self.parent.group();
        let pre = self.preimage(r);
        let mut done: HashSet<Subgroup> = HashSet::new();
        let closed = pre.elements().all(|x| {
            let p = g.extend(&self.kernel, &[x]);
            !done.insert(p.clone())
                || self
                    .parent
                    .conjugates_in_s(&p)
                    .iter()
                    .all(|(c, _)| c.is_subgroup_of(&pre))
        });
        closed
    }

    pub fn strongly_closed_subgroups(&self) -> Result<Vec<Subgroup>> {
        let sb = self.group();
        let whole = sb.whole();
        Ok(subgroups_of(sb, &whole)?
            .into_iter()
            .filter(|r| sb.is_normal_in(r, &whole) && self.is_strongly_closed(r))
            .collect())
    }

    /// When `Q ⊴ G`, compares weak and strong closure of every subgroup of
    /// `S/Q` with the fusion system of `G/Q` over the image of `S`.
    pub fn agrees_with_group_quotient(&self) -> Result<bool> {
        let g = self.parent.group();
        if !g.is_normal(&self.kernel) {
            return Err(Error::NotNormal("Q is not normal in G".into()));
        }
        let gq = g.quotient(&self.kernel)?;
        let image_s = gq.image(self.parent.sylow());
        let fq = FusionSystem::with_sylow(gq.group(), self.parent.prime(), image_s)?;
        let sb = self.group();
        let to_gq = |y| {
            let in_s = self.quotient.lift(y);
            gq.project(self.s_group.to_parent(in_s))
        };
        for r in subgroups_of(sb, &sb.whole())? {
            let gens: Vec<_> = r.generators().iter().map(|&y| to_gq(y)).collect();
            let rr = gq.group().closure(&gens);
            if rr.order() != r.order()
                || fq.is_weakly_closed(&rr) != self.is_weakly_closed(&r)
                || fq.is_strongly_closed(&rr) != self.is_strongly_closed(&r)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl ClosureSystem for QuotientFusionSystem {
    fn owner(&self) -> &FiniteGroup {
        self.group()
    }

    fn top(&self) -> Subgroup {
        self.group().whole()
    }

    fn closed_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.strongly_closed_subgroups()
    }

    fn is_strongly_closed_from_scratch(&self, r: &Subgroup) -> bool {
        let g = self.parent.group();
        let s = self.parent.sylow();
        let pre = self.preimage(r);
        let closed = pre.elements().all(|x| {
            let p = g.extend(&self.kernel, &[x]);
            g.ids().all(|y| {
                let c = g.conjugate(&p, y);
                !c.is_subgroup_of(s) || c.is_subgroup_of(&pre)
            })
        });
        closed
    }
}
