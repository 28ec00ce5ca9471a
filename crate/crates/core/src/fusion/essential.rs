use std::sync::Arc;

use crate::classify::o_p;
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{all_subgroups, sylow_subgroup};

use super::FusionSystem;

/// Verdicts behind the essential test for one proper subgroup of `S`.
#[derive(Clone, Debug)]
pub struct EssentialReport {
    pub subgroup: Subgroup,
    pub fully_normalized: bool,
    pub centric: bool,
    pub out_group: FiniteGroup,
    pub strongly_p_embedded_witness: Option<Subgroup>,
}

impl EssentialReport {
    pub fn is_essential(&self) -> bool {
        self.centric && self.fully_normalized && self.strongly_p_embedded_witness.is_some()
    }
}

/// A proper `H < X` with `p | |H|` and `p ∤ |H ∩ H^x|` for every `x ∉ H`.
pub fn has_strongly_p_embedded(x: &FiniteGroup, p: u64) -> Result<Option<Subgroup>> {
    if x.order() % p as usize != 0 {
        return Ok(None);
    }
    let sylow = sylow_subgroup(x, p)?;
    // a p-closed group with O_p(X) ≠ 1 has no such subgroup
    if x.is_normal(&sylow) || !o_p(x, p)?.is_trivial() {
        return Ok(None);
    }
    for h in all_subgroups(x)?.iter() {
        if h.order() == x.order() || h.order() % p as usize != 0 {
            continue;
        }
        let embedded = x
            .ids()
            .filter(|&g| !h.contains(g))
            .all(|g| x.intersection(h, &x.conjugate(h, g)).order() % p as usize != 0);
        if embedded {
            return Ok(Some(h.clone()));
        }
    }
    Ok(None)
}

impl FusionSystem {
    /// Reports for every proper subgroup of `S` that is centric and fully
    /// normalized, sorted by canonical key.
    pub fn essential_candidates(&self) -> Result<Arc<Vec<EssentialReport>>> {
        if let Some(v) = self.inner.essentials.get() {
            return Ok(v.clone());
        }
        let s = self.sylow();
        let mut out = Vec::new();
        for q in self.subgroups_of_s()?.iter() {
            if q == s || !self.is_f_centric(q) || !self.is_fully_normalized(q) {
                continue;
            }
            let out_group = self.out_f(q);
            let witness = has_strongly_p_embedded(&out_group, self.prime())?;
            out.push(EssentialReport {
                subgroup: q.clone(),
                fully_normalized: true,
                centric: true,
                out_group,
                strongly_p_embedded_witness: witness,
            });
        }
        let v = Arc::new(out);
        Ok(self.inner.essentials.get_or_init(|| v).clone())
    }

    pub fn essential_subgroups(&self) -> Result<Vec<EssentialReport>> {
        Ok(self
            .essential_candidates()?
            .iter()
            .filter(|r| r.is_essential())
            .cloned()
            .collect())
    }

    pub fn is_essential(&self, q: &Subgroup) -> Result<bool> {
        Ok(self
            .essential_candidates()?
            .iter()
            .any(|r| &r.subgroup == q && r.is_essential()))
    }

    /// Essential subgroups together with `S`.
    pub fn e_star(&self) -> Result<Vec<Subgroup>> {
        let mut v: Vec<Subgroup> = self
            .essential_subgroups()?
            .into_iter()
            .map(|r| r.subgroup)
            .collect();
        v.push(self.sylow().clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fusion_system;
    use super::*;
    use crate::construct::{alternating, cyclic, dihedral, symmetric};
    use crate::group::DirectProduct;

    #[test]
    fn strongly_embedded() {
        let s3 = symmetric(3).unwrap();
        let h = has_strongly_p_embedded(&s3, 2).unwrap().unwrap();
        assert_eq!(h.order(), 2);
        assert!(has_strongly_p_embedded(&cyclic(5).unwrap(), 5)
            .unwrap()
            .is_none());
        assert!(has_strongly_p_embedded(&cyclic(6).unwrap(), 5)
            .unwrap()
            .is_none());
        assert!(has_strongly_p_embedded(&alternating(5).unwrap(), 2)
            .unwrap()
            .is_some());
        assert!(has_strongly_p_embedded(&symmetric(4).unwrap(), 2)
            .unwrap()
            .is_none());
    }

    #[test]
    fn essentials_of_s4() {
        let f = fusion_system(&symmetric(4).unwrap(), 2).unwrap();
        let o2 = f.o_p_fusion().unwrap();
        let ess = f.essential_subgroups().unwrap();
        // only O_2(S4): the other Klein four has Out_F of order 2
        assert_eq!(ess.len(), 1);
        assert_eq!(ess[0].subgroup, o2);
        assert_eq!(f.e_star().unwrap().len(), 2);
        let other = f
            .essential_candidates()
            .unwrap()
            .iter()
            .find(|r| r.subgroup.order() == 4 && r.subgroup != o2)
            .cloned()
            .unwrap();
        assert_eq!(other.out_group.order(), 2);
        assert!(!other.is_essential());
    }

    #[test]
    fn essentials_trivial_cases() {
        let d = dihedral(16).unwrap();
        let f = fusion_system(&d, 2).unwrap();
        assert!(f.essential_subgroups().unwrap().is_empty());
        assert_eq!(f.e_star().unwrap(), vec![d.whole()]);
        let a5 = alternating(5).unwrap();
        let g = DirectProduct::group(&FiniteGroup::direct_product(&a5, &a5).unwrap()).clone();
        let f = fusion_system(&g, 5).unwrap();
        assert!(f.essential_subgroups().unwrap().is_empty());
        assert_eq!(f.o_p_fusion().unwrap(), f.sylow().clone());
    }
}
