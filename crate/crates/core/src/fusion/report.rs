use serde::Serialize;

use crate::classify::o_p;
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};

use super::FusionSystem;

/// Verdicts for one `S`-conjugacy class of subgroups of `S`.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupVerdict {
    pub order: usize,
    pub generators: Vec<String>,
    pub weakly_closed: bool,
    pub strongly_closed: bool,
    pub centric: bool,
    pub fully_normalized: bool,
    pub radical: bool,
    pub essential: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub group: String,
    pub group_order: usize,
    pub prime: u64,
    pub sylow_order: usize,
    pub subgroup_classes: Vec<SubgroupVerdict>,
    pub e_star: Vec<Vec<String>>,
    pub o_p_fusion_order: usize,
    pub o_p_group_order: usize,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub certificate: Option<Vec<Vec<String>>>,
}

fn gens(g: &FiniteGroup, h: &Subgroup) -> Vec<String> {
    g.generator_permutations(h)
        .iter()
        .map(|p| p.to_string())
        .collect()
}

impl FusionSystem {
    pub fn report(&self) -> Result<FusionReport> {
        let g = self.group();
        let mut classes = Vec::new();
        for q in self.s_class_representatives()? {
            classes.push(SubgroupVerdict {
                order: q.order(),
                generators: gens(g, &q),
                weakly_closed: self.is_weakly_closed(&q),
                strongly_closed: self.is_strongly_closed(&q),
                centric: self.is_f_centric(&q),
                fully_normalized: self.is_fully_normalized(&q),
                radical: self.is_radical(&q),
                essential: self.is_essential(&q)?,
            });
        }
        let cert = self.is_supersolvable()?;
        Ok(FusionReport {
            group: g.label().to_string(),
            group_order: g.order(),
            prime: self.prime(),
            sylow_order: self.sylow().order(),
            subgroup_classes: classes,
            e_star: self.e_star()?.iter().map(|r| gens(g, r)).collect(),
            o_p_fusion_order: self.o_p_fusion()?.order(),
            o_p_group_order: o_p(g, self.prime())?.order(),
            nilpotent: self.is_nilpotent()?,
            supersolvable: cert.is_some(),
            certificate: cert.map(|c| c.chain.members.iter().map(|m| gens(g, m)).collect()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fusion_system;
    use crate::construct::symmetric;

    #[test]
    fn s4_report() {
        let f = fusion_system(&symmetric(4).unwrap(), 2).unwrap();
        let r = f.report().unwrap();
        assert_eq!(r.sylow_order, 8);
        assert_eq!(r.o_p_fusion_order, 4);
        assert_eq!(r.o_p_group_order, 4);
        assert!(!r.supersolvable && !r.nilpotent);
        assert_eq!(r.subgroup_classes.iter().filter(|c| c.essential).count(), 1);
        let a = serde_json::to_string(&r).unwrap();
        let b = serde_json::to_string(
            &fusion_system(&symmetric(4).unwrap(), 2)
                .unwrap()
                .report()
                .unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
