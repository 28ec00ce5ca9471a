use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::lattice::{is_prime, p_part};
use crate::perm::Permutation;

use super::matrix::{affine_on_vectors, primitive_root, Mat};

pub type Mat2 = [[i64; 2]; 2];

/// The matrix group `H` with `SL_2(p) ≤ H ≤ GL_2(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HSpec {
    SL2,
    GL2,
    /// `SL_2(p)` together with extra invertible matrices.
    Generated(Vec<Mat2>),
}

/// `G = V ⋊ H` acting on the `p^2` row vectors by `x ↦ xh + v`.
#[derive(Clone, Debug)]
pub struct AffineModel {
    pub p: u32,
    pub h_spec: HSpec,
    pub group: FiniteGroup,
    pub r: ElemId,
    pub s: ElemId,
    pub g: ElemId,
    pub v: Subgroup,
    pub u: Subgroup,
    pub sylow: Subgroup,
    pub s1: Subgroup,
}

pub const A: Mat2 = [[1, 1], [0, 1]];
pub const B: Mat2 = [[1, 0], [0, 1]];
pub const M: Mat2 = [[-1, 1], [0, -1]];

fn mat(p: u32, m: &Mat2) -> Mat {
    Mat::from_rows(p, &[&m[0], &m[1]])
}

fn vec2(p: u32, v: [i64; 2]) -> Vec<u32> {
    v.iter().map(|x| x.rem_euclid(p as i64) as u32).collect()
}

impl AffineModel {
    /// The permutation of `(h, v)`.
    pub fn pair_permutation(&self, h: &Mat2, v: [i64; 2]) -> Permutation {
        affine_on_vectors(&mat(self.p, h), &vec2(self.p, v))
    }

    pub fn pair(&self, h: &Mat2, v: [i64; 2]) -> Option<ElemId> {
        self.group.id_of(&self.pair_permutation(h, v))
    }

    fn verify(&self) -> Result<()> {
        let p = self.p as i64;
        let fail = |what: &str| Err(Error::Precondition(format!("affine model: {what}")));
        let g = &self.group;
        if self.sylow.order() != (p * p * p) as usize
            || p_part(g.order(), self.p as u64) != self.sylow.order()
        {
            return fail("S is not a Sylow subgroup of order p^3");
        }
        if self.s1.order() != (p * p) as usize || !self.s1.is_subgroup_of(&self.sylow) {
            return fail("S1 is not of index p in S");
        }
        if Some(g.conj(self.r, self.g)) != self.pair(&A, [-1, 1]) {
            return fail("g^-1 r g differs from (A, b - a)");
        }
        if Some(g.conj(self.s, self.g)) != self.pair(&B, [0, -1]) {
            return fail("g^-1 s g differs from (B, -b)");
        }
        let hs = [A, M, [[0, 1], [-1, 0]]];
        let vs = [[1, 0], [0, 1], [2, 1]];
        for h1 in &hs {
            for h2 in &hs {
                for &v1 in &vs {
                    for &v2 in &vs {
                        let (m1, m2) = (mat(self.p, h1), mat(self.p, h2));
                        let prod = m1.mul(&m2);
                        let mut w = m2.apply(&vec2(self.p, v1));
                        for (a, b) in w.iter_mut().zip(vec2(self.p, v2)) {
                            *a = (*a + b) % self.p;
                        }
                        let lhs = g.mul(
                            self.pair(h1, v1).expect("element"),
                            self.pair(h2, v2).expect("element"),
                        );
                        let rhs = g.id_of(&affine_on_vectors(&prod, &w));
                        if Some(lhs) != rhs {
                            return fail("multiplication law");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn affine_model(p: u32, h_spec: HSpec) -> Result<AffineModel> {
    let admitted = match &h_spec {
        HSpec::SL2 | HSpec::Generated(_) => [3, 5].contains(&p),
        HSpec::GL2 => p == 3,
    };
    if !admitted || !is_prime(p as u64) {
        return Err(Error::ParameterOutOfRange(format!(
            "affine model with p = {p} and {h_spec:?}"
        )));
    }
    let mut hgens: Vec<Mat2> = vec![[[1, 1], [0, 1]], [[1, 0], [1, 1]]];
    match &h_spec {
        HSpec::SL2 => {}
        HSpec::GL2 => hgens.push([[primitive_root(p) as i64, 0], [0, 1]]),
        HSpec::Generated(extra) => {
            for m in extra {
                if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(p as i64) == 0 {
                    return Err(Error::ParameterOutOfRange(format!("singular matrix {m:?}")));
                }
            }
            hgens.extend(extra.iter().copied());
        }
    }
    let zero = vec![0u32; 2];
    let mut gens: Vec<Permutation> = hgens
        .iter()
        .map(|h| affine_on_vectors(&mat(p, h), &zero))
        .collect();
    gens.push(affine_on_vectors(&Mat::identity(2, p), &[1, 0]));
    let label = match &h_spec {
        HSpec::SL2 => format!("affine({p},SL2)"),
        HSpec::GL2 => format!("affine({p},GL2)"),
        HSpec::Generated(_) => format!("affine({p},H)"),
    };
    let group = FiniteGroup::from_generators((p * p) as usize, &gens, label)?;
    let id = |h: &Mat2, v: [i64; 2]| {
        group
            .id_of(&affine_on_vectors(&mat(p, h), &vec2(p, v)))
            .expect("element of the model")
    };
    let r = id(&A, [1, 0]);
    let s = id(&B, [0, 1]);
    let g = id(&M, [0, 0]);
    let v = group.closure(&[id(&B, [1, 0]), s]);
    let u = group.closure(&[id(&A, [0, 0])]);
    let sylow = group.join(&u, &v);
    let s1 = group.closure(&[r, s]);
    let model = AffineModel {
        p,
        h_spec,
        group,
        r,
        s,
        g,
        v,
        u,
        sylow,
        s1,
    };
    model.verify()?;
    Ok(model)
}
