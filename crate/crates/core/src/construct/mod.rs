//! Builders for the concrete groups used throughout the toolkit.
//!
//! Matrix groups appear only through their action on row vectors. Parameter
//! ranges are allowlisted so that builders fail fast instead of running into
//! the element cap.

mod affine;
mod matrix;

use std::path::Path;

use crate::error::{Error, Result};
use crate::fixture;
use crate::group::FiniteGroup;
use crate::lattice::is_prime;
use crate::perm::Permutation;

pub use affine::{affine_model, AffineModel, HSpec, Mat2};
use matrix::{on_nonzero_vectors, primitive_root, Mat};

fn out_of_range(what: String) -> Error {
    Error::ParameterOutOfRange(what)
}

fn cycle(n: usize, pts: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[pts]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(out_of_range("cyclic(0)".into()));
    }
    let pts: Vec<usize> = (1..=n).collect();
    let gens = if n == 1 { vec![] } else { vec![cycle(n, &pts)] };
    FiniteGroup::from_generators(n, &gens, format!("C{n}"))
}

/// `(C_p)^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || k == 0 {
        return Err(out_of_range(format!("elementary_abelian({p},{k})")));
    }
    let p = p as usize;
    let deg = p * k;
    let gens: Vec<Permutation> = (0..k)
        .map(|i| cycle(deg, &((i * p + 1)..=(i * p + p)).collect::<Vec<_>>()))
        .collect();
    FiniteGroup::from_generators(deg, &gens, format!("C{p}^{k}"))
}

/// Dihedral group of order `order`, acting on `order/2` points (on 4
/// points for the Klein four group).
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 == 1 {
        return Err(out_of_range(format!("dihedral({order})")));
    }
    let n = order / 2;
    let label = format!("D{order}");
    match n {
        1 => FiniteGroup::from_generators(2, &[cycle(2, &[1, 2])], label),
        2 => {
            let a = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]])?;
            let b = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]])?;
            FiniteGroup::from_generators(4, &[a, b], label)
        }
        _ => {
            let rot = cycle(n, &(1..=n).collect::<Vec<_>>());
            let refl: Vec<usize> = (0..n).map(|i| (n - i) % n + 1).collect();
            FiniteGroup::from_generators(n, &[rot, Permutation::from_images(&refl)?], label)
        }
    }
}

/// The quaternion group of order 8 in its regular representation.
pub fn quaternion8() -> Result<FiniteGroup> {
    let i = Permutation::from_cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]])?;
    let j = Permutation::from_cycles(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]])?;
    FiniteGroup::from_generators(8, &[i, j], "Q8")
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 10 {
        return Err(out_of_range(format!("symmetric({n})")));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle(n, &(1..=n).collect::<Vec<_>>()), cycle(n, &[1, 2])]
    };
    FiniteGroup::from_generators(n, &gens, format!("S{n}"))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 10 {
        return Err(out_of_range(format!("alternating({n})")));
    }
    let gens: Vec<Permutation> = (3..=n).map(|k| cycle(n, &[1, 2, k])).collect();
    FiniteGroup::from_generators(n, &gens, format!("A{n}"))
}

/// Permutation of the nonzero row vectors induced by an invertible matrix.
pub fn matrix_permutation(p: u32, rows: &[&[i64]]) -> Permutation {
    on_nonzero_vectors(&Mat::from_rows(p, rows))
}

/// Upper unitriangular `n × n` matrices over `F_p`.
pub fn unitriangular(n: usize, p: u32) -> Result<FiniteGroup> {
    let ok = match n {
        3 => [2, 3, 5, 7].contains(&p),
        4 => [2, 3].contains(&p),
        _ => false,
    };
    if !ok {
        return Err(out_of_range(format!("unitriangular({n},{p})")));
    }
    let gens: Vec<Permutation> = (0..n - 1)
        .map(|i| {
            let mut m = Mat::identity(n, p);
            m.set(i, i + 1, 1);
            on_nonzero_vectors(&m)
        })
        .collect();
    FiniteGroup::from_generators(p.pow(n as u32) as usize - 1, &gens, format!("UT{n}({p})"))
}

pub fn unitriangular3(p: u32) -> Result<FiniteGroup> {
    if p == 2 {
        return Err(out_of_range("unitriangular3 needs an odd prime".into()));
    }
    unitriangular(3, p)
}

/// `[[1,a,b],[0,1,c],[0,0,1]]` as an element of [`unitriangular3`].
pub fn unitriangular3_element(p: u32, a: i64, b: i64, c: i64) -> Permutation {
    matrix_permutation(p, &[&[1, a, b], &[0, 1, c], &[0, 0, 1]])
}

/// Extraspecial of order `p^3` and exponent `p`.
pub fn extraspecial_p3_exponent_p(p: u32) -> Result<FiniteGroup> {
    Ok(unitriangular3(p)?.relabeled(format!("{p}^(1+2)")))
}

pub fn gl(n: usize, p: u32) -> Result<FiniteGroup> {
    let ok = match n {
        2 => [2, 3, 5, 7].contains(&p),
        3 => [2, 3].contains(&p),
        _ => false,
    };
    if !ok {
        return Err(out_of_range(format!("gl({n},{p})")));
    }
    let mut gens = Vec::new();
    let mut d = Mat::identity(n, p);
    d.set(0, 0, primitive_root(p));
    if p > 2 {
        gens.push(on_nonzero_vectors(&d));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = Mat::identity(n, p);
                t.set(i, j, 1);
                gens.push(on_nonzero_vectors(&t));
            }
        }
    }
    FiniteGroup::from_generators(p.pow(n as u32) as usize - 1, &gens, format!("GL{n}({p})"))
}

pub fn sl2(p: u32) -> Result<FiniteGroup> {
    if ![2, 3, 5, 7].contains(&p) {
        return Err(out_of_range(format!("sl2({p})")));
    }
    let gens = [
        matrix_permutation(p, &[&[1, 1], &[0, 1]]),
        matrix_permutation(p, &[&[1, 0], &[1, 1]]),
    ];
    FiniteGroup::from_generators((p * p) as usize - 1, &gens, format!("SL2({p})"))
}

pub fn from_fixture(name_or_path: &str, dir: Option<&Path>) -> Result<FiniteGroup> {
    let path = Path::new(name_or_path);
    if path.extension().is_some_and(|e| e == "json") {
        return fixture::from_fixture_path(path);
    }
    fixture::load_named(name_or_path, dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{maximal_subgroups, sylow_subgroup};

    fn exponent(g: &FiniteGroup) -> u64 {
        g.ids().map(|x| g.element_order(x)).fold(1, |a, b| a.max(b))
    }

    #[test]
    fn small_builders() {
        assert_eq!(cyclic(5).unwrap().order(), 5);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let e = elementary_abelian(3, 2).unwrap();
        assert_eq!(e.order(), 9);
        assert_eq!(exponent(&e), 3);
        for n in [4, 6, 8, 10, 16, 32] {
            assert_eq!(dihedral(n).unwrap().order(), n);
        }
        assert_eq!(quaternion8().unwrap().order(), 8);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert!(dihedral(7).is_err());
    }

    #[test]
    fn matrix_groups() {
        assert_eq!(gl(2, 3).unwrap().order(), 48);
        assert_eq!(gl(2, 5).unwrap().order(), 480);
        assert_eq!(gl(2, 2).unwrap().order(), 6);
        assert_eq!(sl2(3).unwrap().order(), 24);
        assert_eq!(sl2(5).unwrap().order(), 120);
        let g = gl(2, 3).unwrap();
        assert_eq!(sylow_subgroup(&g, 3).unwrap().order(), 3);
        assert!(gl(4, 3).is_err());
    }

    #[test]
    fn unitriangular_groups() {
        for p in [3u32, 5, 7] {
            let u = unitriangular3(p).unwrap();
            assert_eq!(u.order(), (p * p * p) as usize);
            assert_eq!(exponent(&u), p as u64);
        }
        assert_eq!(unitriangular3(5).unwrap().center().order(), 5);
        let e = extraspecial_p3_exponent_p(3).unwrap();
        let maxes = maximal_subgroups(&e, &e.whole()).unwrap();
        assert_eq!(maxes.len(), 4);
        assert!(maxes.iter().all(|m| m.order() == 9));
        assert_eq!(unitriangular(4, 3).unwrap().order(), 729);
    }

    #[test]
    fn unitriangular_power_formula() {
        let p = 7u32;
        let u = unitriangular3(p).unwrap();
        for (a, b, c, k) in [(1, 2, 3, 4u64), (6, 0, 5, 6), (2, 2, 2, 3)] {
            let x = u.id_of(&unitriangular3_element(p, a, b, c)).unwrap();
            let expect = unitriangular3_element(
                p,
                k as i64 * a,
                k as i64 * b + (k as i64 - 1) * k as i64 / 2 * a * c,
                k as i64 * c,
            );
            assert_eq!(u.element(u.pow(x, k)), &expect);
        }
    }

    #[test]
    fn affine_models() {
        let m = affine_model(3, HSpec::SL2).unwrap();
        assert_eq!(m.group.order(), 216);
        assert_eq!(m.sylow.order(), 27);
        assert_eq!(m.v.order(), 9);
        assert_eq!(m.u.order(), 3);
        assert_eq!(affine_model(3, HSpec::GL2).unwrap().group.order(), 432);
        assert!(affine_model(7, HSpec::SL2).is_err());
        let twisted = affine_model(3, HSpec::Generated(vec![[[2, 0], [0, 1]]])).unwrap();
        assert_eq!(twisted.group.order(), 432);
    }

    #[test]
    fn fixture_group() {
        assert_eq!(
            from_fixture("smallgroup_324_160", None).unwrap().order(),
            324
        );
    }
}
