//! Small matrices over F_p, used only to produce permutation actions on
//! row vectors.

use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mat {
    pub n: usize,
    pub p: u32,
    pub e: Vec<u32>,
}

impl Mat {
    pub fn identity(n: usize, p: u32) -> Mat {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Mat { n, p, e }
    }

    pub fn from_rows(p: u32, rows: &[&[i64]]) -> Mat {
        let n = rows.len();
        let e = rows
            .iter()
            .flat_map(|r| r.iter().map(move |&v| v.rem_euclid(p as i64) as u32))
            .collect();
        Mat { n, p, e }
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.e[i * self.n + j] = v % self.p;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.at(i, k) as u64 * other.at(k, j) as u64;
                }
                e[i * n + j] = (acc % self.p as u64) as u32;
            }
        }
        Mat { n, p: self.p, e }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        (0..self.n)
            .map(|j| {
                let s: u64 = (0..self.n)
                    .map(|i| v[i] as u64 * self.at(i, j) as u64)
                    .sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }
}

/// Vector `(v_0, .., v_{n-1})` encoded as `sum v_i p^i`.
pub(crate) fn encode(v: &[u32], p: u32) -> usize {
    v.iter()
        .rev()
        .fold(0, |acc, &x| acc * p as usize + x as usize)
}

pub(crate) fn decode(mut x: usize, n: usize, p: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (x % p as usize) as u32;
            x /= p as usize;
            d
        })
        .collect()
}

/// Action `v ↦ vM` on the `p^n - 1` nonzero vectors.
pub(crate) fn on_nonzero_vectors(m: &Mat) -> Permutation {
    let total = (m.p as usize).pow(m.n as u32);
    let images = (1..total)
        .map(|x| (encode(&m.apply(&decode(x, m.n, m.p)), m.p) - 1) as u32)
        .collect();
    Permutation::from_zero_based_unchecked(images)
}

/// Action `v ↦ vM + t` on all `p^n` vectors.
pub(crate) fn affine_on_vectors(m: &Mat, t: &[u32]) -> Permutation {
    let total = (m.p as usize).pow(m.n as u32);
    let images = (0..total)
        .map(|x| {
            let mut y = m.apply(&decode(x, m.n, m.p));
            for (a, b) in y.iter_mut().zip(t) {
                *a = (*a + b) % m.p;
            }
            encode(&y, m.p) as u32
        })
        .collect();
    Permutation::from_zero_based_unchecked(images)
}

pub(crate) fn primitive_root(p: u32) -> u32 {
    (1..p)
        .find(|&g| (1..p - 1).all(|k| (g as u64).pow(k) % p as u64 != 1))
        .unwrap_or(1)
}
