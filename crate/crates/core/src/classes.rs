//! Formal calculus of rational-equivalence classes in `P^n`, stored as the
//! degrees of their dimension-`k` pieces. `H` is the hyperplane class.

use serde::{Deserialize, Serialize};

/// `degs[k]` is the degree of the dimension-`k` piece, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientClass {
    ambient_dim: usize,
    degs: Vec<i64>,
}

/// Generalized binomial coefficient `C(e, i)` for any integer `e`.
pub fn binomial_signed(e: i64, i: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for k in 0..i as i64 {
        num *= (e - k) as i128;
        den *= (k + 1) as i128;
    }
    (num / den) as i64
}

impl AmbientClass {
    pub fn zero(ambient_dim: usize) -> Self {
        AmbientClass {
            ambient_dim,
            degs: vec![0; ambient_dim + 1],
        }
    }

    /// Builds from degrees indexed by dimension; missing entries are zero.
    pub fn from_degrees(ambient_dim: usize, degs: &[i64]) -> Self {
        let mut c = AmbientClass::zero(ambient_dim);
        for (k, d) in degs.iter().enumerate().take(ambient_dim + 1) {
            c.degs[k] = *d;
        }
        c
    }

    /// `d·[P^k]`, i.e. `d·H^{n-k}`.
    pub fn linear_piece(ambient_dim: usize, k: usize, d: i64) -> Self {
        let mut c = AmbientClass::zero(ambient_dim);
        c.degs[k] = d;
        c
    }

    /// The fundamental class `[P^n]`.
    pub fn fundamental(ambient_dim: usize) -> Self {
        AmbientClass::linear_piece(ambient_dim, ambient_dim, 1)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degs
    }

    /// Degree of the dimension-`k` piece.
    pub fn get(&self, k: usize) -> i64 {
        self.degs.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &AmbientClass) -> AmbientClass {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        AmbientClass {
            ambient_dim: self.ambient_dim,
            degs: self
                .degs
                .iter()
                .zip(&other.degs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Caps with `c(O(dH))^e = (1 + dH)^e`; `e` may be negative.
    pub fn chern_mult(&self, d: i64, e: i64) -> AmbientClass {
        let n = self.ambient_dim;
        let mut out = vec![0i64; n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for j in k..=n {
                let i = j - k;
                acc += binomial_signed(e, i) * d.pow(i as u32) * self.degs[j];
            }
            *slot = acc;
        }
        AmbientClass {
            ambient_dim: n,
            degs: out,
        }
    }

    /// Multiplies the codimension-`i` piece by `(-1)^i`.
    pub fn dual(&self) -> AmbientClass {
        let n = self.ambient_dim;
        AmbientClass {
            ambient_dim: n,
            degs: self
                .degs
                .iter()
                .enumerate()
                .map(|(k, d)| if (n - k) % 2 == 1 { -d } else { *d })
                .collect(),
        }
    }

    /// Divides the codimension-`i` piece by `(1 + dH)^i`.
    pub fn tensor(&self, d: i64) -> AmbientClass {
        let n = self.ambient_dim;
        let mut acc = AmbientClass::zero(n);
        for k in 0..=n {
            if self.degs[k] == 0 {
                continue;
            }
            let piece = AmbientClass::linear_piece(n, k, self.degs[k]);
            acc = acc.add(&piece.chern_mult(d, -((n - k) as i64)));
        }
        acc
    }

    /// Intersects with a hyperplane: the dimension-`k` piece moves to dimension `k - 1`.
    pub fn hyperplane_section(&self) -> AmbientClass {
        let n = self.ambient_dim;
        let mut degs = vec![0i64; n + 1];
        degs[..n].copy_from_slice(&self.degs[1..]);
        AmbientClass {
            ambient_dim: n,
            degs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_identity() {
        let a = AmbientClass::from_degrees(3, &[-10, 3, 0, 0]);
        assert_eq!(a.chern_mult(3, 0), a);
    }

    #[test]
    fn worked_example_contribution() {
        let a = AmbientClass::from_degrees(3, &[-10, 3, 0, 0]);
        assert_eq!(a.chern_mult(3, 3).get(0), 17);
    }

    #[test]
    fn dual_is_an_involution() {
        let a = AmbientClass::from_degrees(4, &[5, -2, 7, 1, 3]);
        assert_eq!(a.dual().dual(), a);
        assert_eq!(a.dual().degrees(), &[5, 2, 7, -1, 3]);
    }

    #[test]
    fn inverse_chern_class() {
        let a = AmbientClass::from_degrees(3, &[1, -4, 2, 9]);
        assert_eq!(a.chern_mult(2, 3).chern_mult(2, -3), a);
    }

    #[test]
    fn tensor_by_trivial_bundle_is_identity() {
        let a = AmbientClass::from_degrees(3, &[1, -4, 2, 9]);
        assert_eq!(a.tensor(0), a);
    }

    #[test]
    fn tensor_of_point_is_point() {
        // codim-n piece over P^n: [pt] / (1 + dH)^n = [pt]
        let a = AmbientClass::linear_piece(2, 0, 1);
        assert_eq!(a.tensor(3), a);
    }

    #[test]
    fn signed_binomials() {
        assert_eq!(binomial_signed(3, 2), 3);
        assert_eq!(binomial_signed(-1, 3), -1);
        assert_eq!(binomial_signed(-2, 2), 3);
        assert_eq!(binomial_signed(2, 5), 0);
    }
}
