//! Hilbert series of monomial ideals by pivot recursion, and the projective
//! dimension and degree read off the reduced numerator.

use serde::{Deserialize, Serialize};

use crate::monomial::{Exponents, Monomial};

/// Hilbert series `numerator(t) / (1 - t)^{n+1}` of `S/I` plus derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Coefficients of the numerator, constant term first.
    pub numerator: Vec<i64>,
    /// Number of variables `n + 1`.
    pub nvars: usize,
    /// Dimension of `V(I)` in `P^n`; `-1` for the empty scheme.
    pub proj_dimension: i64,
    /// Degree of the top-dimensional part; `0` for the empty scheme.
    pub degree: u64,
}

impl HilbertData {
    pub fn from_leading_monomials(nvars: usize, lms: &[Monomial]) -> HilbertData {
        let numerator = hilbert_numerator(nvars, lms);
        let (reduced, cancelled) = cancel_one_minus_t(&numerator);
        let proj_dimension = if reduced.is_empty() {
            -1
        } else {
            nvars as i64 - cancelled as i64 - 1
        };
        let degree = if proj_dimension < 0 {
            0
        } else {
            reduced.iter().sum::<i64>() as u64
        };
        HilbertData {
            numerator,
            nvars,
            proj_dimension,
            degree,
        }
    }

    pub fn is_empty_scheme(&self) -> bool {
        self.proj_dimension < 0
    }

    /// `dim_k (S/I)_d`, expanded from the series.
    pub fn hilbert_function(&self, d: u64) -> i64 {
        let n = self.nvars as u64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as u64) <= d)
            .map(|(i, c)| c * binomial(d - i as u64 + n - 1, n - 1) as i64)
            .sum()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Divides by `(1 - t)` as long as the numerator vanishes at `t = 1`.
fn cancel_one_minus_t(q: &[i64]) -> (Vec<i64>, usize) {
    let mut cur = trim(q.to_vec());
    let mut count = 0;
    while !cur.is_empty() && cur.iter().sum::<i64>() == 0 {
        // q(t) = (1 - t) r(t): r_i = sum_{j<=i} q_j
        let mut r = Vec::with_capacity(cur.len() - 1);
        let mut acc = 0;
        for c in &cur[..cur.len() - 1] {
            acc += c;
            r.push(acc);
        }
        cur = trim(r);
        count += 1;
    }
    (cur, count)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[x_0..x_{n}] / (lms)`.
pub fn hilbert_numerator(nvars: usize, lms: &[Monomial]) -> Vec<i64> {
    numerator_rec(nvars, minimalize(lms.to_vec()))
}

fn is_pure_power(m: &Monomial) -> bool {
    m.exps().iter().filter(|&&e| e > 0).count() <= 1
}

fn numerator_rec(nvars: usize, gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, m.degree() as usize, -1);
            acc = next;
        }
        return trim(acc);
    }
    // pivot x_i^e taken from a mixed generator, so both branches strictly grow the ideal
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| !is_pure_power(m)).collect();
    let var = (0..nvars)
        .max_by_key(|&i| {
            (
                mixed.iter().filter(|m| m.exps()[i] > 0).count(),
                std::cmp::Reverse(i),
            )
        })
        .unwrap();
    let mut exps: Vec<u32> = mixed
        .iter()
        .map(|m| m.exps()[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pe: Exponents = smallvec::smallvec![0; nvars];
    pe[var] = e;
    let pivot = Monomial::new(pe);

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let g = m.gcd(&pivot);
            g.quotient_of(m).unwrap()
        })
        .collect();

    let mut acc = numerator_rec(nvars, minimalize(with_pivot));
    let q = numerator_rec(nvars, minimalize(quotient));
    poly_sub_shifted(&mut acc, &q, e as usize, 1);
    trim(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn hyperplane_in_plane() {
        let h = HilbertData::from_leading_monomials(3, &[m(&[1, 0, 0])]);
        assert_eq!(h.proj_dimension, 1);
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn irrelevant_ideal_is_empty() {
        let h =
            HilbertData::from_leading_monomials(3, &[m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
        assert_eq!(h.proj_dimension, -1);
        assert_eq!(h.degree, 0);
    }

    #[test]
    fn unit_ideal_is_empty() {
        let h = HilbertData::from_leading_monomials(2, &[m(&[0, 0])]);
        assert_eq!(h.proj_dimension, -1);
        assert!(h.numerator.is_empty());
    }

    #[test]
    fn zero_ideal_is_whole_space() {
        let h = HilbertData::from_leading_monomials(4, &[]);
        assert_eq!((h.proj_dimension, h.degree), (3, 1));
        assert_eq!(h.hilbert_function(2), 10);
    }

    #[test]
    fn fat_point_staircase() {
        // (x^2, xy, y^2) in k[x,y,z]: a point of length 3
        let h =
            HilbertData::from_leading_monomials(3, &[m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0])]);
        assert_eq!((h.proj_dimension, h.degree), (0, 3));
        assert_eq!(h.hilbert_function(0), 1);
        assert_eq!(h.hilbert_function(1), 3);
        assert_eq!(h.hilbert_function(5), 3);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
