//! Monomials with dense exponent vectors and the monomial orders used by the engine.

use std::cmp::Ordering;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 8]>;

/// A monomial `x_0^{a_0} ... x_n^{a_n}`; `degree` caches the exponent sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exps: smallvec::smallvec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Total degree restricted to a range of variables.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    /// All monomials of total degree `degree` in `nvars` variables, in descending lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur: Exponents = smallvec::smallvec![0; nvars];
        fn rec(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, degree, &mut cur, &mut out);
        out
    }
}

/// Monomial orders. Variables are ranked `x_0 > x_1 > ... > x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermOrder {
    GRevLex,
    Lex,
    /// Eliminates the first `k` variables: grevlex on the first block, ties
    /// broken by grevlex on the remaining block.
    BlockElimination(usize),
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::GRevLex => grevlex(a.exps(), b.exps(), a.degree, b.degree),
            TermOrder::Lex => a.exps().cmp(b.exps()),
            TermOrder::BlockElimination(k) => {
                let (a1, a2) = a.exps().split_at(k);
                let (b1, b2) = b.exps().split_at(k);
                let (da1, db1) = (a1.iter().sum::<u32>(), b1.iter().sum::<u32>());
                grevlex(a1, b1, da1, db1)
                    .then_with(|| grevlex(a2, b2, a.degree - da1, b.degree - db1))
            }
        }
    }

    /// True when every nonzero ideal element's leading monomial is at least its
    /// degree-wise largest term, i.e. the order refines total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, TermOrder::GRevLex)
    }
}

#[inline]
fn grevlex(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                if x != y {
                    // smaller exponent in the last differing variable wins
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        (0..=max_degree)
            .flat_map(|d| Monomial::all_of_degree(nvars, d))
            .collect()
    }

    #[test]
    fn order_laws_exhaustive() {
        let orders = [
            TermOrder::GRevLex,
            TermOrder::Lex,
            TermOrder::BlockElimination(1),
            TermOrder::BlockElimination(2),
        ];
        for nvars in 1..=4 {
            let monos = all_up_to(nvars, 4);
            let one = Monomial::one(nvars);
            let small = all_up_to(nvars, 1);
            for order in orders {
                if let TermOrder::BlockElimination(k) = order {
                    if k >= nvars {
                        continue;
                    }
                }
                for a in &monos {
                    assert_ne!(order.cmp(a, &one), Ordering::Less);
                    for b in &monos {
                        let ab = order.cmp(a, b);
                        assert_eq!(ab, order.cmp(b, a).reverse());
                        if ab == Ordering::Equal {
                            assert_eq!(a, b);
                        }
                        if ab == Ordering::Less {
                            for c in &small {
                                assert_eq!(order.cmp(&a.mul(c), &b.mul(c)), Ordering::Less);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_order_ranks_eliminated_variables_first() {
        let order = TermOrder::BlockElimination(1);
        let t = Monomial::new([1u32, 0, 0].as_slice());
        let big = Monomial::new([0u32, 5, 3].as_slice());
        assert_eq!(order.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z, degree 2: x^2 > xy > y^2 > xz > yz > z^2
        let m = |e: [u32; 3]| Monomial::new(e.as_slice());
        let seq = [
            m([2, 0, 0]),
            m([1, 1, 0]),
            m([0, 2, 0]),
            m([1, 0, 1]),
            m([0, 1, 1]),
            m([0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(TermOrder::GRevLex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn enumerates_degree_pieces() {
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
        assert_eq!(Monomial::all_of_degree(3, 0).len(), 1);
    }
}
