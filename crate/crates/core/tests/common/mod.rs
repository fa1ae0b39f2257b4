//! Shared catalogs and brute-force oracles for the integration tests.
//!
//! The oracles use plain row reduction over `Z/p` and never touch the
//! Gröbner machinery.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segre_core::theorems::{singular_scheme, HypersurfaceInput};
use segre_core::{parse_poly, Ideal, Monomial, Poly, Ring, RingRef};

pub const P: u32 = 32003;

pub fn proj(n: usize) -> RingRef {
    Ring::projective(P, n).unwrap()
}

pub fn ideal(n: usize, text: &str) -> Ideal {
    Ideal::parse(&proj(n), text).unwrap()
}

pub fn hypersurface(n: usize, f: &str) -> HypersurfaceInput {
    HypersurfaceInput::new(parse_poly(f, &proj(n)).unwrap()).unwrap()
}

/// Singular scheme of `V(f)`.
pub fn sing(n: usize, f: &str) -> Ideal {
    singular_scheme(&hypersurface(n, f)).unwrap()
}

pub fn cubic_limit_ideal() -> Ideal {
    let r = Ring::grevlex(P, &["x", "y", "z", "w"]).unwrap();
    Ideal::parse(&r, "z^2, y*z, x*z, y^2*w - x^2*(x+w)").unwrap()
}

/// Ideals in `P^n`, `n <= 3`, generated in degree `<= 3`.
pub fn engine_catalog() -> Vec<(&'static str, Ideal)> {
    vec![
        ("cubic-limit", cubic_limit_ideal()),
        (
            "twisted-cubic",
            ideal(3, "x0*x2 - x1^2, x0*x3 - x1*x2, x1*x3 - x2^2"),
        ),
        ("plane-line", ideal(3, "x0*x1, x0*x2")),
        ("fat-point", ideal(2, "x0^2, x0*x1, x1^2")),
        ("double-line", ideal(2, "x0^2")),
        ("line-p3", ideal(3, "x0, x1")),
        (
            "sing-umbrella",
            ideal(3, "x0^2*x2 - x1^2*x3, x0*x2, x1*x3, x0^2, x1^2"),
        ),
        ("cusp-sing", ideal(2, "x1^2*x2 - x0^3, x0^2, x1*x2, x1^2")),
        ("two-points", ideal(2, "x0*x1, x2*(x0 - x1), x2^2 - x0*x1")),
        ("conic-p3", ideal(3, "x3, x0*x1 - x2^2")),
    ]
}

/// Ideals for the cutting checks.
pub fn cut_catalog() -> Vec<(&'static str, Ideal)> {
    vec![
        ("cubic-limit", cubic_limit_ideal()),
        (
            "twisted-cubic",
            ideal(3, "x0*x2 - x1^2, x0*x3 - x1*x2, x1*x3 - x2^2"),
        ),
        ("plane-line", ideal(3, "x0*x1, x0*x2")),
        ("fat-point", ideal(2, "x0^2, x0*x1, x1^2")),
        ("double-line", ideal(2, "x0^2")),
        ("nonreduced-divisor", ideal(3, "x0^2*x1")),
        ("sing-umbrella", sing(3, "x0^2*x2 - x1^2*x3")),
        ("sing-cone-nodal", sing(3, "x1^2*x2 - x0^2*x0 - x0^2*x2")),
        ("sing-cusp", sing(2, "x1^2*x2 - x0^3")),
    ]
}

/// Hypersurfaces `(n, F)` with `deg F <= 3`, `n <= 3`; several are non-reduced.
pub fn hypersurface_catalog() -> Vec<(usize, &'static str)> {
    vec![
        (1, "x0"),
        (1, "x0^2"),
        (1, "x0*x1*(x0 + x1)"),
        (2, "x0"),
        (2, "x0^2 + x1*x2"),
        (2, "x0^2"),
        (2, "x0^2*x1"),
        (2, "x1^2*x2 - x0^3"),
        (2, "x1^2*x2 - x0^2*x0 - x0^2*x2"),
        (2, "x0*x1*x2"),
        (2, "x0^3 + x1^3 + x2^3"),
        (3, "x1 + 2*x3"),
        (3, "x0*x1 - x2*x3"),
        (3, "x0^3"),
        (3, "x0^2*x2 - x1^2*x3"),
        (3, "x0^3 + x1^3 + x2^3 + x3^3"),
    ]
}

/// Hypersurfaces in `P^3` with a singular locus of positive dimension.
pub fn bertini_catalog() -> Vec<&'static str> {
    vec![
        "x0^2*x2 - x1^2*x3",
        "x1^2*x2 - x0^2*x0 - x0^2*x2",
        "x1^2*x2 - x0^3",
        "x0^2*x1 + x2^2*x3",
        "x0*x1*x2",
        "x0*x1",
    ]
}

/// Hypersurfaces whose singular locus is finite.
pub fn isolated_catalog() -> Vec<(usize, &'static str)> {
    vec![
        (2, "x1^2*x2 - x0^2*x0 - x0^2*x2"),
        (2, "x1^2*x2 - x0^3"),
        (2, "x0*x1*x2"),
        (2, "x0^2 + x1^2 + x2^2"),
        (3, "x0^2 + x1^2 + x2^2"),
    ]
}

pub fn random_homogeneous(ring: &RingRef, degree: u32, rng: &mut ChaCha8Rng) -> Poly {
    let monos = Monomial::all_of_degree(ring.nvars(), degree);
    Poly::from_terms(ring, monos.into_iter().map(|m| (m, rng.gen_range(0..P))))
}

/// A random element of `I` of the given degree.
pub fn random_member(i: &Ideal, degree: u32, rng: &mut ChaCha8Rng) -> Option<Poly> {
    let mut acc = Poly::zero(i.ring());
    for g in i.generators() {
        let gd = g.degree().unwrap();
        if gd <= degree {
            let c = random_homogeneous(i.ring(), degree - gd, rng);
            acc = acc.add(&c.mul(g).unwrap()).unwrap();
        }
    }
    (!acc.is_zero()).then_some(acc)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-echelon span of the degree-`d` part of an ideal: rows are `m * g` over
/// the monomial basis of degree `d`.
pub struct DegreeSpan {
    p: u64,
    index: HashMap<Monomial, usize>,
    /// `(pivot column, normalized row)`.
    rows: Vec<(usize, Vec<u64>)>,
    pub basis_size: usize,
}

impl DegreeSpan {
    pub fn new(gens: &[Poly], nvars: usize, d: u32) -> DegreeSpan {
        let p = gens.first().map_or(P, |g| g.ring().modulus()) as u64;
        let basis = Monomial::all_of_degree(nvars, d);
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut span = DegreeSpan {
            p,
            index,
            rows: Vec::new(),
            basis_size: basis.len(),
        };
        for g in gens {
            let Some(gd) = g.degree() else { continue };
            if gd > d {
                continue;
            }
            for m in Monomial::all_of_degree(nvars, d - gd) {
                let v = span.vector(&g.mul_term(&m, 1));
                span.insert(v);
            }
        }
        span
    }

    fn vector(&self, f: &Poly) -> Vec<u64> {
        let mut v = vec![0u64; self.basis_size];
        for (m, c) in f.terms() {
            v[self.index[m]] = *c as u64;
        }
        v
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (col, row) in &self.rows {
            let c = v[*col];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + self.p - c * b % self.p) % self.p;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u64>) {
        let mut v = self.reduce(v);
        if let Some(col) = v.iter().position(|&c| c != 0) {
            let s = inv(v[col], self.p);
            for a in v.iter_mut() {
                *a = *a * s % self.p;
            }
            // keep earlier rows reduced against the new pivot
            for (_, row) in self.rows.iter_mut() {
                let c = row[col];
                if c != 0 {
                    for (a, b) in row.iter_mut().zip(&v) {
                        *a = (*a + self.p - c * b % self.p) % self.p;
                    }
                }
            }
            self.rows.push((col, v));
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(self.vector(f)).iter().all(|&c| c == 0)
    }
}

/// Membership of a homogeneous `f` by linear algebra in degree `deg f`.
pub fn oracle_member(i: &Ideal, f: &Poly) -> bool {
    match f.degree() {
        None => true,
        Some(d) => DegreeSpan::new(i.generators(), i.ring().nvars(), d).contains(f),
    }
}

/// `dim_k (S/I)_d` from the rank of the degree-`d` span.
pub fn oracle_hilbert_rank(i: &Ideal, d: u32) -> i64 {
    let span = DegreeSpan::new(i.generators(), i.ring().nvars(), d);
    (span.basis_size - span.rank()) as i64
}

/// Degree-`d` monomials outside the monomial ideal `(lms)`.
pub fn staircase_count(lms: &[Monomial], nvars: usize, d: u32) -> i64 {
    Monomial::all_of_degree(nvars, d)
        .iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .count() as i64
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
