//! Reduced Gröbner bases by Buchberger's algorithm with sugar selection and
//! the Gebauer–Möller pair criteria.

use std::cmp::Ordering;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Poly, Ring, RingRef};

/// Environment variable overriding the per-basis S-pair budget.
pub const BUDGET_ENV: &str = "SEGRE_BUDGET";

const DEFAULT_MAX_PAIRS: usize = 2_000_000;
const DEFAULT_MAX_DEGREE: u32 = 200;

/// Fail-fast limits for a single Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: DEFAULT_MAX_PAIRS,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl Budget {
    /// Process-wide budget, read once from `SEGRE_BUDGET` (a pair count).
    pub fn global() -> Budget {
        static GLOBAL: OnceLock<Budget> = OnceLock::new();
        *GLOBAL.get_or_init(|| {
            let mut b = Budget::default();
            if let Some(v) = std::env::var(BUDGET_ENV)
                .ok()
                .and_then(|s| s.trim().parse().ok())
            {
                b.max_pairs = v;
            }
            b
        })
    }
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    gens: Vec<Poly>,
    source_digest: String,
}

impl GroebnerBasis {
    /// Wraps polynomials already known to form a reduced basis.
    pub(crate) fn from_parts(ring: RingRef, gens: Vec<Poly>, source_digest: String) -> Self {
        GroebnerBasis {
            ring,
            gens,
            source_digest,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Poly> {
        self.gens
    }

    pub fn source_digest(&self) -> &str {
        &self.source_digest
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Remainder of `f` under division by the basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ring::check_same(f.ring(), &self.ring)?;
        let lms = self.leading_monomials();
        Ok(reduce_full(f, &self.gens, &lms))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Re-checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let lms = self.leading_monomials();
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let (s, _) = s_polynomial(&self.gens[i], &self.gens[j], 0, 0);
                if !reduce_full(&s, &self.gens, &lms).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Multi-line listing in the polynomial grammar.
    pub fn to_text(&self) -> String {
        self.gens
            .iter()
            .map(|g| g.to_text())
            .collect::<Vec<_>>()
            .join(",\n")
    }
}

pub fn digest_of(gens: &[Poly]) -> String {
    let mut h = Sha256::new();
    for g in gens {
        h.update(g.to_text().as_bytes());
        h.update(b";");
    }
    hex::encode(&h.finalize()[..8])
}

/// Reduced Gröbner basis of `(gens)` in `ring` re-ordered by `order`, using the global budget.
pub fn buchberger(ring: &RingRef, gens: &[Poly], order: TermOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ring, gens, order, Budget::global())
}

pub fn buchberger_with_budget(
    ring: &RingRef,
    gens: &[Poly],
    order: TermOrder,
    budget: Budget,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring().vars() != ring.vars() || g.ring().modulus() != ring.modulus() {
            return Err(Error::RingMismatch(
                "generators from different rings".into(),
            ));
        }
    }
    let target = if ring.order() == order {
        ring.clone()
    } else {
        ring.with_order(order)
    };
    let input: Vec<Poly> = gens
        .iter()
        .map(|g| g.reorder(&target))
        .collect::<Result<_>>()?;
    let source_digest = digest_of(gens);
    let gens = Buchberger::new(&target, budget).run(input)?;
    Ok(GroebnerBasis {
        ring: target,
        gens,
        source_digest,
    })
}

/// `normal_form(f, G)`; fails when the orders disagree.
pub fn normal_form(f: &Poly, g: &GroebnerBasis) -> Result<Poly> {
    if f.ring().order() != g.order() {
        return Err(Error::RingMismatch(format!(
            "order {:?} vs basis order {:?}",
            f.ring().order(),
            g.order()
        )));
    }
    g.normal_form(f)
}

/// `f ∈ (gens)` decided with a grevlex basis.
pub fn ideal_membership(f: &Poly, gens: &[Poly]) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(f.ring(), gens, TermOrder::GRevLex)?;
    gb.contains(&f.reorder(gb.ring())?)
}

/// S-polynomial of two monic polynomials plus its sugar degree.
fn s_polynomial(f: &Poly, g: &Poly, sugar_f: u32, sugar_g: u32) -> (Poly, u32) {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let lcm = lf.lcm(lg);
    let mf = lf.quotient_of(&lcm).unwrap();
    let mg = lg.quotient_of(&lcm).unwrap();
    let sugar = (sugar_f + mf.degree()).max(sugar_g + mg.degree());
    let a = f.mul_term(&mf, 1);
    let minus_one = f.field().neg(1);
    (a.add_scaled(g, minus_one, Some(&mg)), sugar)
}

/// Full reduction of `f` by monic `basis` (with precomputed leading monomials).
pub(crate) fn reduce_full(f: &Poly, basis: &[Poly], lms: &[Monomial]) -> Poly {
    reduce_by(f, |lm| {
        lms.iter()
            .position(|g| g.divides(lm))
            .map(|k| (&basis[k], &lms[k]))
    })
}

/// Full reduction where `find` returns a monic reducer for a monomial, if any.
fn reduce_by<'b>(f: &Poly, find: impl Fn(&Monomial) -> Option<(&'b Poly, &'b Monomial)>) -> Poly {
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    let mut p = f.clone();
    loop {
        let Some((lm, lc)) = p.leading_term().cloned() else {
            break;
        };
        match find(&lm) {
            Some((g, glm)) => {
                let q = glm.quotient_of(&lm).unwrap();
                p = p.add_scaled(g, field.neg(lc), Some(&q));
            }
            None => {
                remainder.push((lm, lc));
                let mut terms = p.into_terms();
                terms.remove(0);
                p = Poly::from_sorted_unchecked(&ring, terms);
            }
        }
    }
    Poly::from_sorted_unchecked(&ring, remainder)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger<'a> {
    ring: &'a RingRef,
    budget: Budget,
    polys: Vec<Poly>,
    sugars: Vec<u32>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Buchberger<'a> {
    fn new(ring: &'a RingRef, budget: Budget) -> Self {
        Buchberger {
            ring,
            budget,
            polys: Vec::new(),
            sugars: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn reduce(&self, f: &Poly) -> Poly {
        reduce_by(f, |lm| {
            self.active
                .iter()
                .find(|&&k| self.lms[k].divides(lm))
                .map(|&k| (&self.polys[k], &self.lms[k]))
        })
    }

    fn run(mut self, input: Vec<Poly>) -> Result<Vec<Poly>> {
        let mut input: Vec<Poly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        // deterministic insertion: ascending leading monomial
        let order = self.ring.order();
        input.sort_by(|a, b| {
            order
                .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
                .then_with(|| a.len().cmp(&b.len()))
        });
        for f in input {
            let sugar = f.degree().unwrap();
            let h = self.reduce(&f);
            if !h.is_zero() {
                if h.is_constant() {
                    return Ok(vec![Poly::one(self.ring)]);
                }
                self.insert(h.monic(), sugar);
            }
        }

        let mut processed = 0usize;
        while !self.pairs.is_empty() {
            let idx = self.select();
            let pair = self.pairs.swap_remove(idx);
            processed += 1;
            if processed > self.budget.max_pairs {
                return Err(Error::Budget(format!(
                    "more than {} S-pairs in one basis computation",
                    self.budget.max_pairs
                )));
            }
            if pair.sugar > self.budget.max_degree {
                return Err(Error::Budget(format!(
                    "sugar degree {} exceeds cap {}",
                    pair.sugar, self.budget.max_degree
                )));
            }
            let (s, sugar) = s_polynomial(
                &self.polys[pair.i],
                &self.polys[pair.j],
                self.sugars[pair.i],
                self.sugars[pair.j],
            );
            let h = self.reduce(&s);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(vec![Poly::one(self.ring)]);
            }
            self.insert(h.monic(), sugar);
        }
        Ok(self.finish())
    }

    /// Minimal sugar, then smallest lcm, then pair indices.
    fn select(&self) -> usize {
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        best
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: Poly, sugar: u32) {
        let hi = self.polys.len();
        let hlm = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.sugars.push(sugar);
        self.lms.push(hlm.clone());

        let candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lcm = self.lms[g].lcm(&hlm);
                let sugar = (self.sugars[g] + lcm.degree() - self.lms[g].degree())
                    .max(sugar + lcm.degree() - hlm.degree());
                Pair {
                    i: g,
                    j: hi,
                    lcm,
                    sugar,
                }
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = self.lms[p.i].is_coprime(&hlm);
            let dominated_later = candidates[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !self.lms[p.i].is_coprime(&hlm));

        // drop old pairs made redundant by h
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm) && lms[p.i].lcm(&hlm) != p.lcm && lms[p.j].lcm(&hlm) != p.lcm)
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !hlm.divides(&lms[g]));
        self.active.push(hi);
    }

    fn finish(self) -> Vec<Poly> {
        let order = self.ring.order();
        let mut basis: Vec<Poly> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        basis.sort_by(|a, b| {
            order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        // minimal: no leading monomial divides another
        let mut minimal: Vec<Poly> = Vec::new();
        for g in basis {
            let lm = g.leading_monomial().unwrap();
            if !minimal
                .iter()
                .any(|m| m.leading_monomial().unwrap().divides(lm))
            {
                minimal.push(g);
            }
        }
        let lms: Vec<Monomial> = minimal
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone())
                .collect();
            let other_lms: Vec<Monomial> = lms
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, m)| m.clone())
                .collect();
            reduced.push(reduce_full(&minimal[k], &others, &other_lms).monic());
        }
        reduced
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::grevlex(32003, vars).unwrap()
    }

    fn polys(r: &RingRef, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    #[test]
    fn gaussian_elimination_case() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x + y", "y"]), TermOrder::GRevLex).unwrap();
        assert_eq!(gb.generators(), polys(&r, &["y", "x"]).as_slice());
    }

    #[test]
    fn twisted_cubic_basis_is_its_minors() {
        let r = ring(&["x", "y", "z", "w"]);
        let gens = polys(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
        let gb = buchberger(&r, &gens, TermOrder::GRevLex).unwrap();
        assert_eq!(gb.generators().len(), 3);
        assert!(gb.satisfies_buchberger_criterion());
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        for g in gb.generators() {
            assert!(gens.contains(g) || gens.contains(&g.neg()));
        }
    }

    #[test]
    fn worked_example_ideal_contains_z_cubed() {
        let r = ring(&["x", "y", "z", "w"]);
        let gens = polys(&r, &["z^2", "y*z", "x*z", "y^2*w - x^2*(x+w)"]);
        let gb = buchberger(&r, &gens, TermOrder::GRevLex).unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.contains(&parse_poly("z^3", &r).unwrap()).unwrap());
        assert!(!gb.contains(&parse_poly("z", &r).unwrap()).unwrap());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y", "z"]);
        let gb = buchberger(&r, &polys(&r, &["x^2 - z^2"]), TermOrder::GRevLex).unwrap();
        let nf = gb.normal_form(&parse_poly("x^2*y", &r).unwrap()).unwrap();
        assert_eq!(nf, parse_poly("y*z^2", &r).unwrap());
        assert!(gb.normal_form(&gb.generators()[0]).unwrap().is_zero());
        assert_eq!(gb.normal_form(&Poly::one(&r)).unwrap(), Poly::one(&r));
    }

    #[test]
    fn normal_form_rejects_order_mismatch() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x - y"]), TermOrder::Lex).unwrap();
        assert!(normal_form(&Poly::var(&r, 0), &gb).is_err());
    }

    #[test]
    fn memberships() {
        let r = ring(&["x", "y"]);
        assert!(ideal_membership(&Poly::zero(&r), &polys(&r, &["x^2"])).unwrap());
        assert!(!ideal_membership(&Poly::var(&r, 0), &polys(&r, &["x^2", "x*y"])).unwrap());
    }

    #[test]
    fn empty_input_is_zero_ideal() {
        let r = ring(&["x"]);
        assert!(buchberger(&r, &[], TermOrder::GRevLex)
            .unwrap()
            .is_zero_ideal());
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x*y - 1", "x"]), TermOrder::GRevLex).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn lex_elimination_example() {
        // x^2 + y^2 - 1, x - y: lex basis ends with a univariate in y
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x^2 + y^2 - 1", "x - y"]), TermOrder::Lex).unwrap();
        let lr = gb.ring().clone();
        assert_eq!(
            gb.generators(),
            polys(&lr, &["y^2 - 16002", "x - y"]).as_slice()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(&["x", "y", "z", "w"]);
        let gens = polys(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
        let tight = Budget {
            max_pairs: 1000,
            max_degree: 2,
        };
        assert!(matches!(
            buchberger_with_budget(&r, &gens, TermOrder::GRevLex, tight),
            Err(Error::Budget(_))
        ));
    }
}
