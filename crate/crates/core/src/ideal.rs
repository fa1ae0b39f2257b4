//! Ideal-level calculus over a polynomial ring: intersections, colon ideals,
//! saturation, elimination, radical membership and Hilbert data.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, digest_of, GroebnerBasis};
use crate::hilbert::HilbertData;
use crate::monomial::TermOrder;
use crate::poly::{Poly, Ring, RingRef};

/// An ideal given by nonzero generators; the grevlex basis is computed once on demand.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.to_text())
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            Ring::check_same(g.ring(), ring)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![Poly::one(ring)],
            gb: OnceLock::new(),
        }
    }

    /// Parses comma-separated generators in the polynomial grammar.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Ideal> {
        let gens = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| crate::parse::parse_poly(s, ring).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    fn from_basis(gb: GroebnerBasis) -> Ideal {
        let ring = gb.ring().clone();
        let gens = gb.generators().to_vec();
        let cache = OnceLock::new();
        let _ = cache.set(gb);
        Ideal {
            ring,
            gens,
            gb: cache,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring.ambient_dim()
    }

    pub fn digest(&self) -> String {
        digest_of(&self.gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn max_degree(&self) -> u32 {
        self.gens
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    /// Reduced basis in the ring's own order (grevlex for user-facing rings).
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger(&self.ring, &self.gens, self.ring.order())?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.groebner()?.contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (reduced bases coincide).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ring::check_same(&self.ring, &other.ring)?;
        Ok(self.groebner()?.generators() == other.groebner()?.generators())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Canonical generators: the reduced basis.
    pub fn reduced(&self) -> Result<Ideal> {
        Ok(Ideal::from_basis(self.groebner()?.clone()))
    }

    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_text()).collect();
        format!("({})", gens.join(", "))
    }

    pub fn hilbert(&self) -> Result<HilbertData> {
        hilbert(self)
    }
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    Ring::check_same(&i.ring, &j.ring)?;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(&i.ring));
    }
    if i.is_unit()? {
        return j.reduced();
    }
    if j.is_unit()? {
        return i.reduced();
    }
    let ext = i.ring.with_eliminated_prefix(&["t"]);
    let t = Poly::var(&ext, 0);
    let one_minus_t = Poly::one(&ext).sub(&t)?;
    let mut gens = Vec::with_capacity(i.gens.len() + j.gens.len());
    for g in &i.gens {
        gens.push(g.shift_into(&ext, 1)?.mul(&t)?);
    }
    for g in &j.gens {
        gens.push(g.shift_into(&ext, 1)?.mul(&one_minus_t)?);
    }
    eliminated_part(&ext, &gens, 1, &i.ring)
}

/// Basis of `(gens)` in the block ring `ext`, keeping elements free of the first `k` variables.
fn eliminated_part(ext: &RingRef, gens: &[Poly], k: usize, target: &RingRef) -> Result<Ideal> {
    let gb = buchberger(ext, gens, ext.order())?;
    let kept = gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.partial_degree(0..k) == 0))
        .map(|g| g.unshift_into(target, k))
        .collect::<Result<Vec<_>>>()?;
    // the block order restricted to the remaining variables is the target's grevlex,
    // so the surviving elements already form its reduced basis
    if target.order() == TermOrder::GRevLex {
        let source = digest_of(&kept);
        Ok(Ideal::from_basis(GroebnerBasis::from_parts(
            target.clone(),
            kept,
            source,
        )))
    } else {
        Ideal::new(target, kept)
    }
}

/// `I : (g)` for a single nonzero polynomial.
pub fn quotient_by_poly(i: &Ideal, g: &Poly) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::Precondition(
            "quotient by the zero polynomial".into(),
        ));
    }
    if i.contains(g)? {
        return Ok(Ideal::unit(&i.ring));
    }
    let principal = Ideal::new(&i.ring, vec![g.clone()])?;
    let meet = intersect(i, &principal)?;
    let mut gens = Vec::with_capacity(meet.gens.len());
    for h in &meet.gens {
        match h.div_exact(g)? {
            Some(q) => gens.push(q),
            None => {
                return Err(Error::Internal(format!(
                    "{} is not divisible by {} inside I ∩ (g)",
                    h, g
                )))
            }
        }
    }
    Ideal::new(&i.ring, gens)?.reduced()
}

/// Colon ideal `I : J = ∩_g (I : g)` over the generators of `J`.
pub fn quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    Ring::check_same(&i.ring, &j.ring)?;
    if j.is_zero() {
        return Err(Error::Precondition("quotient by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for g in &j.gens {
        let q = quotient_by_poly(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    acc.unwrap().reduced()
}

/// `I : J^∞` by iterated quotients; returns the stable ideal and the number of quotients taken.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<(Ideal, usize)> {
    let mut cur = i.reduced()?;
    let mut steps = 0;
    loop {
        let next = quotient(&cur, j)?;
        steps += 1;
        if next.same_ideal(&cur)? {
            return Ok((next, steps));
        }
        cur = next;
    }
}

/// `I ∩ k[x_k, ..., x_n]`, returned in the ring of the remaining variables.
pub fn eliminate(i: &Ideal, k: usize) -> Result<Ideal> {
    let nvars = i.ring.nvars();
    if k >= nvars {
        return Err(Error::Precondition(format!(
            "cannot eliminate {k} of {nvars} variables"
        )));
    }
    if k == 0 {
        return Ok(i.clone());
    }
    let block = i.ring.with_order(TermOrder::BlockElimination(k));
    let gens = i
        .gens
        .iter()
        .map(|g| g.reorder(&block))
        .collect::<Result<Vec<_>>>()?;
    let target = Ring::new(
        i.ring.modulus(),
        i.ring.vars()[k..].to_vec(),
        TermOrder::GRevLex,
    )?;
    eliminated_part(&block, &gens, k, &target)
}

/// `f ∈ √I`, decided by `1 ∈ I + (t·f - 1)`.
pub fn radical_member(f: &Poly, i: &Ideal) -> Result<bool> {
    Ring::check_same(f.ring(), &i.ring)?;
    if f.is_zero() || i.contains(f)? {
        return Ok(true);
    }
    let ext = i.ring.with_eliminated_prefix(&["t"]);
    let mut gens = i
        .gens
        .iter()
        .map(|g| g.shift_into(&ext, 1))
        .collect::<Result<Vec<_>>>()?;
    let tf = f.shift_into(&ext, 1)?.mul(&Poly::var(&ext, 0))?;
    gens.push(tf.sub(&Poly::one(&ext))?);
    Ok(buchberger(&ext, &gens, ext.order())?.is_unit())
}

/// `√I = √J`, checked generator by generator.
pub fn equal_radicals(i: &Ideal, j: &Ideal) -> Result<bool> {
    Ring::check_same(&i.ring, &j.ring)?;
    for g in &i.gens {
        if !radical_member(g, j)? {
            return Ok(false);
        }
    }
    for g in &j.gens {
        if !radical_member(g, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hilbert data of `S/I` from the leading monomials of the grevlex basis.
pub fn hilbert(i: &Ideal) -> Result<HilbertData> {
    if !i.is_homogeneous() {
        return Err(Error::Precondition(
            "Hilbert series needs a homogeneous ideal".into(),
        ));
    }
    let gb = if i.ring.order() == TermOrder::GRevLex {
        i.groebner()?.clone()
    } else {
        buchberger(&i.ring, &i.gens, TermOrder::GRevLex)?
    };
    Ok(HilbertData::from_leading_monomials(
        i.ring.nvars(),
        &gb.leading_monomials(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::grevlex(32003, vars).unwrap()
    }

    fn ideal(r: &RingRef, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let i = intersect(&ideal(&r, "x"), &ideal(&r, "y")).unwrap();
        assert!(i.same_ideal(&ideal(&r, "x*y")).unwrap());
        let u = intersect(&ideal(&r, "x^2, x*y"), &Ideal::unit(&r)).unwrap();
        assert!(u.same_ideal(&ideal(&r, "x^2, x*y")).unwrap());
        let c = intersect(&ideal(&r, "x^2"), &ideal(&r, "x, y")).unwrap();
        assert!(c.same_ideal(&ideal(&r, "x^2")).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        let q = quotient(&ideal(&r, "x^2, x*y"), &ideal(&r, "x")).unwrap();
        assert!(q.same_ideal(&ideal(&r, "x, y")).unwrap());
        let q = quotient(&ideal(&r, "x*y"), &ideal(&r, "x")).unwrap();
        assert!(q.same_ideal(&ideal(&r, "y")).unwrap());
        let i = ideal(&r, "x^2, x*y");
        assert!(quotient(&i, &Ideal::unit(&r))
            .unwrap()
            .same_ideal(&i)
            .unwrap());
        assert!(quotient(&i, &Ideal::zero(&r)).is_err());
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let (s, k) = saturate(&ideal(&r, "x^2, x*y"), &ideal(&r, "x, y")).unwrap();
        assert!(s.same_ideal(&ideal(&r, "x")).unwrap());
        assert_eq!(k, 2);
        let i = ideal(&r, "x^2, x*y");
        let (s, k) = saturate(&i, &Ideal::unit(&r)).unwrap();
        assert!(s.same_ideal(&i).unwrap());
        assert_eq!(k, 1);
        let (s, k) = saturate(&ideal(&r, "x^2"), &ideal(&r, "x^2")).unwrap();
        assert!(s.is_unit().unwrap());
        assert!(k >= 1);
    }

    #[test]
    fn eliminations() {
        let r = ring(&["t", "x", "y"]);
        let e = eliminate(&ideal(&r, "t*x - 1, t*y"), 1).unwrap();
        let sub = ring(&["x", "y"]);
        assert_eq!(e.ring().vars(), sub.vars());
        assert!(e.same_ideal(&ideal(e.ring(), "y")).unwrap());
        let r2 = ring(&["x", "y"]);
        assert!(eliminate(&ideal(&r2, "x - y"), 1).unwrap().is_zero());
        let i = ideal(&r2, "x - y");
        assert!(eliminate(&i, 0).unwrap().same_ideal(&i).unwrap());
        assert!(eliminate(&i, 2).is_err());
    }

    #[test]
    fn radicals() {
        let r = ring(&["x", "y", "z", "w"]);
        let x = crate::parse::parse_poly("x", &r).unwrap();
        let y = crate::parse::parse_poly("y", &r).unwrap();
        assert!(radical_member(&x, &ideal(&r, "x^2")).unwrap());
        assert!(!radical_member(&y, &ideal(&r, "x")).unwrap());
        let limit = ideal(&r, "z^2, y*z, x*z, y^2*w - x^2*(x+w)");
        let z = crate::parse::parse_poly("z", &r).unwrap();
        assert!(radical_member(&z, &limit).unwrap());
        assert!(equal_radicals(&ideal(&r, "x^2"), &ideal(&r, "x")).unwrap());
        assert!(!equal_radicals(&ideal(&r, "x"), &ideal(&r, "y")).unwrap());
    }

    #[test]
    fn hilbert_examples() {
        let p2 = ring(&["x0", "x1", "x2"]);
        let h = hilbert(&ideal(&p2, "x0")).unwrap();
        assert_eq!((h.proj_dimension, h.degree), (1, 1));
        let p3 = ring(&["x", "y", "z", "w"]);
        let tc = hilbert(&ideal(&p3, "x*z - y^2, x*w - y*z, y*w - z^2")).unwrap();
        assert_eq!((tc.proj_dimension, tc.degree), (1, 3));
        let limit = hilbert(&ideal(&p3, "z^2, y*z, x*z, y^2*w - x^2*(x+w)")).unwrap();
        assert_eq!((limit.proj_dimension, limit.degree), (1, 3));
        let irr = hilbert(&ideal(&p2, "x0, x1, x2")).unwrap();
        assert_eq!((irr.proj_dimension, irr.degree), (-1, 0));
    }

    #[test]
    fn hilbert_rejects_inhomogeneous() {
        let r = ring(&["x", "y"]);
        assert!(hilbert(&ideal(&r, "x^2 - y")).is_err());
    }
}
