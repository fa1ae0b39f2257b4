//! Sparse multivariate polynomials over `GF(p)` with terms kept sorted by the ring's order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Exponents, Monomial, TermOrder};

/// Ring metadata: coefficient field, variable names, active monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: TermOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(modulus: u32, vars: Vec<String>, order: TermOrder) -> Result<RingRef> {
        let field = PrimeField::new(modulus)?;
        if vars.is_empty() {
            return Err(Error::Input("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        if let TermOrder::BlockElimination(k) = order {
            if k > vars.len() {
                return Err(Error::Input(format!(
                    "cannot eliminate {k} of {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// Grevlex ring with variables named by `names`.
    pub fn grevlex(modulus: u32, names: &[&str]) -> Result<RingRef> {
        Ring::new(
            modulus,
            names.iter().map(|s| s.to_string()).collect(),
            TermOrder::GRevLex,
        )
    }

    /// Grevlex ring `x0, ..., x{n}` for projective n-space.
    pub fn projective(modulus: u32, n: usize) -> Result<RingRef> {
        Ring::new(
            modulus,
            (0..=n).map(|i| format!("x{i}")).collect(),
            TermOrder::GRevLex,
        )
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Dimension of the projective space with these homogeneous coordinates.
    pub fn ambient_dim(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: TermOrder) -> RingRef {
        Arc::new(Ring {
            field: self.field,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Prepends `names` as new variables and eliminates them with a block order.
    pub fn with_eliminated_prefix(&self, names: &[&str]) -> RingRef {
        let mut vars: Vec<String> = Vec::with_capacity(self.vars.len() + names.len());
        for n in names {
            let mut name = n.to_string();
            while self.vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            field: self.field,
            vars,
            order: TermOrder::BlockElimination(names.len()),
        })
    }

    /// Ring on the first `nvars - 1` variables, same order kind.
    pub fn without_last_var(&self) -> Result<RingRef> {
        if self.vars.len() < 2 {
            return Err(Error::Precondition("cannot drop the only variable".into()));
        }
        Ring::new(
            self.modulus(),
            self.vars[..self.vars.len() - 1].to_vec(),
            self.order,
        )
    }

    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    pub fn check_same(a: &RingRef, b: &RingRef) -> Result<()> {
        if Ring::same(a, b) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "GF({})[{}] ({:?}) vs GF({})[{}] ({:?})",
                a.modulus(),
                a.vars.join(","),
                a.order,
                b.modulus(),
                b.vars.join(","),
                b.order
            )))
        }
    }
}

/// A polynomial; terms are strictly descending in the ring's order with nonzero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: u32) -> Poly {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn term(ring: &RingRef, m: Monomial, c: u32) -> Poly {
        let c = c % ring.modulus();
        Poly {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Poly {
        let field = *ring.field();
        let order = ring.order();
        let mut terms: Vec<(Monomial, u32)> = terms.into_iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.modulus();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Builds from terms already strictly sorted and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> &PrimeField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Maximum total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map_or(0, |(_, c)| *c)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        Ring::check_same(&self.ring, &other.ring)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, self.field().neg(1), None))
    }

    pub fn neg(&self) -> Poly {
        self.scalar_mul(self.field().neg(1))
    }

    /// `self + c * m * other` by a single merge. Rings must agree.
    pub(crate) fn add_scaled(&self, other: &Poly, c: u32, m: Option<&Monomial>) -> Poly {
        let field = *self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(om, oc)| {
                (
                    match m {
                        Some(m) => om.mul(m),
                        None => om.clone(),
                    },
                    field.mul(*oc, c),
                )
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = field.add(*ac, bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                    }
                },
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scalar_mul(&self, c: u32) -> Poly {
        let field = *self.field();
        let c = c % field.modulus();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let field = *self.field();
        let c = c % field.modulus();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let field = *self.field();
        let mut acc: Vec<(Monomial, u32)> = Vec::with_capacity(self.len() * other.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                acc.push((am.mul(bm), field.mul(*ac, *bc)));
            }
        }
        Ok(Poly::from_terms(&self.ring, acc))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scalar_mul(self.field().inv(*c)),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Poly {
        let field = *self.field();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let coeff = field.mul(*c, e % field.modulus());
            if coeff == 0 {
                continue;
            }
            let mut exps: Exponents = m.exps().into();
            exps[var] -= 1;
            out.push((Monomial::new(exps), coeff));
        }
        // lowering one exponent may reorder terms in non-degree orders
        Poly::from_terms(&self.ring, out)
    }

    /// Re-expresses in `target`, mapping exponent vectors with `map`.
    pub fn map_into(&self, target: &RingRef, map: impl Fn(&[u32]) -> Exponents) -> Result<Poly> {
        if target.modulus() != self.ring.modulus() {
            return Err(Error::RingMismatch("different characteristic".into()));
        }
        Ok(Poly::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(map(m.exps())), *c)),
        ))
    }

    /// Same variables, different order (or any ring with identical variable count).
    pub fn reorder(&self, target: &RingRef) -> Result<Poly> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch("variable count differs".into()));
        }
        if Ring::same(target, &self.ring) {
            return Ok(self.clone());
        }
        self.map_into(target, |e| e.into())
    }

    /// Embeds into a ring with `k` extra leading variables.
    pub fn shift_into(&self, target: &RingRef, k: usize) -> Result<Poly> {
        if target.nvars() != self.ring.nvars() + k {
            return Err(Error::RingMismatch("unexpected variable count".into()));
        }
        self.map_into(target, |e| {
            let mut v: Exponents = smallvec::smallvec![0; k];
            v.extend_from_slice(e);
            v
        })
    }

    /// Drops the first `k` variables; fails if any term involves them.
    pub fn unshift_into(&self, target: &RingRef, k: usize) -> Result<Poly> {
        if self.terms.iter().any(|(m, _)| m.partial_degree(0..k) > 0) {
            return Err(Error::Internal(
                "polynomial involves eliminated variables".into(),
            ));
        }
        self.map_into(target, |e| e[k..].into())
    }

    /// Substitutes `x_j -> sum_i M[j][i] x_i`.
    pub fn linear_substitute(&self, m: &[Vec<u32>]) -> Poly {
        let n = self.ring.nvars();
        let field = *self.field();
        let images: Vec<Poly> = (0..n)
            .map(|j| {
                Poly::from_terms(
                    &self.ring,
                    (0..n).map(|i| (Monomial::var(n, i), m[j][i] % field.modulus())),
                )
            })
            .collect();
        let mut acc = Poly::zero(&self.ring);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(&self.ring, *c);
            for (j, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[j]).expect("same ring");
                }
            }
            acc = acc.add_scaled(&t, 1, None);
        }
        acc
    }

    /// Sets the last variable to zero and drops it.
    pub fn restrict_last_to_zero(&self, target: &RingRef) -> Result<Poly> {
        let last = self.ring.nvars() - 1;
        let kept = self.terms.iter().filter(|(m, _)| m.exps()[last] == 0);
        Ok(Poly::from_terms(
            target,
            kept.map(|(m, c)| (Monomial::new(&m.exps()[..last]), *c)),
        ))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Result<Option<Poly>> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("division by zero polynomial".into()));
        }
        let field = *self.field();
        let (glm, glc) = g.leading_term().unwrap().clone();
        let ginv = field.inv(glc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.leading_term().cloned() {
            let Some(q) = glm.quotient_of(&lm) else {
                return Ok(None);
            };
            let c = field.mul(lc, ginv);
            rem = rem.add_scaled(g, field.neg(c), Some(&q));
            quot.push((q, c));
        }
        Ok(Some(Poly::from_terms(&self.ring, quot)))
    }

    /// Symmetric-residue textual form in the input grammar.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let field = self.field();
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let v = field.to_symmetric(*c);
            let (neg, abs) = (v < 0, v.unsigned_abs());
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(m, self.ring.vars());
            match (abs, mono.is_empty()) {
                (_, true) => s.push_str(&abs.to_string()),
                (1, false) => s.push_str(&mono),
                (_, false) => {
                    s.push_str(&abs.to_string());
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

fn monomial_text(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_text())
    }
}

/// Applies `x_j -> sum_i M[j][i] x_i` to every generator.
pub fn linear_change(gens: &[Poly], m: &[Vec<u32>]) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let n = ring.nvars();
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Input(format!("change matrix must be {n}x{n}")));
    }
    if invert_matrix(ring.field(), m).is_none() {
        return Err(Error::SingularMatrix);
    }
    gens.iter()
        .map(|g| {
            Ring::check_same(g.ring(), &ring)?;
            Ok(g.linear_substitute(m))
        })
        .collect()
}

/// Gauss-Jordan inverse over the field, `None` when singular.
pub fn invert_matrix(field: &PrimeField, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u32> = row.iter().map(|v| v % field.modulus()).collect();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        let inv = field.inv(a[col][col]);
        for v in a[col].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..2 * n {
                    let sub = field.mul(f, a[col][c]);
                    a[r][c] = field.sub(a[r][c], sub);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
