//! Push-forward Segre classes `s(Z, P^n)` from residual intersections.
//!
//! For `p` general degree-`d` hypersurfaces containing `Z`, the Bézout number
//! splits as
//!
//! ```text
//! d^p = r_p + sum_{j >= n-p} C(p, j-(n-p)) d^{j-(n-p)} s_j
//! ```
//!
//! where `r_p` is the degree of the residual scheme (the part of the
//! intersection away from `Z`). Running `p = codim Z, ..., n` gives a
//! triangular system for `s_{dim Z}, ..., s_0`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classes::{binomial_signed, AmbientClass};
use crate::error::{Error, Result};
use crate::ideal::{hilbert, saturate, Ideal};
use crate::monomial::Monomial;
use crate::poly::Poly;

/// Reseeds allowed per residual computation before reporting a genericity failure.
pub const RESEEDS: u64 = 3;

/// Default number of independent solves that must agree.
pub const DEFAULT_TRIALS: usize = 2;

/// SplitMix64 step; used to derive independent sub-seeds.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    let mut z = base ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random elements of the degree-`d` piece of an ideal.
#[derive(Debug, Clone)]
pub struct LinearSystemSample {
    pub source_digest: String,
    pub degree: u32,
    pub seed: u64,
    /// Columns of `matrix`: `(generator index, multiplier)` with `deg = d`.
    pub spanning_set: Vec<(usize, Monomial)>,
    /// One row per sampled element.
    pub matrix: Vec<Vec<u32>>,
    pub elements: Vec<Poly>,
}

impl LinearSystemSample {
    pub fn count(&self) -> usize {
        self.elements.len()
    }
}

/// `count` uniformly random combinations of `{m·f_i : deg(m·f_i) = d}`.
pub fn general_elements(i: &Ideal, d: u32, count: usize, seed: u64) -> Result<LinearSystemSample> {
    if !i.is_homogeneous() {
        return Err(Error::Precondition(
            "general elements need a homogeneous ideal".into(),
        ));
    }
    if d < i.max_degree() {
        return Err(Error::Precondition(format!(
            "degree {d} is below the maximal generator degree {}",
            i.max_degree()
        )));
    }
    let ring = i.ring();
    let field = *ring.field();
    let mut spanning_set = Vec::new();
    for (gi, g) in i.generators().iter().enumerate() {
        let e = g.degree().unwrap();
        for m in Monomial::all_of_degree(ring.nvars(), d - e) {
            spanning_set.push((gi, m));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = Vec::with_capacity(count);
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        let row: Vec<u32> = (0..spanning_set.len())
            .map(|_| rng.gen_range(0..field.modulus()))
            .collect();
        let mut acc = Poly::zero(ring);
        for (gi, g) in i.generators().iter().enumerate() {
            let multiplier = Poly::from_terms(
                ring,
                spanning_set
                    .iter()
                    .zip(&row)
                    .filter(|((k, _), _)| *k == gi)
                    .map(|((_, m), c)| (m.clone(), *c)),
            );
            acc = acc.add(&multiplier.mul(g)?)?;
        }
        matrix.push(row);
        elements.push(acc);
    }
    Ok(LinearSystemSample {
        source_digest: i.digest(),
        degree: d,
        seed,
        spanning_set,
        matrix,
        elements,
    })
}

/// Outcome of one residual computation.
#[derive(Debug, Clone)]
pub struct Residual {
    /// Degree of the `(n - p)`-dimensional part of the residual scheme.
    pub degree: u64,
    pub residual: Ideal,
    /// Ideal generated by the sampled hypersurfaces.
    pub cut: Ideal,
    pub seed: u64,
    pub attempts: u64,
}

/// Residual of `p` general degree-`d` hypersurfaces through `V(I)`.
pub fn residual_degree(i: &Ideal, p: usize, d: u32, seed: u64) -> Result<Residual> {
    let h = hilbert(i)?;
    let n = i.ambient_dim();
    if h.is_empty_scheme() {
        return Err(Error::Precondition("V(I) is empty".into()));
    }
    let codim = n - h.proj_dimension as usize;
    if p < codim || p > n {
        return Err(Error::Precondition(format!(
            "need codim {codim} <= p = {p} <= {n}"
        )));
    }
    residual_unchecked(i, p, d, seed)
}

fn residual_unchecked(i: &Ideal, p: usize, d: u32, seed: u64) -> Result<Residual> {
    let n = i.ambient_dim() as i64;
    let expected = n - p as i64;
    let mut seen = Vec::new();
    for attempt in 0..=RESEEDS {
        let s = derive_seed(seed, attempt);
        let sample = general_elements(i, d, p, s)?;
        let cut = Ideal::new(i.ring(), sample.elements)?;
        let (residual, _) = saturate(&cut, i)?;
        let h = hilbert(&residual)?;
        if h.proj_dimension > expected {
            seen.push(h.proj_dimension);
            continue;
        }
        let degree = if h.proj_dimension == expected {
            h.degree
        } else {
            0
        };
        return Ok(Residual {
            degree,
            residual,
            cut,
            seed: s,
            attempts: attempt + 1,
        });
    }
    Err(Error::Genericity(format!(
        "residual of {p} general degree-{d} hypersurfaces had dimensions {seen:?}, expected <= {expected}"
    )))
}

/// Push-forward of `s(Z, P^n)`: `s[k]` is the degree of the dimension-`k` piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreClassVector {
    pub ambient_dim: usize,
    /// `dim Z`; `-1` when `Z` is empty.
    pub z_dim: i64,
    /// Indexed by dimension, `0..=z_dim`. Entries below `lowest_dim` are not computed.
    pub s: Vec<i64>,
    pub lowest_dim: usize,
    pub degree: u32,
    /// Residual degrees `r_p`, keyed by `p`, from the first trial.
    pub residuals: BTreeMap<usize, u64>,
    pub seeds: Vec<u64>,
    pub trials: usize,
}

impl SegreClassVector {
    fn empty(ambient_dim: usize, degree: u32, seeds: Vec<u64>, trials: usize) -> Self {
        SegreClassVector {
            ambient_dim,
            z_dim: -1,
            s: Vec::new(),
            lowest_dim: 0,
            degree,
            residuals: BTreeMap::new(),
            seeds,
            trials,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.z_dim < 0
    }

    /// `s[k]`; zero above `dim Z`, `None` below the computed range.
    pub fn get(&self, k: usize) -> Option<i64> {
        if k < self.lowest_dim && (k as i64) <= self.z_dim {
            return None;
        }
        Some(self.s.get(k).copied().unwrap_or(0))
    }

    pub fn top(&self) -> Option<i64> {
        (self.z_dim >= 0).then(|| self.s[self.z_dim as usize])
    }

    /// The class as an element of the ambient calculus.
    pub fn to_class(&self) -> AmbientClass {
        AmbientClass::from_degrees(self.ambient_dim, &self.s)
    }

    /// Same class data, ignoring provenance (degree, seeds, residuals).
    pub fn same_class(&self, other: &SegreClassVector) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.z_dim == other.z_dim
            && self.lowest_dim == other.lowest_dim
            && self.s == other.s
    }
}

/// Knobs for [`segre_class_with`].
#[derive(Debug, Clone, Copy)]
pub struct SegreOptions {
    /// Degree of the hypersurfaces; defaults to the maximal generator degree.
    pub degree: Option<u32>,
    pub trials: usize,
    pub seed: u64,
    /// Only solve for dimensions `>= lowest_dim`.
    pub lowest_dim: usize,
}

impl Default for SegreOptions {
    fn default() -> Self {
        SegreOptions {
            degree: None,
            trials: DEFAULT_TRIALS,
            seed: 0,
            lowest_dim: 0,
        }
    }
}

/// `s(Z, P^n)` for `Z = V(I)` with all dimensions computed.
pub fn segre_class(
    i: &Ideal,
    degree: Option<u32>,
    trials: usize,
    seed: u64,
) -> Result<SegreClassVector> {
    segre_class_with(
        i,
        &SegreOptions {
            degree,
            trials,
            seed,
            lowest_dim: 0,
        },
    )
}

pub fn segre_class_with(i: &Ideal, opts: &SegreOptions) -> Result<SegreClassVector> {
    if !i.is_homogeneous() {
        return Err(Error::Precondition(
            "Segre classes need a homogeneous ideal".into(),
        ));
    }
    if i.is_zero() || i.is_unit()? {
        return Err(Error::Precondition(
            "ideal must be proper and nonzero".into(),
        ));
    }
    if opts.trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let d = opts.degree.unwrap_or_else(|| i.max_degree());
    if d < i.max_degree() {
        return Err(Error::Precondition(format!(
            "degree {d} is below the maximal generator degree {}",
            i.max_degree()
        )));
    }
    let n = i.ambient_dim();
    let h = hilbert(i)?;
    let seeds: Vec<u64> = (0..opts.trials as u64)
        .map(|t| derive_seed(opts.seed, t))
        .collect();
    if h.is_empty_scheme() {
        return Ok(SegreClassVector::empty(n, d, seeds, opts.trials));
    }
    let z_dim = h.proj_dimension as usize;

    let runs: Vec<Result<Solution>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&s| scope.spawn(move || solve(i, n, z_dim, d, opts.lowest_dim, s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial panicked"))
            .collect()
    });
    let mut vectors = Vec::with_capacity(runs.len());
    let mut residuals = BTreeMap::new();
    for (t, run) in runs.into_iter().enumerate() {
        let (v, r) = run?;
        if t == 0 {
            residuals = r;
        }
        vectors.push(v);
    }
    if vectors.iter().any(|v| *v != vectors[0]) {
        return Err(Error::Genericity(format!(
            "independent trials disagree: {vectors:?}"
        )));
    }
    let s = vectors.swap_remove(0);
    if s[z_dim] <= 0 && opts.lowest_dim <= z_dim {
        return Err(Error::Genericity(format!(
            "top Segre coefficient {} is not positive",
            s[z_dim]
        )));
    }
    Ok(SegreClassVector {
        ambient_dim: n,
        z_dim: z_dim as i64,
        s,
        lowest_dim: opts.lowest_dim.min(z_dim + 1),
        degree: d,
        residuals,
        seeds,
        trials: opts.trials,
    })
}

/// Segre entries by dimension and residual degrees by `p`.
type Solution = (Vec<i64>, BTreeMap<usize, u64>);

/// One triangular solve from the top dimension down to `lowest`.
fn solve(i: &Ideal, n: usize, z_dim: usize, d: u32, lowest: usize, seed: u64) -> Result<Solution> {
    let d = d as i64;
    let mut s = vec![0i64; z_dim + 1];
    let mut residuals = BTreeMap::new();
    for k in (lowest..=z_dim).rev() {
        let p = n - k;
        let r = residual_unchecked(i, p, d as u32, derive_seed(seed, 1000 + p as u64))?;
        residuals.insert(p, r.degree);
        let mut rhs = d.pow(p as u32) - r.degree as i64;
        for (j, sj) in s.iter().enumerate().skip(k + 1) {
            rhs -= binomial_signed(p as i64, j - k) * d.pow((j - k) as u32) * sj;
        }
        s[k] = rhs;
    }
    Ok((s, residuals))
}

/// Contribution of `Z` to the intersection of `p` general degree-`d` hypersurfaces:
/// the dimension-`(n - p)` degree of `c(O(dH))^p ∩ s(Z, P^n)`.
pub fn contribution(class: &SegreClassVector, p: usize, d: u32) -> i64 {
    let n = class.ambient_dim;
    if p > n || class.is_empty() {
        return 0;
    }
    let m = n - p;
    let d = d as i64;
    class
        .s
        .iter()
        .enumerate()
        .skip(m)
        .map(|(j, sj)| binomial_signed(p as i64, j - m) * d.pow((j - m) as u32) * sj)
        .sum()
}

/// Sum over the points of a zero-dimensional `Z` of the Samuel multiplicity of `P^n` along `Z`.
pub fn hilbert_samuel_sum(i: &Ideal, trials: usize, seed: u64) -> Result<i64> {
    let h = hilbert(i)?;
    if h.proj_dimension != 0 {
        return Err(Error::Precondition(format!(
            "multiplicity needs a zero-dimensional scheme, got dimension {}",
            h.proj_dimension
        )));
    }
    let class = segre_class(i, None, trials, seed)?;
    Ok(class.s[0])
}
