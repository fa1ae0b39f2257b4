//! Singular schemes of hypersurfaces and their behaviour under a general
//! hyperplane section.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    CheckInput, CheckParams, CheckStatus, Evidence, HypersurfaceInput, InputKind, TheoremCheck,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::ideal::{equal_radicals, hilbert, Ideal};
use crate::poly::{invert_matrix, linear_change, Poly, RingRef};
use crate::segre::{derive_seed, segre_class, SegreClassVector};

const TAG_HYPERPLANE: u64 = 0xb1;
const TAG_SING: u64 = 0xb2;
const TAG_A: u64 = 0xb3;
const TAG_B: u64 = 0xb4;

/// `(F, dF/dx_0, ..., dF/dx_n)`.
pub fn singular_scheme(x: &HypersurfaceInput) -> Result<Ideal> {
    let f = x.polynomial();
    let mut gens = vec![f.clone()];
    gens.extend((0..f.ring().nvars()).map(|i| f.partial_derivative(i)));
    Ideal::new(f.ring(), gens)
}

/// `I` restricted to a general hyperplane, as an ideal of `P^{n-1}`.
#[derive(Debug, Clone)]
pub struct HyperplaneSection {
    pub ideal: Ideal,
    /// The coordinate change applied before setting the last variable to zero.
    pub matrix: Vec<Vec<u32>>,
}

fn random_invertible(ring: &RingRef, seed: u64) -> Vec<Vec<u32>> {
    let n = ring.nvars();
    let p = ring.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if invert_matrix(ring.field(), &m).is_some() {
            return m;
        }
    }
}

fn restrict_with(gens: &[Poly], matrix: &[Vec<u32>], small: &RingRef) -> Result<Vec<Poly>> {
    linear_change(gens, matrix)?
        .iter()
        .map(|g| g.restrict_last_to_zero(small))
        .collect()
}

pub fn restrict_to_hyperplane(i: &Ideal, seed: u64) -> Result<HyperplaneSection> {
    let ring = i.ring();
    if ring.ambient_dim() < 1 {
        return Err(Error::Precondition(
            "hyperplane sections need n >= 1".into(),
        ));
    }
    let small = ring.without_last_var()?;
    let matrix = random_invertible(ring, seed);
    let gens = restrict_with(i.generators(), &matrix, &small)?;
    Ok(HyperplaneSection {
        ideal: Ideal::new(&small, gens)?,
        matrix,
    })
}

fn class_or_empty(i: &Ideal, trials: usize, seed: u64) -> Result<Option<SegreClassVector>> {
    if i.is_unit()? || hilbert(i)?.is_empty_scheme() {
        return Ok(None);
    }
    segre_class(i, None, trials, seed).map(Some)
}

fn class_json(c: &Option<SegreClassVector>) -> serde_json::Value {
    match c {
        None => json!({}),
        Some(c) => {
            let map: serde_json::Map<String, serde_json::Value> = (0..c.s.len())
                .rev()
                .map(|k| (k.to_string(), json!(c.s[k])))
                .collect();
            serde_json::Value::Object(map)
        }
    }
}

/// Compares `A = H ∩ Sing(X)` with `B = Sing(H ∩ X)` inside `H = P^{n-1}`: equal
/// radicals, equal Segre classes, and `s(B)_k = s(Sing X)_{k+1}`.
pub fn verify_segre_bertini(
    x: &HypersurfaceInput,
    seed: u64,
    trials: usize,
) -> Result<VerificationReport> {
    let n = x.ambient_dim();
    if n < 2 {
        return Err(Error::Precondition("Segre-Bertini needs n >= 2".into()));
    }
    let sing = singular_scheme(x)?;
    let mut report = VerificationReport::new("segre-bertini", sing.digest(), seed);

    let t = Instant::now();
    let section = restrict_to_hyperplane(&sing, derive_seed(seed, TAG_HYPERPLANE))?;
    let small = section.ideal.ring().clone();
    let f_bar = restrict_with(
        std::slice::from_ref(x.polynomial()),
        &section.matrix,
        &small,
    )?
    .pop()
    .unwrap();
    if f_bar.is_zero() {
        return Err(Error::Genericity(
            "hyperplane is contained in the hypersurface".into(),
        ));
    }
    let a = section.ideal;
    let b = singular_scheme(&HypersurfaceInput::new(f_bar)?)?;
    let (ha, hb, hs) = (hilbert(&a)?, hilbert(&b)?, hilbert(&sing)?);
    report.push(
        Evidence::new("loci", CheckStatus::Info)
            .with("sing_dim", hs.proj_dimension)
            .with("a_dim", ha.proj_dimension)
            .with("b_dim", hb.proj_dimension),
    );
    report.push(Evidence::new(
        "radical_equal",
        CheckStatus::from_bool(equal_radicals(&a, &b)?),
    ));
    report.time("sections", t.elapsed().as_millis() as u64);

    let t = Instant::now();
    if ha.is_empty_scheme() && hb.is_empty_scheme() {
        report.push(
            Evidence::new("both_empty", CheckStatus::from_bool(hs.proj_dimension <= 0))
                .with("sing_dim", hs.proj_dimension),
        );
        report.push(Evidence::new("segre_equal", CheckStatus::Vacuous));
        report.push(Evidence::new("shift_law", CheckStatus::Vacuous));
        report.time("segre", t.elapsed().as_millis() as u64);
        return Ok(report);
    }

    let sa = class_or_empty(&a, trials, derive_seed(seed, TAG_A))?;
    let sb = class_or_empty(&b, trials, derive_seed(seed, TAG_B))?;
    let same = match (&sa, &sb) {
        (Some(x), Some(y)) => x.s == y.s,
        _ => false,
    };
    report.push(
        Evidence::new("segre_equal", CheckStatus::from_bool(same))
            .with("a", class_json(&sa))
            .with("b", class_json(&sb)),
    );

    let ss = class_or_empty(&sing, trials, derive_seed(seed, TAG_SING))?;
    match (&ss, &sb) {
        (Some(s), Some(b)) if s.z_dim >= 1 => {
            let pairs: Vec<(usize, i64, i64)> = (0..s.z_dim as usize)
                .map(|k| (k, b.get(k).unwrap_or(0), s.s[k + 1]))
                .collect();
            let ok = b.z_dim == s.z_dim - 1 && pairs.iter().all(|(_, x, y)| x == y);
            report.push(
                Evidence::new("shift_law", CheckStatus::from_bool(ok))
                    .with("sing", class_json(&ss))
                    .with("b", class_json(&sb)),
            );
        }
        _ => report.push(
            Evidence::new("shift_law", CheckStatus::Fail)
                .with("sing", class_json(&ss))
                .with("b", class_json(&sb)),
        ),
    }
    report.seeds = [&sa, &sb, &ss]
        .iter()
        .filter_map(|c| c.as_ref())
        .flat_map(|c| c.seeds.clone())
        .collect();
    report.time("segre", t.elapsed().as_millis() as u64);
    Ok(report)
}

pub struct SegreBertini;

impl TheoremCheck for SegreBertini {
    fn name(&self) -> &'static str {
        "segre-bertini"
    }

    fn summary(&self) -> &'static str {
        "singular scheme of a general hyperplane section vs. section of the singular scheme"
    }

    fn input_kind(&self) -> InputKind {
        InputKind::Hypersurface
    }

    fn run(&self, input: &CheckInput, params: &CheckParams) -> Result<VerificationReport> {
        match input {
            CheckInput::Hypersurface(x) => verify_segre_bertini(x, params.seed, params.trials),
            CheckInput::Ideal(_) => Err(Error::Input(
                "segre-bertini expects a single polynomial".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Ring;

    fn hyp(n: usize, f: &str) -> HypersurfaceInput {
        let r = Ring::projective(32003, n).unwrap();
        HypersurfaceInput::new(parse_poly(f, &r).unwrap()).unwrap()
    }

    #[test]
    fn smooth_conic_has_empty_singular_scheme() {
        let s = singular_scheme(&hyp(2, "x0^2 + x1^2 + x2^2")).unwrap();
        assert!(hilbert(&s).unwrap().is_empty_scheme());
    }

    #[test]
    fn singular_line_of_quadric_cone_family() {
        let s = singular_scheme(&hyp(3, "x0^2*x2 - x1^2*x3")).unwrap();
        let r = s.ring().clone();
        let line = Ideal::parse(&r, "x0, x1").unwrap();
        assert!(equal_radicals(&s, &line).unwrap());
        let expected = Ideal::parse(&r, "x0^2, x0*x2, x1*x3, x1^2").unwrap();
        assert!(s.same_ideal(&expected).unwrap());
    }

    #[test]
    fn line_meets_plane_in_a_point() {
        let r = Ring::projective(32003, 3).unwrap();
        let i = Ideal::parse(&r, "x0, x1").unwrap();
        let h = hilbert(&restrict_to_hyperplane(&i, 5).unwrap().ideal).unwrap();
        assert_eq!((h.proj_dimension, h.degree), (0, 1));
    }

    #[test]
    fn point_misses_general_line() {
        let r = Ring::projective(32003, 2).unwrap();
        let i = Ideal::parse(&r, "x0, x1").unwrap();
        let sec = restrict_to_hyperplane(&i, 9).unwrap();
        // homogeneous, so the irrelevant ideal rather than (1)
        assert!(hilbert(&sec.ideal).unwrap().is_empty_scheme());
    }

    #[test]
    fn nodal_cubic_is_vacuous() {
        let rep = verify_segre_bertini(&hyp(2, "x1^2*x2 - x0^2*x0 - x0^2*x2"), 1, 2).unwrap();
        assert!(rep.pass, "{}", rep.to_key_value());
        assert_eq!(
            rep.evidence("segre_equal").unwrap().status,
            CheckStatus::Vacuous
        );
    }

    #[test]
    fn positive_dimensional_singular_locus() {
        let rep = verify_segre_bertini(&hyp(3, "x0^2*x2 - x1^2*x3"), 4, 2).unwrap();
        assert!(rep.pass, "{}", rep.to_key_value());
        assert_eq!(rep.evidence("shift_law").unwrap().status, CheckStatus::Pass);
    }
}
