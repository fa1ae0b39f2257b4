//! Cutting a scheme by general members of a linear system through it:
//! `n + 1` cuts, `n` cuts with the residual excised, and `n - c` cuts
//! compared above dimension `c`.

use std::time::Instant;

use serde_json::json;

use super::{
    expect_ideal, CheckInput, CheckParams, CheckStatus, Evidence, InputKind, TheoremCheck,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::hilbert::HilbertData;
use crate::ideal::{equal_radicals, hilbert, saturate, Ideal};
use crate::segre::{
    derive_seed, general_elements, segre_class, segre_class_with, SegreClassVector, SegreOptions,
};

const TAG_SAMPLE: u64 = 0x5a;
const TAG_INPUT_CLASS: u64 = 0x51;
const TAG_CUT_CLASS: u64 = 0x52;

fn check_input(i: &Ideal, degree: Option<u32>) -> Result<(u32, HilbertData)> {
    if !i.is_homogeneous() {
        return Err(Error::Input("ideal is not homogeneous".into()));
    }
    if i.is_zero() || i.is_unit()? {
        return Err(Error::Input("ideal must be proper and nonzero".into()));
    }
    let d = degree.unwrap_or_else(|| i.max_degree());
    if d < i.max_degree() {
        return Err(Error::Input(format!(
            "degree {d} is below the maximal generator degree {}",
            i.max_degree()
        )));
    }
    Ok((d, hilbert(i)?))
}

fn cut(i: &Ideal, d: u32, count: usize, seed: u64) -> Result<Ideal> {
    let sample = general_elements(i, d, count, derive_seed(seed, TAG_SAMPLE))?;
    Ideal::new(i.ring(), sample.elements)
}

fn hilbert_json(h: &HilbertData) -> serde_json::Value {
    json!({ "dim": h.proj_dimension, "degree": h.degree })
}

fn class_json(c: &SegreClassVector) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = (c.lowest_dim..c.s.len())
        .rev()
        .map(|k| (k.to_string(), json!(c.s[k])))
        .collect();
    serde_json::Value::Object(map)
}

/// Per-dimension records comparing two classes for `k >= from`.
fn compare_classes(
    report: &mut VerificationReport,
    a: &SegreClassVector,
    b: &SegreClassVector,
    from: usize,
) {
    let top = a.z_dim.max(b.z_dim);
    if top < from as i64 {
        report
            .push(Evidence::new("segre_equal", CheckStatus::Vacuous).with("from_dim", from as u64));
        return;
    }
    let mut all = true;
    for k in (from..=top as usize).rev() {
        let (x, y) = (a.get(k), b.get(k));
        let ok = x.is_some() && x == y;
        all &= ok;
        report.push(
            Evidence::new(format!("segre_dim_{k}"), CheckStatus::from_bool(ok))
                .with("input", json!(x))
                .with("cut", json!(y)),
        );
    }
    report.push(
        Evidence::new("segre_equal", CheckStatus::from_bool(all))
            .with("input", class_json(a))
            .with("cut", class_json(b))
            .with("from_dim", from as u64),
    );
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// `n + 1` general cuts: same support and same Segre class as `I`.
pub fn verify_main_a(
    i: &Ideal,
    degree: Option<u32>,
    seed: u64,
    trials: usize,
) -> Result<VerificationReport> {
    let (d, _) = check_input(i, degree)?;
    let n = i.ambient_dim();
    let mut report = VerificationReport::new("main-a", i.digest(), seed);
    let t = Instant::now();
    let cut_ideal = cut(i, d, n + 1, seed)?;
    report.push(
        Evidence::new(
            "radical_equal",
            CheckStatus::from_bool(equal_radicals(&cut_ideal, i)?),
        )
        .with("cuts", (n + 1) as u64)
        .with("degree", d),
    );
    report.time("radicals", millis(t));

    let t = Instant::now();
    let a = segre_class(i, Some(d), trials, derive_seed(seed, TAG_INPUT_CLASS))?;
    let b = segre_class(
        &cut_ideal,
        Some(d),
        trials,
        derive_seed(seed, TAG_CUT_CLASS),
    )?;
    report.seeds = [a.seeds.clone(), b.seeds.clone()].concat();
    compare_classes(&mut report, &a, &b, 0);
    report.time("segre", millis(t));
    Ok(report)
}

/// `n` general cuts: the residual is disjoint from `V(I)`, and after excising it
/// the remaining scheme has the support and Segre class of `I`.
pub fn verify_main_b(
    i: &Ideal,
    degree: Option<u32>,
    seed: u64,
    trials: usize,
) -> Result<VerificationReport> {
    let (d, _) = check_input(i, degree)?;
    let n = i.ambient_dim();
    let mut report = VerificationReport::new("main-b", i.digest(), seed);
    let t = Instant::now();
    let cut_ideal = cut(i, d, n, seed)?;
    let (residual, steps) = saturate(&cut_ideal, i)?;
    let hr = hilbert(&residual)?;
    report.push(
        Evidence::new("excised_locus", CheckStatus::Info)
            .with("hilbert", hilbert_json(&hr))
            .with("saturation_steps", steps as u64),
    );
    let meet = hilbert(&residual.sum(i)?)?;
    report.push(
        Evidence::new("disjoint", CheckStatus::from_bool(meet.is_empty_scheme()))
            .with("intersection", hilbert_json(&meet)),
    );
    let (excised, _) = saturate(&cut_ideal, &residual)?;
    report.push(Evidence::new(
        "radical_equal",
        CheckStatus::from_bool(equal_radicals(&excised, i)?),
    ));
    let same_scheme = excised.same_ideal(i)?;
    report.push(
        Evidence::new("same_scheme", CheckStatus::Info)
            .with("equal_ideals", same_scheme)
            .with("excised_generators", excised.generators().len() as u64),
    );
    report.time("excision", millis(t));

    let t = Instant::now();
    let a = segre_class(i, Some(d), trials, derive_seed(seed, TAG_INPUT_CLASS))?;
    // saturation can raise generator degrees; the class does not depend on d
    let d_cut = d.max(excised.max_degree());
    let b = segre_class(
        &excised,
        Some(d_cut),
        trials,
        derive_seed(seed, TAG_CUT_CLASS),
    )?;
    report.seeds = [a.seeds.clone(), b.seeds.clone()].concat();
    compare_classes(&mut report, &a, &b, 0);
    report.time("segre", millis(t));
    Ok(report)
}

/// `n - c` general cuts: the residual has dimension `<= c`, meets `V(I)` in
/// dimension `< c`, and the Segre classes agree in dimensions `> c`.
pub fn verify_b_prime(
    i: &Ideal,
    degree: Option<u32>,
    c: usize,
    seed: u64,
    trials: usize,
) -> Result<VerificationReport> {
    let (d, h) = check_input(i, degree)?;
    let n = i.ambient_dim();
    if h.is_empty_scheme() || c as i64 > h.proj_dimension {
        return Err(Error::Precondition(format!(
            "c = {c} must lie in 0..={} (n - codim)",
            h.proj_dimension
        )));
    }
    let mut report = VerificationReport::new("b-prime", i.digest(), seed);
    let t = Instant::now();
    let cut_ideal = cut(i, d, n - c, seed)?;
    let (residual, _) = saturate(&cut_ideal, i)?;
    let hr = hilbert(&residual)?;
    report.push(
        Evidence::new(
            "residual_dim",
            CheckStatus::from_bool(hr.proj_dimension <= c as i64),
        )
        .with("hilbert", hilbert_json(&hr))
        .with("bound", c as u64),
    );
    let meet = hilbert(&residual.sum(i)?)?;
    report.push(
        Evidence::new(
            "meet_dim",
            CheckStatus::from_bool(meet.proj_dimension < c as i64),
        )
        .with("hilbert", hilbert_json(&meet))
        .with("bound", c as u64),
    );
    report.time("residual", millis(t));

    let t = Instant::now();
    if h.proj_dimension <= c as i64 {
        report.push(
            Evidence::new("segre_equal", CheckStatus::Vacuous)
                .with("from_dim", (c + 1) as u64)
                .with("z_dim", h.proj_dimension),
        );
    } else {
        let opts = |s| SegreOptions {
            degree: Some(d),
            trials,
            seed: s,
            lowest_dim: c + 1,
        };
        let a = segre_class_with(i, &opts(derive_seed(seed, TAG_INPUT_CLASS)))?;
        let b = segre_class_with(&cut_ideal, &opts(derive_seed(seed, TAG_CUT_CLASS)))?;
        report.seeds = [a.seeds.clone(), b.seeds.clone()].concat();
        compare_classes(&mut report, &a, &b, c + 1);
    }
    report.time("segre", millis(t));
    Ok(report)
}

pub struct MainA;

impl TheoremCheck for MainA {
    fn name(&self) -> &'static str {
        "main-a"
    }

    fn summary(&self) -> &'static str {
        "dim+1 general cuts have the same support and Segre class"
    }

    fn input_kind(&self) -> InputKind {
        InputKind::Ideal
    }

    fn run(&self, input: &CheckInput, params: &CheckParams) -> Result<VerificationReport> {
        verify_main_a(
            expect_ideal(input, self.name())?,
            params.degree,
            params.seed,
            params.trials,
        )
    }
}

pub struct MainB;

impl TheoremCheck for MainB {
    fn name(&self) -> &'static str {
        "main-b"
    }

    fn summary(&self) -> &'static str {
        "dim general cuts agree with the scheme near it after excising the residual"
    }

    fn input_kind(&self) -> InputKind {
        InputKind::Ideal
    }

    fn run(&self, input: &CheckInput, params: &CheckParams) -> Result<VerificationReport> {
        verify_main_b(
            expect_ideal(input, self.name())?,
            params.degree,
            params.seed,
            params.trials,
        )
    }
}

pub struct MainBPrime;

impl TheoremCheck for MainBPrime {
    fn name(&self) -> &'static str {
        "b-prime"
    }

    fn summary(&self) -> &'static str {
        "dim-c general cuts agree in Segre dimensions above c"
    }

    fn input_kind(&self) -> InputKind {
        InputKind::Ideal
    }

    fn run(&self, input: &CheckInput, params: &CheckParams) -> Result<VerificationReport> {
        let c = params
            .c
            .ok_or_else(|| Error::Input("b-prime needs the parameter c".into()))?;
        verify_b_prime(
            expect_ideal(input, self.name())?,
            params.degree,
            c,
            params.seed,
            params.trials,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn hyperplane_passes_trivially() {
        let r = Ring::projective(32003, 2).unwrap();
        let i = Ideal::parse(&r, "x0").unwrap();
        let rep = verify_main_a(&i, Some(1), 3, 2).unwrap();
        assert!(rep.pass, "{}", rep.to_key_value());
        assert!(rep.is_consistent());
    }

    #[test]
    fn complete_intersection_point_main_b() {
        let r = Ring::projective(32003, 2).unwrap();
        let i = Ideal::parse(&r, "x0, x1").unwrap();
        let rep = verify_main_b(&i, Some(1), 3, 2).unwrap();
        assert!(rep.pass, "{}", rep.to_key_value());
        let locus = rep.evidence("excised_locus").unwrap();
        assert_eq!(locus.details["hilbert"]["dim"], json!(-1));
    }

    #[test]
    fn line_b_prime() {
        let r = Ring::projective(32003, 3).unwrap();
        let i = Ideal::parse(&r, "x0, x1").unwrap();
        let rep = verify_b_prime(&i, Some(1), 1, 11, 2).unwrap();
        assert!(rep.pass, "{}", rep.to_key_value());
        assert_eq!(
            rep.evidence("segre_equal").unwrap().status,
            CheckStatus::Vacuous
        );
        assert!(verify_b_prime(&i, Some(1), 2, 11, 2).is_err());
    }
}
