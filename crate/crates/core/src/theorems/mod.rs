//! Randomized verification of the identities behind the Segre computation.
//!
//! Each check implements [`TheoremCheck`] and is looked up by name in a
//! [`CheckRegistry`]; the CLI's `verify` and `bertini` commands dispatch
//! through the registry.

mod bertini;
mod csm;
mod cuts;
mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use bertini::{
    restrict_to_hyperplane, singular_scheme, verify_segre_bertini, HyperplaneSection, SegreBertini,
};
pub use csm::{csm_from_segre, csm_hypersurface, CsmResult, CSM_CAVEAT};
pub use cuts::{verify_b_prime, verify_main_a, verify_main_b, MainA, MainB, MainBPrime};
pub use report::{CheckStatus, Evidence, VerificationReport};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Poly;

/// Default number of agreeing trials for every Segre class a check computes.
pub const VERIFY_TRIALS: usize = 3;

/// A homogeneous hypersurface `V(F)` whose degree is nonzero in the field.
#[derive(Debug, Clone)]
pub struct HypersurfaceInput {
    f: Poly,
    degree: u32,
}

impl HypersurfaceInput {
    pub fn new(f: Poly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Input("hypersurface equation is zero".into()));
        }
        if !f.is_homogeneous() {
            return Err(Error::Input(
                "hypersurface equation is not homogeneous".into(),
            ));
        }
        let degree = f.degree().unwrap();
        let modulus = f.ring().modulus();
        if degree == 0 {
            return Err(Error::Input("hypersurface equation is a constant".into()));
        }
        if degree.is_multiple_of(modulus) {
            return Err(Error::CharacteristicGuard { degree, modulus });
        }
        Ok(HypersurfaceInput { f, degree })
    }

    pub fn polynomial(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.f.ring().ambient_dim()
    }
}

/// What a check consumes.
#[derive(Debug, Clone)]
pub enum CheckInput {
    Ideal(Ideal),
    Hypersurface(HypersurfaceInput),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Ideal,
    Hypersurface,
}

/// Parameters shared by all checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckParams {
    pub seed: u64,
    pub trials: usize,
    pub degree: Option<u32>,
    /// Dimension bound for the `b-prime` check.
    pub c: Option<usize>,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            seed: 0,
            trials: VERIFY_TRIALS,
            degree: None,
            c: None,
        }
    }
}

pub trait TheoremCheck: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn input_kind(&self) -> InputKind;

    fn run(&self, input: &CheckInput, params: &CheckParams) -> Result<VerificationReport>;
}

/// Theorem checks registered by name.
#[derive(Clone, Default)]
pub struct CheckRegistry {
    checks: BTreeMap<String, Arc<dyn TheoremCheck>>,
}

impl CheckRegistry {
    pub fn new() -> Self {
        CheckRegistry::default()
    }

    /// Registry holding `main-a`, `main-b`, `b-prime` and `segre-bertini`.
    pub fn builtin() -> Self {
        let mut r = CheckRegistry::new();
        r.register(Arc::new(MainA));
        r.register(Arc::new(MainB));
        r.register(Arc::new(MainBPrime));
        r.register(Arc::new(SegreBertini));
        r
    }

    pub fn register(&mut self, check: Arc<dyn TheoremCheck>) {
        self.checks.insert(check.name().to_string(), check);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn TheoremCheck>> {
        self.checks.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&str> {
        self.checks.keys().map(String::as_str).collect()
    }

    pub fn run(
        &self,
        name: &str,
        input: &CheckInput,
        params: &CheckParams,
    ) -> Result<VerificationReport> {
        let check = self.get(name).ok_or_else(|| {
            Error::Input(format!(
                "unknown check `{name}` (known: {})",
                self.names().join(", ")
            ))
        })?;
        check.run(input, params)
    }
}

pub(crate) fn expect_ideal<'a>(input: &'a CheckInput, check: &str) -> Result<&'a Ideal> {
    match input {
        CheckInput::Ideal(i) => Ok(i),
        CheckInput::Hypersurface(_) => Err(Error::Input(format!("{check} expects an ideal"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Ring;

    #[test]
    fn registry_lists_builtins() {
        let r = CheckRegistry::builtin();
        assert_eq!(
            r.names(),
            vec!["b-prime", "main-a", "main-b", "segre-bertini"]
        );
        assert!(r.get("main-a").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn unknown_check_is_an_input_error() {
        let ring = Ring::projective(32003, 2).unwrap();
        let i = Ideal::parse(&ring, "x0").unwrap();
        let err = CheckRegistry::builtin()
            .run("nope", &CheckInput::Ideal(i), &CheckParams::default())
            .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn hypersurface_guards() {
        let r7 = Ring::grevlex(7, &["x", "y", "z"]).unwrap();
        let f = parse_poly("x^7 + y^7 + z^7", &r7).unwrap();
        assert!(matches!(
            HypersurfaceInput::new(f),
            Err(Error::CharacteristicGuard {
                degree: 7,
                modulus: 7
            })
        ));
        let r = Ring::projective(32003, 2).unwrap();
        assert!(HypersurfaceInput::new(parse_poly("x0^2 + x1", &r).unwrap()).is_err());
        assert!(HypersurfaceInput::new(Poly::zero(&r)).is_err());
    }
}
