//! Chern-Schwartz-MacPherson class of a hypersurface from the Segre class of
//! its singular scheme.

use serde::Serialize;

use super::bertini::singular_scheme;
use super::HypersurfaceInput;
use crate::classes::AmbientClass;
use crate::error::Result;
use crate::ideal::hilbert;
use crate::segre::{segre_class, SegreClassVector};

pub const CSM_CAVEAT: &str =
    "computed over GF(p); topological meaning assumes the instance lifts faithfully to characteristic 0";

#[derive(Debug, Clone, Serialize)]
pub struct CsmResult {
    /// Degrees of the dimension-`k` pieces of `c_SM(X)` in `P^n`.
    pub class: AmbientClass,
    /// Dimension-0 degree.
    pub euler: i64,
    /// `s(Sing X, P^n)`, `None` when `X` is smooth.
    pub singular: Option<SegreClassVector>,
    pub caveat: &'static str,
}

/// `c(TP^n) ∩ (s(X, P^n) + c(O(e))^{-1} ∩ (s(Sing X, P^n)^∨ ⊗ O(e)))`.
pub fn csm_from_segre(n: usize, e: u32, sing: &AmbientClass) -> AmbientClass {
    let e = e as i64;
    let s_x = AmbientClass::linear_piece(n, n - 1, e).chern_mult(e, -1);
    let correction = sing.dual().tensor(e).chern_mult(e, -1);
    s_x.add(&correction).chern_mult(1, n as i64 + 1)
}

pub fn csm_hypersurface(x: &HypersurfaceInput, trials: usize, seed: u64) -> Result<CsmResult> {
    let n = x.ambient_dim();
    let sing = singular_scheme(x)?;
    let singular = if hilbert(&sing)?.is_empty_scheme() {
        None
    } else {
        Some(segre_class(&sing, None, trials, seed)?)
    };
    let sing_class = singular
        .as_ref()
        .map(SegreClassVector::to_class)
        .unwrap_or_else(|| AmbientClass::zero(n));
    let class = csm_from_segre(n, x.degree(), &sing_class);
    Ok(CsmResult {
        euler: class.get(0),
        class,
        singular,
        caveat: CSM_CAVEAT,
    })
}
