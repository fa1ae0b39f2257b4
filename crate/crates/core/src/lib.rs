//! Push-forward Segre classes of subschemes of projective space over prime
//! fields, computed from residuals of general hypersurfaces containing the
//! scheme, together with randomized checks of the identities that make the
//! computation sound.

pub mod classes;
pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod segre;
pub mod theorems;

pub use classes::AmbientClass;
pub use error::{Error, ErrorClass, Result};
pub use field::{PrimeField, DEFAULT_MODULUS};
pub use groebner::{buchberger, ideal_membership, normal_form, Budget, GroebnerBasis};
pub use hilbert::HilbertData;
pub use ideal::{
    eliminate, equal_radicals, hilbert, intersect, quotient, radical_member, saturate, Ideal,
};
pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_poly, ParseError};
pub use poly::{linear_change, Poly, Ring, RingRef};
pub use segre::{contribution, general_elements, residual_degree, segre_class, SegreClassVector};
