//! Exact computer algebra for deciding whether a zero-dimensional ideal of
//! `d^2 + d + 1` points in the projective plane is the singular scheme of a
//! degree-`d` foliation, and for building the defining 1-form when it is.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`monomial`], [`order`], [`ring`] and [`poly`]: exact
//!   coefficients over the rationals or a prime field, dense monomials and
//!   multivariate polynomials in two or three variables.
//! * [`groebner`]: Buchberger's algorithm, normal forms, ideal membership,
//!   quotients, saturation and Hilbert-function data.
//! * [`linalg`] and [`graded`]: exact linear algebra on graded pieces of an
//!   ideal, minimal generator counts, linear syzygies and the independent
//!   Euler-triple oracle.
//! * [`foliation`]: the recognition pipeline and the inverse direction from a
//!   1-form to its singular scheme.
//! * [`parse`]: the text formats for ideals and 1-forms.

pub mod error;
pub mod field;
pub mod foliation;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Coeff, CoefficientField};
pub use foliation::{
    admit, construct_foliation, equivalent_up_to_scalar, form_from_vector_field, infer_degree,
    local_form, singular_scheme, FoliationForm, LocalForm, Outcome, Reason, SingularSchemeCandidate,
    Verdict,
};
pub use graded::BettiProfile;
pub use groebner::{HilbertData, IdealPresentation};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use ring::Ring;

/// Default prime for modular computations.
pub const DEFAULT_PRIME: u32 = 32003;
