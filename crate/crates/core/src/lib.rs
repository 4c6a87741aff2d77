//! Pure and elliptic Sullivan models over Q: graded-commutative algebra,
//! Gröbner bases for the even part, ellipticity certificates, F₀
//! extensions, and category-type upper bounds.

pub mod algebra;
pub mod bounds;
pub mod ellipticity;
pub mod error;
pub mod extension;
pub mod groebner;
mod linalg;
pub mod model;
pub mod random;
pub mod text;

pub use algebra::{Degree, Element, Generator, GeneratorSet, Monomial, Rational};
pub use bounds::{cat_estimate, tc_upper_bound, tc_upper_bound_nonpure, BoundReport, CatProvenance, TcProvenance};
pub use ellipticity::{
    cohomology_dims, exactness_certificate, is_elliptic, is_elliptic_pure, nilpotency_exponent, Certificate,
    PureIdeal,
};
pub use error::{Error, Result};
pub use extension::{
    exhaustive_homogeneous_search, f0_extend, f0_extend_with, find_homogeneous_regular_subset, first_stage,
    verify_f0_extension, ExtensionResult, FirstStage, OddCombination, SearchConfig, SearchOutcome,
    VerificationReport,
};
pub use groebner::{GroebnerBasis, MonomialOrder, NormalForm, RegularSequenceCheck};
pub use model::{DifferentialLength, ModelReport, SullivanModel};
pub use text::{parse_element, parse_model, render_model};
