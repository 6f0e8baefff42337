//! Finite biracks, labelings of link diagrams by them, and the counting
//! invariants built from those labelings.
//!
//! Elements of an `n`-element birack are `0..n` internally; text formats
//! (matrices, cycle notation, error messages) are 1-indexed.
//!
//! ```
//! use birack::{Diagram, FiniteBirack, Poly, phi_writhe};
//!
//! let b = FiniteBirack::from_matrix(2, &[vec![1, 1, 2, 2], vec![2, 2, 1, 1]]).unwrap();
//! let hopf = Diagram::parse("O1+,U2+;U1+,O2+").unwrap();
//! let v: Poly = phi_writhe(&hopf, &b);
//! assert_eq!(v.to_string(), "4q1q2");
//! ```

pub mod birack;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod homsearch;
pub mod invariants;
pub mod matrix;
pub mod perm;
pub mod poly;

pub use birack::{
    first_violation, verify_axioms, Axiom, AxiomViolation, BirackTables, CheckStatus, Classification, FiniteBirack,
    ValidationReport,
};
pub use diagram::{Diagram, Pass, Role, Sign};
pub use enumerate::enumerate_biracks;
pub use error::{Error, Param};
pub use families::{constant_action, group_birack_tables, tau_sigma_rho_birack, tsr_birack, Group, LinearParams};
pub use homsearch::{count_labelings, enumerate_labelings, for_each_labeling, labeling_image, Labeling};
pub use invariants::{
    birack_polynomial, compute, normalize, phi_image, phi_integral, phi_rho, phi_writhe, subbirack_polynomial,
    Census, InvariantKind, InvariantReport, InvariantValue, Multiset,
};
pub use matrix::{format_matrix, format_tables, parse_matrix};
pub use perm::Permutation;
pub use poly::{Coefficient, Monomial, MultiPoly, NestedPoly, Var};

/// Polynomials with `i64` coefficients.
pub type Poly = MultiPoly<i64>;
/// Nested polynomials with `i64` coefficients and exponents.
pub type Nested = NestedPoly<i64>;
/// Invariant values with `i64` coefficients.
pub type Invariant = InvariantValue<i64>;
