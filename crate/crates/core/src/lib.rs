//! Exact computation of fixing groups of univariate rational functions and of
//! Lüroth generators for fields fixed by finite groups of Möbius units.
//!
//! Supported coefficient fields are `Q`, `Q(i)`, `F_p` and `F_{p^n}`.
//!
//! ```
//! use fixgroup_core::{expr::parse_ratfun, fixing::fixing_group, Field};
//!
//! let q = Field::rationals();
//! let f = parse_ratfun("x^2*(x-1)^2", &q).unwrap();
//! let g = fixing_group(&f).unwrap();
//! assert_eq!(g.order(), 2);
//! ```

pub mod error;
pub mod expr;
pub mod field;
pub mod fixedfield;
pub mod fixing;
mod linalg;
pub mod moebius;
pub mod poly;
pub mod ratfun;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement};
pub use fixedfield::{fixed_field_generator, finite_field_canonical_generators, symmetric_functions};
pub use fixing::{
    brute_force_fixing_group, fixing_group, fixing_group_traced, fixing_report, fractional_unit_solve,
    normality_flag, polynomial_unit_candidates, FixingOptions, FixingReport, FixingTrace,
};
pub use moebius::{KleinType, MoebiusUnit, UnitGroup, UnitOrder};
pub use poly::Poly;
pub use ratfun::{NormalForm, ProjectivePoint, RatFun};
