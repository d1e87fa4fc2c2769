//! Exact computer algebra for truncated microdifferential operators.
//!
//! The crate has two halves. The calculus half works over the graded ring of
//! xi-homogeneous Laurent symbols with Gaussian-rational coefficients:
//! Leibniz composition with honest truncation floors, order filtration and
//! symbol maps, inverses, formal adjoints with respect to monomial volume
//! densities, star-unitarity, self-adjoint square roots and unitarization.
//! The descent half provides finite crossed modules, their associated
//! 2-groups, and brute-force nonabelian Cech H^1 classification over finite
//! nerves.
//!
//! Arithmetic is exact everywhere; identities hold with zero tolerance on
//! all reliable degrees.

pub mod crossed;
pub mod descent;
pub mod error;
pub mod group;
pub mod json;
pub mod operator;
pub mod scalar;
pub mod star;
pub mod symbol;
pub mod text;

pub use crossed::{CrossedModule, CrossedModuleReport, Shape, TwoGroupMorphism, Violation};
pub use descent::{
    classify_h1, descent_morphisms, validate_descent, Classification, Cover, DescentDatum,
    DescentReport, DescentViolation,
};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use operator::{Floor, Operator, Order, TruncationContext};
pub use scalar::Scalar;
pub use star::{
    adjoint, adjoint_wrt, central_scalar_above, fixes_generators, is_star_unitary, mult_op,
    star_commutation_defect, StarCertificate, StarDefect, VolumeDensity,
};
pub use symbol::{GradedElement, HomogeneousSymbol, Monomial};
