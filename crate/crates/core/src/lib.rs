//! Exact computations in the rational cohomology of complex Grassmann
//! manifolds `G(k, n)`: dual Chern classes, Schur-basis reduction, Adams
//! endomorphisms and their Lefschetz numbers, and certificates for the
//! nontrivial-intersection property of selfmaps.

pub mod error;
pub mod expr;
pub mod lefschetz;
pub mod linalg;
pub mod obstruction;
pub mod partitions;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
pub use expr::{eval, parse, render, EvalError, Expr, Format, ParseError};
pub use lefschetz::{
    apply_adams, betti_numbers, fpp_classification, lefschetz_number, proposition_check, AdamsEndo,
    FppStatus, FppVerdict,
};
pub use obstruction::{
    case2iii_check, case2iv_check, dispatch_case, nontrivial_intersection_report, CaseTag,
    Certificate, SearchLog,
};
pub use partitions::{partitions_of_weight_in_box, ExponentVector, Partition};
pub use poly::{dual_class_closed, dual_class_recursive, FreeClass};
pub use rational::Rational;
pub use ring::{giambelli, pieri_e, reduce, GrassElement, RingContext, SchurClass};
