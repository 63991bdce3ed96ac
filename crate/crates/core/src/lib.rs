//! Exact-arithmetic machinery for semigroup identities of the monoid of
//! upper-triangular tropical (max-plus) matrices.
//!
//! A word over a finite alphabet is mapped to a *signature*: for each degree
//! `d` the family of Newton polytopes of the scattered-subword support
//! polynomials, lexicographically ordered over all subwords of length `d`.
//! Two words are an identity for the n-by-n upper-triangular tropical
//! matrices exactly when their signatures agree up to degree `n - 1`, which
//! reduces identity checking, construction and enumeration to lattice
//! polytope computations carried out here entirely over the integers and
//! rationals.

pub mod enumerate;
pub mod geom;
pub mod identity;
pub mod minmax;
pub mod signature;
pub mod stats;
pub mod word;

pub use geom::{LatticePolytope, PointSet};
pub use identity::{check_identity, Morphism, TropicalMatrix};
pub use minmax::ClassInterval;
pub use signature::{DegreeSignature, UtnSignature};
pub use word::Word;
