//! Exact-arithmetic toolkit for convex orders on positive roots,
//! generalized minors and trails in fundamental representations, crystal
//! bounding data from Lusztig parametrizations, resonance-family
//! combinatorics, Tokuyama-type character identities, and p-adic Iwasawa
//! decomposition algorithms for SL(n).
//!
//! Every computation is bit-exact: integer, rational, and formal-symbol
//! arithmetic only. Nothing here uses floating point.

pub mod chevrep;
pub mod exactpoly;
pub mod g2eval;
pub mod linalg;
pub mod lusztig;
pub mod padic;
pub mod resonance;
pub mod rootsys;
pub mod tokuyama;
