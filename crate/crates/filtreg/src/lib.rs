//! Exact computation of regularity-type invariants of filtered modules
//! over polynomial rings, and empirical verification of the inequalities
//! that bound them.
//!
//! The crate is organized as:
//!
//! - [`ring`], [`monomial`], [`poly`], [`groebner`], [`modvec`], [`ideal`],
//!   [`linalg`], [`module`]: the exact-arithmetic kernel (prime-field
//!   polynomial arithmetic, Gröbner bases for ideals and submodules of
//!   graded free modules, length and Hilbert-function primitives);
//! - [`filtration`]: good filtrations of cyclic modules and their
//!   reduction index;
//! - [`graded`]: degreewise vector-space models of associated graded
//!   modules and fiber cones, generic element sampling, filter-regularity;
//! - [`regularity`]: end degrees, regularity and Hilbert coefficients via
//!   filter-regular sequences;
//! - [`degrees`]: minimal free resolutions, Ext modules, multiplicity,
//!   homological degree, minimal reductions;
//! - [`bounds`]: exact big-integer evaluators for every bound formula;
//! - [`config`], [`harness`], [`corpus`], [`report`]: the experiment
//!   harness behind the `filtreg` command-line tool.

pub mod bounds;
pub mod config;
pub mod corpus;
pub mod degrees;
pub mod error;
pub mod filtration;
pub mod graded;
pub mod groebner;
pub mod harness;
pub mod ideal;
pub mod linalg;
pub mod modvec;
pub mod module;
pub mod monomial;
pub mod numeric;
pub mod poly;
pub mod regularity;
pub mod report;
pub mod ring;
pub mod rng;

pub use error::{BoundError, DegreeError, FiltrationError, GradedError, KernelError};
pub use ideal::Ideal;
pub use poly::Polynomial;
pub use ring::PolyRing;
