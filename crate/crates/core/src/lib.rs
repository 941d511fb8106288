//! Polyatomic ellipsoidal BGK relaxation on a discrete phase space.
//!
//! The crate evolves a distribution `f(t, x, v, I)` over a periodic 1-D
//! spatial torus, a truncated 3-D velocity cube and a truncated internal
//! energy half-line. It provides the macroscopic fields, the anisotropic
//! polyatomic Gaussian attractor, a frozen-Gaussian exponential relaxation
//! step, semi-Lagrangian transport, a successive-approximation (Picard)
//! diagnostic, the `theta = 0` monatomic reduction, and a set of numerical
//! checks for the closed-form moment and norm inequalities of the model.
//!
//! Everything here is `no_std` with `alloc`. IO, configuration files and the
//! command line live in the `polybgk` crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod correction;
pub mod diagnostics;
pub mod error;
pub mod exec;
pub mod gaussian;
pub mod init;
pub mod linalg;
pub mod moments;
pub mod params;
pub mod phase_space;
pub mod quadrature;
pub mod random_field;
pub mod solver;
pub mod sum;

pub use error::{Error, Result};
pub use exec::{CellExecutor, Serial};
pub use gaussian::{evaluate_gaussian, GaussianField};
pub use moments::{compute_moments, relaxation_fields, GaussianParams, MacroFields};
pub use params::{collision_frequency, lambda_delta, lemma_constants, LemmaConstants, RelaxationParams};
pub use phase_space::{build_grid, Distribution, GridConfig, InternalSpacing, PhaseSpaceGrid};
