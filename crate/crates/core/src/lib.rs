//! Exact computations with projective representations of special p-groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`pcgroup`] : power-commutator presentations, collection, subgroups,
//!   quotients, conjugacy classes and homomorphism checks;
//! * [`families`] : constructors for the named groups (max-rank special
//!   groups, their representation groups `H_d*`, `K_d*`, `G*`, extraspecial
//!   groups, ...);
//! * [`cohomology`] : the tensor space `G/G' ⊗ G'`, its subspace `X`,
//!   Schur multiplier orders, μ-parametrised cocycles, `χ̄`/`η` and
//!   coboundary solving;
//! * [`reps`] : monomial irreducible representations built along an
//!   index-p normal series, and projective representations by pullback;
//! * [`oracle`] : slow independent implementations used for verification;
//! * [`cli`] : the command line front end.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod families;
pub mod modlin;
pub mod oracle;
pub mod pcgroup;
pub mod reps;

pub use error::{Error, Result};
