//! Exact monomial representations: linear characters, the index-`p` ladder
//! of inductions and extensions, and projective representations pulled back
//! from representation groups.

mod cyclo;
mod ladder;
mod linear;
mod monomial;
mod monorep;
mod projective;

pub use cyclo::{CycInt, RootExp};
pub use ladder::{irr_chain, irr_ladder, IrrSet, StepStats};
pub use linear::{linear_character_with, linear_characters, LinearCharacter};
pub use projective::{match_class, proj_from_repgroup, verify_projective_rep, ProjCheck, ProjVerdict, ProjectiveRep};
pub use monomial::MonomialMatrix;
pub use monorep::{
    conjugate_rep, domain_subgroup, equivalent, extend_or_induce, induce, monomial_intertwiner, GenSubset, MonomialRep,
    StepOutcome,
};
