//! Reading transition systems from `.aut` files and CCS programs.

mod aut;
mod ccs;
mod expand;

pub use aut::{parse_aut, write_aut, AutError};
pub use ccs::{parse_ccs, CcsAction, CcsError, CcsProgram, CcsTerm};
pub use expand::{expand_ccs, expand_ccs_roots, DEFAULT_MAX_STATES};
