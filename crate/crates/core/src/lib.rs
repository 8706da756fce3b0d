//! Deciding weak contrasimulation on finite labeled transition systems by
//! solving a reachability game over sets of states.
//!
//! ```
//! use contrasim::{csgame, ingest};
//!
//! let program = ingest::parse_ccs(
//!     "Pc = (pl.sp.aEats | pl.sp.bEats | 'pl | op.'sp) \\ {pl, sp};
//!      Pp = (pl.op.sp.aEats | pl.op.sp.bEats | 'pl | 'sp) \\ {pl, sp};",
//! )
//! .unwrap();
//! let (lts, roots) = ingest::expand_ccs_roots(&program, &["Pc", "Pp"], 1000).unwrap();
//! assert!(csgame::decide_equivalence(&lts, roots[0], roots[1]));
//! ```

pub mod csgame;
pub mod game;
pub mod ingest;
pub mod lts;
pub mod random;
pub mod relations;
pub mod state_set;

pub use lts::{ActionId, Label, Lts, LtsBuilder, LtsError, Word};
pub use state_set::StateSet;
