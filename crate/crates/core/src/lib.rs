//! Square-tiled surfaces (origamis) as permutation pairs, their SL(2,Z)-orbits
//! and orbit graphs, and the invariants attached to them: HLK invariants,
//! block systems, word and cusp censuses, Teichmüller-curve invariants and
//! the arithmetic counts that predict them.

pub mod arith;
pub mod census;
pub mod error;
pub mod io;
pub mod orbit;
pub mod origami;
pub mod perm;
pub mod sl2z;
pub mod verify;

pub use error::{Error, Result};
pub use origami::{CanonicalOrigami, Origami};
pub use perm::Perm;
pub use sl2z::Word;
