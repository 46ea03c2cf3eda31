//! Nerves and multinerves of finite set families, exact rational homology of
//! simplicial posets, Leray numbers and the `J` index, and checkers for the
//! Helly-type bounds that tie them together.

pub mod cli;
pub mod families;
pub mod homology;
pub mod io;
pub mod leray;
pub mod nerve;
pub mod poset;
pub mod verify;
