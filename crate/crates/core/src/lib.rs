//! Unitary duals of crystallographic groups through the Mackey machine, and limits of
//! irreducible representations along degenerating sequences of lattice characters.

pub mod cocycle;
pub mod crystal;
pub mod datum;
pub mod error;
pub mod finiterep;
pub mod group90;
pub mod mackey;
pub mod numerics;
pub mod report;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
