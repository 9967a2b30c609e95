//! Crystallographic groups 1 → ℤ^r → G → D → 1, lattice characters and the dual action.

mod character;
mod group;
mod point;
mod word;

pub use character::{format_coordinate, Character, Orbit};
pub use group::{Anchor, CrystalGroup, GElement, GroupParts, Issue};
pub use point::{IntMatrix, PointGroup, PointGroupIssue, PointSubgroup};
pub use word::Word;
