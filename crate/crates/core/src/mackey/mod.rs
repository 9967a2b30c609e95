//! Lifting stabilizer representations to G_χ, inducing to G, and deciding equivalence.

mod dual;
mod equiv;
mod induce;
mod rep;
mod stab;

pub use dual::{dual_from_str, dual_over_orbit, OrbitDual};
pub use equiv::{
    checked_projector, equivalent, irreducibility_norm, isotypic_projector, stabilizer_character, sub_orbit,
    sub_stabilizer, word_ball_character_distance,
};
pub use induce::{induce, induce_with, InducedRep};
pub use rep::{homomorphism_defect, lattice_images, random_element, relator_defect, BlockRep, ConcreteRep, Rep};
pub use stab::{chi_star, lift_to_stab, StabRep, AUDIT_SAMPLES};
