//! Classification of functors between finite categories: sieves, cosieves,
//! intervals, left/right/Kan fibrations, fibers and the Grothendieck
//! construction.

mod classify;
mod fibers;
mod grothendieck;
mod subcat;

pub use classify::{
    classify, essential_image, is_cosieve_inclusion, is_interval_inclusion, is_kan_fibration,
    is_left_fibration, is_right_fibration, is_sieve_inclusion, restrict_to_preimage,
    specialization_lifting, ClassificationReport,
};
pub use fibers::{
    comma_fiber, essential_fiber, fiber_profile, is_finite_fibers, point_counts, CommaFiber,
    EssentialFiber, FiberProfile, FiberSize,
};
pub use grothendieck::{
    diagrams_isomorphic, grothendieck, straighten, straightening_comparison, SetValuedDiagram,
};
pub use subcat::{is_cosieve, is_interval, is_sieve};

#[cfg(test)]
mod tests;
