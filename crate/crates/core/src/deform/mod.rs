//! Explicit 2-cocycles, infinitesimal deformations over the dual numbers,
//! and verification of the theorem lists.

mod cocycles;
mod dual;
mod squaring;
mod theorem;

pub use cocycles::{
    h_theorem_cocycles, k_theorem_cocycles, m_theorem_cocycles, phi_cocycle, phi_cocycle_with, pi_i_cocycle,
    pi_ij_cocycle, s_theorem_cocycles, theorem_cocycles, theta_cocycle, w_theorem_cocycles, NamedCocycle, PhiExponent,
    PiI,
};
pub use dual::{deform, deformation_equiv, random_one_cochain, DualElement, DualNumberAlgebra, Isomorphism};
pub use squaring::{derivation_witness, squaring, squaring_element};
pub use theorem::{listed_count, verify_theorem, verify_theorem_on, ClassCheck, TheoremReport};
