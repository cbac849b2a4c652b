//! Exact polynomial arithmetic and the irreducibility toolkit.

pub mod factor;
pub mod gcd;
pub mod hull;
pub mod irred;
pub mod modp;
pub mod mpoly;
pub mod resultant;
pub mod upoly;

pub use factor::rational_factors;
pub use gcd::{divides, exact_div, mv_gcd, squarefree_part};
pub use hull::{gao_coprime_test, minkowski_sum, newton_polytope, NewtonPolytope};
pub use irred::{
    absolutely_irreducible, find_q_irreducibility_certificate,
    find_q_irreducibility_certificate_bounded, z_irreducible_by_specialization, AbsIrredVerdict,
    SpecializationVerdict,
};
pub use modp::{fp_irreducible, FpPoly};
pub use mpoly::MPoly;
pub use resultant::{discriminant, resultant};
pub use upoly::{real_root_count, sturm_real_roots, Bound, QPoly, UPoly};
