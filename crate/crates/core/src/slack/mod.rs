//! The ideal `(f − y*y)`: normal forms under `y*y → f`, membership,
//! certificate checking and sampled vanishing.

pub mod consistency;
pub mod psatz;
pub mod reduce;

pub use consistency::{sample_hard_zero_consistency, ConsistencyReport};
pub use psatz::{
    float_evaluate, is_member_semantic, positivity_witness, psatz_spot_check, verify_psatz, PsatzCertificate, PsatzVerdict,
    SemanticMembership, SpotCheck,
};
pub use reduce::{generator, is_member, is_normal, reduce, reduce_randomized, rewrite_sites, Membership};
