//! Congruence families, `L_alpha` sequences, representations in generator
//! modules, and the identity registry.

pub mod chern_tang;
pub mod family;
pub mod identity;
pub mod scan;
pub mod solve;
pub mod w_image;

pub use chern_tang::{chern_tang_sequences, ChernTang};
pub use family::{build_l_sequence, direct_l, family, required_base_truncation, CongruenceFamily, LSequence, Progression, FAMILIES};
pub use scan::{check_divisibility, internal_family, scan_direct, scan_family, scan_internal, DivisibilityReport, InternalFamily, Offender, INTERNAL_FAMILIES};
pub use solve::{localized_representation, represent_in_t_module, solve_representation, t_module_basis, y_free_representation, LocalizedRepresentation, RepresentationResult};
pub use identity::{identities, identity, verify_all, verify_identity, Identity, IdentityReport, MismatchReport, Status, Tier};
pub use w_image::{w_image_series, w_images, WImages};
