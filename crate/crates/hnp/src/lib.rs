//! Obstructions to the Hasse norm principle for norm-one tori, computed
//! from finite group data: the Galois group G, the subgroup H fixing the
//! intermediate field, and the decomposition groups at ramified places.

pub mod error;
pub mod perm;
pub mod group;
pub mod intmat;
pub mod abelian;
pub mod cover;
pub mod obstruction;
pub mod oracle;
pub mod census;
pub mod tables;

pub use abelian::{AbElement, AbGroup, AbHom, InvariantFactors};
pub use error::{Error, Result};
pub use perm::{CycleType, Perm};
pub use group::{PermGroup, SubgroupPattern};
pub use cover::{CoverElement, CoverGroup, CoverKind};
pub use obstruction::{Ambient, ExtensionProblem, Method, ObstructionReport};
