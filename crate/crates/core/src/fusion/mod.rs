//! Fusion systems realized by finite groups, saturation checks, centric
//! and radical subgroups, local subsystems and the categories built from
//! them.

mod chains;
mod local;
mod preset;
mod saturation;
mod system;

pub use chains::{describe_chain, ChainClass, ChainClassCategory, MAX_CHAINS};
pub use local::LocalFusion;
pub use preset::{ClassCollection, Preset};
pub use saturation::{Axiom, SaturationReport, Witness};
pub use system::{fusion_system, p_centric_check, ClassFlags, FusionClass, FusionSystem, MAX_SYLOW_ORDER};
