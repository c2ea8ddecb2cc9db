//! Exact Cox rings, Cox-scheme charts and the correspondence between graded
//! modules over restricted Cox rings and quasicoherent sheaves on the
//! associated Cox scheme, for fans over a lattice `N = Z^n`.

pub mod intlat;
pub mod qlin;
pub mod polyfan;
pub mod corpus;
pub mod grading;
pub mod schemeprops;
pub mod cox;
pub mod groeb;
pub mod gradmod;
pub mod sheaf;

pub use cox::{build_cox, CoxError, CoxRingData, Exponent, LocalChart};
pub use gradmod::{GradedModulePresentation, GradedSubmodule, GradmodError};
pub use grading::{build_grading, classify_subgroup, picard_group, GradingData, PicardGroup, SubgroupB};
pub use groeb::{FreeModule, GroebError, ModElem, MonomialOrder, Poly};
pub use intlat::{AbelianGroup, GroupElement, Index, IntMatrix};
pub use polyfan::{Cone, Fan, FanError, FanProperties};
pub use qlin::Q;
pub use schemeprops::{BaseRingFlags, PropertyReport, Verdict};
pub use sheaf::{ChartFamily, SectionMode, SheafCoverPresentation, SheafError};
