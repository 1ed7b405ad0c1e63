//! Finitely generated modules over `R = F_p[x_1..x_n]/I` as cokernels of
//! matrices: syzygies, homology of complexes, minimal free resolutions,
//! Betti numbers, Tor, Ext and projective dimension.

mod complex;
mod map;
mod module;
mod resolution;
mod ring;
mod syzygy;
mod tor_ext;

pub use complex::{FreeComplex, Homology, ModuleComplex};
pub use map::ModuleMap;
pub use module::{Kdim, PresentedModule, SubmoduleGb};
pub use resolution::{betti, free_resolution, minimalize, pd_verdict, BettiTable, PdVerdict, Resolution};
pub use ring::{QuotientRing, Ring};
pub use syzygy::{kernel_modulo, syzygy};
pub use tor_ext::{ext, hom, tor, DerivedModule, DerivedSummary};
