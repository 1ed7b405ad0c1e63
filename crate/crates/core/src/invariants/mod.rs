//! Depth (by Ext and by Koszul homology), Bass numbers, Enochs–Xu numbers at
//! the maximal ideal, a one-sided injective dimension probe and the
//! acyclicity lemma as an executable check.

mod acyclicity;
mod depth;
mod koszul;

pub use acyclicity::{
    acyclicity_lemma_check, direct_sum, random_complex, shift_up, AcyclicityReport, DegreeRow, HypothesisFailure,
};
pub use depth::{
    bass_numbers, depth, depth_by_ext, depth_by_koszul, depth_witness, enochs_xu_numbers, id_probe, invariant_report,
    ring_depth, Depth, DepthWitness, IdProbe, InvariantReport,
};
pub use koszul::{koszul_complex, koszul_on_module, tensor_free_complex};
