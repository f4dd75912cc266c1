//! RO(Z/2)-graded cohomology of Rep(Z/2)-complexes with constant Z/2
//! coefficients.
//!
//! The crate models the coefficient ring of a point ([`point_ring`]), free
//! modules over it ([`free_module`]), single-cell attachments through the
//! connecting map of the cofiber sequence ([`attach`]), equivariant Schubert
//! cells ([`schubert`]), cross-flag deduction of Grassmannian cohomology
//! ([`deduce`]), and ring structures of twisted projective spaces
//! ([`proj_ring`]).

pub mod attach;
pub mod deduce;
pub mod error;
pub mod expr;
pub mod free_module;
pub mod gf2;
pub mod mackey;
pub mod point_ring;
pub mod proj_ring;

pub mod schubert;

pub use attach::{
    attach_cell, reduce_basis, run_filtration, AttachmentCase, AttachmentOutcome, CellComplexSpec,
    CellSpec, DifferentialSpec, StageLog,
};
pub use deduce::{
    admissible_outcomes, deduce, deduce_with, enumerate_flag_symbols, CandidateSet, DeduceOptions,
    DeductionReport, Verdict,
};
pub use error::{Error, Result};
pub use free_module::{
    dimension_table, module_dim, recover_generators, singular_betti, DimensionTable, FreeModule,
    Generator, Window,
};
pub use mackey::{check_mackey, MackeyAxiom, MackeyFunctor};
pub use point_ring::{basis_dim, bideg, element_at, Bidegree, ConeBasisElement, RingElement};
pub use proj_ring::{
    forgetful, multiply_ring, normal_form, restrict, ProjRingElement, SingularElement, SpaceId,
};
pub use schubert::{
    cell_bidegree, enumerate_cells, flag_to_representation, flip_iso, projective_cells,
    rp_tw_cells, FlagSymbol, GrassmannianDesc, SchubertCell, SchubertSymbol,
};
