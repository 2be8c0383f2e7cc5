//! Oeljeklaus–Toma data from number fields: embeddings and unit lattices,
//! Lie algebras with exact structure constants, LCK verification, the
//! normalization of meta-abelian LCK algebras, and the converse pipeline that
//! recovers a number field from commuting integer matrices.

pub mod coeff;
pub mod converse;
pub mod error;
pub mod ilinalg;
pub mod liealg;
pub mod metrics;
pub mod normalize;
pub mod numfield;
pub mod otlike;
pub mod unitlat;
pub mod wire;

pub use coeff::{Coeff, MPoly};
pub use converse::{
    close_algebra, converse, fast_irreducibility, field_certificate, find_simplicity_witness, recover_ot_data,
    sol3_demo, AlgebraClosure, ConverseReport, ConverseVerdict, FastIrreducibility, FieldCertificate, MatrixFamily,
    SimplicityWitness,
};
pub use error::{OtError, Result};
pub use liealg::{
    is_abelian_j, nijenhuis, semidirect, verify_lck, verify_vaisman, HermitianStructure, KForm, LckReport, LieAlgebra,
    LieAlgebraSpec, VaismanVerdict,
};
pub use metrics::{
    lck_condition, pluriclosed_condition, rank_bound_probe, search_units, LckCondition, PluriclosedCheck,
    RankBoundReport, RankBranch, RankVerdict,
};
pub use normalize::{normalize_meta_abelian_lck, NormalizationBranch, NormalizationResult};
pub use numfield::{regular_rep, Embedded, FieldElement, FieldSpec, NumberField, RegularRep, ZModule};
pub use otlike::{
    build_ot_like, c_equivalent, forward_lattice, rational_ot_like, standard_hermitian, standard_structure,
    symbolic_lck_ot_like, ForwardLatticeData, OtLikeAlgebra, OtLikeSpec, StandardStructure,
};
pub use unitlat::{
    check_admissible, log_image, matrix_c, solve_matrix_c, Admissibility, Branch, CEntry, LogImage, MatrixC, UnitGroup,
    UnitGroupSpec,
};
