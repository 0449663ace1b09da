//! Conjugation-invariant (biinvariant) word norms and the geometry they
//! induce: exact norm computation on free groups via a cubic dynamic
//! program, cancelation lengths in right-angled Artin and Coxeter groups
//! by bounded search, Brooks counting quasimorphisms with norm bounds,
//! isometric embeddings of cubes and trees into the free group, and
//! identity witnesses for bounded cyclic subgroups in concrete models.

pub mod balanced;
pub mod cube;
pub mod freenorm;
pub mod quasi;
pub mod witnesses;
pub mod words;

pub use balanced::{BalancedError, GraphPresentation, GroupKind};
pub use cube::{
    parse_tree_file, CubeEmbedding, CubeError, CubeVertex, IsometryReport, TreeEmbedding,
};
pub use freenorm::{
    biinvariant_distance, brute_force_norm, cancelation_norm, distortion_profile,
    trivializing_sequence, FreenormError, NormTable, TrivializingSequence,
};
pub use quasi::{
    count_occurrences, dual_family_check, norm_lower_bound, qi_sandwich_check,
    BrooksQuasimorphism, QmEvaluation, QuasiError,
};
pub use witnesses::{
    bs_affine_check, heisenberg_identity_check, lamplighter_commutator_witness,
    lamplighter_identity_check, AffineMap, BsReport, HeisenbergElement, LamplighterElement,
    WitnessError,
};
pub use words::{Alphabet, Letter, Sign, Word, WordError};
