//! Invariants of Lefschetz fibrations over the sphere computed from their
//! monodromy factorizations: total-space fundamental group presentations,
//! abelianizations, Euler characteristic, hyperelliptic signature, Betti
//! numbers, and the numeric tests that exclude complex structures.

pub mod dsl;
pub mod error;
pub mod fibration;
pub mod mapping;
pub mod matrix;
pub mod obstruction;
pub mod presentation;
pub mod snf;
pub mod words;

pub use dsl::{parse_factorization, to_dsl, ParseWarning, ParsedFactorization};
pub use error::{Error, Result};
pub use fibration::{
    build_bn, euler_characteristic, h1_monodromy, matsumoto_curves, matsumoto_factorization,
    signature_hyperelliptic, twisted_fiber_sum, validate, CycleKind, MonodromyFactorization,
    ValidationReport, VanishingCycle,
};
pub use mapping::{
    apply_mapping_class, h1_action, transvection_matrix, twist_word, MappingClass, SymplecticMatrix,
};
pub use matrix::IntegerMatrix;
pub use obstruction::{
    cover_invariants, invariant_report, kodaira_exclusion, orientation_reverse, ExclusionVerdict,
    InvariantReport, KodairaClass, Pi1Class,
};
pub use presentation::{
    abelianization, relation_matrix, tietze_simplify, total_space_pi1, AbelianInvariants,
    Presentation,
};
pub use snf::smith_normal_form;
pub use words::{FreeWord, Generator, GeneratorKind, HomologyClass, Letter, Word};
