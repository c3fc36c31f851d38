//! Prefixes of Parry fixed points, their β-numeration bookkeeping, closed-form
//! minimal string attractors for them, and an independent attractor checker.

pub mod attractors;
pub mod engine;
pub mod error;
pub mod numeration;
pub mod params;
pub mod verifier;
pub mod word;

pub use attractors::{
    attractor_affine, attractor_binary, attractor_general, attractor_nonsimple, attractor_prior,
    attractor_restricted, classify_category, conditions, gamma, AttractorSet, Category,
    ConditionsReport, TheoremId,
};
pub use engine::{k_index, LengthKind, PrefixEngine, SpecialPrefix, DEFAULT_MAX_WORD};
pub use error::{ParryError, Result, VerifyError};
pub use numeration::{
    beta_integer_value, beta_root, delta, expansion_to_position, lex_compare, parry_admissible,
    position_to_expansion, BetaValue, DigitStream, DigitString, RenyiExpansion,
};
pub use params::ParryParameters;
pub use verifier::{
    is_attractor, is_attractor_with, minimal_attractor, power_transfer_check, AttractorIndex,
    OccurrenceInterval, Verdict, VerifyStrategy,
};
pub use word::{is_power_of, Letter, Word};
