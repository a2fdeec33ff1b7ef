//! Odd-index subgroup enumeration, binary-digit arithmetic, and the
//! classification predicates for families of simple groups.

mod arithmetic;
mod enumerate;
mod simple;

pub use arithmetic::{
    awrsn_condition, is_power_of_two, odd_part, prec, preceq, simpl_nonpron_digits,
    sympl_form_check, SymplForm,
};
pub use enumerate::{
    all_odd_index_pronormal, odd_index_subgroups, OddIndexSubgroup, OddIndexSubgroups,
    OddIndexSummary,
};
pub use simple::{
    classification_oracle, ocgs_prediction, sylow2_normalizer_prediction, Citation, Classification,
    ClassificationStatus, NormalizerPrediction, PrimePower, Sign, SimpleGroupId, SPORADIC,
};
