//! Breuil modules with descent data and their rank-two extensions.

pub mod extension;
pub mod module;
pub mod normal_form;
pub mod pairs;

pub use extension::{
    big_payload, comparison_hub, comparison_maps, make_extension, shift_valid_pair, transform_to_big_model,
    ComparisonMaps, ExtBM,
};
pub use module::{breuil_morphism_check, rank_one_generic_fibre, same_generic_fibre_witness, BreuilModule, RankOneBM};
pub use normal_form::{
    coboundary, extremal_pair_of, projective_representative, reduce_normal_form, to_extremal_normal_form,
    NormalFormReducer,
};
pub use pairs::{extension_space_basis, extremal_pair, intrinsic_valid_pairs, lflat_dimension, valid_pairs, ValidPair};
