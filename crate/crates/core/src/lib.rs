//! Serre weights, Breuil modules with descent data, and the flat and
//! crystalline extension spaces of two-dimensional mod `p` representations
//! of `G_K` for `K/Q_p` totally ramified.

pub mod breuil;
pub mod characters;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod ring;
pub mod weights;
pub mod wire;

pub use breuil::{
    big_payload, breuil_morphism_check, comparison_maps, extension_space_basis, extremal_pair, lflat_dimension,
    make_extension, projective_representative, rank_one_generic_fibre, same_generic_fibre_witness, shift_valid_pair,
    to_extremal_normal_form, transform_to_big_model, valid_pairs, BreuilModule, ExtBM, RankOneBM, ValidPair,
};
pub use characters::{
    char_inv, char_mul, char_pow, cyclotomic, niveau2_frobenius_conjugate, weight_equivalent, FullChar, GlobalContext,
    InertialChar1, InertialChar2, SerreWeight,
};
pub use error::{Error, Result};
pub use field::{FieldElem, GaloisField};
pub use linalg::{contains_free_element, kernel, semilinear_phi1_apply, RModuleMap, RSubmodule, RVector};
pub use ring::{ChainRing, TruncPoly};
pub use weights::{
    h1_dimension, irreducible_in_wexplicit, is_exceptional, lchi_dimension, lcrys_dimension, reducible_inertial_params,
    JDelta, LcrysDimension, ReducibleShape,
};
