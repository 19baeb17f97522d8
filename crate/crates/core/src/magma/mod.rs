//! Finite magmas as Cayley tables.

pub(crate) mod identities;
mod invertible;
mod lemmas;
mod power;
mod report;
mod table;
mod translation;

pub use identities::{
    check_associative, check_flexible, check_left_alternative, check_moufang,
    check_right_alternative, check_right_bol, is_loop,
};
pub use invertible::{closure_defect, invertible_set, jloop, InvertibleSet};
pub use lemmas::{
    lemma_lr_check, product_right_inverse, verify_left_product_inverse, verify_theorems,
    verify_translation_lemmas, TheoremSuite,
};
pub use power::{power, torsion_witness};
pub use report::{Property, PropertyReport, Side, Witness};
pub use table::{find_neutral, CayleyTable, Element};
pub use translation::{left_translation, right_translation, Translation};
