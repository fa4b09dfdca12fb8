//! Characters of the torus and of `GL_N^r`: Schur characters, charge,
//! Demazure symmetrization and canonical-bundle weights.

pub mod charge;
pub mod demazure;
pub mod tableau;
pub mod weights;

pub use charge::{charge, kostka_foulkes_charge};
pub use demazure::{chi, decompose_chi, demazure_pi, euler_characteristic, symmetrize};
pub use tableau::{kostka_number, schur_character, semistandard_tableaux, Tableau};
pub use weights::{lemma31_weights, CanonicalWeights};
