//! Certificate-producing surjectivity tests for mod-ℓ images of single
//! curves, pairs, and n-fold products.

mod certify;
mod oracle;
mod soundness;
mod witness;

pub use certify::{
    certify_pair, certify_product, certify_single, CertMode, CertStatus, GeometricFlag,
    PairCertificate, SingleCertificate, SurjectivityCertificate, CLASSIFICATION_MIN_ELL,
};
pub use oracle::{brute_force_image, ImageStatistics};
pub use soundness::{soundness_at, validate_witness_soundness, SoundnessReport, SubgroupCheck};
pub use witness::{satisfies, witness_classes, WitnessClass};
