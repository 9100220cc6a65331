//! Orlicz sequence spaces over `Z^d` and the dynamics of weighted-translation
//! cosine operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`young`]: Young functions, their complementary functions and the
//!   `Δ₂` test.
//! * [`group`]: elements and finite subsets of `Z^d`, aperiodicity and the
//!   separation index.
//! * [`seq`]: finitely supported sequences together with the Luxemburg and
//!   Orlicz norms (and a dual lower bound used as an oracle).
//! * [`ops`]: the weighted translation `T`, its inverse `S`, the cosine
//!   operators `C_n = ½(Tⁿ + Sⁿ)` and the weight products along orbits.
//! * [`criteria`]: finite-horizon evidence for topological transitivity,
//!   mixing and transitivity of finite direct sums.
//! * [`witness`]: the explicit approximating vectors `v_k` and their
//!   distance ledger.
//! * [`example`]: the step-weight setup on `Z` used as the reference case.
//!
//! Row evaluation in [`criteria`] and [`witness`] runs on rayon when the
//! `parallel` feature is enabled (the default); see [`Exec`].

pub mod criteria;
pub mod error;
pub mod example;
pub mod exec;
pub mod group;
pub mod ops;
pub mod seq;
pub mod solve;
pub mod witness;
pub mod young;

pub use criteria::{
    check_direct_sum, check_mixing, check_transitive, choose_partition, criterion_quantity,
    CheckKind, CriterionReport, CriterionRow, DirectSumReport, Partition, Strategy, Verdict,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{is_aperiodic, separation_index, translate, FiniteSet, GroupElement};
pub use ops::{ProductVariant, Weight, WeightedTranslation, WindowBounds};
pub use seq::{
    luxemburg_norm, modular, orlicz_norm, orlicz_norm_dual_bound, FinSupSeq, Scalar,
};
pub use witness::{build_vk, verify_witness, WitnessRow, WitnessTrace};
pub use young::{ConjugateGrid, Delta2Report, YoungFunction};

/// Version tag embedded in every serialized report.
pub const REPORT_SCHEMA: &str = "orlicz-dynamics/report/v1";
