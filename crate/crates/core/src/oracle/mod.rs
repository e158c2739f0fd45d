//! Brute-force verification of the characterization results over every
//! (or a seeded sample of) choice correspondence on a small ground set.

pub mod enumerate;
pub mod generate;
pub mod theorems;
pub mod verify;

pub use enumerate::{default_labels, enumerate_correspondences, Enumerator, Filter};
pub use theorems::TheoremId;
pub use verify::{verify_theorem, Counterexample, VerificationReport, VerifyOptions};
