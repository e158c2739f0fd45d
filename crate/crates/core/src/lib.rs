//! Exact analysis of choice correspondences and the logit (Luce) rules they
//! induce: deterministic axioms, regularity, threshold representations,
//! welfare comparisons, limited-attention models and a brute-force oracle.

pub mod axioms;
pub mod dataset;
pub mod error;
pub mod feasibility;
pub mod json;
pub mod lam;
pub mod luce;
pub mod menu;
pub mod oracle;
pub mod rational;
pub mod relation;
pub mod represent;
pub mod welfare;

pub use axioms::{check_axiom, revealed_relation, Axiom, AxiomReport, RelationKind};
pub use dataset::ChoiceDataset;
pub use error::{Error, Result};
pub use luce::{StochasticChoice, Utility};
pub use menu::{Alternative, Menu};
pub use rational::Rational;
pub use relation::{LinearOrder, Relation};
