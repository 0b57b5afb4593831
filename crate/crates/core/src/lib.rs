//! Computational model of liftable and balanced superelliptic mapping class
//! groups: word problems for the base groups, liftability, the branched
//! cover with its homology action, and a claim verification suite.

pub mod context;
pub mod cover;
pub mod error;
pub mod free_group;
pub mod generators;
pub mod liftability;
pub mod linalg;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod suite;
pub mod syntax;
pub mod word;

pub use context::Context;
pub use error::{Error, Result};
pub use free_group::FreeWord;
pub use generators::{Factor, Generator};
pub use liftability::{CurveClass, ParityClass};
pub use oracle::{FreeAutomorphism, Group, Oracle};
pub use perm::{psi, Permutation};
pub use report::Report;
pub use suite::{Claim, ClaimGroup, GenerationGroup, Status, SuiteConfig};
pub use word::{Letter, Word};
