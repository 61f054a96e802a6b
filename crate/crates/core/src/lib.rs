//! Finite permutation-group computations around the non-p-soluble length
//! and generalized Fitting height.
//!
//! The engine ([`group`], [`quotient`]) provides membership, orders,
//! closures and coset-action quotients. On top of it sit the normal
//! structure ([`structure`]), the radical tower ([`radicals`]), p-kernel
//! series ([`length`]), Hall subgroups ([`hall`]), the group corpus
//! ([`corpus`]) and the inequality checks with their reports ([`verify`]).

pub(crate) mod chain;
pub mod corpus;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod hall;
pub mod hom;
pub mod length;
pub mod limits;
pub mod perm;
pub mod primes;
pub mod quotient;
pub mod radicals;
pub mod structure;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use primes::PrimeSet;
pub use quotient::QuotientMap;
pub use corpus::GroupSpec;
pub use hall::{HallSearchResult, HallStatus};
pub use length::KernelSeries;
pub use radicals::{HeightCertificate, HeightKind};
pub use structure::SocleDecomposition;
pub use verify::InvariantReport;
