//! Finite fields, finite groups, nilpotent algebras and their algebra groups,
//! coadjoint orbits, Bogomolov-type multiplier modules and zeta-function
//! experiments.

pub mod algroup;
pub mod bogomod;
pub mod budget;
pub mod coadjoint;
pub mod corpus;
pub mod error;
pub mod ffield;
pub mod fp;
pub mod grouptab;
pub mod linalg;
pub mod nilalg;
pub mod verify;
pub mod zetalab;

pub use algroup::AlgebraGroup;
pub use budget::Budgets;
pub use error::{Error, Result};
pub use ffield::{Field, FieldElement};
pub use grouptab::{ClassData, FiniteGroupTable, PcPresentation};
pub use nilalg::{AlgVector, NilAlgebra};
