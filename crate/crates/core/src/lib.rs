//! Exact rational computations on Leibniz algebras: structure constants,
//! (anti-)derivations, biderivations and the algebra they form.

pub mod algebra;
pub mod bider;
pub mod catalog;
pub mod error;
pub mod file;
pub mod linalg;
pub mod maps;

pub use algebra::{Algebra, Convention, SeriesKind, SeriesReport, Subspace, Violation};
pub use catalog::{Family, FamilyId};
pub use error::{Error, Result};
pub use linalg::{Mat, Rat, Vector};
pub use maps::{Bider, LinMap, MapKind, MapSpace};
