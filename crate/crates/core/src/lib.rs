//! Computational kernel for finite single-set cubical n-categories with
//! connections and inverses.
//!
//! Structures are extensional tables over a finite carrier. The crate checks
//! the single-set and classical axiom systems, translates between the two
//! presentations, synthesizes inverses and normalizes words of structural maps.

pub mod classical;
pub mod core;
pub mod equivalence;
pub mod error;
pub mod inverses;
pub mod laws;
pub mod models;
pub mod normalizer;
pub mod report;

pub use crate::classical::{ClassicalCell, ClassicalStructure};
pub use crate::core::{CellId, DirectionSet, Generator, Sign, SingleSetStructure, StructureTables, TableLocation};
pub use crate::error::CubicalError;
pub use crate::inverses::InverseCertificate;
pub use crate::models::{BaseKind, FiniteThinCategory};
pub use crate::normalizer::{RuleSet, StructuralWord, Token, TokenKind};
pub use crate::report::{CheckReport, Severity, Violation};
