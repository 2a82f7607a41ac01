//! A workbench for finite rings given by explicit operation tables.
//!
//! The crate revolves around [`ring::FiniteRing`]: a fully validated pair
//! of addition/multiplication tables over element indices. On top of that
//! sit ideal and quotient machinery ([`ideal`]), a family of constructors
//! reachable through a small expression language ([`expr`], [`construct`]),
//! decision procedures for zero-product style ring properties with
//! checkable witnesses, bounded polynomial experiments, and a monomial
//! pattern algebra for building counterexamples out of generators and
//! relations.

pub mod catalog;
pub mod construct;
pub mod expr;
pub mod hunt;
pub mod ideal;
pub mod polybox;
pub mod predicates;
pub mod report;
pub mod ring;
pub mod suites;
pub mod table_io;
pub mod verdict;
pub mod wordalg;

pub use catalog::{Catalog, CatalogEntry, CatalogError};
pub use construct::{build, build_str, BuildCaps, BuildError, Endomorphism};
pub use expr::{parse, ParseError, RingExpr};
pub use hunt::{hunt, HuntConfig, HuntReport};
pub use ideal::IdealSet;
pub use polybox::{BoundedPoly, PolyError, TruncationFlag};
pub use ring::{ElementSet, Elem, FiniteRing, RingError};
pub use suites::{
    implication_edges, run_all_suites, run_implications, EdgeKind, ImplicationEdge,
    ImplicationsReport, SuiteCheck, SuiteReport,
};
pub use verdict::{PropertyName, PropertyVerdict, Witness, WitnessPart};
pub use wordalg::{AlgebraElement, PatternIdeal, S1Matrix, WordAlgError};
