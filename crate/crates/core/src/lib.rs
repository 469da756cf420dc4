//! Exact computations with bound quiver algebras over the rationals.
//!
//! Presentations `kQ/I` and their path bases, string algebras, modules and
//! Hom spaces, Auslander-Reiten quivers and Auslander algebras, tensor and
//! gluing constructions, and isomorphism search between presentations.
//! Paths are written left to right (`a b` is `a` then `b`) and modules are
//! right modules, i.e. representations where `a: x → y` acts by a
//! `dims[y] × dims[x]` matrix.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod ar;
pub mod decompose;
pub mod error;
pub mod families;
pub mod gds;
pub mod homological;
pub mod iso;
pub mod linalg;
pub mod paper;
pub mod presentation;
pub mod quiver;
pub mod rational;
pub mod rep;
pub mod strings;

pub use algebra::{is_admissible, path_basis, Algebra, BasisReport, DEFAULT_MAX_DEGREE};
pub use ar::{
    ar_quiver, auslander_presentation, count_indecomposables, enumerate_indecomposables, ARQuiver, Indecomposables,
    Mesh, DEFAULT_CUTOFF,
};
pub use decompose::decompose;
pub use error::{Error, Result};
pub use gds::{
    check_diamonds_commutative, embed_into_grid, enveloping, glue, gluing_algebra, grid_presentation,
    paper_deletion_set, tensor, Family, GluingSpec, GridEmbedding,
};
pub use homological::{FdAlgebra, ProjMap, ProjPresentation};
pub use iso::{find_iso, verify_iso, IsoOutcome, IsoWitness, DEFAULT_BUDGET};
pub use linalg::{Echelon, Matrix, SparseVec};
pub use paper::{check_paper, CheckReport, Target};
pub use presentation::{parse_presentation, Presentation, Relation};
pub use quiver::{Arrow, Path, Quiver};
pub use rational::Rational;
pub use rep::{
    end_is_local, hom_basis, hom_basis_dense, hom_dim, is_isomorphic, validate_module, Morphism, Representation,
};
pub use strings::{
    check_string_pair, detect_bands, enumerate_strings, is_rep_finite_string, string_module, Band, StringWord,
    DEFAULT_MAX_LENGTH,
};
