//! Exact evaluation of the general reduced second Zagreb index
//! `GRM_λ(T) = Σ_{uv ∈ E} (deg u + λ)(deg v + λ)` on trees, together with the
//! machinery needed to certify its extremal trees by exhaustive search.
//!
//! The crate is organised bottom-up:
//!
//! * [`tree`] and [`census`] hold the tree representation and the degree
//!   census (`n_i` vertex counts and `m_{i,j}` edge-type counts).
//! * [`indices`] evaluates `GRM_λ`, `M₁`, `M₂` and the closed forms for paths,
//!   stars and spiders using exact rationals.
//! * [`families`] builds the spiders, brooms and the extremal caterpillar
//!   families for maximum degree 3 and 4.
//! * [`canonical`] and [`enumeration`] give canonical codes for free trees and
//!   an exhaustive, degree-pruned generator of unlabeled trees.
//! * [`transforms`] encodes the reduction steps used to prove minimality, each
//!   with a checked index delta.
//! * [`census_algebra`] holds the solved linear census systems and the bounds.
//! * [`verify`] ties everything together into reproducible reports.
//!
//! ```
//! use zagreb_core::{families, indices, Rational};
//!
//! let t = families::make_path(5).unwrap();
//! let value = indices::grm(&t, &Rational::from_integer((-1).into())).unwrap();
//! assert_eq!(value, Rational::from_integer(2.into()));
//! ```

pub mod canonical;
pub mod census;
pub mod census_algebra;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod indices;
pub mod rational;
pub mod report;
pub mod transforms;
pub mod tree;
pub mod verify;

pub use canonical::{canonical_code, isomorphic, CanonicalCode};
pub use census::DegreeCensus;
pub use enumeration::{count_trees, enumerate_trees, EnumSpec};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use rational::{parse_rational, Rational};
pub use tree::{build_tree, EdgeList, Tree};
