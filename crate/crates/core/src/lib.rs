//! Plus finite rank uniform chain constructors: index strings, their trees,
//! the block constructors `A(s)[MM]`, tails, and an element-level model of
//! the pure chains used to check the weight lemmas.

pub mod constructor;
pub mod semantics;
pub mod strings;
pub mod tails;
pub mod terms;
pub mod trees;
pub mod verify;

pub use constructor::{
    expand_long, expand_pure, expand_short, BlockArray, ConstructorError, TaggedShortArray,
};
pub use strings::{IndexString, StringError};
pub use terms::{iso_equal, Block, ChainTerm, IsoPolicy, Label, TermError};
pub use trees::{build_tree, lf, rwt, weight_seq};
