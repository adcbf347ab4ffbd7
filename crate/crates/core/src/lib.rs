//! Exact combinatorics of configuration-space (co)homology.
//!
//! Homology classes are carried by labeled binary forests modulo
//! anti-symmetry, Jacobi and commutativity; cohomology classes by directed
//! graphs modulo arrow reversal, Arnold and double edges. The two are joined
//! by the configuration pairing, under which tall forests and long graphs are
//! dual bases.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, caching and the
//! command line live in the `confpair` companion crate.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod geometry;
pub mod operad;
pub mod pairing;
pub mod sign;

pub use algebra::{BracketExpr, LinCombo};
pub use combinatorics::{Forest, Graph, OTree, OrderedPartition, Tree};
pub use error::{Error, Result};
pub use sign::{Parity, Sign};
