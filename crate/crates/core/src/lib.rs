//! Exact computational algebra for the groups `G_{p,q} = D_{2pq} ⋊ C_q`.
//!
//! The crate builds finite groups as multiplication tables, computes exact
//! character tables over cyclotomic fields, and checks the representation
//! theoretic and group theoretic properties used to exhibit non-isomorphic
//! Smith equivalent real modules for these groups.

pub mod arith;
pub mod chartab;
pub mod config;
pub mod cyclo;
pub mod error;
pub mod gpq;
pub mod groups;
pub mod linalg;
pub mod lp;
pub mod oliver;
pub mod smith;

pub use config::{CompositeOrderMode, Settings};
pub use error::{Error, Result};
