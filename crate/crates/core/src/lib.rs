//! Jacobson graphs of finite commutative rings.
//!
//! A finite commutative ring is a product of local rings. This crate builds the
//! Jacobson graph of such a product, evaluates the closed-form structural
//! results about it, checks them against exact search oracles, and produces
//! explicit Hamiltonian, Eulerian and pancyclic witnesses.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod jgraph;
pub mod local_ring;
pub mod numtheory;
pub mod oracles;
pub mod product_ring;
pub mod ring_spec;
pub mod survey;
pub mod theorems;

pub use error::{Error, ParseError, Result};
pub use jgraph::{adjacent, JacobsonGraph};
pub use local_ring::{Code, LocalKind, LocalRing};
pub use product_ring::{ProductRing, RingElement};
pub use ring_spec::{format, parse};
