//! Petit algebras over skew polynomial rings, cyclic (f,σ,δ)-codes over
//! finite rings, and the Construction A lattices they induce.

pub mod bounds;
pub mod codes;
pub mod config;
pub mod cyclic;
pub mod error;
pub mod finite;
pub mod intmat;
pub mod lattice;
pub mod order;
pub mod petit;
pub mod pipeline;
pub mod presets;
pub mod ring;
pub mod skew;
pub mod stbc;

pub use error::{Error, Result};
