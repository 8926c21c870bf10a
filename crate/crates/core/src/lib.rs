//! Minuscule heaps built from simply-laced Cartan data, their lattices of
//! order ideals, toggle dynamics, and exact certificates for the constancy of
//! expected down-degree across toggle-symmetric distributions.
//!
//! Everything is computed in exact rational arithmetic. Simple roots are
//! numbered 0-based in the API and 1-based (Bourbaki) in anything printed or
//! serialized.

pub mod case;
pub mod cartan;
pub mod cde;
pub mod cli;
pub mod error;
pub mod export;
pub mod heap;
pub mod ideals;
pub mod orbit;
pub mod rational;
pub mod stats;

pub use case::{Case, CaseSpec};
pub use cartan::{CartanDatum, Family, Weight};
pub use error::{Error, Result};
pub use heap::Heap;
pub use ideals::{IdealLattice, OrderIdeal};
pub use orbit::OrbitPoset;
pub use rational::Rational;
