//! Exact computations on Steiner systems and their cover and complement
//! ideals: design validation, hypergraph colourings, symbolic powers of
//! squarefree monomial ideals, initial degrees, and containment checks
//! between symbolic and ordinary powers.

pub mod containment;
pub mod hypergraph;
pub mod io;
pub mod limits;
pub mod monomial;
pub mod rational;
pub mod reproduce;
pub mod symbolic;

pub use hypergraph::{Hypergraph, Partition, SteinerSystem, VertexSet};
pub use limits::Limits;
pub use monomial::{Monomial, MonomialIdeal};
pub use rational::Rational;
pub use symbolic::PrimeDecomposition;
