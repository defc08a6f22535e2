//! Assmus-Mattson theorems over Hamming and Johnson schemes.

pub mod budget;
pub mod catalog;
pub mod cli;
pub mod codefile;
pub mod corpus;
pub mod design;
pub mod engine;
pub mod error;
pub mod lab;
pub mod martin;
pub mod rational;
pub mod scheme;
pub mod spectra;

pub use budget::Budget;
pub use error::{Error, Result};
pub use rational::Rational;
pub use scheme::{Family, Scheme, SchemeSpec, Vertex};
pub use spectra::{CodeVector, DistanceDistribution};
