//! Exact computation with group actions on the real line.

pub mod analysis;
pub mod error;
pub mod families;
pub mod lamination;
pub mod plmap;
pub mod preorder;
pub mod random;
pub mod rational;
pub mod realization;
pub mod rep;
pub mod suspension;
pub mod word;

pub use error::{Error, Result};
pub use plmap::{Affine, FixedComponent, FixedSet, MovedComponent, PlMap, Window};
pub use rational::{Dyadic, Rational};
pub use rep::Representation;
pub use word::{Letter, MarkedGroup, Word};
