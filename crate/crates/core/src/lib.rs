//! Exact arithmetic for Lawrence toric and hypertoric stacks: GIT data,
//! inertia, integral Chow rings and the orbifold product.

pub mod chow;
pub mod cli;
pub mod error;
pub mod exact;
pub mod inertia;
pub mod model;
pub mod orbifold;
pub mod verifiers;

pub use chow::{GradedClass, GradedRingPresentation, Poly};
pub use error::{Error, Result};
pub use exact::{IntMatrix, ModZVector};
pub use inertia::{InertiaComponent, TorsionElement};
pub use model::{Character, ModelKind, StackModel, WeightMatrix};
pub use orbifold::{CharacterClass, OrbifoldChow};
