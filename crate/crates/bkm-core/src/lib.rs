//! Exact-arithmetic computational toolkit for Borcherds–Kac–Moody algebras:
//! Cartan matrix validation and symmetrization, graded enveloping-algebra
//! models with exact linear algebra, weight-set and character computations,
//! and bounded Diophantine solvers for the attached norm equations.

pub mod cartan;
pub mod characters;
pub mod error;
pub mod lie_engine;
pub mod linalg;
pub mod rat;
pub mod solver;
pub mod weights;

pub use cartan::{BkmCartanMatrix, ConeInfo, NodeType, RootSum, Weight, WeylWord};
pub use characters::FormalCharacter;
pub use error::{Error, Result};
pub use lie_engine::{Engine, KillSpec, ModuleModel};
pub use solver::{QuadraticInstance, Tag22, Variant};
pub use weights::{Hole, HoleSet};
