//! Differential graded Lie algebras given by bases and structure constants,
//! free Lie algebras, and the tensor model `A ⊗ L` of a mapping space.

mod free;
mod lie;
mod tensor;

pub use free::free_lie;
pub use lie::{Dgl, DglMorphism};
pub use tensor::{FdCdgaModel, TensorModel};
