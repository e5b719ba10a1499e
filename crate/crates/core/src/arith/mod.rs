//! Finite fields, characters and truncated unramified p-adic integers.

pub mod character;
pub mod field;
pub mod fpoly;
pub mod padic;

pub use character::Character;
pub use field::{Embedding, FieldElement, FieldSpec};
pub use fpoly::FqPoly;
pub use padic::{PadicContext, PadicElement};
