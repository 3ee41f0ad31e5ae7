pub mod catalog;
pub mod decompose;
pub mod eval;
pub mod fit;
pub mod sample;
pub mod verify;
